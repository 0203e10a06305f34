use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("({first},{second}) is not a two-row partition with 1 ≤ k ≤ n−k")]
    NotTwoRow { first: usize, second: usize },
    #[error("({first},{second}) is not an admissible type-D Jordan type")]
    NotTypeD { first: usize, second: usize },
}

/// Jordan type λ = (n−k, k) with two rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoRowPartition {
    n: usize,
    k: usize,
}

impl TwoRowPartition {
    pub fn new(n: usize, k: usize) -> Result<Self, PartitionError> {
        if k == 0 || 2 * k > n {
            return Err(PartitionError::NotTwoRow { first: n.saturating_sub(k), second: k });
        }
        Ok(TwoRowPartition { n, k })
    }

    pub fn from_parts(first: usize, second: usize) -> Result<Self, PartitionError> {
        if second == 0 || first < second {
            return Err(PartitionError::NotTwoRow { first, second });
        }
        Ok(TwoRowPartition { n: first + second, k: second })
    }

    /// Like [`Self::new`], additionally requiring type-D admissibility.
    pub fn type_d(n: usize, k: usize) -> Result<Self, PartitionError> {
        let p = Self::new(n, k)?;
        if !p.is_type_d() {
            return Err(PartitionError::NotTypeD { first: p.first(), second: k });
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn first(&self) -> usize {
        self.n - self.k
    }

    pub fn second(&self) -> usize {
        self.k
    }

    /// n/2, the number of vertices of a type-D diagram.
    pub fn m(&self) -> usize {
        self.n / 2
    }

    pub fn equal_parts(&self) -> bool {
        self.first() == self.k
    }

    /// n even and either equal parts or both parts odd.
    pub fn is_type_d(&self) -> bool {
        self.n % 2 == 0 && (self.equal_parts() || (self.k % 2 == 1 && self.first() % 2 == 1))
    }

    /// For unequal type-D parts: whether the ray vectors f ± ι e need ι = √−1
    /// (half the difference of the parts is even) rather than ι = 1.
    pub fn imaginary_ray_twist(&self) -> bool {
        !self.equal_parts() && ((self.first() - self.k) / 2) % 2 == 0
    }
}

impl fmt::Display for TwoRowPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first(), self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(TwoRowPartition::new(8, 3).unwrap().is_type_d());
        assert!(TwoRowPartition::new(8, 4).unwrap().is_type_d());
        assert!(!TwoRowPartition::new(8, 2).unwrap().is_type_d());
        assert!(!TwoRowPartition::new(7, 3).unwrap().is_type_d());
        assert!(TwoRowPartition::new(4, 3).is_err());
        assert!(TwoRowPartition::new(4, 0).is_err());
        assert_eq!(TwoRowPartition::from_parts(5, 3).unwrap(), TwoRowPartition::new(8, 3).unwrap());
    }

    #[test]
    fn ray_twist_parity() {
        assert!(!TwoRowPartition::from_parts(5, 3).unwrap().imaginary_ray_twist());
        assert!(TwoRowPartition::from_parts(5, 1).unwrap().imaginary_ray_twist());
        assert!(TwoRowPartition::from_parts(7, 3).unwrap().imaginary_ray_twist());
        assert!(!TwoRowPartition::from_parts(7, 1).unwrap().imaginary_ray_twist());
    }
}
