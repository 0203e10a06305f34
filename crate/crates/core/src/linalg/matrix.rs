use crate::field::Field;

/// Row-reduces `rows` (each of length `cols`) to reduced row-echelon form.
///
/// Returns the nonzero rows together with their pivot columns.
pub fn rref<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v = v.clone() * inv.clone();
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    row[j] = row[j].clone() - factor.clone() * pv.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis (in reduced echelon form) of {v : row·v = 0 for every row}.
pub fn nullspace<F: Field>(rows: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let (reduced, pivots) = rref(rows, cols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    rref(basis, cols).0
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn scale<F: Field>(v: &[F], s: &F) -> Vec<F> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// Linear combination Σ cᵢ vᵢ of equal-length vectors.
pub fn combine<F: Field>(terms: &[(F, &[F])], len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

pub fn unit<F: Field>(len: usize, idx: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[idx] = F::one();
    v
}

/// Inverse of a square matrix given by rows, `None` if singular.
pub fn invert<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit::<F>(n, i));
            r
        })
        .collect();
    let (red, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free-free elimination (plain Gaussian elimination
/// over the field).
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det = det * piv.clone();
        let inv = piv.inverse().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..n {
                if !a[c][j].is_zero() {
                    a[i][j] = a[i][j].clone() - f.clone() * a[c][j].clone();
                }
            }
        }
    }
    det
}

/// Dense matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![F::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i]
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect())
            .collect();
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data.iter().map(|row| dot(row, v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![F::zero(); self.cols];
        for (c, row) in v.iter().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = o.clone() + c.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        let data = self.data.iter().map(|row| other.vec_mul(row)).collect();
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols);
        determinant(&self.data)
    }

    pub fn rank(&self) -> usize {
        rref(self.data.clone(), self.cols).1.len()
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

use num_traits::Zero;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn rref_is_canonical() {
        let a = vec![vec![r(2), r(4), r(0)], vec![r(1), r(3), r(1)]];
        let b = vec![vec![r(1), r(3), r(1)], vec![r(3), r(7), r(1)]];
        assert_eq!(rref(a, 3).0, rref(b, 3).0);
    }

    #[test]
    fn nullspace_kills_rows() {
        let rows = vec![vec![r(1), r(2), r(3), r(4)], vec![r(0), r(1), r(1), r(0)]];
        let ns = nullspace(rows.clone(), 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                assert!(dot(row, v).is_zero());
            }
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = vec![vec![r(2), r(1)], vec![r(7), r(4)]];
        assert_eq!(determinant(&m), r(1));
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![r(4), r(-1)], vec![r(-7), r(2)]]);
        assert!(invert(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }
}
