//! Exact scalars.
//!
//! Everything in this crate is computed exactly. Linear algebra is written
//! against the [`Field`] trait; the two concrete fields are the rationals
//! ([`Rational`]) and the cyclotomic field ℚ(ζ) with ζ⁴ = −1 ([`Scalar`]),
//! which contains i = ζ², √2 = ζ − ζ³ and √−2 = ζ + ζ³.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + std::hash::Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    /// The element as a rational number, if it is one.
    fn as_rational(&self) -> Option<Rational>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }
}

/// Fields containing √−1 and √(−1/2); needed for the type-D quadratic-space
/// isomorphisms and for the ray relations of some Jordan types.
pub trait GaussianField: Field {
    fn imag_unit() -> Self;
    fn sqrt_minus_half() -> Self;
}

impl Field for Rational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Element c₀ + c₁ζ + c₂ζ² + c₃ζ³ of ℚ[ζ]/(ζ⁴ + 1).
///
/// Stored as four integer numerators over one positive common denominator,
/// with the gcd of all five integers equal to one. The representation is
/// canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: [BigInt; 4],
    den: BigInt,
}

impl Scalar {
    fn normalized(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den = den / g;
        }
        Scalar { num, den }
    }

    pub fn from_coeffs(coeffs: [Rational; 4]) -> Self {
        let mut den = BigInt::one();
        for c in &coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.map(|c| c.numer() * (&den / c.denom()));
        Self::normalized(num, den)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        Rational::new(self.num[k].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> [Rational; 4] {
        [self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3)]
    }

    pub fn rational(q: Rational) -> Self {
        Self::from_coeffs([q, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn integer(v: i64) -> Self {
        Self::rational(Rational::from_integer(v.into()))
    }

    /// The primitive 8th root of unity ζ.
    pub fn zeta() -> Self {
        Self::normalized(
            [BigInt::zero(), BigInt::one(), BigInt::zero(), BigInt::zero()],
            BigInt::one(),
        )
    }

    pub fn i() -> Self {
        Self::zeta() * Self::zeta()
    }

    pub fn sqrt2() -> Self {
        let z = Self::zeta();
        z.clone() - z.clone() * z.clone() * z
    }

    /// (ζ + ζ³)/2, whose square is −1/2.
    pub fn sqrt_minus_half() -> Self {
        let z = Self::zeta();
        (z.clone() + z.clone() * z.clone() * z) * Self::rational(Rational::new(1.into(), 2.into()))
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// Galois conjugate ζ ↦ −ζ.
    fn sigma(&self) -> Self {
        let [a, b, c, d] = self.num.clone();
        Self::normalized([a, -b, c, -d], self.den.clone())
    }

    /// Complex conjugation i ↦ −i; only meaningful on elements of ℚ(i).
    fn conj_i(&self) -> Self {
        let [a, b, c, d] = self.num.clone();
        Self::normalized([a, b, -c, d], self.den.clone())
    }

    pub fn checked_inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::normalized(
                [self.den.clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
                self.num[0].clone(),
            ));
        }
        // a·σ(a) lies in ℚ(i); multiplying by its conjugate gives a rational.
        let s = self.sigma();
        let gauss = self.clone() * s.clone();
        let cg = gauss.conj_i();
        let norm = gauss * cg.clone();
        debug_assert!(norm.is_rational());
        let norm_inv = Self::normalized(
            [norm.den.clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            norm.num[0].clone(),
        );
        Ok(s * cg * norm_inv)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            num: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = std::array::from_fn(|k| &self.num[k] + &rhs.num[k]);
            return Scalar::normalized(num, self.den.clone());
        }
        let num = std::array::from_fn(|k| &self.num[k] * &rhs.den + &rhs.num[k] * &self.den);
        Scalar::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self + &(-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let Scalar { num, den } = self;
        Scalar { num: num.map(|c| -c), den }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut acc: [BigInt; 4] = std::array::from_fn(|_| BigInt::zero());
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                // ζ⁴ = −1
                if i + j < 4 {
                    acc[i + j] += p;
                } else {
                    acc[i + j - 4] -= p;
                }
            }
        }
        Scalar::normalized(acc, &self.den * &rhs.den)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        let inv = rhs.checked_inverse().expect("division by zero");
        self * inv
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self + &(-rhs);
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = &*self * &rhs;
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::integer(v)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::rational(q)
    }
}

impl Field for Scalar {
    fn inverse(&self) -> Option<Self> {
        self.checked_inverse().ok()
    }

    fn from_rational(q: Rational) -> Self {
        Scalar::rational(q)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }
}

impl GaussianField for Scalar {
    fn imag_unit() -> Self {
        Scalar::i()
    }

    fn sqrt_minus_half() -> Self {
        Scalar::sqrt_minus_half()
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Serialized as `c0+c1*z+c2*z^2+c3*z^3`; zero coefficients are omitted and
/// purely rational values print as a bare `p/q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.coeff(0)));
        }
        let mut out = String::new();
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = fmt_rational(c);
            if !out.is_empty() && !body.starts_with('-') {
                out.push('+');
            }
            out.push_str(&body);
            match k {
                0 => {}
                1 => out.push_str("*z"),
                _ => out.push_str(&format!("*z^{k}")),
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err());
        }
        // Split into signed terms.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = text.as_bytes();
        for idx in 1..bytes.len() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-') && bytes[idx - 1] != b'^' {
                terms.push(&text[start..idx]);
                start = idx;
            }
        }
        terms.push(&text[start..]);
        let mut coeffs: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            let (coef, power) = match term.find('z') {
                None => (term, 0usize),
                Some(pos) => {
                    let power = match &term[pos + 1..] {
                        "" => 1,
                        rest => rest
                            .strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .filter(|p| *p < 4)
                            .ok_or_else(err)?,
                    };
                    let coef = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
                    (coef, power)
                }
            };
            let value = match coef {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                c => c.parse::<Rational>().map_err(|_| err())?,
            };
            coeffs[power] += value;
        }
        Ok(Scalar::from_coeffs(coeffs))
    }
}
