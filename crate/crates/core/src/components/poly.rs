use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{Field, GaussianField, Rational};

/// Univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial x.
    pub fn variable() -> Self {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let at = |c: &[F], i: usize| c.get(i).cloned().unwrap_or_else(F::zero);
        Poly::new((0..n).map(|i| at(&self.coeffs, i) + at(&other.coeffs, i)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Monic lcm of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Self {
        let g = self.gcd(other);
        self.mul(other).div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero");
                Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inverse().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty").clone() * lead_inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides out x − r.
    fn deflate(&self, r: &F) -> Self {
        self.div_rem(&Poly::new(vec![-r.clone(), F::one()])).0
    }

    /// Roots in F with multiplicity. Linear factors are always found; higher
    /// degree parts only when the monic polynomial has rational coefficients,
    /// by the rational root theorem. Returns the roots and the unresolved cofactor.
    pub fn roots(&self) -> (Vec<F>, Self) {
        let mut p = self.monic();
        let mut roots = Vec::new();
        loop {
            match p.degree() {
                None | Some(0) => break,
                Some(1) => {
                    roots.push(-p.coeffs[0].clone());
                    p = Poly::new(vec![F::one()]);
                    break;
                }
                _ => {}
            }
            if p.coeffs[0].is_zero() {
                roots.push(F::zero());
                p = p.deflate(&F::zero());
                continue;
            }
            match rational_root(&p) {
                Some(r) => {
                    p = p.deflate(&r);
                    roots.push(r);
                }
                None => break,
            }
        }
        (roots, p)
    }
}

/// Quotient field F(x) of F[x], kept as num/den with den monic and
/// gcd(num, den) = 1, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.coeffs().last().expect("nonzero").inverse().expect("nonzero");
        let c = Poly::constant(lead);
        Some(RationalFunction { num: num.mul(&c), den: den.mul(&c) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RationalFunction { num: p, den: Poly::constant(F::one()) }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate x.
    pub fn variable() -> Self {
        Self::from_poly(Poly::variable())
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    /// Value at x = a, `None` at a pole.
    pub fn eval(&self, a: &F) -> Option<F> {
        let d = self.den.eval(a);
        (!d.is_zero()).then(|| self.num.eval(a) / d)
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly<F>| -> String {
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| match k {
                    0 => format!("({c})"),
                    1 => format!("({c})*x"),
                    _ => format!("({c})*x^{k}"),
                })
                .collect();
            if terms.is_empty() { "0".into() } else { terms.join(" + ") }
        };
        if self.den.degree() == Some(0) {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "[{}] / [{}]", show(&self.num), show(&self.den))
        }
    }
}

impl<F: Field> Zero for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::new(Vec::new()))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RationalFunction<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> std::ops::Add for RationalFunction<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den).expect("nonzero");
        }
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero")
    }
}

impl<F: Field> std::ops::Neg for RationalFunction<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den }
    }
}

impl<F: Field> std::ops::Sub for RationalFunction<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Field> std::ops::Mul for RationalFunction<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }
}

impl<F: Field> std::ops::Div for RationalFunction<F> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero")
    }
}

impl<F: Field> Field for RationalFunction<F> {
    fn inverse(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone()).filter(|_| !self.is_zero())
    }

    fn from_rational(q: Rational) -> Self {
        Self::constant(F::from_rational(q))
    }

    fn as_rational(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => self.num.coeffs()[0].as_rational(),
            _ => None,
        }
    }
}

impl<F: GaussianField> GaussianField for RationalFunction<F> {
    fn imag_unit() -> Self {
        Self::constant(F::imag_unit())
    }

    fn sqrt_minus_half() -> Self {
        Self::constant(F::sqrt_minus_half())
    }
}

/// Factor bound for trial division in the rational root search.
const FACTOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= FACTOR_LIMIT)?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    Some(out)
}

fn rational_root<F: Field>(p: &Poly<F>) -> Option<F> {
    let qs: Vec<Rational> = p.coeffs.iter().map(F::as_rational).collect::<Option<_>>()?;
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let num = divisors(&ints[0])?;
    let den = divisors(ints.last().expect("nonzero"))?;
    for &a in &num {
        for &b in &den {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(a) * sign, BigInt::from(b));
                let rf = F::from_rational(r);
                if p.eval(&rf).is_zero() {
                    return Some(rf);
                }
            }
        }
    }
    None
}

/// Homogeneous form of formal degree `coeffs.len() − 1` in (s, t):
/// Σ coeffs[k] s^{d−k} t^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs a degree");
        BinaryForm { coeffs }
    }

    pub fn constant(c: F) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// a s + b t.
    pub fn linear(a: F, b: F) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let d = self.degree();
        let mut acc = F::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..d - k {
                term = term * s.clone();
            }
            for _ in 0..k {
                term = term * t.clone();
            }
            acc = acc + term;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm::new(out)
    }

    /// f(1, γ).
    pub fn dehomogenize(&self) -> Poly<F> {
        Poly::new(self.coeffs.clone())
    }

    /// Multiplicity of the root [0 : 1].
    pub fn infinity_multiplicity(&self) -> usize {
        self.degree() - self.dehomogenize().degree().unwrap_or(0)
    }

    fn from_parts(p: &Poly<F>, at_infinity: usize) -> Self {
        let mut coeffs = p.coeffs().to_vec();
        coeffs.resize(coeffs.len() + at_infinity, F::zero());
        BinaryForm::new(coeffs)
    }

    /// Monic gcd of nonzero forms; `None` when every form vanishes identically.
    pub fn gcd_all<'a>(forms: impl IntoIterator<Item = &'a Self>) -> Option<Self> {
        let mut acc: Option<(Poly<F>, usize)> = None;
        for f in forms {
            if f.is_zero() {
                continue;
            }
            let (p, inf) = (f.dehomogenize(), f.infinity_multiplicity());
            acc = Some(match acc {
                None => (p.monic(), inf),
                Some((q, j)) => (q.gcd(&p), j.min(inf)),
            });
        }
        acc.map(|(p, inf)| Self::from_parts(&p, inf))
    }

    /// Roots [s : t] found in F, as pairs with multiplicity, and the degree of
    /// the part left unfactored.
    pub fn roots(&self) -> (Vec<(F, F)>, usize) {
        let mut out: Vec<(F, F)> = (0..self.infinity_multiplicity()).map(|_| (F::zero(), F::one())).collect();
        let (affine, rest) = self.dehomogenize().roots();
        out.extend(affine.into_iter().map(|g| (F::one(), g)));
        (out, rest.degree().unwrap_or(0))
    }
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            match d - k {
                0 => {}
                1 => mono.push("s".to_string()),
                e => mono.push(format!("s^{e}")),
            }
            match k {
                0 => {}
                1 => mono.push("t".to_string()),
                e => mono.push(format!("t^{e}")),
            }
            let coef = c.to_string();
            let term = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("({coef})*{}", mono.join("*"))
            };
            terms.push(term);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
