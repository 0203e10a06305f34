use std::fmt;

use crate::field::Field;

use super::matrix::{dot, nullspace, rref, Matrix};

/// Subspace of F^n stored as a canonical reduced row-echelon basis.
///
/// Two subspaces are equal exactly when their stored bases coincide.
/// Operations combining two subspaces panic if the ambient dimensions differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| super::matrix::unit(ambient, i)))
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<F>> = vectors.into_iter().collect();
        assert!(rows.iter().all(|r| r.len() == ambient), "vector length differs from ambient dimension");
        let (rows, pivots) = rref(rows, ambient);
        Subspace { ambient, rows, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical basis, one row per basis vector.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// subspace, and is a canonical coset representative otherwise.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, x) in out.iter_mut().zip(row).skip(p) {
                if !x.is_zero() {
                    *o = o.clone() - c.clone() * x.clone();
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` with respect to the canonical basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.check(other);
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.check(other);
        if other.dim() == 0 || self.contains(other) {
            return self.clone();
        }
        Self::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.check(other);
        if self.contains(other) {
            return other.clone();
        }
        if other.contains(self) {
            return self.clone();
        }
        let mut ann = self.annihilator();
        ann.extend(other.annihilator());
        Self::span(self.ambient, nullspace(ann, self.ambient))
    }

    /// Basis of the linear functionals (as row vectors) vanishing on the subspace.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.rows.is_empty() {
            return (0..self.ambient).map(|i| super::matrix::unit(self.ambient, i)).collect();
        }
        nullspace(self.rows.clone(), self.ambient)
    }

    /// Image T(U).
    pub fn image(&self, t: &LinearMap<F>) -> Self {
        assert_eq!(t.source(), self.ambient, "map source differs from ambient dimension");
        Self::span(t.target(), self.rows.iter().map(|r| t.apply(r)))
    }

    /// Preimage {v : T v ∈ U}.
    pub fn preimage(&self, t: &LinearMap<F>) -> Self {
        assert_eq!(t.target(), self.ambient, "map target differs from ambient dimension");
        if self.is_full() {
            return Self::full(t.source());
        }
        let rows: Vec<Vec<F>> = self.annihilator().iter().map(|w| t.matrix().vec_mul(w)).collect();
        Self::span(t.source(), nullspace(rows, t.source()))
    }

    /// T^h(U).
    pub fn image_pow(&self, t: &LinearMap<F>, h: usize) -> Self {
        (0..h).fold(self.clone(), |u, _| u.image(t))
    }

    /// (T^h)^{-1}(U).
    pub fn preimage_pow(&self, t: &LinearMap<F>, h: usize) -> Self {
        (0..h).fold(self.clone(), |u, _| u.preimage(t))
    }

    /// Orthogonal complement with respect to `form`.
    pub fn perp(&self, form: &BilinearForm<F>) -> Self {
        form.perp(self)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        Subspace::span(self.ambient, self.rows.iter().map(|r| r.iter().map(&f).collect()))
    }
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))?;
        }
        write!(f, "⟩ ⊆ F^{}", self.ambient)
    }
}

use num_traits::Zero;

/// Linear map F^source → F^target, stored as a target × source matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<F> {
    matrix: Matrix<F>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(matrix: Matrix<F>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn source(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(self.source(), other.target(), "composition dimension mismatch");
        LinearMap { matrix: self.matrix.mul(&other.matrix) }
    }

    pub fn pow(&self, k: usize) -> LinearMap<F> {
        assert_eq!(self.source(), self.target());
        (0..k).fold(Self::identity(self.source()), |acc, _| acc.compose(self))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Symmetric nondegenerate bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<F> {
    gram: Matrix<F>,
}

impl<F: Field> BilinearForm<F> {
    /// Returns `None` unless the Gram matrix is square, symmetric and invertible.
    pub fn new(gram: Matrix<F>) -> Option<Self> {
        if !gram.is_symmetric() || gram.determinant().is_zero() {
            return None;
        }
        Some(BilinearForm { gram })
    }

    /// Skips the symmetry and nondegeneracy checks.
    pub fn new_unchecked(gram: Matrix<F>) -> Self {
        BilinearForm { gram }
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn eval(&self, u: &[F], v: &[F]) -> F {
        dot(&self.gram.vec_mul(u), v)
    }

    pub fn perp(&self, u: &Subspace<F>) -> Subspace<F> {
        assert_eq!(u.ambient(), self.dim(), "form dimension mismatch");
        if u.is_zero() {
            return Subspace::full(self.dim());
        }
        let rows: Vec<Vec<F>> = u.basis().iter().map(|r| self.gram.vec_mul(r)).collect();
        Subspace::span(self.dim(), nullspace(rows, self.dim()))
    }

    pub fn is_isotropic(&self, u: &Subspace<F>) -> bool {
        let b = u.basis();
        b.iter().enumerate().all(|(i, x)| b[i..].iter().all(|y| self.eval(x, y).is_zero()))
    }
}
