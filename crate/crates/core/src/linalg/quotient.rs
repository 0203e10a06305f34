use crate::field::Field;

use super::matrix::{combine, Matrix};
use super::subspace::{BilinearForm, LinearMap, Subspace};
use super::LinalgError;

/// The quadratic space W^⊥/W together with the induced form and nilpotent.
///
/// Cosets are represented by the canonical echelon completion of W inside
/// W^⊥: the rows of W^⊥ reduced modulo W and brought to echelon form.
#[derive(Clone, Debug)]
pub struct QuotientSpace<F: Field> {
    w: Subspace<F>,
    w_perp: Subspace<F>,
    reps: Subspace<F>,
    form: BilinearForm<F>,
    nilpotent: LinearMap<F>,
}

impl<F: Field> QuotientSpace<F> {
    pub fn new(
        w: Subspace<F>,
        beta: &BilinearForm<F>,
        x: &LinearMap<F>,
    ) -> Result<Self, LinalgError> {
        let w_perp = beta.perp(&w);
        if !w_perp.contains(&w) {
            return Err(LinalgError::NotIsotropic);
        }
        if !w.contains(&w.image(x)) || !w_perp.contains(&w_perp.image(x)) {
            return Err(LinalgError::NotStable);
        }
        let n = w.ambient();
        let reps = Subspace::span(n, w_perp.basis().iter().map(|r| w.reduce(r)));
        let d = reps.dim();
        let gram = Matrix::from_rows(
            reps.basis()
                .iter()
                .map(|u| reps.basis().iter().map(|v| beta.eval(u, v)).collect())
                .collect(),
            d,
        );
        let mut q = QuotientSpace {
            w,
            w_perp,
            reps,
            form: BilinearForm::new_unchecked(gram),
            nilpotent: LinearMap::identity(0),
        };
        let cols: Vec<Vec<F>> =
            q.reps.basis().iter().map(|r| q.psi(&x.apply(r)).expect("x-stable")).collect();
        q.nilpotent = LinearMap::new(Matrix::from_rows(cols, d).transpose());
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn w(&self) -> &Subspace<F> {
        &self.w
    }

    pub fn w_perp(&self) -> &Subspace<F> {
        &self.w_perp
    }

    /// Canonical representatives of a basis of W^⊥/W.
    pub fn representatives(&self) -> &[Vec<F>] {
        self.reps.basis()
    }

    pub fn form(&self) -> &BilinearForm<F> {
        &self.form
    }

    pub fn nilpotent(&self) -> &LinearMap<F> {
        &self.nilpotent
    }

    /// ψ: coordinates of v + W in the representative basis, `None` if v ∉ W^⊥.
    pub fn psi(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.w_perp.contains_vector(v) {
            return None;
        }
        self.reps.coordinates(&self.w.reduce(v))
    }

    /// The representative with the given coordinates.
    pub fn section(&self, coords: &[F]) -> Vec<F> {
        let terms: Vec<(F, &[F])> =
            coords.iter().cloned().zip(self.reps.basis().iter().map(|r| r.as_slice())).collect();
        combine(&terms, self.w.ambient())
    }

    /// ψ(U) for U ⊆ W^⊥.
    pub fn psi_subspace(&self, u: &Subspace<F>) -> Option<Subspace<F>> {
        let rows: Option<Vec<Vec<F>>> = u.basis().iter().map(|r| self.psi(r)).collect();
        Some(Subspace::span(self.dim(), rows?))
    }

    /// ψ^{-1}(U'), which always contains W.
    pub fn lift(&self, u: &Subspace<F>) -> Subspace<F> {
        let lifted = Subspace::span(self.w.ambient(), u.basis().iter().map(|c| self.section(c)));
        lifted.sum(&self.w)
    }
}
