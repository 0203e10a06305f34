use std::fmt;

use crate::diagram::TwoRowPartition;
use crate::field::{Field, GaussianField};

use super::gadgets::{build_form, build_nilpotent, e_vec, f_vec};
use super::matrix::{combine, invert, scale, unit, Matrix};
use super::subspace::Subspace;
use super::LinalgError;

/// The seven quadratic-space isomorphisms W^⊥/W → V_ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QCase {
    I,
    II1,
    II2,
    III1,
    III2,
    III3,
    III4,
}

impl fmt::Display for QCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QCase::I => "I",
            QCase::II1 => "II-1",
            QCase::II2 => "II-2",
            QCase::III1 => "III-1",
            QCase::III2 => "III-2",
            QCase::III3 => "III-3",
            QCase::III4 => "III-4",
        };
        f.write_str(s)
    }
}

/// ι_λ, the coefficient in the rightmost-ray vectors f ± ι e.
pub fn ray_twist<F: GaussianField>(lambda: TwoRowPartition) -> F {
    if lambda.imaginary_ray_twist() {
        F::imag_unit()
    } else {
        F::one()
    }
}

/// An isomorphism W^⊥/W → V_ν given by `factor · images[j]` on the coset of
/// `reps[j]`.
///
/// Subspace-valued application ignores `factor`, since spans do not see it.
#[derive(Clone, Debug)]
pub struct QuadraticIso<F: Field> {
    case: QCase,
    lambda: TwoRowPartition,
    nu: TwoRowPartition,
    w: Subspace<F>,
    reps: Vec<Vec<F>>,
    images: Vec<Vec<F>>,
    factor: F,
    // inverse of the basis [W; reps; completion] of V_λ
    coords: Matrix<F>,
    // inverse of the images matrix
    image_coords: Matrix<F>,
}

impl<F: Field> QuadraticIso<F> {
    pub fn new(
        case: QCase,
        lambda: TwoRowPartition,
        nu: TwoRowPartition,
        w: Subspace<F>,
        reps: Vec<Vec<F>>,
        images: Vec<Vec<F>>,
        factor: F,
    ) -> Result<Self, LinalgError> {
        let n = lambda.n();
        let bad = || LinalgError::InconsistentQData(case);
        if reps.len() != nu.n() || images.len() != nu.n() || factor.is_zero() {
            return Err(bad());
        }
        let mut basis: Vec<Vec<F>> = w.basis().to_vec();
        basis.extend(reps.iter().cloned());
        let mut span = Subspace::span(n, basis.iter().cloned());
        if span.dim() != basis.len() {
            return Err(bad());
        }
        for i in 0..n {
            if span.dim() == n {
                break;
            }
            let u = unit::<F>(n, i);
            if !span.contains_vector(&u) {
                span = span.sum(&Subspace::span(n, [u.clone()]));
                basis.push(u);
            }
        }
        let coords = Matrix::from_rows(invert(&basis).ok_or_else(bad)?, n);
        let image_coords = Matrix::from_rows(invert(&images).ok_or_else(bad)?, nu.n());
        Ok(QuadraticIso { case, lambda, nu, w, reps, images, factor, coords, image_coords })
    }

    pub fn case(&self) -> QCase {
        self.case
    }

    pub fn lambda(&self) -> TwoRowPartition {
        self.lambda
    }

    pub fn nu(&self) -> TwoRowPartition {
        self.nu
    }

    pub fn w(&self) -> &Subspace<F> {
        &self.w
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        &self.reps
    }

    pub fn images(&self) -> &[Vec<F>] {
        &self.images
    }

    pub fn factor(&self) -> &F {
        &self.factor
    }

    fn rep_coords(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.coords.vec_mul(v);
        let (wd, r) = (self.w.dim(), self.reps.len());
        if c[wd + r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(c[wd..wd + r].to_vec())
    }

    /// Q(v + W) without the global factor; `None` if v ∉ W^⊥.
    pub fn apply_unscaled(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.rep_coords(v)?;
        let terms: Vec<(F, &[F])> =
            c.into_iter().zip(self.images.iter().map(|r| r.as_slice())).collect();
        Some(combine(&terms, self.nu.n()))
    }

    /// Q(v + W) including the global factor.
    pub fn apply(&self, v: &[F]) -> Option<Vec<F>> {
        self.apply_unscaled(v).map(|u| scale(&u, &self.factor))
    }

    /// Q(U/W) for U ⊆ W^⊥.
    pub fn forward(&self, u: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
        let rows: Option<Vec<Vec<F>>> = u.basis().iter().map(|r| self.apply_unscaled(r)).collect();
        Ok(Subspace::span(self.nu.n(), rows.ok_or(LinalgError::OutsideDomain)?))
    }

    /// ψ^{-1}(Q^{-1}(U)), a subspace of V_λ containing W.
    pub fn pull_back(&self, u: &Subspace<F>) -> Subspace<F> {
        assert_eq!(u.ambient(), self.nu.n(), "ambient dimension mismatch");
        let n = self.lambda.n();
        let lifted = u.basis().iter().map(|y| {
            let c = self.image_coords.vec_mul(y);
            let terms: Vec<(F, &[F])> =
                c.into_iter().zip(self.reps.iter().map(|r| r.as_slice())).collect();
            combine(&terms, n)
        });
        Subspace::span(n, lifted).sum(&self.w)
    }

    /// β_ν(Qu, Qv) = β_λ(u, v) on all pairs of representatives.
    pub fn preserves_form(&self) -> bool {
        let (Ok(bl), Ok(bn)) = (build_form::<F>(self.lambda), build_form::<F>(self.nu)) else {
            return false;
        };
        let imgs: Vec<Vec<F>> = self.images.iter().map(|v| scale(v, &self.factor)).collect();
        (0..self.reps.len()).all(|i| {
            (i..self.reps.len())
                .all(|j| bn.eval(&imgs[i], &imgs[j]) == bl.eval(&self.reps[i], &self.reps[j]))
        })
    }

    /// Q x̄_λ = x_ν Q on all representatives.
    pub fn intertwines(&self) -> bool {
        let xl = build_nilpotent::<F>(self.lambda);
        let xn = build_nilpotent::<F>(self.nu);
        self.reps.iter().zip(&self.images).all(|(r, img)| {
            match self.apply(&xl.apply(r)) {
                Some(lhs) => lhs == xn.apply(&scale(img, &self.factor)),
                None => false,
            }
        })
    }
}

fn lin<F: Field>(a: F, u: &[F], b: F, v: &[F]) -> Vec<F> {
    combine(&[(a, u), (b, v)], u.len())
}

fn swap_ef<F: Field>(nu: TwoRowPartition, v: &[F]) -> Vec<F> {
    assert!(nu.equal_parts());
    let k = nu.first();
    v[k..].iter().chain(&v[..k]).cloned().collect()
}

impl<F: GaussianField> QuadraticIso<F> {
    /// Q^I for W = ⟨e_i, f_i : i ≤ t⟩: ē_{t+i} ↦ s e^ν_i, f̄_{t+i} ↦ s f^ν_i with s² = (−1)^t.
    pub fn case_i(lambda: TwoRowPartition, t: usize) -> Result<Self, LinalgError> {
        let bad = LinalgError::InconsistentQData(QCase::I);
        if t == 0 || 2 * t >= lambda.second() {
            return Err(bad);
        }
        let nu = TwoRowPartition::from_parts(lambda.first() - 2 * t, lambda.second() - 2 * t)
            .map_err(|_| bad.clone())?;
        let w = super::gadgets::standard_span(lambda, t, t);
        let reps = (1..=nu.first())
            .map(|i| e_vec(lambda, t + i))
            .chain((1..=nu.second()).map(|i| f_vec(lambda, t + i)))
            .collect();
        let images = (1..=nu.first())
            .map(|i| e_vec(nu, i))
            .chain((1..=nu.second()).map(|i| f_vec(nu, i)))
            .collect();
        let factor = if t % 2 == 1 { F::imag_unit() } else { F::one() };
        Self::new(QCase::I, lambda, nu, w, reps, images, factor)
    }

    /// Q^II for λ = (m,m), m even, W = ⟨c e_1 + d f_1⟩. Chart 1 needs c ≠ 0,
    /// chart 2 needs d ≠ 0. `swap` composes with the e ↔ f isometry of V_ν,
    /// which is what a marked vertex-1 cup requires.
    pub fn case_ii(
        lambda: TwoRowPartition,
        chart: u8,
        c: F,
        d: F,
        swap: bool,
    ) -> Result<Self, LinalgError> {
        let case = if chart == 1 { QCase::II1 } else { QCase::II2 };
        let bad = LinalgError::InconsistentQData(case);
        let m = lambda.first();
        if !lambda.equal_parts() || m < 2 || m % 2 == 1 {
            return Err(bad);
        }
        let nu = TwoRowPartition::from_parts(m - 1, m - 1).map_err(|_| bad.clone())?;
        let e = |i| e_vec::<F>(lambda, i);
        let f = |i| f_vec::<F>(lambda, i);
        let (w, reps, factor) = match chart {
            1 => {
                let g = d * c.inverse().ok_or(bad.clone())?;
                let w = Subspace::span(lambda.n(), [lin(F::one(), &e(1), g.clone(), &f(1))]);
                let reps: Vec<Vec<F>> = (1..m)
                    .map(|i| lin(F::one(), &e(i + 1), g.clone(), &f(i + 1)))
                    .chain((1..m).map(f))
                    .collect();
                (w, reps, -F::imag_unit())
            }
            2 => {
                let dl = c * d.inverse().ok_or(bad.clone())?;
                let w = Subspace::span(lambda.n(), [lin(dl.clone(), &e(1), F::one(), &f(1))]);
                let reps: Vec<Vec<F>> = (1..m)
                    .map(|i| lin(dl.clone(), &e(i + 1), F::one(), &f(i + 1)))
                    .chain((1..m).map(e))
                    .collect();
                (w, reps, F::one())
            }
            _ => return Err(bad),
        };
        let images: Vec<Vec<F>> = (1..m)
            .map(|i| e_vec(nu, i))
            .chain((1..m).map(|i| f_vec(nu, i)))
            .map(|v| if swap { swap_ef(nu, &v) } else { v })
            .collect();
        Self::new(case, lambda, nu, w, reps, images, factor)
    }

    /// Q^III_l for a ray at vertex 1, l = 1..4.
    pub fn case_iii(lambda: TwoRowPartition, l: u8) -> Result<Self, LinalgError> {
        let case = match l {
            1 => QCase::III1,
            2 => QCase::III2,
            3 => QCase::III3,
            4 => QCase::III4,
            _ => return Err(LinalgError::InconsistentQData(QCase::III1)),
        };
        let bad = LinalgError::InconsistentQData(case);
        let (a, k) = (lambda.first(), lambda.second());
        let n = lambda.n();
        let e = |i| e_vec::<F>(lambda, i);
        let f = |i| f_vec::<F>(lambda, i);
        let part = |p, q| TwoRowPartition::from_parts(p, q).map_err(|_| bad.clone());
        let (nu, w, reps, images, factor): (_, _, Vec<Vec<F>>, Vec<Vec<F>>, F) = match case {
            QCase::III1 | QCase::III2 if a == k && a >= 2 => {
                let nu = part(a - 1, a - 1)?;
                let ev = |i| e_vec::<F>(nu, i);
                let fv = |i| f_vec::<F>(nu, i);
                if case == QCase::III1 {
                    let reps = (1..a).map(|i| e(i + 1)).chain((1..a).map(f)).collect();
                    let imgs = (1..a).map(ev).chain((1..a).map(fv)).collect();
                    (nu, Subspace::span(n, [e(1)]), reps, imgs, -F::imag_unit())
                } else {
                    let reps = (1..a).map(|i| f(i + 1)).chain((1..a).map(e)).collect();
                    let imgs = (1..a).map(fv).chain((1..a).map(ev)).collect();
                    (nu, Subspace::span(n, [f(1)]), reps, imgs, F::one())
                }
            }
            QCase::III3 if a == k + 2 => {
                let nu = part(k, k)?;
                let reps = (1..=k)
                    .map(|i| lin(F::one(), &e(i + 1), F::one(), &f(i)))
                    .chain((1..=k).map(|i| lin(F::one(), &e(i + 1), -F::one(), &f(i))))
                    .collect();
                let imgs = (1..=k)
                    .map(|i| f_vec(nu, i))
                    .chain((1..=k).map(|i| e_vec(nu, i)))
                    .collect();
                let factor = F::sqrt_minus_half().inverse().expect("nonzero");
                (nu, Subspace::span(n, [e(1)]), reps, imgs, factor)
            }
            QCase::III4 if a > k + 2 => {
                let nu = part(a - 2, k)?;
                let kappa = ray_twist::<F>(nu) * ray_twist::<F>(lambda).inverse().expect("nonzero");
                let reps = (1..=a - 2).map(|i| e(i + 1)).chain((1..=k).map(f)).collect();
                let imgs = (1..=a - 2)
                    .map(|i| scale(&e_vec::<F>(nu, i), &kappa))
                    .chain((1..=k).map(|i| f_vec(nu, i)))
                    .collect();
                (nu, Subspace::span(n, [e(1)]), reps, imgs, F::one())
            }
            _ => return Err(bad),
        };
        Self::new(case, lambda, nu, w, reps, images, factor)
    }
}
