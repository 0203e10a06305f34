//! The fixed data attached to a Jordan type λ = (λ₁, λ₂): the basis
//! e₁..e_{λ₁}, f₁..f_{λ₂} of V_λ, the nilpotent x_λ and the form M^λ.

use crate::diagram::TwoRowPartition;
use crate::field::Field;

use super::matrix::{unit, Matrix};
use super::subspace::{BilinearForm, LinearMap, Subspace};
use super::LinalgError;

/// Coordinate index of e_i (1-based i).
pub fn e_index(lambda: TwoRowPartition, i: usize) -> usize {
    assert!(i >= 1 && i <= lambda.first(), "e_{i} out of range for {lambda}");
    i - 1
}

/// Coordinate index of f_j (1-based j).
pub fn f_index(lambda: TwoRowPartition, j: usize) -> usize {
    assert!(j >= 1 && j <= lambda.second(), "f_{j} out of range for {lambda}");
    lambda.first() + j - 1
}

pub fn e_vec<F: Field>(lambda: TwoRowPartition, i: usize) -> Vec<F> {
    unit(lambda.n(), e_index(lambda, i))
}

pub fn f_vec<F: Field>(lambda: TwoRowPartition, j: usize) -> Vec<F> {
    unit(lambda.n(), f_index(lambda, j))
}

/// ⟨e_1..e_a, f_1..f_b⟩.
pub fn standard_span<F: Field>(lambda: TwoRowPartition, a: usize, b: usize) -> Subspace<F> {
    Subspace::span(
        lambda.n(),
        (1..=a).map(|i| e_vec(lambda, i)).chain((1..=b).map(|j| f_vec(lambda, j))),
    )
}

/// x_λ: e_i ↦ e_{i−1}, f_j ↦ f_{j−1}, e_1, f_1 ↦ 0.
pub fn build_nilpotent<F: Field>(lambda: TwoRowPartition) -> LinearMap<F> {
    let mut m = Matrix::zeros(lambda.n(), lambda.n());
    for i in 2..=lambda.first() {
        m.set(e_index(lambda, i - 1), e_index(lambda, i), F::one());
    }
    for j in 2..=lambda.second() {
        m.set(f_index(lambda, j - 1), f_index(lambda, j), F::one());
    }
    LinearMap::new(m)
}

/// Antidiagonal J_i with (J_i)_{r,s} = (−1)^{r−1} when r + s = i + 1.
pub fn j_block<F: Field>(i: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(i, i);
    for r in 0..i {
        let v = if r % 2 == 0 { F::one() } else { -F::one() };
        m.set(r, i - 1 - r, v);
    }
    m
}

/// The form M^λ: off-diagonal blocks (J_m, J_mᵗ) for equal parts,
/// block-diagonal (J_{n−k}, J_k) otherwise.
pub fn build_form<F: Field>(lambda: TwoRowPartition) -> Result<BilinearForm<F>, LinalgError> {
    if !lambda.is_type_d() {
        return Err(LinalgError::InadmissiblePartition(lambda));
    }
    let (a, b) = (lambda.first(), lambda.second());
    let mut g = Matrix::zeros(lambda.n(), lambda.n());
    if a == b {
        let j = j_block::<F>(a);
        for r in 0..a {
            for s in 0..a {
                let v = j.get(r, s).clone();
                if !v.is_zero() {
                    g.set(r, a + s, v.clone());
                    g.set(a + s, r, v);
                }
            }
        }
    } else {
        let ja = j_block::<F>(a);
        let jb = j_block::<F>(b);
        for r in 0..a {
            for s in 0..a {
                g.set(r, s, ja.get(r, s).clone());
            }
        }
        for r in 0..b {
            for s in 0..b {
                g.set(a + r, a + s, jb.get(r, s).clone());
            }
        }
    }
    Ok(BilinearForm::new_unchecked(g))
}

/// P^λ_μ: e^λ_i ↦ e^μ_i for i ≤ μ₁ and f^λ_j ↦ f^μ_j for j ≤ μ₂, all else ↦ 0.
pub fn projection_p<F: Field>(
    lambda: TwoRowPartition,
    mu: TwoRowPartition,
) -> Result<LinearMap<F>, LinalgError> {
    if mu.first() > lambda.first() || mu.second() > lambda.second() {
        return Err(LinalgError::ShapeMismatch { lambda, mu });
    }
    let mut m = Matrix::zeros(mu.n(), lambda.n());
    for i in 1..=mu.first() {
        m.set(e_index(mu, i), e_index(lambda, i), F::one());
    }
    for j in 1..=mu.second() {
        m.set(f_index(mu, j), f_index(lambda, j), F::one());
    }
    Ok(LinearMap::new(m))
}

/// P^μ_λ, the embedding V_μ → V_λ right inverse to [`projection_p`].
pub fn embedding_p<F: Field>(
    mu: TwoRowPartition,
    lambda: TwoRowPartition,
) -> Result<LinearMap<F>, LinalgError> {
    let p = projection_p::<F>(lambda, mu)?;
    Ok(LinearMap::new(p.matrix().transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn lam(a: usize, b: usize) -> TwoRowPartition {
        TwoRowPartition::from_parts(a, b).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn nilpotent_shape() {
        let l = lam(3, 1);
        let x = build_nilpotent::<Rational>(l);
        assert_eq!(x.apply(&e_vec(l, 3)), e_vec::<Rational>(l, 2));
        assert_eq!(x.apply(&e_vec(l, 2)), e_vec::<Rational>(l, 1));
        assert!(x.apply(&e_vec(l, 1)).iter().all(|v| *v == q(0)));
        assert!(x.apply(&f_vec(l, 1)).iter().all(|v| *v == q(0)));
        assert!(x.pow(3).is_zero());
        assert_eq!(Subspace::zero(4).preimage(&x), standard_span::<Rational>(l, 1, 1));
    }

    #[test]
    fn form_entries_unequal() {
        let l = lam(5, 3);
        let b = build_form::<Rational>(l).unwrap();
        let e = |i| e_vec::<Rational>(l, i);
        let f = |j| f_vec::<Rational>(l, j);
        assert_eq!(b.eval(&e(1), &e(5)), q(1));
        assert_eq!(b.eval(&e(2), &e(4)), q(-1));
        assert_eq!(b.eval(&e(3), &e(3)), q(1));
        assert_eq!(b.eval(&f(1), &f(3)), q(1));
        assert_eq!(b.eval(&f(2), &f(2)), q(-1));
        for i in 1..=5 {
            for j in 1..=3 {
                assert_eq!(b.eval(&e(i), &f(j)), q(0));
            }
        }
    }

    #[test]
    fn form_entries_equal() {
        let l = lam(2, 2);
        let b = build_form::<Rational>(l).unwrap();
        let e = |i| e_vec::<Rational>(l, i);
        let f = |j| f_vec::<Rational>(l, j);
        assert_eq!(b.eval(&e(1), &f(2)), q(1));
        assert_eq!(b.eval(&e(2), &f(1)), q(-1));
        assert_eq!(b.eval(&e(1), &e(2)), q(0));
        assert_eq!(
            b.perp(&Subspace::span(4, [e(1)])),
            Subspace::span(4, [e(1), e(2), f(1)])
        );
        let x = build_nilpotent::<Rational>(l);
        assert_eq!(
            Subspace::span(4, [e(2), f(2)]).image(&x),
            Subspace::span(4, [e(1), f(1)])
        );
    }

    #[test]
    fn inadmissible_form_rejected() {
        assert!(build_form::<Rational>(lam(4, 2)).is_err());
    }

    #[test]
    fn admissible_forms_symmetric_invertible_and_x_skew() {
        for n in (2..=12).step_by(2) {
            for k in 1..=n / 2 {
                let l = TwoRowPartition::new(n, k).unwrap();
                if !l.is_type_d() {
                    continue;
                }
                let b = build_form::<Rational>(l).unwrap();
                assert!(BilinearForm::new(b.gram().clone()).is_some(), "{l}");
                let x = build_nilpotent::<Rational>(l);
                for i in 0..n {
                    for j in 0..n {
                        let (u, v) = (unit::<Rational>(n, i), unit::<Rational>(n, j));
                        let lhs = b.eval(&x.apply(&u), &v);
                        let rhs = -b.eval(&u, &x.apply(&v));
                        assert_eq!(lhs, rhs, "{l} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn projection_properties() {
        let l = lam(4, 4);
        let m = lam(2, 2);
        let p = projection_p::<Rational>(l, m).unwrap();
        let s = embedding_p::<Rational>(m, l).unwrap();
        assert_eq!(p.compose(&s), LinearMap::identity(4));
        assert!(p.apply(&e_vec(l, 3)).iter().all(|v| *v == q(0)));
        assert_eq!(p.apply(&e_vec(l, 2)), e_vec::<Rational>(m, 2));
        // intertwining holds on the embedded copy of V_μ
        let lhs = p.compose(&build_nilpotent(l)).compose(&s);
        assert_eq!(lhs, build_nilpotent::<Rational>(m));
        assert_ne!(p.compose(&build_nilpotent(l)), build_nilpotent::<Rational>(m).compose(&p));
        assert!(projection_p::<Rational>(m, l).is_err());
    }
}
