use crate::diagram::{
    classify_vertex1, crop_case_i, reduce_case_ii, reduce_case_iii, CaseTag, CupDiagram,
    DiagramError, Kind, TwoRowPartition,
};
use crate::field::{Field, GaussianField};
use crate::linalg::{
    build_form, build_nilpotent, e_vec, embedding_p, f_vec, matrix::combine, QuadraticIso,
    Subspace,
};
use crate::springer::{check_membership_a, ray_space_a, ray_space_d, Flag};

use super::{ComponentError, ProjParam};

fn check_input(d: &CupDiagram, kind: Kind, params: usize) -> Result<TwoRowPartition, ComponentError> {
    if d.kind != kind {
        return Err(DiagramError::WrongKind(kind).into());
    }
    d.validate().map_err(DiagramError::from)?;
    if params != d.cups.len() {
        return Err(ComponentError::ParamCount { expected: d.cups.len(), found: params });
    }
    Ok(d.partition()?)
}

/// The flag of K_d at the given parameters, by the case recursion on vertex 1.
pub fn build_flag_d<F: GaussianField>(
    d: &CupDiagram,
    params: &[ProjParam<F>],
) -> Result<Flag<F>, ComponentError> {
    let lambda = check_input(d, Kind::D, params.len())?;
    build_d(d, lambda, params)
}

/// Dispatches on the diagram kind.
pub fn build_flag<F: GaussianField>(
    d: &CupDiagram,
    params: &[ProjParam<F>],
) -> Result<Flag<F>, ComponentError> {
    match d.kind {
        Kind::A => build_flag_a(d, params),
        Kind::D => build_flag_d(d, params),
    }
}

fn build_d<F: GaussianField>(
    d: &CupDiagram,
    lambda: TwoRowPartition,
    params: &[ProjParam<F>],
) -> Result<Flag<F>, ComponentError> {
    if d.n_vertices <= 2 {
        return base_case(d, lambda, params);
    }
    let case = classify_vertex1(d)?;
    match case.tag {
        CaseTag::I => {
            let t = case.t.expect("case I has a cup");
            let (b, c) = crop_case_i(d)?;
            let (pb, pc) = params.split_at(b.cups.len());
            let fb = build_d(&b, b.partition()?, pb)?;
            let fc = build_d(&c, c.partition()?, pc)?;
            assemble_case_i(lambda, t, &fb, &fc)
        }
        CaseTag::II => {
            let c = reduce_case_ii(d)?;
            let fc = build_d(&c, c.partition()?, &params[1..])?;
            let marked = d.cups[0].marked;
            assemble_case_ii(lambda, &params[0], marked, &fc, None)
        }
        tag => {
            let l = match tag {
                CaseTag::III1 => 1,
                CaseTag::III2 => 2,
                CaseTag::III3 => 3,
                _ => 4,
            };
            let c = reduce_case_iii(d)?;
            let fc = build_d(&c, c.partition()?, params)?;
            assemble_case_iii(lambda, l, &fc)
        }
    }
}

fn base_case<F: GaussianField>(
    d: &CupDiagram,
    lambda: TwoRowPartition,
    params: &[ProjParam<F>],
) -> Result<Flag<F>, ComponentError> {
    let n = lambda.n();
    let mut lower = vec![Subspace::zero(n)];
    if let Some(cup) = d.cups.first() {
        let p = &params[0];
        let line = |i| combine(&[(p.a().clone(), &e_vec(lambda, i)), (p.b().clone(), &f_vec(lambda, i))], n);
        lower.push(Subspace::span(n, [line(1)]));
        lower.push(if cup.marked {
            Subspace::span(n, [line(1), line(2)])
        } else {
            Subspace::span(n, [e_vec(lambda, 1), f_vec(lambda, 1)])
        });
    } else {
        for r in &d.rays {
            lower.push(ray_space_d(lambda, d, *r));
        }
    }
    Ok(Flag::from_lower_half(lower, &build_form(lambda)?)?)
}

fn check_ambient<F: Field>(flag: &Flag<F>, nu: TwoRowPartition) -> Result<(), ComponentError> {
    if flag.ambient() != nu.n() {
        return Err(crate::springer::SpringerError::ShapeMismatch {
            expected: nu.n(),
            found: flag.ambient(),
        }
        .into());
    }
    Ok(())
}

/// Case I inverse: F_i = P^μ_λ(F′_i) for i ≤ 2t, F_{2t+i} = ψ^{-1}Q^{-1}(F″_i),
/// with μ = (2t,2t) and the rest by perps.
pub fn assemble_case_i<F: GaussianField>(
    lambda: TwoRowPartition,
    t: usize,
    fb: &Flag<F>,
    fc: &Flag<F>,
) -> Result<Flag<F>, ComponentError> {
    let q = QuadraticIso::case_i(lambda, t)?;
    let mu = TwoRowPartition::from_parts(2 * t, 2 * t)?;
    check_ambient(fb, mu)?;
    check_ambient(fc, q.nu())?;
    let emb = embedding_p::<F>(mu, lambda)?;
    let mut lower: Vec<Subspace<F>> = (0..=2 * t).map(|i| fb.get(i).image(&emb)).collect();
    lower.extend((1..=lambda.m() - 2 * t).map(|i| q.pull_back(fc.get(i))));
    Ok(Flag::from_lower_half(lower, &build_form(lambda)?)?)
}

/// Case II inverse: F_1 = ⟨a e_1 + b f_1⟩, F_i = ψ^{-1}Q^{-1}(F″_{i−1}). The
/// chart defaults to U_1 when a ≠ 0.
pub fn assemble_case_ii<F: GaussianField>(
    lambda: TwoRowPartition,
    param: &ProjParam<F>,
    marked: bool,
    fc: &Flag<F>,
    chart: Option<u8>,
) -> Result<Flag<F>, ComponentError> {
    let chart = chart.unwrap_or(if param.a().is_zero() { 2 } else { 1 });
    let q = QuadraticIso::case_ii(lambda, chart, param.a().clone(), param.b().clone(), marked)?;
    check_ambient(fc, q.nu())?;
    let mut lower = vec![Subspace::zero(lambda.n()), q.w().clone()];
    lower.extend((2..=lambda.m()).map(|i| q.pull_back(fc.get(i - 1))));
    Ok(Flag::from_lower_half(lower, &build_form(lambda)?)?)
}

/// Case III-l inverse: F_1 = W, F_i = ψ^{-1}Q^{-1}(F″_{i−1}).
pub fn assemble_case_iii<F: GaussianField>(
    lambda: TwoRowPartition,
    l: u8,
    fc: &Flag<F>,
) -> Result<Flag<F>, ComponentError> {
    let q = QuadraticIso::case_iii(lambda, l)?;
    check_ambient(fc, q.nu())?;
    let mut lower = vec![Subspace::zero(lambda.n()), q.w().clone()];
    lower.extend((2..=lambda.m()).map(|i| q.pull_back(fc.get(i - 1))));
    Ok(Flag::from_lower_half(lower, &build_form(lambda)?)?)
}

/// Type A, left to right: rays by their fixed span, a cup's left end adds the
/// line [a:b] in the canonical 2-dimensional complement of F_{i−1} inside
/// x^{-1}F_{i−1}, its right end is forced to x^{-h}F_{i−1}. The result is
/// checked against the relations before it is returned.
pub fn build_flag_a<F: Field>(
    d: &CupDiagram,
    params: &[ProjParam<F>],
) -> Result<Flag<F>, ComponentError> {
    let lambda = check_input(d, Kind::A, params.len())?;
    let n = lambda.n();
    let x = build_nilpotent::<F>(lambda);
    let mut spaces = vec![Subspace::zero(n)];
    let mut next = params.iter();
    for v in 1..=n {
        let prev = spaces[v - 1].clone();
        let degenerate = ComponentError::DegenerateFiber { vertex: v };
        let fv = if d.cups.iter().any(|c| c.left == v) {
            let p = next.next().expect("parameter count checked");
            let pre = prev.preimage(&x);
            if pre.dim() != v + 1 {
                return Err(degenerate);
            }
            let complement = Subspace::span(n, pre.basis().iter().map(|r| prev.reduce(r)));
            let (u, w) = (&complement.basis()[0], &complement.basis()[1]);
            prev.sum(&Subspace::span(n, [combine(&[(p.a().clone(), u), (p.b().clone(), w)], n)]))
        } else if let Some(c) = d.cups.iter().find(|c| c.right == v) {
            spaces[c.left - 1].preimage_pow(&x, c.half_span())
        } else {
            ray_space_a(lambda, d, v)
        };
        if fv.dim() != v || !fv.contains(&prev) {
            return Err(degenerate);
        }
        spaces.push(fv);
    }
    let flag = Flag::new(spaces)?;
    let report = check_membership_a(&flag, d)?;
    match report.first_failure() {
        None => Ok(flag),
        Some(f) => Err(ComponentError::DegenerateFiber { vertex: f.vertex }),
    }
}
