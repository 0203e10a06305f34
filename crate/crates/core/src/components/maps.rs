use crate::diagram::{
    classify_vertex1, crop_case_i, reduce_case_ii, reduce_case_iii, CaseTag, CupDiagram,
    TwoRowPartition,
};
use crate::field::{Field, GaussianField};
use crate::linalg::{build_form, e_index, f_index, projection_p, QuadraticIso, Subspace};
use crate::springer::Flag;

use super::ComponentError;

/// What Ω needs for one step of the recursion: the Q map, the number ℓ of
/// flag steps it strips, and the reduced diagram c.
#[derive(Clone, Debug)]
pub struct CaseData<F: Field> {
    pub tag: CaseTag,
    pub ell: usize,
    pub q: QuadraticIso<F>,
    pub reduced: CupDiagram,
}

/// Case data of d at vertex 1. In Case II the line F_1 = ⟨a e_1 + b f_1⟩
/// selects W and the chart (U_1 when a ≠ 0 unless `chart` says otherwise).
pub fn case_data<F: GaussianField>(
    d: &CupDiagram,
    flag: &Flag<F>,
    chart: Option<u8>,
) -> Result<CaseData<F>, ComponentError> {
    let lambda = d.partition()?;
    let case = classify_vertex1(d)?;
    let data = match case.tag {
        CaseTag::I => {
            let t = case.t.expect("case I has a cup");
            let (_, c) = crop_case_i(d)?;
            CaseData { tag: case.tag, ell: 2 * t, q: QuadraticIso::case_i(lambda, t)?, reduced: c }
        }
        CaseTag::II => {
            let line = flag.get(1);
            let v = line.basis().first().ok_or(ComponentError::WNotInFlag { step: 1 })?;
            let (a, b) = (v[e_index(lambda, 1)].clone(), v[f_index(lambda, 1)].clone());
            if a.is_zero() && b.is_zero() {
                return Err(ComponentError::WNotInFlag { step: 1 });
            }
            let chart = chart.unwrap_or(if a.is_zero() { 2 } else { 1 });
            let q = QuadraticIso::case_ii(lambda, chart, a, b, d.cups[0].marked)?;
            CaseData { tag: case.tag, ell: 1, q, reduced: reduce_case_ii(d)? }
        }
        tag => {
            let l = match tag {
                CaseTag::III1 => 1,
                CaseTag::III2 => 2,
                CaseTag::III3 => 3,
                _ => 4,
            };
            let q = QuadraticIso::case_iii(lambda, l)?;
            CaseData { tag, ell: 1, q, reduced: reduce_case_iii(d)? }
        }
    };
    Ok(data)
}

/// Ω: F″_i = Q(F_{ℓ+i}/W), a flag over V_ν.
pub fn omega<F: GaussianField>(
    flag: &Flag<F>,
    data: &CaseData<F>,
) -> Result<Flag<F>, ComponentError> {
    let ell = data.ell;
    if flag.get(ell) != data.q.w() {
        return Err(ComponentError::WNotInFlag { step: ell });
    }
    let n = flag.ambient();
    let spaces = (0..=n - 2 * ell)
        .map(|i| data.q.forward(flag.get(ell + i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Flag::new(spaces)?)
}

/// π_{a,b}: F′_i = P^λ_μ(F_i) for i ≤ 2t with μ = (2t,2t), completed by perps.
pub fn pi_ab<F: GaussianField>(
    flag: &Flag<F>,
    lambda: TwoRowPartition,
    t: usize,
) -> Result<Flag<F>, ComponentError> {
    let mu = TwoRowPartition::from_parts(2 * t, 2 * t)?;
    let p = projection_p::<F>(lambda, mu)?;
    let lower: Vec<Subspace<F>> = (0..=2 * t).map(|i| flag.get(i).image(&p)).collect();
    Ok(Flag::from_lower_half(lower, &build_form(mu)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::{
        assemble_case_i, assemble_case_ii, assemble_case_iii, build_flag_d, ProjParam,
    };
    use crate::diagram::{enumerate_type_d, parse_diagram};
    use crate::field::Scalar;
    use crate::linalg::{e_vec, f_vec, standard_span};
    use crate::springer::check_membership_d;
    use num_traits::Zero;

    fn pp(a: i64, b: i64) -> ProjParam<Scalar> {
        ProjParam::new(Scalar::from(a), Scalar::from(b)).unwrap()
    }

    fn params(d: &CupDiagram, seed: i64) -> Vec<ProjParam<Scalar>> {
        (0..d.cups.len() as i64).map(|i| pp(1 + (seed + i) % 3, 2 - 3 * i + seed)).collect()
    }

    #[test]
    fn case_i_example() {
        let d = parse_diagram("D4: c1-2 c3-4").unwrap();
        let l = d.partition().unwrap();
        let f = build_flag_d(&d, &[pp(2, 5), pp(1, -1)]).unwrap();
        let data = case_data(&d, &f, None).unwrap();
        let c = omega(&f, &data).unwrap();
        assert!(check_membership_d(&c, &data.reduced).unwrap().passed());
        assert_eq!(c, build_flag_d(&data.reduced, &[pp(1, -1)]).unwrap());
        let b = pi_ab(&f, l, 1).unwrap();
        assert_eq!(b, build_flag_d(&parse_diagram("D2: c1-2").unwrap(), &[pp(2, 5)]).unwrap());
        let mu = TwoRowPartition::from_parts(2, 2).unwrap();
        assert_eq!(*b.get(2), standard_span(mu, 1, 1));
    }

    #[test]
    fn case_iii_example() {
        let d = parse_diagram("D5: r1 m2-3 c4-5").unwrap();
        let f = build_flag_d(&d, &[pp(3, 1), pp(1, 4)]).unwrap();
        let data = case_data(&d, &f, None).unwrap();
        assert_eq!(data.reduced, parse_diagram("D4: m1-2 c3-4").unwrap());
        let c = omega(&f, &data).unwrap();
        assert!(check_membership_d(&c, &data.reduced).unwrap().passed());
    }

    #[test]
    fn omega_rejects_wrong_w() {
        let d = parse_diagram("D3: r1 c2-3").unwrap();
        let other = parse_diagram("D3: x1 c2-3").unwrap();
        let f = build_flag_d(&other, &[pp(1, 1)]).unwrap();
        let data = case_data(&d, &f, None).unwrap();
        assert_eq!(omega(&f, &data), Err(ComponentError::WNotInFlag { step: 1 }));
    }

    /// (π, Ω) followed by the Case I inverse, Ω followed by the Case III
    /// inverse, and the Case II commuting triangle on the chart overlap.
    #[test]
    fn round_trips_up_to_ten() {
        for n in (6..=10).step_by(2) {
            for k in 1..=n / 2 {
                let Ok(ds) = enumerate_type_d(n, k, None) else { continue };
                for d in ds {
                    let lambda = d.partition().unwrap();
                    for seed in 0..2 {
                        let ps = params(&d, seed);
                        let f = build_flag_d(&d, &ps).unwrap();
                        let data = case_data(&d, &f, None).unwrap();
                        let c = omega(&f, &data).unwrap();
                        assert!(check_membership_d(&c, &data.reduced).unwrap().passed(), "{d}");
                        let back = match data.tag {
                            CaseTag::I => {
                                let t = data.ell / 2;
                                assemble_case_i(lambda, t, &pi_ab(&f, lambda, t).unwrap(), &c)
                            }
                            CaseTag::II => {
                                let v = &f.get(1).basis()[0];
                                let p = ProjParam::new(
                                    v[e_index(lambda, 1)].clone(),
                                    v[f_index(lambda, 1)].clone(),
                                )
                                .unwrap();
                                // through the other chart when both are available
                                let chart = if p.a().is_zero() || p.b().is_zero() { None } else { Some(2) };
                                let data2 = case_data(&d, &f, chart).unwrap();
                                let c2 = omega(&f, &data2).unwrap();
                                assert!(check_membership_d(&c2, &data2.reduced).unwrap().passed());
                                assemble_case_ii(lambda, &p, d.cups[0].marked, &c2, chart)
                            }
                            CaseTag::III1 => assemble_case_iii(lambda, 1, &c),
                            CaseTag::III2 => assemble_case_iii(lambda, 2, &c),
                            CaseTag::III3 => assemble_case_iii(lambda, 3, &c),
                            CaseTag::III4 => assemble_case_iii(lambda, 4, &c),
                        }
                        .unwrap();
                        assert_eq!(back, f, "{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn pi_lands_on_standard_span() {
        let d = parse_diagram("D6: c1-2 c3-4 c5-6").unwrap();
        let l = d.partition().unwrap();
        let f = build_flag_d(&d, &[pp(1, 2), pp(0, 1), pp(1, 0)]).unwrap();
        let b = pi_ab(&f, l, 1).unwrap();
        let mu = TwoRowPartition::from_parts(2, 2).unwrap();
        assert_eq!(*b.get(2), Subspace::span(4, [e_vec(mu, 1), f_vec(mu, 1)]));
    }
}
