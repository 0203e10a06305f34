use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{format_diagram, CupDiagram};
use crate::field::{Field, Scalar};
use crate::springer::{check_membership, Flag};

use super::{build_flag, ComponentError, ParamAssignment, ProjParam};

const HEIGHT: i64 = 7;

fn small_rational<F: Field, R: Rng>(rng: &mut R) -> F {
    F::from_ratio(rng.gen_range(-HEIGHT..=HEIGHT), rng.gen_range(1..=HEIGHT))
}

/// A point of ℙ¹ with coordinates of height at most 7.
pub fn random_param<F: Field, R: Rng>(rng: &mut R) -> ProjParam<F> {
    loop {
        let (a, b) = (small_rational(rng), small_rational(rng));
        if let Ok(p) = ProjParam::new(a, b) {
            return p;
        }
    }
}

pub fn random_assignment<F: Field, R: Rng>(rng: &mut R, len: usize) -> ParamAssignment<F> {
    ParamAssignment((0..len).map(|_| random_param(rng)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleFailure {
    pub sample: usize,
    pub params: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub diagram: String,
    pub cups: usize,
    pub samples: usize,
    pub failures: Vec<SampleFailure>,
    /// Changing any single parameter of any sample changed the flag.
    pub injectivity: bool,
}

impl ComponentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.injectivity
    }
}

fn check_sample(
    d: &CupDiagram,
    params: &ParamAssignment<Scalar>,
) -> Result<Flag<Scalar>, String> {
    let flag = build_flag(d, params).map_err(|e| format!("build: {e}"))?;
    let report = check_membership(&flag, d).map_err(|e| e.to_string())?;
    if let Some(f) = report.first_failure() {
        return Err(format!("{} fails at vertex {}", f.rule, f.vertex));
    }
    Ok(flag)
}

/// Builds `samples` random points of K_d and checks each one against the
/// relations of d, plus injectivity in each coordinate separately.
pub fn verify_component(d: &CupDiagram, samples: usize, seed: u64) -> ComponentReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ell = d.cups.len();
    let jobs: Vec<(ParamAssignment<Scalar>, Vec<ProjParam<Scalar>>)> = (0..samples)
        .map(|_| {
            let p = random_assignment(&mut rng, ell);
            let alt = p
                .iter()
                .map(|old| loop {
                    let q = random_param(&mut rng);
                    if q != *old {
                        break q;
                    }
                })
                .collect();
            (p, alt)
        })
        .collect();
    let results: Vec<(Option<SampleFailure>, bool)> = jobs
        .par_iter()
        .enumerate()
        .map(|(sample, (params, alt))| {
            let fail = |reason: String| SampleFailure { sample, params: params.to_string(), reason };
            let flag = match check_sample(d, params) {
                Ok(f) => f,
                Err(e) => return (Some(fail(e)), true),
            };
            for (j, q) in alt.iter().enumerate() {
                let mut moved = params.clone();
                moved.0[j] = q.clone();
                match check_sample(d, &moved) {
                    Ok(other) if other == flag => return (None, false),
                    Ok(_) => {}
                    Err(e) => return (Some(fail(format!("with parameter {j} = {q}: {e}"))), true),
                }
            }
            (None, true)
        })
        .collect();
    let injectivity = results.iter().all(|(_, inj)| *inj);
    ComponentReport {
        diagram: format_diagram(d),
        cups: ell,
        samples,
        failures: results.into_iter().filter_map(|(f, _)| f).collect(),
        injectivity,
    }
}

/// Ordered pairs (i, j), i ≠ j, for which none of the sampled flags of
/// K_{d_i} fails the relations of d_j. Empty means every pair was told apart.
pub fn distinctness_failures(
    diagrams: &[CupDiagram],
    samples: usize,
    seed: u64,
) -> Result<Vec<(usize, usize)>, ComponentError> {
    let flags: Vec<Vec<Flag<Scalar>>> = diagrams
        .par_iter()
        .enumerate()
        .map(|(i, d)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            (0..samples)
                .map(|_| build_flag(d, &random_assignment(&mut rng, d.cups.len())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..diagrams.len())
        .flat_map(|i| (0..diagrams.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let undistinguished: Vec<Option<(usize, usize)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            for f in &flags[i] {
                if !check_membership(f, &diagrams[j])?.passed() {
                    return Ok(None);
                }
            }
            Ok(Some((i, j)))
        })
        .collect::<Result<_, ComponentError>>()?;
    Ok(undistinguished.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_type_a, enumerate_type_d, parse_diagram};

    #[test]
    fn small_fibers_verify() {
        for d in enumerate_type_d(8, 3, None).unwrap().iter().chain(&enumerate_type_a(5, 2).unwrap()) {
            let r = verify_component(d, 5, 3);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn point_components() {
        let d = parse_diagram("D3: r1 r2 x3").unwrap();
        let r = verify_component(&d, 3, 1);
        assert!(r.passed() && r.cups == 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let d = parse_diagram("D4: c1-4 c2-3").unwrap();
        assert_eq!(verify_component(&d, 4, 11), verify_component(&d, 4, 11));
    }

    #[test]
    fn distinct_components_are_told_apart() {
        let ds = enumerate_type_d(8, 4, None).unwrap();
        assert!(distinctness_failures(&ds, 2, 5).unwrap().is_empty());
    }
}
