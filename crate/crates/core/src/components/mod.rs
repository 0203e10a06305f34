//! Explicit parametrisations of the components: the recursive builder, the
//! case maps Ω and π, sampled verification and exact incidence of ℙ¹ components.

mod build;
mod incidence;
mod maps;
mod poly;
mod verify;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{enumerate_type_d, DiagramError, Parity, PartitionError};
use crate::field::Field;
use crate::linalg::LinalgError;
use crate::springer::SpringerError;

pub use build::{assemble_case_i, assemble_case_ii, assemble_case_iii, build_flag, build_flag_a, build_flag_d};
pub use incidence::{
    incidence_exact_p1, incidence_graph, incidence_sampled, default_grid, IncidenceGraph, Locus,
};
pub use maps::{case_data, omega, pi_ab, CaseData};
pub use poly::{BinaryForm, Poly, RationalFunction};
pub use verify::{
    distinctness_failures, random_assignment, random_param, verify_component, ComponentReport,
    SampleFailure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComponentError {
    #[error("diagram has {expected} cups but {found} parameters were given")]
    ParamCount { expected: usize, found: usize },
    #[error("[0:0] is not a point of P^1")]
    ZeroParam,
    #[error("cannot parse parameter {0:?}")]
    ParseParam(String),
    #[error("parameter is degenerate at vertex {vertex}")]
    DegenerateFiber { vertex: usize },
    #[error("flag step F_{step} is not the subspace W the case map quotients by")]
    WNotInFlag { step: usize },
    #[error("incidence needs a diagram with exactly one cup, got {cups}")]
    NotP1 { cups: usize },
    #[error("diagrams belong to different Springer fibers")]
    DifferentFibers,
    #[error("({n},{k}) is not a two-row type-C Jordan type")]
    NotTypeC { n: usize, k: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Springer(#[from] SpringerError),
}

impl From<PartitionError> for ComponentError {
    fn from(e: PartitionError) -> Self {
        ComponentError::Diagram(e.into())
    }
}

/// A point [a : b] of ℙ¹, normalised so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjParam<F> {
    a: F,
    b: F,
}

impl<F: Field> ProjParam<F> {
    pub fn new(a: F, b: F) -> Result<Self, ComponentError> {
        if let Some(inv) = a.inverse() {
            Ok(ProjParam { b: b * inv, a: F::one() })
        } else if let Some(inv) = b.inverse() {
            Ok(ProjParam { a: F::zero(), b: b * inv })
        } else {
            Err(ComponentError::ZeroParam)
        }
    }

    /// [1 : γ].
    pub fn affine(gamma: F) -> Self {
        ProjParam { a: F::one(), b: gamma }
    }

    /// [0 : 1].
    pub fn infinity() -> Self {
        ProjParam { a: F::zero(), b: F::one() }
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> ProjParam<G> {
        ProjParam { a: f(&self.a), b: f(&self.b) }
    }
}

impl<F: Field> fmt::Display for ProjParam<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

impl<F: Field + FromStr> FromStr for ProjParam<F> {
    type Err = ComponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ComponentError::ParseParam(s.to_string());
        let (a, b) = s.trim().split_once(':').ok_or_else(bad)?;
        let a = a.trim().parse::<F>().map_err(|_| bad())?;
        let b = b.trim().parse::<F>().map_err(|_| bad())?;
        ProjParam::new(a, b)
    }
}

/// One point of ℙ¹ per cup, in order of left endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParamAssignment<F>(pub Vec<ProjParam<F>>);

impl<F> Deref for ParamAssignment<F> {
    type Target = [ProjParam<F>];

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl<F> From<Vec<ProjParam<F>>> for ParamAssignment<F> {
    fn from(v: Vec<ProjParam<F>>) -> Self {
        ParamAssignment(v)
    }
}

impl<F: Field> fmt::Display for ParamAssignment<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl<F: Field + FromStr> FromStr for ParamAssignment<F> {
    type Err = ComponentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(ParamAssignment(Vec::new()));
        }
        s.split(',').map(str::parse).collect::<Result<Vec<_>, _>>().map(ParamAssignment)
    }
}

/// Number of components of the two-row type-C Springer fiber of Jordan type
/// (n−k, k), read off from one connected component of the type-D fiber of
/// type (n−k+1, k+1).
pub fn type_c_component_count(n: usize, k: usize) -> Result<usize, ComponentError> {
    let bad = ComponentError::NotTypeC { n, k };
    if k == 0 || 2 * k > n {
        return Err(bad);
    }
    let first = n - k;
    // odd parts need even multiplicity
    if (first % 2 == 1 || k % 2 == 1) && first != k {
        return Err(bad);
    }
    Ok(enumerate_type_d(n + 2, k + 1, Some(Parity::Even))?.len())
}
