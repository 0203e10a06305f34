//! Cup diagrams and explicit irreducible components of two-row Springer
//! fibers in types A and D.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: exact scalars, the rationals and ℚ(ζ) with ζ⁴ = −1;
//! * [`linalg`]: canonical subspaces, x_λ, M^λ, quotients and Q maps;
//! * [`diagram`]: (marked) cup diagrams, enumeration, case analysis, text and rendering;
//! * [`springer`]: flags and the membership relations defining each component;
//! * [`components`]: the recursive parametrisation, verification and incidence.
//!
//! Everything is generic over the scalar field; the aliases below fix it to
//! [`Scalar`], which is what type-D computations need.

pub mod components;
pub mod diagram;
pub mod field;
pub mod linalg;
pub mod springer;

pub use field::{Field, GaussianField, Rational, Scalar};

pub type Subspace = linalg::Subspace<Scalar>;
pub type LinearMap = linalg::LinearMap<Scalar>;
pub type BilinearForm = linalg::BilinearForm<Scalar>;
pub type QuotientSpace = linalg::QuotientSpace<Scalar>;
pub type QuadraticIso = linalg::QuadraticIso<Scalar>;
pub type Flag = springer::Flag<Scalar>;
pub type ProjParam = components::ProjParam<Scalar>;
pub type ParamAssignment = components::ParamAssignment<Scalar>;

pub type RationalSubspace = linalg::Subspace<Rational>;
pub type RationalFlag = springer::Flag<Rational>;
