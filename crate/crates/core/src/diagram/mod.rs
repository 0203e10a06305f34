//! Cup diagrams (type A) and marked cup diagrams (type D).
//!
//! Vertices are numbered from 1. A type-A diagram on n vertices with k cups
//! belongs to λ = (n−k, k); a type-D diagram lives on m = n/2 vertices and
//! determines its Jordan type from its number of cups and rays, see
//! [`CupDiagram::partition`].

mod classify;
mod enumerate;
mod partition;
mod render;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{
    classify_vertex1, crop_case_i, reduce_case_ii, reduce_case_iii, Case1Descriptor, CaseTag,
};
pub use enumerate::{enumerate_type_a, enumerate_type_d, Parity};
pub use partition::{PartitionError, TwoRowPartition};
pub use render::{render, RenderFormat};
pub use text::{format_diagram, parse_diagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cup {
    #[serde(rename = "l")]
    pub left: usize,
    #[serde(rename = "r")]
    pub right: usize,
    pub marked: bool,
}

impl Cup {
    pub fn new(left: usize, right: usize, marked: bool) -> Self {
        Cup { left, right, marked }
    }

    /// (j − i + 1)/2 for the cup (i, j).
    pub fn half_span(&self) -> usize {
        (self.right - self.left + 1) / 2
    }

    pub fn contains(&self, v: usize) -> bool {
        self.left < v && v < self.right
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray {
    #[serde(rename = "v")]
    pub vertex: usize,
    pub marked: bool,
}

impl Ray {
    pub fn new(vertex: usize, marked: bool) -> Self {
        Ray { vertex, marked }
    }
}

/// What sits at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feature {
    Cup(Cup),
    Ray(Ray),
}

/// A rule of the diagram definition that a diagram can break.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("cup ({0},{1}) has left end not smaller than right end")]
    BackwardsCup(usize, usize),
    #[error("vertex {0} is not covered by a cup or ray")]
    UncoveredVertex(usize),
    #[error("vertex {0} is used twice")]
    DoublyCoveredVertex(usize),
    #[error("cups ({0},{1}) and ({2},{3}) cross")]
    CrossingCups(usize, usize, usize, usize),
    #[error("ray {0} lies under a cup")]
    RayUnderCup(usize),
    #[error("cup ({0},{1}) has even span")]
    EvenSpanCup(usize, usize),
    #[error("type A diagram carries a marker")]
    MarkerInTypeA,
    #[error("marked cup nested: ({0},{1})")]
    MarkedCupNested(usize, usize),
    #[error("marked cup ({0},{1}) has a ray to its right")]
    MarkedCupRayToRight(usize, usize),
    #[error("non-rightmost marked ray at {0}")]
    NonRightmostMarkedRay(usize),
    #[error("diagram has {found} cups, expected {expected}")]
    WrongCupCount { expected: usize, found: usize },
    #[error("diagram has {found} vertices, expected {expected}")]
    WrongVertexCount { expected: usize, found: usize },
}

impl Violation {
    /// Stable short name of the violated rule.
    pub fn rule(&self) -> &'static str {
        match self {
            Violation::VertexOutOfRange(_) => "vertex out of range",
            Violation::BackwardsCup(..) => "backwards cup",
            Violation::UncoveredVertex(_) => "uncovered vertex",
            Violation::DoublyCoveredVertex(_) => "doubly covered vertex",
            Violation::CrossingCups(..) => "crossing cups",
            Violation::RayUnderCup(_) => "ray under cup",
            Violation::EvenSpanCup(..) => "even span cup",
            Violation::MarkerInTypeA => "marker in type A",
            Violation::MarkedCupNested(..) => "marked cup nested",
            Violation::MarkedCupRayToRight(..) => "marked cup with ray to its right",
            Violation::NonRightmostMarkedRay(_) => "non-rightmost marked ray",
            Violation::WrongCupCount { .. } => "wrong cup count",
            Violation::WrongVertexCount { .. } => "wrong vertex count",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(#[from] Violation),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("vertex {0} is not a cup endpoint")]
    NotCupEndpoint(usize),
    #[error("diagram has case {found}, expected {expected}")]
    WrongCase { expected: &'static str, found: CaseTag },
    #[error("type D diagram on {0} vertices is a base case (needs at least 3)")]
    BaseCase(usize),
    #[error("expected a type {0:?} diagram")]
    WrongKind(Kind),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CupDiagram {
    pub kind: Kind,
    pub n_vertices: usize,
    pub cups: Vec<Cup>,
    pub rays: Vec<Ray>,
}

impl CupDiagram {
    /// Builds a diagram with cups and rays sorted; does not validate.
    pub fn new(kind: Kind, n_vertices: usize, mut cups: Vec<Cup>, mut rays: Vec<Ray>) -> Self {
        cups.sort();
        rays.sort();
        CupDiagram { kind, n_vertices, cups, rays }
    }

    /// Builds and validates.
    pub fn try_new(
        kind: Kind,
        n_vertices: usize,
        cups: Vec<Cup>,
        rays: Vec<Ray>,
    ) -> Result<Self, DiagramError> {
        let d = Self::new(kind, n_vertices, cups, rays);
        d.validate()?;
        Ok(d)
    }

    /// Checks every diagram rule, reporting the first one broken.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.n_vertices;
        let mut seen = vec![false; n + 1];
        let mut mark = |v: usize| -> Result<(), Violation> {
            if v == 0 || v > n {
                return Err(Violation::VertexOutOfRange(v));
            }
            if seen[v] {
                return Err(Violation::DoublyCoveredVertex(v));
            }
            seen[v] = true;
            Ok(())
        };
        for c in &self.cups {
            if c.left >= c.right {
                return Err(Violation::BackwardsCup(c.left, c.right));
            }
            mark(c.left)?;
            mark(c.right)?;
        }
        for r in &self.rays {
            mark(r.vertex)?;
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v]) {
            return Err(Violation::UncoveredVertex(v));
        }
        for (i, a) in self.cups.iter().enumerate() {
            for b in &self.cups[i + 1..] {
                let (a, b) = if a.left < b.left { (a, b) } else { (b, a) };
                if b.left < a.right && a.right < b.right {
                    return Err(Violation::CrossingCups(a.left, a.right, b.left, b.right));
                }
            }
        }
        for r in &self.rays {
            if self.cups.iter().any(|c| c.contains(r.vertex)) {
                return Err(Violation::RayUnderCup(r.vertex));
            }
        }
        if let Some(c) = self.cups.iter().find(|c| (c.right - c.left) % 2 == 0) {
            return Err(Violation::EvenSpanCup(c.left, c.right));
        }
        if self.kind == Kind::A {
            if self.marker_count() > 0 {
                return Err(Violation::MarkerInTypeA);
            }
            return Ok(());
        }
        for c in self.cups.iter().filter(|c| c.marked) {
            if self.is_nested(c) {
                return Err(Violation::MarkedCupNested(c.left, c.right));
            }
            if self.rays.iter().any(|r| r.vertex > c.right) {
                return Err(Violation::MarkedCupRayToRight(c.left, c.right));
            }
        }
        for r in self.rays.iter().filter(|r| r.marked) {
            if self.rays.iter().any(|s| s.vertex > r.vertex) {
                return Err(Violation::NonRightmostMarkedRay(r.vertex));
            }
        }
        Ok(())
    }

    /// Validates and checks that the diagram belongs to the Jordan type `lambda`.
    pub fn validate_for(&self, lambda: TwoRowPartition) -> Result<(), Violation> {
        self.validate()?;
        let (vertices, cups) = match self.kind {
            Kind::A => (lambda.n(), lambda.k()),
            Kind::D => (lambda.m(), lambda.k() / 2),
        };
        if self.n_vertices != vertices {
            return Err(Violation::WrongVertexCount { expected: vertices, found: self.n_vertices });
        }
        if self.cups.len() != cups {
            return Err(Violation::WrongCupCount { expected: cups, found: self.cups.len() });
        }
        Ok(())
    }

    /// The Jordan type the diagram belongs to.
    ///
    /// Type A: (n − #cups, #cups). Type D on m vertices: (m, m) when there are
    /// no rays or m is odd with a single ray, otherwise (2m − 2c − 1, 2c + 1)
    /// for c cups.
    pub fn partition(&self) -> Result<TwoRowPartition, PartitionError> {
        let c = self.cups.len();
        match self.kind {
            Kind::A => TwoRowPartition::new(self.n_vertices, c),
            Kind::D => {
                let m = self.n_vertices;
                if self.rays.is_empty() {
                    TwoRowPartition::from_parts(m, m)
                } else {
                    TwoRowPartition::from_parts(2 * m - 2 * c - 1, 2 * c + 1)
                }
            }
        }
    }

    /// Dimension of the space V_λ the diagram's flags live in.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            Kind::A => self.n_vertices,
            Kind::D => 2 * self.n_vertices,
        }
    }

    pub fn marker_count(&self) -> usize {
        self.cups.iter().filter(|c| c.marked).count() + self.rays.iter().filter(|r| r.marked).count()
    }

    pub fn parity(&self) -> Parity {
        if self.marker_count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn feature_at(&self, v: usize) -> Option<Feature> {
        self.cups
            .iter()
            .find(|c| c.left == v || c.right == v)
            .map(|c| Feature::Cup(*c))
            .or_else(|| self.rays.iter().find(|r| r.vertex == v).map(|r| Feature::Ray(*r)))
    }

    /// The other endpoint of the cup at `v`.
    pub fn sigma(&self, v: usize) -> Result<usize, DiagramError> {
        match self.feature_at(v) {
            Some(Feature::Cup(c)) => Ok(if c.left == v { c.right } else { c.left }),
            _ => Err(DiagramError::NotCupEndpoint(v)),
        }
    }

    /// Number of cups with both endpoints left of `i`.
    pub fn cups_left_of(&self, i: usize) -> usize {
        self.cups.iter().filter(|c| c.right < i).count()
    }

    pub fn is_nested(&self, c: &Cup) -> bool {
        self.cups.iter().any(|o| o.left < c.left && c.right < o.right)
    }

    /// Whether a marker may be placed on the cup (not nested, no ray to its right).
    pub fn cup_markable(&self, c: &Cup) -> bool {
        !self.is_nested(c) && self.rays.iter().all(|r| r.vertex < c.right)
    }

    /// Whether a marker may be placed on the ray (it is the rightmost ray).
    pub fn ray_markable(&self, r: &Ray) -> bool {
        self.rays.iter().all(|s| s.vertex <= r.vertex)
    }

    pub fn rightmost_ray(&self) -> Option<Ray> {
        self.rays.iter().max_by_key(|r| r.vertex).copied()
    }

    /// Cup left endpoints in ascending order, then a bitmask of markers
    /// (cups first, then rays).
    pub fn canonical_key(&self) -> (Vec<(usize, usize)>, Vec<usize>, u64) {
        let cups = self.cups.iter().map(|c| (c.left, c.right)).collect();
        let rays = self.rays.iter().map(|r| r.vertex).collect();
        let mut mask = 0u64;
        for (i, marked) in self
            .cups
            .iter()
            .map(|c| c.marked)
            .chain(self.rays.iter().map(|r| r.marked))
            .enumerate()
        {
            if marked {
                mask |= 1 << i;
            }
        }
        (cups, rays, mask)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}

impl fmt::Display for CupDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_diagram(self))
    }
}
