//! The case split on vertex 1 driving the recursive construction, and the
//! smaller diagrams each case reduces to.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Cup, CupDiagram, DiagramError, Feature, Kind, Ray};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    I,
    II,
    III1,
    III2,
    III3,
    III4,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III1 => "III-1",
            CaseTag::III2 => "III-2",
            CaseTag::III3 => "III-3",
            CaseTag::III4 => "III-4",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case1Descriptor {
    pub tag: CaseTag,
    /// Half-span of the cup at vertex 1, when there is one.
    pub t: Option<usize>,
}

/// Which case vertex 1 of a type-D diagram with m ≥ 3 falls into.
pub fn classify_vertex1(d: &CupDiagram) -> Result<Case1Descriptor, DiagramError> {
    if d.kind != Kind::D {
        return Err(DiagramError::WrongKind(Kind::D));
    }
    d.validate()?;
    let m = d.n_vertices;
    if m < 3 {
        return Err(DiagramError::BaseCase(m));
    }
    let lambda = d.partition()?;
    match d.feature_at(1) {
        Some(Feature::Cup(c)) => {
            let t = Some(c.half_span());
            let tag = if !c.marked && c.right < m { CaseTag::I } else { CaseTag::II };
            Ok(Case1Descriptor { tag, t })
        }
        Some(Feature::Ray(r)) => {
            let tag = if lambda.equal_parts() {
                if r.marked {
                    CaseTag::III2
                } else {
                    CaseTag::III1
                }
            } else if lambda.first() == lambda.second() + 2 {
                CaseTag::III3
            } else {
                CaseTag::III4
            };
            Ok(Case1Descriptor { tag, t: None })
        }
        None => unreachable!("validated diagram covers vertex 1"),
    }
}

/// The subdiagram on vertices lo..=hi, renumbered from 1.
fn restrict(d: &CupDiagram, lo: usize, hi: usize) -> CupDiagram {
    let cups = d
        .cups
        .iter()
        .filter(|c| lo <= c.left && c.right <= hi)
        .map(|c| Cup::new(c.left + 1 - lo, c.right + 1 - lo, c.marked))
        .collect();
    let rays = d
        .rays
        .iter()
        .filter(|r| lo <= r.vertex && r.vertex <= hi)
        .map(|r| Ray::new(r.vertex + 1 - lo, r.marked))
        .collect();
    CupDiagram::new(d.kind, hi + 1 - lo, cups, rays)
}

fn expect(
    d: &CupDiagram,
    expected: &'static str,
    accept: fn(CaseTag) -> bool,
) -> Result<Case1Descriptor, DiagramError> {
    let c = classify_vertex1(d)?;
    if !accept(c.tag) {
        return Err(DiagramError::WrongCase { expected, found: c.tag });
    }
    Ok(c)
}

/// Case I: b on vertices 1..2t (Jordan type (2t,2t)) and c on the rest.
pub fn crop_case_i(d: &CupDiagram) -> Result<(CupDiagram, CupDiagram), DiagramError> {
    let c = expect(d, "I", |t| t == CaseTag::I)?;
    let two_t = 2 * c.t.expect("case I has a cup");
    Ok((restrict(d, 1, two_t), restrict(d, two_t + 1, d.n_vertices)))
}

/// Case II: drop the cup at vertex 1, put a marked ray at its other end and
/// shift everything down by one.
pub fn reduce_case_ii(d: &CupDiagram) -> Result<CupDiagram, DiagramError> {
    expect(d, "II", |t| t == CaseTag::II)?;
    let s = d.sigma(1)?;
    let cups = d
        .cups
        .iter()
        .filter(|c| c.left != 1)
        .map(|c| Cup::new(c.left - 1, c.right - 1, c.marked))
        .collect();
    let mut rays: Vec<Ray> = d.rays.iter().map(|r| Ray::new(r.vertex - 1, r.marked)).collect();
    rays.push(Ray::new(s - 1, true));
    Ok(CupDiagram::new(Kind::D, d.n_vertices - 1, cups, rays))
}

/// Case III: drop the ray at vertex 1 and shift everything down by one.
pub fn reduce_case_iii(d: &CupDiagram) -> Result<CupDiagram, DiagramError> {
    expect(d, "III", |t| !matches!(t, CaseTag::I | CaseTag::II))?;
    Ok(restrict(d, 2, d.n_vertices))
}
