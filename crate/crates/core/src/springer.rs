//! Flags, the Springer and isotropy conditions, and the relations cutting out
//! the component attached to a cup diagram.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{CupDiagram, DiagramError, Kind, Ray, TwoRowPartition};
use crate::field::{Field, GaussianField};
use crate::linalg::{
    build_form, build_nilpotent, e_vec, f_vec, ray_twist, standard_span, BilinearForm, LinalgError,
    LinearMap, Subspace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpringerError {
    #[error("F_{index} does not have dimension {index} or does not contain F_{prev}", prev = .index - 1)]
    NotAFlag { index: usize },
    #[error("flag lives in dimension {found}, diagram needs {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("bad flag JSON: {0}")]
    Json(String),
}

/// A complete flag 0 = F_0 ⊂ F_1 ⊂ … ⊂ F_n = V.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag<F> {
    spaces: Vec<Subspace<F>>,
}

impl<F: Field> Flag<F> {
    /// From F_0..F_n, checking dimensions and nesting.
    pub fn new(spaces: Vec<Subspace<F>>) -> Result<Self, SpringerError> {
        let n = spaces.len().saturating_sub(1);
        for (i, s) in spaces.iter().enumerate() {
            if s.ambient() != n {
                return Err(SpringerError::ShapeMismatch { expected: n, found: s.ambient() });
            }
            if s.dim() != i || (i > 0 && !s.contains(&spaces[i - 1])) {
                return Err(SpringerError::NotAFlag { index: i });
            }
        }
        Ok(Flag { spaces })
    }

    /// From F_1..F_{n−1}.
    pub fn from_inner(ambient: usize, inner: Vec<Subspace<F>>) -> Result<Self, SpringerError> {
        let mut spaces = Vec::with_capacity(ambient + 1);
        spaces.push(Subspace::zero(ambient));
        spaces.extend(inner);
        spaces.push(Subspace::full(ambient));
        Self::new(spaces)
    }

    /// From F_0..F_{n/2}, filling in F_{n−i} = F_i^⊥.
    pub fn from_lower_half(
        lower: Vec<Subspace<F>>,
        form: &BilinearForm<F>,
    ) -> Result<Self, SpringerError> {
        let n = form.dim();
        let half = n / 2;
        if lower.len() != half + 1 {
            return Err(SpringerError::ShapeMismatch { expected: half + 1, found: lower.len() });
        }
        let mut spaces = lower;
        for i in half + 1..=n {
            let p = form.perp(&spaces[n - i]);
            spaces.push(p);
        }
        Self::new(spaces)
    }

    pub fn ambient(&self) -> usize {
        self.spaces.len() - 1
    }

    /// F_i.
    pub fn get(&self, i: usize) -> &Subspace<F> {
        &self.spaces[i]
    }

    pub fn spaces(&self) -> &[Subspace<F>] {
        &self.spaces
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> Flag<G> {
        Flag { spaces: self.spaces.iter().map(|s| s.map_field(f)).collect() }
    }

    /// `{ambient, subspaces}` with F_1..F_{n−1}, each `{ambient, rows}`.
    pub fn to_json(&self) -> Value {
        let subs: Vec<Value> =
            self.spaces[1..self.ambient().max(1)].iter().map(subspace_to_json).collect();
        json!({ "ambient": self.ambient(), "subspaces": subs })
    }
}

impl<F: Field + FromStr> Flag<F> {
    pub fn from_json(v: &Value) -> Result<Self, SpringerError> {
        let bad = |m: &str| SpringerError::Json(m.to_string());
        let n = v["ambient"].as_u64().ok_or_else(|| bad("missing ambient"))? as usize;
        let subs = v["subspaces"].as_array().ok_or_else(|| bad("missing subspaces"))?;
        let inner = subs.iter().map(subspace_from_json).collect::<Result<Vec<_>, _>>()?;
        Self::from_inner(n, inner)
    }
}

impl<F: Field> fmt::Debug for Flag<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.spaces[1..]).finish()
    }
}

pub fn subspace_to_json<F: Field>(s: &Subspace<F>) -> Value {
    let rows: Vec<Vec<String>> =
        s.basis().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    json!({ "ambient": s.ambient(), "rows": rows })
}

pub fn subspace_from_json<F: Field + FromStr>(v: &Value) -> Result<Subspace<F>, SpringerError> {
    let bad = |m: String| SpringerError::Json(m);
    let n = v["ambient"].as_u64().ok_or_else(|| bad("missing ambient".into()))? as usize;
    let rows = v["rows"].as_array().ok_or_else(|| bad("missing rows".into()))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| bad("row is not an array".into()))?;
        if r.len() != n {
            return Err(bad(format!("row of length {} in ambient {n}", r.len())));
        }
        let row = r
            .iter()
            .map(|x| {
                let s = match x {
                    Value::String(s) => s.clone(),
                    Value::Number(k) => k.to_string(),
                    _ => return Err(bad(format!("bad scalar {x}"))),
                };
                s.parse::<F>().map_err(|_| bad(format!("bad scalar {s:?}")))
            })
            .collect::<Result<Vec<F>, _>>()?;
        out.push(row);
    }
    Ok(Subspace::span(n, out))
}

/// All partitions of n (parts descending) in which every part j with
/// (−1)^j = ε occurs an even number of times.
pub fn admissible_partitions(n: usize, epsilon: i8) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, n, &mut Vec::new(), &mut all);
    let restricted_parity = if epsilon == 1 { 0 } else { 1 };
    all.retain(|p| {
        p.iter()
            .filter(|&&j| j % 2 == restricted_parity)
            .all(|&j| p.iter().filter(|&&q| q == j).count() % 2 == 0)
    });
    all
}

/// x F_i ⊆ F_{i−1} for all i.
pub fn is_springer_flag<F: Field>(flag: &Flag<F>, x: &LinearMap<F>) -> bool {
    springer_failure(flag, x).is_none()
}

fn springer_failure<F: Field>(flag: &Flag<F>, x: &LinearMap<F>) -> Option<usize> {
    (1..=flag.ambient()).find(|&i| !flag.get(i - 1).contains(&flag.get(i).image(x)))
}

/// F_{n−i} = F_i^⊥ for all i ≤ n/2.
pub fn is_isotropic_flag<F: Field>(flag: &Flag<F>, form: &BilinearForm<F>) -> bool {
    isotropy_failure(flag, form).is_none()
}

fn isotropy_failure<F: Field>(flag: &Flag<F>, form: &BilinearForm<F>) -> Option<usize> {
    let n = flag.ambient();
    (0..=n / 2).find(|&i| form.perp(flag.get(i)) != *flag.get(n - i))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// x F_i ⊆ F_{i−1}.
    Springer,
    /// F_{n−i} = F_i^⊥.
    Isotropic,
    /// F_j = x^{−(j−i+1)/2} F_{i−1} for an unmarked cup (i, j).
    Cup,
    /// F_{i−1} + x^{(j−i+1)/2} F_j = F_i for a marked cup (i, j).
    MarkedCupSum,
    /// F_j^⊥ = x^{−(n−2j)/2} F_j for a marked cup (i, j).
    MarkedCupPerp,
    /// F_i equals the prescribed span for the ray at i.
    Ray,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Springer => "springer",
            Rule::Isotropic => "isotropic",
            Rule::Cup => "cup",
            Rule::MarkedCupSum => "marked-cup-sum",
            Rule::MarkedCupPerp => "marked-cup-perp",
            Rule::Ray => "ray",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub vertex: usize,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub springer: bool,
    pub isotropic: bool,
    pub failures: Vec<RelationFailure>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.springer && self.isotropic && self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<RelationFailure> {
        self.failures.first().copied()
    }
}

/// The span prescribed for F_i by a ray at i in a type-A diagram:
/// ⟨e_1..e_{i−c}, f_1..f_c⟩ with c the number of cups left of i.
pub fn ray_space_a<F: Field>(lambda: TwoRowPartition, d: &CupDiagram, vertex: usize) -> Subspace<F> {
    let c = d.cups_left_of(vertex);
    standard_span(lambda, vertex - c, c)
}

/// The span prescribed for F_i by the ray at i of a type-D diagram.
pub fn ray_space_d<F: GaussianField>(
    lambda: TwoRowPartition,
    d: &CupDiagram,
    ray: Ray,
) -> Subspace<F> {
    let i = ray.vertex;
    if lambda.equal_parts() {
        return if ray.marked {
            standard_span(lambda, (i - 1) / 2, (i + 1) / 2)
        } else {
            standard_span(lambda, (i + 1) / 2, (i - 1) / 2)
        };
    }
    let c = d.cups_left_of(i);
    let rightmost = d.rightmost_ray().map(|r| r.vertex) == Some(i);
    if ray.marked || rightmost {
        let iota = ray_twist::<F>(lambda);
        let sign = if ray.marked { iota } else { -iota };
        let twisted: Vec<F> = f_vec::<F>(lambda, c + 1)
            .into_iter()
            .zip(e_vec::<F>(lambda, i - c))
            .map(|(f, e)| f + sign.clone() * e)
            .collect();
        standard_span(lambda, i - c - 1, c).sum(&Subspace::span(lambda.n(), [twisted]))
    } else {
        standard_span(lambda, i - c, c)
    }
}

fn check_shape<F: Field>(
    flag: &Flag<F>,
    d: &CupDiagram,
    kind: Kind,
) -> Result<TwoRowPartition, SpringerError> {
    if d.kind != kind {
        return Err(DiagramError::WrongKind(kind).into());
    }
    d.validate().map_err(DiagramError::from)?;
    let lambda = d.partition().map_err(DiagramError::from)?;
    if flag.ambient() != lambda.n() {
        return Err(SpringerError::ShapeMismatch { expected: lambda.n(), found: flag.ambient() });
    }
    Ok(lambda)
}

/// Checks F against the relations of a type-A diagram.
pub fn check_membership_a<F: Field>(
    flag: &Flag<F>,
    d: &CupDiagram,
) -> Result<MembershipReport, SpringerError> {
    let lambda = check_shape(flag, d, Kind::A)?;
    let x = build_nilpotent::<F>(lambda);
    let mut failures = Vec::new();
    let springer = match springer_failure(flag, &x) {
        Some(i) => {
            failures.push(RelationFailure { vertex: i, rule: Rule::Springer });
            false
        }
        None => true,
    };
    for v in 1..=d.n_vertices {
        let ok = if let Some(c) = d.cups.iter().find(|c| c.right == v) {
            *flag.get(v) == flag.get(c.left - 1).preimage_pow(&x, c.half_span())
        } else if d.rays.iter().any(|r| r.vertex == v) {
            *flag.get(v) == ray_space_a(lambda, d, v)
        } else {
            continue;
        };
        if !ok {
            let rule = if d.rays.iter().any(|r| r.vertex == v) { Rule::Ray } else { Rule::Cup };
            failures.push(RelationFailure { vertex: v, rule });
        }
    }
    Ok(MembershipReport { springer, isotropic: true, failures })
}

/// Checks F against the relations of a marked (type-D) diagram.
pub fn check_membership_d<F: GaussianField>(
    flag: &Flag<F>,
    d: &CupDiagram,
) -> Result<MembershipReport, SpringerError> {
    let lambda = check_shape(flag, d, Kind::D)?;
    let n = lambda.n();
    let x = build_nilpotent::<F>(lambda);
    let form = build_form::<F>(lambda)?;
    let mut failures = Vec::new();
    let springer = match springer_failure(flag, &x) {
        Some(i) => {
            failures.push(RelationFailure { vertex: i, rule: Rule::Springer });
            false
        }
        None => true,
    };
    let isotropic = match isotropy_failure(flag, &form) {
        Some(i) => {
            failures.push(RelationFailure { vertex: i, rule: Rule::Isotropic });
            false
        }
        None => true,
    };
    for v in 1..=d.n_vertices {
        if let Some(c) = d.cups.iter().find(|c| c.right == v) {
            let (i, j, h) = (c.left, c.right, c.half_span());
            if !c.marked {
                if *flag.get(j) != flag.get(i - 1).preimage_pow(&x, h) {
                    failures.push(RelationFailure { vertex: j, rule: Rule::Cup });
                }
            } else {
                if flag.get(i - 1).sum(&flag.get(j).image_pow(&x, h)) != *flag.get(i) {
                    failures.push(RelationFailure { vertex: j, rule: Rule::MarkedCupSum });
                }
                if form.perp(flag.get(j)) != flag.get(j).preimage_pow(&x, (n - 2 * j) / 2) {
                    failures.push(RelationFailure { vertex: j, rule: Rule::MarkedCupPerp });
                }
            }
        } else if let Some(r) = d.rays.iter().find(|r| r.vertex == v) {
            if *flag.get(v) != ray_space_d(lambda, d, *r) {
                failures.push(RelationFailure { vertex: v, rule: Rule::Ray });
            }
        }
    }
    Ok(MembershipReport { springer, isotropic, failures })
}

/// Dispatches on the diagram kind.
pub fn check_membership<F: GaussianField>(
    flag: &Flag<F>,
    d: &CupDiagram,
) -> Result<MembershipReport, SpringerError> {
    match d.kind {
        Kind::A => check_membership_a(flag, d),
        Kind::D => check_membership_d(flag, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::field::{Rational, Scalar};

    fn lam(a: usize, b: usize) -> TwoRowPartition {
        TwoRowPartition::from_parts(a, b).unwrap()
    }

    fn span<F: Field>(n: usize, rows: Vec<Vec<F>>) -> Subspace<F> {
        Subspace::span(n, rows)
    }

    #[test]
    fn admissible_partitions_of_four() {
        let p = admissible_partitions(4, 1);
        assert_eq!(p, vec![vec![3, 1], vec![2, 2], vec![1, 1, 1, 1]]);
        let c = admissible_partitions(4, -1);
        assert_eq!(c, vec![vec![4], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert!(p.contains(&vec![3, 1]));
        // two-row members of P_{-1}(n) for n odd need an odd part with
        // multiplicity one, which is excluded
        assert!(admissible_partitions(5, -1).iter().all(|p| p.len() != 2));
    }

    #[test]
    fn springer_predicate() {
        let l = lam(3, 1);
        let x = build_nilpotent::<Rational>(l);
        let e = |i| e_vec::<Rational>(l, i);
        let f = |i| f_vec::<Rational>(l, i);
        let good = Flag::from_inner(4, vec![span(4, vec![f(1)]), span(4, vec![e(1), f(1)]), span(4, vec![e(1), e(2), f(1)])]).unwrap();
        assert!(is_springer_flag(&good, &x));
        let bad = Flag::from_inner(4, vec![span(4, vec![e(2)]), span(4, vec![e(1), e(2)]), span(4, vec![e(1), e(2), f(1)])]).unwrap();
        assert!(!is_springer_flag(&bad, &x));
    }

    #[test]
    fn isotropy_predicate() {
        let l = lam(2, 2);
        let form = build_form::<Rational>(l).unwrap();
        let e = |i| e_vec::<Rational>(l, i);
        let f = |i| f_vec::<Rational>(l, i);
        let good = Flag::from_inner(4, vec![span(4, vec![e(1)]), span(4, vec![e(1), f(1)]), span(4, vec![e(1), e(2), f(1)])]).unwrap();
        assert!(is_isotropic_flag(&good, &form));
        let v: Vec<Rational> = e(1).into_iter().zip(f(2)).map(|(a, b)| a + b).collect();
        let bad = Flag::from_inner(4, vec![span(4, vec![v.clone()]), span(4, vec![v.clone(), e(2)]), span(4, vec![v, e(2), f(1)])]).unwrap();
        assert!(!is_isotropic_flag(&bad, &form));
    }

    #[test]
    fn marked_cup_on_22() {
        let l = lam(2, 2);
        let e = |i| e_vec::<Scalar>(l, i);
        let form = build_form::<Scalar>(l).unwrap();
        let flag = Flag::from_lower_half(vec![Subspace::zero(4), span(4, vec![e(1)]), span(4, vec![e(1), e(2)])], &form).unwrap();
        let r = check_membership_d(&flag, &parse_diagram("D2: m1-2").unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_membership_d(&flag, &parse_diagram("D2: c1-2").unwrap()).unwrap();
        assert_eq!(r.first_failure(), Some(RelationFailure { vertex: 2, rule: Rule::Cup }));
    }

    #[test]
    fn non_isotropic_is_flagged_separately() {
        let l = lam(2, 2);
        let e = |i| e_vec::<Scalar>(l, i);
        let f = |i| f_vec::<Scalar>(l, i);
        let flag = Flag::from_inner(4, vec![span(4, vec![e(1)]), span(4, vec![e(1), e(2)]), span(4, vec![e(1), e(2), f(2)])]).unwrap();
        let r = check_membership_d(&flag, &parse_diagram("D2: m1-2").unwrap()).unwrap();
        assert!(!r.isotropic);
        assert!(r.failures.iter().any(|f| f.rule == Rule::Isotropic));
    }

    #[test]
    fn shape_mismatch() {
        let flag = Flag::<Scalar>::from_inner(2, vec![Subspace::span(2, [vec![Scalar::from(1), Scalar::from(0)]])]).unwrap();
        assert!(matches!(
            check_membership_d(&flag, &parse_diagram("D2: c1-2").unwrap()),
            Err(SpringerError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn ray_vectors_are_isotropic() {
        for (a, b) in [(5, 1), (7, 3), (9, 1), (5, 3), (7, 1)] {
            let l = lam(a, b);
            let form = build_form::<Scalar>(l).unwrap();
            let m = l.m();
            let c = b / 2;
            let rays: Vec<String> = (2 * c + 1..=m).map(|v| format!("r{v}")).collect();
            let cups: Vec<String> = (0..c).map(|i| format!("c{}-{}", 2 * i + 1, 2 * i + 2)).collect();
            let text = format!("D{m}: {} {}", cups.join(" "), rays.join(" "));
            let d = parse_diagram(&text).unwrap();
            let last = d.rightmost_ray().unwrap();
            for marked in [false, true] {
                let s = ray_space_d::<Scalar>(l, &d, Ray::new(last.vertex, marked));
                assert!(form.is_isotropic(&s), "{l} {marked}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let l = lam(2, 2);
        let e = |i| e_vec::<Scalar>(l, i);
        let f = |i| f_vec::<Scalar>(l, i);
        let flag = Flag::from_inner(4, vec![span(4, vec![e(1)]), span(4, vec![e(1), f(1)]), span(4, vec![e(1), e(2), f(1)])]).unwrap();
        let v = flag.to_json();
        assert_eq!(v["subspaces"].as_array().unwrap().len(), 3);
        assert_eq!(Flag::<Scalar>::from_json(&v).unwrap(), flag);
    }
}
