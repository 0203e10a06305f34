use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diagram::{format_diagram, CupDiagram, Kind};
use crate::field::{Field, GaussianField};
use crate::linalg::{build_nilpotent, Subspace};
use crate::springer::{check_membership, ray_space_a, ray_space_d, Flag};

use super::{build_flag, BinaryForm, ComponentError, Poly, ProjParam, RationalFunction};

type Generic<F> = RationalFunction<F>;

/// Intersection of a ℙ¹ component with another component, as a subset of
/// the first component's parameter line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus<F: Field> {
    Empty,
    Full,
    /// Points confirmed by the exact membership test. `form` is the gcd of
    /// the containment conditions in the affine coordinate; `unresolved_degree`
    /// counts candidate roots outside the scalar field, which are not certified.
    Points { form: BinaryForm<F>, points: Vec<ProjParam<F>>, unresolved_degree: usize },
}

impl<F: Field> Locus<F> {
    /// Full, or at least one confirmed point.
    pub fn is_nonempty(&self) -> bool {
        match self {
            Locus::Empty => false,
            Locus::Full => true,
            Locus::Points { points, .. } => !points.is_empty(),
        }
    }

    /// No candidate point was left uncertified.
    pub fn is_certain(&self) -> bool {
        !matches!(self, Locus::Points { unresolved_degree, .. } if *unresolved_degree > 0)
    }

    pub fn to_json(&self) -> Value {
        match self {
            Locus::Empty => json!("empty"),
            Locus::Full => json!("full"),
            Locus::Points { form, points, unresolved_degree } => json!({
                "form": form.to_string(),
                "points": points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "unresolved_degree": unresolved_degree,
            }),
        }
    }
}

fn same_fiber(d1: &CupDiagram, d2: &CupDiagram) -> Result<(), ComponentError> {
    if d1.kind != d2.kind || d1.n_vertices != d2.n_vertices || d1.partition()? != d2.partition()? {
        return Err(ComponentError::DifferentFibers);
    }
    Ok(())
}

/// Numerators of the residues of x^h·src modulo dst, over F(γ).
fn containment<F: Field>(
    x: &crate::linalg::LinearMap<Generic<F>>,
    h: usize,
    src: &Subspace<Generic<F>>,
    dst: &Subspace<Generic<F>>,
    out: &mut Vec<Poly<F>>,
) {
    for b in src.basis() {
        let mut y = b.clone();
        for _ in 0..h {
            y = x.apply(&y);
        }
        out.extend(dst.reduce(&y).iter().filter(|r| !r.is_zero()).map(|r| r.numerator().clone()));
    }
}

/// The flag at [1:γ0] from the generic one, or `None` at a pole.
fn specialize<F: Field>(generic: &Flag<Generic<F>>, g0: &F) -> Option<Flag<F>> {
    let n = generic.ambient();
    let spaces = (0..=n)
        .map(|i| {
            let rows = generic
                .get(i)
                .basis()
                .iter()
                .map(|row| row.iter().map(|r| r.eval(g0)).collect::<Option<Vec<F>>>())
                .collect::<Option<Vec<_>>>()?;
            let s = Subspace::span(n, rows);
            (s.dim() == i).then_some(s)
        })
        .collect::<Option<Vec<_>>>()?;
    Flag::new(spaces).ok()
}

/// K_{d1} ∩ K_{d2} for a one-cup diagram d1.
///
/// The flag of d1 is built once over F(γ) at the parameter [1:γ]. Outside
/// the poles of its reduced bases, the closed containments implied by the
/// relations of d2 cut out the roots of a gcd of polynomials in γ. Those
/// roots, the poles and [0:1] are the only candidates, and each candidate
/// found in F is then tested against the full relations of d2.
pub fn incidence_exact_p1<F: GaussianField>(
    d1: &CupDiagram,
    d2: &CupDiagram,
) -> Result<Locus<F>, ComponentError> {
    if d1.cups.len() != 1 {
        return Err(ComponentError::NotP1 { cups: d1.cups.len() });
    }
    d1.validate().map_err(crate::diagram::DiagramError::from)?;
    d2.validate().map_err(crate::diagram::DiagramError::from)?;
    same_fiber(d1, d2)?;
    let lambda = d1.partition()?;
    let n = lambda.n();
    let generic = build_flag(d1, &[ProjParam::affine(Generic::<F>::variable())])?;
    if check_membership(&generic, d2)?.passed() {
        return Ok(Locus::Full);
    }

    let x = build_nilpotent::<Generic<F>>(lambda);
    let mut conditions = Vec::new();
    for c in &d2.cups {
        let (i, j, h) = (c.left, c.right, c.half_span());
        if c.marked {
            containment(&x, h, generic.get(j), generic.get(i), &mut conditions);
            containment(&x, (n - 2 * j) / 2, generic.get(n - j), generic.get(j), &mut conditions);
        } else {
            containment(&x, h, generic.get(j), generic.get(i - 1), &mut conditions);
        }
    }
    for r in &d2.rays {
        let s = match d2.kind {
            Kind::A => ray_space_a(lambda, d2, r.vertex),
            Kind::D => ray_space_d(lambda, d2, *r),
        };
        containment(&x, 0, generic.get(r.vertex), &s, &mut conditions);
    }
    let g = conditions.iter().fold(Poly::new(Vec::new()), |acc, p| acc.gcd(p));
    let poles = (0..=n)
        .flat_map(|i| generic.get(i).basis().iter().flatten().map(|r| r.denominator().clone()))
        .fold(Poly::constant(F::one()), |acc, d| acc.lcm(&d));

    let mut unresolved_degree = 0;
    let mut candidates: Vec<F> = Vec::new();
    // g = 0 would mean the closed conditions hold generically; the generic
    // membership test failed, so only the special points remain.
    for p in [&g, &poles] {
        if p.is_zero() {
            continue;
        }
        let (roots, rest) = p.roots();
        unresolved_degree += rest.degree().unwrap_or(0);
        for r in roots {
            if !candidates.contains(&r) {
                candidates.push(r);
            }
        }
    }

    let member = |flag: Result<Flag<F>, ComponentError>| -> Result<Option<bool>, ComponentError> {
        match flag {
            Ok(f) => Ok(Some(check_membership(&f, d2)?.passed())),
            Err(ComponentError::DegenerateFiber { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let mut points = Vec::new();
    for g0 in candidates {
        let flag = match specialize(&generic, &g0) {
            Some(f) => Ok(f),
            None => build_flag(d1, &[ProjParam::affine(g0.clone())]),
        };
        match member(flag)? {
            Some(true) => points.push(ProjParam::affine(g0)),
            Some(false) => {}
            None => unresolved_degree += 1,
        }
    }
    match member(build_flag(d1, &[ProjParam::infinity()]))? {
        Some(true) => points.push(ProjParam::infinity()),
        Some(false) => {}
        None => unresolved_degree += 1,
    }

    if points.is_empty() && unresolved_degree == 0 {
        return Ok(Locus::Empty);
    }
    Ok(Locus::Points { form: BinaryForm::new(g.coeffs().to_vec()), points, unresolved_degree })
}

/// A few small points of ℙ¹.
pub fn default_grid<F: Field>() -> Vec<ProjParam<F>> {
    [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)]
        .into_iter()
        .map(|(a, b)| ProjParam::new(F::from_i64(a), F::from_i64(b)).expect("nonzero"))
        .collect()
}

/// Whether some flag of K_{d1} with every parameter drawn from `grid` lies in
/// K_{d2}. A `false` proves nothing.
pub fn incidence_sampled<F: GaussianField>(
    d1: &CupDiagram,
    d2: &CupDiagram,
    grid: &[ProjParam<F>],
) -> Result<bool, ComponentError> {
    same_fiber(d1, d2)?;
    let ell = d1.cups.len();
    if grid.is_empty() && ell > 0 {
        return Ok(false);
    }
    let mut idx = vec![0usize; ell];
    loop {
        let ps: Vec<ProjParam<F>> = idx.iter().map(|&i| grid[i].clone()).collect();
        match build_flag(d1, &ps) {
            Ok(flag) => {
                if check_membership(&flag, d2)?.passed() {
                    return Ok(true);
                }
            }
            Err(ComponentError::DegenerateFiber { .. }) => {}
            Err(e) => return Err(e),
        }
        // odometer
        let mut k = 0;
        loop {
            if k == ell {
                return Ok(false);
            }
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Pairwise intersections among ℙ¹ components.
#[derive(Clone, Debug)]
pub struct IncidenceGraph<F: Field> {
    pub nodes: Vec<CupDiagram>,
    /// (i, j, locus) for i < j with a nonempty intersection.
    pub edges: Vec<(usize, usize, Locus<F>)>,
}

impl<F: Field> IncidenceGraph<F> {
    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if root_of[r] == usize::MAX {
                root_of[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[root_of[r]].push(i);
        }
        groups
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.edges.iter().any(|(x, y, _)| *x == a && *y == b)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(format_diagram).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b, l)| json!({"a": a, "b": b, "locus": l.to_json()})).collect::<Vec<_>>(),
            "components": self.components(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph incidence {\n");
        for (i, d) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", format_diagram(d));
        }
        for (a, b, _) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Exact incidence among one-cup diagrams of the same fiber. Pairs are
/// computed in parallel; the edge list is in lexicographic order.
pub fn incidence_graph<F: GaussianField>(
    diagrams: &[CupDiagram],
) -> Result<IncidenceGraph<F>, ComponentError> {
    let pairs: Vec<(usize, usize)> = (0..diagrams.len())
        .flat_map(|i| (i + 1..diagrams.len()).map(move |j| (i, j)))
        .collect();
    let loci: Vec<Locus<F>> = pairs
        .par_iter()
        .map(|&(i, j)| incidence_exact_p1(&diagrams[i], &diagrams[j]))
        .collect::<Result<_, _>>()?;
    let edges = pairs
        .into_iter()
        .zip(loci)
        .filter(|(_, l)| l.is_nonempty())
        .map(|((i, j), l)| (i, j, l))
        .collect();
    Ok(IncidenceGraph { nodes: diagrams.to_vec(), edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_type_a, enumerate_type_d, parse_diagram, Parity};
    use crate::field::Scalar;

    fn d(s: &str) -> CupDiagram {
        parse_diagram(s).unwrap()
    }

    #[test]
    fn subregular_type_a_is_a_path() {
        let ds = enumerate_type_a(4, 1).unwrap();
        let g = incidence_graph::<Scalar>(&ds).unwrap();
        assert_eq!(g.edges.len(), 2);
        let a = ds.iter().position(|x| *x == d("A4: c1-2 r3 r4")).unwrap();
        let c = ds.iter().position(|x| *x == d("A4: r1 r2 c3-4")).unwrap();
        assert!(!g.has_edge(a, c));
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn self_intersection_is_full() {
        let a = d("D4: c1-2 r3 r4");
        assert_eq!(incidence_exact_p1::<Scalar>(&a, &a).unwrap(), Locus::Full);
    }

    #[test]
    fn errors() {
        let two = d("D4: c1-2 c3-4");
        assert!(matches!(incidence_exact_p1::<Scalar>(&two, &two), Err(ComponentError::NotP1 { cups: 2 })));
        assert_eq!(
            incidence_exact_p1::<Scalar>(&d("D4: c1-2 r3 r4"), &d("D4: c1-2 c3-4")),
            Err(ComponentError::DifferentFibers)
        );
    }

    #[test]
    fn parity_splits_d53() {
        let ds = enumerate_type_d(8, 3, None).unwrap();
        let g = incidence_graph::<Scalar>(&ds).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        for comp in comps {
            let p = ds[comp[0]].parity();
            assert!(comp.iter().all(|&i| ds[i].parity() == p));
            assert_eq!(comp.len(), enumerate_type_d(8, 3, Some(Parity::Even)).unwrap().len());
        }
    }

    #[test]
    fn loci_are_symmetric_and_certain() {
        let ds: Vec<_> = enumerate_type_d(8, 3, None).unwrap();
        for a in &ds {
            for b in &ds {
                let ab = incidence_exact_p1::<Scalar>(a, b).unwrap();
                let ba = incidence_exact_p1::<Scalar>(b, a).unwrap();
                assert!(ab.is_certain(), "{a} {b}");
                assert_eq!(ab.is_nonempty(), ba.is_nonempty(), "{a} {b}");
            }
        }
    }

    #[test]
    fn sampled_agrees_with_exact_when_witnessed() {
        let ds = enumerate_type_d(8, 3, None).unwrap();
        let grid = default_grid::<Scalar>();
        for a in &ds {
            for b in &ds {
                if incidence_sampled(a, b, &grid).unwrap() {
                    assert!(incidence_exact_p1::<Scalar>(a, b).unwrap().is_nonempty(), "{a} {b}");
                }
            }
        }
    }
}
