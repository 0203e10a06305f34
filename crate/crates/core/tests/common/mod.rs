#![allow(dead_code)]

use std::collections::BTreeSet;

use springer_cup::diagram::{format_diagram, Cup, CupDiagram, Kind, Ray, TwoRowPartition};
use springer_cup::linalg::{e_vec, f_vec};
use springer_cup::{Field, Scalar, Subspace};

/// All sets of `cups` disjoint pairs on 1..=n, crossing or not.
fn matchings(n: usize, cups: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], cups: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cups == 0 {
            out.push(acc.clone());
            return;
        }
        if free.len() < 2 * cups {
            return;
        }
        let (first, rest) = (free[0], &free[1..]);
        // first vertex unmatched
        go(rest, cups, acc, out);
        for (idx, &j) in rest.iter().enumerate() {
            let others: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &v)| v).collect();
            acc.push((first, j));
            go(&others, cups - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(1..=n).collect::<Vec<_>>(), cups, &mut Vec::new(), &mut out);
    out
}

/// Brute force: every matching, rays on the remaining vertices, every
/// subset of features marked, kept if the diagram validates and (for type D)
/// has the requested Jordan type.
pub fn brute_force(kind: Kind, n: usize, k: usize) -> BTreeSet<String> {
    let (vertices, cups, lambda) = match kind {
        Kind::A => (n, k, None),
        Kind::D => (n / 2, k / 2, Some(TwoRowPartition::type_d(n, k).expect("admissible"))),
    };
    let mut out = BTreeSet::new();
    for m in matchings(vertices, cups) {
        let used: BTreeSet<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
        let rays: Vec<usize> = (1..=vertices).filter(|v| !used.contains(v)).collect();
        let features = m.len() + rays.len();
        let masks = if kind == Kind::D { 1u32 << features } else { 1 };
        for mask in 0..masks {
            let bit = |i: usize| mask & (1 << i) != 0;
            let cs = m.iter().enumerate().map(|(i, &(a, b))| Cup::new(a, b, bit(i))).collect();
            let rs = rays.iter().enumerate().map(|(i, &v)| Ray::new(v, bit(m.len() + i))).collect();
            let d = CupDiagram::new(kind, vertices, cs, rs);
            if d.validate().is_err() {
                continue;
            }
            if let Some(l) = lambda {
                if d.partition().ok() != Some(l) {
                    continue;
                }
            }
            out.insert(format_diagram(&d));
        }
    }
    out
}

/// Admissible type-D (n, k) with 1 ≤ k ≤ n/2.
pub fn type_d_shapes(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n)
        .step_by(2)
        .flat_map(|n| (1..=n / 2).map(move |k| (n, k)))
        .filter(|&(n, k)| TwoRowPartition::type_d(n, k).is_ok())
        .collect()
}

pub fn type_a_shapes(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n).flat_map(|n| (1..=n / 2).map(move |k| (n, k))).collect()
}

/// A vector from text such as "f2-e3" or "2e1+f1".
pub fn vector(l: TwoRowPartition, text: &str) -> Vec<Scalar> {
    let mut v = vec![Scalar::from(0); l.n()];
    let text = text.replace(' ', "");
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let sign = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            -1
        } else {
            rest = rest.strip_prefix('+').unwrap_or(rest);
            1
        };
        let pos = rest.find(['e', 'f']).expect("term has e or f");
        let coeff: i64 = if pos == 0 { 1 } else { rest[..pos].parse().expect("integer coefficient") };
        let which = rest.as_bytes()[pos];
        let end = rest[pos + 1..].find(['+', '-']).map_or(rest.len(), |i| pos + 1 + i);
        let idx: usize = rest[pos + 1..end].parse().expect("index");
        let unit = if which == b'e' { e_vec::<Scalar>(l, idx) } else { f_vec::<Scalar>(l, idx) };
        for (a, b) in v.iter_mut().zip(unit) {
            *a = a.clone() + b * Scalar::from(sign * coeff);
        }
        rest = &rest[end..];
    }
    v
}

/// A span from comma-separated vectors.
pub fn span(l: TwoRowPartition, text: &str) -> Subspace {
    Subspace::span(l.n(), text.split(',').filter(|s| !s.trim().is_empty()).map(|t| vector(l, t)))
}

pub fn comb(terms: &[(Scalar, &[Scalar])]) -> Vec<Scalar> {
    let n = terms[0].1.len();
    (0..n).map(|i| terms.iter().fold(Scalar::from(0), |acc, (c, v)| acc + c.clone() * v[i].clone())).collect()
}

/// (λ : μ) with λ u + μ v ∈ s, if the pencil ⟨λ u + μ v⟩ meets s in exactly one point.
pub fn pencil_point(s: &Subspace, u: &[Scalar], v: &[Scalar]) -> Option<(Scalar, Scalar)> {
    let (ru, rv) = (s.reduce(u), s.reduce(v));
    let zero = Scalar::from(0);
    if ru.iter().all(|x| *x == zero) {
        return (!rv.iter().all(|x| *x == zero)).then(|| (Scalar::from(1), zero));
    }
    let k = (0..ru.len()).find(|&i| ru[i] != zero || rv[i] != zero)?;
    let (lam, mu) = (rv[k].clone(), -ru[k].clone());
    let w = comb(&[(lam.clone(), &ru), (mu.clone(), &rv)]);
    w.iter().all(|x| *x == zero).then_some((lam, mu))
}

pub fn small_params() -> Vec<(i64, i64)> {
    vec![(1, 0), (0, 1), (1, 1), (1, -1), (2, 3), (-3, 5), (4, 1)]
}

pub fn scalar(v: i64) -> Scalar {
    Scalar::from_i64(v)
}
