use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Cup, CupDiagram, DiagramError, Kind, TwoRowPartition, Ray};

/// Parity of the number of markers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(format!("unknown parity {s:?}")),
        }
    }
}

/// Unmarked non-crossing arrangements on `n` vertices with exactly `cups`
/// cups and no ray under a cup.
fn arrangements(n: usize, cups: usize) -> Vec<(Vec<(usize, usize)>, Vec<usize>)> {
    fn rec(
        pos: usize,
        n: usize,
        target: usize,
        open: &mut Vec<usize>,
        cups: &mut Vec<(usize, usize)>,
        rays: &mut Vec<usize>,
        out: &mut Vec<(Vec<(usize, usize)>, Vec<usize>)>,
    ) {
        let closed = cups.len();
        if closed + open.len() > target {
            return;
        }
        let needed = open.len() + 2 * (target - closed - open.len());
        if n + 1 - pos < needed {
            return;
        }
        if pos > n {
            if open.is_empty() && closed == target {
                let mut c = cups.clone();
                c.sort();
                out.push((c, rays.clone()));
            }
            return;
        }
        if open.is_empty() {
            rays.push(pos);
            rec(pos + 1, n, target, open, cups, rays, out);
            rays.pop();
        }
        open.push(pos);
        rec(pos + 1, n, target, open, cups, rays, out);
        open.pop();
        if let Some(l) = open.pop() {
            cups.push((l, pos));
            rec(pos + 1, n, target, open, cups, rays, out);
            cups.pop();
            open.push(l);
        }
    }
    let mut out = Vec::new();
    rec(1, n, cups, &mut Vec::new(), &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn sort_canonical(v: &mut [CupDiagram]) {
    v.sort_by_cached_key(|d| d.canonical_key());
}

/// All cup diagrams of type A for λ = (n−k, k), in canonical order.
pub fn enumerate_type_a(n: usize, k: usize) -> Result<Vec<CupDiagram>, DiagramError> {
    TwoRowPartition::new(n, k)?;
    let mut out: Vec<CupDiagram> = arrangements(n, k)
        .into_iter()
        .map(|(cups, rays)| {
            CupDiagram::new(
                Kind::A,
                n,
                cups.into_iter().map(|(l, r)| Cup::new(l, r, false)).collect(),
                rays.into_iter().map(|v| Ray::new(v, false)).collect(),
            )
        })
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}

/// All marked cup diagrams for the type-D Jordan type (n−k, k), optionally
/// restricted to one marker parity, in canonical order.
pub fn enumerate_type_d(
    n: usize,
    k: usize,
    parity: Option<Parity>,
) -> Result<Vec<CupDiagram>, DiagramError> {
    let lambda = TwoRowPartition::type_d(n, k)?;
    let m = lambda.m();
    let mut out = Vec::new();
    for (cups, rays) in arrangements(m, k / 2) {
        let base = CupDiagram::new(
            Kind::D,
            m,
            cups.into_iter().map(|(l, r)| Cup::new(l, r, false)).collect(),
            rays.into_iter().map(|v| Ray::new(v, false)).collect(),
        );
        let cup_slots: Vec<usize> =
            (0..base.cups.len()).filter(|&i| base.cup_markable(&base.cups[i])).collect();
        let ray_slots: Vec<usize> =
            (0..base.rays.len()).filter(|&i| base.ray_markable(&base.rays[i])).collect();
        let slots = cup_slots.len() + ray_slots.len();
        for mask in 0u64..(1 << slots) {
            if let Some(p) = parity {
                let odd = mask.count_ones() % 2 == 1;
                if odd != (p == Parity::Odd) {
                    continue;
                }
            }
            let mut d = base.clone();
            for (b, &i) in cup_slots.iter().enumerate() {
                d.cups[i].marked = mask >> b & 1 == 1;
            }
            for (b, &i) in ray_slots.iter().enumerate() {
                d.rays[i].marked = mask >> (cup_slots.len() + b) & 1 == 1;
            }
            out.push(d);
        }
    }
    sort_canonical(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_type_a(4, 1).unwrap().len(), 3);
        assert_eq!(enumerate_type_a(2, 1).unwrap(), vec![parse_diagram("A2: c1-2").unwrap()]);
        assert_eq!(enumerate_type_a(6, 2).unwrap().len(), 9);
        assert_eq!(enumerate_type_d(2, 1, None).unwrap().len(), 2);
        assert_eq!(enumerate_type_d(4, 2, None).unwrap().len(), 2);
        let d = enumerate_type_d(8, 3, None).unwrap();
        assert_eq!(d.len(), 8);
        assert_eq!(enumerate_type_d(8, 3, Some(Parity::Even)).unwrap().len(), 4);
        assert_eq!(enumerate_type_d(8, 3, Some(Parity::Odd)).unwrap().len(), 4);
    }

    #[test]
    fn errors_on_bad_input() {
        assert!(enumerate_type_a(4, 3).is_err());
        assert!(enumerate_type_d(8, 2, None).is_err());
        assert!(enumerate_type_d(7, 3, None).is_err());
    }

    #[test]
    fn ballot_numbers() {
        for n in 2..=14 {
            for k in 1..=n / 2 {
                let got = enumerate_type_a(n, k).unwrap().len();
                assert_eq!(got, binom(n, k) - binom(n, k - 1), "({n},{k})");
            }
        }
    }

    #[test]
    fn outputs_are_valid_with_odd_spans() {
        for n in (2..=12).step_by(2) {
            for k in 1..=n / 2 {
                let Ok(ds) = enumerate_type_d(n, k, None) else { continue };
                let lambda = TwoRowPartition::new(n, k).unwrap();
                for d in ds {
                    d.validate_for(lambda).unwrap();
                    assert_eq!(d.partition().unwrap(), lambda);
                    assert!(d.cups.iter().all(|c| (c.right - c.left) % 2 == 1));
                }
            }
        }
    }
}
