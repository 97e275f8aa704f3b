//! The Fibonacci poset `(F_n, ≤)`.
//!
//! `γ` covers `ρ` exactly when `ρ` is obtained from `γ` by replacing one part
//! `γ_i > 1` with the three parts `γ_i − 2, 1, 1`. The order is the
//! reflexive-transitive closure of that relation. Below every `γ` the interval
//! `[0̂, γ]` is a product of chains of lengths `(γ_i − 1)/2`, which gives the
//! one-pass criterion used by [`leq`]; [`leq_oracle`] is the plain
//! breadth-first reachability it is checked against.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::composition::{self, OddComposition};
use crate::error::{Error, Result};

/// One edge of the Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverEdge {
    pub lower: OddComposition,
    pub upper: OddComposition,
    /// Zero-based index of the part of `upper` that was split.
    pub position: usize,
}

/// Chain coordinates of an element of `[0̂, γ]`: block `i` of `ρ` is
/// `(γ_i − 2 m_i, 1, …, 1)` with `2 m_i` trailing ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpansionVector(Vec<u32>);

impl ExpansionVector {
    pub fn new(reference: &OddComposition, m: Vec<u32>) -> Result<Self> {
        if m.len() != reference.len() {
            return Err(Error::Dimension(format!(
                "expansion vector has {} entries, composition has {} parts",
                m.len(),
                reference.len()
            )));
        }
        for (&mi, &g) in m.iter().zip(reference.parts()) {
            if mi > (g - 1) / 2 {
                return Err(Error::Domain(format!("chain coordinate {mi} exceeds {}", (g - 1) / 2)));
            }
        }
        Ok(ExpansionVector(m))
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// The composition these coordinates name below `reference`.
    pub fn apply(&self, reference: &OddComposition) -> OddComposition {
        let mut parts = Vec::new();
        for (&mi, &g) in self.0.iter().zip(reference.parts()) {
            parts.push(g - 2 * mi);
            parts.extend(std::iter::repeat_n(1, 2 * mi as usize));
        }
        OddComposition::from_parts_unchecked(parts, reference.n())
    }
}

fn same_n(a: &OddComposition, b: &OddComposition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Domain(format!(
            "compositions of different integers: ({a}) has n = {}, ({b}) has n = {}",
            a.n(),
            b.n()
        )));
    }
    Ok(())
}

/// All cover edges directly below `gamma`, one per part greater than 1.
pub fn cover_edges(gamma: &OddComposition) -> Vec<CoverEdge> {
    let parts = gamma.parts();
    parts
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 1)
        .map(|(i, &p)| {
            let mut lower = Vec::with_capacity(parts.len() + 2);
            lower.extend_from_slice(&parts[..i]);
            lower.extend_from_slice(&[p - 2, 1, 1]);
            lower.extend_from_slice(&parts[i + 1..]);
            CoverEdge {
                lower: OddComposition::from_parts_unchecked(lower, gamma.n()),
                upper: gamma.clone(),
                position: i,
            }
        })
        .collect()
}

/// Elements covered by `gamma`, in canonical order.
pub fn covers_of(gamma: &OddComposition) -> BTreeSet<OddComposition> {
    cover_edges(gamma).into_iter().map(|e| e.lower).collect()
}

/// Elements covering `rho`: every consecutive triple `(x, 1, 1)` merges to `x + 2`.
pub fn covered_by(rho: &OddComposition) -> BTreeSet<OddComposition> {
    let parts = rho.parts();
    let mut out = BTreeSet::new();
    for i in 0..parts.len().saturating_sub(2) {
        if parts[i + 1] == 1 && parts[i + 2] == 1 {
            let mut upper = Vec::with_capacity(parts.len() - 2);
            upper.extend_from_slice(&parts[..i]);
            upper.push(parts[i] + 2);
            upper.extend_from_slice(&parts[i + 3..]);
            out.insert(OddComposition::from_parts_unchecked(upper, rho.n()));
        }
    }
    out
}

/// Chain coordinates of `rho` inside `[0̂, gamma]`, if `rho ≤ gamma`.
pub fn expansion_vector(rho: &OddComposition, gamma: &OddComposition) -> Option<ExpansionVector> {
    if rho.n() != gamma.n() {
        return None;
    }
    let r = rho.parts();
    let mut pos = 0;
    let mut m = Vec::with_capacity(gamma.len());
    for &g in gamma.parts() {
        let head = *r.get(pos)?;
        if head > g {
            return None;
        }
        let mi = (g - head) / 2;
        let tail = &r.get(pos + 1..pos + 1 + 2 * mi as usize)?;
        if tail.iter().any(|&x| x != 1) {
            return None;
        }
        m.push(mi);
        pos += 1 + 2 * mi as usize;
    }
    (pos == r.len()).then_some(ExpansionVector(m))
}

/// `rho ≤ gamma` by the product-of-chains block criterion.
pub fn leq(rho: &OddComposition, gamma: &OddComposition) -> Result<bool> {
    same_n(rho, gamma)?;
    Ok(expansion_vector(rho, gamma).is_some())
}

/// `rho ≤ gamma` by breadth-first search down the covering relation.
pub fn leq_oracle(rho: &OddComposition, gamma: &OddComposition) -> Result<bool> {
    same_n(rho, gamma)?;
    let target_len = rho.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([gamma.clone()]);
    while let Some(cur) = queue.pop_front() {
        if &cur == rho {
            return Ok(true);
        }
        // covers only lengthen compositions
        if cur.len() >= target_len {
            continue;
        }
        for next in covers_of(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// `(n − k)/2`.
pub fn rank(gamma: &OddComposition) -> u32 {
    (gamma.n() - gamma.len() as u32) / 2
}

/// Chain lengths `(γ_i − 1)/2` of the interval `[0̂, γ]`.
pub fn interval_shape(gamma: &OddComposition) -> Vec<u32> {
    gamma.parts().iter().map(|p| (p - 1) / 2).collect()
}

/// `Π ((γ_i − 1)/2 + 1)`.
pub fn down_set_size(gamma: &OddComposition) -> u64 {
    interval_shape(gamma).iter().map(|&l| u64::from(l) + 1).product()
}

/// `{ρ : ρ ≤ γ}`, generated from the chain coordinates.
pub fn down_set(gamma: &OddComposition) -> BTreeSet<OddComposition> {
    let shape = interval_shape(gamma);
    let mut out = BTreeSet::new();
    let mut m = vec![0u32; shape.len()];
    loop {
        out.insert(ExpansionVector(m.clone()).apply(gamma));
        // odometer
        let mut i = 0;
        loop {
            if i == m.len() {
                return out;
            }
            if m[i] < shape[i] {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// Greatest common lower bound, found by intersecting down-sets.
///
/// Fails with [`Error::Inconsistency`] if the intersection does not have a
/// unique maximal element.
pub fn meet(gamma: &OddComposition, rho: &OddComposition) -> Result<OddComposition> {
    same_n(gamma, rho)?;
    let common: Vec<OddComposition> = down_set(gamma).intersection(&down_set(rho)).cloned().collect();
    let maxima = maximal_within(&common);
    match maxima.as_slice() {
        [only] => Ok(only.clone()),
        [] => Err(Error::Inconsistency(format!("({gamma}) and ({rho}) have no common lower bound"))),
        many => Err(Error::Inconsistency(format!(
            "({gamma}) and ({rho}) have {} maximal common lower bounds",
            many.len()
        ))),
    }
}

/// Maximal elements of an explicit subset of `F_n`.
pub fn maximal_within(set: &[OddComposition]) -> Vec<OddComposition> {
    set.iter()
        .filter(|&x| {
            !set.iter()
                .any(|y| y != x && expansion_vector(x, y).is_some())
        })
        .cloned()
        .collect()
}

/// Maximal elements of `F_n`: those covered by nothing.
pub fn maximal_elements(n: u32) -> Result<Vec<OddComposition>> {
    Ok(composition::enumerate(n)?
        .into_iter()
        .filter(|g| covered_by(g).is_empty())
        .collect())
}

/// No two consecutive 1's, except possibly the first two parts.
pub fn is_maximal_by_pattern(gamma: &OddComposition) -> bool {
    let p = gamma.parts();
    (1..p.len().saturating_sub(1)).all(|i| !(p[i] == 1 && p[i + 1] == 1))
}

/// Hasse diagram of `(F_n, ≤)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDiagram {
    pub n: u32,
    pub nodes: Vec<OddComposition>,
    pub edges: Vec<CoverEdge>,
    pub ranks: Vec<u32>,
}

#[derive(Serialize)]
struct DiagramJson<'a> {
    n: u32,
    nodes: &'a [OddComposition],
    edges: Vec<[usize; 2]>,
    ranks: &'a [u32],
}

pub fn hasse(n: u32) -> Result<PosetDiagram> {
    let nodes = composition::enumerate(n)?;
    let ranks = nodes.iter().map(rank).collect();
    let mut edges: Vec<CoverEdge> = nodes.iter().flat_map(cover_edges).collect();
    let diagram_index = |g: &OddComposition| nodes.binary_search(g).expect("cover stays in F_n");
    edges.sort_by_key(|e| (diagram_index(&e.lower), diagram_index(&e.upper)));
    Ok(PosetDiagram { n, nodes, edges, ranks })
}

impl PosetDiagram {
    pub fn index_of(&self, g: &OddComposition) -> Option<usize> {
        self.nodes.binary_search(g).ok()
    }

    /// `(lowerIdx, upperIdx)` pairs into the canonical node order.
    pub fn edge_indices(&self) -> Vec<[usize; 2]> {
        self.edges
            .iter()
            .map(|e| {
                [
                    self.index_of(&e.lower).expect("edge endpoint"),
                    self.index_of(&e.upper).expect("edge endpoint"),
                ]
            })
            .collect()
    }

    pub fn max_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DiagramJson {
            n: self.n,
            nodes: &self.nodes,
            edges: self.edge_indices(),
            ranks: &self.ranks,
        })
        .expect("diagram serializes")
    }

    /// Undirected DOT graph, nodes labeled by digit strings, one `rank=same`
    /// group per rank with rank 0 at the bottom.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "graph hasse_{} {{", self.n).unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        writeln!(s, "  node [shape=plaintext];").unwrap();
        for (i, g) in self.nodes.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{}\"];", g.label()).unwrap();
        }
        for r in 0..=self.max_rank() {
            let members: Vec<String> = self
                .ranks
                .iter()
                .enumerate()
                .filter(|(_, &rk)| rk == r)
                .map(|(i, _)| format!("n{i};"))
                .collect();
            writeln!(s, "  {{ rank=same; {} }}", members.join(" ")).unwrap();
        }
        for [lo, up] in self.edge_indices() {
            writeln!(s, "  n{lo} -- n{up};").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in (0..=self.max_rank()).rev() {
            let members: Vec<String> = self
                .nodes
                .iter()
                .zip(&self.ranks)
                .filter(|(_, &rk)| rk == r)
                .map(|(g, _)| g.label())
                .collect();
            writeln!(s, "rank {r}: {}", members.join(" ")).unwrap();
        }
        for e in &self.edges {
            writeln!(s, "{} -- {}", e.lower.label(), e.upper.label()).unwrap();
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> OddComposition {
        OddComposition::new(parts.to_vec()).unwrap()
    }

    fn set(items: &[&[u32]]) -> BTreeSet<OddComposition> {
        items.iter().map(|p| c(p)).collect()
    }

    #[test]
    fn covers_of_examples() {
        assert_eq!(covers_of(&c(&[3, 3])), set(&[&[1, 1, 1, 3], &[3, 1, 1, 1]]));
        assert!(covers_of(&c(&[1, 1, 1, 1])).is_empty());
        assert_eq!(covers_of(&c(&[5, 1])), set(&[&[3, 1, 1, 1]]));
    }

    #[test]
    fn cover_edge_positions() {
        let edges = cover_edges(&c(&[3, 3]));
        assert_eq!(edges.len(), 2);
        assert_eq!(edges[1].position, 1);
        assert_eq!(edges[1].lower, c(&[3, 1, 1, 1]));
        for e in edges {
            assert_eq!(rank(&e.upper), rank(&e.lower) + 1);
        }
    }

    #[test]
    fn covered_by_examples() {
        assert_eq!(covered_by(&c(&[3, 1, 1, 1])), set(&[&[5, 1], &[3, 3]]));
        assert!(covered_by(&c(&[1, 3, 1])).is_empty());
        assert_eq!(
            covered_by(&c(&[1, 1, 1, 1, 1, 1])),
            set(&[&[3, 1, 1, 1], &[1, 3, 1, 1], &[1, 1, 3, 1], &[1, 1, 1, 3]])
        );
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&c(&[3, 1, 1, 1]), &c(&[5, 1])).unwrap());
        assert!(!leq(&c(&[1, 3, 1, 1]), &c(&[3, 3])).unwrap());
        assert!(leq(&c(&[3, 3]), &c(&[3, 3])).unwrap());
        assert!(matches!(leq(&c(&[3]), &c(&[5])), Err(Error::Domain(_))));
    }

    #[test]
    fn leq_oracle_examples() {
        assert!(leq_oracle(&c(&[1, 1, 1, 1, 1, 1]), &c(&[3, 3])).unwrap());
        assert!(!leq_oracle(&c(&[5, 1]), &c(&[1, 5])).unwrap());
        assert!(leq_oracle(&c(&[1]), &c(&[1])).unwrap());
    }

    #[test]
    fn expansion_vector_round_trip() {
        let gamma = c(&[5, 3, 1]);
        let m = ExpansionVector::new(&gamma, vec![1, 1, 0]).unwrap();
        let rho = m.apply(&gamma);
        assert_eq!(rho, c(&[3, 1, 1, 1, 1, 1, 1]));
        assert_eq!(expansion_vector(&rho, &gamma), Some(m));
        assert!(ExpansionVector::new(&gamma, vec![3, 0, 0]).is_err());
        assert!(ExpansionVector::new(&gamma, vec![0, 0]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&c(&[1, 1, 1, 1, 1, 1])), 0);
        assert_eq!(rank(&c(&[3, 3])), 2);
        assert_eq!(rank(&c(&[5, 1])), 2);
    }

    #[test]
    fn meet_examples() {
        assert_eq!(meet(&c(&[5, 1]), &c(&[3, 3])).unwrap(), c(&[3, 1, 1, 1]));
        assert_eq!(meet(&c(&[5, 1]), &c(&[1, 5])).unwrap(), c(&[1, 1, 1, 1, 1, 1]));
        assert_eq!(meet(&c(&[3, 3]), &c(&[3, 3])).unwrap(), c(&[3, 3]));
        assert!(meet(&c(&[3, 3]), &c(&[5])).is_err());
    }

    #[test]
    fn maximal_examples() {
        assert_eq!(
            maximal_elements(6).unwrap(),
            vec![c(&[1, 1, 3, 1]), c(&[1, 5]), c(&[3, 3]), c(&[5, 1])]
        );
        assert_eq!(maximal_elements(5).unwrap(), vec![c(&[1, 1, 3]), c(&[1, 3, 1]), c(&[5])]);
        assert_eq!(maximal_elements(1).unwrap(), vec![c(&[1])]);
        assert!(maximal_elements(0).is_err());
    }

    #[test]
    fn interval_shape_examples() {
        assert_eq!(interval_shape(&c(&[3, 3])), vec![1, 1]);
        assert_eq!(down_set_size(&c(&[3, 3])), 4);
        assert_eq!(interval_shape(&c(&[5, 1])), vec![2, 0]);
        assert_eq!(down_set_size(&c(&[5, 1])), 3);
        assert_eq!(interval_shape(&c(&[1, 1, 1])), vec![0, 0, 0]);
        assert_eq!(down_set_size(&c(&[1, 1, 1])), 1);
    }

    #[test]
    fn down_set_examples() {
        assert_eq!(
            down_set(&c(&[3, 3])),
            set(&[&[3, 3], &[3, 1, 1, 1], &[1, 1, 1, 3], &[1, 1, 1, 1, 1, 1]])
        );
        assert_eq!(down_set(&c(&[1, 1, 3, 1])), set(&[&[1, 1, 3, 1], &[1, 1, 1, 1, 1, 1]]));
        assert_eq!(down_set(&c(&[1])), set(&[&[1]]));
    }

    #[test]
    fn hasse_small() {
        let d = hasse(1).unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert!(d.edges.is_empty());
        let d7 = hasse(7).unwrap();
        assert_eq!(d7.nodes.len(), 13);
        let brute: usize = d7.nodes.iter().map(|g| covers_of(g).len()).sum();
        assert_eq!(d7.edges.len(), brute);
    }

    #[test]
    fn dot_labels_and_groups() {
        let dot = hasse(3).unwrap().to_dot();
        assert!(dot.starts_with("graph hasse_3 {"));
        assert!(dot.contains("n0 [label=\"111\"];"));
        assert!(dot.contains("n1 [label=\"3\"];"));
        assert!(dot.contains("n0 -- n1;"));
        assert!(dot.contains("{ rank=same; n0; }"));
    }

    #[test]
    fn json_shape() {
        let json = hasse(3).unwrap().to_json();
        assert_eq!(json, r#"{"n":3,"nodes":[[1,1,1],[3]],"edges":[[0,1]],"ranks":[0,1]}"#);
    }
}
