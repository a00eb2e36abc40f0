//! The power set of a three-element universe `{x', x'', x'''}` ordered by
//! inclusion: subset masks, their polynomial encoding, the Hasse diagram
//! (the 3-cube) and the complement pairs.
//!
//! Bit 2 of a mask is `x'`, bit 1 is `x''`, bit 0 is `x'''`; the generators
//! encode as `x^2`, `x` and `1`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;

pub const UNIVERSE_SIZE: u32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u8);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);
    pub const FULL: SubsetMask = SubsetMask(0b111);

    pub fn new(bits: u8) -> Result<Self> {
        if bits > 0b111 {
            return Err(Error::domain(format!("mask {bits} outside 0..=7")));
        }
        Ok(SubsetMask(bits))
    }

    pub fn all() -> impl Iterator<Item = SubsetMask> {
        (0..=0b111).map(SubsetMask)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    pub fn complement(self) -> SubsetMask {
        SubsetMask(!self.0 & 0b111)
    }

    pub fn xor(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 ^ other.0)
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn label(self) -> String {
        format!("{:03b}", self.0)
    }

    /// Member names, e.g. `{x', x'''}`.
    pub fn members(self) -> String {
        let names = ["x'", "x''", "x'''"];
        let inside: Vec<&str> = (0..3)
            .filter(|i| self.0 >> (2 - i) & 1 == 1)
            .map(|i| names[i])
            .collect();
        format!("{{{}}}", inside.join(", "))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({})", self.label())
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// XOR-sum of the generator polynomials of the members.
pub fn encode_poly(s: SubsetMask) -> Gf2Poly {
    let generators = [
        (0b100, Gf2Poly::monomial(2)),
        (0b010, Gf2Poly::X),
        (0b001, Gf2Poly::ONE),
    ];
    generators
        .iter()
        .filter(|(bit, _)| s.0 & bit != 0)
        .fold(Gf2Poly::ZERO, |acc, (_, g)| acc + *g)
}

/// Covering relation of inclusion on all subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<SubsetMask>,
    /// `(lower, upper)` with `lower` covered by `upper`.
    pub edges: Vec<(SubsetMask, SubsetMask)>,
}

impl HasseDiagram {
    pub fn covers_up(&self, node: SubsetMask) -> Vec<SubsetMask> {
        self.edges.iter().filter(|(l, _)| *l == node).map(|(_, u)| *u).collect()
    }

    pub fn covered_from(&self, node: SubsetMask) -> Vec<SubsetMask> {
        self.edges.iter().filter(|(_, u)| *u == node).map(|(l, _)| *l).collect()
    }

    /// Every maximal chain from the empty set to the full set.
    pub fn maximal_chains(&self) -> Vec<Vec<SubsetMask>> {
        let mut chains = Vec::new();
        let mut stack = vec![vec![SubsetMask::EMPTY]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are non-empty");
            let ups = self.covers_up(last);
            if ups.is_empty() {
                chains.push(chain);
                continue;
            }
            for u in ups.into_iter().rev() {
                let mut next = chain.clone();
                next.push(u);
                stack.push(next);
            }
        }
        chains
    }
}

pub fn hasse_edges() -> HasseDiagram {
    let nodes: Vec<SubsetMask> = SubsetMask::all().collect();
    let mut edges = Vec::new();
    for &lower in &nodes {
        for &upper in &nodes {
            if lower != upper && lower.is_subset_of(upper) && upper.size() == lower.size() + 1 {
                edges.push((lower, upper));
            }
        }
    }
    HasseDiagram { nodes, edges }
}

/// DOT text with nodes ranked by subset size and edges pointing upward.
pub fn export_dot(d: &HasseDiagram) -> String {
    let mut out = String::from("digraph powerset {\n    rankdir=BT;\n    node [shape=circle];\n");
    for size in 0..=UNIVERSE_SIZE {
        let rank: Vec<String> = d
            .nodes
            .iter()
            .filter(|n| n.size() == size)
            .map(|n| format!("\"{}\"", n.label()))
            .collect();
        out.push_str(&format!("    {{ rank=same; {}; }}\n", rank.join("; ")));
    }
    for n in &d.nodes {
        out.push_str(&format!(
            "    \"{}\" [label=\"{}\\n{}\"];\n",
            n.label(),
            n.label(),
            encode_poly(*n)
        ));
    }
    for (l, u) in &d.edges {
        out.push_str(&format!("    \"{}\" -> \"{}\";\n", l.label(), u.label()));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AliceBobRow {
    pub alice: SubsetMask,
    pub alice_poly: Gf2Poly,
    pub bob: SubsetMask,
    pub bob_poly: Gf2Poly,
}

/// The eight complement pairs, Alice running from `111` down to `000`.
pub fn alice_bob_pairs() -> Vec<AliceBobRow> {
    (0..=0b111u8)
        .rev()
        .map(|bits| {
            let alice = SubsetMask(bits);
            let bob = alice.complement();
            AliceBobRow { alice, alice_poly: encode_poly(alice), bob, bob_poly: encode_poly(bob) }
        })
        .collect()
}

/// CSV with columns `alice_bits,alice_poly,bob_bits,bob_poly`.
pub fn alice_bob_csv(rows: &[AliceBobRow]) -> String {
    let mut out = String::from("alice_bits,alice_poly,bob_bits,bob_poly\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.alice, r.alice_poly, r.bob, r.bob_poly));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> SubsetMask {
        SubsetMask::new(u8::from_str_radix(s, 2).unwrap()).unwrap()
    }

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(encode_poly(m("100")), p("x^2"));
        assert_eq!(encode_poly(SubsetMask::EMPTY), Gf2Poly::ZERO);
        assert_eq!(encode_poly(SubsetMask::FULL), p("x^2+x+1"));
        assert_eq!(encode_poly(m("011")), p("x+1"));
    }

    #[test]
    fn hasse_examples() {
        let d = hasse_edges();
        assert_eq!(d.nodes.len(), 8);
        assert_eq!(d.edges.len(), 12);
        assert_eq!(d.covers_up(m("000")), vec![m("001"), m("010"), m("100")]);
        assert_eq!(d.covered_from(m("111")), vec![m("011"), m("101"), m("110")]);
        let chains = d.maximal_chains();
        assert_eq!(chains.len(), 6);
        assert!(chains.iter().all(|c| c.len() == 4 && c[3] == SubsetMask::FULL));
    }

    #[test]
    fn alice_bob_examples() {
        let rows = alice_bob_pairs();
        assert_eq!(rows.len(), 8);
        assert_eq!((rows[1].alice, rows[1].alice_poly, rows[1].bob, rows[1].bob_poly), (m("110"), p("x^2+x"), m("001"), p("1")));
        assert_eq!((rows[2].alice, rows[2].alice_poly, rows[2].bob, rows[2].bob_poly), (m("101"), p("x^2+1"), m("010"), p("x")));
        assert!(rows.iter().all(|r| r.alice.xor(r.bob) == SubsetMask::FULL));
    }

    #[test]
    fn dot_export_shape() {
        let dot = export_dot(&hasse_edges());
        assert_eq!(dot.matches(" -> ").count(), 12);
        for n in SubsetMask::all() {
            assert!(dot.contains(&format!("\"{}\" [label", n.label())));
        }
        assert_eq!(dot, export_dot(&hasse_edges()));
    }

    #[test]
    fn members_and_bounds() {
        assert_eq!(m("101").members(), "{x', x'''}");
        assert_eq!(SubsetMask::EMPTY.members(), "{}");
        assert!(SubsetMask::new(8).is_err());
    }
}
