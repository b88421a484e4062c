//! Spiral-like orderings (SLO and SLO*) of a rooted tree with boundary.
//!
//! With heights taken from the first vertex of the ordering:
//!
//! * S1: `v ≺ w` implies `h(v) ≤ h(w)`;
//! * S2: if `v1 ≺ v2`, every child of `v1` precedes every child of `v2`;
//! * S3: nothing but boundary vertices follows a boundary vertex;
//! * S4 (SLO* only): interior degrees are non-decreasing along the order.

use std::fmt;

use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::extremal::build_slo_star_tree;
use crate::rooted::rooted_view;
use crate::sequence::DegreeSequence;
use crate::tree::{TreeWithBoundary, Vertex};

/// A total order of the vertices; `order[rank]` is the vertex at that rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    #[serde(skip)]
    rank: Vec<usize>,
}

impl VertexOrdering {
    pub fn new(order: Vec<Vertex>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidOrdering("empty ordering".into()));
        }
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!("vertex {v} out of range")));
            }
            if rank[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            rank[v] = r;
        }
        Ok(VertexOrdering { order, rank })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity is a permutation")
    }

    pub fn root(&self) -> Vertex {
        self.order[0]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v]
    }

    pub fn vertex_at(&self, rank: usize) -> Vertex {
        self.order[rank]
    }

    pub(crate) fn swap_ranks(&mut self, a: usize, b: usize) {
        self.order.swap(a, b);
        self.rank[self.order[a]] = a;
        self.rank[self.order[b]] = b;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A failed axiom with a witness pair `first ≺ second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub first: Vertex,
    pub second: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SloCheck {
    pub valid_slo: bool,
    pub valid_slo_star: bool,
    pub violations: Vec<Violation>,
}

impl SloCheck {
    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

pub fn check_slo(tree: &TreeWithBoundary, ordering: &VertexOrdering) -> Result<SloCheck> {
    if ordering.len() != tree.n() {
        return Err(Error::InvalidOrdering(format!(
            "ordering has {} vertices, tree has {}",
            ordering.len(),
            tree.n()
        )));
    }
    let view = rooted_view(tree, ordering.root());
    let order = ordering.order();
    let mut violations = Vec::new();

    // S1 and S3 are transitive, so consecutive pairs suffice.
    if let Some(w) = order.windows(2).find(|w| view.height[w[0]] > view.height[w[1]]) {
        violations.push(Violation { axiom: Axiom::S1, first: w[0], second: w[1] });
    }

    // S2: children blocks must appear in the order of their parents.
    let mut latest: Option<(Vertex, usize)> = None; // (parent, max child rank)
    for &v in order {
        let kids = &view.children[v];
        if kids.is_empty() {
            continue;
        }
        let lo = kids.iter().map(|&c| ordering.rank(c)).min().unwrap();
        let hi = kids.iter().map(|&c| ordering.rank(c)).max().unwrap();
        if let Some((p, prev_hi)) = latest {
            if lo < prev_hi {
                violations.push(Violation { axiom: Axiom::S2, first: p, second: v });
                break;
            }
        }
        if latest.is_none_or(|(_, prev_hi)| hi > prev_hi) {
            latest = Some((v, hi));
        }
    }

    if let Some(w) = order.windows(2).find(|w| tree.is_boundary(w[0]) && tree.is_interior(w[1])) {
        violations.push(Violation { axiom: Axiom::S3, first: w[0], second: w[1] });
    }

    let interior: Vec<Vertex> = order.iter().copied().filter(|&v| tree.is_interior(v)).collect();
    if let Some(w) = interior.windows(2).find(|w| tree.degree(w[0]) > tree.degree(w[1])) {
        violations.push(Violation { axiom: Axiom::S4, first: w[0], second: w[1] });
    }

    let valid_slo = violations.iter().all(|v| v.axiom == Axiom::S4);
    let valid_slo_star = violations.is_empty();
    Ok(SloCheck { valid_slo, valid_slo_star, violations })
}

/// Whether the tree admits an SLO*-ordering.
///
/// SLO*-trees are unique up to isomorphism within their degree-sequence
/// class, so comparing against the constructed one decides membership.
pub fn is_slo_star_tree(tree: &TreeWithBoundary) -> bool {
    let pi = DegreeSequence::of(tree);
    match build_slo_star_tree(&pi) {
        Ok(built) => canonical_form(&built.tree) == canonical_form(tree),
        Err(_) => false,
    }
}
