//! Switching and shifting moves and the normalizations built from them.
//!
//! Both normalizations fix the first Dirichlet eigenfunction `f` of the input
//! tree and carry it unchanged through every move. Each move is chosen so the
//! Rayleigh quotient of `f` does not increase, which bounds the first
//! eigenvalue of the final tree by that of the input.

use serde::Serialize;

use crate::canon::subtree_codes;
use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;
use crate::rooted::rooted_view;
use crate::sequence::{compare_sequences, DegreeSequence};
use crate::spectral::{first_eigenpair, rayleigh_quotient, DEFAULT_TOL};
use crate::tree::{TreeWithBoundary, Vertex};

/// Relative threshold under which two eigenfunction values count as equal.
pub const TIE_TOL: f64 = 1e-9;

pub fn values_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs())
}

/// Replace `(v1,u1)`, `(v2,u2)` by `(v1,v2)`, `(u1,u2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchMove {
    pub v1: Vertex,
    pub u1: Vertex,
    pub v2: Vertex,
    pub u2: Vertex,
}

/// Replace `(u,v1)` by `(u,v2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftMove {
    pub u: Vertex,
    pub v1: Vertex,
    pub v2: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoopReason {
    /// The required edge is already present or the degree is already right.
    InPlace,
    /// Two vertices with equal `f` exchanged ranks instead of edges.
    Reorder { a: Vertex, b: Vertex },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Switch(SwitchMove),
    Shift(ShiftMove),
    Noop { reason: NoopReason },
}

impl Move {
    pub fn is_effective(&self) -> bool {
        !matches!(self, Move::Noop { .. })
    }
}

pub fn apply_switch(tree: &TreeWithBoundary, m: &SwitchMove) -> Result<TreeWithBoundary> {
    let SwitchMove { v1, u1, v2, u2 } = *m;
    let n = tree.n();
    if [v1, u1, v2, u2].iter().any(|&v| v >= n) {
        return Err(Error::InvalidMove("vertex out of range".into()));
    }
    if !tree.has_edge(v1, u1) || !tree.has_edge(v2, u2) {
        return Err(Error::InvalidMove(format!("({v1},{u1}) or ({v2},{u2}) is not an edge")));
    }
    let path = tree.path_between(v1, v2);
    if !path.contains(&u2) {
        return Err(Error::InvalidMove(format!("{u2} is not on the path {v1} -> {v2}")));
    }
    if path.contains(&u1) {
        return Err(Error::InvalidMove(format!("{u1} lies on the path {v1} -> {v2}")));
    }
    tree.replace_edges(&[(v1, u1), (v2, u2)], &[(v1, v2), (u1, u2)])
}

pub fn apply_shift(tree: &TreeWithBoundary, m: &ShiftMove) -> Result<TreeWithBoundary> {
    let ShiftMove { u, v1, v2 } = *m;
    let n = tree.n();
    if [u, v1, v2].iter().any(|&v| v >= n) {
        return Err(Error::InvalidMove("vertex out of range".into()));
    }
    if v1 == v2 {
        return Err(Error::InvalidMove("v1 = v2".into()));
    }
    if !tree.has_edge(u, v1) {
        return Err(Error::InvalidMove(format!("({u},{v1}) is not an edge")));
    }
    if tree.path_between(v1, v2).contains(&u) {
        return Err(Error::InvalidMove(format!("{u} lies on the path {v1} -> {v2}")));
    }
    tree.replace_edges(&[(u, v1)], &[(u, v2)])
}

/// `⟨Δ(G′)f,f⟩ − ⟨Δ(G)f,f⟩ = 2 (f(u1) − f(v2)) (f(v1) − f(u2))`.
pub fn switch_delta(f: &[f64], m: &SwitchMove) -> f64 {
    2.0 * (f[m.u1] - f[m.v2]) * (f[m.v1] - f[m.u2])
}

/// `⟨Δ(G′)f,f⟩ − ⟨Δ(G)f,f⟩ = (f(v1) − f(v2)) (2 f(u) − f(v1) − f(v2))`.
pub fn shift_delta(f: &[f64], m: &ShiftMove) -> f64 {
    (f[m.v1] - f[m.v2]) * (2.0 * f[m.u] - f[m.v1] - f[m.v2])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub mv: Move,
    /// Index into [`RearrangeTrace::snapshots`] of the tree after this step.
    pub snapshot: usize,
    pub rayleigh: f64,
    /// Whether the snapshot still has the degree sequence of the initial tree.
    pub in_initial_class: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RearrangeTrace {
    /// `f` carried through all moves, zero on the initial boundary.
    pub f: Vec<f64>,
    pub initial_rayleigh: f64,
    pub steps: Vec<TraceStep>,
    /// Distinct trees visited; `snapshots[0]` is the initial tree.
    pub snapshots: Vec<TreeWithBoundary>,
}

impl RearrangeTrace {
    fn new(tree: &TreeWithBoundary, f: Vec<f64>) -> Result<Self> {
        let initial_rayleigh = rayleigh_quotient(tree, &f)?;
        Ok(RearrangeTrace { f, initial_rayleigh, steps: Vec::new(), snapshots: vec![tree.clone()] })
    }

    pub fn initial(&self) -> &TreeWithBoundary {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &TreeWithBoundary {
        self.snapshots.last().expect("at least the initial tree")
    }

    /// The initial quotient followed by the quotient after each step.
    pub fn rayleigh_values(&self) -> Vec<f64> {
        std::iter::once(self.initial_rayleigh).chain(self.steps.iter().map(|s| s.rayleigh)).collect()
    }

    pub fn effective_moves(&self) -> usize {
        self.steps.iter().filter(|s| s.mv.is_effective()).count()
    }

    /// Largest single-step increase of the carried Rayleigh quotient (≤ 0 up to rounding).
    pub fn max_increase(&self) -> f64 {
        self.rayleigh_values().windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max)
    }

    /// First eigenvalue of every snapshot, re-solved from scratch. Diagnostic only:
    /// moves are always chosen from the carried `f`. Each entry is at most the
    /// carried quotient of the same snapshot.
    pub fn resolved_lambdas(&self) -> Result<Vec<f64>> {
        self.snapshots.iter().map(|t| first_eigenpair(t, DEFAULT_TOL).map(|p| p.lambda)).collect()
    }

    fn noop(&mut self, reason: NoopReason) {
        let rayleigh = self.steps.last().map_or(self.initial_rayleigh, |s| s.rayleigh);
        let in_initial_class = self.steps.last().is_none_or(|s| s.in_initial_class);
        self.steps.push(TraceStep {
            mv: Move::Noop { reason },
            snapshot: self.snapshots.len() - 1,
            rayleigh,
            in_initial_class,
        });
    }

    fn push(&mut self, mv: Move, tree: TreeWithBoundary) -> Result<()> {
        let rayleigh = rayleigh_quotient(&tree, &self.f)?;
        let in_initial_class = DegreeSequence::of(&tree) == DegreeSequence::of(self.initial());
        self.snapshots.push(tree);
        self.steps.push(TraceStep { mv, snapshot: self.snapshots.len() - 1, rayleigh, in_initial_class });
        Ok(())
    }
}

/// Serialized form of a trace: the move list with end-point edge lists.
#[derive(Debug, Serialize)]
pub struct TraceReport<'a> {
    pub initial: &'a [(Vertex, Vertex)],
    #[serde(rename = "final")]
    pub final_edges: &'a [(Vertex, Vertex)],
    pub f: &'a [f64],
    pub initial_rayleigh: f64,
    pub effective_moves: usize,
    pub steps: &'a [TraceStep],
}

impl RearrangeTrace {
    pub fn report(&self) -> TraceReport<'_> {
        TraceReport {
            initial: self.initial().edges(),
            final_edges: self.last().edges(),
            f: &self.f,
            initial_rayleigh: self.initial_rayleigh,
            effective_moves: self.effective_moves(),
            steps: &self.steps,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub tree: TreeWithBoundary,
    pub ordering: VertexOrdering,
    pub trace: RearrangeTrace,
}

/// Vertices sorted by non-increasing `f`.
///
/// Exact ties fall back to height below the first vertex, degree, rooted
/// subtree code and finally vertex id.
fn order_by_values(tree: &TreeWithBoundary, f: &[f64]) -> VertexOrdering {
    let n = tree.n();
    let root = (0..n).max_by(|&a, &b| f[a].total_cmp(&f[b]).then(b.cmp(&a))).expect("n > 0");
    let view = rooted_view(tree, root);
    let codes = subtree_codes(tree, root);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| {
        f[b].total_cmp(&f[a])
            .then(view.height[a].cmp(&view.height[b]))
            .then(tree.degree(a).cmp(&tree.degree(b)))
            .then(codes[a].cmp(&codes[b]))
            .then(a.cmp(&b))
    });
    VertexOrdering::new(order).expect("sorted permutation")
}

/// Layer-by-layer growth of a ball along the `f`-ordering.
///
/// Ranks are filled in breadth-first blocks: the vertex at rank `p` receives
/// the next `deg − 1` ranks as children (`deg` for the root). Rank `r` is
/// attached to its block parent `a` by one switching unless it already is a
/// neighbor, or a neighbor of `a` with an equal value can take rank `r`.
fn grow_slo(tree: &TreeWithBoundary, f: &[f64], trace: &mut RearrangeTrace) -> Result<(TreeWithBoundary, VertexOrdering)> {
    let n = tree.n();
    let mut tree = tree.clone();
    let mut ord = order_by_values(&tree, f);
    let mut r = 1;
    let mut p = 0;
    while r < n {
        let a = ord.vertex_at(p);
        let slots = tree.degree(a) - usize::from(p > 0);
        for _ in 0..slots {
            if r >= n {
                break;
            }
            let b = ord.vertex_at(r);
            if tree.has_edge(a, b) {
                trace.noop(NoopReason::InPlace);
            } else if let Some(w) = tree
                .neighbors(a)
                .iter()
                .copied()
                .filter(|&w| ord.rank(w) > r && values_tie(f[w], f[b]))
                .min_by_key(|&w| ord.rank(w))
            {
                ord.swap_ranks(r, ord.rank(w));
                trace.noop(NoopReason::Reorder { a: b, b: w });
            } else {
                let m = attach_switch(&tree, &ord, a, b, r);
                tree = apply_switch(&tree, &m)?;
                trace.push(Move::Switch(m), tree.clone())?;
            }
            r += 1;
        }
        p += 1;
        if p >= r && r < n {
            return Err(Error::InvalidMove("breadth-first blocks ran out of parents".into()));
        }
    }
    Ok((tree, ord))
}

/// The switching that makes `b` (rank `r`) a neighbor of `a`.
///
/// Ranks `< r` span a subtree whose edges are final; the move touches only
/// edges with an endpoint of rank `≥ r`.
fn attach_switch(tree: &TreeWithBoundary, ord: &VertexOrdering, a: Vertex, b: Vertex, r: usize) -> SwitchMove {
    let path = tree.path_between(a, b);
    let x = path[1];
    let w = path[path.len() - 2];
    if ord.rank(x) > r {
        // The path leaves `a` through an unplaced vertex: trade it for `b`.
        let u = tree
            .neighbors(b)
            .iter()
            .copied()
            .filter(|&u| u != w)
            .min_by_key(|&u| ord.rank(u))
            .expect("an interior vertex has a neighbor off the path");
        SwitchMove { v1: b, u1: u, v2: a, u2: x }
    } else {
        let u = tree
            .neighbors(a)
            .iter()
            .copied()
            .filter(|&u| ord.rank(u) > r)
            .min_by_key(|&u| ord.rank(u))
            .expect("an open slot of a has an unplaced neighbor");
        SwitchMove { v1: a, u1: u, v2: b, u2: w }
    }
}

/// Moves surplus children down the ordering until rank `r` has degree `target[r]`.
///
/// The last children of the vertex at rank `r` are shifted to rank `r + 1`.
fn shift_degrees(
    mut tree: TreeWithBoundary,
    ord: &VertexOrdering,
    target: &[usize],
    trace: &mut RearrangeTrace,
) -> Result<TreeWithBoundary> {
    let n = tree.n();
    for r in 0..n - 1 {
        let v = ord.vertex_at(r);
        let next = ord.vertex_at(r + 1);
        let deg = tree.degree(v);
        if deg < target[r] {
            return Err(Error::NotMajorized { rank: r });
        }
        if deg == target[r] {
            trace.noop(NoopReason::InPlace);
            continue;
        }
        let mut kids: Vec<Vertex> = tree.neighbors(v).iter().copied().filter(|&c| ord.rank(c) > r).collect();
        kids.sort_by_key(|&c| std::cmp::Reverse(ord.rank(c)));
        for &c in kids.iter().take(deg - target[r]) {
            let m = ShiftMove { u: c, v1: v, v2: next };
            tree = apply_shift(&tree, &m)?;
            trace.push(Move::Shift(m), tree.clone())?;
        }
    }
    Ok(tree)
}

fn carried_function(tree: &TreeWithBoundary) -> Result<Vec<f64>> {
    Ok(first_eigenpair(tree, DEFAULT_TOL)?.f)
}

/// Rearranges `tree` by switchings into an SLO-tree with the same degree sequence.
pub fn normalize_to_slo(tree: &TreeWithBoundary) -> Result<Normalized> {
    let f = carried_function(tree)?;
    let mut trace = RearrangeTrace::new(tree, f.clone())?;
    let (out, ordering) = grow_slo(tree, &f, &mut trace)?;
    Ok(Normalized { tree: out, ordering, trace })
}

/// Rearranges `tree` into the SLO*-tree of its own degree sequence.
pub fn normalize_to_slo_star(tree: &TreeWithBoundary) -> Result<Normalized> {
    majorize_normalize(tree, &DegreeSequence::of(tree))
}

/// Rearranges `tree` into the SLO*-tree of a sequence `target ⊴ π(tree)`.
pub fn majorize_normalize(tree: &TreeWithBoundary, target: &DegreeSequence) -> Result<Normalized> {
    if !target.is_tree_sequence() {
        return Err(Error::NotTreeSequence(target.to_string()));
    }
    let verdict = compare_sequences(target, &DegreeSequence::of(tree))?;
    if let Some(rank) = verdict.witness {
        return Err(Error::NotMajorized { rank });
    }
    let f = carried_function(tree)?;
    let mut trace = RearrangeTrace::new(tree, f.clone())?;
    let (slo, ordering) = grow_slo(tree, &f, &mut trace)?;
    let out = shift_degrees(slo, &ordering, &target.entries(), &mut trace)?;
    Ok(Normalized { tree: out, ordering, trace })
}
