//! Constructors for the trees of lowest first Dirichlet eigenvalue in each class.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::VertexOrdering;
use crate::sequence::DegreeSequence;
use crate::tree::{TreeWithBoundary, Vertex};

/// A class of trees with boundary sharing a "volume".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassSpec {
    /// `n` vertices, `k` of them interior.
    Fixed { n: usize, k: usize },
    /// As `Fixed`, with every interior degree at least `d`.
    FixedMinDegree { n: usize, k: usize, d: usize },
    /// A prescribed degree sequence.
    Sequence { pi: DegreeSequence },
    /// `n` vertices, any number interior.
    Order { n: usize },
    OrderMinDegree { n: usize, d: usize },
    /// `k` interior vertices, any number of boundary vertices.
    Interior { k: usize },
    InteriorMinDegree { k: usize, d: usize },
    /// `n` vertices, every interior degree exactly `d`.
    SemiRegular { d: usize, n: usize },
}

impl ClassSpec {
    /// Parameter checks that do not require enumeration.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Infeasible(msg));
        match *self {
            ClassSpec::Fixed { n, k } | ClassSpec::FixedMinDegree { n, k, .. } => {
                if k == 0 || k + 2 > n {
                    return fail(format!("need 1 <= k <= n - 2, got n = {n}, k = {k}"));
                }
            }
            ClassSpec::Sequence { ref pi } => {
                if !pi.is_tree_sequence() {
                    return Err(Error::NotTreeSequence(pi.to_string()));
                }
                if pi.k() == 0 {
                    return Err(Error::NoInterior);
                }
            }
            ClassSpec::Order { n } | ClassSpec::OrderMinDegree { n, .. } | ClassSpec::SemiRegular { n, .. } => {
                if n < 3 {
                    return fail(format!("need n >= 3, got {n}"));
                }
            }
            ClassSpec::Interior { k } | ClassSpec::InteriorMinDegree { k, .. } => {
                if k == 0 {
                    return fail("need k >= 1".into());
                }
            }
        }
        match *self {
            ClassSpec::FixedMinDegree { d, .. }
            | ClassSpec::OrderMinDegree { d, .. }
            | ClassSpec::InteriorMinDegree { d, .. }
            | ClassSpec::SemiRegular { d, .. }
                if d < 2 =>
            {
                fail(format!("interior degrees are at least 2, got d = {d}"))
            }
            _ => Ok(()),
        }
    }

    /// Whether a tree belongs to the class.
    pub fn contains(&self, tree: &TreeWithBoundary) -> bool {
        let pi = DegreeSequence::of(tree);
        let min_deg = pi.interior().first().copied().unwrap_or(usize::MAX);
        match *self {
            ClassSpec::Fixed { n, k } => pi.n() == n && pi.k() == k,
            ClassSpec::FixedMinDegree { n, k, d } => pi.n() == n && pi.k() == k && min_deg >= d,
            ClassSpec::Sequence { pi: ref want } => &pi == want,
            ClassSpec::Order { n } => pi.n() == n,
            ClassSpec::OrderMinDegree { n, d } => pi.n() == n && min_deg >= d,
            ClassSpec::Interior { k } => pi.k() == k,
            ClassSpec::InteriorMinDegree { k, d } => pi.k() == k && min_deg >= d,
            ClassSpec::SemiRegular { d, n } => pi.n() == n && pi.interior().iter().all(|&x| x == d),
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Fixed { n, k } => write!(f, "T({n},{k})"),
            ClassSpec::FixedMinDegree { n, k, d } => write!(f, "T_{d}({n},{k})"),
            ClassSpec::Sequence { pi } => write!(f, "T_pi({pi})"),
            ClassSpec::Order { n } => write!(f, "T({n},.)"),
            ClassSpec::OrderMinDegree { n, d } => write!(f, "T_{d}({n},.)"),
            ClassSpec::Interior { k } => write!(f, "T(.,{k})"),
            ClassSpec::InteriorMinDegree { k, d } => write!(f, "T_{d}(.,{k})"),
            ClassSpec::SemiRegular { d, n } => write!(f, "semi_regular(d={d},n={n})"),
        }
    }
}

/// A tree together with an ordering that certifies its shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedTree {
    pub tree: TreeWithBoundary,
    pub ordering: VertexOrdering,
}

/// The SLO*-tree of a tree sequence, grown one interior vertex at a time.
///
/// Start from the star on the smallest interior degree. Each further degree,
/// in non-decreasing order, turns the first boundary vertex of the current
/// ordering into the last interior vertex and hangs its new boundary
/// children at the end of the ordering.
pub fn build_slo_star_tree(pi: &DegreeSequence) -> Result<OrderedTree> {
    if !pi.is_tree_sequence() {
        return Err(Error::NotTreeSequence(pi.to_string()));
    }
    let degrees = pi.interior();
    let Some((&first, rest)) = degrees.split_first() else {
        return Err(Error::NoInterior);
    };
    let mut edges: Vec<(Vertex, Vertex)> = (1..=first).map(|v| (0, v)).collect();
    // Vertex ids coincide with ranks: interior 0..interior_end, then boundary.
    let mut interior_end = 1;
    let mut next_id = first + 1;
    for &d in rest {
        let u = interior_end; // first boundary vertex in the ordering
        interior_end += 1;
        for _ in 0..d - 1 {
            edges.push((u, next_id));
            next_id += 1;
        }
    }
    debug_assert_eq!(next_id, pi.n());
    let tree = TreeWithBoundary::from_edges(pi.n(), &edges)?;
    Ok(OrderedTree { tree, ordering: VertexOrdering::identity(pi.n()) })
}

/// Sum of interior degrees of a tree with `n` vertices, `k` interior: `n + k − 2`.
fn interior_degree_sum(n: usize, k: usize) -> usize {
    2 * (n - 1) - (n - k)
}

/// `d + Σ(d_v − d)` over the interior degrees of `pi`.
pub fn predicted_dcirc(pi: &DegreeSequence, d: usize) -> Result<usize> {
    if let Some(&low) = pi.interior().iter().find(|&&x| x < d) {
        return Err(Error::Infeasible(format!("interior degree {low} below d = {d}")));
    }
    Ok(d + pi.interior().iter().map(|&x| x - d).sum::<usize>())
}

/// Degree sequence with `k − 1` interior degrees `d` and one of `dcirc`.
fn single_excess_sequence(n: usize, k: usize, d: usize, dcirc: usize) -> Result<DegreeSequence> {
    let mut interior = vec![d; k - 1];
    interior.push(dcirc);
    let pi = DegreeSequence::new(interior, n - k)?;
    if !pi.is_tree_sequence() {
        return Err(Error::NotTreeSequence(pi.to_string()));
    }
    Ok(pi)
}

/// The sequence `(d, …, d, d°, 1, …, 1)` minimizing over `T_d^(n,k)`, if the class is nonempty.
pub fn td_minimizer_sequence(n: usize, k: usize, d: usize) -> Result<DegreeSequence> {
    ClassSpec::FixedMinDegree { n, k, d }.validate()?;
    let total = interior_degree_sum(n, k);
    let needed = (k - 1) * d + d;
    if total < needed {
        return Err(Error::Infeasible(format!(
            "T_{d}({n},{k}) is empty: interior degrees sum to {total} < {needed}"
        )));
    }
    single_excess_sequence(n, k, d, total - (k - 1) * d)
}

/// A path of `k` interior vertices; one boundary vertex at the tail, the
/// remaining `n − k − 1` at the head.
///
/// Vertex 0 is the tail leaf, `1..=k` the path, the rest hang off `k`.
pub fn build_comet(n: usize, k: usize) -> Result<TreeWithBoundary> {
    ClassSpec::Fixed { n, k }.validate()?;
    let mut edges: Vec<(Vertex, Vertex)> = (1..=k).map(|v| (v - 1, v)).collect();
    edges.extend((k + 1..n).map(|v| (k, v)));
    TreeWithBoundary::from_edges(n, &edges)
}

pub fn build_td_minimizer(n: usize, k: usize, d: usize) -> Result<TreeWithBoundary> {
    Ok(build_slo_star_tree(&td_minimizer_sequence(n, k, d)?)?.tree)
}

/// Largest `k` with `d° = n + k − 2 − (k − 1)d ≥ d`, and that `d°`.
fn order_min_degree_parameters(n: usize, d: usize) -> Result<(usize, usize)> {
    let dcirc = |k: usize| (n + k + d).checked_sub(2 + k * d);
    let k = (1..=n.saturating_sub(2))
        .filter(|&k| dcirc(k).is_some_and(|x| x >= d))
        .max()
        .ok_or_else(|| Error::Infeasible(format!("T_{d}({n},.) is empty")))?;
    let dc = dcirc(k).expect("checked above");
    if dc >= 2 * d {
        return Err(Error::Infeasible(format!("no k gives d <= d° < 2d for n = {n}, d = {d}")));
    }
    Ok((k, dc))
}

/// Minimizers of the classes with one of `n`, `k` left free.
pub fn build_relaxed_minimizer(spec: &ClassSpec) -> Result<TreeWithBoundary> {
    spec.validate()?;
    match *spec {
        ClassSpec::Order { n } => TreeWithBoundary::path(n),
        ClassSpec::OrderMinDegree { n, d } => {
            let (k, dcirc) = order_min_degree_parameters(n, d)?;
            Ok(build_slo_star_tree(&single_excess_sequence(n, k, d, dcirc)?)?.tree)
        }
        ClassSpec::Interior { k } => TreeWithBoundary::path(k + 2),
        ClassSpec::InteriorMinDegree { k, d } => {
            // k d + (n − k) = 2(n − 1) forces n = k(d − 1) + 2.
            let n = k * (d - 1) + 2;
            Ok(build_slo_star_tree(&DegreeSequence::new(vec![d; k], n - k)?)?.tree)
        }
        _ => Err(Error::Infeasible(format!("{spec} is not a relaxed class"))),
    }
}

/// The minimizer the theory predicts for any class.
pub fn predicted_minimizer(spec: &ClassSpec) -> Result<TreeWithBoundary> {
    spec.validate()?;
    match *spec {
        ClassSpec::Fixed { n, k } => build_comet(n, k),
        ClassSpec::FixedMinDegree { n, k, d } => build_td_minimizer(n, k, d),
        ClassSpec::Sequence { ref pi } => Ok(build_slo_star_tree(pi)?.tree),
        ClassSpec::SemiRegular { d, n } => {
            if (n - 2) % (d - 1) != 0 {
                return Err(Error::Infeasible(format!("no semi-{d}-regular tree on {n} vertices")));
            }
            let k = (n - 2) / (d - 1);
            Ok(build_slo_star_tree(&DegreeSequence::new(vec![d; k], n - k)?)?.tree)
        }
        _ => build_relaxed_minimizer(spec),
    }
}
