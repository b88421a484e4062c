//! Exhaustive enumeration of small classes and brute-force verification.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::extremal::{
    build_comet, build_relaxed_minimizer, build_slo_star_tree, predicted_minimizer, td_minimizer_sequence,
    ClassSpec,
};
use crate::sequence::{compare_sequences, DegreeSequence};
use crate::spectral::{first_eigenpair, DEFAULT_TOL};
use crate::tree::{TreeWithBoundary, Vertex};

pub const DEFAULT_CAP: usize = 14;
/// Relative width of the co-minimal band.
pub const DEFAULT_BAND: f64 = 1e-9;

/// Free trees on `n ≥ 3` vertices, one per isomorphism class.
///
/// Level sequences in the order of Wright, Richmond, Odlyzko and McKay:
/// each layout is the canonical rooted tree of its free tree, rooted at a
/// center, and successive layouts are generated in constant amortized time.
pub struct FreeTrees {
    layout: Option<Vec<usize>>,
}

pub fn free_trees(n: usize) -> FreeTrees {
    let layout = (n >= 3).then(|| (0..=n / 2).chain(1..n.div_ceil(2)).collect());
    FreeTrees { layout }
}

impl Iterator for FreeTrees {
    type Item = TreeWithBoundary;

    fn next(&mut self) -> Option<TreeWithBoundary> {
        let current = next_tree(self.layout.take()?)?;
        self.layout = next_rooted_tree(&current, None);
        Some(layout_to_tree(&current))
    }
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = p.unwrap_or_else(|| pred.iter().rposition(|&x| x != 1).unwrap_or(0));
    if p == 0 {
        return None;
    }
    let q = (0..p).rev().find(|&q| pred[q] + 1 == pred[p]).expect("a parent level precedes p");
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|&x| x - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// Advances `candidate` to the first layout at or after it that is rooted at a center.
fn next_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        let lh = *left.iter().max().expect("nonempty");
        let rh = *rest.iter().max().expect("nonempty");
        let valid = rh > lh || (rh == lh && (left.len() < rest.len() || (left.len() == rest.len() && left <= rest)));
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&next);
            let h = *new_left.iter().max().expect("nonempty");
            let len = next.len();
            for (slot, level) in next[len - (h + 1)..].iter_mut().zip(1..) {
                *slot = level;
            }
        }
        candidate = next;
    }
}

fn layout_to_tree(layout: &[usize]) -> TreeWithBoundary {
    let mut stack: Vec<Vertex> = Vec::new();
    let mut edges = Vec::with_capacity(layout.len() - 1);
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] < level {
                edges.push((i, j));
                break;
            }
            stack.pop();
        }
        stack.push(i);
    }
    TreeWithBoundary::from_edges(layout.len(), &edges).expect("level sequences encode trees")
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// One tree per isomorphism class with degree sequence `pi`, sorted by canonical code.
pub fn enumerate_trees(pi: &DegreeSequence, cap: usize) -> Result<Vec<TreeWithBoundary>> {
    if !pi.is_tree_sequence() {
        return Err(Error::NotTreeSequence(pi.to_string()));
    }
    check_cap(pi.n(), cap)?;
    Ok(sorted_by_code(free_trees(pi.n()).filter(|t| &DegreeSequence::of(t) == pi)))
}

fn sorted_by_code(trees: impl Iterator<Item = TreeWithBoundary>) -> Vec<TreeWithBoundary> {
    let mut keyed: Vec<(CanonicalCode, TreeWithBoundary)> = trees.map(|t| (canonical_form(&t), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// Vertex counts the enumeration of `spec` ranges over.
///
/// Classes without a fixed `n` are truncated at `cap`.
fn class_orders(spec: &ClassSpec, cap: usize) -> Result<Vec<usize>> {
    Ok(match *spec {
        ClassSpec::Fixed { n, .. }
        | ClassSpec::FixedMinDegree { n, .. }
        | ClassSpec::Order { n }
        | ClassSpec::OrderMinDegree { n, .. }
        | ClassSpec::SemiRegular { n, .. } => {
            check_cap(n, cap)?;
            vec![n]
        }
        ClassSpec::Sequence { ref pi } => {
            check_cap(pi.n(), cap)?;
            vec![pi.n()]
        }
        ClassSpec::Interior { k } | ClassSpec::InteriorMinDegree { k, .. } => {
            check_cap(k + 2, cap)?;
            (k + 2..=cap).collect()
        }
    })
}

/// All trees of the class, one per isomorphism class; empty classes give an empty list.
pub fn enumerate_class(spec: &ClassSpec, cap: usize) -> Result<Vec<TreeWithBoundary>> {
    spec.validate()?;
    let orders = class_orders(spec, cap)?;
    Ok(sorted_by_code(orders.into_iter().flat_map(free_trees).filter(|t| spec.contains(t))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCensus {
    pub spec: ClassSpec,
    #[serde(skip)]
    pub trees: Vec<TreeWithBoundary>,
    pub codes: Vec<CanonicalCode>,
    pub lambdas: Vec<f64>,
    #[serde(skip)]
    pub eigenfunctions: Vec<Vec<f64>>,
    /// Indices with `|λ − λ_min| ≤ band · max(1, λ_min)`.
    pub argmin: Vec<usize>,
}

impl ClassCensus {
    pub fn lambda_min(&self) -> Option<f64> {
        self.argmin.first().map(|&i| self.lambdas[i])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("canonical_code,lambda,is_argmin\n");
        for (i, (code, lambda)) in self.codes.iter().zip(&self.lambdas).enumerate() {
            out.push_str(&format!("{code},{},{}\n", crate::json::format_float(*lambda), self.argmin.contains(&i)));
        }
        out
    }

    pub fn rows(&self) -> Vec<CensusRow> {
        self.codes
            .iter()
            .zip(&self.lambdas)
            .enumerate()
            .map(|(i, (code, &lambda))| CensusRow { canonical_code: code.clone(), lambda, is_argmin: self.argmin.contains(&i) })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub canonical_code: CanonicalCode,
    pub lambda: f64,
    pub is_argmin: bool,
}

/// Solves every tree of the class and collects the co-minimal band of width `band`.
pub fn brute_force_minimizer(spec: &ClassSpec, band: f64, cap: usize) -> Result<ClassCensus> {
    let trees = enumerate_class(spec, cap)?;
    census_of(spec.clone(), trees, band)
}

fn census_of(spec: ClassSpec, trees: Vec<TreeWithBoundary>, band: f64) -> Result<ClassCensus> {
    let pairs = trees.par_iter().map(|t| first_eigenpair(t, DEFAULT_TOL)).collect::<Result<Vec<_>>>()?;
    let codes = trees.iter().map(canonical_form).collect();
    let lambdas: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    let argmin = match lambdas.iter().copied().reduce(f64::min) {
        Some(min) => {
            let width = band * min.max(1.0);
            (0..lambdas.len()).filter(|&i| lambdas[i] - min <= width).collect()
        }
        None => Vec::new(),
    };
    let eigenfunctions = pairs.into_iter().map(|p| p.f).collect();
    Ok(ClassCensus { spec, trees, codes, lambdas, eigenfunctions, argmin })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "thm2")]
    Thm2,
    #[serde(rename = "thm3")]
    Thm3,
    #[serde(rename = "cor-semiregular")]
    CorSemiregular,
    #[serde(rename = "relaxed-i")]
    RelaxedI,
    #[serde(rename = "relaxed-ii")]
    RelaxedII,
    #[serde(rename = "relaxed-iii")]
    RelaxedIII,
    #[serde(rename = "relaxed-iv")]
    RelaxedIV,
    #[serde(rename = "compare-seq")]
    CompareSeq,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Thm1,
        Theorem::Thm2,
        Theorem::Thm3,
        Theorem::CorSemiregular,
        Theorem::RelaxedI,
        Theorem::RelaxedII,
        Theorem::RelaxedIII,
        Theorem::RelaxedIV,
        Theorem::CompareSeq,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Thm2 => "thm2",
            Theorem::Thm3 => "thm3",
            Theorem::CorSemiregular => "cor-semiregular",
            Theorem::RelaxedI => "relaxed-i",
            Theorem::RelaxedII => "relaxed-ii",
            Theorem::RelaxedIII => "relaxed-iii",
            Theorem::RelaxedIV => "relaxed-iv",
            Theorem::CompareSeq => "compare-seq",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::Infeasible(format!("unknown theorem {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub class: String,
    pub pass: bool,
    pub lambda_min: f64,
    pub minimizer_code: String,
    pub constructed_code: String,
    /// Eigenvalue of the constructed tree.
    pub lambda_constructed: f64,
    pub argmin_size: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub theorem: Theorem,
    pub max_n: usize,
    pub passed: bool,
    pub instances: Vec<Instance>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.pass)
    }
}

/// Brute force against the constructed minimizer.
fn minimizer_instance(spec: ClassSpec, constructed: TreeWithBoundary, cap: usize) -> Result<Instance> {
    let census = brute_force_minimizer(&spec, DEFAULT_BAND, cap)?;
    let code = canonical_form(&constructed);
    let lambda_constructed = first_eigenpair(&constructed, DEFAULT_TOL)?.lambda;
    let minimizer_code = census.argmin.iter().map(|&i| census.codes[i].to_string()).collect::<Vec<_>>().join(" ");
    let pass = census.argmin.len() == 1 && census.codes[census.argmin[0]] == code && spec.contains(&constructed);
    Ok(Instance {
        class: spec.to_string(),
        pass,
        lambda_min: census.lambda_min().unwrap_or(f64::NAN),
        minimizer_code,
        constructed_code: code.to_string(),
        lambda_constructed,
        argmin_size: census.argmin.len(),
    })
}

/// Whether `λ(SLO*(small)) < λ(SLO*(large))` by more than the band, for `small ⊴ large`, `small ≠ large`.
fn comparison_instance(small: &DegreeSequence, large: &DegreeSequence) -> Result<Instance> {
    let ts = build_slo_star_tree(small)?.tree;
    let tl = build_slo_star_tree(large)?.tree;
    let ls = first_eigenpair(&ts, DEFAULT_TOL)?.lambda;
    let ll = first_eigenpair(&tl, DEFAULT_TOL)?.lambda;
    Ok(Instance {
        class: format!("({small}) <| ({large})"),
        pass: ll - ls > DEFAULT_BAND * ls.max(1.0),
        lambda_min: ls,
        minimizer_code: canonical_form(&ts).to_string(),
        constructed_code: canonical_form(&tl).to_string(),
        lambda_constructed: ll,
        argmin_size: 1,
    })
}

/// Ordered pairs `(small, large)` of distinct tree sequences with `small ⊴ large` and equal `n ≤ max_n`.
pub fn majorization_pairs(max_n: usize) -> Vec<(DegreeSequence, DegreeSequence)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        let seqs = DegreeSequence::all_tree_sequences(n);
        for a in &seqs {
            for b in &seqs {
                if a != b && compare_sequences(a, b).expect("equal n").leq {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

/// The class instances a sweep covers up to `max_n` vertices.
pub fn theorem_classes(theorem: Theorem, max_n: usize) -> Vec<ClassSpec> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        match theorem {
            Theorem::Thm1 => out.extend((1..=n - 2).map(|k| ClassSpec::Fixed { n, k })),
            Theorem::Thm2 => {
                for k in 1..=n - 2 {
                    for d in 2..n {
                        if td_minimizer_sequence(n, k, d).is_ok() {
                            out.push(ClassSpec::FixedMinDegree { n, k, d });
                        }
                    }
                }
            }
            Theorem::Thm3 => {
                out.extend(DegreeSequence::all_tree_sequences(n).into_iter().map(|pi| ClassSpec::Sequence { pi }))
            }
            Theorem::CorSemiregular => {
                out.extend((2..n).filter(|d| (n - 2) % (d - 1) == 0).map(|d| ClassSpec::SemiRegular { d, n }))
            }
            Theorem::RelaxedI => out.push(ClassSpec::Order { n }),
            Theorem::RelaxedII => out.extend(
                (2..n)
                    .map(|d| ClassSpec::OrderMinDegree { n, d })
                    .filter(|s| build_relaxed_minimizer(s).is_ok()),
            ),
            Theorem::RelaxedIII => {
                if n == max_n {
                    out.extend((1..=n - 2).map(|k| ClassSpec::Interior { k }))
                }
            }
            Theorem::RelaxedIV => {
                if n == max_n {
                    for d in 2..n {
                        out.extend(
                            (1..=n - 2).filter(|k| k * (d - 1) + 2 <= n).map(|k| ClassSpec::InteriorMinDegree { k, d }),
                        );
                    }
                }
            }
            Theorem::CompareSeq => {}
        }
    }
    out
}

/// Checks a theorem on every instance with at most `max_n` vertices.
///
/// For classes without a fixed vertex count the enumeration stops at `max_n`.
/// The comparison sweep checks `λ(SLO*(π′)) < λ(SLO*(π))` for `π′ ⊴ π`, `π′ ≠ π`.
pub fn verify_theorem(theorem: Theorem, max_n: usize) -> Result<Report> {
    check_cap(max_n, DEFAULT_CAP)?;
    let instances: Vec<Instance> = if theorem == Theorem::CompareSeq {
        majorization_pairs(max_n)
            .par_iter()
            .map(|(small, large)| comparison_instance(small, large))
            .collect::<Result<_>>()?
    } else {
        theorem_classes(theorem, max_n)
            .into_par_iter()
            .map(|spec| {
                let constructed = match spec {
                    ClassSpec::Fixed { n, k } => build_comet(n, k)?,
                    _ => predicted_minimizer(&spec)?,
                };
                minimizer_instance(spec, constructed, max_n)
            })
            .collect::<Result<_>>()?
    };
    let passed = instances.iter().all(|i| i.pass);
    Ok(Report { theorem, max_n, passed, instances })
}

/// Canonical codes of a list of trees, checking that they are pairwise distinct.
pub fn distinct_codes(trees: &[TreeWithBoundary]) -> bool {
    let codes: HashSet<CanonicalCode> = trees.iter().map(canonical_form).collect();
    codes.len() == trees.len()
}
