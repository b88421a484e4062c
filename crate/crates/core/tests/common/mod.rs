//! Independent reference implementations used only by tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fktree_core::{canonical_form, CanonicalCode, DegreeSequence, TreeWithBoundary};
use rand::seq::SliceRandom;
use rand::Rng;

/// Dense Dirichlet matrix built straight from the edge list, interior vertices in id order.
pub fn dirichlet_dense(tree: &TreeWithBoundary) -> (Vec<usize>, Vec<Vec<f64>>) {
    let n = tree.n();
    let mut deg = vec![0usize; n];
    for &(u, v) in tree.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let interior: Vec<usize> = (0..n).filter(|&v| deg[v] > 1).collect();
    let mut row = vec![usize::MAX; n];
    for (i, &v) in interior.iter().enumerate() {
        row[v] = i;
    }
    let k = interior.len();
    let mut a = vec![vec![0.0; k]; k];
    for (i, &v) in interior.iter().enumerate() {
        a[i][i] = deg[v] as f64;
    }
    for &(u, v) in tree.edges() {
        if row[u] != usize::MAX && row[v] != usize::MAX {
            a[row[u]][row[v]] = -1.0;
            a[row[v]][row[u]] = -1.0;
        }
    }
    (interior, a)
}

/// Cyclic Jacobi rotations: eigenvalues ascending with matching eigenvector columns.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let k = a.len();
    let mut v: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| f64::from(i == j)).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..k {
            for q in p + 1..k {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..k {
                    let (arp, arq) = (a[r][p], a[r][q]);
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for r in 0..k {
                    let (apr, aqr) = (a[p][r], a[q][r]);
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                for r in 0..k {
                    let (vrp, vrq) = (v[r][p], v[r][q]);
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let vals = idx.iter().map(|&i| a[i][i]).collect();
    let vecs = idx.iter().map(|&i| (0..k).map(|r| v[r][i]).collect()).collect();
    (vals, vecs)
}

/// Lowest eigenvalue and its eigenvector extended by zero, sign fixed by a positive sum.
pub fn reference_eigenpair(tree: &TreeWithBoundary) -> (f64, Vec<f64>) {
    let (interior, a) = dirichlet_dense(tree);
    let (vals, vecs) = jacobi_eigen(a);
    let mut f = vec![0.0; tree.n()];
    let s: f64 = vecs[0].iter().sum::<f64>().signum();
    for (i, &v) in interior.iter().enumerate() {
        f[v] = s * vecs[0][i];
    }
    (vals[0], f)
}

/// Tree from a Prüfer sequence over vertices `0..n`.
pub fn prufer_decode(seq: &[usize], n: usize) -> TreeWithBoundary {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    TreeWithBoundary::from_edges(n, &edges).expect("Prüfer sequences encode trees")
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Isomorphism classes with degree sequence `pi`, found by labeling vertex `i`
/// with the `i`-th entry and running over every Prüfer sequence with that
/// multiset of labels.
pub fn labeled_classes(pi: &DegreeSequence) -> BTreeSet<CanonicalCode> {
    let entries = pi.entries();
    let n = entries.len();
    let mut word: Vec<usize> = entries.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat(v).take(d - 1)).collect();
    word.sort();
    let mut out = BTreeSet::new();
    if word.is_empty() {
        return out;
    }
    loop {
        out.insert(canonical_form(&prufer_decode(&word, n)));
        if !next_permutation(&mut word) {
            break;
        }
    }
    out
}

/// Uniform labeled tree on `n ≥ 3` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> TreeWithBoundary {
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(&seq, n)
}

/// Random relabeling of `tree`.
pub fn shuffle_labels<R: Rng>(rng: &mut R, tree: &TreeWithBoundary) -> TreeWithBoundary {
    let mut perm: Vec<usize> = (0..tree.n()).collect();
    perm.shuffle(rng);
    tree.relabel(&perm).unwrap()
}

/// Random function vanishing on the boundary and not identically zero.
pub fn random_boundary_vanishing<R: Rng>(rng: &mut R, tree: &TreeWithBoundary) -> Vec<f64> {
    let mut f: Vec<f64> = (0..tree.n()).map(|v| if tree.is_interior(v) { rng.gen_range(-1.0..1.0) } else { 0.0 }).collect();
    let first = tree.interior()[0];
    if f.iter().all(|&x| x == 0.0) {
        f[first] = 1.0;
    }
    f
}

/// `Σ (f(u) − f(v))²` straight from the edge list.
pub fn edge_energy(tree: &TreeWithBoundary, f: &[f64]) -> f64 {
    tree.edges().iter().map(|&(u, v)| (f[u] - f[v]).powi(2)).sum()
}

/// Every tree with `3 ≤ n ≤ max_n`, via the library's free-tree generator.
pub fn all_trees(max_n: usize) -> Vec<TreeWithBoundary> {
    (3..=max_n).flat_map(fktree_core::oracle::free_trees).collect()
}
