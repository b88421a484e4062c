//! Canonical codes for trees (AHU parenthesis encoding rooted at the center).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::tree::{TreeWithBoundary, Vertex};

/// Byte string over `(` and `)`; equal iff the trees are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("ascii"))
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parent pointers and a BFS order from `root`.
pub(crate) fn bfs_parents(tree: &TreeWithBoundary, root: Vertex) -> (Vec<Option<Vertex>>, Vec<Vertex>) {
    let n = tree.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    seen[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                order.push(w);
            }
        }
    }
    (parent, order)
}

/// Rooted AHU code of every vertex's subtree when the tree hangs from `root`.
pub fn subtree_codes(tree: &TreeWithBoundary, root: Vertex) -> Vec<Vec<u8>> {
    let (parent, order) = bfs_parents(tree, root);
    let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); tree.n()];
    let mut codes = vec![Vec::new(); tree.n()];
    for &v in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[v]);
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for c in &kids {
            code.extend_from_slice(c);
        }
        code.push(b')');
        if let Some(p) = parent[v] {
            child_codes[p].push(code.clone());
        }
        codes[v] = code;
    }
    codes
}

pub fn rooted_code(tree: &TreeWithBoundary, root: Vertex) -> Vec<u8> {
    subtree_codes(tree, root).swap_remove(root)
}

/// The one or two vertices of minimum eccentricity.
pub fn centers(tree: &TreeWithBoundary) -> Vec<Vertex> {
    let n = tree.n();
    let mut degree = tree.degrees();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in tree.neighbors(v) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

pub fn canonical_form(tree: &TreeWithBoundary) -> CanonicalCode {
    let code = centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .expect("a tree has a center");
    CanonicalCode(code)
}

pub fn is_isomorphic(a: &TreeWithBoundary, b: &TreeWithBoundary) -> bool {
    a.n() == b.n() && a.edges().len() == b.edges().len() && canonical_form(a) == canonical_form(b)
}
