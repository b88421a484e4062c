//! Trees with boundary.
//!
//! A vertex is a boundary vertex iff it has degree 1; every other vertex is
//! interior. Vertices are the dense ids `0..n`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An unweighted tree whose leaves form the boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeWithBoundary {
    /// Normalized `(min, max)` pairs, sorted.
    edges: Vec<(Vertex, Vertex)>,
    /// Sorted adjacency lists.
    adj: Vec<Vec<Vertex>>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl TreeWithBoundary {
    /// Validates an edge list on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut sets = DisjointSets::new(n);
        let mut adj = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if adj[u].contains(&v) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            if !sets.union(u, v) {
                return Err(Error::Cyclic(e.0, e.1));
            }
            adj[u].push(v);
            adj[v].push(u);
            normalized.push(e);
        }
        let components = (0..n).filter(|&v| sets.find(v) == v).count();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        if adj.iter().all(|a| a.len() != 1) {
            return Err(Error::NoBoundary);
        }
        if adj.iter().all(|a| a.len() < 2) {
            return Err(Error::NoInterior);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        normalized.sort_unstable();
        Ok(TreeWithBoundary { edges: normalized, adj })
    }

    /// The path on `n` vertices labeled in order.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges)
    }

    /// The star with center 0 and `leaves` boundary vertices.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of interior vertices.
    pub fn k(&self) -> usize {
        self.adj.iter().filter(|a| a.len() >= 2).count()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.adj[v].len() == 1
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        !self.is_boundary(v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn interior(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_interior(v)).collect()
    }

    pub fn boundary(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_boundary(v)).collect()
    }

    /// Number of boundary neighbors of `v`.
    pub fn boundary_neighbors(&self, v: Vertex) -> usize {
        self.adj[v].iter().filter(|&&w| self.is_boundary(w)).count()
    }

    /// BFS distances from `source`.
    pub fn distances_from(&self, source: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The geodesic path from `from` to `to`, both endpoints included.
    pub fn path_between(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut pred = vec![usize::MAX; self.n()];
        pred[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adj[v] {
                if pred[w] == usize::MAX {
                    pred[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = pred[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Replaces the edges in `remove` by those in `add`, revalidating the result.
    pub(crate) fn replace_edges(
        &self,
        remove: &[(Vertex, Vertex)],
        add: &[(Vertex, Vertex)],
    ) -> Result<Self> {
        let norm = |(u, v): (Vertex, Vertex)| (u.min(v), u.max(v));
        let remove: Vec<_> = remove.iter().copied().map(norm).collect();
        for e in &remove {
            if self.edges.binary_search(e).is_err() {
                return Err(Error::InvalidMove(format!("({}, {}) is not an edge", e.0, e.1)));
            }
        }
        let mut edges: Vec<_> = self.edges.iter().copied().filter(|e| !remove.contains(e)).collect();
        edges.extend(add.iter().copied().map(norm));
        Self::from_edges(self.n(), &edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(self.n(), &edges)
    }

    /// Checks whether every boundary vertex has the same distance from `center`.
    pub fn is_ball(&self, center: Vertex) -> BallCheck {
        let dist = self.distances_from(center);
        let mut radius = None;
        for v in self.boundary() {
            match radius {
                None => radius = Some(dist[v]),
                Some(r) if r != dist[v] => return BallCheck { is_ball: false, radius: None },
                _ => {}
            }
        }
        BallCheck { is_ball: true, radius }
    }

    /// Renders the tree file format.
    pub fn to_tree_file(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallCheck {
    pub is_ball: bool,
    pub radius: Option<usize>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses the tree file format: `n` on the first line, then `u v` per edge.
pub fn parse_tree(text: &str) -> Result<TreeWithBoundary> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or(Error::Malformed {
        line: 1,
        reason: "missing vertex count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Malformed {
        line: first,
        reason: format!("expected vertex count, found {header:?}"),
    })?;
    let mut edges = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Malformed {
                line,
                reason: format!("expected `u v`, found {content:?}"),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Malformed {
                line,
                reason: format!("bad vertex id {s:?}"),
            })
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    TreeWithBoundary::from_edges(n, &edges)
}

/// Reads a `# order: v0 v1 ...` annotation if the document carries one.
pub fn parse_order_annotation(text: &str) -> Option<Vec<Vertex>> {
    text.lines().find_map(|line| {
        let comment = line.split_once('#')?.1.trim();
        let rest = comment.strip_prefix("order:")?;
        rest.split_whitespace().map(|s| s.parse().ok()).collect()
    })
}

impl FromStr for TreeWithBoundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tree(s)
    }
}

impl fmt::Display for TreeWithBoundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tree_file())
    }
}
