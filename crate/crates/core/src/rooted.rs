use crate::canon::{bfs_parents, subtree_codes};
use crate::tree::{TreeWithBoundary, Vertex};

/// A tree hanging from a chosen root.
///
/// Children of each vertex are listed by `(degree, subtree code)`, then by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedView {
    pub root: Vertex,
    pub parent: Vec<Option<Vertex>>,
    pub height: Vec<usize>,
    pub children: Vec<Vec<Vertex>>,
    /// Rooted AHU code of the subtree below each vertex.
    pub subtree_code: Vec<Vec<u8>>,
}

impl RootedView {
    pub fn new(tree: &TreeWithBoundary, root: Vertex) -> Self {
        let n = tree.n();
        let (parent, order) = bfs_parents(tree, root);
        let mut height = vec![0; n];
        let mut children = vec![Vec::new(); n];
        for &v in &order {
            if let Some(p) = parent[v] {
                height[v] = height[p] + 1;
                children[p].push(v);
            }
        }
        let subtree_code = subtree_codes(tree, root);
        for kids in &mut children {
            kids.sort_by(|&a, &b| {
                (tree.degree(a), &subtree_code[a], a).cmp(&(tree.degree(b), &subtree_code[b], b))
            });
        }
        RootedView { root, parent, height, children, subtree_code }
    }

    /// All vertices of the subtree below `v`, `v` included.
    pub fn descendants(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }
}

pub fn rooted_view(tree: &TreeWithBoundary, root: Vertex) -> RootedView {
    RootedView::new(tree, root)
}
