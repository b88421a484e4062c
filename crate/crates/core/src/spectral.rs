//! Laplacian and Dirichlet operators of a tree with boundary and the first
//! Dirichlet eigenpair.
//!
//! The Dirichlet operator is the principal submatrix of `D - A` on the
//! interior vertices, so its diagonal keeps the whole-graph degrees.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{TreeWithBoundary, Vertex};

pub const DEFAULT_TOL: f64 = 1e-12;
/// Largest interior count solved by full diagonalization.
pub const DENSE_LIMIT: usize = 64;
pub const MAX_ITERATIONS: usize = 10_000;

/// `D - A` over all vertices.
pub fn laplacian(tree: &TreeWithBoundary) -> DMatrix<f64> {
    let n = tree.n();
    let mut m = DMatrix::zeros(n, n);
    for v in 0..n {
        m[(v, v)] = tree.degree(v) as f64;
    }
    for &(u, v) in tree.edges() {
        m[(u, v)] = -1.0;
        m[(v, u)] = -1.0;
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletMatrix {
    pub matrix: DMatrix<f64>,
    /// Vertex of each row.
    pub vertices: Vec<Vertex>,
    /// Row of each vertex, `None` on the boundary.
    pub row: Vec<Option<usize>>,
}

impl DirichletMatrix {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Scatters an interior vector into a full-length function, zero on the boundary.
    pub fn extend(&self, x: &DVector<f64>) -> Vec<f64> {
        self.row.iter().map(|r| r.map_or(0.0, |i| x[i])).collect()
    }
}

pub fn dirichlet_matrix(tree: &TreeWithBoundary) -> DirichletMatrix {
    let vertices = tree.interior();
    let mut row = vec![None; tree.n()];
    for (i, &v) in vertices.iter().enumerate() {
        row[v] = Some(i);
    }
    let k = vertices.len();
    let mut matrix = DMatrix::zeros(k, k);
    for (i, &v) in vertices.iter().enumerate() {
        matrix[(i, i)] = tree.degree(v) as f64;
        for &w in tree.neighbors(v) {
            if let Some(j) = row[w] {
                matrix[(i, j)] = -1.0;
            }
        }
    }
    DirichletMatrix { matrix, vertices, row }
}

/// First Dirichlet eigenvalue with its normalized, positive eigenfunction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletEigenpair {
    pub lambda: f64,
    /// Second Dirichlet eigenvalue minus `lambda`; infinite when `k = 1`.
    pub gap: f64,
    /// `‖Δ₀f − λf‖ / ‖f‖`.
    pub residual: f64,
    /// One value per vertex, `0.0` on the boundary.
    pub f: Vec<f64>,
}

impl DirichletEigenpair {
    /// Simplicity test with the gap scaled by the operator's size.
    pub fn is_simple(&self, tree: &TreeWithBoundary) -> bool {
        let scale = (0..tree.n()).map(|v| 2 * tree.degree(v)).max().unwrap_or(1) as f64;
        self.gap > 1e-10 * scale.max(1.0)
    }
}

fn residual(a: &DMatrix<f64>, x: &DVector<f64>, lambda: f64) -> f64 {
    (a * x - x * lambda).norm() / x.norm()
}

fn normalize_sign(x: &mut DVector<f64>) {
    if x.sum() < 0.0 {
        x.neg_mut();
    }
    let norm = x.norm();
    *x /= norm;
}

pub fn first_eigenpair(tree: &TreeWithBoundary, tol: f64) -> Result<DirichletEigenpair> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance);
    }
    let dm = dirichlet_matrix(tree);
    let a = &dm.matrix;
    let k = dm.k();
    if k == 1 {
        return Ok(DirichletEigenpair {
            lambda: a[(0, 0)],
            gap: f64::INFINITY,
            residual: 0.0,
            f: dm.extend(&DVector::from_element(1, 1.0)),
        });
    }
    let (lambda, mut x, second) =
        if k <= DENSE_LIMIT { dense_lowest_two(a) } else { iterative_lowest_two(a, tol)? };
    normalize_sign(&mut x);
    let mut lambda = lambda;
    let mut res = residual(a, &x, lambda);
    if res > tol {
        (lambda, x, res) = polish(a, lambda, x, tol)?;
    }
    Ok(DirichletEigenpair { lambda, gap: second - lambda, residual: res, f: dm.extend(&x) })
}

fn dense_lowest_two(a: &DMatrix<f64>) -> (f64, DVector<f64>, f64) {
    let eig = SymmetricEigen::new(a.clone());
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let x = eig.eigenvectors.column(idx[0]).into_owned();
    (eig.eigenvalues[idx[0]], x, eig.eigenvalues[idx[1]])
}

/// Inverse iteration for the lowest eigenpair, then deflated inverse
/// iteration for the second eigenvalue. Both reuse one Cholesky factor.
fn iterative_lowest_two(a: &DMatrix<f64>, tol: f64) -> Result<(f64, DVector<f64>, f64)> {
    let k = a.nrows();
    let chol = a.clone().cholesky().ok_or(Error::Convergence { residual: f64::NAN, iterations: 0 })?;
    let mut x = DVector::from_element(k, 1.0 / (k as f64).sqrt());
    let mut lambda = x.dot(&(a * &x));
    let mut res = residual(a, &x, lambda);
    let mut it = 0;
    while res > tol && it < MAX_ITERATIONS {
        x = chol.solve(&x);
        x /= x.norm();
        lambda = x.dot(&(a * &x));
        res = residual(a, &x, lambda);
        it += 1;
    }
    if res > tol {
        // Rayleigh-quotient steps converge where plain inverse iteration stalls.
        (lambda, x, _) = polish(a, lambda, x, tol)?;
    }
    // Any vector orthogonal to x works as long as it is not itself an eigenvector.
    let mut y = DVector::from_fn(k, |i, _| ((i as f64) * 0.7548776662466927).sin() + 0.1);
    let mut mu = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        y -= &x * x.dot(&y);
        y /= y.norm();
        let next = y.dot(&(a * &y));
        if (mu - next).abs() <= 1e-15 * next.abs().max(1.0) {
            mu = next;
            break;
        }
        mu = next;
        y = chol.solve(&y);
    }
    Ok((lambda, x, mu))
}

fn polish(
    a: &DMatrix<f64>,
    mut lambda: f64,
    mut x: DVector<f64>,
    tol: f64,
) -> Result<(f64, DVector<f64>, f64)> {
    let k = a.nrows();
    let mut res = residual(a, &x, lambda);
    for it in 0..8 {
        if res <= tol {
            return Ok((lambda, x, res));
        }
        let shifted = a - DMatrix::<f64>::identity(k, k) * lambda;
        let Some(y) = shifted.lu().solve(&x) else {
            return Ok((lambda, x, res));
        };
        let mut y = y;
        normalize_sign(&mut y);
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::Convergence { residual: res, iterations: it });
        }
        x = y;
        lambda = x.dot(&(a * &x));
        res = residual(a, &x, lambda);
    }
    if res <= tol {
        Ok((lambda, x, res))
    } else {
        Err(Error::Convergence { residual: res, iterations: MAX_ITERATIONS })
    }
}

/// `Σ_{(u,v)∈E} (f(u) − f(v))²`.
pub fn quadratic_form(tree: &TreeWithBoundary, f: &[f64]) -> f64 {
    tree.edges().iter().map(|&(u, v)| (f[u] - f[v]).powi(2)).sum()
}

/// Rayleigh quotient of `f` over all edges and all vertices.
pub fn rayleigh_quotient(tree: &TreeWithBoundary, f: &[f64]) -> Result<f64> {
    if f.len() != tree.n() {
        return Err(Error::FunctionLength { got: f.len(), n: tree.n() });
    }
    let denom: f64 = f.iter().map(|x| x * x).sum();
    if denom == 0.0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(quadratic_form(tree, f) / denom)
}

/// `|λ − Σ b_v f(v) / Σ f(v)|` with `b_v` the number of boundary neighbors.
///
/// `f` vanishes on the boundary, so both sums run over interior vertices.
pub fn boundary_weight_identity_residual(tree: &TreeWithBoundary, pair: &DirichletEigenpair) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for v in tree.interior() {
        num += tree.boundary_neighbors(v) as f64 * pair.f[v];
        den += pair.f[v];
    }
    (pair.lambda - num / den).abs()
}

/// Verifies `λ(small) > λ(large)` for a proper embedding of `small` into `large`.
///
/// `embedding[v]` is the image of `v`. Interior vertices must map to interior
/// vertices of the same degree, so that the Dirichlet operator of `small` is a
/// principal submatrix of that of `large`.
pub fn check_monotonicity(
    small: &TreeWithBoundary,
    large: &TreeWithBoundary,
    embedding: &[Vertex],
) -> Result<bool> {
    validate_embedding(small, large, embedding)?;
    let ls = first_eigenpair(small, DEFAULT_TOL)?.lambda;
    let ll = first_eigenpair(large, DEFAULT_TOL)?.lambda;
    Ok(ls > ll)
}

fn validate_embedding(small: &TreeWithBoundary, large: &TreeWithBoundary, embedding: &[Vertex]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidEmbedding(msg));
    if embedding.len() != small.n() {
        return bad(format!("{} images for {} vertices", embedding.len(), small.n()));
    }
    let mut hit = vec![false; large.n()];
    for &w in embedding {
        if w >= large.n() || std::mem::replace(&mut hit[w], true) {
            return bad(format!("image {w} out of range or repeated"));
        }
    }
    for &(u, v) in small.edges() {
        if !large.has_edge(embedding[u], embedding[v]) {
            return bad(format!("edge ({u}, {v}) has no image"));
        }
    }
    for v in small.interior() {
        if large.degree(embedding[v]) != small.degree(v) {
            return bad(format!("interior vertex {v} changes degree"));
        }
    }
    if small.n() == large.n() {
        return bad("embedding is not proper".into());
    }
    Ok(())
}
