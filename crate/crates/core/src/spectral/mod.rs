//! Normalized Laplacian, its leading eigenpairs, and the spectral embedding.
//!
//! Vectors are rows applied from the left, so `v L` and `L v` coincide for the
//! symmetric operator `L = I - D^{-1/2} A D^{-1/2}`.

mod dense;
mod lanczos;

pub use lanczos::LANCZOS_START_SEED;

use crate::error::{Error, Result};
use crate::graph::Graph;
use dense::DenseMatrix;

/// Largest graph the dense oracle accepts.
pub const DENSE_ORACLE_LIMIT: usize = 2000;

/// Eigenvalues below this count as zero when counting components.
pub const KERNEL_TOLERANCE: f64 = 1e-8;

/// Matrix-free normalized Laplacian of a graph without isolated vertices.
pub struct LaplacianOp<'a> {
    graph: &'a Graph,
    inv_sqrt_deg: Vec<f64>,
}

impl<'a> LaplacianOp<'a> {
    pub fn new(graph: &'a Graph) -> Result<Self> {
        graph.require_positive_degrees()?;
        let inv_sqrt_deg = (0..graph.n())
            .map(|u| 1.0 / (graph.degree(u) as f64).sqrt())
            .collect();
        Ok(LaplacianOp {
            graph,
            inv_sqrt_deg,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// `out = x L` in O(|E| + n).
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (u, o) in out.iter_mut().enumerate() {
            let s: f64 = self
                .graph
                .neighbors(u)
                .iter()
                .map(|&w| x[w] * self.inv_sqrt_deg[w])
                .sum();
            *o = x[u] - s * self.inv_sqrt_deg[u];
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        out
    }

    fn dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::identity(n);
        for &(u, v) in self.graph.edges() {
            let a = -self.inv_sqrt_deg[u] * self.inv_sqrt_deg[v];
            m.set(u, v, a);
            m.set(v, u, a);
        }
        m
    }
}

/// Applies the normalized Laplacian to `v`.
pub fn laplacian_apply(g: &Graph, v: &[f64]) -> Result<Vec<f64>> {
    if v.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: v.len(),
        });
    }
    Ok(LaplacianOp::new(g)?.apply(v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Residual bound `‖ξL - λξ‖₂` every returned pair must meet.
    pub tol: f64,
    /// Budget of matrix-vector products; `None` means `10 n`.
    pub max_iter: Option<usize>,
    /// Graphs with at most this many vertices go straight to the dense solver.
    pub dense_cutoff: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-10,
            max_iter: None,
            dense_cutoff: 300,
        }
    }
}

impl SolverOptions {
    /// Forces the iterative path regardless of size.
    pub fn iterative() -> Self {
        SolverOptions {
            dense_cutoff: 0,
            ..Self::default()
        }
    }
}

/// Eigenpairs of the normalized Laplacian, ascending by eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl Spectrum {
    fn new(values: Vec<f64>, mut vectors: Vec<Vec<f64>>) -> Self {
        vectors.iter_mut().for_each(|v| fix_sign(v));
        Spectrum { values, vectors }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Length of each eigenvector.
    pub fn dimension(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `i` is 0-based: `value(0)` is λ₁.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn truncated(mut self, m: usize) -> Self {
        self.values.truncate(m);
        self.vectors.truncate(m);
        self
    }

    /// Number of eigenvalues below [`KERNEL_TOLERANCE`].
    pub fn kernel_dimension(&self) -> usize {
        self.values
            .iter()
            .filter(|&&l| l < KERNEL_TOLERANCE)
            .count()
    }

    /// `‖ξ_i L - λ_i ξ_i‖₂` for every stored pair.
    pub fn residuals(&self, g: &Graph) -> Result<Vec<f64>> {
        let op = LaplacianOp::new(g)?;
        Ok(self
            .values
            .iter()
            .zip(&self.vectors)
            .map(|(&l, v)| {
                op.apply(v)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a - l * b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect())
    }

    /// `max |⟨ξ_i, ξ_j⟩ - δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate().skip(i) {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst
    }
}

/// Flips `v` so that its first entry of largest magnitude is positive.
fn fix_sign(v: &mut [f64]) {
    let mut best: f64 = 0.0;
    for &x in v.iter() {
        if x.abs() > best.abs() {
            best = x;
        }
    }
    if best < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Full spectrum by dense tridiagonalization and QL. Test oracle; quadratic
/// memory and cubic time, hence the size guard.
pub fn dense_spectrum_oracle(g: &Graph) -> Result<Spectrum> {
    if g.n() > DENSE_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n: g.n(),
            limit: DENSE_ORACLE_LIMIT,
        });
    }
    let op = LaplacianOp::new(g)?;
    let (values, vecs) = dense::symmetric_eigen(&op.dense())?;
    let vectors = (0..g.n()).map(|j| vecs.column(j)).collect();
    Ok(Spectrum::new(values, vectors))
}

/// The `k` smallest eigenpairs of the normalized Laplacian.
///
/// Small graphs (`n <= dense_cutoff`) use the dense solver; everything else
/// runs restarted Lanczos on `2I - L` from a start vector seeded with
/// [`LANCZOS_START_SEED`].
pub fn compute_spectrum(g: &Graph, k: usize, opts: &SolverOptions) -> Result<Spectrum> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must lie in 1..={n}"
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance {} must be positive",
            opts.tol
        )));
    }
    let op = LaplacianOp::new(g)?;
    if n <= opts.dense_cutoff {
        return Ok(dense_spectrum_oracle(g)?.truncated(k));
    }
    let budget = opts.max_iter.unwrap_or(10 * n);
    let out = lanczos::smallest_pairs(&op, k, opts.tol, budget)?;
    Ok(Spectrum::new(out.values, out.vectors))
}

/// Per-vertex points `f(u) = deg(u)^{-1/2} (ξ_1(u), …, ξ_k(u))`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    n: usize,
    k: usize,
    points: Vec<f64>,
}

impl Embedding {
    /// Wraps raw coordinates (`points.len() == n * k`).
    pub fn from_points(n: usize, k: usize, points: Vec<f64>) -> Result<Self> {
        if points.len() != n * k {
            return Err(Error::SizeMismatch {
                expected: n * k,
                found: points.len(),
            });
        }
        Ok(Embedding { n, k, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn point(&self, u: usize) -> &[f64] {
        &self.points[u * self.k..(u + 1) * self.k]
    }

    /// The rescaled eigenvector `x_i = ξ_i D^{-1/2}` (0-based `i`).
    pub fn coordinate(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|u| self.points[u * self.k + i]).collect()
    }

    pub fn distance(&self, u: usize, v: usize) -> f64 {
        self.point(u)
            .iter()
            .zip(self.point(v))
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

pub fn embed(g: &Graph, spec: &Spectrum, k: usize) -> Result<Embedding> {
    if k == 0 || spec.len() < k {
        return Err(Error::InsufficientSpectrum {
            have: spec.len(),
            need: k.max(1),
        });
    }
    if spec.dimension() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: spec.dimension(),
        });
    }
    g.require_positive_degrees()?;
    let n = g.n();
    let mut points = Vec::with_capacity(n * k);
    for u in 0..n {
        let scale = 1.0 / (g.degree(u) as f64).sqrt();
        points.extend((0..k).map(|i| spec.vector(i)[u] * scale));
    }
    Ok(Embedding { n, k, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::complete(3).disjoint_union(&Graph::complete(3))
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn sqrt_degree_vector_is_in_kernel() {
        let g = Graph::petersen().disjoint_union(&Graph::path(4));
        let v: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).sqrt()).collect();
        let out = laplacian_apply(&g, &v).unwrap();
        assert!(out.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn top_eigenvectors_of_bipartite_graphs() {
        let out = laplacian_apply(&Graph::complete(2), &[1.0, -1.0]).unwrap();
        assert_eq!(out, vec![2.0, -2.0]);
        let out = laplacian_apply(&Graph::cycle(4), &[1.0, -1.0, 1.0, -1.0]).unwrap();
        for (got, want) in out.iter().zip([2.0, -2.0, 2.0, -2.0]) {
            assert!(close(*got, want, 1e-15));
        }
    }

    #[test]
    fn laplacian_rejects_isolated_vertices_and_bad_lengths() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            laplacian_apply(&g, &[1.0; 3]),
            Err(Error::ZeroDegree { vertex: 2 })
        ));
        assert!(laplacian_apply(&Graph::complete(3), &[1.0; 2]).is_err());
    }

    #[test]
    fn complete_and_cycle_spectra() {
        let s = compute_spectrum(&Graph::complete(4), 2, &SolverOptions::default()).unwrap();
        assert!(close(s.value(0), 0.0, 1e-12));
        assert!(close(s.value(1), 4.0 / 3.0, 1e-12));

        let s = compute_spectrum(&Graph::cycle(4), 4, &SolverOptions::default()).unwrap();
        for (got, want) in s.values().iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!(close(*got, want, 1e-12), "{got} vs {want}");
        }
    }

    #[test]
    fn iterative_path_on_tiny_graphs() {
        let opts = SolverOptions::iterative();
        let s = compute_spectrum(&Graph::complete(4), 2, &opts).unwrap();
        assert!(close(s.value(1), 4.0 / 3.0, 1e-10));
        let s = compute_spectrum(&two_triangles(), 3, &opts).unwrap();
        assert!(close(s.value(0), 0.0, 1e-10));
        assert!(close(s.value(1), 0.0, 1e-10));
        assert!(close(s.value(2), 1.5, 1e-10));
        assert!(s.orthonormality_error() < 1e-10);
    }

    #[test]
    fn oracle_examples() {
        let s = dense_spectrum_oracle(&Graph::complete(2)).unwrap();
        assert!(close(s.value(0), 0.0, 1e-14) && close(s.value(1), 2.0, 1e-14));

        let s = dense_spectrum_oracle(&two_triangles()).unwrap();
        assert_eq!(s.kernel_dimension(), 2);

        let s = dense_spectrum_oracle(&Graph::petersen()).unwrap();
        assert!(close(s.value(1), 2.0 / 3.0, 1e-12));
        assert!(close(s.value(0), 0.0, 1e-12));
    }

    #[test]
    fn solver_argument_errors() {
        let g = Graph::complete(3);
        let o = SolverOptions::default();
        assert!(compute_spectrum(&g, 0, &o).is_err());
        assert!(compute_spectrum(&g, 4, &o).is_err());
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            compute_spectrum(&iso, 1, &o),
            Err(Error::ZeroDegree { .. })
        ));
    }

    #[test]
    fn oracle_size_guard() {
        let big = Graph::cycle(DENSE_ORACLE_LIMIT + 1);
        assert!(matches!(
            dense_spectrum_oracle(&big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn embedding_examples() {
        let k2 = Graph::complete(2);
        let s = dense_spectrum_oracle(&k2).unwrap();
        let e = embed(&k2, &s, 1).unwrap();
        assert!(close(e.point(0)[0], e.point(1)[0], 1e-15));
        assert!(close(e.point(0)[0].abs(), 0.5f64.sqrt(), 1e-15));

        let g = two_triangles();
        let s = dense_spectrum_oracle(&g).unwrap();
        let e = embed(&g, &s, 2).unwrap();
        for u in [1, 2] {
            assert!(e.distance(0, u) < 1e-12);
            assert!(e.distance(3, 3 + u) < 1e-12);
        }
        assert!(e.distance(0, 3) > 0.1);

        let g = Graph::petersen();
        let s = dense_spectrum_oracle(&g).unwrap();
        let e = embed(&g, &s, 1).unwrap();
        let x = e.coordinate(0);
        assert!(x.iter().all(|v| close(*v, x[0], 1e-14)));

        assert!(matches!(
            embed(&g, &s.truncated(1), 2),
            Err(Error::InsufficientSpectrum { have: 1, need: 2 })
        ));
    }
}
