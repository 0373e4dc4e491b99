//! External and internal conductance, and the strength verdict built on them.
//!
//! Internal conductance is a minimum over exponentially many cuts, so it is
//! reported as certified bounds: `λ₂(G[S]) / 2` from below (Cheeger) and the
//! best sweep cut of the second eigenvector of `G[S]` from above. Small sets
//! are also enumerated exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::spectral::{compute_spectrum, SolverOptions};

/// Largest set enumerated exactly unless the caller says otherwise.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// Hard cap on exact enumeration, whatever the caller asks for.
pub const MAX_EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConductanceMode {
    /// Enumerate every subset (and also compute the bounds); fails above `limit`.
    Exact { limit: usize },
    /// Cheeger lower bound and sweep-cut upper bound only.
    Bounds,
    /// `Exact` when `|S| <= exact_limit`, otherwise `Bounds`.
    Auto { exact_limit: usize },
}

impl Default for ConductanceMode {
    fn default() -> Self {
        ConductanceMode::Auto {
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConductanceBounds {
    pub phi_out: f64,
    pub phi_in_lower: f64,
    pub phi_in_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_in_exact: Option<f64>,
}

impl ConductanceBounds {
    /// Tightest certified lower bound: the exact value when known.
    pub fn certified_lower(&self) -> f64 {
        self.phi_in_exact.unwrap_or(self.phi_in_lower)
    }

    /// Tightest certified upper bound: the exact value when known.
    pub fn certified_upper(&self) -> f64 {
        self.phi_in_exact.unwrap_or(self.phi_in_upper)
    }
}

fn membership(g: &Graph, s: &[usize]) -> Result<Vec<bool>> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut inside = vec![false; g.n()];
    for &u in s {
        if u >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: u,
                n: g.n(),
            });
        }
        inside[u] = true;
    }
    Ok(inside)
}

/// Edges leaving `s` and the volume of `s`, both measured in `g`.
pub fn cut_and_volume(g: &Graph, s: &[usize]) -> Result<(usize, usize)> {
    let inside = membership(g, s)?;
    let mut cut = 0;
    let mut vol = 0;
    for u in (0..g.n()).filter(|&u| inside[u]) {
        vol += g.degree(u);
        cut += g.neighbors(u).iter().filter(|&&w| !inside[w]).count();
    }
    Ok((cut, vol))
}

/// `φ_out(S; G) = |E(S, V∖S)| / vol(S)`.
pub fn external_conductance(g: &Graph, s: &[usize]) -> Result<f64> {
    let (cut, vol) = cut_and_volume(g, s)?;
    if vol == 0 {
        return Err(Error::ZeroVolume);
    }
    Ok(cut as f64 / vol as f64)
}

/// Exact `φ(H)` of a connected graph `H` on at most [`MAX_EXACT_LIMIT`]
/// vertices: minimum of `cut(S') / vol(S')` over non-empty `S'` with
/// `vol(S') <= vol(H) / 2`. Returns `(cut, vol)` of a minimizer.
fn exact_graph_conductance(h: &Graph) -> (usize, usize) {
    let s = h.n();
    debug_assert!(s <= MAX_EXACT_LIMIT);
    let adj: Vec<u32> = (0..s)
        .map(|u| h.neighbors(u).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let total = h.total_volume();
    let subsets = 1usize << s;
    // vol and cut by dynamic programming over the lowest set bit.
    let mut vol = vec![0u32; subsets];
    let mut cut = vec![0u32; subsets];
    let mut best: Option<(usize, usize)> = None;
    for mask in 1..subsets {
        let u = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let deg = h.degree(u) as u32;
        vol[mask] = vol[rest] + deg;
        cut[mask] = cut[rest] + deg - 2 * (adj[u] & rest as u32).count_ones();
        let (c, v) = (cut[mask] as usize, vol[mask] as usize);
        if 2 * v > total || v == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((bc, bv)) => c * bv < bc * v,
        };
        if better {
            best = Some((c, v));
        }
    }
    best.expect("a connected graph with two or more vertices has a feasible cut")
}

/// Best threshold cut along the second eigenvector of a connected `H`.
fn sweep_upper_bound(h: &Graph, xi2: &[f64]) -> f64 {
    let s = h.n();
    let x: Vec<f64> = (0..s)
        .map(|u| xi2[u] / (h.degree(u) as f64).sqrt())
        .collect();
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    let total = h.total_volume();
    let mut inside = vec![false; s];
    let mut cut: i64 = 0;
    let mut vol = 0usize;
    let mut best = f64::INFINITY;
    for &u in &order[..s - 1] {
        let internal = h.neighbors(u).iter().filter(|&&w| inside[w]).count() as i64;
        cut += h.degree(u) as i64 - 2 * internal;
        vol += h.degree(u);
        inside[u] = true;
        let small = vol.min(total - vol);
        if small > 0 {
            best = best.min(cut as f64 / small as f64);
        }
    }
    best
}

/// Conductance of `s` in `g` from outside (`φ_out`) and inside (`φ_in`).
///
/// Volumes for `φ_in` are those of the induced subgraph `G[S]`. A disconnected
/// `G[S]` has `φ_in = 0`, which both bounds (and the exact value) report.
pub fn internal_conductance(
    g: &Graph,
    s: &[usize],
    mode: ConductanceMode,
) -> Result<ConductanceBounds> {
    let phi_out = external_conductance(g, s)?;
    let (h, _) = g.induced_subgraph(s)?;
    let size = h.n();
    if size < 2 {
        return Err(Error::ClusterTooSmall { size });
    }
    let run_exact = match mode {
        ConductanceMode::Exact { limit } => {
            let limit = limit.min(MAX_EXACT_LIMIT);
            if size > limit {
                return Err(Error::TooLarge { n: size, limit });
            }
            true
        }
        ConductanceMode::Bounds => false,
        ConductanceMode::Auto { exact_limit } => size <= exact_limit.min(MAX_EXACT_LIMIT),
    };

    if !h.is_connected() {
        return Ok(ConductanceBounds {
            phi_out,
            phi_in_lower: 0.0,
            phi_in_upper: 0.0,
            phi_in_exact: run_exact.then_some(0.0),
        });
    }

    let spec = compute_spectrum(&h, 2, &SolverOptions::default())?;
    let lambda2 = spec.value(1).max(0.0);
    let phi_in_upper = sweep_upper_bound(&h, spec.vector(1));
    let phi_in_exact = run_exact.then(|| {
        let (c, v) = exact_graph_conductance(&h);
        c as f64 / v as f64
    });
    Ok(ConductanceBounds {
        phi_out,
        phi_in_lower: lambda2 / 2.0,
        phi_in_upper,
        phi_in_exact,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Strong,
    NotStrong,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterStrength {
    pub id: usize,
    pub size: usize,
    pub phi_out: f64,
    /// `None` when `φ_in` is undefined for this cluster (a singleton).
    pub phi_in: Option<ConductanceBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrengthReport {
    pub clusters: Vec<ClusterStrength>,
    /// `max_i φ_out(A_i)`.
    pub alpha_out: f64,
    /// `min_i` of each cluster's certified lower bound on `φ_in`.
    pub alpha_in_lower: f64,
    /// `min_i` of each cluster's certified upper bound on `φ_in`.
    pub alpha_in_upper: f64,
}

impl StrengthReport {
    pub fn has_undefined_clusters(&self) -> bool {
        self.clusters.iter().any(|c| c.phi_in.is_none())
    }

    /// Whether the partition is `(alpha_in, alpha_out)`-strong, as far as the
    /// bounds can tell.
    pub fn verdict(&self, alpha_in: f64, alpha_out: f64) -> Verdict {
        if self.has_undefined_clusters()
            || self.alpha_in_upper < alpha_in
            || self.alpha_out > alpha_out
        {
            Verdict::NotStrong
        } else if self.alpha_in_lower >= alpha_in {
            Verdict::Strong
        } else {
            Verdict::Unknown
        }
    }
}

/// Scores every cluster of `p`. Empty clusters are an error; singletons are
/// reported with an undefined `φ_in` and force a not-strong verdict.
pub fn strength_report(g: &Graph, p: &Partition, mode: ConductanceMode) -> Result<StrengthReport> {
    if p.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: p.n(),
        });
    }
    if let Some(&cluster) = p.empty_clusters().first() {
        return Err(Error::EmptyCluster { cluster });
    }
    let mut clusters = Vec::with_capacity(p.k());
    for (id, members) in p.clusters().into_iter().enumerate() {
        let phi_out = external_conductance(g, &members)?;
        let entry = match internal_conductance(g, &members, mode) {
            Ok(b) => ClusterStrength {
                id,
                size: members.len(),
                phi_out,
                phi_in: Some(b),
                diagnostic: None,
            },
            Err(Error::ClusterTooSmall { size }) => ClusterStrength {
                id,
                size: members.len(),
                phi_out,
                phi_in: None,
                diagnostic: Some(format!(
                    "internal conductance undefined for a cluster of size {size}"
                )),
            },
            Err(e) => return Err(e),
        };
        clusters.push(entry);
    }
    let alpha_out = clusters.iter().map(|c| c.phi_out).fold(0.0, f64::max);
    let defined = || clusters.iter().filter_map(|c| c.phi_in);
    let alpha_in_lower = defined()
        .map(|b| b.certified_lower())
        .reduce(f64::min)
        .unwrap_or(0.0);
    let alpha_in_upper = defined()
        .map(|b| b.certified_upper())
        .reduce(f64::min)
        .unwrap_or(0.0);
    Ok(StrengthReport {
        clusters,
        alpha_out,
        alpha_in_lower,
        alpha_in_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bridged_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    const EXACT: ConductanceMode = ConductanceMode::Exact {
        limit: DEFAULT_EXACT_LIMIT,
    };

    #[test]
    fn external_examples() {
        assert_eq!(
            external_conductance(&Graph::complete(4), &[0]).unwrap(),
            1.0
        );
        let g = bridged_triangles();
        assert!((external_conductance(&g, &[0, 1, 2]).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(external_conductance(&g, &all).unwrap(), 0.0);
        let iso = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            external_conductance(&iso, &[2]),
            Err(Error::ZeroVolume)
        ));
        assert!(matches!(
            external_conductance(&g, &[]),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn internal_examples() {
        let k3 = Graph::complete(3);
        let b = internal_conductance(&k3, &[0, 1, 2], EXACT).unwrap();
        assert_eq!(b.phi_in_exact, Some(1.0));

        let p4 = Graph::path(4);
        let b = internal_conductance(&p4, &[0, 1, 2, 3], EXACT).unwrap();
        assert!((b.phi_in_exact.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(b.phi_in_lower <= b.phi_in_exact.unwrap() + 1e-12);
        assert!(b.phi_in_exact.unwrap() <= b.phi_in_upper + 1e-12);

        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let all: Vec<usize> = (0..6).collect();
        let b = internal_conductance(&two, &all, EXACT).unwrap();
        assert_eq!(b.phi_in_exact, Some(0.0));
        let b = internal_conductance(&two, &all, ConductanceMode::Bounds).unwrap();
        assert_eq!((b.phi_in_lower, b.phi_in_upper), (0.0, 0.0));
        assert_eq!(b.phi_in_exact, None);
    }

    #[test]
    fn internal_uses_induced_volumes() {
        // Triangle {0,1,2} inside K4: G[S] is K3 whatever vertex 3 does.
        let b = internal_conductance(&Graph::complete(4), &[0, 1, 2], EXACT).unwrap();
        assert_eq!(b.phi_in_exact, Some(1.0));
        assert_eq!(b.phi_out, 1.0 / 3.0);
    }

    #[test]
    fn internal_errors() {
        let g = Graph::complete(4);
        assert!(matches!(
            internal_conductance(&g, &[1], EXACT),
            Err(Error::ClusterTooSmall { size: 1 })
        ));
        let c = Graph::cycle(24);
        let all: Vec<usize> = (0..24).collect();
        assert!(matches!(
            internal_conductance(&c, &all, EXACT),
            Err(Error::TooLarge { .. })
        ));
        let auto = internal_conductance(&c, &all, ConductanceMode::default()).unwrap();
        assert!(auto.phi_in_exact.is_none());
    }

    #[test]
    fn bridged_triangles_are_strong() {
        let g = bridged_triangles();
        let p = Partition::from_labels(vec![0, 0, 0, 1, 1, 1]);
        let r = strength_report(&g, &p, ConductanceMode::default()).unwrap();
        assert!((r.alpha_out - 1.0 / 7.0).abs() < 1e-15);
        assert_eq!(r.alpha_in_lower, 1.0);
        assert_eq!(r.verdict(1.0, 1.0 / 7.0), Verdict::Strong);
        assert_eq!(r.verdict(1.0, 0.1), Verdict::NotStrong);
        assert_eq!(r.verdict(1.5, 0.5), Verdict::NotStrong);
    }

    #[test]
    fn verdict_unknown_between_bounds() {
        let c = Graph::cycle(30);
        let all: Vec<usize> = (0..30).collect();
        let r = strength_report(
            &c,
            &Partition::from_labels(vec![0; 30]),
            ConductanceMode::Bounds,
        )
        .unwrap();
        let b = internal_conductance(&c, &all, ConductanceMode::Bounds).unwrap();
        assert!(b.phi_in_lower < b.phi_in_upper);
        let mid = 0.5 * (b.phi_in_lower + b.phi_in_upper);
        assert_eq!(r.verdict(mid, 0.0), Verdict::Unknown);
    }

    #[test]
    fn singleton_cluster_is_not_strong() {
        let g = Graph::complete(4);
        let p = Partition::from_labels(vec![0, 1, 1, 1]);
        let r = strength_report(&g, &p, ConductanceMode::default()).unwrap();
        assert!(r.clusters[0].phi_in.is_none());
        assert!(r.clusters[0].diagnostic.is_some());
        assert_eq!(r.verdict(0.0, 1.0), Verdict::NotStrong);
    }

    #[test]
    fn empty_cluster_is_an_error() {
        let g = Graph::complete(4);
        let p = Partition::new(vec![0, 0, 2, 2], 3).unwrap();
        assert!(matches!(
            strength_report(&g, &p, ConductanceMode::default()),
            Err(Error::EmptyCluster { cluster: 1 })
        ));
    }
}
