//! Runtime checks that the rescaled eigenvectors `x_i = ξ_i D^{-1/2}` are
//! nearly constant on the clusters of a good partition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::spectral::{Embedding, Spectrum};

/// `Σ_{u,v ∈ C} (a_u − a_v)²` over ordered pairs, via
/// `2|C| Σ a² − 2 (Σ a)²`.
pub fn pair_sum(values: &[f64]) -> f64 {
    let len = values.len() as f64;
    let sum: f64 = values.iter().sum();
    let sq: f64 = values.iter().map(|a| a * a).sum();
    (2.0 * len * sq - 2.0 * sum * sum).max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub k: usize,
    pub lambda_k: f64,
    pub d_max: usize,
    pub alpha_in: f64,
    /// `r_i = ‖x_i − x̃_i‖²` where `x̃_i` is `x_i` averaged per cluster.
    pub residuals: Vec<f64>,
    /// `2 k λ_k d_max³ / α_in²`.
    pub bound_cubic: f64,
    /// `2 k λ_k d_max / α_in²`.
    pub bound_linear: f64,
    pub within_cubic: bool,
    pub within_linear: bool,
}

fn check_embedding(g: &Graph, emb: &Embedding, spec: &Spectrum) -> Result<()> {
    if emb.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: emb.n(),
        });
    }
    if spec.len() < emb.k() {
        return Err(Error::InsufficientSpectrum {
            have: spec.len(),
            need: emb.k(),
        });
    }
    Ok(())
}

/// Distance of each `x_i` (`i <= k`, `k` the embedding dimension) from its
/// per-cluster mean, against both forms of the concentration bound.
pub fn concentration_check(
    g: &Graph,
    emb: &Embedding,
    p: &Partition,
    spec: &Spectrum,
    alpha_in: f64,
) -> Result<ConcentrationReport> {
    check_embedding(g, emb, spec)?;
    if p.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: p.n(),
        });
    }
    if alpha_in.is_nan() || alpha_in <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "alpha_in = {alpha_in} must be positive"
        )));
    }
    if let Some(&cluster) = p.empty_clusters().first() {
        return Err(Error::EmptyCluster { cluster });
    }
    let k = emb.k();
    let sizes = p.sizes();
    let residuals = (0..k)
        .map(|i| {
            let x = emb.coordinate(i);
            let mut mean = vec![0.0; p.k()];
            for (u, &l) in p.labels().iter().enumerate() {
                mean[l] += x[u];
            }
            for (m, &s) in mean.iter_mut().zip(&sizes) {
                *m /= s as f64;
            }
            x.iter()
                .zip(p.labels())
                .map(|(xu, &l)| (xu - mean[l]).powi(2))
                .sum::<f64>()
        })
        .collect::<Vec<_>>();
    let lambda_k = spec.value(k - 1).max(0.0);
    let d_max = g.max_degree();
    let d = d_max as f64;
    let base = 2.0 * k as f64 * lambda_k / (alpha_in * alpha_in);
    let bound_cubic = base * d * d * d;
    let bound_linear = base * d;
    let within = |b: f64| residuals.iter().all(|&r| r <= b);
    Ok(ConcentrationReport {
        k,
        lambda_k,
        d_max,
        alpha_in,
        within_cubic: within(bound_cubic),
        within_linear: within(bound_linear),
        residuals,
        bound_cubic,
        bound_linear,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSumReport {
    /// `Σ_{u,v ∈ C} (x_i(u) − x_i(v))²` for each `i <= k`.
    pub sums: Vec<f64>,
    /// `4 λ_k vol(C) / φ_in²`, with `vol` measured in `G`.
    pub bound: f64,
    pub holds: bool,
}

/// Pairwise spread of every `x_i` inside `cluster` against
/// `4 λ_k vol(C) / φ_in²`.
pub fn pairsum_check(
    g: &Graph,
    emb: &Embedding,
    spec: &Spectrum,
    cluster: &[usize],
    phi_in_lower: f64,
) -> Result<PairSumReport> {
    check_embedding(g, emb, spec)?;
    if cluster.is_empty() {
        return Err(Error::EmptySubset);
    }
    if phi_in_lower.is_nan() || phi_in_lower <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "phi_in lower bound {phi_in_lower} must be positive"
        )));
    }
    if let Some(&vertex) = cluster.iter().find(|&&u| u >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex, n: g.n() });
    }
    let k = emb.k();
    let sums: Vec<f64> = (0..k)
        .map(|i| {
            let vals: Vec<f64> = cluster.iter().map(|&u| emb.point(u)[i]).collect();
            pair_sum(&vals)
        })
        .collect();
    let lambda_k = spec.value(k - 1).max(0.0);
    let bound = 4.0 * lambda_k * g.volume(cluster) as f64 / (phi_in_lower * phi_in_lower);
    Ok(PairSumReport {
        holds: sums.iter().all(|&s| s <= bound),
        sums,
        bound,
    })
}
