//! Greedy ball-packing on the spectral embedding.
//!
//! For `i = 1..k-1` the vertex whose closed ball of radius `2R` holds the most
//! still-unassigned points becomes the center `u_i`; that ball is cluster `C_i`
//! and leaves the active set. Whatever remains forms `C_k`. The exact variant
//! scans every active vertex, the fast variant only a uniform sample drawn
//! with replacement. Ties go to the lowest vertex id.

mod kmeans;

pub use kmeans::kmeans_baseline;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::seeded_rng;
use crate::spectral::Embedding;

/// Multiplier `c_s` in the sample size `⌈c_s · ε⁻¹ · ln n⌉`.
pub const SAMPLE_CONSTANT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusMode {
    /// `R = 1 / (26 · d_max · √(n k))`.
    Theoretical,
    /// `γ` times the theoretical radius.
    Scaled(f64),
    /// `R` given directly.
    Explicit(f64),
}

/// How the fast variant picks its candidate centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Uniform draws with replacement.
    Random,
    /// Every active vertex; makes the fast variant identical to the exact one.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyConfig {
    pub k: usize,
    pub radius: RadiusMode,
    /// Sampling error parameter of the fast variant.
    pub epsilon: f64,
    pub seed: u64,
    pub sampling: Sampling,
}

impl GreedyConfig {
    pub fn new(k: usize) -> Self {
        GreedyConfig {
            k,
            radius: RadiusMode::Theoretical,
            epsilon: 0.1,
            seed: 0,
            sampling: Sampling::Random,
        }
    }

    pub fn with_radius(mut self, radius: RadiusMode) -> Self {
        self.radius = radius;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Self {
        self.sampling = sampling;
        self
    }

    /// The radius `R`; balls use `2R`.
    pub fn resolve_radius(&self, g: &Graph) -> Result<f64> {
        let base = || theoretical_radius(g.n(), self.k, g.max_degree());
        let r = match self.radius {
            RadiusMode::Theoretical => base(),
            RadiusMode::Scaled(gamma) => {
                if !(gamma > 0.0 && gamma.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "radius scale {gamma} must be positive"
                    )));
                }
                gamma * base()
            }
            RadiusMode::Explicit(r) => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "radius {r} must be positive"
                    )));
                }
                r
            }
        };
        Ok(r)
    }

    /// Number of draws per round before capping at `|V_{i-1}|`.
    pub fn sample_size(&self, n: usize) -> usize {
        let m = (SAMPLE_CONSTANT / self.epsilon * (n as f64).ln()).ceil();
        (m as usize).max(1)
    }
}

pub fn theoretical_radius(n: usize, k: usize, d_max: usize) -> f64 {
    1.0 / (26.0 * d_max as f64 * ((n * k) as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    /// 1-based round.
    pub iter: usize,
    /// `None` when the active set was already empty.
    pub center: Option<usize>,
    pub ball_size: usize,
    /// `|V_i|` after removing the ball.
    pub remaining: usize,
    /// Candidates drawn by the fast variant, in draw order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_ids: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterTrace {
    pub steps: Vec<TraceStep>,
    /// The resolved `R`.
    pub radius: f64,
    /// Labels of clusters that came out empty.
    pub empty_clusters: Vec<usize>,
}

fn within(emb: &Embedding, u: usize, w: usize, radius: f64) -> bool {
    emb.distance(u, w) <= radius
}

fn count_in_ball(emb: &Embedding, center: usize, radius: f64, active: &[usize]) -> usize {
    active
        .iter()
        .filter(|&&w| within(emb, center, w, radius))
        .count()
}

/// `|{w ∈ active : ‖f(center) − f(w)‖₂ ≤ radius}|`, closed ball.
pub fn ball_count(emb: &Embedding, center: usize, radius: f64, active: &[usize]) -> Result<usize> {
    if !active.contains(&center) {
        return Err(Error::InvalidParameter(format!(
            "center {center} is not in the active set"
        )));
    }
    if let Some(&w) = active.iter().find(|&&w| w >= emb.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: w,
            n: emb.n(),
        });
    }
    Ok(count_in_ball(emb, center, radius, active))
}

fn check_inputs(g: &Graph, emb: &Embedding, cfg: &GreedyConfig) -> Result<()> {
    if cfg.k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {} but greedy clustering needs k >= 2",
            cfg.k
        )));
    }
    if emb.n() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            found: emb.n(),
        });
    }
    if emb.k() != cfg.k {
        return Err(Error::SizeMismatch {
            expected: cfg.k,
            found: emb.k(),
        });
    }
    g.require_positive_degrees()
}

fn run<F>(
    g: &Graph,
    emb: &Embedding,
    cfg: &GreedyConfig,
    mut candidates: F,
) -> Result<(Partition, ClusterTrace)>
where
    F: FnMut(&[usize]) -> Option<Vec<usize>>,
{
    check_inputs(g, emb, cfg)?;
    let radius = cfg.resolve_radius(g)?;
    let ball = 2.0 * radius;
    let k = cfg.k;
    let mut labels = vec![usize::MAX; g.n()];
    let mut active: Vec<usize> = (0..g.n()).collect();
    let mut steps = Vec::with_capacity(k - 1);
    let mut empty_clusters = Vec::new();

    for i in 1..k {
        if active.is_empty() {
            empty_clusters.push(i - 1);
            steps.push(TraceStep {
                iter: i,
                center: None,
                ball_size: 0,
                remaining: 0,
                sampled_ids: None,
            });
            continue;
        }
        let sampled = candidates(&active);
        let pool: &[usize] = sampled.as_deref().unwrap_or(&active);
        let mut best = (0usize, usize::MAX);
        for &u in pool {
            let c = count_in_ball(emb, u, ball, &active);
            if c > best.0 || (c == best.0 && u < best.1) {
                best = (c, u);
            }
        }
        let center = best.1;
        active.retain(|&w| {
            if within(emb, center, w, ball) {
                labels[w] = i - 1;
                false
            } else {
                true
            }
        });
        steps.push(TraceStep {
            iter: i,
            center: Some(center),
            ball_size: best.0,
            remaining: active.len(),
            sampled_ids: sampled,
        });
    }
    if active.is_empty() {
        empty_clusters.push(k - 1);
    }
    for &w in &active {
        labels[w] = k - 1;
    }
    let partition = Partition::new(labels, k)?;
    Ok((
        partition,
        ClusterTrace {
            steps,
            radius,
            empty_clusters,
        },
    ))
}

/// Exact greedy clustering: the argmax ranges over all of `V_{i-1}`.
pub fn greedy_cluster(
    g: &Graph,
    emb: &Embedding,
    cfg: &GreedyConfig,
) -> Result<(Partition, ClusterTrace)> {
    run(g, emb, cfg, |_| None)
}

/// Sampled greedy clustering. Each round draws `min(|V_{i-1}|, ⌈c_s ε⁻¹ ln n⌉)`
/// candidates uniformly with replacement from `V_{i-1}`.
pub fn fast_cluster(
    g: &Graph,
    emb: &Embedding,
    cfg: &GreedyConfig,
) -> Result<(Partition, ClusterTrace)> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon = {} must be positive",
            cfg.epsilon
        )));
    }
    let per_round = cfg.sample_size(g.n());
    let mut rng = seeded_rng(cfg.seed);
    let sampling = cfg.sampling;
    run(g, emb, cfg, move |active| {
        let ids = match sampling {
            Sampling::Exhaustive => active.to_vec(),
            Sampling::Random => {
                let draws = per_round.min(active.len());
                (0..draws)
                    .map(|_| active[rng.gen_range(0..active.len())])
                    .collect()
            }
        };
        Some(ids)
    })
}
