use rand::seq::index::sample;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::seeded_rng;
use crate::spectral::Embedding;

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

/// Lloyd's algorithm on the embedding points.
///
/// Initial centers are `k` distinct data points drawn uniformly with the
/// seeded generator. Assignment ties keep the current label, then prefer the
/// lower center index. A cluster that empties is re-seeded with the point
/// farthest from its own center. Stops when a full round leaves the labels
/// unchanged or after `max_iter` rounds.
pub fn kmeans_baseline(emb: &Embedding, k: usize, seed: u64, max_iter: usize) -> Result<Partition> {
    let n = emb.n();
    let dim = emb.k();
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} must be at least 2"
        )));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the number of points {n}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut centers: Vec<Vec<f64>> = sample(&mut rng, n, k)
        .into_iter()
        .map(|u| emb.point(u).to_vec())
        .collect();
    let mut labels = vec![usize::MAX; n];

    for _ in 0..max_iter.max(1) {
        let mut next = labels.clone();
        for (u, slot) in next.iter_mut().enumerate() {
            let p = emb.point(u);
            let mut best = *slot;
            let mut best_d = if best == usize::MAX {
                f64::INFINITY
            } else {
                sq_dist(p, &centers[best])
            };
            for (c, center) in centers.iter().enumerate() {
                let d = sq_dist(p, center);
                if d < best_d || (d == best_d && best == usize::MAX) {
                    best = c;
                    best_d = d;
                }
            }
            *slot = best;
        }

        let mut sizes = vec![0usize; k];
        for &l in &next {
            sizes[l] += 1;
        }
        while let Some(empty) = sizes.iter().position(|&s| s == 0) {
            // Farthest point from its center, among clusters that can spare one.
            let mut far = None;
            let mut far_d = -1.0;
            for u in 0..n {
                if sizes[next[u]] < 2 {
                    continue;
                }
                let d = sq_dist(emb.point(u), &centers[next[u]]);
                if d > far_d {
                    far_d = d;
                    far = Some(u);
                }
            }
            let u = far.expect("k <= n leaves a cluster with two or more points");
            sizes[next[u]] -= 1;
            next[u] = empty;
            sizes[empty] = 1;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        for (u, &l) in next.iter().enumerate() {
            for (s, x) in sums[l].iter_mut().zip(emb.point(u)) {
                *s += x;
            }
        }
        for (c, sum) in sums.into_iter().enumerate() {
            centers[c] = sum.into_iter().map(|s| s / sizes[c] as f64).collect();
        }

        let stable = next == labels;
        labels = next;
        if stable {
            break;
        }
    }
    Partition::new(labels, k)
}
