//! Restarted Lanczos with full reorthogonalization and locking.
//!
//! The solver works on `2I - L`, whose largest eigenvalues are the smallest
//! ones of `L` because the spectrum of `L` lies in `[0, 2]`. Converged Ritz
//! pairs are locked and deflated from every later Krylov basis, which lets
//! repeated eigenvalues (e.g. the kernel of a disconnected graph) surface one
//! copy per restart.
//!
//! Termination: once `k` pairs are locked, each further cycle starts from a
//! fresh random vector and converges the top pair of the deflated operator.
//! If its eigenvalue is below the k-th smallest locked one it was skipped
//! earlier (typically a second copy of a repeated eigenvalue) and gets locked;
//! otherwise the locked set is complete.
//!
//! A cycle that locks nothing doubles the Krylov dimension (up to `n`), which
//! is what clustered spectra such as long cycles need.

use rand::Rng;

use super::dense::tridiagonal_eigen;
use super::LaplacianOp;
use crate::error::{Error, Result};
use crate::seeded_rng;

/// Seed of the pseudorandom start vectors.
pub const LANCZOS_START_SEED: u64 = 0x1A2C_5EED;

const BREAKDOWN: f64 = 1e-12;

pub(crate) struct LanczosOutcome {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Two passes of classical Gram-Schmidt against each set in `against`.
fn orthogonalize(w: &mut [f64], against: &[&[Vec<f64>]]) {
    for _ in 0..2 {
        for set in against {
            for q in set.iter() {
                let c = dot(w, q);
                axpy(-c, q, w);
            }
        }
    }
}

fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>() - 0.5).collect()
}

pub(crate) fn smallest_pairs(
    op: &LaplacianOp<'_>,
    k: usize,
    tol: f64,
    max_matvecs: usize,
) -> Result<LanczosOutcome> {
    let n = op.n();
    let mut krylov_dim = n.min((2 * k + 20).max(40));
    let mut rng = seeded_rng(LANCZOS_START_SEED);

    let mut locked_vecs: Vec<Vec<f64>> = Vec::new();
    let mut locked_vals: Vec<f64> = Vec::new();
    let mut matvecs = 0usize;
    let mut worst_residual = f64::INFINITY;
    let mut start = random_vector(&mut rng, n);
    let mut buf = vec![0.0; n];
    let mut verifying = false;

    let shifted = |x: &[f64], out: &mut [f64], count: &mut usize| {
        op.apply_into(x, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o = 2.0 * xi - *o;
        }
        *count += 1;
    };

    'outer: loop {
        if locked_vecs.len() == n {
            break;
        }
        if matvecs > max_matvecs {
            return Err(Error::NonConvergence {
                converged: locked_vecs.len().min(k),
                wanted: k,
                iterations: matvecs,
                worst_residual,
            });
        }

        orthogonalize(&mut start, &[&locked_vecs]);
        let mut start_norm = norm(&start);
        let mut attempts = 0;
        while start_norm < 1e-8 {
            attempts += 1;
            if attempts > 8 {
                // Everything reachable is locked.
                break 'outer;
            }
            start = random_vector(&mut rng, n);
            orthogonalize(&mut start, &[&locked_vecs]);
            start_norm = norm(&start);
        }
        for x in &mut start {
            *x /= start_norm;
        }

        let locked_before = locked_vecs.len();
        let dim = krylov_dim.min(n - locked_vecs.len());
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
        let mut alpha = Vec::with_capacity(dim);
        let mut beta: Vec<f64> = Vec::with_capacity(dim);
        let mut q = std::mem::take(&mut start);
        let mut beta_last = 0.0;
        for j in 0..dim {
            let mut w = vec![0.0; n];
            shifted(&q, &mut w, &mut matvecs);
            let a = dot(&w, &q);
            alpha.push(a);
            axpy(-a, &q, &mut w);
            if j > 0 {
                axpy(-beta[j - 1], &basis[j - 1], &mut w);
            }
            basis.push(q);
            orthogonalize(&mut w, &[&locked_vecs, &basis]);
            let b = norm(&w);
            if j + 1 == dim || b < BREAKDOWN {
                beta_last = b;
                break;
            }
            beta.push(b);
            for x in &mut w {
                *x /= b;
            }
            q = w;
        }
        let m = basis.len();
        let (_, s) = tridiagonal_eigen(&alpha, &beta[..m - 1])?;

        // Ritz pairs from the top of 2I - L downwards.
        let mut first_unconverged = None;
        for j in (0..m).rev() {
            let estimate = (beta_last * s.get(m - 1, j)).abs();
            if estimate > tol {
                worst_residual = estimate;
                first_unconverged = Some(j);
                break;
            }
            let mut y = vec![0.0; n];
            for (l, b) in basis.iter().enumerate() {
                axpy(s.get(l, j), b, &mut y);
            }
            orthogonalize(&mut y, &[&locked_vecs]);
            let ny = norm(&y);
            if ny < 0.5 {
                first_unconverged = Some(j);
                break;
            }
            for x in &mut y {
                *x /= ny;
            }
            op.apply_into(&y, &mut buf);
            matvecs += 1;
            let lambda = dot(&y, &buf);
            let residual = buf
                .iter()
                .zip(&y)
                .map(|(ly, yi)| (ly - lambda * yi).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual > tol {
                worst_residual = residual;
                first_unconverged = Some(j);
                break;
            }
            if verifying {
                let mut sorted = locked_vals.clone();
                sorted.sort_by(f64::total_cmp);
                if lambda >= sorted[k - 1] {
                    break 'outer;
                }
            }
            locked_vals.push(lambda);
            locked_vecs.push(y);
            if locked_vecs.len() == n {
                break 'outer;
            }
            if locked_vecs.len() >= k {
                // A single Krylov space holds one vector per distinct
                // eigenvalue, so every further check starts from fresh noise.
                verifying = true;
                break;
            }
        }

        if locked_vecs.len() == locked_before {
            krylov_dim = (2 * krylov_dim).min(n);
        }
        start = match first_unconverged {
            Some(j) => {
                // Explicit restart from the leading unconverged Ritz vectors.
                let wanted = k.saturating_sub(locked_vecs.len()).max(1);
                let lo = (j + 1).saturating_sub(wanted);
                let mut y = vec![0.0; n];
                for t in lo..=j {
                    for (l, b) in basis.iter().enumerate() {
                        axpy(s.get(l, t), b, &mut y);
                    }
                }
                y
            }
            None => random_vector(&mut rng, n),
        };
    }

    let mut order: Vec<usize> = (0..locked_vals.len()).collect();
    order.sort_by(|&a, &b| locked_vals[a].total_cmp(&locked_vals[b]));
    order.truncate(k);
    if order.len() < k {
        return Err(Error::NonConvergence {
            converged: order.len(),
            wanted: k,
            iterations: matvecs,
            worst_residual,
        });
    }
    Ok(LanczosOutcome {
        values: order.iter().map(|&i| locked_vals[i]).collect(),
        vectors: order
            .into_iter()
            .map(|i| std::mem::take(&mut locked_vecs[i]))
            .collect(),
    })
}
