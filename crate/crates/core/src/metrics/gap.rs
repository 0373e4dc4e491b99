use serde::Serialize;

use super::conductance::StrengthReport;
use crate::error::{Error, Result};
use crate::spectral::{Spectrum, KERNEL_TOLERANCE};

/// Slack on `λ_k <= 2 α_out`.
pub const CHEEGER_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub k: usize,
    pub lambda_k: f64,
    pub lambda_k1: f64,
    /// `λ_{k+1} / (k² √λ_k)`; infinite when `λ_k` is numerically zero and
    /// `λ_{k+1}` is not.
    pub ratio: f64,
    /// `λ_k <= 2 α_out`, when a strength report was supplied.
    pub cheeger_bound_ok: Option<bool>,
}

pub fn gap_report(
    spec: &Spectrum,
    k: usize,
    strength: Option<&StrengthReport>,
) -> Result<GapReport> {
    if k == 0 || spec.len() < k + 1 {
        return Err(Error::InsufficientSpectrum {
            have: spec.len(),
            need: k + 1,
        });
    }
    let lambda_k = spec.value(k - 1);
    let lambda_k1 = spec.value(k);
    let ratio = if lambda_k < KERNEL_TOLERANCE {
        if lambda_k1 < KERNEL_TOLERANCE {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lambda_k1.max(0.0) / ((k * k) as f64 * lambda_k.sqrt())
    };
    let cheeger_bound_ok = strength.map(|s| lambda_k <= 2.0 * s.alpha_out + CHEEGER_SLACK);
    Ok(GapReport {
        k,
        lambda_k,
        lambda_k1,
        ratio,
        cheeger_bound_ok,
    })
}
