use serde::{Serialize, Serializer};
use spectral_kcluster::metrics::{
    ConcentrationReport, GapReport, PartitionDistance, StrengthReport,
};

pub const REPORT_VERSION: u32 = 1;

/// Non-finite values become the strings "inf", "-inf" or "nan".
fn finite_or_tag<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

#[derive(Debug, Serialize)]
pub struct PhiIn {
    pub lower: f64,
    pub upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ClusterEntry {
    pub id: usize,
    pub size: usize,
    pub phi_out: f64,
    pub phi_in: Option<PhiIn>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Serialize)]
pub struct GapEntry {
    pub k: usize,
    pub lambda_k: f64,
    pub lambda_k1: f64,
    #[serde(serialize_with = "finite_or_tag")]
    pub ratio: f64,
    pub cheeger_bound_ok: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct ConcentrationBounds {
    pub alpha_in: f64,
    pub lambda_k: f64,
    pub d_max: usize,
    pub bound_dmax_cubed: f64,
    pub bound_dmax: f64,
    pub within_dmax_cubed: bool,
    pub within_dmax: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub n: usize,
    pub clusters: usize,
    pub k: usize,
    pub per_cluster: Vec<ClusterEntry>,
    pub alpha_out: f64,
    pub alpha_in: Interval,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_to_reference: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_sigma: Option<Vec<usize>>,
    pub lambda: Vec<f64>,
    pub gap: Option<GapEntry>,
    /// `r_i` for `i = 1..=k`; absent when no positive `α_in` is certified.
    pub concentration: Option<Vec<f64>>,
    pub concentration_bounds: Option<ConcentrationBounds>,
}

impl Report {
    pub fn new(
        n: usize,
        k: usize,
        strength: &StrengthReport,
        lambda: Vec<f64>,
        gap: Option<GapReport>,
        concentration: Option<ConcentrationReport>,
        distance: Option<PartitionDistance>,
    ) -> Self {
        let per_cluster = strength
            .clusters
            .iter()
            .map(|c| ClusterEntry {
                id: c.id,
                size: c.size,
                phi_out: c.phi_out,
                phi_in: c.phi_in.map(|b| PhiIn {
                    lower: b.phi_in_lower,
                    upper: b.phi_in_upper,
                    exact: b.phi_in_exact,
                }),
                diagnostic: c.diagnostic.clone(),
            })
            .collect();
        let (distance_to_reference, optimal_sigma) = match distance {
            Some(d) => (Some(d.distance), Some(d.sigma)),
            None => (None, None),
        };
        Report {
            report_version: REPORT_VERSION,
            n,
            clusters: strength.clusters.len(),
            k,
            per_cluster,
            alpha_out: strength.alpha_out,
            alpha_in: Interval {
                lower: strength.alpha_in_lower,
                upper: strength.alpha_in_upper,
            },
            distance_to_reference,
            optimal_sigma,
            lambda,
            gap: gap.map(|g| GapEntry {
                k: g.k,
                lambda_k: g.lambda_k,
                lambda_k1: g.lambda_k1,
                ratio: g.ratio,
                cheeger_bound_ok: g.cheeger_bound_ok,
            }),
            concentration: concentration.as_ref().map(|c| c.residuals.clone()),
            concentration_bounds: concentration.map(|c| ConcentrationBounds {
                alpha_in: c.alpha_in,
                lambda_k: c.lambda_k,
                d_max: c.d_max,
                bound_dmax_cubed: c.bound_cubic,
                bound_dmax: c.bound_linear,
                within_dmax_cubed: c.within_cubic,
                within_dmax: c.within_linear,
            }),
        }
    }
}
