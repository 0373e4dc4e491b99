//! Partition quality measures.

mod assignment;
mod concentration;
mod conductance;
mod distance;
mod gap;

pub use assignment::min_cost_assignment;
pub use concentration::{
    concentration_check, pair_sum, pairsum_check, ConcentrationReport, PairSumReport,
};
pub use conductance::{
    cut_and_volume, external_conductance, internal_conductance, strength_report, ClusterStrength,
    ConductanceBounds, ConductanceMode, StrengthReport, Verdict, DEFAULT_EXACT_LIMIT,
    MAX_EXACT_LIMIT,
};
pub use distance::{partition_distance, PartitionDistance};
pub use gap::{gap_report, GapReport, CHEEGER_SLACK};
