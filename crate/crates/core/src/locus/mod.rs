//! Terracini loci: membership, the three-point classification, secant
//! dimension estimates and extremal-defect constructions.

mod builders;
mod classify;
mod search;
mod secant;

use serde::Serialize;

use crate::error::Result;
use crate::segre::{double_report, is_minimal};
use crate::space::PointConfiguration;

pub use builders::{build_a40, build_a40_variant, build_ex1, build_g0, build_kk1, Coincide};
pub use classify::{classify3, predicted_in_t3, Ex40Subcase, PatternTag};
pub use search::{
    enumerate_spaces, max_defect_search, minimal_three_point_orbits, verify_classification,
    ClassCount, ClassificationReport, DefectRecord, Disagreement, SearchReport,
};
pub use secant::{expected_secant_dim, secant_dim_estimate, secant_dim_estimate_with_box, SecantEstimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub h0: usize,
    pub delta: usize,
    pub minimal: bool,
    #[serde(rename = "in_T1")]
    pub in_t1: bool,
    #[serde(rename = "in_T")]
    pub in_t: bool,
}

/// Membership of `S` in `T_1(Y, r)` and `T(Y, r)`.
pub fn membership(config: &PointConfiguration) -> Result<MembershipReport> {
    let (h0, delta) = double_report(config)?;
    let minimal = is_minimal(config);
    let in_t1 = h0 > 0 && delta > 0;
    Ok(MembershipReport {
        h0,
        delta,
        minimal,
        in_t1,
        in_t: in_t1 && minimal,
    })
}
