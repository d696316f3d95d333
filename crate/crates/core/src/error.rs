//! Crate-wide error type.
//!
//! Invariant violations are rejected at construction time so that the
//! arithmetic layers can stay total. The [`Error::Contradiction`] variant is
//! different in kind: it reports that a scenario's asserted facts and its
//! numerical invariants cannot both hold.

use crate::stability::Contradiction;

/// Magnitude cap on every integer invariant accepted at a constructor.
///
/// Keeping inputs within this bound guarantees that all derived slope and
/// window arithmetic stays far inside the exact `i128` range.
pub const MAX_MAGNITUDE: i64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("genus g{component} must be at least 2 (got {value})")]
    GenusTooSmall { component: u8, value: i64 },

    #[error("relative rank r{component} must be nonnegative (got {value})")]
    NegativeRank { component: u8, value: i64 },

    #[error("multirank (0, 0) is rejected: slopes of torsion sheaves are not formed")]
    TorsionSheaf,

    #[error("glue rank {glue_rank} must lie in [0, min(r1, r2)] = [0, {max}]")]
    GlueRankOutOfRange { glue_rank: i64, max: i64 },

    #[error("operation requires vector-bundle numerics (r1 = r2 = glue rank >= 1)")]
    NotVectorBundle,

    #[error("rank r must be at least 1 (got {value})")]
    RankTooSmall { value: i64 },

    #[error("dim V = k must be at least r + 1 = {min} (got {value})")]
    SectionSpaceTooSmall { value: i64, min: i64 },

    #[error(
        "restriction degree d{component} must be nonnegative for a generated pair (got {value})"
    )]
    NegativeDegree { component: u8, value: i64 },

    #[error("section count s{component} must be nonnegative (got {value})")]
    NegativeSectionCount { component: u8, value: i64 },

    #[error("{field} = {value} exceeds the supported magnitude {max}")]
    MagnitudeTooLarge {
        field: &'static str,
        value: i64,
        max: i64,
    },

    #[error("polarization weight w1 = {value} must satisfy 0 < w1 < 1")]
    WeightOutOfRange { value: String },

    #[error("h0(E1) + h0(E2) - r = {h0_1} + {h0_2} - {r} is negative")]
    NegativeTotalSections { h0_1: i64, h0_2: i64, r: i64 },

    #[error("h0(E_i) - r = {h0} - {r} is negative; the restriction cannot be globally generated")]
    NegativeTwistSections { h0: i64, r: i64 },

    #[error("Clifford bound in claim case {case} needs d{component} >= 1 (got 0)")]
    CliffordDegreeZero { case: u8, component: u8 },

    #[error("grid denominator must be at least 1 (got {value})")]
    InvalidGrid { value: i64 },

    #[error("sweep range for {field} has lower bound {lo} below the minimum {min}")]
    RangeBelowMinimum {
        field: &'static str,
        lo: i64,
        min: i64,
    },

    #[error("destabilizer scan needs both section counts s1, s2 in the pair numerics")]
    SectionCountsUnknown,

    #[error(transparent)]
    Contradiction(#[from] Contradiction),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_magnitude(field: &'static str, value: i64) -> Result<()> {
    if value.unsigned_abs() > MAX_MAGNITUDE as u64 {
        return Err(Error::MagnitudeTooLarge {
            field,
            value,
            max: MAX_MAGNITUDE,
        });
    }
    Ok(())
}
