//! Exact-rational decision engine for slope stability of kernel bundles on
//! a two-component nodal curve.
//!
//! Given the numerical invariants of a generated pair `(E, V)` on a curve
//! with two smooth components of genus at least 2 meeting at one node, plus
//! the facts a scenario asserts about it, the engine computes polarized
//! slopes, feasibility windows for polarizations, strong-instability
//! certificates, and a w-(semi)stability verdict for the kernel bundle of
//! the pair. All arithmetic is exact; verdicts carry certificate chains
//! whose inequalities can be re-evaluated, and brute-force grid and sweep
//! oracles cross-validate the closed-form machinery.

pub mod curve;
pub mod error;
pub mod oracle;
pub mod pair;
pub mod rationals;
pub mod stability;

pub use curve::{
    chi_component, chi_total, polarized_slope, teixidor_window, Component, CurveData,
    DepthOneNumerics, Polarization,
};
pub use error::{Error, Result, MAX_MAGNITUDE};
pub use pair::{
    brill_noether_rho, claim_check, gkd_nonempty_general, h0_semistable_bound, h0_total,
    h0_twist_down, kernel_numerics, ClaimCase, ClaimCertificate, KernelNumerics, PairNumerics,
};
pub use rationals::{ParseRatError, Rat, RatInterval};
pub use stability::{
    classify, destabilizer_region, generic_star_feasible, infer_facts, instability_bound,
    polarization_window, strong_instability, CertEntry, Check, Contradiction, DestabilizerNumerics,
    Fact, HypothesisSet, Inference, Rel, RuleId, UnknownFact, Verdict, VerdictKind,
};
