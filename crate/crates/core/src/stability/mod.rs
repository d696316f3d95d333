//! Hypothesis inference, destabilizer catalog, and the stability classifier.
//!
//! The entry point is [`classify`]: it closes the asserted facts under the
//! inference rules, then tries the theorem paths in a fixed order (strong
//! instability first, then the semistability criteria), producing a
//! [`Verdict`] whose certificate chain records every rule that fired with
//! its citation and the instantiated inequalities.

mod classify;
mod facts;
mod infer;

pub use classify::{
    classify, destabilizer_region, generic_star_feasible, instability_bound, polarization_window,
    strong_instability, DestabilizerNumerics,
};
pub use facts::{Fact, HypothesisSet, UnknownFact};
pub use infer::{infer_facts, Inference};

use crate::rationals::{Rat, RatInterval};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of an inference or classification rule. Stable across runs;
/// used in certificates and CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    GeneratedPair,
    LineBundleRankOne,
    StableImpliesSemistable,
    NodeSectionsExist,
    CompletePairSections,
    RestrictionNotInjective,
    SemistableDegreeBound,
    StarDefinition,
    KernelRestrictionIso,
    LinearSeriesDimension,
    GeneralSubspaceAvoidsSections,
    SectionCountConsistency,
    ClaimBound,
    DestabilizerBound,
    StrongInstability,
    CompleteCase,
    RestrictionUnstable,
    PolarizationWindow,
    TeixidorCriterion,
    StarSemistable,
    LinearSeriesKernelSemistable,
    PetriStable,
    ButlerKernelSemistable,
    GrassmannianSemistable,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::GeneratedPair => "generated_pair",
            RuleId::LineBundleRankOne => "line_bundle_rank_one",
            RuleId::StableImpliesSemistable => "stable_implies_semistable",
            RuleId::NodeSectionsExist => "node_sections_exist",
            RuleId::CompletePairSections => "complete_pair_sections",
            RuleId::RestrictionNotInjective => "restriction_not_injective",
            RuleId::SemistableDegreeBound => "semistable_degree_bound",
            RuleId::StarDefinition => "star_definition",
            RuleId::KernelRestrictionIso => "kernel_restriction_iso",
            RuleId::LinearSeriesDimension => "linear_series_dimension",
            RuleId::GeneralSubspaceAvoidsSections => "general_subspace_avoids_sections",
            RuleId::SectionCountConsistency => "section_count_consistency",
            RuleId::ClaimBound => "claim_bound",
            RuleId::DestabilizerBound => "destabilizer_bound",
            RuleId::StrongInstability => "strong_instability",
            RuleId::CompleteCase => "complete_case",
            RuleId::RestrictionUnstable => "restriction_unstable",
            RuleId::PolarizationWindow => "polarization_window",
            RuleId::TeixidorCriterion => "teixidor_criterion",
            RuleId::StarSemistable => "star_semistable",
            RuleId::LinearSeriesKernelSemistable => "linear_series_kernel_semistable",
            RuleId::PetriStable => "petri_stable",
            RuleId::ButlerKernelSemistable => "butler_kernel_semistable",
            RuleId::GrassmannianSemistable => "grassmannian_semistable",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Comparison operator of a certificate check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    Lt,
    Le,
    Eq,
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
        })
    }
}

/// One exact inequality recorded in a certificate; re-evaluating it must
/// always succeed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub lhs: Rat,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Check {
    pub fn lt(lhs: Rat, rhs: Rat) -> Self {
        Check {
            lhs,
            rel: Rel::Lt,
            rhs,
        }
    }

    pub fn le(lhs: Rat, rhs: Rat) -> Self {
        Check {
            lhs,
            rel: Rel::Le,
            rhs,
        }
    }

    pub fn eq(lhs: Rat, rhs: Rat) -> Self {
        Check {
            lhs,
            rel: Rel::Eq,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.rel {
            Rel::Lt => self.lhs < self.rhs,
            Rel::Le => self.lhs <= self.rhs,
            Rel::Eq => self.lhs == self.rhs,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel, self.rhs)
    }
}

/// One step of a certificate chain: which rule fired, what it cites, and
/// the instantiated statement with its machine-checkable inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertEntry {
    pub rule: RuleId,
    pub citation: String,
    pub statement: String,
    pub checks: Vec<Check>,
}

impl CertEntry {
    pub fn new(
        rule: RuleId,
        citation: impl Into<String>,
        statement: impl Into<String>,
        checks: Vec<Check>,
    ) -> Self {
        CertEntry {
            rule,
            citation: citation.into(),
            statement: statement.into(),
            checks,
        }
    }
}

/// Classifier outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VerdictKind {
    StronglyUnstable,
    WSemistable,
    WStable,
    RestrictionUnstable,
    Inconclusive,
}

impl VerdictKind {
    pub fn name(self) -> &'static str {
        match self {
            VerdictKind::StronglyUnstable => "StronglyUnstable",
            VerdictKind::WSemistable => "WSemistable",
            VerdictKind::WStable => "WStable",
            VerdictKind::RestrictionUnstable => "RestrictionUnstable",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full output of the classifier: the verdict kind, the deciding rule (or
/// the nearest rule for an inconclusive outcome), the polarization window
/// when one exists, per-component destabilizer bounds when they apply, the
/// certificate chain, the facts added by inference, and the facts whose
/// assertion would unlock a stronger verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub rule: Option<RuleId>,
    pub window: Option<RatInterval>,
    pub bound_w1: Option<Rat>,
    pub bound_w2: Option<Rat>,
    pub certificate: Vec<CertEntry>,
    pub inferred: Vec<Fact>,
    pub missing: Vec<Fact>,
}

/// A scenario whose asserted facts and numerical invariants cannot both
/// hold. Carries the rule that noticed the clash and the provenance of each
/// side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{detail}")]
pub struct Contradiction {
    pub rule: RuleId,
    pub detail: String,
    pub sources: Vec<String>,
}
