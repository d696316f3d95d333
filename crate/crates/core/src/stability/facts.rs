//! Named boolean facts about a scenario and the sets they live in.
//!
//! Facts split into two groups: the assertable hypotheses a scenario may
//! state (semistability of restrictions, genericity assumptions, and so on)
//! and derived facts that only inference can establish (positivity or
//! vanishing of the section counts `s_i`, the kernel restriction
//! identification). Inference is monotone: facts are only ever added.

use crate::curve::Component;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fact {
    // Assertable hypotheses.
    E1Semistable,
    E2Semistable,
    E1Stable,
    E2Stable,
    EGloballyGenerated,
    E1Nontrivial,
    E2Nontrivial,
    StarCondition,
    M1Semistable,
    M2Semistable,
    M1Stable,
    M2Stable,
    CurveGeneral,
    PairGeneralInGrassmannian,
    PairGeneralInGkd1,
    PairGeneralInGkd2,
    Component1PetriGeneral,
    Component2PetriGeneral,
    PairIsComplete,
    // Derived facts.
    S1Positive,
    S2Positive,
    S1Zero,
    S2Zero,
    H0Twist1Positive,
    H0Twist2Positive,
    KernelRestrictionIso,
}

impl Fact {
    pub const ALL: [Fact; 26] = [
        Fact::E1Semistable,
        Fact::E2Semistable,
        Fact::E1Stable,
        Fact::E2Stable,
        Fact::EGloballyGenerated,
        Fact::E1Nontrivial,
        Fact::E2Nontrivial,
        Fact::StarCondition,
        Fact::M1Semistable,
        Fact::M2Semistable,
        Fact::M1Stable,
        Fact::M2Stable,
        Fact::CurveGeneral,
        Fact::PairGeneralInGrassmannian,
        Fact::PairGeneralInGkd1,
        Fact::PairGeneralInGkd2,
        Fact::Component1PetriGeneral,
        Fact::Component2PetriGeneral,
        Fact::PairIsComplete,
        Fact::S1Positive,
        Fact::S2Positive,
        Fact::S1Zero,
        Fact::S2Zero,
        Fact::H0Twist1Positive,
        Fact::H0Twist2Positive,
        Fact::KernelRestrictionIso,
    ];

    /// Whether a scenario may assert this fact directly; derived facts can
    /// only be established by inference or by the `s_i` values in the pair
    /// numerics.
    pub fn is_assertable(self) -> bool {
        !matches!(
            self,
            Fact::S1Positive
                | Fact::S2Positive
                | Fact::S1Zero
                | Fact::S2Zero
                | Fact::H0Twist1Positive
                | Fact::H0Twist2Positive
                | Fact::KernelRestrictionIso
        )
    }

    pub fn assertable() -> impl Iterator<Item = Fact> {
        Fact::ALL.into_iter().filter(|f| f.is_assertable())
    }

    pub fn name(self) -> &'static str {
        match self {
            Fact::E1Semistable => "E1_semistable",
            Fact::E2Semistable => "E2_semistable",
            Fact::E1Stable => "E1_stable",
            Fact::E2Stable => "E2_stable",
            Fact::EGloballyGenerated => "E_globally_generated",
            Fact::E1Nontrivial => "E1_nontrivial",
            Fact::E2Nontrivial => "E2_nontrivial",
            Fact::StarCondition => "star_condition",
            Fact::M1Semistable => "M1_semistable",
            Fact::M2Semistable => "M2_semistable",
            Fact::M1Stable => "M1_stable",
            Fact::M2Stable => "M2_stable",
            Fact::CurveGeneral => "curve_general",
            Fact::PairGeneralInGrassmannian => "pair_general_in_grassmannian",
            Fact::PairGeneralInGkd1 => "pair_general_in_Gkd_1",
            Fact::PairGeneralInGkd2 => "pair_general_in_Gkd_2",
            Fact::Component1PetriGeneral => "component_1_petri_general",
            Fact::Component2PetriGeneral => "component_2_petri_general",
            Fact::PairIsComplete => "pair_is_complete",
            Fact::S1Positive => "s1_positive",
            Fact::S2Positive => "s2_positive",
            Fact::S1Zero => "s1_zero",
            Fact::S2Zero => "s2_zero",
            Fact::H0Twist1Positive => "h0_E1_minus_p_positive",
            Fact::H0Twist2Positive => "h0_E2_minus_p_positive",
            Fact::KernelRestrictionIso => "kernel_restriction_iso",
        }
    }

    pub fn semistable(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::E1Semistable,
            Component::C2 => Fact::E2Semistable,
        }
    }

    pub fn stable(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::E1Stable,
            Component::C2 => Fact::E2Stable,
        }
    }

    pub fn nontrivial(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::E1Nontrivial,
            Component::C2 => Fact::E2Nontrivial,
        }
    }

    pub fn kernel_semistable(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::M1Semistable,
            Component::C2 => Fact::M2Semistable,
        }
    }

    pub fn kernel_stable(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::M1Stable,
            Component::C2 => Fact::M2Stable,
        }
    }

    pub fn s_positive(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::S1Positive,
            Component::C2 => Fact::S2Positive,
        }
    }

    pub fn s_zero(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::S1Zero,
            Component::C2 => Fact::S2Zero,
        }
    }

    pub fn h0_twist_positive(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::H0Twist1Positive,
            Component::C2 => Fact::H0Twist2Positive,
        }
    }

    pub fn gkd_general(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::PairGeneralInGkd1,
            Component::C2 => Fact::PairGeneralInGkd2,
        }
    }

    pub fn petri_general(c: Component) -> Fact {
        match c {
            Component::C1 => Fact::Component1PetriGeneral,
            Component::C2 => Fact::Component2PetriGeneral,
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error for a fact name that matches nothing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown fact name `{0}`")]
pub struct UnknownFact(pub String);

impl FromStr for Fact {
    type Err = UnknownFact;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fact::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFact(s.to_string()))
    }
}

/// A set of established facts. Assertions and inference both only add.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisSet {
    facts: BTreeSet<Fact>,
}

impl HypothesisSet {
    pub fn new() -> Self {
        HypothesisSet::default()
    }

    pub fn insert(&mut self, fact: Fact) -> bool {
        self.facts.insert(fact)
    }

    pub fn contains(&self, fact: Fact) -> bool {
        self.facts.contains(&fact)
    }

    pub fn contains_all(&self, facts: &[Fact]) -> bool {
        facts.iter().all(|f| self.contains(*f))
    }

    pub fn missing_from(&self, facts: &[Fact]) -> Vec<Fact> {
        facts
            .iter()
            .copied()
            .filter(|f| !self.contains(*f))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Fact> + '_ {
        self.facts.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn is_superset(&self, other: &HypothesisSet) -> bool {
        self.facts.is_superset(&other.facts)
    }
}

impl FromIterator<Fact> for HypothesisSet {
    fn from_iter<I: IntoIterator<Item = Fact>>(iter: I) -> Self {
        HypothesisSet {
            facts: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for fact in Fact::ALL {
            assert_eq!(fact.name().parse::<Fact>().unwrap(), fact);
        }
        assert!("E1_semistble".parse::<Fact>().is_err());
    }

    #[test]
    fn assertable_split() {
        assert_eq!(Fact::assertable().count(), 19);
        assert!(Fact::StarCondition.is_assertable());
        assert!(!Fact::S1Positive.is_assertable());
        assert!(!Fact::KernelRestrictionIso.is_assertable());
    }
}
