//! Forward-chaining closure of a hypothesis set.
//!
//! Rules only add facts, so the closure is a fixed point and inference is
//! idempotent and extensive. Contradictions between asserted facts and the
//! pair numerics are detected at the fixed point and reported with the
//! provenance of both sides.

use super::classify::theorem35_numerics;
use super::facts::{Fact, HypothesisSet};
use super::{CertEntry, Check, Contradiction, RuleId};
use crate::curve::{Component, CurveData};
use crate::pair::{h0_semistable_bound, PairNumerics};
use crate::rationals::Rat;
use std::collections::BTreeMap;

/// Result of closing a hypothesis set: the enlarged set, the provenance of
/// every established fact, and the certificate trace of the rules that
/// fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    original: HypothesisSet,
    facts: HypothesisSet,
    provenance: BTreeMap<Fact, String>,
    steps: Vec<CertEntry>,
}

impl Inference {
    pub fn facts(&self) -> &HypothesisSet {
        &self.facts
    }

    pub fn has(&self, fact: Fact) -> bool {
        self.facts.contains(fact)
    }

    /// Facts established by inference beyond the asserted ones, in
    /// deterministic order.
    pub fn inferred(&self) -> Vec<Fact> {
        self.facts
            .iter()
            .filter(|f| !self.original.contains(*f))
            .collect()
    }

    pub fn steps(&self) -> &[CertEntry] {
        &self.steps
    }

    pub fn provenance(&self, fact: Fact) -> Option<&str> {
        self.provenance.get(&fact).map(String::as_str)
    }

    pub fn into_hypotheses(self) -> HypothesisSet {
        self.facts
    }

    fn provenance_text(&self, fact: Fact) -> String {
        self.provenance
            .get(&fact)
            .cloned()
            .unwrap_or_else(|| fact.to_string())
    }
}

struct Engine<'a> {
    pair: &'a PairNumerics,
    curve: &'a CurveData,
    inference: Inference,
}

impl Engine<'_> {
    fn has(&self, fact: Fact) -> bool {
        self.inference.facts.contains(fact)
    }

    fn add(
        &mut self,
        fact: Fact,
        rule: RuleId,
        citation: &str,
        statement: String,
        checks: Vec<Check>,
    ) -> bool {
        if self.inference.facts.insert(fact) {
            self.inference
                .provenance
                .insert(fact, format!("{rule}: {statement}"));
            self.inference
                .steps
                .push(CertEntry::new(rule, citation, statement, checks));
            true
        } else {
            false
        }
    }

    fn seed(&mut self) {
        for fact in self.inference.original.iter() {
            self.inference
                .provenance
                .insert(fact, "asserted in the scenario hypotheses".to_string());
        }
        for c in Component::BOTH {
            if let Some(s) = self.pair.sections_vanishing(c) {
                let (fact, relation) = if s == 0 {
                    (Fact::s_zero(c), "= 0")
                } else {
                    (Fact::s_positive(c), ">= 1")
                };
                if self.inference.facts.insert(fact) {
                    self.inference.provenance.insert(
                        fact,
                        format!("pair numerics: s{} = {s} {relation}", c.index()),
                    );
                }
            }
        }
        self.add(
            Fact::EGloballyGenerated,
            RuleId::GeneratedPair,
            "generated pair (definition)",
            "V generates E, so E is globally generated".to_string(),
            vec![],
        );
    }

    /// One pass over the monotone rules; returns whether anything was added.
    fn pass(&mut self) -> Result<bool, Contradiction> {
        let mut changed = false;
        let k = self.pair.k();
        let r = self.pair.rank();

        if r == 1 {
            for c in Component::BOTH {
                changed |= self.add(
                    Fact::stable(c),
                    RuleId::LineBundleRankOne,
                    "rank-1 bundles are stable",
                    format!("r = 1, so the restriction E{} is a line bundle", c.index()),
                    vec![],
                );
            }
        }

        for (stable, semistable) in [
            (Fact::E1Stable, Fact::E1Semistable),
            (Fact::E2Stable, Fact::E2Semistable),
            (Fact::M1Stable, Fact::M1Semistable),
            (Fact::M2Stable, Fact::M2Semistable),
        ] {
            if self.has(stable) {
                changed |= self.add(
                    semistable,
                    RuleId::StableImpliesSemistable,
                    "stability (definition)",
                    format!("{stable} implies {semistable}"),
                    vec![],
                );
            }
        }

        for c in Component::BOTH {
            if self.has(Fact::semistable(c))
                && self.has(Fact::nontrivial(c))
                && self.has(Fact::EGloballyGenerated)
            {
                changed |= self.add(
                    Fact::h0_twist_positive(c),
                    RuleId::NodeSectionsExist,
                    "Remark 2.3(1)",
                    format!(
                        "E{i} is semistable, nontrivial and globally generated, so h0(E{i}(-p)) >= 1",
                        i = c.index()
                    ),
                    vec![],
                );
            }
        }

        if self.has(Fact::PairIsComplete) {
            for c in Component::BOTH {
                if self.has(Fact::h0_twist_positive(c)) {
                    changed |= self.add(
                        Fact::s_positive(c),
                        RuleId::CompletePairSections,
                        "Lemma 2.1(3), Remark 2.3(1)",
                        format!(
                            "complete pair: V = H0(E) contains H0(E{i}(-p)), so s{i} >= 1",
                            i = c.index()
                        ),
                        vec![],
                    );
                }
            }
        }

        for c in Component::BOTH {
            if self.has(Fact::semistable(c)) {
                let bound = h0_semistable_bound(self.curve.genus(c), r, self.pair.degree(c));
                if k > bound {
                    let j = c.other();
                    changed |= self.add(
                        Fact::s_positive(j),
                        RuleId::RestrictionNotInjective,
                        "Remark 2.3(2)",
                        format!(
                            "dim V = {k} > {bound} >= h0(E{i}), so V meets H0(E{j}(-p)) and s{j} >= 1",
                            i = c.index(),
                            j = j.index()
                        ),
                        vec![Check::lt(Rat::from(bound), Rat::from(k))],
                    );
                }
            }
        }

        for c in Component::BOTH {
            if self.has(Fact::gkd_general(c)) {
                if r != 1 {
                    return Err(Contradiction {
                        rule: RuleId::LinearSeriesDimension,
                        detail: format!(
                            "fact {} concerns linear series of line bundles, but r = {r}",
                            Fact::gkd_general(c)
                        ),
                        sources: vec![
                            self.inference.provenance_text(Fact::gkd_general(c)),
                            format!("pair numerics: r = {r}"),
                        ],
                    });
                }
                let j = c.other();
                changed |= self.add(
                    Fact::s_zero(j),
                    RuleId::LinearSeriesDimension,
                    "Theorem 3.4 proof",
                    format!(
                        "(E{i}, V{i}) lies in a series variety of dimension k - 1, so dim V{i} = k = {k} and s{j} = 0",
                        i = c.index(),
                        j = j.index()
                    ),
                    vec![],
                );
            }
        }

        if self.has(Fact::E1Semistable)
            && self.has(Fact::E2Semistable)
            && self.has(Fact::PairGeneralInGrassmannian)
        {
            if let Some(checks) = theorem35_numerics(self.pair, self.curve) {
                for c in Component::BOTH {
                    changed |= self.add(
                        Fact::s_zero(c),
                        RuleId::GeneralSubspaceAvoidsSections,
                        "Theorem 3.5 proof",
                        format!(
                            "k + h0(E{i}(-p)) = h0(E): a general V of dimension {k} avoids H0(E{i}(-p)), so s{i} = 0",
                            i = c.index()
                        ),
                        checks.clone(),
                    );
                }
            }
        }

        if self.has(Fact::S1Zero) && self.has(Fact::S2Zero) {
            changed |= self.add(
                Fact::StarCondition,
                RuleId::StarDefinition,
                "condition (*) (definition)",
                "s1 = s2 = 0: V meets neither space of sections vanishing on a component"
                    .to_string(),
                vec![],
            );
        }
        if self.has(Fact::StarCondition) {
            for c in Component::BOTH {
                changed |= self.add(
                    Fact::s_zero(c),
                    RuleId::StarDefinition,
                    "condition (*) (definition)",
                    format!("condition (*) asserts s{} = 0", c.index()),
                    vec![],
                );
            }
            changed |= self.add(
                Fact::KernelRestrictionIso,
                RuleId::KernelRestrictionIso,
                "Lemma 3.1(1)",
                "under condition (*) the restrictions of the kernel bundle are the component kernel bundles"
                    .to_string(),
                vec![],
            );
        }

        Ok(changed)
    }

    /// Consistency checks between the closed fact set and the numerics.
    fn check_consistency(&self) -> Result<(), Contradiction> {
        let r = self.pair.rank();
        let k = self.pair.k();

        for c in Component::BOTH {
            let zero = Fact::s_zero(c);
            let positive = Fact::s_positive(c);
            if self.has(zero) && self.has(positive) {
                return Err(Contradiction {
                    rule: RuleId::StarDefinition,
                    detail: format!("s{i} = 0 and s{i} >= 1 are both required", i = c.index()),
                    sources: vec![
                        self.inference.provenance_text(zero),
                        self.inference.provenance_text(positive),
                    ],
                });
            }
        }

        for c in Component::BOTH {
            let d = self.pair.degree(c);
            if self.has(Fact::s_positive(c)) && self.has(Fact::semistable(c)) && d < r {
                return Err(Contradiction {
                    rule: RuleId::SemistableDegreeBound,
                    detail: format!(
                        "E{i} semistable with s{i} >= 1 forces d{i} >= r = {r}, but d{i} = {d}",
                        i = c.index()
                    ),
                    sources: vec![
                        self.inference.provenance_text(Fact::s_positive(c)),
                        self.inference.provenance_text(Fact::semistable(c)),
                        format!("pair numerics: d{} = {d}", c.index()),
                    ],
                });
            }
        }

        if self.has(Fact::E1Semistable) && self.has(Fact::E2Semistable) {
            let bound_1 = h0_semistable_bound(self.curve.g1(), r, self.pair.degree(Component::C1));
            let bound_2 = h0_semistable_bound(self.curve.g2(), r, self.pair.degree(Component::C2));
            let total = bound_1 + bound_2 - r;
            if k > total {
                return Err(Contradiction {
                    rule: RuleId::SectionCountConsistency,
                    detail: format!(
                        "dim V = {k} exceeds h0(E) = h0(E1) + h0(E2) - r <= {total} for semistable restrictions"
                    ),
                    sources: vec![
                        self.inference.provenance_text(Fact::E1Semistable),
                        self.inference.provenance_text(Fact::E2Semistable),
                        format!("pair numerics: k = {k}"),
                    ],
                });
            }
        }

        Ok(())
    }
}

/// Closes the asserted facts under the inference rules and checks the
/// result against the pair numerics.
pub fn infer_facts(
    hypotheses: &HypothesisSet,
    pair: &PairNumerics,
    curve: &CurveData,
) -> Result<Inference, Contradiction> {
    let mut engine = Engine {
        pair,
        curve,
        inference: Inference {
            original: hypotheses.clone(),
            facts: hypotheses.clone(),
            provenance: BTreeMap::new(),
            steps: Vec::new(),
        },
    };
    engine.seed();
    while engine.pass()? {}
    engine.check_consistency()?;
    Ok(engine.inference)
}
