//! Certificate soundness and serialization round-trips for verdicts
//! produced across the whole dispatch surface.

use kernelstab_core::oracle::Template;
use kernelstab_core::{classify, CurveData, Error, HypothesisSet, PairNumerics, Verdict};

fn scenarios() -> impl Iterator<Item = (PairNumerics, CurveData, HypothesisSet)> {
    let templates = [
        Template::Complete,
        Template::Star,
        Template::Series,
        Template::Grassmannian,
    ];
    let mut all = Vec::new();
    for template in templates {
        let (s1, s2) = match template {
            Template::Star => (Some(0), Some(0)),
            _ => (None, None),
        };
        for g1 in 2..=3i64 {
            for g2 in 2..=3i64 {
                let c = CurveData::new(g1, g2).unwrap();
                for d1 in 0..=8i64 {
                    for d2 in 0..=8i64 {
                        for k in 2..=6i64 {
                            let p = PairNumerics::new(1, d1, d2, k, s1, s2).unwrap();
                            let facts: HypothesisSet = template.facts().into_iter().collect();
                            all.push((p, c, facts));
                        }
                    }
                }
            }
        }
    }
    all.into_iter()
}

#[test]
fn every_recorded_inequality_re_evaluates_to_true() {
    let mut verdicts = 0usize;
    let mut checks = 0usize;
    for (p, c, facts) in scenarios() {
        match classify(&p, &c, &facts) {
            Ok(verdict) => {
                verdicts += 1;
                for entry in &verdict.certificate {
                    for check in &entry.checks {
                        checks += 1;
                        assert!(
                            check.holds(),
                            "failed check {check} in rule {} for {p:?} on {c:?}",
                            entry.rule
                        );
                    }
                }
            }
            Err(Error::Contradiction(_)) => {}
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
    assert!(verdicts > 1000);
    assert!(checks > 1000);
}

#[test]
fn verdict_round_trips_through_machine_format() {
    for (p, c, facts) in scenarios().step_by(17) {
        if let Ok(verdict) = classify(&p, &c, &facts) {
            let text = serde_json::to_string_pretty(&verdict).unwrap();
            let back: Verdict = serde_json::from_str(&text).unwrap();
            assert_eq!(back, verdict);
        }
    }
}
