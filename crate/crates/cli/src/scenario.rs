//! Scenario files: a flat TOML document with three sections.
//!
//! ```toml
//! [curve]
//! g1 = 2
//! g2 = 2
//!
//! [pair]
//! r = 1
//! d1 = 4
//! d2 = 4
//! k = 5
//! # s1 = 1      # optional: dim(V /\ H0(E1(-p)))
//! # s2 = 1
//!
//! [hypotheses]
//! facts = ["pair_is_complete", "E1_nontrivial", "E2_nontrivial"]
//!
//! [options]     # optional defaults for flags
//! grid = 1000
//! format = "text"
//! ```
//!
//! Every type invariant is validated on load; unknown fact names are
//! rejected with the list of valid names and a nearest-match suggestion.

use crate::CliError;
use kernelstab_core::{CurveData, Fact, HypothesisSet, PairNumerics};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    curve: CurveSection,
    pair: PairSection,
    hypotheses: Option<HypothesesSection>,
    options: Option<OptionsSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveSection {
    g1: i64,
    g2: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairSection {
    r: i64,
    d1: i64,
    d2: i64,
    k: i64,
    s1: Option<i64>,
    s2: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypothesesSection {
    facts: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsSection {
    grid: Option<i64>,
    format: Option<String>,
}

/// A validated scenario: curve and pair numerics plus asserted facts and
/// file-level option defaults.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub curve: CurveData,
    pub pair: PairNumerics,
    pub hypotheses: HypothesisSet,
    pub grid: Option<i64>,
    pub format: Option<String>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let file: ScenarioFile =
        toml::from_str(text).map_err(|e| CliError::Schema(format!("scenario file: {e}")))?;

    let curve = CurveData::new(file.curve.g1, file.curve.g2).map_err(CliError::invariant)?;
    let pair = PairNumerics::new(
        file.pair.r,
        file.pair.d1,
        file.pair.d2,
        file.pair.k,
        file.pair.s1,
        file.pair.s2,
    )
    .map_err(CliError::invariant)?;

    let mut hypotheses = HypothesisSet::new();
    if let Some(section) = file.hypotheses {
        for name in &section.facts {
            let fact: Fact = name.parse().map_err(|_| unknown_fact_error(name))?;
            if !fact.is_assertable() {
                return Err(CliError::Schema(format!(
                    "fact `{name}` is derived by inference and cannot be asserted; valid facts:\n  {}",
                    assertable_names().join("\n  ")
                )));
            }
            hypotheses.insert(fact);
        }
    }

    let options = file.options.unwrap_or_default();
    Ok(Scenario {
        curve,
        pair,
        hypotheses,
        grid: options.grid,
        format: options.format,
    })
}

fn assertable_names() -> Vec<&'static str> {
    Fact::assertable().map(|f| f.name()).collect()
}

fn unknown_fact_error(name: &str) -> CliError {
    let mut message = format!("unknown fact `{name}`");
    if let Some(best) = nearest_name(name) {
        message.push_str(&format!("; did you mean `{best}`?"));
    }
    message.push_str(&format!(
        "\nvalid facts:\n  {}",
        assertable_names().join("\n  ")
    ));
    CliError::Schema(message)
}

fn nearest_name(name: &str) -> Option<&'static str> {
    assertable_names()
        .into_iter()
        .map(|candidate| (edit_distance(name, candidate), candidate))
        .min_by_key(|(distance, _)| *distance)
        .filter(|(distance, _)| *distance <= 4)
        .map(|(_, candidate)| candidate)
}

fn edit_distance(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.iter().enumerate() {
        let mut previous_diagonal = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let substitution = previous_diagonal + usize::from(ca != cb);
            previous_diagonal = row[j + 1];
            row[j + 1] = substitution.min(row[j] + 1).min(row[j + 1] + 1);
        }
    }
    row[b.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMPLETE: &str = r#"
        [curve]
        g1 = 2
        g2 = 2

        [pair]
        r = 1
        d1 = 4
        d2 = 4
        k = 5

        [hypotheses]
        facts = ["pair_is_complete", "E1_semistable", "E2_semistable",
                 "E1_nontrivial", "E2_nontrivial"]
    "#;

    #[test]
    fn parses_a_complete_scenario() {
        let scenario = parse_scenario(COMPLETE).unwrap();
        assert_eq!(scenario.pair.k(), 5);
        assert_eq!(scenario.hypotheses.len(), 5);
        assert!(scenario.hypotheses.contains(Fact::PairIsComplete));
    }

    #[test]
    fn rejects_small_genus_with_invariant_message() {
        let text = COMPLETE.replace("g1 = 2", "g1 = 1");
        let err = parse_scenario(&text).unwrap_err();
        match err {
            CliError::Schema(message) => assert!(message.contains("at least 2")),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn suggests_on_typo() {
        let text = COMPLETE.replace("E1_semistable", "E1_semistble");
        let err = parse_scenario(&text).unwrap_err();
        match err {
            CliError::Schema(message) => {
                assert!(message.contains("did you mean `E1_semistable`?"));
                assert!(message.contains("pair_general_in_Gkd_1"));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_derived_fact_assertions() {
        let text = COMPLETE.replace("pair_is_complete", "s1_positive");
        assert!(matches!(
            parse_scenario(&text).unwrap_err(),
            CliError::Schema(_)
        ));
    }

    #[test]
    fn edit_distance_basics() {
        assert_eq!(edit_distance("abc", "abc"), 0);
        assert_eq!(edit_distance("abc", "abd"), 1);
        assert_eq!(edit_distance("", "xy"), 2);
    }
}
