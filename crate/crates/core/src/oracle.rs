//! Brute-force cross-validation of the closed-form machinery.
//!
//! Grid scans evaluate the defining inequalities point by point with exact
//! rationals, independently of the interval solvers they are checked
//! against. Sweeps enumerate parameter tuples exhaustively and either
//! verify an arithmetic claim on each or classify each and emit a CSV row.

use crate::curve::{
    chi_component, chi_total, Component, CurveData, DepthOneNumerics, Polarization,
};
use crate::error::{check_magnitude, Error, Result};
use crate::pair::{claim_check, h0_semistable_bound, PairNumerics};
use crate::rationals::Rat;
use crate::stability::{classify, DestabilizerNumerics, Fact, HypothesisSet};
use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;

/// Evaluation grid of weights `w1 = t/N`, `t = 1 .. N-1`, all strictly
/// inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    denominator: i64,
}

impl GridSpec {
    pub fn new(denominator: i64) -> Result<Self> {
        if denominator < 1 {
            return Err(Error::InvalidGrid { value: denominator });
        }
        check_magnitude("grid denominator", denominator)?;
        Ok(GridSpec { denominator })
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn ts(&self) -> RangeInclusive<i64> {
        1..=(self.denominator - 1)
    }

    pub fn weight(&self, t: i64) -> Rat {
        Rat::new(t as i128, self.denominator as i128)
    }

    pub fn point(&self, t: i64) -> Polarization {
        Polarization::new(self.weight(t)).expect("grid points lie strictly inside (0, 1)")
    }
}

/// Grid points satisfying both semistability inequalities
/// `w_i chi(E) <= chi(E_i) <= w_i chi(E) + r`, evaluated exactly at every
/// point. Must equal the closed-form window intersected with the grid.
pub fn scan_teixidor(e: &DepthOneNumerics, c: &CurveData, grid: &GridSpec) -> Result<Vec<i64>> {
    if !e.is_vector_bundle() {
        return Err(Error::NotVectorBundle);
    }
    let r = Rat::from(e.rank(Component::C1));
    let chi = Rat::from(chi_total(e, c));
    let chi_part = |i: Component| Rat::from(chi_component(e.degree(i), e.rank(i), c.genus(i)));
    let parts = [chi_part(Component::C1), chi_part(Component::C2)];

    let mut feasible = Vec::new();
    for t in grid.ts() {
        let w = grid.point(t);
        let ok = Component::BOTH.into_iter().zip(parts).all(|(i, chi_i)| {
            let scaled = w.weight(i) * chi;
            scaled <= chi_i && chi_i <= scaled + r
        });
        if ok {
            feasible.push(t);
        }
    }
    Ok(feasible)
}

/// Violations at one grid point: the components whose destabilizer has
/// strictly larger polarized slope than the kernel bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointViolations {
    pub t: i64,
    pub violated: Vec<Component>,
}

/// Full per-point report of a destabilizer scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerScan {
    pub denominator: i64,
    pub per_point: Vec<PointViolations>,
}

impl DestabilizerScan {
    /// Grid points where no destabilizer violates semistability.
    pub fn feasible(&self) -> Vec<i64> {
        self.per_point
            .iter()
            .filter(|p| p.violated.is_empty())
            .map(|p| p.t)
            .collect()
    }
}

/// Compares, at every grid point, the polarized slope of each cataloged
/// destabilizer against the slope of the kernel bundle. Slopes are computed
/// from the raw sheaf numerics, not from the closed-form bounds.
pub fn scan_destabilizers(
    p: &PairNumerics,
    c: &CurveData,
    grid: &GridSpec,
) -> Result<DestabilizerScan> {
    let catalog = DestabilizerNumerics::catalog(p)?;
    let sheaves: Vec<(Component, DepthOneNumerics)> =
        catalog.iter().map(|d| (d.component, d.sheaf())).collect();
    let kernel = p.kernel_sheaf();

    let mut per_point = Vec::new();
    for t in grid.ts() {
        let w = grid.point(t);
        let kernel_slope = crate::curve::polarized_slope(&kernel, c, &w);
        let violated = sheaves
            .iter()
            .filter(|(_, sheaf)| crate::curve::polarized_slope(sheaf, c, &w) > kernel_slope)
            .map(|(component, _)| *component)
            .collect();
        per_point.push(PointViolations { t, violated });
    }
    Ok(DestabilizerScan {
        denominator: grid.denominator(),
        per_point,
    })
}

/// Ranges of the exhaustive claim verification: ranks, genera, and degrees
/// `d_i` in `[1, degree_factor * g_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimSweep {
    rank: RangeInclusive<i64>,
    genus_1: RangeInclusive<i64>,
    genus_2: RangeInclusive<i64>,
    degree_factor: i64,
}

impl ClaimSweep {
    pub fn new(
        rank: RangeInclusive<i64>,
        genus_1: RangeInclusive<i64>,
        genus_2: RangeInclusive<i64>,
        degree_factor: i64,
    ) -> Result<Self> {
        if !rank.is_empty() && *rank.start() < 1 {
            return Err(Error::RangeBelowMinimum {
                field: "r",
                lo: *rank.start(),
                min: 1,
            });
        }
        for (field, range) in [("g1", &genus_1), ("g2", &genus_2)] {
            if !range.is_empty() && *range.start() < 2 {
                return Err(Error::RangeBelowMinimum {
                    field,
                    lo: *range.start(),
                    min: 2,
                });
            }
        }
        if degree_factor < 1 {
            return Err(Error::RangeBelowMinimum {
                field: "degree factor",
                lo: degree_factor,
                min: 1,
            });
        }
        for (field, value) in [
            ("r", *rank.end()),
            ("g1", *genus_1.end()),
            ("g2", *genus_2.end()),
            ("degree factor", degree_factor),
        ] {
            check_magnitude(field, value)?;
        }
        Ok(ClaimSweep {
            rank,
            genus_1,
            genus_2,
            degree_factor,
        })
    }

    /// The default verification range: `r` in `[1, 4]`, `g_i` in `[2, 8]`,
    /// `d_i` in `[1, 4 g_i]`.
    pub fn default_range() -> Self {
        ClaimSweep::new(1..=4, 2..=8, 2..=8, 4).expect("default range is valid")
    }
}

/// A tuple whose admissible `k` violates `k < d1 + d2 + r`. The sweep is
/// expected to find none; any entry falsifies the implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimCounterexample {
    pub r: i64,
    pub g1: i64,
    pub g2: i64,
    pub d1: i64,
    pub d2: i64,
    pub k: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CaseTally {
    pub tuples: u64,
    pub instances: u64,
}

/// Outcome of the exhaustive claim sweep, with per-case tallies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub tuples: u64,
    /// Tuples with no admissible `k` (section bound below `r + 1`).
    pub vacuous_tuples: u64,
    pub instances: u64,
    pub per_case: [CaseTally; 3],
    pub counterexamples: Vec<ClaimCounterexample>,
}

impl ClaimReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "checked {} tuples, {} admissible k instances ({} vacuous tuples)",
            self.tuples, self.instances, self.vacuous_tuples
        )?;
        for (index, tally) in self.per_case.iter().enumerate() {
            writeln!(
                f,
                "  case {}: {} tuples, {} instances",
                index + 1,
                tally.tuples,
                tally.instances
            )?;
        }
        write!(f, "{} counterexamples", self.counterexamples.len())
    }
}

/// Exhaustively verifies `k < d1 + d2 + r` for every tuple in the range and
/// every admissible `k` up to the case-computed section bound.
pub fn sweep_claim(spec: &ClaimSweep) -> ClaimReport {
    let mut report = ClaimReport {
        tuples: 0,
        vacuous_tuples: 0,
        instances: 0,
        per_case: [CaseTally::default(); 3],
        counterexamples: Vec::new(),
    };

    for r in spec.rank.clone() {
        for g1 in spec.genus_1.clone() {
            for g2 in spec.genus_2.clone() {
                let c = CurveData::new(g1, g2).expect("range validated");
                for d1 in 1..=(spec.degree_factor * g1) {
                    for d2 in 1..=(spec.degree_factor * g2) {
                        let p = PairNumerics::new(r, d1, d2, r + 1, None, None)
                            .expect("range validated");
                        let claim =
                            claim_check(&p, &c).expect("degrees are at least 1 in the sweep");
                        report.tuples += 1;
                        let tally = &mut report.per_case[claim.case.number() as usize - 1];
                        tally.tuples += 1;

                        if claim.h0_bound < r + 1 {
                            report.vacuous_tuples += 1;
                            continue;
                        }
                        for k in (r + 1)..=claim.h0_bound {
                            report.instances += 1;
                            tally.instances += 1;
                            if k >= claim.threshold {
                                report.counterexamples.push(ClaimCounterexample {
                                    r,
                                    g1,
                                    g2,
                                    d1,
                                    d2,
                                    k,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// Fact template applied to every tuple of a classification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Template {
    /// Complete pair with semistable, nontrivial restrictions.
    Complete,
    /// Condition (*) with semistable component kernel bundles asserted.
    Star,
    /// Line-bundle pairs general in the linear-series varieties of a
    /// general curve.
    Series,
    /// Semistable restrictions of high degree with a general subspace of
    /// sections.
    Grassmannian,
}

impl Template {
    pub fn name(self) -> &'static str {
        match self {
            Template::Complete => "complete",
            Template::Star => "star",
            Template::Series => "series",
            Template::Grassmannian => "grassmannian",
        }
    }

    pub fn facts(self) -> Vec<Fact> {
        match self {
            Template::Complete => vec![
                Fact::PairIsComplete,
                Fact::EGloballyGenerated,
                Fact::E1Semistable,
                Fact::E2Semistable,
                Fact::E1Nontrivial,
                Fact::E2Nontrivial,
            ],
            Template::Star => vec![Fact::StarCondition, Fact::M1Semistable, Fact::M2Semistable],
            Template::Series => vec![
                Fact::CurveGeneral,
                Fact::PairGeneralInGkd1,
                Fact::PairGeneralInGkd2,
            ],
            Template::Grassmannian => vec![
                Fact::E1Semistable,
                Fact::E2Semistable,
                Fact::PairGeneralInGrassmannian,
            ],
        }
    }

    fn sections(self) -> (Option<i64>, Option<i64>) {
        match self {
            Template::Star => (Some(0), Some(0)),
            _ => (None, None),
        }
    }

    /// The `k` values swept for one `(g1, g2, r, d1, d2)` tuple when no
    /// explicit range is given.
    fn automatic_k(self, r: i64, d1: i64, d2: i64, g1: i64, g2: i64) -> Vec<i64> {
        let bound_1 = h0_semistable_bound(g1, r, d1);
        let bound_2 = h0_semistable_bound(g2, r, d2);
        match self {
            // Admissible dimensions of a subspace of H0(E).
            Template::Complete => ((r + 1)..=(bound_1 + bound_2 - r)).collect(),
            Template::Star => ((r + 1)..=(r + 4)).collect(),
            Template::Series => ((r + 1)..=bound_1.min(bound_2)).collect(),
            // k is pinned by the section count of the restrictions.
            Template::Grassmannian => {
                let k = chi_component(d1, r, g1);
                if k > r {
                    vec![k]
                } else {
                    vec![]
                }
            }
        }
    }
}

/// Error for a template name that matches nothing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown template `{0}`; expected one of: complete, star, series, grassmannian")]
pub struct UnknownTemplate(pub String);

impl FromStr for Template {
    type Err = UnknownTemplate;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            Template::Complete,
            Template::Star,
            Template::Series,
            Template::Grassmannian,
        ]
        .into_iter()
        .find(|t| t.name() == s)
        .ok_or_else(|| UnknownTemplate(s.to_string()))
    }
}

/// Inclusive tuple ranges of a classification sweep. An empty range is
/// valid and produces no rows. Without an explicit `k` range, each template
/// picks its own admissible `k` values per tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRange {
    pub g1: RangeInclusive<i64>,
    pub g2: RangeInclusive<i64>,
    pub r: RangeInclusive<i64>,
    pub d1: RangeInclusive<i64>,
    pub d2: RangeInclusive<i64>,
    pub k: Option<RangeInclusive<i64>>,
}

impl SweepRange {
    pub fn new(
        g1: RangeInclusive<i64>,
        g2: RangeInclusive<i64>,
        r: RangeInclusive<i64>,
        d1: RangeInclusive<i64>,
        d2: RangeInclusive<i64>,
        k: Option<RangeInclusive<i64>>,
    ) -> Result<Self> {
        let minima: [(&'static str, &RangeInclusive<i64>, i64); 5] = [
            ("g1", &g1, 2),
            ("g2", &g2, 2),
            ("r", &r, 1),
            ("d1", &d1, 0),
            ("d2", &d2, 0),
        ];
        for (field, range, min) in minima {
            if !range.is_empty() && *range.start() < min {
                return Err(Error::RangeBelowMinimum {
                    field,
                    lo: *range.start(),
                    min,
                });
            }
            check_magnitude(field, *range.end())?;
            check_magnitude(field, *range.start())?;
        }
        if let Some(k_range) = &k {
            if !k_range.is_empty() && *k_range.start() < 2 {
                return Err(Error::RangeBelowMinimum {
                    field: "k",
                    lo: *k_range.start(),
                    min: 2,
                });
            }
            check_magnitude("k", *k_range.end())?;
        }
        Ok(SweepRange {
            g1,
            g2,
            r,
            d1,
            d2,
            k,
        })
    }

    /// The default desk-scale sweep: `g_i` in `[2, 3]`, `r = 1`, `d_i` in
    /// `[1, 6]`, automatic `k`.
    pub fn default_range() -> Self {
        SweepRange::new(2..=3, 2..=3, 1..=1, 1..=6, 1..=6, None).expect("default range is valid")
    }
}

/// Verdict tallies of a classification sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: u64,
    pub tallies: BTreeMap<String, u64>,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rows", self.rows)?;
        for (verdict, count) in &self.tallies {
            write!(f, "\n  {verdict}: {count}")?;
        }
        Ok(())
    }
}

pub const SWEEP_CSV_HEADER: &str = "g1,g2,r,d1,d2,k,s1,s2,verdict,window_lo,window_hi,rule_id";

fn optional_cell<T: fmt::Display>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Classifies every tuple of the range under the template's facts and
/// writes one CSV row per tuple in lexicographic order. Identical inputs
/// produce byte-identical output.
pub fn sweep_classify<W: Write>(
    range: &SweepRange,
    template: Template,
    out: &mut W,
) -> io::Result<SweepSummary> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    let mut summary = SweepSummary::default();
    let facts: HypothesisSet = template.facts().into_iter().collect();
    let (s1, s2) = template.sections();

    for g1 in range.g1.clone() {
        for g2 in range.g2.clone() {
            let c = CurveData::new(g1, g2).expect("range validated");
            for r in range.r.clone() {
                for d1 in range.d1.clone() {
                    for d2 in range.d2.clone() {
                        let ks: Vec<i64> = match &range.k {
                            Some(explicit) => explicit.clone().filter(|k| *k > r).collect(),
                            None => template.automatic_k(r, d1, d2, g1, g2),
                        };
                        for k in ks {
                            let p = PairNumerics::new(r, d1, d2, k, s1, s2)
                                .expect("tuple values validated");
                            let (verdict_cell, window, rule_cell) = match classify(&p, &c, &facts) {
                                Ok(v) => {
                                    (v.kind.name().to_string(), v.window, optional_cell(v.rule))
                                }
                                Err(Error::Contradiction(con)) => {
                                    ("Contradiction".to_string(), None, con.rule.to_string())
                                }
                                Err(other) => {
                                    unreachable!("classify on validated tuples: {other}")
                                }
                            };
                            let (lo, hi) = match window {
                                Some(w) => (optional_cell(w.lo()), optional_cell(w.hi())),
                                None => (String::new(), String::new()),
                            };
                            writeln!(
                                out,
                                "{g1},{g2},{r},{d1},{d2},{k},{},{},{verdict_cell},{lo},{hi},{rule_cell}",
                                optional_cell(s1),
                                optional_cell(s2),
                            )?;
                            summary.rows += 1;
                            *summary.tallies.entry(verdict_cell).or_insert(0) += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::{destabilizer_region, instability_bound};

    fn curve(g1: i64, g2: i64) -> CurveData {
        CurveData::new(g1, g2).unwrap()
    }

    #[test]
    fn teixidor_scan_reproduces_window() {
        let c = curve(2, 2);
        let kernel = DepthOneNumerics::vector_bundle(2, -4, -4).unwrap();
        let grid = GridSpec::new(140).unwrap();
        let feasible = scan_teixidor(&kernel, &c, &grid).unwrap();
        assert_eq!(feasible, (60..=80).collect::<Vec<_>>());
    }

    #[test]
    fn teixidor_scan_full_window() {
        let c = curve(2, 2);
        let flat = DepthOneNumerics::vector_bundle(1, 1, 2).unwrap();
        for n in [7, 97, 140] {
            let grid = GridSpec::new(n).unwrap();
            let feasible = scan_teixidor(&flat, &c, &grid).unwrap();
            assert_eq!(feasible.len() as i64, n - 1);
        }
    }

    #[test]
    fn destabilizer_scan_examples() {
        let c = curve(2, 2);
        let grid = GridSpec::new(100).unwrap();

        let complete = PairNumerics::new(1, 4, 4, 5, Some(1), Some(1)).unwrap();
        let scan = scan_destabilizers(&complete, &c, &grid).unwrap();
        assert!(scan.feasible().is_empty());
        // First violations: w1 > 2/5 for component 1, w1 < 3/5 for component 2.
        for point in &scan.per_point {
            let w1 = grid.weight(point.t);
            assert_eq!(
                point.violated.contains(&Component::C1),
                w1 > Rat::new(2, 5),
                "t = {}",
                point.t
            );
            assert_eq!(
                point.violated.contains(&Component::C2),
                Rat::one() - w1 > Rat::new(2, 5),
                "t = {}",
                point.t
            );
        }

        let none = PairNumerics::new(1, 4, 4, 5, Some(0), Some(0)).unwrap();
        let scan = scan_destabilizers(&none, &c, &grid).unwrap();
        assert_eq!(scan.feasible().len(), 99);

        let one_sided = PairNumerics::new(1, 4, 4, 5, Some(1), Some(0)).unwrap();
        let scan = scan_destabilizers(&one_sided, &c, &grid).unwrap();
        let region = destabilizer_region(&one_sided, &c).unwrap();
        // s1 >= 1 activates the bound on component 2 only.
        let bound = instability_bound(&one_sided, &c, Component::C2);
        assert_eq!(region.lo().unwrap(), Rat::one() - bound);
        for t in scan.feasible() {
            assert!(region.contains(&grid.weight(t)));
        }
        for point in &scan.per_point {
            assert_eq!(
                point.violated.is_empty(),
                region.contains(&grid.weight(point.t))
            );
        }
    }

    #[test]
    fn destabilizer_scan_needs_section_counts() {
        let c = curve(2, 2);
        let unknown = PairNumerics::new(1, 4, 4, 5, None, Some(1)).unwrap();
        assert_eq!(
            scan_destabilizers(&unknown, &c, &GridSpec::new(10).unwrap()).unwrap_err(),
            Error::SectionCountsUnknown
        );
    }

    #[test]
    fn claim_sweep_small_range() {
        let report = sweep_claim(&ClaimSweep::new(1..=2, 2..=4, 2..=4, 4).unwrap());
        assert!(report.is_clean());
        assert!(report.instances > 0);
        assert_eq!(
            report.tuples,
            report.per_case.iter().map(|t| t.tuples).sum::<u64>()
        );
    }

    #[test]
    fn claim_single_tuples() {
        let c = curve(2, 2);
        let p = PairNumerics::new(1, 4, 4, 2, None, None).unwrap();
        let cert = claim_check(&p, &c).unwrap();
        assert_eq!((cert.case.number(), cert.h0_bound), (1, 5));
        assert!(cert.h0_bound < 9);

        let c = curve(2, 3);
        let p = PairNumerics::new(2, 3, 5, 3, None, None).unwrap();
        let cert = claim_check(&p, &c).unwrap();
        assert_eq!((cert.case.number(), cert.h0_bound), (3, 5));
        assert!(cert.h0_bound < 10);
    }

    #[test]
    fn sweep_rows_are_deterministic_and_unstable_for_complete() {
        let range = SweepRange::default_range();
        let mut first = Vec::new();
        let mut second = Vec::new();
        let summary = sweep_classify(&range, Template::Complete, &mut first).unwrap();
        sweep_classify(&range, Template::Complete, &mut second).unwrap();
        assert_eq!(first, second);
        assert!(summary.rows > 0);
        assert_eq!(
            summary.tallies.get("StronglyUnstable").copied(),
            Some(summary.rows)
        );
    }

    #[test]
    fn grassmannian_template_rows_meet_preconditions() {
        let range = SweepRange::new(2..=4, 2..=4, 1..=1, 1..=16, 1..=16, None).unwrap();
        let mut out = Vec::new();
        let summary = sweep_classify(&range, Template::Grassmannian, &mut out).unwrap();
        assert!(summary.rows > 0);
        let text = String::from_utf8(out).unwrap();
        let mut satisfied = 0;
        for line in text.lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            let (g1, g2): (i64, i64) = (cells[0].parse().unwrap(), cells[1].parse().unwrap());
            let (d1, d2): (i64, i64) = (cells[3].parse().unwrap(), cells[4].parse().unwrap());
            let meets = d1 >= 2 * g1 && d2 >= 2 * g2 && d1 - d2 == g1 - g2;
            if meets {
                satisfied += 1;
                assert!(
                    cells[8] == "WSemistable" || cells[8] == "WStable",
                    "line: {line}"
                );
            }
        }
        assert!(satisfied > 0);
    }

    #[test]
    fn empty_range_gives_header_only() {
        #[allow(clippy::reversed_empty_ranges)]
        let range = SweepRange::new(3..=2, 2..=3, 1..=1, 1..=2, 1..=2, None).unwrap();
        let mut out = Vec::new();
        let summary = sweep_classify(&range, Template::Complete, &mut out).unwrap();
        assert_eq!(summary.rows, 0);
        assert_eq!(
            String::from_utf8(out).unwrap(),
            format!("{SWEEP_CSV_HEADER}\n")
        );
    }

    #[test]
    fn grid_invariants() {
        assert!(GridSpec::new(0).is_err());
        let grid = GridSpec::new(5).unwrap();
        let points: Vec<Rat> = grid.ts().map(|t| grid.weight(t)).collect();
        assert_eq!(points.len(), 4);
        assert!(points.iter().all(|w| *w > Rat::zero() && *w < Rat::one()));
    }
}
