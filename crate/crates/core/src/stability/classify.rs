//! Destabilizer bounds, polarization windows, and the theorem dispatch.

use super::facts::{Fact, HypothesisSet};
use super::infer::{infer_facts, Inference};
use super::{CertEntry, Check, RuleId, Verdict, VerdictKind};
use crate::curve::{Component, CurveData, DepthOneNumerics, Polarization};
use crate::error::{Error, Result};
use crate::pair::{
    brill_noether_rho, claim_check, gkd_nonempty_general, h0_total, h0_twist_down, PairNumerics,
};
use crate::rationals::{Rat, RatInterval};

/// Numerics of a catalog destabilizer: the subsheaf `S_j (x) O_{C_i}(-p)`
/// of the kernel bundle, supported on component `i` with rank `s_j`
/// (`j != i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DestabilizerNumerics {
    pub component: Component,
    pub rank: i64,
}

impl DestabilizerNumerics {
    /// The destabilizers present for a pair with known section counts: one
    /// on component `i` whenever `s_j >= 1`.
    pub fn catalog(p: &PairNumerics) -> Result<Vec<DestabilizerNumerics>> {
        let mut all = Vec::new();
        for i in Component::BOTH {
            let j = i.other();
            let s_j = p.sections_vanishing(j).ok_or(Error::SectionCountsUnknown)?;
            if s_j >= 1 {
                all.push(DestabilizerNumerics {
                    component: i,
                    rank: s_j,
                });
            }
        }
        Ok(all)
    }

    /// The depth-one numerics it realizes: rank `s` and degree `-s` on its
    /// component, zero on the other, no identification at the node.
    pub fn sheaf(&self) -> DepthOneNumerics {
        DepthOneNumerics::supported_on(self.component, self.rank, -self.rank)
            .expect("destabilizer rank is positive")
    }

    /// Euler characteristic `-s * g_i`.
    pub fn chi(&self, c: &CurveData) -> i64 {
        -self.rank * c.genus(self.component)
    }

    /// Closed-form polarized slope `-g_i / w_i`.
    pub fn slope(&self, c: &CurveData, w: &Polarization) -> Rat {
        Rat::from(-c.genus(self.component)) / w.weight(self.component)
    }
}

/// The upper bound on `w_i` imposed on any `w`-semistable structure by the
/// destabilizer on component `i`:
/// `w_i <= g_i (k - r) / (d1 + d2 + (k - r)(p_a - 1))`.
pub fn instability_bound(p: &PairNumerics, c: &CurveData, i: Component) -> Rat {
    let n = p.kernel_rank() as i128;
    let denom = p.degree_sum() as i128 + n * (c.arithmetic_genus() as i128 - 1);
    Rat::new(c.genus(i) as i128 * n, denom)
}

/// The closed polarization window `[a1, b1]` of weights satisfying the
/// kernel bundle's semistability conditions, with
/// `a1 = ((k-r)(g1-1) + d1) / D`, `b1 = ((k-r)g1 + d1) / D` and
/// `D = (k-r)(p_a-1) + d1 + d2`. Always `0 < a1 < b1 < 1`.
pub fn polarization_window(p: &PairNumerics, c: &CurveData) -> RatInterval {
    let n = p.kernel_rank() as i128;
    let denom = n * (c.arithmetic_genus() as i128 - 1) + p.degree_sum() as i128;
    let a1 = Rat::new(
        n * (c.g1() as i128 - 1) + p.degree(Component::C1) as i128,
        denom,
    );
    let b1 = Rat::new(n * c.g1() as i128 + p.degree(Component::C1) as i128, denom);
    debug_assert!(Rat::zero() < a1 && a1 < b1 && b1 < Rat::one());
    RatInterval::closed(a1, b1)
}

/// Closed-form region of weights not excluded by the destabilizer catalog:
/// `(0, 1)` intersected with `w_i <= instability_bound(i)` for every
/// component carrying a destabilizer. Needs both section counts.
pub fn destabilizer_region(p: &PairNumerics, c: &CurveData) -> Result<RatInterval> {
    let mut region = RatInterval::open_unit();
    for dest in DestabilizerNumerics::catalog(p)? {
        let bound = instability_bound(p, c, dest.component);
        let constraint = match dest.component {
            Component::C1 => RatInterval::new(Rat::zero(), false, bound, true),
            Component::C2 => RatInterval::new(Rat::one() - bound, true, Rat::one(), false),
        };
        region = region.intersect(&constraint);
    }
    Ok(region)
}

/// Whether a general `k`-dimensional subspace of sections avoids both
/// subspaces of sections vanishing on a component:
/// `k + h^0(E_j(-p)) <= h^0(E)` for `j = 1, 2`, given the section counts of
/// the globally generated restrictions.
pub fn generic_star_feasible(p: &PairNumerics, h0_1: i64, h0_2: i64) -> Result<bool> {
    let total = h0_total(h0_1, h0_2, p.rank())?;
    for h0_j in [h0_1, h0_2] {
        let twist = h0_twist_down(h0_j, p.rank())?;
        if p.k() + twist > total {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the numerical hypotheses of the complete-restriction criterion:
/// `d_i >= 2 r g_i` on both components, `d1 - d2 = r(g1 - g2)`, and
/// `k = d_i + r(1 - g_i)`. Returns the instantiated checks when they hold.
pub(super) fn theorem35_numerics(p: &PairNumerics, c: &CurveData) -> Option<Vec<Check>> {
    let r = p.rank() as i128;
    let d1 = p.degree(Component::C1) as i128;
    let d2 = p.degree(Component::C2) as i128;
    let g1 = c.g1() as i128;
    let g2 = c.g2() as i128;
    let k = p.k() as i128;

    let hold =
        d1 >= 2 * r * g1 && d2 >= 2 * r * g2 && d1 - d2 == r * (g1 - g2) && k == d1 + r * (1 - g1);
    if !hold {
        return None;
    }
    Some(vec![
        Check::le(Rat::from_int(2 * r * g1), Rat::from_int(d1)),
        Check::le(Rat::from_int(2 * r * g2), Rat::from_int(d2)),
        Check::eq(Rat::from_int(d1 - d2), Rat::from_int(r * (g1 - g2))),
        Check::eq(Rat::from_int(k), Rat::from_int(d1 + r * (1 - g1))),
    ])
}

const INSTABILITY_FACTS: [Fact; 4] = [
    Fact::E1Semistable,
    Fact::E2Semistable,
    Fact::S1Positive,
    Fact::S2Positive,
];

const STAR_FACTS: [Fact; 3] = [Fact::StarCondition, Fact::M1Semistable, Fact::M2Semistable];

const LINEAR_SERIES_FACTS: [Fact; 3] = [
    Fact::CurveGeneral,
    Fact::PairGeneralInGkd1,
    Fact::PairGeneralInGkd2,
];

const GRASSMANNIAN_FACTS: [Fact; 3] = [
    Fact::E1Semistable,
    Fact::E2Semistable,
    Fact::PairGeneralInGrassmannian,
];

fn destabilizer_bound_entry(p: &PairNumerics, c: &CurveData, i: Component) -> (Rat, CertEntry) {
    let bound = instability_bound(p, c, i);
    let entry = CertEntry::new(
        RuleId::DestabilizerBound,
        "Theorem 2.5 proof",
        format!(
            "mu_w(S{j} (x) O_C{i}(-p)) = -g{i}/w{i} <= mu_w(M) forces w{i} <= g{i}(k - r)/(d1 + d2 + (k - r)(p_a - 1)) = {bound}",
            i = i.index(),
            j = i.other().index(),
        ),
        vec![],
    );
    (bound, entry)
}

/// Attempts the strong-instability path. `Ok(None)` means its hypothesis
/// facts are absent.
fn strong_path(inf: &Inference, p: &PairNumerics, c: &CurveData) -> Result<Option<Verdict>> {
    if !inf.facts().contains_all(&INSTABILITY_FACTS) {
        return Ok(None);
    }
    let claim = claim_check(p, c)?;
    let mut certificate = inf.steps().to_vec();

    certificate.push(CertEntry::new(
        RuleId::ClaimBound,
        "Theorem 2.5 proof, Claim",
        format!(
            "h0(E) <= {bound} ({case}); k = {k} <= {bound} and every admissible k satisfies k < d1 + d2 + r = {threshold}",
            bound = claim.h0_bound,
            case = claim.case,
            k = p.k(),
            threshold = claim.threshold,
        ),
        vec![
            Check::le(Rat::from(p.k()), Rat::from(claim.h0_bound)),
            Check::lt(Rat::from(claim.h0_bound), Rat::from(claim.threshold)),
            Check::lt(Rat::from(p.k()), Rat::from(claim.threshold)),
        ],
    ));

    let (bound_1, entry_1) = destabilizer_bound_entry(p, c, Component::C1);
    let (bound_2, entry_2) = destabilizer_bound_entry(p, c, Component::C2);
    certificate.push(entry_1);
    certificate.push(entry_2);

    let sum = bound_1 + bound_2;
    certificate.push(CertEntry::new(
        RuleId::StrongInstability,
        "Theorem 2.5",
        format!(
            "w1 + w2 = 1 for every polarization, but the destabilizer bounds give w1 + w2 <= {bound_1} + {bound_2} = {sum} < 1: the kernel bundle is strongly unstable"
        ),
        vec![Check::lt(sum, Rat::one())],
    ));

    for i in Component::BOTH {
        let slope = Rat::new(-(p.degree(i) as i128), p.kernel_rank() as i128);
        certificate.push(CertEntry::new(
            RuleId::RestrictionUnstable,
            "Lemma 2.2(3)",
            format!(
                "S{j} (x) O_C{i} is a slope-0 subsheaf of the restriction of M to C{i} and 0 > -d{i}/(k - r) = {slope}",
                i = i.index(),
                j = i.other().index(),
            ),
            vec![Check::lt(slope, Rat::zero())],
        ));
    }

    if inf.has(Fact::PairIsComplete) {
        let citation = if p.rank() == 1 {
            "Corollary 2.7"
        } else {
            "Corollary 2.6"
        };
        certificate.push(CertEntry::new(
            RuleId::CompleteCase,
            citation,
            "complete pair: the kernel of the full section space is strongly unstable and both restrictions are unstable"
                .to_string(),
            vec![],
        ));
    }

    Ok(Some(Verdict {
        kind: VerdictKind::StronglyUnstable,
        rule: Some(RuleId::StrongInstability),
        window: None,
        bound_w1: Some(bound_1),
        bound_w2: Some(bound_2),
        certificate,
        inferred: inf.inferred(),
        missing: Vec::new(),
    }))
}

/// Builds a window-carrying semistability verdict shared by the three
/// positive paths, applying the stable upgrades in a fixed order: an
/// asserted stable restriction of the kernel, a numeric strictness upgrade
/// supplied by the caller, then the Petri route when allowed.
#[allow(clippy::too_many_arguments)]
fn window_verdict(
    inf: &Inference,
    p: &PairNumerics,
    c: &CurveData,
    mut certificate: Vec<CertEntry>,
    verdict_rule: RuleId,
    verdict_citation: &str,
    numeric_stable: Option<CertEntry>,
    allow_petri: bool,
) -> Verdict {
    let window = polarization_window(p, c);
    let a1 = window.lo().expect("window is never empty");
    let b1 = window.hi().expect("window is never empty");

    certificate.push(CertEntry::new(
        RuleId::PolarizationWindow,
        "Lemma 3.1(2)",
        format!("window endpoints a1 = {a1}, b1 = {b1} satisfy 0 < a1 < b1 < 1"),
        vec![
            Check::lt(Rat::zero(), a1),
            Check::lt(a1, b1),
            Check::lt(b1, Rat::one()),
        ],
    ));
    certificate.push(CertEntry::new(
        RuleId::TeixidorCriterion,
        "Theorem 1.5(2)",
        "both restrictions of the kernel bundle are semistable, so every weight in the window gives w-semistability"
            .to_string(),
        vec![],
    ));

    let mut kind = VerdictKind::WSemistable;
    let mut missing = Vec::new();

    let asserted_stable = [Fact::M1Stable, Fact::M2Stable]
        .into_iter()
        .find(|f| inf.has(*f));
    if let Some(fact) = asserted_stable {
        kind = VerdictKind::WStable;
        certificate.push(CertEntry::new(
            RuleId::TeixidorCriterion,
            "Theorem 1.5(2)",
            format!("{fact} holds: one stable restriction upgrades w-semistable to w-stable"),
            vec![],
        ));
    } else if let Some(entry) = numeric_stable {
        kind = VerdictKind::WStable;
        certificate.push(entry);
    } else if allow_petri {
        let petri = Component::BOTH.into_iter().find(|i| {
            inf.has(Fact::petri_general(*i)) && p.k() >= 6 && c.genus(*i) >= 2 * p.k() - 6
        });
        if let Some(i) = petri {
            kind = VerdictKind::WStable;
            certificate.push(CertEntry::new(
                RuleId::PetriStable,
                "Petri corollary (Theorem 3.4)",
                format!(
                    "C{i} is Petri-general with k = {k} >= 6 and g{i} = {g} >= 2k - 6 = {t}: M{i} is stable",
                    i = i.index(),
                    k = p.k(),
                    g = c.genus(i),
                    t = 2 * p.k() - 6,
                ),
                vec![
                    Check::le(Rat::from(6), Rat::from(p.k())),
                    Check::le(Rat::from(2 * p.k() - 6), Rat::from(c.genus(i))),
                ],
            ));
        }
    }

    if kind == VerdictKind::WSemistable {
        for fact in [Fact::M1Stable, Fact::M2Stable] {
            if !inf.has(fact) {
                missing.push(fact);
            }
        }
        if allow_petri {
            for i in Component::BOTH {
                if p.k() >= 6 && c.genus(i) >= 2 * p.k() - 6 && !inf.has(Fact::petri_general(i)) {
                    missing.push(Fact::petri_general(i));
                }
            }
        }
    }

    certificate.push(CertEntry::new(
        verdict_rule,
        verdict_citation,
        format!(
            "any w1 in the open interior ({a1}, {b1}) gives a polarization for which the kernel bundle is {}",
            match kind {
                VerdictKind::WStable => "w-stable",
                _ => "w-semistable",
            }
        ),
        vec![],
    ));

    Verdict {
        kind,
        rule: Some(verdict_rule),
        window: Some(window),
        bound_w1: None,
        bound_w2: None,
        certificate,
        inferred: inf.inferred(),
        missing,
    }
}

fn classify_inferred(inf: &Inference, p: &PairNumerics, c: &CurveData) -> Result<Verdict> {
    // Path 1: strong instability.
    if let Some(verdict) = strong_path(inf, p, c)? {
        return Ok(verdict);
    }

    // Path 2: condition (*) with semistable component kernels.
    if inf.facts().contains_all(&STAR_FACTS) {
        return Ok(window_verdict(
            inf,
            p,
            c,
            inf.steps().to_vec(),
            RuleId::StarSemistable,
            "Theorem 3.2",
            None,
            false,
        ));
    }

    // Path 3: general linear series on a general curve (line bundles).
    let series_numerics = p.rank() == 1
        && gkd_nonempty_general(c.g1(), p.degree(Component::C1), p.k())
        && gkd_nonempty_general(c.g2(), p.degree(Component::C2), p.k());
    if series_numerics && inf.facts().contains_all(&LINEAR_SERIES_FACTS) {
        let mut certificate = inf.steps().to_vec();
        for i in Component::BOTH {
            let rho = brill_noether_rho(c.genus(i), p.degree(i), p.k());
            certificate.push(CertEntry::new(
                RuleId::LinearSeriesKernelSemistable,
                "Theorem 3.4",
                format!(
                    "C{i} is general and (E{i}, V{i}) is general in the nonempty series variety (rho{i} = {rho} >= 0): M{i} is semistable",
                    i = i.index(),
                ),
                vec![Check::le(Rat::zero(), Rat::from(rho))],
            ));
        }
        return Ok(window_verdict(
            inf,
            p,
            c,
            certificate,
            RuleId::LinearSeriesKernelSemistable,
            "Theorem 3.4",
            None,
            true,
        ));
    }

    // Path 4: complete semistable restrictions of high degree.
    let butler_checks = theorem35_numerics(p, c);
    if let Some(checks) = butler_checks.clone() {
        if inf.facts().contains_all(&GRASSMANNIAN_FACTS) {
            let mut certificate = inf.steps().to_vec();
            for i in Component::BOTH {
                let two_rg = 2 * p.rank() * c.genus(i);
                certificate.push(CertEntry::new(
                    RuleId::ButlerKernelSemistable,
                    "Theorem 3.5 proof",
                    format!(
                        "restriction {i} is complete with h0(E{n}) = k = {k} and d{n} = {d} >= 2 r g{n} = {two_rg}: M{n} = M_E{n} is semistable",
                        i = i,
                        n = i.index(),
                        k = p.k(),
                        d = p.degree(i),
                    ),
                    vec![Check::le(Rat::from(two_rg), Rat::from(p.degree(i)))],
                ));
            }
            certificate.push(CertEntry::new(
                RuleId::GrassmannianSemistable,
                "Theorem 3.5",
                "degree and genus relations hold, so a general subspace yields condition (*) with semistable component kernels"
                    .to_string(),
                checks,
            ));
            let strict = Component::BOTH
                .into_iter()
                .all(|i| p.degree(i) as i128 > 2 * p.rank() as i128 * c.genus(i) as i128);
            let numeric_stable = strict.then(|| {
                CertEntry::new(
                    RuleId::ButlerKernelSemistable,
                    "Theorem 3.5",
                    format!(
                        "d1 = {d1} > 2 r g1 = {t1} and d2 = {d2} > 2 r g2 = {t2} strictly: both component kernels are stable",
                        d1 = p.degree(Component::C1),
                        t1 = 2 * p.rank() * c.g1(),
                        d2 = p.degree(Component::C2),
                        t2 = 2 * p.rank() * c.g2(),
                    ),
                    vec![
                        Check::lt(
                            Rat::from(2 * p.rank() * c.g1()),
                            Rat::from(p.degree(Component::C1)),
                        ),
                        Check::lt(
                            Rat::from(2 * p.rank() * c.g2()),
                            Rat::from(p.degree(Component::C2)),
                        ),
                    ],
                )
            });
            return Ok(window_verdict(
                inf,
                p,
                c,
                certificate,
                RuleId::GrassmannianSemistable,
                "Theorem 3.5",
                numeric_stable,
                false,
            ));
        }
    }

    // Path 5: one-sided certified restriction instability.
    let mut unstable_components = Vec::new();
    for i in Component::BOTH {
        if inf.has(Fact::s_positive(i.other())) && p.degree(i) >= 1 {
            unstable_components.push(i);
        }
    }
    if !unstable_components.is_empty() {
        let mut certificate = inf.steps().to_vec();
        let mut region = RatInterval::open_unit();
        let mut bound_w1 = None;
        let mut bound_w2 = None;
        for &i in &unstable_components {
            let slope = Rat::new(-(p.degree(i) as i128), p.kernel_rank() as i128);
            certificate.push(CertEntry::new(
                RuleId::RestrictionUnstable,
                "Lemma 2.2(3)",
                format!(
                    "S{j} (x) O_C{i} is a slope-0 subsheaf of the restriction of M to C{i} and 0 > -d{i}/(k - r) = {slope}",
                    i = i.index(),
                    j = i.other().index(),
                ),
                vec![Check::lt(slope, Rat::zero())],
            ));
            let (bound, entry) = destabilizer_bound_entry(p, c, i);
            certificate.push(entry);
            let constraint = match i {
                Component::C1 => {
                    bound_w1 = Some(bound);
                    RatInterval::new(Rat::zero(), false, bound, true)
                }
                Component::C2 => {
                    bound_w2 = Some(bound);
                    RatInterval::new(Rat::one() - bound, true, Rat::one(), false)
                }
            };
            region = region.intersect(&constraint);
        }
        return Ok(Verdict {
            kind: VerdictKind::RestrictionUnstable,
            rule: Some(RuleId::RestrictionUnstable),
            window: Some(region),
            bound_w1,
            bound_w2,
            certificate,
            inferred: inf.inferred(),
            missing: inf.facts().missing_from(&INSTABILITY_FACTS),
        });
    }

    // Inconclusive: report the nearest rule by missing-fact count, among
    // the paths whose numerical preconditions hold.
    let mut candidates: Vec<(RuleId, Vec<Fact>)> = Vec::new();
    if claim_check(p, c).map(|cc| cc.holds).unwrap_or(false) {
        candidates.push((
            RuleId::StrongInstability,
            inf.facts().missing_from(&INSTABILITY_FACTS),
        ));
    }
    candidates.push((
        RuleId::StarSemistable,
        inf.facts().missing_from(&STAR_FACTS),
    ));
    if series_numerics {
        candidates.push((
            RuleId::LinearSeriesKernelSemistable,
            inf.facts().missing_from(&LINEAR_SERIES_FACTS),
        ));
    }
    if butler_checks.is_some() {
        candidates.push((
            RuleId::GrassmannianSemistable,
            inf.facts().missing_from(&GRASSMANNIAN_FACTS),
        ));
    }
    let (rule, missing) = candidates
        .into_iter()
        .min_by_key(|(_, missing)| missing.len())
        .expect("the star path is always a candidate");

    Ok(Verdict {
        kind: VerdictKind::Inconclusive,
        rule: Some(rule),
        window: None,
        bound_w1: None,
        bound_w2: None,
        certificate: inf.steps().to_vec(),
        inferred: inf.inferred(),
        missing,
    })
}

/// The strong-instability test on its own: either a
/// [`VerdictKind::StronglyUnstable`] verdict, or an inconclusive one naming
/// the hypothesis facts that are absent.
pub fn strong_instability(p: &PairNumerics, c: &CurveData, h: &HypothesisSet) -> Result<Verdict> {
    let inf = infer_facts(h, p, c)?;
    if let Some(verdict) = strong_path(&inf, p, c)? {
        return Ok(verdict);
    }
    Ok(Verdict {
        kind: VerdictKind::Inconclusive,
        rule: Some(RuleId::StrongInstability),
        window: None,
        bound_w1: None,
        bound_w2: None,
        certificate: inf.steps().to_vec(),
        inferred: inf.inferred(),
        missing: inf.facts().missing_from(&INSTABILITY_FACTS),
    })
}

/// Full theorem dispatch: closes the hypotheses, then tries strong
/// instability, the condition-(*) criterion, the general-linear-series
/// criterion, and the complete-restriction criterion, in that order.
pub fn classify(p: &PairNumerics, c: &CurveData, h: &HypothesisSet) -> Result<Verdict> {
    let inf = infer_facts(h, p, c)?;
    classify_inferred(&inf, p, c)
}
