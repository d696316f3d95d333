//! Numerical calculus of generated pairs and their kernel bundles.
//!
//! A generated pair `(E, V)` is a vector bundle `E` of rank `r` together
//! with a `k`-dimensional space of sections generating it, `k >= r + 1`.
//! Only its numerical invariants live here: the component degrees `(d1, d2)`
//! (nonnegative, since restrictions of a generated bundle are globally
//! generated), `k`, and optionally the dimensions `s_j` of the subspaces of
//! `V` vanishing on the opposite component.

use crate::curve::{chi_component, Component, CurveData, DepthOneNumerics};
use crate::error::{check_magnitude, Error, Result};
use crate::rationals::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Invariants `(r, d1, d2, k, s1, s2)` of a generated pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairNumerics {
    r: i64,
    d1: i64,
    d2: i64,
    k: i64,
    s1: Option<i64>,
    s2: Option<i64>,
}

impl PairNumerics {
    pub fn new(r: i64, d1: i64, d2: i64, k: i64, s1: Option<i64>, s2: Option<i64>) -> Result<Self> {
        if r < 1 {
            return Err(Error::RankTooSmall { value: r });
        }
        if k < r + 1 {
            return Err(Error::SectionSpaceTooSmall {
                value: k,
                min: r + 1,
            });
        }
        if d1 < 0 {
            return Err(Error::NegativeDegree {
                component: 1,
                value: d1,
            });
        }
        if d2 < 0 {
            return Err(Error::NegativeDegree {
                component: 2,
                value: d2,
            });
        }
        for (component, s) in [(1u8, s1), (2u8, s2)] {
            if let Some(value) = s {
                if value < 0 {
                    return Err(Error::NegativeSectionCount { component, value });
                }
                check_magnitude("s", value)?;
            }
        }
        for (field, value) in [("r", r), ("d1", d1), ("d2", d2), ("k", k)] {
            check_magnitude(field, value)?;
        }
        Ok(PairNumerics {
            r,
            d1,
            d2,
            k,
            s1,
            s2,
        })
    }

    pub fn rank(&self) -> i64 {
        self.r
    }

    pub fn degree(&self, c: Component) -> i64 {
        match c {
            Component::C1 => self.d1,
            Component::C2 => self.d2,
        }
    }

    pub fn degree_sum(&self) -> i64 {
        self.d1 + self.d2
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn kernel_rank(&self) -> i64 {
        self.k - self.r
    }

    /// Asserted value of `s_j = dim(V /\ H^0(E_j(-p)))`, when known.
    pub fn sections_vanishing(&self, c: Component) -> Option<i64> {
        match c {
            Component::C1 => self.s1,
            Component::C2 => self.s2,
        }
    }

    /// Slope `d_i / r` of the restriction to a component.
    pub fn restriction_slope(&self, c: Component) -> Rat {
        Rat::from(self.degree(c)) / Rat::from(self.r)
    }

    /// Dimension `k_i = k - s_j` of the restricted section space `V_i`
    /// (`j` the other component), when `s_j` is known. Equal to `k` on both
    /// components exactly under condition (*).
    pub fn restriction_dim(&self, c: Component) -> Option<i64> {
        self.sections_vanishing(c.other()).map(|s_j| self.k - s_j)
    }

    /// Explicit depth-one numerics of the kernel bundle: a vector bundle of
    /// rank `k - r` with multidegree `(-d1, -d2)`.
    pub fn kernel_sheaf(&self) -> DepthOneNumerics {
        DepthOneNumerics::vector_bundle(self.kernel_rank(), -self.d1, -self.d2)
            .expect("kernel rank is at least 1 by the pair invariants")
    }
}

/// Rank and Euler characteristics of the kernel bundle and its restrictions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelNumerics {
    pub rank: i64,
    pub chi: i64,
    pub chi_restriction_1: i64,
    pub chi_restriction_2: i64,
}

impl KernelNumerics {
    pub fn chi_restriction(&self, c: Component) -> i64 {
        match c {
            Component::C1 => self.chi_restriction_1,
            Component::C2 => self.chi_restriction_2,
        }
    }
}

/// Kernel-bundle invariants of a pair: rank `k - r`,
/// `chi = (k - r)(1 - p_a) - (d1 + d2)` and restriction characteristics
/// `chi_i = (k - r)(1 - g_i) - d_i`.
pub fn kernel_numerics(p: &PairNumerics, c: &CurveData) -> KernelNumerics {
    let rank = p.kernel_rank();
    let chi_restriction_1 = chi_component(-p.degree(Component::C1), rank, c.g1());
    let chi_restriction_2 = chi_component(-p.degree(Component::C2), rank, c.g2());
    KernelNumerics {
        rank,
        chi: chi_restriction_1 + chi_restriction_2 - rank,
        chi_restriction_1,
        chi_restriction_2,
    }
}

/// Upper bound for `h^0` of a semistable bundle of rank `r` and degree `d`
/// on a smooth genus-`g` curve.
///
/// For `d/r > 2g - 2` the bound is the exact Riemann-Roch value
/// `d + r(1 - g)` (vanishing `h^1`); for `0 <= d/r <= 2g - 2` it is the
/// Xiao-Clifford bound `floor(d/2) + r`; negative degree gives `0`.
pub fn h0_semistable_bound(g: i64, r: i64, d: i64) -> i64 {
    debug_assert!(g >= 2 && r >= 1);
    if d < 0 {
        0
    } else if d as i128 > r as i128 * (2 * g as i128 - 2) {
        chi_component(d, r, g)
    } else {
        d / 2 + r
    }
}

/// Section count of a bundle on the nodal curve from its globally generated
/// restrictions: `h^0(E) = h^0(E1) + h^0(E2) - r`.
pub fn h0_total(h0_1: i64, h0_2: i64, r: i64) -> Result<i64> {
    let total = h0_1 + h0_2 - r;
    if total < 0 {
        return Err(Error::NegativeTotalSections { h0_1, h0_2, r });
    }
    Ok(total)
}

/// Sections of a globally generated restriction vanishing at the node:
/// `h^0(E_i(-p)) = h^0(E_i) - r`.
pub fn h0_twist_down(h0_i: i64, r: i64) -> Result<i64> {
    let twisted = h0_i - r;
    if twisted < 0 {
        return Err(Error::NegativeTwistSections { h0: h0_i, r });
    }
    Ok(twisted)
}

/// Which case of the section-count bound applies, split by comparing the
/// restriction slopes `d_i / r` with `2g_i - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimCase {
    /// Both slopes exceed `2g_i - 2`: Riemann-Roch is exact on both sides.
    BothHighSlope,
    /// One slope exceeds `2g_i - 2`, the other is bounded by Clifford.
    Mixed { clifford_side: Component },
    /// Both slopes within the Clifford range.
    BothClifford,
}

impl ClaimCase {
    pub fn number(&self) -> u8 {
        match self {
            ClaimCase::BothHighSlope => 1,
            ClaimCase::Mixed { .. } => 2,
            ClaimCase::BothClifford => 3,
        }
    }
}

impl fmt::Display for ClaimCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

/// Outcome of [`claim_check`]: the case taken, the section-count bound it
/// yields, and whether the bound certifies `k < d1 + d2 + r` for every
/// admissible `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCertificate {
    pub case: ClaimCase,
    /// Case-computed upper bound for `h^0(E)`.
    pub h0_bound: i64,
    /// The target `d1 + d2 + r`.
    pub threshold: i64,
    /// `h0_bound < threshold`, hence `k < d1 + d2 + r` for all `k <= h0_bound`.
    pub holds: bool,
    /// Whether this pair's own `k` is within the bound.
    pub k_within_bound: bool,
}

/// Certifies the inequality `k < d1 + d2 + r` for a pair with semistable
/// restrictions by bounding `h^0(E)` case by case.
///
/// Semistability of both restrictions is an assumption recorded by the
/// caller. The Clifford-side degrees must be at least 1 (cases 2 and 3);
/// otherwise the hypotheses of the bound fail and an error is returned.
pub fn claim_check(p: &PairNumerics, c: &CurveData) -> Result<ClaimCertificate> {
    let r = p.rank();
    let high_slope =
        |comp: Component| p.degree(comp) as i128 > r as i128 * (2 * c.genus(comp) as i128 - 2);
    let riemann_roch = |comp: Component| chi_component(p.degree(comp), r, c.genus(comp));
    let clifford = |comp: Component, case: u8| -> Result<i64> {
        if p.degree(comp) < 1 {
            return Err(Error::CliffordDegreeZero {
                case,
                component: comp.index(),
            });
        }
        Ok(p.degree(comp) / 2 + r)
    };

    let (case, h0_bound) = match (high_slope(Component::C1), high_slope(Component::C2)) {
        (true, true) => (
            ClaimCase::BothHighSlope,
            riemann_roch(Component::C1) + riemann_roch(Component::C2) - r,
        ),
        (true, false) => (
            ClaimCase::Mixed {
                clifford_side: Component::C2,
            },
            riemann_roch(Component::C1) + clifford(Component::C2, 2)? - r,
        ),
        (false, true) => (
            ClaimCase::Mixed {
                clifford_side: Component::C1,
            },
            clifford(Component::C1, 2)? + riemann_roch(Component::C2) - r,
        ),
        (false, false) => (
            ClaimCase::BothClifford,
            clifford(Component::C1, 3)? + clifford(Component::C2, 3)? - r,
        ),
    };

    let threshold = p.degree_sum() + r;
    Ok(ClaimCertificate {
        case,
        h0_bound,
        threshold,
        holds: h0_bound < threshold,
        k_within_bound: p.k() <= h0_bound,
    })
}

/// Brill-Noether number `rho = g - k(g - d + k - 1)`.
pub fn brill_noether_rho(g: i64, d: i64, k: i64) -> i64 {
    debug_assert!(g >= 2 && k >= 1);
    let rho = g as i128 - k as i128 * (g as i128 - d as i128 + k as i128 - 1);
    i64::try_from(rho).expect("Brill-Noether number overflow")
}

/// Nonemptiness of the variety of degree-`d`, dimension-`(k-1)` linear
/// series on a general genus-`g` curve: `d >= g + k - 1 - g/k`, exactly.
///
/// This threshold coincides with `rho >= 0`.
pub fn gkd_nonempty_general(g: i64, d: i64, k: i64) -> bool {
    debug_assert!(g >= 2 && k >= 1);
    let threshold = Rat::from(g + k - 1) - Rat::new(g as i128, k as i128);
    Rat::from(d) >= threshold
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::chi_total;
    use proptest::prelude::*;

    fn curve(g1: i64, g2: i64) -> CurveData {
        CurveData::new(g1, g2).unwrap()
    }

    fn pair(r: i64, d1: i64, d2: i64, k: i64) -> PairNumerics {
        PairNumerics::new(r, d1, d2, k, None, None).unwrap()
    }

    #[test]
    fn kernel_numerics_examples() {
        let kn = kernel_numerics(&pair(1, 4, 4, 5), &curve(2, 2));
        assert_eq!(
            kn,
            KernelNumerics {
                rank: 4,
                chi: -20,
                chi_restriction_1: -8,
                chi_restriction_2: -8
            }
        );

        let kn = kernel_numerics(&pair(1, 4, 4, 3), &curve(2, 2));
        assert_eq!(
            kn,
            KernelNumerics {
                rank: 2,
                chi: -14,
                chi_restriction_1: -6,
                chi_restriction_2: -6
            }
        );

        let kn = kernel_numerics(&pair(1, 5, 6, 4), &curve(2, 3));
        assert_eq!(
            kn,
            KernelNumerics {
                rank: 3,
                chi: -23,
                chi_restriction_1: -8,
                chi_restriction_2: -12
            }
        );
    }

    #[test]
    fn kernel_matches_explicit_sheaf_numerics() {
        for r in 1..=3i64 {
            for g1 in 2..=5i64 {
                for g2 in 2..=5i64 {
                    let c = curve(g1, g2);
                    for d1 in 0..=12i64 {
                        for d2 in 0..=12i64 {
                            for k in (r + 1)..=(r + 8) {
                                let p = PairNumerics::new(r, d1, d2, k, None, None).unwrap();
                                let kn = kernel_numerics(&p, &c);
                                let sheaf = p.kernel_sheaf();
                                assert_eq!(kn.chi, chi_total(&sheaf, &c));
                                assert_eq!(kn.chi_restriction_1, chi_component(-d1, k - r, g1));
                                assert_eq!(kn.chi_restriction_2, chi_component(-d2, k - r, g2));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn h0_bound_examples() {
        assert_eq!(h0_semistable_bound(2, 1, 4), 3);
        assert_eq!(h0_semistable_bound(2, 1, 2), 2);
        assert_eq!(h0_semistable_bound(3, 2, 5), 4);
        assert_eq!(h0_semistable_bound(2, 1, -3), 0);
    }

    #[test]
    fn h0_total_and_twist() {
        assert_eq!(h0_total(3, 3, 1).unwrap(), 5);
        assert_eq!(h0_total(4, 4, 4).unwrap(), 4);
        assert_eq!(h0_total(4, 4, 1).unwrap(), 7);
        assert!(h0_total(1, 1, 5).is_err());

        assert_eq!(h0_twist_down(3, 1).unwrap(), 2);
        assert_eq!(h0_twist_down(4, 4).unwrap(), 0);
        assert_eq!(h0_twist_down(4, 1).unwrap(), 3);
        assert!(h0_twist_down(2, 3).is_err());
    }

    #[test]
    fn claim_check_examples() {
        let cert = claim_check(&pair(1, 4, 4, 5), &curve(2, 2)).unwrap();
        assert_eq!(cert.case, ClaimCase::BothHighSlope);
        assert_eq!(cert.h0_bound, 5);
        assert_eq!(cert.threshold, 9);
        assert!(cert.holds && cert.k_within_bound);

        let cert = claim_check(&pair(1, 2, 4, 3), &curve(2, 2)).unwrap();
        assert_eq!(
            cert.case,
            ClaimCase::Mixed {
                clifford_side: Component::C1
            }
        );
        assert_eq!(cert.h0_bound, 4);
        assert!(cert.holds);

        let cert = claim_check(&pair(1, 2, 2, 2), &curve(2, 2)).unwrap();
        assert_eq!(cert.case, ClaimCase::BothClifford);
        assert_eq!(cert.h0_bound, 3);
        assert_eq!(cert.threshold, 5);
        assert!(cert.holds);
    }

    #[test]
    fn claim_check_rejects_zero_clifford_degree() {
        assert_eq!(
            claim_check(&pair(1, 0, 0, 2), &curve(2, 2)).unwrap_err(),
            Error::CliffordDegreeZero {
                case: 3,
                component: 1
            }
        );
        assert_eq!(
            claim_check(&pair(1, 7, 0, 2), &curve(2, 2)).unwrap_err(),
            Error::CliffordDegreeZero {
                case: 2,
                component: 2
            }
        );
    }

    #[test]
    fn brill_noether_examples() {
        assert_eq!(brill_noether_rho(2, 4, 3), 2);
        assert_eq!(brill_noether_rho(2, 2, 2), 0);
        assert_eq!(brill_noether_rho(3, 3, 2), 1);

        assert!(gkd_nonempty_general(2, 4, 3));
        assert!(!gkd_nonempty_general(2, 1, 2));
        assert!(gkd_nonempty_general(2, 2, 2));
    }

    #[test]
    fn rho_sign_matches_degree_threshold() {
        for g in 2..=10i64 {
            for k in 1..=6i64 {
                for d in 0..=30i64 {
                    assert_eq!(
                        brill_noether_rho(g, d, k) >= 0,
                        gkd_nonempty_general(g, d, k),
                        "g={g} d={d} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn restriction_dims() {
        let p = PairNumerics::new(1, 4, 4, 5, Some(1), Some(2)).unwrap();
        assert_eq!(p.restriction_dim(Component::C1), Some(3));
        assert_eq!(p.restriction_dim(Component::C2), Some(4));
        assert_eq!(pair(1, 4, 4, 5).restriction_dim(Component::C1), None);

        // Under condition (*) both restricted spaces have full dimension.
        let star = PairNumerics::new(1, 4, 4, 3, Some(0), Some(0)).unwrap();
        assert_eq!(star.restriction_dim(Component::C1), Some(3));
        assert_eq!(star.restriction_dim(Component::C2), Some(3));
    }

    #[test]
    fn pair_invariants() {
        assert!(matches!(
            PairNumerics::new(0, 1, 1, 2, None, None),
            Err(Error::RankTooSmall { .. })
        ));
        assert!(matches!(
            PairNumerics::new(1, 1, 1, 1, None, None),
            Err(Error::SectionSpaceTooSmall { .. })
        ));
        assert!(matches!(
            PairNumerics::new(1, -1, 1, 2, None, None),
            Err(Error::NegativeDegree { component: 1, .. })
        ));
        assert!(matches!(
            PairNumerics::new(1, 1, 1, 2, Some(-1), None),
            Err(Error::NegativeSectionCount { component: 1, .. })
        ));
    }

    proptest! {
        // chi = chi_1 + chi_2 - rank holds identically.
        #[test]
        fn kernel_chi_additivity(
            r in 1i64..=4,
            d1 in 0i64..=30,
            d2 in 0i64..=30,
            extra in 1i64..=8,
            g1 in 2i64..=8,
            g2 in 2i64..=8,
        ) {
            let p = PairNumerics::new(r, d1, d2, r + extra, None, None).unwrap();
            let kn = kernel_numerics(&p, &curve(g1, g2));
            prop_assert_eq!(kn.chi, kn.chi_restriction_1 + kn.chi_restriction_2 - kn.rank);
        }
    }
}
