//! Numerical model of the nodal curve and its depth-one sheaves.
//!
//! The curve has two smooth components of genus `g1, g2 >= 2` meeting at a
//! single node. A depth-one sheaf is described here purely by its numerical
//! invariants: multirank `(r1, r2)`, multidegree `(d1, d2)` and the rank of
//! the identification of the two fibers at the node. Vector bundles are the
//! case `r1 = r2 = glue_rank`; pushforwards of bundles from one component
//! have `r_j = 0` and glue rank `0`.

use crate::error::{check_magnitude, Error, Result};
use crate::rationals::{Rat, RatInterval};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the two smooth components of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    C1,
    C2,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::C1, Component::C2];

    pub fn index(self) -> u8 {
        match self {
            Component::C1 => 1,
            Component::C2 => 2,
        }
    }

    pub fn other(self) -> Component {
        match self {
            Component::C1 => Component::C2,
            Component::C2 => Component::C1,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.index())
    }
}

/// Genera of the two components; the arithmetic genus of the nodal curve is
/// their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveData {
    g1: i64,
    g2: i64,
}

impl CurveData {
    pub fn new(g1: i64, g2: i64) -> Result<Self> {
        if g1 < 2 {
            return Err(Error::GenusTooSmall {
                component: 1,
                value: g1,
            });
        }
        if g2 < 2 {
            return Err(Error::GenusTooSmall {
                component: 2,
                value: g2,
            });
        }
        check_magnitude("g1", g1)?;
        check_magnitude("g2", g2)?;
        Ok(CurveData { g1, g2 })
    }

    pub fn g1(&self) -> i64 {
        self.g1
    }

    pub fn g2(&self) -> i64 {
        self.g2
    }

    pub fn genus(&self, c: Component) -> i64 {
        match c {
            Component::C1 => self.g1,
            Component::C2 => self.g2,
        }
    }

    pub fn arithmetic_genus(&self) -> i64 {
        self.g1 + self.g2
    }
}

/// Multirank, multidegree and node identification rank of a depth-one sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DepthOneNumerics {
    r1: i64,
    r2: i64,
    d1: i64,
    d2: i64,
    glue_rank: i64,
}

impl DepthOneNumerics {
    pub fn new(r1: i64, r2: i64, d1: i64, d2: i64, glue_rank: i64) -> Result<Self> {
        if r1 < 0 {
            return Err(Error::NegativeRank {
                component: 1,
                value: r1,
            });
        }
        if r2 < 0 {
            return Err(Error::NegativeRank {
                component: 2,
                value: r2,
            });
        }
        if r1 + r2 == 0 {
            return Err(Error::TorsionSheaf);
        }
        let max_glue = r1.min(r2);
        if glue_rank < 0 || glue_rank > max_glue {
            return Err(Error::GlueRankOutOfRange {
                glue_rank,
                max: max_glue,
            });
        }
        for (field, value) in [("r1", r1), ("r2", r2), ("d1", d1), ("d2", d2)] {
            check_magnitude(field, value)?;
        }
        Ok(DepthOneNumerics {
            r1,
            r2,
            d1,
            d2,
            glue_rank,
        })
    }

    /// Numerics of a vector bundle of rank `r`: both relative ranks and the
    /// node identification equal `r`.
    pub fn vector_bundle(r: i64, d1: i64, d2: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::RankTooSmall { value: r });
        }
        DepthOneNumerics::new(r, r, d1, d2, r)
    }

    /// Numerics of the pushforward of a rank `rank`, degree `degree` bundle
    /// living on a single component.
    pub fn supported_on(c: Component, rank: i64, degree: i64) -> Result<Self> {
        if rank < 1 {
            return Err(Error::RankTooSmall { value: rank });
        }
        match c {
            Component::C1 => DepthOneNumerics::new(rank, 0, degree, 0, 0),
            Component::C2 => DepthOneNumerics::new(0, rank, 0, degree, 0),
        }
    }

    pub fn rank(&self, c: Component) -> i64 {
        match c {
            Component::C1 => self.r1,
            Component::C2 => self.r2,
        }
    }

    pub fn degree(&self, c: Component) -> i64 {
        match c {
            Component::C1 => self.d1,
            Component::C2 => self.d2,
        }
    }

    pub fn glue_rank(&self) -> i64 {
        self.glue_rank
    }

    pub fn is_vector_bundle(&self) -> bool {
        self.r1 >= 1 && self.r1 == self.r2 && self.glue_rank == self.r1
    }
}

/// Rational weights `(w1, w2)` with `0 < w_i < 1` and `w1 + w2 = 1`; `w2` is
/// always derived from `w1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    w1: Rat,
}

impl Polarization {
    pub fn new(w1: Rat) -> Result<Self> {
        if w1 <= Rat::zero() || w1 >= Rat::one() {
            return Err(Error::WeightOutOfRange {
                value: w1.to_string(),
            });
        }
        Ok(Polarization { w1 })
    }

    pub fn w1(&self) -> Rat {
        self.w1
    }

    pub fn w2(&self) -> Rat {
        Rat::one() - self.w1
    }

    pub fn weight(&self, c: Component) -> Rat {
        match c {
            Component::C1 => self.w1(),
            Component::C2 => self.w2(),
        }
    }
}

/// Euler characteristic of a rank `r`, degree `d` bundle on a smooth genus
/// `g` component: `d + r(1 - g)`.
pub fn chi_component(d: i64, r: i64, g: i64) -> i64 {
    let chi = d as i128 + r as i128 * (1 - g as i128);
    i64::try_from(chi).expect("Euler characteristic overflow")
}

/// Euler characteristic of a depth-one sheaf on the nodal curve:
/// `chi(E1) + chi(E2) - glue_rank`.
pub fn chi_total(e: &DepthOneNumerics, c: &CurveData) -> i64 {
    let chi1 = chi_component(e.degree(Component::C1), e.rank(Component::C1), c.g1());
    let chi2 = chi_component(e.degree(Component::C2), e.rank(Component::C2), c.g2());
    chi1 + chi2 - e.glue_rank()
}

/// Polarized slope `chi(E) / (w1 r1 + w2 r2)`.
///
/// The denominator is positive for every admissible polarization because
/// construction rejects multirank `(0, 0)`.
pub fn polarized_slope(e: &DepthOneNumerics, c: &CurveData, w: &Polarization) -> Rat {
    let weighted_rank =
        w.w1() * Rat::from(e.rank(Component::C1)) + w.w2() * Rat::from(e.rank(Component::C2));
    Rat::from(chi_total(e, c)) / weighted_rank
}

/// Solution set of `lo <= coeff * w1 <= hi`; `None` means every real `w1`.
fn affine_band(coeff: i64, lo: i64, hi: i64) -> Option<RatInterval> {
    let coeff_rat = Rat::from(coeff);
    if coeff > 0 {
        Some(RatInterval::closed(
            Rat::from(lo) / coeff_rat,
            Rat::from(hi) / coeff_rat,
        ))
    } else if coeff < 0 {
        Some(RatInterval::closed(
            Rat::from(hi) / coeff_rat,
            Rat::from(lo) / coeff_rat,
        ))
    } else if lo <= 0 && 0 <= hi {
        None
    } else {
        Some(RatInterval::empty())
    }
}

/// The set of weights `w1 in (0, 1)` satisfying the semistability
/// conditions `w_i chi(E) <= chi(E_i) <= w_i chi(E) + r` for both
/// components.
///
/// The inequalities are non-strict, so the interval endpoints they produce
/// are closed; the clipping into `(0, 1)` is strict. The window is necessary
/// for `w`-semistability of any vector bundle with these numerics, and
/// sufficient when both restrictions are semistable.
pub fn teixidor_window(e: &DepthOneNumerics, c: &CurveData) -> Result<RatInterval> {
    if !e.is_vector_bundle() {
        return Err(Error::NotVectorBundle);
    }
    let r = e.rank(Component::C1);
    let chi = chi_total(e, c);
    let chi1 = chi_component(e.degree(Component::C1), r, c.g1());
    let chi2 = chi_component(e.degree(Component::C2), r, c.g2());

    // i = 1: chi1 - r <= w1 chi <= chi1.
    // i = 2 with w2 = 1 - w1: chi - chi2 <= w1 chi <= chi - chi2 + r.
    let bands = [
        affine_band(chi, chi1 - r, chi1),
        affine_band(chi, chi - chi2, chi - chi2 + r),
    ];

    let mut window = RatInterval::open_unit();
    for band in bands.into_iter().flatten() {
        window = window.intersect(&band);
    }
    Ok(window)
}
