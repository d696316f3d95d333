//! Exact rational numbers and endpoint-flagged intervals.
//!
//! Every slope, weight and window in this crate is a [`Rat`]: a normalized
//! fraction of `i128` integers with a positive denominator. Arithmetic is
//! exact; an operation that would overflow the backing integers panics
//! instead of wrapping, so a result is either correct or the computation
//! aborts.
//!
//! [`RatInterval`] is a possibly-empty interval with independent open/closed
//! flags on each endpoint, which is what mixed strict/non-strict inequality
//! systems produce.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number, always in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(Ratio<i128>);

impl Rat {
    /// Builds `numer/denom`, normalizing sign and reducing by the gcd.
    ///
    /// Panics if `denom == 0`.
    pub fn new(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "rational denominator must be nonzero");
        Rat(Ratio::new(numer, denom))
    }

    pub const fn zero() -> Self {
        Rat(Ratio::new_raw(0, 1))
    }

    pub const fn one() -> Self {
        Rat(Ratio::new_raw(1, 1))
    }

    pub fn from_int(n: i128) -> Self {
        Rat(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    /// The mediant `(p1+p2)/(q1+q2)` of the reduced forms. For `a < b` it
    /// lies strictly between them, which makes it a convenient sample point
    /// inside a window.
    pub fn mediant(a: Rat, b: Rat) -> Rat {
        let numer = a
            .numer()
            .checked_add(b.numer())
            .expect("rational overflow in mediant");
        let denom = a
            .denom()
            .checked_add(b.denom())
            .expect("rational overflow in mediant");
        Rat::new(numer, denom)
    }

    /// Total order comparison, consistent with the real-number order.
    pub fn cmp_exact(&self, other: &Rat) -> Ordering {
        self.cmp(other)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n as i128)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_add(&rhs.0).expect("rational overflow in +"))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_sub(&rhs.0).expect("rational overflow in -"))
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0.checked_mul(&rhs.0).expect("rational overflow in *"))
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rat(self.0.checked_div(&rhs.0).expect("rational overflow in /"))
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat::new(-self.numer(), self.denom())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when parsing a `"p/q"` string fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRatError {
    #[error("malformed rational `{0}`: expected `p` or `p/q`")]
    Malformed(String),
    #[error("rational denominator must be nonzero in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let (numer_text, denom_text) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let numer: i128 = numer_text
            .parse()
            .map_err(|_| ParseRatError::Malformed(s.to_string()))?;
        let denom: i128 = match denom_text {
            Some(d) => d
                .parse()
                .map_err(|_| ParseRatError::Malformed(s.to_string()))?,
            None => 1,
        };
        if denom == 0 {
            return Err(ParseRatError::ZeroDenominator(s.to_string()));
        }
        Ok(Rat::new(numer, denom))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// A possibly-empty interval of rationals with per-endpoint closure flags.
///
/// The empty interval has a single canonical representation, so derived
/// equality is set equality. Nonempty intervals satisfy `lo <= hi`, and a
/// degenerate interval `lo == hi` is only representable with both endpoints
/// closed (anything else normalizes to empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatInterval {
    bounds: Option<Bounds>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct Bounds {
    lo: Rat,
    lo_closed: bool,
    hi: Rat,
    hi_closed: bool,
}

impl RatInterval {
    pub const fn empty() -> Self {
        RatInterval { bounds: None }
    }

    /// Builds the interval with the given endpoints and closure flags,
    /// normalizing degenerate data to the empty interval.
    pub fn new(lo: Rat, lo_closed: bool, hi: Rat, hi_closed: bool) -> Self {
        match lo.cmp(&hi) {
            Ordering::Greater => RatInterval::empty(),
            Ordering::Equal if !(lo_closed && hi_closed) => RatInterval::empty(),
            _ => RatInterval {
                bounds: Some(Bounds {
                    lo,
                    lo_closed,
                    hi,
                    hi_closed,
                }),
            },
        }
    }

    pub fn closed(lo: Rat, hi: Rat) -> Self {
        RatInterval::new(lo, true, hi, true)
    }

    pub fn open(lo: Rat, hi: Rat) -> Self {
        RatInterval::new(lo, false, hi, false)
    }

    /// The open unit interval `(0, 1)` of admissible polarization weights.
    pub fn open_unit() -> Self {
        RatInterval::open(Rat::zero(), Rat::one())
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn lo(&self) -> Option<Rat> {
        self.bounds.map(|b| b.lo)
    }

    pub fn hi(&self) -> Option<Rat> {
        self.bounds.map(|b| b.hi)
    }

    pub fn lo_closed(&self) -> Option<bool> {
        self.bounds.map(|b| b.lo_closed)
    }

    pub fn hi_closed(&self) -> Option<bool> {
        self.bounds.map(|b| b.hi_closed)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self.bounds {
            None => false,
            Some(b) => {
                let above = match x.cmp(&b.lo) {
                    Ordering::Greater => true,
                    Ordering::Equal => b.lo_closed,
                    Ordering::Less => false,
                };
                let below = match x.cmp(&b.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => b.hi_closed,
                    Ordering::Greater => false,
                };
                above && below
            }
        }
    }

    /// Set-theoretic intersection. At a shared endpoint value the result is
    /// closed only when both inputs are.
    pub fn intersect(&self, other: &RatInterval) -> RatInterval {
        let (a, b) = match (self.bounds, other.bounds) {
            (Some(a), Some(b)) => (a, b),
            _ => return RatInterval::empty(),
        };
        let (lo, lo_closed) = match a.lo.cmp(&b.lo) {
            Ordering::Greater => (a.lo, a.lo_closed),
            Ordering::Less => (b.lo, b.lo_closed),
            Ordering::Equal => (a.lo, a.lo_closed && b.lo_closed),
        };
        let (hi, hi_closed) = match a.hi.cmp(&b.hi) {
            Ordering::Less => (a.hi, a.hi_closed),
            Ordering::Greater => (b.hi, b.hi_closed),
            Ordering::Equal => (a.hi, a.hi_closed && b.hi_closed),
        };
        RatInterval::new(lo, lo_closed, hi, hi_closed)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds {
            None => write!(f, "(empty)"),
            Some(b) => write!(
                f,
                "{}{}, {}{}",
                if b.lo_closed { '[' } else { '(' },
                b.lo,
                b.hi,
                if b.hi_closed { ']' } else { ')' },
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn comparison_matches_real_order() {
        assert_eq!(r(3, 7).cmp_exact(&r(4, 7)), Ordering::Less);
        assert_eq!(r(2, 4).cmp_exact(&r(1, 2)), Ordering::Equal);
        assert_eq!(r(-1, 2).cmp_exact(&r(-2, 3)), Ordering::Greater);
    }

    #[test]
    fn normalization() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(3, -6), r(-1, 2));
        assert_eq!(r(3, -6).denom(), 2);
        assert_eq!(r(0, 5), Rat::zero());
    }

    #[test]
    fn display_omits_unit_denominator() {
        assert_eq!(r(7, 1).to_string(), "7");
        assert_eq!(r(-3, 7).to_string(), "-3/7");
        assert_eq!(r(4, 2).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["3/7", "-3/7", "2", "-2", "0"] {
            let v: Rat = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
        }
        assert_eq!("2/4".parse::<Rat>().unwrap(), r(1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("one half".parse::<Rat>().is_err());
    }

    #[test]
    fn mediant_lies_between() {
        assert_eq!(Rat::mediant(r(3, 7), r(4, 7)), r(1, 2));
        assert_eq!(Rat::mediant(r(8, 23), r(11, 23)), r(19, 46));
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_aborts() {
        let huge = Rat::new(i128::MAX, 1);
        let _ = huge + huge;
    }

    #[test]
    fn intersect_examples() {
        let a = RatInterval::closed(r(2, 5), r(3, 5));
        let b = RatInterval::closed(r(3, 7), r(4, 7));
        assert_eq!(a.intersect(&b), b);

        let unit = RatInterval::closed(Rat::zero(), Rat::one());
        assert_eq!(unit.intersect(&RatInterval::empty()), RatInterval::empty());

        let open_left = RatInterval::open(Rat::zero(), r(1, 2));
        let closed_right = RatInterval::closed(r(1, 2), Rat::one());
        assert!(open_left.intersect(&closed_right).is_empty());
    }

    #[test]
    fn degenerate_constructions() {
        assert!(RatInterval::new(r(1, 2), true, r(1, 3), true).is_empty());
        assert!(RatInterval::new(r(1, 2), true, r(1, 2), false).is_empty());
        let point = RatInterval::closed(r(1, 2), r(1, 2));
        assert!(!point.is_empty());
        assert!(point.contains(&r(1, 2)));
    }

    #[test]
    fn serde_as_string() {
        let v = r(-3, 7);
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"-3/7\"");
        let back: Rat = serde_json::from_str("\"-3/7\"").unwrap();
        assert_eq!(back, v);
    }

    fn rat_strategy() -> impl Strategy<Value = Rat> {
        (-200i128..=200, 1i128..=60).prop_map(|(n, d)| Rat::new(n, d))
    }

    fn interval_strategy() -> impl Strategy<Value = RatInterval> {
        prop_oneof![
            1 => Just(RatInterval::empty()),
            9 => (rat_strategy(), rat_strategy(), any::<bool>(), any::<bool>())
                .prop_map(|(a, b, lc, hc)| RatInterval::new(a, lc, b, hc)),
        ]
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in rat_strategy(), b in rat_strategy()) {
            prop_assert_eq!((a + b) - b, a);
        }

        #[test]
        fn construction_is_normalized(a in rat_strategy()) {
            prop_assert_eq!(Rat::new(a.numer(), a.denom()), a);
            prop_assert!(a.denom() > 0);
            prop_assert_eq!(num_integer::gcd(a.numer().unsigned_abs(), a.denom().unsigned_abs()), if a.is_zero() { a.denom().unsigned_abs() } else { 1 });
        }

        #[test]
        fn intersect_commutative_associative_idempotent(
            a in interval_strategy(),
            b in interval_strategy(),
            c in interval_strategy(),
        ) {
            prop_assert_eq!(a.intersect(&b), b.intersect(&a));
            prop_assert_eq!(a.intersect(&b).intersect(&c), a.intersect(&b.intersect(&c)));
            prop_assert_eq!(a.intersect(&a), a);
        }

        #[test]
        fn intersect_membership(
            a in interval_strategy(),
            b in interval_strategy(),
            x in rat_strategy(),
        ) {
            let both = a.contains(&x) && b.contains(&x);
            prop_assert_eq!(a.intersect(&b).contains(&x), both);
        }
    }
}
