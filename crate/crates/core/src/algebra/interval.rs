//! Closed floating-point intervals with outward rounding.
//!
//! Every operation computes the endpoints in round-to-nearest and then
//! widens each by one ulp, so the result always contains the exact real
//! result of the operation applied to any points of the operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;

#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Panics unless `lo <= hi` (NaN endpoints included).
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Smallest representable enclosure of an exact rational.
    pub fn enclose(r: &Rational) -> Self {
        let x = r.to_f64();
        if !x.is_finite() {
            return if x > 0.0 {
                Interval::new(f64::MAX, f64::INFINITY)
            } else {
                Interval::new(f64::NEG_INFINITY, f64::MIN)
            };
        }
        match Rational::from_f64(x) {
            Ok(exact) if &exact == r => Interval::point(x),
            _ => Interval {
                lo: x.next_down(),
                hi: x.next_up(),
            },
        }
    }

    pub fn enclose_range(lo: &Rational, hi: &Rational) -> Self {
        Interval::enclose(lo).hull(&Interval::enclose(hi))
    }

    fn widened(lo: f64, hi: f64) -> Self {
        // NaN only arises from inf - inf or 0 * inf; fall back to everything.
        if lo.is_nan() || hi.is_nan() {
            return Interval::entire();
        }
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn entire() -> Self {
        Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        let e = Interval::enclose(r);
        self.lo <= e.lo && e.hi <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn is_nonpositive(&self) -> bool {
        self.hi <= 0.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0.0
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo, hi: m },
            Interval { lo: m, hi: self.hi },
        )
    }

    /// Quotient enclosure; `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &Interval) -> Option<Interval> {
        if rhs.contains_zero() {
            return None;
        }
        let c = [
            self.lo / rhs.lo,
            self.lo / rhs.hi,
            self.hi / rhs.lo,
            self.hi / rhs.hi,
        ];
        Some(Self::widened(min4(c), max4(c)))
    }
}

fn min4(c: [f64; 4]) -> f64 {
    c.into_iter().fold(f64::INFINITY, f64::min)
}

fn max4(c: [f64; 4]) -> f64 {
    c.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::widened(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        // Exact zeros stay exact so that structurally absent terms do not
        // pick up spurious width.
        if (self.lo == 0.0 && self.hi == 0.0) || (rhs.lo == 0.0 && rhs.hi == 0.0) {
            return Interval::point(0.0);
        }
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        Interval::widened(min4(c), max4(c))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_contains_rational() {
        let third = Rational::frac(1, 3);
        let e = Interval::enclose(&third);
        assert!(e.lo < 1.0 / 3.0 + 1e-15 && e.hi > 1.0 / 3.0 - 1e-15);
        assert!(e.contains_rational(&third));
        assert_eq!(
            Interval::enclose(&Rational::frac(1, 4)),
            Interval::point(0.25)
        );
    }

    #[test]
    fn arithmetic_widens_outward() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        let s = a + b;
        assert!(s.lo < 0.30000000000000004 && s.hi > 0.3);
        let p = Interval::new(-1.0, 2.0) * Interval::new(-3.0, 0.5);
        assert!(p.lo <= -6.0 && p.hi >= 3.0);
        assert_eq!(
            Interval::point(0.0) * Interval::entire(),
            Interval::point(0.0)
        );
    }

    #[test]
    fn division_requires_zero_free_divisor() {
        assert!(Interval::point(1.0)
            .checked_div(&Interval::new(-1.0, 1.0))
            .is_none());
        let q = Interval::point(1.0)
            .checked_div(&Interval::point(3.0))
            .unwrap();
        assert!(q.contains(1.0 / 3.0));
    }

    #[test]
    fn sign_predicates() {
        assert!(Interval::new(1.0, 2.0).is_positive());
        assert!(Interval::new(-2.0, -1.0).is_negative());
        assert!(Interval::new(-2.0, 0.0).is_nonpositive());
        assert!(!Interval::new(-1.0, 1.0).is_positive());
    }
}
