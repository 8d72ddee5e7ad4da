//! Exact admissible set of constant controllers.
//!
//! For `c = y0`, every closed-loop coefficient is affine in `y0`. Between
//! consecutive roots of those affine functions the sign pattern, and hence
//! the degree, is fixed; for polynomials of degree at most two the Hurwitz
//! verdict depends on nothing else. One exact test per open cell plus one
//! per critical point therefore decides the whole line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, Rational, TransferFunction};
use crate::champagne::{gcp_plants, GcpInstance, Variant};
use crate::error::{Error, Result};
use crate::feedback::{simultaneously_stabilizes, PlantSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Bound {
    NegInf,
    PosInf,
    Open(Rational),
    Closed(Rational),
}

/// A connected piece of the real line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub lo: Bound,
    pub hi: Bound,
}

impl Segment {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Segment {
            lo: Bound::Open(lo),
            hi: Bound::Open(hi),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Open(a) => x > a,
            Bound::Closed(a) => x >= a,
        };
        let below = match &self.hi {
            Bound::PosInf => true,
            Bound::NegInf => false,
            Bound::Open(b) => x < b,
            Bound::Closed(b) => x <= b,
        };
        above && below
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::NegInf => write!(f, "(-inf")?,
            Bound::Open(a) => write!(f, "({a}")?,
            Bound::Closed(a) => write!(f, "[{a}")?,
            Bound::PosInf => write!(f, "(+inf")?,
        }
        match &self.hi {
            Bound::PosInf => write!(f, ", +inf)"),
            Bound::Open(b) => write!(f, ", {b})"),
            Bound::Closed(b) => write!(f, ", {b}]"),
            Bound::NegInf => write!(f, ", -inf)"),
        }
    }
}

/// Finite union of disjoint segments in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSet {
    pub segments: Vec<Segment>,
}

impl RealSet {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.segments.iter().any(|s| s.contains(x))
    }

    pub fn is_all_reals(&self) -> bool {
        self.segments
            == [Segment {
                lo: Bound::NegInf,
                hi: Bound::PosInf,
            }]
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("empty");
        }
        let parts: Vec<String> = self.segments.iter().map(Segment::to_string).collect();
        f.write_str(&parts.join(" U "))
    }
}

/// Admissible constant controllers for the continuous first-variant family.
pub fn exact_range_deg0(delta: &Rational) -> Result<RealSet> {
    constant_controller_range(&gcp_plants(&GcpInstance::new(
        delta.clone(),
        Variant::Theorem1,
        Domain::Continuous,
    )))
}

/// Exact set of `y0` for which `c = y0` stabilizes every plant. Requires a
/// continuous plant set whose closed loops have degree at most two.
pub fn constant_controller_range(plants: &PlantSet) -> Result<RealSet> {
    if plants.domain() != Domain::Continuous {
        return Err(Error::InvalidArgument(
            "constant-controller ranges need continuous plants".into(),
        ));
    }
    let mut critical: Vec<Rational> = Vec::new();
    for p in plants.plants() {
        let (n, d) = (p.num(), p.den());
        if n.degree().unwrap_or(0).max(d.degree().unwrap_or(0)) > 2 {
            return Err(Error::InvalidArgument(
                "closed loops above degree two are not supported".into(),
            ));
        }
        // Coefficient i of d + y0 n vanishes at y0 = -d_i / n_i.
        for i in 0..=2 {
            let ni = n.coeff(i);
            if !ni.is_zero() {
                critical.push(-(d.coeff(i) / ni));
            }
        }
    }
    critical.sort();
    critical.dedup();

    let ok = |y: &Rational| -> Result<bool> {
        let c = TransferFunction::constant(y.clone(), Domain::Continuous);
        match simultaneously_stabilizes(plants, &c) {
            Ok(cert) => Ok(cert.overall),
            Err(Error::IllPosed) => Ok(false),
            Err(e) => Err(e),
        }
    };
    let one = Rational::one();
    let two = Rational::from_integer(2);
    let cell_sample = |i: usize| -> Rational {
        match (i.checked_sub(1).map(|j| &critical[j]), critical.get(i)) {
            (None, None) => Rational::zero(),
            (None, Some(b)) => b - &one,
            (Some(a), None) => a + &one,
            (Some(a), Some(b)) => (a + b) / &two,
        }
    };

    // Pieces in order: cell 0, point 0, cell 1, ..., cell k.
    let mut segments: Vec<Segment> = Vec::new();
    let mut open: Option<Bound> = None;
    for i in 0..=critical.len() {
        let lower = if i == 0 {
            Bound::NegInf
        } else {
            Bound::Open(critical[i - 1].clone())
        };
        let upper_open = critical
            .get(i)
            .map_or(Bound::PosInf, |b| Bound::Open(b.clone()));
        if ok(&cell_sample(i))? {
            open.get_or_insert(lower);
        } else if let Some(lo) = open.take() {
            segments.push(Segment {
                lo,
                hi: closing_point(lower),
            });
        }
        let Some(pt) = critical.get(i) else {
            if let Some(lo) = open.take() {
                segments.push(Segment { lo, hi: upper_open });
            }
            break;
        };
        if ok(pt)? {
            open.get_or_insert(Bound::Closed(pt.clone()));
        } else if let Some(lo) = open.take() {
            segments.push(Segment { lo, hi: upper_open });
        }
    }
    Ok(RealSet { segments })
}

/// The upper end of a run that stopped at a failing cell whose lower
/// boundary point was accepted: that point closes the segment.
fn closing_point(lower: Bound) -> Bound {
    match lower {
        Bound::Open(a) => Bound::Closed(a),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn example_ranges() {
        let r = exact_range_deg0(&q("3/4")).unwrap();
        assert_eq!(r.segments, vec![Segment::open(q("1/6"), q("1/2"))]);
        assert_eq!(r.to_string(), "(1/6, 1/2)");
        assert!(exact_range_deg0(&q("1/2")).unwrap().is_empty());
        assert!(exact_range_deg0(&q("0")).unwrap().is_all_reals());
    }

    #[test]
    fn closed_form_for_delta_above_half() {
        // max((1-d)/(2d), -1/(2d)) < y0 < min(1/2, 1/(2d)). For d > 2 the
        // lower end is -1/(2d), where the first loop collapses to the
        // constant 2 and the point itself is admissible.
        for d in ["3/5", "1", "2", "5", "9"] {
            let delta = q(d);
            let two_d = &delta * Rational::from_integer(2);
            let hi = Bound::Open(Rational::frac(1, 2).min(two_d.recip().unwrap()));
            let lo = if delta > 2 {
                Bound::Closed(-two_d.recip().unwrap())
            } else {
                Bound::Open((Rational::one() - &delta) / &two_d)
            };
            let r = exact_range_deg0(&delta).unwrap();
            assert_eq!(r.segments, vec![Segment { lo, hi }], "delta = {d}");
        }
    }

    #[test]
    fn accepted_critical_point_closes_segment() {
        // p = s/(s+1): (1 + y0) s + 1, and at y0 = -1 the loop is the constant 1.
        let s = Domain::Continuous;
        let p =
            TransferFunction::new(crate::Poly::x(), crate::Poly::from_i64s(&[1, 1]), s).unwrap();
        let r = constant_controller_range(&PlantSet::new(vec![p]).unwrap()).unwrap();
        assert_eq!(
            r.segments,
            vec![Segment {
                lo: Bound::Closed(q("-1")),
                hi: Bound::PosInf
            }]
        );
        assert_eq!(r.to_string(), "[-1, +inf)");
    }
}
