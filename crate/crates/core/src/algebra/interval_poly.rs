//! Polynomials whose coefficients are intervals.

use serde::{Deserialize, Serialize};

use super::{Interval, Poly};

/// Ascending interval coefficients. Any point selection of coefficients is a
/// member polynomial; every evaluation encloses the values of all members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalPoly {
    pub coeffs: Vec<Interval>,
}

impl IntervalPoly {
    pub fn new(mut coeffs: Vec<Interval>) -> Self {
        while coeffs.last().is_some_and(|c| c.lo == 0.0 && c.hi == 0.0) {
            coeffs.pop();
        }
        IntervalPoly { coeffs }
    }

    pub fn from_poly(p: &Poly) -> Self {
        IntervalPoly::new(p.coeffs().iter().map(Interval::enclose).collect())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: Interval) -> Interval {
        self.coeffs
            .iter()
            .rev()
            .fold(Interval::point(0.0), |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &IntervalPoly) -> IntervalPoly {
        let n = self.len().max(other.len());
        let zero = Interval::point(0.0);
        IntervalPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(zero);
                    let b = other.coeffs.get(i).copied().unwrap_or(zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntervalPoly) -> IntervalPoly {
        if self.is_empty() || other.is_empty() {
            return IntervalPoly::new(Vec::new());
        }
        let mut out = vec![Interval::point(0.0); self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        IntervalPoly::new(out)
    }

    /// Whether the exact polynomial `p` is a member (coefficient-wise).
    pub fn contains_poly(&self, p: &Poly) -> bool {
        let n = self.len().max(p.coeffs().len());
        (0..n).all(|i| {
            let c = self.coeffs.get(i).copied().unwrap_or(Interval::point(0.0));
            c.contains_rational(&p.coeff(i))
        })
    }
}
