//! Rational transfer functions in reduced form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Continuous time (variable `s`) or discrete time (variable `z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "s")]
    Continuous,
    #[serde(rename = "z")]
    Discrete,
}

impl Domain {
    pub fn var(self) -> &'static str {
        match self {
            Domain::Continuous => "s",
            Domain::Discrete => "z",
        }
    }

    pub fn other(self) -> Domain {
        match self {
            Domain::Continuous => Domain::Discrete,
            Domain::Discrete => Domain::Continuous,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.var())
    }
}

impl std::str::FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "s" | "continuous" => Ok(Domain::Continuous),
            "z" | "discrete" => Ok(Domain::Discrete),
            other => Err(Error::InvalidArgument(format!(
                "unknown domain `{other}` (use s or z)"
            ))),
        }
    }
}

/// `num / den` with coprime numerator and denominator and a monic
/// denominator, so two transfer functions are equal exactly when their
/// representations are. The zero function is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTransferFunction")]
pub struct TransferFunction {
    num: Poly,
    den: Poly,
    domain: Domain,
}

#[derive(Deserialize)]
struct RawTransferFunction {
    num: Poly,
    den: Poly,
    domain: Domain,
}

impl TryFrom<RawTransferFunction> for TransferFunction {
    type Error = Error;
    fn try_from(raw: RawTransferFunction) -> Result<Self> {
        TransferFunction::new(raw.num, raw.den, raw.domain)
    }
}

impl TransferFunction {
    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly, domain: Domain) -> Result<Self> {
        reduce(&num, &den, domain)
    }

    pub fn from_poly(p: Poly, domain: Domain) -> Self {
        TransferFunction {
            num: p,
            den: Poly::one(),
            domain,
        }
    }

    pub fn constant(c: Rational, domain: Domain) -> Self {
        TransferFunction::from_poly(Poly::constant(c), domain)
    }

    pub fn zero(domain: Domain) -> Self {
        TransferFunction::from_poly(Poly::zero(), domain)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`.
    pub fn order(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn is_proper(&self) -> bool {
        self.num.degree().unwrap_or(0) <= self.den.degree().unwrap_or(0)
    }

    /// `k * self`.
    pub fn scale(&self, k: &Rational) -> TransferFunction {
        if k.is_zero() {
            return TransferFunction::zero(self.domain);
        }
        TransferFunction {
            num: self.num.scale(k),
            den: self.den.clone(),
            domain: self.domain,
        }
    }

    pub fn display(&self) -> String {
        let v = self.domain.var();
        if self.den == Poly::one() {
            self.num.display_in(v)
        } else {
            format!(
                "({}) / ({})",
                self.num.display_in(v),
                self.den.display_in(v)
            )
        }
    }
}

impl fmt::Debug for TransferFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Cancels the common factor of `num` and `den` and makes the denominator
/// monic.
pub fn reduce(num: &Poly, den: &Poly, domain: Domain) -> Result<TransferFunction> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok(TransferFunction::zero(domain));
    }
    let g = num.gcd(den)?;
    let (n, d) = if g.is_constant() {
        (num.clone(), den.clone())
    } else {
        (num.exact_div(&g)?, den.exact_div(&g)?)
    };
    let lead = d.leading().expect("nonzero denominator").recip()?;
    Ok(TransferFunction {
        num: n.scale(&lead),
        den: d.scale(&lead),
        domain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn reduce_examples() {
        let s = Domain::Continuous;
        let tf = reduce(&p(&[-1, 0, 1]), &p(&[-1, 1]), s).unwrap();
        assert_eq!(tf.num(), &p(&[1, 1]));
        assert_eq!(tf.den(), &Poly::one());

        let tf = reduce(&Poly::zero(), &p(&[5, 1]), s).unwrap();
        assert!(tf.is_zero());
        assert_eq!(tf.den(), &Poly::one());

        let tf = reduce(&p(&[-2, 2]), &p(&[-1, -1]), s).unwrap();
        assert_eq!(tf.num(), &p(&[2, -2]));
        assert_eq!(tf.den(), &p(&[1, 1]));

        assert_eq!(
            reduce(&p(&[1]), &Poly::zero(), s),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn json_shape() {
        let tf = TransferFunction::new(p(&[1]), p(&[3, 1]), Domain::Continuous).unwrap();
        let json = serde_json::to_string(&tf).unwrap();
        assert_eq!(json, r#"{"num":["1"],"den":["3","1"],"domain":"s"}"#);
        let back: TransferFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tf);
        // Deserialization reduces.
        let raw = r#"{"num":["-1","0","1"],"den":["-1","1"],"domain":"z"}"#;
        let tf: TransferFunction = serde_json::from_str(raw).unwrap();
        assert_eq!(tf.num(), &p(&[1, 1]));
        assert!(
            serde_json::from_str::<TransferFunction>(r#"{"num":["1"],"den":[],"domain":"s"}"#)
                .is_err()
        );
    }
}
