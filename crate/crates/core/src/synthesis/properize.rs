//! Making improper stabilizers proper by adding small high-order
//! denominator terms, and the underlying single-polynomial construction.

use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, Poly, Rational, TransferFunction};
use crate::error::{Error, Result};
use crate::feedback::{domain_mismatch, simultaneously_stabilizes, Certificate, PlantSet};
use crate::stability::is_hurwitz;

/// Halvings tried before giving up.
const MAX_HALVINGS: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properized {
    pub controller: TransferFunction,
    /// Denominator as built: the original monic denominator plus the added
    /// terms, before any normalization.
    pub denominator: Poly,
    /// Added coefficients for degrees `m+1 ..= n`.
    pub eps: Vec<Rational>,
    pub certificate: Certificate,
}

/// Adds `eps_i s^i` for `i = m+1 ..= target_degree` to the denominator of
/// `c` (of degree `m`). With `j = i - m`, `eps_j` starts at `eps0^j` and
/// is divided by `2^(j(j+1)/2)` after each failed exact certification, so
/// higher terms shrink faster and a geometric (marginal) start is left
/// after one step.
pub fn properize(
    c: &TransferFunction,
    plants: &PlantSet,
    target_degree: usize,
    eps0: &Rational,
) -> Result<Properized> {
    if c.domain() != Domain::Continuous || plants.domain() != Domain::Continuous {
        return Err(domain_mismatch(Domain::Continuous, Domain::Discrete));
    }
    if !eps0.is_positive() {
        return Err(Error::InvalidArgument("eps0 must be positive".into()));
    }
    let m = c.den().degree().unwrap_or(0);
    let num_deg = c.num().degree().unwrap_or(0);
    if target_degree < m.max(num_deg) {
        return Err(Error::InvalidArgument(format!(
            "target degree {target_degree} is below the controller order {}",
            m.max(num_deg)
        )));
    }
    let base = simultaneously_stabilizes(plants, c)?;
    if !base.overall {
        return Err(Error::ProperizeFailed(
            "the controller does not stabilize the plant set".into(),
        ));
    }
    let k = target_degree - m;
    let base = eps0.clone().min(Rational::one());
    let mut eps: Vec<Rational> = (1..=k).map(|j| base.pow(j as i32)).collect();
    let halving: Vec<Rational> = (1..=k)
        .map(|j| Rational::frac(1, 2).pow((j * (j + 1) / 2) as i32))
        .collect();
    let mut last = String::new();
    for _ in 0..=MAX_HALVINGS {
        let extra = Poly::new(
            std::iter::repeat_n(Rational::zero(), m + 1)
                .chain(eps.iter().cloned())
                .collect(),
        );
        let denominator = c.den() + &extra;
        let controller =
            TransferFunction::new(c.num().clone(), denominator.clone(), Domain::Continuous)?;
        let certificate = simultaneously_stabilizes(plants, &controller)?;
        if certificate.overall {
            return Ok(Properized {
                controller,
                denominator,
                eps,
                certificate,
            });
        }
        last = controller.display();
        for (e, h) in eps.iter_mut().zip(&halving) {
            *e *= h;
        }
    }
    Err(Error::ProperizeFailed(format!(
        "no certified proper controller after {MAX_HALVINGS} halvings; last trial {last}"
    )))
}

/// A Hurwitz polynomial of degree `n` agreeing with `f` below `deg f`:
/// `f + sum eps_i s^i`, adding one term at a time and halving its
/// coefficient from 1 until the result is exactly stable.
pub fn hurwitz_augment_exists(f: &Poly, n: usize) -> Result<Poly> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n <= m {
        return Err(Error::InvalidArgument(format!(
            "target degree {n} must exceed deg f = {m}"
        )));
    }
    if !f.coeffs().iter().all(Rational::is_positive) || !is_hurwitz(f)?.is_stable() {
        return Err(Error::InvalidArgument(
            "f must be Hurwitz stable with positive coefficients".into(),
        ));
    }
    let half = Rational::frac(1, 2);
    let mut g = f.clone();
    for i in m + 1..=n {
        let mut eps = Rational::one();
        let mut halvings = 0;
        loop {
            let trial = &g + &Poly::monomial(eps.clone(), i);
            if is_hurwitz(&trial)?.is_stable() {
                g = trial;
                break;
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                return Err(Error::ProperizeFailed(format!(
                    "no stable term of degree {i} found"
                )));
            }
            eps *= &half;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::champagne::{gcp_plants, GcpInstance, Variant};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gcp(d: &str) -> PlantSet {
        gcp_plants(&GcpInstance::new(
            q(d),
            Variant::Theorem1,
            Domain::Continuous,
        ))
    }

    #[test]
    fn example3_first_trial_certifies() {
        let c = TransferFunction::new(
            Poly::new(vec![q("51/100"), q("1/10")]),
            Poly::one(),
            Domain::Continuous,
        )
        .unwrap();
        let p = properize(&c, &gcp("1/2"), 1, &q("1/10")).unwrap();
        assert_eq!(p.eps, vec![q("1/10")]);
        assert_eq!(p.denominator, Poly::new(vec![q("1"), q("1/10")]));
        assert!(p.controller.is_proper());
    }

    #[test]
    fn unchanged_at_current_degree() {
        let c = TransferFunction::new(
            Poly::from_i64s(&[1]),
            Poly::from_i64s(&[3, 1]),
            Domain::Continuous,
        )
        .unwrap();
        let p = properize(&c, &gcp("3/4"), 1, &q("1/10")).unwrap();
        assert_eq!(p.controller, c);
        assert!(p.eps.is_empty());
    }

    #[test]
    fn example6_cubic() {
        let num = Poly::new(
            ["300001/100000", "50001/10000", "30077/10000", "1037/1000"]
                .iter()
                .map(|s| q(s))
                .collect(),
        );
        let c = TransferFunction::new(num, Poly::one(), Domain::Continuous).unwrap();
        let eps0 = q("1/10000000");
        let p = properize(&c, &gcp("1/7"), 3, &eps0).unwrap();
        assert!(p.certificate.overall);
        assert!(p.eps.iter().all(|e| e.is_positive() && *e <= eps0));
    }

    #[test]
    fn rejects_non_stabilizing_input() {
        let c = TransferFunction::constant(q("1"), Domain::Continuous);
        assert!(properize(&c, &gcp("1/17"), 1, &q("1/10")).is_err());
    }

    #[test]
    fn augment_examples() {
        let g = hurwitz_augment_exists(&Poly::from_i64s(&[1, 2, 1]), 3).unwrap();
        assert_eq!(g.degree(), Some(3));
        assert!(is_hurwitz(&g).unwrap().is_stable());
        // Any eps s^2 + s + 1 with eps > 0 is stable, so the first trial wins.
        let g = hurwitz_augment_exists(&Poly::from_i64s(&[1, 1]), 2).unwrap();
        assert_eq!(g, Poly::from_i64s(&[1, 1, 1]));
        // s^2 + s + 1 plus s^3 is marginal; halving once gives s^3/2.
        let g = hurwitz_augment_exists(&Poly::from_i64s(&[1, 1, 1]), 3).unwrap();
        assert_eq!(g, Poly::new(vec![q("1"), q("1"), q("1"), q("1/2")]));
        let g = hurwitz_augment_exists(&Poly::one(), 1).unwrap();
        assert_eq!(g, Poly::from_i64s(&[1, 1]));
        assert!(hurwitz_augment_exists(&Poly::from_i64s(&[1, -1]), 2).is_err());
    }
}
