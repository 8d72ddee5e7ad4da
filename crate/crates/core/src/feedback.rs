//! Closed-loop characteristic polynomials and simultaneous-stabilization
//! certificates.
//!
//! With coprime plant `n/d` and controller `y/x`, the interconnection is
//! internally stable exactly when `x*d + y*n` is stable in the domain's
//! sense, so one polynomial per plant is the whole certificate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, Poly, Rational, TransferFunction};
use crate::error::{Error, Result};
use crate::stability::{is_stable_in, StabilityStatus, StabilityVerdict};

/// A nonempty list of plants sharing one domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TransferFunction>", into = "Vec<TransferFunction>")]
pub struct PlantSet {
    plants: Vec<TransferFunction>,
}

impl PlantSet {
    pub fn new(plants: Vec<TransferFunction>) -> Result<Self> {
        let first = plants.first().ok_or(Error::EmptyPlantSet)?.domain();
        if let Some(p) = plants.iter().find(|p| p.domain() != first) {
            return Err(domain_mismatch(first, p.domain()));
        }
        Ok(PlantSet { plants })
    }

    pub fn plants(&self) -> &[TransferFunction] {
        &self.plants
    }

    pub fn domain(&self) -> Domain {
        self.plants[0].domain()
    }

    pub fn len(&self) -> usize {
        self.plants.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every plant multiplied by `k`.
    pub fn scale(&self, k: &Rational) -> PlantSet {
        PlantSet {
            plants: self.plants.iter().map(|p| p.scale(k)).collect(),
        }
    }
}

impl TryFrom<Vec<TransferFunction>> for PlantSet {
    type Error = Error;
    fn try_from(v: Vec<TransferFunction>) -> Result<Self> {
        PlantSet::new(v)
    }
}

impl From<PlantSet> for Vec<TransferFunction> {
    fn from(p: PlantSet) -> Self {
        p.plants
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantCertificate {
    pub char_poly: Poly,
    pub verdict: StabilityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub per_plant: Vec<PlantCertificate>,
    pub overall: bool,
}

impl Certificate {
    fn from_parts(per_plant: Vec<PlantCertificate>) -> Self {
        let overall = per_plant
            .iter()
            .all(|c| c.verdict.status == StabilityStatus::Stable);
        Certificate { per_plant, overall }
    }
}

pub(crate) fn domain_mismatch(expected: Domain, found: Domain) -> Error {
    Error::DomainMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// `x*d + y*n` for plant `n/d` and controller `y/x`.
pub fn closed_loop_char_poly(
    plant: &TransferFunction,
    controller: &TransferFunction,
) -> Result<Poly> {
    if plant.domain() != controller.domain() {
        return Err(domain_mismatch(plant.domain(), controller.domain()));
    }
    let p = &(controller.den() * plant.den()) + &(controller.num() * plant.num());
    if p.is_zero() {
        return Err(Error::IllPosed);
    }
    Ok(p)
}

/// Characteristic polynomial and its verdict in the plant's domain.
pub fn stabilizes(
    plant: &TransferFunction,
    controller: &TransferFunction,
) -> Result<(Poly, StabilityVerdict)> {
    let p = closed_loop_char_poly(plant, controller)?;
    let v = is_stable_in(&p, plant.domain())?;
    Ok((p, v))
}

/// Certifies `controller` against every plant. Plants are checked in
/// parallel; the certificate keeps plant order.
pub fn simultaneously_stabilizes(
    plants: &PlantSet,
    controller: &TransferFunction,
) -> Result<Certificate> {
    if plants.domain() != controller.domain() {
        return Err(domain_mismatch(plants.domain(), controller.domain()));
    }
    let per_plant = plants
        .plants()
        .par_iter()
        .map(|p| {
            stabilizes(p, controller)
                .map(|(char_poly, verdict)| PlantCertificate { char_poly, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::from_parts(per_plant))
}

/// Certificate of `(k * plants, controller / k)`. The loop gain `p*c` is
/// unchanged, so the verdicts match the unscaled certificate.
pub fn scale_equivalence(
    plants: &PlantSet,
    controller: &TransferFunction,
    k: &Rational,
) -> Result<Certificate> {
    if k.is_zero() {
        return Err(Error::InvalidArgument(
            "scale factor must be nonzero".into(),
        ));
    }
    simultaneously_stabilizes(&plants.scale(k), &controller.scale(&k.recip()?))
}
