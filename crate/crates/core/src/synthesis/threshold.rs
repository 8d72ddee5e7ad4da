//! Bisection on δ for the smallest value at which a template still finds a
//! controller for the continuous first-variant family.
//!
//! Feasibility is assumed monotone in δ. The upper end always carries an
//! exactly certified controller; the lower end only records that the search
//! came back empty within its budget.
//!
//! Near a threshold the admissible coefficients can grow without bound
//! (for `(1,1)` near δ = 1/4 the pole goes to infinity), so the default
//! probe escalates through boxes `[-w, w]^k` for growing `w`.

use serde::{Deserialize, Serialize};

use super::search::{feasibility_search, SearchOutcome};
use super::template::{ControllerTemplate, ParamBox, SearchConfig};
use crate::algebra::{Domain, Rational, TransferFunction};
use crate::champagne::{gcp_plants, GcpInstance, Variant};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub delta: Rational,
    pub found: bool,
    pub explored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdBracket {
    /// No controller found here (evidence only).
    pub lo: Rational,
    /// Certified controller found here.
    pub hi: Rational,
    pub witness: TransferFunction,
    pub probes: Vec<Probe>,
}

/// Half-widths of the default probe boxes, tried in order.
pub const DEFAULT_BOX_WIDTHS: [f64; 4] = [10.0, 100.0, 1_000.0, 10_000.0];

/// Runs the search in each box until one finds a controller. `explored`
/// sums over all boxes tried.
fn probe(
    tpl: &ControllerTemplate,
    delta: &Rational,
    boxes: &[ParamBox],
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let plants = gcp_plants(&GcpInstance::new(
        delta.clone(),
        Variant::Theorem1,
        Domain::Continuous,
    ));
    let mut explored = 0;
    let mut last = None;
    for bx in boxes {
        let mut out = feasibility_search(&plants, tpl, bx, cfg)?;
        explored += out.explored;
        out.explored = explored;
        if out.is_found() {
            return Ok(out);
        }
        last = Some(out);
    }
    last.ok_or_else(|| Error::InvalidArgument("no search boxes".into()))
}

/// Bisection over `[lo, hi]`, each probe escalating through
/// [`DEFAULT_BOX_WIDTHS`].
pub fn delta_threshold(
    tpl: &ControllerTemplate,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    cfg: &SearchConfig,
) -> Result<ThresholdBracket> {
    let boxes = DEFAULT_BOX_WIDTHS
        .iter()
        .map(|&w| ParamBox::uniform(tpl.param_count(), -w, w))
        .collect::<Result<Vec<_>>>()?;
    bisect(tpl, lo, hi, tol, cfg, &boxes)
}

/// Bisection with a single fixed search box.
pub fn delta_threshold_in(
    tpl: &ControllerTemplate,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    cfg: &SearchConfig,
    bx: &ParamBox,
) -> Result<ThresholdBracket> {
    bisect(tpl, lo, hi, tol, cfg, std::slice::from_ref(bx))
}

fn bisect(
    tpl: &ControllerTemplate,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    cfg: &SearchConfig,
    boxes: &[ParamBox],
) -> Result<ThresholdBracket> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!(
            "empty bracket [{lo}, {hi}]"
        )));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut probes = Vec::new();
    let top = probe(tpl, hi, boxes, cfg)?;
    probes.push(Probe {
        delta: hi.clone(),
        found: top.is_found(),
        explored: top.explored,
    });
    let mut witness = top
        .controller()
        .cloned()
        .ok_or_else(|| Error::BadBracket(hi.to_string()))?;
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let two = Rational::from_integer(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        let out = probe(tpl, &mid, boxes, cfg)?;
        probes.push(Probe {
            delta: mid.clone(),
            found: out.is_found(),
            explored: out.explored,
        });
        match out.controller() {
            Some(c) => {
                witness = c.clone();
                hi = mid;
            }
            None => lo = mid,
        }
    }
    Ok(ThresholdBracket {
        lo,
        hi,
        witness,
        probes,
    })
}
