//! Branch-and-prune search for a fixed-structure simultaneous stabilizer.
//!
//! Boxes are explored best first, ranked by the worst numeric spectral
//! abscissa over the plants at the box midpoint. A box is discarded once the
//! interval test disproves stability for some plant; candidate points are
//! accepted only after exact certification.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::template::{ControllerTemplate, ParamBox, SearchConfig, SplitStrategy};
use crate::algebra::{Domain, Interval, IntervalPoly, Poly, Rational, TransferFunction};
use crate::error::{Error, Result};
use crate::feedback::{simultaneously_stabilizes, Certificate, PlantSet};
use crate::numeric::spectral_abscissa;
use crate::parallel;
use crate::stability::{interval_hurwitz, IntervalProof};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchStatus {
    Found {
        controller: TransferFunction,
        certificate: Certificate,
    },
    NotFoundAtBudget,
    /// Every box was discarded by an interval disproof.
    BoxInfeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub status: SearchStatus,
    /// Boxes processed.
    pub explored: usize,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.status, SearchStatus::Found { .. })
    }

    pub fn controller(&self) -> Option<&TransferFunction> {
        match &self.status {
            SearchStatus::Found { controller, .. } => Some(controller),
            _ => None,
        }
    }
}

/// Coefficients of one plant's closed-loop polynomial as an affine function
/// of the template parameters, already moved to the Hurwitz domain.
#[derive(Clone, Debug)]
pub(crate) struct AffineMap {
    #[cfg_attr(not(test), allow(dead_code))]
    base: Vec<Rational>,
    #[cfg_attr(not(test), allow(dead_code))]
    cols: Vec<Vec<Rational>>,
    base_f: Vec<f64>,
    cols_f: Vec<Vec<f64>>,
    base_i: Vec<Interval>,
    cols_i: Vec<Vec<Interval>>,
}

fn padded(p: &Poly, len: usize) -> Vec<Rational> {
    (0..len).map(|i| p.coeff(i)).collect()
}

/// `sum_i c_i (s-1)^i (s+1)^(n-i)`: the Schur-to-Hurwitz map at a fixed
/// degree `n`, linear in the coefficients.
fn cayley_fixed(c: &[Rational], basis: &[Poly]) -> Vec<Rational> {
    let n = basis.len();
    let mut acc = Poly::zero();
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero() {
            acc = &acc + &b.scale(ci);
        }
    }
    padded(&acc, n)
}

impl AffineMap {
    pub(crate) fn new(plant: &TransferFunction, tpl: &ControllerTemplate) -> AffineMap {
        let (n, d) = (plant.num(), plant.den());
        let len = (n.degree().unwrap_or(0) + tpl.num_degree)
            .max(d.degree().unwrap_or(0) + tpl.den_degree)
            + 1;
        let mut cols: Vec<Vec<Rational>> = (0..=tpl.num_degree)
            .map(|i| padded(&n.mul_x_pow(i), len))
            .collect();
        let den_terms = tpl.den_degree + usize::from(!tpl.monic_den);
        cols.extend((0..den_terms).map(|j| padded(&d.mul_x_pow(j), len)));
        let mut base = if tpl.monic_den {
            padded(&d.mul_x_pow(tpl.den_degree), len)
        } else {
            vec![Rational::zero(); len]
        };
        if plant.domain() == Domain::Discrete {
            let one = Rational::one();
            let basis: Vec<Poly> = (0..len)
                .map(|i| {
                    &Poly::linear(one.clone(), -one.clone()).pow(i as u32)
                        * &Poly::linear(one.clone(), one.clone()).pow((len - 1 - i) as u32)
                })
                .collect();
            base = cayley_fixed(&base, &basis);
            cols = cols.iter().map(|c| cayley_fixed(c, &basis)).collect();
        }
        let to_f = |v: &[Rational]| v.iter().map(Rational::to_f64).collect::<Vec<_>>();
        let to_i = |v: &[Rational]| v.iter().map(Interval::enclose).collect::<Vec<_>>();
        AffineMap {
            base_f: to_f(&base),
            cols_f: cols.iter().map(|c| to_f(c)).collect(),
            base_i: to_i(&base),
            cols_i: cols.iter().map(|c| to_i(c)).collect(),
            base,
            cols,
        }
    }

    pub(crate) fn eval_f64(&self, theta: &[f64]) -> Vec<f64> {
        let mut out = self.base_f.clone();
        for (col, &t) in self.cols_f.iter().zip(theta) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += c * t;
            }
        }
        out
    }

    pub(crate) fn eval_box(&self, bx: &ParamBox) -> IntervalPoly {
        let mut out = self.base_i.clone();
        for (col, &t) in self.cols_i.iter().zip(bx.bounds()) {
            for (o, &c) in out.iter_mut().zip(col) {
                *o = *o + c * t;
            }
        }
        IntervalPoly::new(out)
    }

    #[cfg(test)]
    pub(crate) fn eval_exact(&self, theta: &[Rational]) -> Poly {
        let mut out = self.base.clone();
        for (col, t) in self.cols.iter().zip(theta) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += &(c * t);
            }
        }
        Poly::new(out)
    }
}

/// Worst spectral abscissa over the plants; lower is better.
fn score(maps: &[AffineMap], theta: &[f64]) -> f64 {
    let s = maps
        .iter()
        .map(|m| spectral_abscissa(&m.eval_f64(theta)))
        .fold(f64::NEG_INFINITY, f64::max);
    if s.is_nan() {
        f64::INFINITY
    } else {
        s
    }
}

struct Node {
    bx: ParamBox,
    score: f64,
    index: u64,
    depth: u32,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Max-heap: the best node has the lowest score, ties by lowest index.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .score
            .total_cmp(&self.score)
            .then_with(|| other.index.cmp(&self.index))
    }
}

enum BoxResult {
    Found(TransferFunction, Certificate),
    Pruned,
    Split(Vec<(ParamBox, f64)>),
    TooSmall,
}

struct Searcher<'a> {
    plants: &'a PlantSet,
    tpl: ControllerTemplate,
    cfg: &'a SearchConfig,
    maps: Vec<AffineMap>,
    min_width: f64,
    max_den: BigInt,
}

/// Candidates with a numeric score above this are not worth an exact check.
const SCORE_GATE: f64 = 1e-9;

impl Searcher<'_> {
    fn certify(&self, theta: &[Rational]) -> Option<(TransferFunction, Certificate)> {
        let c = self.tpl.controller(theta, self.plants.domain()).ok()?;
        let cert = simultaneously_stabilizes(self.plants, &c).ok()?;
        cert.overall.then_some((c, cert))
    }

    /// Rounded point first, then the exact binary value.
    fn try_point(&self, theta: &[f64]) -> Option<(TransferFunction, Certificate)> {
        let exact: Vec<Rational> = theta
            .iter()
            .map(|&t| Rational::from_f64(t).ok())
            .collect::<Option<_>>()?;
        let rounded: Vec<Rational> = exact
            .iter()
            .map(|t| t.best_approximation(&self.max_den))
            .collect();
        self.certify(&rounded).or_else(|| {
            if rounded != exact {
                self.certify(&exact)
            } else {
                None
            }
        })
    }

    fn process(&self, node: &Node) -> BoxResult {
        let mut all_proved = true;
        for m in &self.maps {
            match interval_hurwitz(&m.eval_box(&node.bx)) {
                IntervalProof::Disproved => return BoxResult::Pruned,
                IntervalProof::Unknown => all_proved = false,
                IntervalProof::Proved => {}
            }
        }
        let mid = node.bx.midpoint();
        let mut candidates = vec![(node.score, mid.clone())];
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.cfg.seed ^ node.index.wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        for _ in 0..self.cfg.probes {
            let p: Vec<f64> = node
                .bx
                .bounds()
                .iter()
                .map(|b| {
                    if b.width() > 0.0 {
                        rng.random_range(b.lo..=b.hi)
                    } else {
                        b.lo
                    }
                })
                .collect();
            candidates.push((score(&self.maps, &p), p));
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (s, p) in candidates.iter().take(2) {
            if all_proved || *s < SCORE_GATE {
                if let Some((c, cert)) = self.try_point(p) {
                    return BoxResult::Found(c, cert);
                }
            }
        }
        if node.bx.max_width() < self.min_width {
            return BoxResult::TooSmall;
        }
        let axis = match self.cfg.splits {
            SplitStrategy::Widest => node.bx.widest(),
            SplitStrategy::RoundRobin => node.depth as usize % node.bx.dim(),
        };
        let (l, r) = node.bx.split(axis);
        let children = [l, r]
            .into_iter()
            .map(|b| {
                let s = score(&self.maps, &b.midpoint());
                (b, s)
            })
            .collect();
        BoxResult::Split(children)
    }
}

const BATCH: usize = 32;

/// Searches `bx` for parameters of `tpl` that simultaneously stabilize
/// `plants`. Deterministic for a given configuration regardless of the
/// number of worker threads.
pub fn feasibility_search(
    plants: &PlantSet,
    tpl: &ControllerTemplate,
    bx: &ParamBox,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    if bx.dim() != tpl.param_count() {
        return Err(Error::DimensionMismatch {
            expected: tpl.param_count(),
            found: bx.dim(),
        });
    }
    let searcher = Searcher {
        plants,
        tpl: *tpl,
        cfg,
        maps: plants
            .plants()
            .iter()
            .map(|p| AffineMap::new(p, tpl))
            .collect(),
        min_width: cfg.min_width.to_f64(),
        max_den: BigInt::from(1_000_000u32),
    };
    parallel::install(|| run(&searcher, bx))
}

fn run(searcher: &Searcher<'_>, bx: &ParamBox) -> Result<SearchOutcome> {
    let max_boxes = searcher.cfg.max_boxes;
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        score: score(&searcher.maps, &bx.midpoint()),
        bx: bx.clone(),
        index: 0,
        depth: 0,
    });
    let mut next_index = 1u64;
    let mut explored = 0usize;
    let mut unresolved = false;
    while !heap.is_empty() && explored < max_boxes {
        let take = BATCH.min(max_boxes - explored).min(heap.len());
        let batch: Vec<Node> = (0..take).filter_map(|_| heap.pop()).collect();
        let results: Vec<BoxResult> = batch.par_iter().map(|n| searcher.process(n)).collect();
        for (node, res) in batch.iter().zip(results) {
            explored += 1;
            match res {
                BoxResult::Found(controller, certificate) => {
                    return Ok(SearchOutcome {
                        status: SearchStatus::Found {
                            controller,
                            certificate,
                        },
                        explored,
                    });
                }
                BoxResult::Pruned => {}
                BoxResult::TooSmall => unresolved = true,
                BoxResult::Split(children) => {
                    for (b, s) in children {
                        heap.push(Node {
                            bx: b,
                            score: s,
                            index: next_index,
                            depth: node.depth + 1,
                        });
                        next_index += 1;
                    }
                }
            }
        }
    }
    let status = if heap.is_empty() && !unresolved {
        SearchStatus::BoxInfeasible
    } else {
        SearchStatus::NotFoundAtBudget
    };
    Ok(SearchOutcome { status, explored })
}
