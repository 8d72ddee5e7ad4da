//! Constructive stabilizer for `|δ| > 1/16` built from the extremal function
//!
//! ```text
//! f(z) = z * prod_{n>=1} ((1 + z^(2n)) / (1 + z^(2n-1)))^8
//! ```
//!
//! which vanishes only at the origin, has `f'(0) = 1` and omits one of
//! `±1/16` on the unit disk. With `g(z) = -16δ f(-z/(16δ))` and
//! `h(z) = (g(z) - z)/(2δ z^2)`, the Taylor section `q` of `h` makes both
//! `1 + 2δ z q(z)` and `δ + z + 2δ z^2 q(z)` units once `q` is close enough
//! to `h` on the closed disk. That end condition is verified exactly;
//! floating point only picks the sign convention and reports diagnostics.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, Poly, Rational, TransferFunction};
use crate::champagne::{bilinear_plant, gcp_plants, GcpInstance, Variant};
use crate::error::{Error, Result};
use crate::feedback::{simultaneously_stabilizes, Certificate};
use crate::stability::is_schur;

/// Truncated power series about the origin, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPoly {
    pub coeffs: Vec<Rational>,
}

impl SeriesPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        SeriesPoly { coeffs }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `f(0) = 0` and `f'(0) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.coeff(0).is_zero() && self.coeff(1).is_one()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Rational::to_f64).collect()
    }

    /// Coefficients of `sigma * f(sigma * z)` for `sigma = ±1`.
    pub fn sign_normalized(&self, sigma: i32) -> SeriesPoly {
        if sigma > 0 {
            return self.clone();
        }
        SeriesPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { -c } else { c.clone() })
                .collect(),
        )
    }
}

fn eval(c: &[f64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn square_truncated(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += &a[i] * &a[j];
        }
    }
    out
}

/// Taylor coefficients through degree `k` of the product truncated to `n`
/// factors. Coefficients are integers; factor `n` first contributes at
/// degree `2n`, so the first `2n + 1` coefficients are final.
pub fn extremal_series(n: usize, k: usize) -> Result<SeriesPoly> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "product terms and degree must be positive".into(),
        ));
    }
    // P(z) = prod (1 + z^(2i)) / (1 + z^(2i-1)) through degree k - 1.
    let mut p = vec![BigInt::zero(); k];
    p[0] = BigInt::one();
    for i in 1..=n {
        let up = 2 * i;
        for t in (up..k).rev() {
            let v = p[t - up].clone();
            p[t] += v;
        }
        let down = 2 * i - 1;
        for t in down..k {
            let v = p[t - down].clone();
            p[t] -= v;
        }
    }
    let p8 = square_truncated(&square_truncated(&square_truncated(&p)));
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(p8.into_iter().map(Rational::from_integer));
    Ok(SeriesPoly::new(coeffs))
}

/// Which of `±1/16` the truncated series omits near the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmittedValue {
    /// `+1` when `+1/16` is omitted.
    pub sigma: i32,
    /// Smallest sampled distance from `f` to `sigma/16` on the disk.
    pub clearance: f64,
    pub radius: f64,
    pub winding_plus: i64,
    pub winding_minus: i64,
}

/// Winding number of `f - w` around the circle `|z| = radius`, with
/// adaptive refinement so no sampled step turns by more than 45 degrees.
fn winding(c: &[f64], w: f64, radius: f64, samples: usize) -> i64 {
    let at = |t: f64| eval(c, Complex64::from_polar(radius, t)) - w;
    fn turn(
        at: &dyn Fn(f64) -> Complex64,
        t0: f64,
        t1: f64,
        v0: Complex64,
        v1: Complex64,
        depth: u32,
    ) -> f64 {
        let d = (v1 / v0).arg();
        if d.abs() <= PI / 4.0 || depth == 0 {
            return d;
        }
        let tm = 0.5 * (t0 + t1);
        let vm = at(tm);
        turn(at, t0, tm, v0, vm, depth - 1) + turn(at, tm, t1, vm, v1, depth - 1)
    }
    let m = samples.max(8);
    let mut total = 0.0;
    let mut prev = at(0.0);
    for j in 1..=m {
        let t0 = 2.0 * PI * (j - 1) as f64 / m as f64;
        let t1 = 2.0 * PI * j as f64 / m as f64;
        let v = at(t1);
        total += turn(&at, t0, t1, prev, v, 24);
        prev = v;
    }
    (total / (2.0 * PI)).round() as i64
}

/// Radius of the omitted-value disk. Near `z = +r` the function comes
/// within about `exp(-π²/ln(1/r))` of `1/16`, so the truncation tail has
/// to stay well below that; at `0.4` degree 64 is plenty.
pub const OMITTED_RADIUS: f64 = 0.4;

/// Product factors and degree of the reference series used to pick the
/// omitted sign inside the construction.
const REFERENCE_TERMS: usize = 64;
const REFERENCE_DEGREE: usize = 128;

/// Omitted-value check on the disk of radius [`OMITTED_RADIUS`]. The series
/// must be accurate there; a low-order truncation is not.
pub fn omitted_value_check(f: &SeriesPoly, m: usize) -> Result<OmittedValue> {
    omitted_value_check_at(f, m, OMITTED_RADIUS)
}

/// Decides the omitted sign by winding numbers of `f ∓ 1/16` around
/// `|z| = radius` and reports the clearance over a polar grid.
pub fn omitted_value_check_at(f: &SeriesPoly, m: usize, radius: f64) -> Result<OmittedValue> {
    let c = f.to_f64();
    let wp = winding(&c, 1.0 / 16.0, radius, m);
    let wm = winding(&c, -1.0 / 16.0, radius, m);
    let clearance = |target: f64| -> f64 {
        let rings = (m / 8).max(4);
        let angles = m.max(8);
        let mut best = (eval(&c, Complex64::new(0.0, 0.0)) - target).norm();
        for ri in 1..=rings {
            let r = radius * ri as f64 / rings as f64;
            for a in 0..angles {
                let z = Complex64::from_polar(r, 2.0 * PI * a as f64 / angles as f64);
                best = best.min((eval(&c, z) - target).norm());
            }
        }
        best
    };
    let sigma = match (wp, wm) {
        (0, w) if w != 0 => 1,
        (w, 0) if w != 0 => -1,
        (0, 0) => {
            if clearance(1.0 / 16.0) >= clearance(-1.0 / 16.0) {
                1
            } else {
                -1
            }
        }
        _ => {
            return Err(Error::ConstructionFailed(format!(
                "neither +1/16 nor -1/16 is omitted on |z| < {radius} (windings {wp}, {wm}); \
                 increase the product terms or the truncation degree"
            )))
        }
    };
    Ok(OmittedValue {
        sigma,
        clearance: clearance(sigma as f64 / 16.0),
        radius,
        winding_plus: wp,
        winding_minus: wm,
    })
}

fn check_delta(delta: &Rational) -> Result<()> {
    if delta.abs() <= Rational::frac(1, 16) {
        return Err(Error::InvalidArgument(format!(
            "|delta| must exceed 1/16, got {delta}"
        )));
    }
    Ok(())
}

/// `g_k = -16δ (-1/(16δ))^k f_k` and `h_k = g_{k+2} / (2δ)`, exactly.
pub fn build_g_h(f: &SeriesPoly, delta: &Rational) -> Result<(SeriesPoly, SeriesPoly)> {
    check_delta(delta)?;
    if !f.is_normalized() {
        return Err(Error::InvalidArgument("series must start 0 + z".into()));
    }
    let sixteen_d = delta * Rational::from_integer(16);
    let ratio = -sixteen_d.recip()?;
    let mut scale = -sixteen_d;
    let mut g = Vec::with_capacity(f.coeffs.len());
    for c in &f.coeffs {
        g.push(c * &scale);
        scale *= &ratio;
    }
    let two_d_inv = (delta * Rational::from_integer(2)).recip()?;
    let h = g.iter().skip(2).map(|c| c * &two_d_inv).collect();
    Ok((SeriesPoly::new(g), SeriesPoly::new(h)))
}

/// `min |g(z) + δ|` over `m` points of the unit circle.
pub fn mu_estimate(g: &SeriesPoly, delta: &Rational, m: usize) -> Result<f64> {
    let c = g.to_f64();
    let d = delta.to_f64();
    let m = m.max(1);
    let mut best = f64::INFINITY;
    for j in 0..m {
        let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        best = best.min((eval(&c, z) + d).norm());
    }
    let noise =
        f64::EPSILON * (c.len() as f64 + 1.0) * (c.iter().map(|x| x.abs()).sum::<f64>() + d.abs());
    if best.is_nan() || best <= noise {
        return Err(Error::ConstructionFailed(format!(
            "mu estimate {best:e} is within float noise {noise:e}"
        )));
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProofSynthConfig {
    pub delta: Rational,
    /// Starting number of product factors.
    pub product_terms: usize,
    /// Starting Taylor degree of `q`.
    pub taylor_degree: usize,
    pub boundary_samples: usize,
    /// Coefficients of `q` are rounded to multiples of `1/bound`; 0 keeps
    /// them exact.
    pub rationalize_denominator_bound: u64,
    pub max_taylor_degree: usize,
    pub max_product_terms: usize,
}

impl Default for ProofSynthConfig {
    fn default() -> Self {
        ProofSynthConfig {
            delta: Rational::frac(1, 8),
            product_terms: 8,
            taylor_degree: 8,
            boundary_samples: 720,
            rationalize_denominator_bound: 1 << 48,
            max_taylor_degree: 256,
            max_product_terms: 64,
        }
    }
}

impl ProofSynthConfig {
    pub fn new(delta: Rational) -> Self {
        ProofSynthConfig {
            delta,
            ..ProofSynthConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        check_delta(&self.delta)?;
        if self.product_terms == 0 || self.taylor_degree == 0 || self.boundary_samples == 0 {
            return Err(Error::InvalidArgument(
                "product terms, degree and samples must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Taylor degrees tried: doubling from the start up to the cap.
    fn schedule(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = self.taylor_degree;
        while d < self.max_taylor_degree {
            out.push(d);
            d *= 2;
        }
        out.push(self.max_taylor_degree.max(self.taylor_degree));
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub taylor_degree: usize,
    pub product_terms: usize,
    pub u1_unit: bool,
    pub u2_unit: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub sigma: i32,
    pub clearance: f64,
    pub mu: Option<f64>,
    pub product_terms: usize,
    pub taylor_degree: usize,
    pub attempts: Vec<Attempt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofController {
    pub delta: Rational,
    pub q: Poly,
    pub certificate: Certificate,
    pub diagnostics: Diagnostics,
}

fn round_series(h: &SeriesPoly, upto: usize, bound: u64) -> Poly {
    let den = BigInt::from(bound);
    Poly::new(
        (0..=upto)
            .map(|k| {
                let c = h.coeff(k);
                if bound == 0 {
                    c
                } else {
                    c.round_to_denominator(&den)
                }
            })
            .collect(),
    )
}

/// `(1 + 2δ z q(z), δ + z + 2δ z^2 q(z))`.
pub fn unit_pair(q: &Poly, delta: &Rational) -> (Poly, Poly) {
    let two_d_zq = q.mul_x_pow(1).scale(&(delta * Rational::from_integer(2)));
    let u1 = &Poly::one() + &two_d_zq;
    let u2 = &Poly::linear(Rational::one(), delta.clone()) + &two_d_zq.mul_x_pow(1);
    (u1, u2)
}

/// Builds `q` by Taylor truncation of `h`, escalating the degree and the
/// number of product factors until both closed loops are exactly units.
pub fn construct_controller(cfg: &ProofSynthConfig) -> Result<ProofController> {
    cfg.validate()?;
    let delta = &cfg.delta;
    let reference = extremal_series(REFERENCE_TERMS, REFERENCE_DEGREE)?;
    let omitted = omitted_value_check(&reference, cfg.boundary_samples)?;
    let mut attempts = Vec::new();
    for d in cfg.schedule() {
        let n = cfg
            .max_product_terms
            .min(cfg.product_terms.max(d.div_ceil(2) + 2));
        let f = extremal_series(n, d + 2)?.sign_normalized(omitted.sigma);
        let (g, h) = build_g_h(&f, delta)?;
        let q = round_series(&h, d, cfg.rationalize_denominator_bound);
        let (u1, u2) = unit_pair(&q, delta);
        let u1_unit = is_schur(&u1)?.is_stable();
        let u2_unit = u1_unit && is_schur(&u2)?.is_stable();
        attempts.push(Attempt {
            taylor_degree: d,
            product_terms: n,
            u1_unit,
            u2_unit,
        });
        if !(u1_unit && u2_unit) {
            continue;
        }
        let plants = gcp_plants(&GcpInstance::new(
            delta.clone(),
            Variant::Theorem1,
            Domain::Discrete,
        ));
        let controller = TransferFunction::from_poly(q.clone(), Domain::Discrete);
        let certificate = simultaneously_stabilizes(&plants, &controller)?;
        if !certificate.overall {
            return Err(Error::CertificationFailed(
                "unit closed loops but the plant certificate failed".into(),
            ));
        }
        if u1.mul_x_pow(1)
            != &Poly::x() + &q.mul_x_pow(2).scale(&(delta * Rational::from_integer(2)))
        {
            return Err(Error::CertificationFailed(
                "z u1(z) differs from z + 2δ z^2 q(z)".into(),
            ));
        }
        let diagnostics = Diagnostics {
            sigma: omitted.sigma,
            clearance: omitted.clearance,
            mu: mu_estimate(&g, delta, cfg.boundary_samples).ok(),
            product_terms: n,
            taylor_degree: d,
            attempts,
        };
        return Ok(ProofController {
            delta: delta.clone(),
            q,
            certificate,
            diagnostics,
        });
    }
    let tried: Vec<String> = attempts
        .iter()
        .map(|a| format!("d={} N={}", a.taylor_degree, a.product_terms))
        .collect();
    Err(Error::ConstructionFailed(format!(
        "no certified controller for delta = {delta} up to degree {} ({}); delta is too close to 1/16 for this budget",
        cfg.max_taylor_degree,
        tried.join(", ")
    )))
}

/// Carries a certified discrete `q` to the continuous family via
/// `z = (s-1)/(s+1)` and certifies it there.
pub fn to_continuous(q: &Poly, delta: &Rational) -> Result<(TransferFunction, Certificate)> {
    let c = bilinear_plant(
        &TransferFunction::from_poly(q.clone(), Domain::Discrete),
        Domain::Continuous,
    )?;
    let plants = gcp_plants(&GcpInstance::new(
        delta.clone(),
        Variant::Theorem1,
        Domain::Continuous,
    ));
    let cert = simultaneously_stabilizes(&plants, &c)?;
    if !cert.overall {
        return Err(Error::CertificationFailed(format!(
            "continuous image {} does not stabilize",
            c.display()
        )));
    }
    Ok((c, cert))
}
