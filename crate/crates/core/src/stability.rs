//! Exact Hurwitz and Schur stability tests.
//!
//! Schur stability follows the convention used for simultaneous
//! stabilization: a polynomial is Schur stable when all of its roots lie
//! strictly *outside* the closed unit disk. The Schur test is reduced to the
//! Hurwitz test by the Möbius map `z = (s - 1)/(s + 1)`.
//!
//! The Hurwitz decision runs a fraction-free Routh recursion over the
//! integers; its first column is `[a_n, Δ_1, ..., Δ_n]`, the Hurwitz leading
//! principal minors themselves. [`hurwitz_minors`] computes the same minors
//! independently by Bareiss elimination of the Hurwitz matrix.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    gcd_degree_mod, Domain, Interval, IntervalPoly, Poly, Rational, TransferFunction, PRIMES,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilityStatus {
    Stable,
    Marginal,
    Unstable,
}

/// Why a polynomial is not stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Coefficient `index` is zero or has the wrong sign.
    CoefficientSign { index: usize },
    /// Hurwitz minor `Δ_index` (1-based) is the first one that is not positive.
    Minor { index: usize },
    /// Number of distinct roots on the stability boundary.
    BoundaryRoots { count: usize },
    /// Root at `z = 1` with the given multiplicity (discrete domain).
    RootAtOne { multiplicity: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    fn stable() -> Self {
        StabilityVerdict {
            status: StabilityStatus::Stable,
            witness: None,
        }
    }

    fn unstable(w: Witness) -> Self {
        StabilityVerdict {
            status: StabilityStatus::Unstable,
            witness: Some(w),
        }
    }

    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::Stable
    }
}

/// Outcome of an interval stability proof attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalProof {
    /// Every member polynomial is Hurwitz stable.
    Proved,
    /// No member polynomial is Hurwitz stable.
    Disproved,
    Unknown,
}

/// Hurwitz matrix of an integer coefficient list (ascending).
fn hurwitz_matrix(a: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = a.len() - 1;
    let coef = |k: isize| -> BigInt {
        if k < 0 || k as usize > n {
            BigInt::zero()
        } else {
            a[k as usize].clone()
        }
    };
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| coef(n as isize - 2 * j as isize + i as isize))
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss elimination with row pivoting.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut prev = BigInt::one();
    let mut sign = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// All leading principal minors; Bareiss without pivoting, where the pivot
/// at step `k` is exactly the `k`-th leading minor. A zero pivot switches
/// to one pivoted determinant per remaining minor.
fn leading_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut work = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = work[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            for size in k + 2..=n {
                let sub = m[..size].iter().map(|row| row[..size].to_vec()).collect();
                out.push(bareiss_det(sub));
            }
            return out;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &work[i][j] * &pivot - &work[i][k] * &work[k][j];
                work[i][j] = v / &prev;
            }
        }
        prev = pivot;
    }
    out
}

/// Exact Hurwitz minors `Δ_1 .. Δ_n` of `p` as given (no sign
/// normalization).
pub fn hurwitz_minors(p: &Poly) -> Result<Vec<Rational>> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::InvalidArgument(
            "constant polynomial has no Hurwitz minors".into(),
        )),
        Some(_) => {
            let (ints, scale) = p.to_primitive_integer();
            let minors = leading_minors(&hurwitz_matrix(&ints));
            Ok(minors
                .into_iter()
                .enumerate()
                .map(|(k, d)| Rational::from_integer(d) * scale.pow(k as i32 + 1))
                .collect())
        }
    }
}

/// Fraction-free Routh first column `[a_n, Δ_1, Δ_2, ...]` for an integer
/// polynomial with positive leading coefficient. Stops after the first
/// entry that is not positive.
pub(crate) fn routh_first_column(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len() - 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push((0..=n / 2).map(|j| a[n - 2 * j].clone()).collect());
    let mut column = vec![rows[0][0].clone()];
    if n == 0 {
        return column;
    }
    rows.push(
        (0..=(n - 1) / 2)
            .map(|j| a[n - 1 - 2 * j].clone())
            .collect(),
    );
    column.push(rows[1][0].clone());
    if !rows[1][0].is_positive() {
        return column;
    }
    let zero = BigInt::zero();
    while rows.len() < n + 1 {
        let k = rows.len() - 1;
        let (upper, lower) = (&rows[k - 1], &rows[k]);
        let len = upper.len().saturating_sub(1).max(1);
        let divisor = if k >= 3 {
            Some(rows[k - 2][0].clone())
        } else {
            None
        };
        let next: Vec<BigInt> = (0..len)
            .map(|j| {
                let a1 = upper.get(j + 1).unwrap_or(&zero);
                let b1 = lower.get(j + 1).unwrap_or(&zero);
                let v = &lower[0] * a1 - &upper[0] * b1;
                match &divisor {
                    Some(d) => v / d,
                    None => v,
                }
            })
            .collect();
        let head = next[0].clone();
        rows.push(next);
        column.push(head.clone());
        if !head.is_positive() {
            break;
        }
    }
    column
}

/// Integer coefficients of `p` scaled so the leading coefficient is positive.
fn normalized_ints(p: &Poly) -> Vec<BigInt> {
    let (mut ints, _) = p.to_primitive_integer();
    if ints.last().is_some_and(|l| l.is_negative()) {
        for c in ints.iter_mut() {
            *c = -c.clone();
        }
    }
    ints
}

/// Strict Hurwitz decision: `Ok(())` when stable, otherwise the witness.
fn strict_hurwitz(ints: &[BigInt]) -> std::result::Result<(), Witness> {
    if let Some(i) = ints.iter().position(|c| !c.is_positive()) {
        return Err(Witness::CoefficientSign { index: i });
    }
    let col = routh_first_column(ints);
    match col.iter().skip(1).position(|d| !d.is_positive()) {
        Some(k) => Err(Witness::Minor { index: k + 1 }),
        None => Ok(()),
    }
}

/// Whether `p` and `p(-s)` provably share no root, by a modular gcd.
fn coprime_with_reflection(ints: &[BigInt]) -> bool {
    let reflected: Vec<BigInt> = ints
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let lead = ints.last().unwrap();
    PRIMES
        .iter()
        .any(|&m| !(lead % BigInt::from(m)).is_zero() && gcd_degree_mod(ints, &reflected, m) == 0)
}

/// Exact Hurwitz stability: all roots in the open left half plane.
///
/// Nonzero constants are stable. `Marginal` means no root in the open right
/// half plane and at least one on the imaginary axis.
pub fn is_hurwitz(p: &Poly) -> Result<StabilityVerdict> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(StabilityVerdict::stable());
    }
    let ints = normalized_ints(p);
    let witness = match strict_hurwitz(&ints) {
        Ok(()) => return Ok(StabilityVerdict::stable()),
        Err(w) => w,
    };
    // A polynomial without open right-half-plane roots has no negative coefficient.
    if ints.iter().any(|c| c.is_negative()) {
        return Ok(StabilityVerdict::unstable(witness));
    }
    if coprime_with_reflection(&ints) {
        return Ok(StabilityVerdict::unstable(witness));
    }
    boundary_analysis(p, witness)
}

/// `p` has nonnegative coefficients, is not stable and may have roots on the
/// imaginary axis. Such roots are exactly the roots of `g = gcd(p(s), p(-s))`
/// that lie on the axis; the remaining roots of `g` come in pairs `±s0`, one
/// of them in the right half plane.
fn boundary_analysis(p: &Poly, witness: Witness) -> Result<StabilityVerdict> {
    let g = p.gcd(&p.reflect())?;
    if g.is_constant() {
        return Ok(StabilityVerdict::unstable(witness));
    }
    let rest = p.exact_div(&g)?;
    if !rest.is_constant() && strict_hurwitz(&normalized_ints(&rest)).is_err() {
        return Ok(StabilityVerdict::unstable(witness));
    }
    // g = s^m * E(s^2); roots of E(s^2) lie on the axis iff G(w) = E(-w^2)
    // has only real roots.
    let m = g.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    let g1 = Poly::new(g.coeffs()[m..].to_vec());
    let mut count = usize::from(m > 0);
    if !g1.is_constant() {
        let big_g = Poly::new(
            g1.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| match k % 4 {
                    0 => c.clone(),
                    2 => -c,
                    _ => Rational::zero(),
                })
                .collect(),
        );
        let sf = big_g.squarefree()?;
        let real = sf.count_real_roots();
        if real != sf.degree().unwrap_or(0) {
            return Ok(StabilityVerdict::unstable(witness));
        }
        count += real;
    }
    Ok(StabilityVerdict {
        status: StabilityStatus::Marginal,
        witness: Some(Witness::BoundaryRoots { count }),
    })
}

/// Exact Schur stability: all roots strictly outside the closed unit disk.
pub fn is_schur(p: &Poly) -> Result<StabilityVerdict> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(StabilityVerdict::stable());
    }
    let one = Rational::one();
    if p.eval(&one).is_zero() {
        let factor = Poly::linear(one.clone(), -one.clone());
        let mut rest = p.clone();
        let mut multiplicity = 0;
        while rest.eval(&one).is_zero() {
            rest = rest.exact_div(&factor)?;
            multiplicity += 1;
        }
        let inner = is_schur(&rest)?;
        return Ok(if inner.status == StabilityStatus::Unstable {
            inner
        } else {
            StabilityVerdict {
                status: StabilityStatus::Marginal,
                witness: Some(Witness::RootAtOne { multiplicity }),
            }
        });
    }
    is_hurwitz(&schur_to_hurwitz(p)?)
}

/// `(s + 1)^n p((s - 1)/(s + 1))`: roots outside the unit disk map to the
/// open left half plane.
pub fn schur_to_hurwitz(p: &Poly) -> Result<Poly> {
    let one = Rational::one();
    p.mobius_substitute(&one, &-one.clone(), &one, &one)
}

/// Stability in the sense appropriate to the domain.
pub fn is_stable_in(p: &Poly, domain: Domain) -> Result<StabilityVerdict> {
    match domain {
        Domain::Continuous => is_hurwitz(p),
        Domain::Discrete => is_schur(p),
    }
}

/// Whether a discrete-time transfer function is a unit: numerator and
/// denominator both Schur stable.
pub fn is_unit(c: &TransferFunction) -> Result<bool> {
    if c.domain() != Domain::Discrete {
        return Err(Error::DomainMismatch {
            expected: "z".into(),
            found: "s".into(),
        });
    }
    if c.is_zero() {
        return Ok(false);
    }
    Ok(is_schur(c.num())?.is_stable() && is_schur(c.den())?.is_stable())
}

/// Sufficient Hurwitz condition for positive-coefficient polynomials of
/// degree at least three: `a_{i-1} a_{i+2} <= 0.4655 a_i a_{i+1}` for
/// `i = 1..n-2`.
pub fn lemma3_sufficient(p: &Poly) -> Result<bool> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "the product-ratio test needs degree >= 3, got {n}"
        )));
    }
    let a = p.coeffs();
    if !a.iter().all(Rational::is_positive) {
        return Ok(false);
    }
    let c = lemma3_constant();
    Ok((1..=n - 2).all(|i| &a[i - 1] * &a[i + 2] <= &c * &a[i] * &a[i + 1]))
}

/// 0.4655, exactly.
pub fn lemma3_constant() -> Rational {
    Rational::frac(4655, 10000)
}

/// Interval Hurwitz test for pruning.
///
/// Disproved when the degree is fixed and some lower coefficient cannot
/// share the leading sign, or when the interval Routh column has a
/// nonpositive entry after strictly positive ones. Proved by the interval
/// product-ratio condition or a strictly positive interval Routh column.
pub fn interval_hurwitz(p: &IntervalPoly) -> IntervalProof {
    let mut a = p.coeffs.clone();
    while a.last().is_some_and(|c| c.lo == 0.0 && c.hi == 0.0) {
        a.pop();
    }
    let Some(&top) = a.last() else {
        return IntervalProof::Disproved;
    };
    // Coefficients of both strict signs, or a vanishing constant term next
    // to a nonzero coefficient, rule out every member.
    let point_zero = |c: &Interval| c.lo == 0.0 && c.hi == 0.0;
    let some_nonzero = a.iter().any(|c| c.is_positive() || c.is_negative());
    if a.iter().any(Interval::is_positive) && a.iter().any(Interval::is_negative) {
        return IntervalProof::Disproved;
    }
    if a.len() > 1 && point_zero(&a[0]) && some_nonzero {
        return IntervalProof::Disproved;
    }
    if top.contains_zero() {
        return IntervalProof::Unknown;
    }
    if top.is_negative() {
        a.iter_mut().for_each(|c| *c = -*c);
    }
    let n = a.len() - 1;
    if n == 0 {
        return IntervalProof::Proved;
    }
    if a[..n].iter().any(Interval::is_nonpositive) {
        return IntervalProof::Disproved;
    }
    if !a.iter().all(Interval::is_positive) {
        return IntervalProof::Unknown;
    }
    if n <= 2 {
        return IntervalProof::Proved;
    }
    let c = Interval::enclose(&lemma3_constant());
    if (1..=n - 2).all(|i| (a[i - 1] * a[i + 2]).hi <= (c * a[i] * a[i + 1]).lo) {
        return IntervalProof::Proved;
    }
    interval_routh(&a)
}

fn interval_routh(a: &[Interval]) -> IntervalProof {
    let n = a.len() - 1;
    let zero = Interval::point(0.0);
    let mut upper: Vec<Interval> = (0..=n / 2).map(|j| a[n - 2 * j]).collect();
    let mut lower: Vec<Interval> = (0..=(n - 1) / 2).map(|j| a[n - 1 - 2 * j]).collect();
    for _ in 2..=n {
        let Some(ratio) = upper[0].checked_div(&lower[0]) else {
            return IntervalProof::Unknown;
        };
        let len = upper.len().saturating_sub(1).max(1);
        let next: Vec<Interval> = (0..len)
            .map(|j| {
                let a1 = upper.get(j + 1).copied().unwrap_or(zero);
                let b1 = lower.get(j + 1).copied().unwrap_or(zero);
                a1 - ratio * b1
            })
            .collect();
        if next[0].is_nonpositive() {
            return IntervalProof::Disproved;
        }
        if !next[0].is_positive() {
            return IntervalProof::Unknown;
        }
        upper = std::mem::replace(&mut lower, next);
    }
    IntervalProof::Proved
}
