//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order and the list never ends in a
//! zero, so structural equality is polynomial equality. The zero polynomial
//! is the empty list.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{IntervalPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    /// `a*x + b`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip().expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at the complex point `re + i*im`, returned as
    /// `(real part, imaginary part)`.
    pub fn eval_complex(&self, re: &Rational, im: &Rational) -> (Rational, Rational) {
        let (mut ar, mut ai) = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let nr = &ar * re - &ai * im + c;
            let ni = &ar * im + &ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(Rational::to_f64).collect()
    }

    pub fn to_interval_poly(&self) -> IntervalPoly {
        IntervalPoly::from_poly(self)
    }

    /// Euclidean division. Errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().recip()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in divisor.coeffs.iter().enumerate() {
                    let t = &c * dj;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; errors unless `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(
                "polynomial division is not exact".into(),
            ));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        if self.is_coprime_fast(other) {
            return Ok(Poly::one());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            // Monic remainders keep the coefficient growth in check.
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Splits `p = scale * P` with `P` an integer polynomial with coprime
    /// coefficients and `scale > 0`. The zero polynomial gives `([], 1)`.
    pub fn to_primitive_integer(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::one());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let prim = ints.into_iter().map(|c| c / &content).collect();
        (prim, Rational::new(content, lcm).expect("nonzero lcm"))
    }

    /// `(c*x + d)^n * p((a*x + b)/(c*x + d))` with `n = deg p`.
    ///
    /// Computed over the integers (Horner in the numerator with running
    /// powers of the denominator), then rescaled. A root of `p` at `a/c`
    /// shows up as a degree drop of the result.
    pub fn mobius_substitute(
        &self,
        a: &Rational,
        b: &Rational,
        c: &Rational,
        d: &Rational,
    ) -> Result<Poly> {
        if (a * d - b * c).is_zero() {
            return Err(Error::DegenerateMobius);
        }
        let Some(n) = self.degree() else {
            return Ok(Poly::zero());
        };
        let (p, scale) = self.to_primitive_integer();
        let l = [a, b, c, d]
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let int = |r: &Rational| r.numer() * (&l / r.denom());
        let num = [int(b), int(a)];
        let den = [int(d), int(c)];
        let q = mobius_int(&p, &num, &den);
        let factor = scale / Rational::from_integer(l).pow(n as i32);
        Ok(Poly::from_ints(&q).scale(&factor))
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps the Sturm sign pattern.
            let lead = r.leading().unwrap().abs();
            seq.push(-r.scale(&lead.recip().unwrap()));
        }
        let changes = |signs: Vec<i32>| -> usize {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        // Signs at -inf and +inf come from leading terms.
        let at_pos = seq.iter().map(|p| p.leading().unwrap().signum()).collect();
        let at_neg = seq
            .iter()
            .map(|p| {
                let s = p.leading().unwrap().signum();
                if p.degree().unwrap() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        changes(at_neg) - changes(at_pos)
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Result<Poly> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(self.monic());
        }
        let g = self.gcd(&self.derivative())?;
        Ok(self.exact_div(&g)?.monic())
    }

    /// Human-readable form in the given variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

/// Integer kernel of [`Poly::mobius_substitute`]: `num = [b, a]`, `den = [d, c]`
/// are the linear factors `a*x + b` and `c*x + d`.
pub(crate) fn mobius_int(p: &[BigInt], num: &[BigInt; 2], den: &[BigInt; 2]) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut h: Vec<BigInt> = vec![p[n].clone()];
    let mut dpow: Vec<BigInt> = vec![BigInt::one()];
    for k in (0..n).rev() {
        h = mul_linear(&h, num);
        dpow = mul_linear(&dpow, den);
        if !p[k].is_zero() {
            for (hj, dj) in h.iter_mut().zip(dpow.iter()) {
                *hj += &p[k] * dj;
            }
        }
    }
    while h.last().is_some_and(Zero::is_zero) {
        h.pop();
    }
    h
}

fn mul_linear(p: &[BigInt], lin: &[BigInt; 2]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !lin[0].is_zero() {
            out[i] += c * &lin[0];
        }
        if !lin[1].is_zero() {
            out[i + 1] += c * &lin[1];
        }
    }
    out
}

/// Large primes for modular coprimality checks.
pub(crate) const PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_000_000_000_000_000_003,
];

impl Poly {
    /// Modular coprimality proof; `false` means "not proved", not "shared
    /// factor". Rational Euclid on large coprime inputs is far slower.
    fn is_coprime_fast(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        let (a, _) = self.to_primitive_integer();
        let (b, _) = other.to_primitive_integer();
        PRIMES.iter().any(|&m| {
            let big = BigInt::from(m);
            let ok = |v: &[BigInt]| !(v.last().unwrap() % &big).is_zero();
            ok(&a) && ok(&b) && gcd_degree_mod(&a, &b, m) == 0
        })
    }
}

/// Degree of `gcd(a, b)` over `Z/pZ`, for a prime `modulus < 2^62` that
/// divides neither leading coefficient. This upper-bounds the degree of the
/// rational gcd, so a zero result proves the polynomials coprime.
pub(crate) fn gcd_degree_mod(a: &[BigInt], b: &[BigInt], modulus: u64) -> usize {
    let m = BigInt::from(modulus);
    let reduce = |v: &[BigInt]| -> Vec<u64> {
        let mut r: Vec<u64> = v
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    };
    let mut x = reduce(a);
    let mut y = reduce(b);
    let mulm = |u: u64, v: u64| ((u as u128 * v as u128) % modulus as u128) as u64;
    let inv = |u: u64| -> u64 {
        // Fermat inverse.
        let (mut base, mut e, mut acc) = (u, modulus - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, base);
            }
            base = mulm(base, base);
            e >>= 1;
        }
        acc
    };
    while !y.is_empty() {
        // x <- x mod y
        let ly = inv(*y.last().unwrap());
        while x.len() >= y.len() {
            let c = mulm(*x.last().unwrap(), ly);
            let off = x.len() - y.len();
            for (j, &yj) in y.iter().enumerate() {
                let t = mulm(c, yj);
                x[off + j] = (x[off + j] + modulus - t) % modulus;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len().saturating_sub(1)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

macro_rules! owned_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Poly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}
