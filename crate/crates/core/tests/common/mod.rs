#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use simstab::{Poly, Rational};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-num..=num, 1..=den).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn nonzero_rational(num: i64, den: i64) -> impl Strategy<Value = Rational> {
    rational(num, den).prop_filter("nonzero", |r| !r.is_zero())
}

/// Random polynomial of degree exactly `deg` in `lo..=hi`.
pub fn poly(lo: usize, hi: usize) -> impl Strategy<Value = Poly> {
    (lo..=hi).prop_flat_map(|deg| {
        (
            prop::collection::vec(rational(20, 8), deg),
            nonzero_rational(20, 8),
        )
            .prop_map(|(mut c, lead)| {
                c.push(lead);
                Poly::new(c)
            })
    })
}

/// Polynomial built from random real roots and conjugate pairs, so stable
/// and unstable cases both turn up often.
pub fn rooted_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    let factor = prop_oneof![
        rational(30, 8).prop_map(|a| Poly::new(vec![-a, Rational::one()])),
        (rational(30, 8), rational(30, 8)).prop_map(|(re, im)| {
            // (x - re)^2 + im^2
            Poly::new(vec![
                &re * &re + &im * &im,
                -(re * Rational::from_integer(2)),
                Rational::one(),
            ])
        }),
    ];
    (
        prop::collection::vec(factor, 1..=max_deg),
        nonzero_rational(5, 3),
    )
        .prop_map(move |(fs, lead)| {
            let mut p = Poly::constant(lead);
            for f in fs {
                if p.degree().unwrap_or(0) + f.degree().unwrap_or(0) <= max_deg {
                    p = &p * &f;
                }
            }
            p
        })
}

/// Roots by companion-matrix eigenvalues.
pub fn eig_roots(p: &Poly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(Rational::to_f64).collect();
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}
