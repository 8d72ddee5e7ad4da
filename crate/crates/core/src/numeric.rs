//! Floating-point root finding, used only for search heuristics and
//! diagnostics. Nothing here feeds a certificate.

use num_complex::Complex64;

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == 0.0 {
        n -= 1;
    }
    &coeffs[..n]
}

fn horner_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of the polynomial with ascending coefficients, by the
/// Aberth–Ehrlich iteration. Trailing zeros are ignored; a constant has no
/// roots.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let zeros_at_origin = c.iter().take_while(|&&a| a == 0.0).count();
    let c = &c[zeros_at_origin..];
    let n = c.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
    if n == 0 {
        return out;
    }
    let lead = c[n];
    // Fujiwara-style bound sets the starting circle.
    let radius = (0..n)
        .map(|k| (c[k] / lead).abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 {
                ratio
            } else {
                ratio / denom
            };
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    out.extend(z);
    out
}

/// Largest real part of any root; `-inf` for a nonzero constant and `+inf`
/// for the zero polynomial.
pub fn spectral_abscissa(coeffs: &[f64]) -> f64 {
    let c = trimmed(coeffs);
    if c.is_empty() {
        return f64::INFINITY;
    }
    roots(c)
        .iter()
        .map(|r| r.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `1 - min |root|`: positive when some root lies inside the unit disk.
pub fn schur_gap(coeffs: &[f64]) -> f64 {
    let c = trimmed(coeffs);
    if c.is_empty() {
        return f64::INFINITY;
    }
    1.0 - roots(c)
        .iter()
        .map(|r| r.norm())
        .fold(f64::INFINITY, f64::min)
}
