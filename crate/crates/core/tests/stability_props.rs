mod common;

use common::{eig_roots, poly, q, rational, rooted_poly};
use proptest::prelude::*;
use simstab::stability::schur_to_hurwitz;
use simstab::{
    interval_hurwitz, is_hurwitz, is_schur, lemma3_sufficient, Interval, IntervalPoly,
    IntervalProof, Poly, Rational, StabilityStatus,
};

const GUARD: f64 = 1e-3;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn hurwitz_matches_eigenvalues(p in prop_oneof![poly(1, 8), rooted_poly(8)]) {
        let roots = eig_roots(&p);
        prop_assume!(roots.iter().all(|r| r.re.abs() > GUARD));
        let numeric = roots.iter().all(|r| r.re < 0.0);
        let exact = is_hurwitz(&p).unwrap().status == StabilityStatus::Stable;
        prop_assert_eq!(exact, numeric, "p = {}", p);
    }

    #[test]
    fn schur_matches_eigenvalues(p in prop_oneof![poly(1, 8), rooted_poly(8)]) {
        let roots = eig_roots(&p);
        prop_assume!(roots.iter().all(|r| (r.norm() - 1.0).abs() > GUARD));
        let numeric = roots.iter().all(|r| r.norm() > 1.0);
        let exact = is_schur(&p).unwrap().status == StabilityStatus::Stable;
        prop_assert_eq!(exact, numeric, "p = {}", p);
    }

    #[test]
    fn schur_is_conjugated_hurwitz(p in prop_oneof![poly(1, 8), rooted_poly(8)]) {
        prop_assume!(!p.eval(&Rational::one()).is_zero());
        let image = schur_to_hurwitz(&p).unwrap();
        prop_assert_eq!(is_schur(&p).unwrap().status, is_hurwitz(&image).unwrap().status);
    }

    #[test]
    fn hurwitz_invariant_under_positive_scaling(p in poly(1, 8), k in 1i64..50) {
        let scaled = p.scale(&Rational::frac(k, 7));
        prop_assert_eq!(is_hurwitz(&p).unwrap(), is_hurwitz(&scaled).unwrap());
    }
}

fn positive_poly(lo: usize, hi: usize) -> impl Strategy<Value = Poly> {
    (lo..=hi).prop_flat_map(|deg| {
        prop::collection::vec((1i64..=60, 1i64..=12), deg + 1)
            .prop_map(|c| Poly::new(c.into_iter().map(|(n, d)| Rational::frac(n, d)).collect()))
    })
}

/// Coefficients of a product of random stable linear and quadratic factors,
/// so the product-ratio inequality holds reasonably often.
fn stable_positive_poly() -> impl Strategy<Value = Poly> {
    let factor = prop_oneof![
        (1i64..=40, 1i64..=8)
            .prop_map(|(a, d)| Poly::new(vec![Rational::frac(a, d), Rational::one()])),
        (1i64..=40, 1i64..=40).prop_map(|(b, c)| Poly::new(vec![
            Rational::frac(c, 4),
            Rational::frac(b, 4),
            Rational::one()
        ])),
    ];
    prop::collection::vec(factor, 2..=6).prop_filter_map("degree 3..=8", |fs| {
        let p = fs.iter().fold(Poly::one(), |acc, f| &acc * f);
        (3..=8).contains(&p.degree()?).then_some(p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn lemma3_implies_stable(p in prop_oneof![positive_poly(3, 8), stable_positive_poly()]) {
        if lemma3_sufficient(&p).unwrap() {
            prop_assert_eq!(is_hurwitz(&p).unwrap().status, StabilityStatus::Stable, "p = {}", p);
        }
    }
}

#[test]
fn lemma3_small_grid() {
    // Every cubic and quartic with coefficients in 1..=4.
    let vals = [1i64, 2, 3, 4];
    let mut checked = 0;
    for n in [3usize, 4] {
        let total = vals.len().pow(n as u32 + 1);
        for code in 0..total {
            let mut c = Vec::new();
            let mut x = code;
            for _ in 0..=n {
                c.push(Rational::from_integer(vals[x % vals.len()]));
                x /= vals.len();
            }
            let p = Poly::new(c);
            if lemma3_sufficient(&p).unwrap() {
                checked += 1;
                assert_eq!(
                    is_hurwitz(&p).unwrap().status,
                    StabilityStatus::Stable,
                    "p = {p}"
                );
            }
        }
    }
    assert!(checked > 0);
}

fn interval_poly() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    (1usize..=6).prop_flat_map(|deg| {
        prop::collection::vec((rational(40, 4), 0i64..=8), deg + 1).prop_map(|c| {
            c.into_iter()
                .map(|(lo, w)| (lo.clone(), lo + Rational::frac(w, 8)))
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn interval_verdicts_hold_at_points(bounds in interval_poly(), picks in prop::collection::vec(prop::collection::vec(0i64..=16, 7), 100)) {
        let ip = IntervalPoly::new(bounds.iter().map(|(lo, hi)| Interval::enclose_range(lo, hi)).collect());
        let verdict = interval_hurwitz(&ip);
        prop_assume!(verdict != IntervalProof::Unknown);
        for pick in &picks {
            let c: Vec<Rational> = bounds
                .iter()
                .zip(pick)
                .map(|((lo, hi), &t)| lo + &((hi - lo) * Rational::frac(t, 16)))
                .collect();
            let p = Poly::new(c);
            let stable = !p.is_zero() && is_hurwitz(&p).unwrap().is_stable();
            match verdict {
                IntervalProof::Proved => prop_assert!(stable, "proved box holds unstable {}", p),
                IntervalProof::Disproved => prop_assert!(!stable, "disproved box holds stable {}", p),
                IntervalProof::Unknown => unreachable!(),
            }
        }
    }
}

#[test]
fn schur_linear_grid() {
    for k in -12..=12 {
        let a = Rational::frac(k, 4);
        if a.abs() == Rational::one() {
            continue;
        }
        let p = Poly::new(vec![-a.clone(), Rational::one()]);
        assert_eq!(
            is_schur(&p).unwrap().is_stable(),
            a.abs() > Rational::one(),
            "a = {a}"
        );
    }
    assert_eq!(
        is_schur(&Poly::new(vec![q("-1"), q("1")])).unwrap().status,
        StabilityStatus::Marginal
    );
}
