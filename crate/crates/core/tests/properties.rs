mod common;

use std::f64::consts::PI;

use apspectra::almost_periodicity::ProbeGrid;
use apspectra::bohr::{bohr_coefficient, QuadratureParams};
use apspectra::bounds::{check_decay_bound, BoundParams};
use apspectra::variation::{average_variation, partition_variation, total_variation};
use apspectra::zeta::{zeta_bound_experiment, zeta_variation_lower_bound, ZetaTruncation};
use apspectra::{find_translation_numbers, Signal, SignalSpec, TrigPolynomial, TrigTerm};
use num_complex::Complex64;
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Complex64> {
    (0.1f64..3.0, 0.0f64..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn polynomial(max_terms: usize) -> impl Strategy<Value = TrigPolynomial> {
    prop::collection::vec((-5.0f64..5.0, coefficient()), 1..=max_terms)
        .prop_map(|pairs| TrigPolynomial::from_pairs(pairs).unwrap())
}

/// Frequencies with pairwise gaps >= 0.3 and `|λ| >= 0.1`.
fn planted(max_terms: usize) -> impl Strategy<Value = Vec<(f64, Complex64)>> {
    (any::<u64>(), 1..=max_terms).prop_map(|(seed, n)| {
        let mut rng = common::rng(seed);
        loop {
            let f = common::separated_frequencies(&mut rng, n, 5.0, 0.3);
            if f.iter().all(|l| l.abs() >= 0.1) {
                return f
                    .into_iter()
                    .map(|l| (l, common::random_coefficient(&mut rng, 0.5, 3.0)))
                    .collect();
            }
        }
    })
}

fn ulps(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if a.signum() != b.signum() {
        return u64::MAX;
    }
    (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrate_inverts_differentiate(p in polynomial(8)) {
        prop_assume!(p.frequencies().all(|l| l != 0.0));
        let back = p.differentiate().integrate().unwrap();
        prop_assert_eq!(back.len(), p.len());
        for (x, y) in back.terms().iter().zip(p.terms()) {
            prop_assert_eq!(x.frequency, y.frequency);
            prop_assert!(ulps(x.coefficient.re, y.coefficient.re) <= 2, "{:?} {:?}", x, y);
            prop_assert!(ulps(x.coefficient.im, y.coefficient.im) <= 2, "{:?} {:?}", x, y);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        p in polynomial(6),
        q in polynomial(6),
        c in coefficient(),
        xs in prop::collection::vec(-50.0f64..50.0, 100),
    ) {
        let sum = p.add(&q);
        let prod = p.multiply(&q);
        let conj = p.conjugate();
        let scaled = p.scale(c);
        let tol = 1e-12 * (1.0 + p.l1_norm() + q.l1_norm());
        for &x in &xs {
            let (fp, fq) = (p.eval(x), q.eval(x));
            prop_assert!((sum.eval(x) - (fp + fq)).norm() < tol);
            prop_assert!((prod.eval(x) - fp * fq).norm() < tol * (1.0 + p.l1_norm() * q.l1_norm()));
            prop_assert!((conj.eval(x) - fp.conj()).norm() < tol);
            prop_assert!((scaled.eval(x) - c * fp).norm() < tol * (1.0 + c.norm()));
        }
    }

    #[test]
    fn polynomials_are_bounded_by_l1_norm(p in polynomial(8)) {
        let bound = p.l1_norm() * (1.0 + 1e-12);
        for i in 0..=10_000 {
            let x = -100.0 + 0.02 * i as f64;
            prop_assert!(p.eval(x).norm() <= bound);
        }
    }

    #[test]
    fn canonical_form_is_a_fixpoint(
        pairs in prop::collection::vec((prop::sample::select(vec![-2.0, -0.5, 0.0, 0.5, 1.0, 3.0]), coefficient()), 0..12),
        zeros in prop::collection::vec(prop::sample::select(vec![-1.0, 0.0, 2.0]), 0..3),
    ) {
        let mut terms: Vec<TrigTerm> = pairs.iter().map(|&(l, c)| TrigTerm::new(l, c)).collect();
        terms.extend(zeros.iter().map(|&l| TrigTerm::new(l, Complex64::new(0.0, 0.0))));
        let once = TrigPolynomial::new(terms).unwrap();
        let twice = TrigPolynomial::new(once.terms().to_vec()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.frequencies().zip(once.frequencies().skip(1)).all(|(a, b)| a < b));
        prop_assert!(once.terms().iter().all(|t| t.coefficient != Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn signal_spec_round_trips(p in polynomial(8)) {
        let text = serde_json::to_string(&SignalSpec::from(&p)).unwrap();
        let back = SignalSpec::from_json(&text).unwrap().to_polynomial().unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coefficients_are_linear(
        terms in planted(8),
        split in 0usize..8,
        alpha in coefficient(),
        beta in coefficient(),
    ) {
        let q = QuadratureParams::default();
        // Both halves share one separated frequency set so the combination
        // stays resolvable.
        let split = split.min(terms.len());
        let (f, g) = (terms[..split].to_vec(), terms[split..].to_vec());
        let pf = TrigPolynomial::from_pairs(f.clone()).unwrap();
        let pg = TrigPolynomial::from_pairs(g.clone()).unwrap();
        let combo = Signal::Trig(pf.scale(alpha).add(&pg.scale(beta)));
        for &(l, _) in f.iter().chain(&g) {
            let af = bohr_coefficient(&Signal::Trig(pf.clone()), l, &q).unwrap().value;
            let ag = bohr_coefficient(&Signal::Trig(pg.clone()), l, &q).unwrap().value;
            let ac = bohr_coefficient(&combo, l, &q).unwrap().value;
            let expected = alpha * af + beta * ag;
            prop_assert!(
                (ac - expected).norm() <= 2.0 * q.tolerance * (1.0 + expected.norm()),
                "λ={} got {} expected {}", l, ac, expected
            );
        }
    }

    #[test]
    fn coefficients_respect_the_leakage_bound(f in planted(6), offsets in prop::collection::vec(0.15f64..2.0, 3)) {
        let q = QuadratureParams::default();
        let s = common::signal(&f);
        let total: f64 = f.iter().map(|p| p.1.norm()).sum();
        for &(l, a) in &f {
            let est = bohr_coefficient(&s, l, &q).unwrap();
            let t = est.windows.last().unwrap().0;
            let leak: f64 = f
                .iter()
                .filter(|p| p.0 != l)
                .map(|p| 2.0 * p.1.norm() / ((p.0 - l).abs() * t))
                .sum();
            prop_assert!((est.value - a).norm() <= leak + 1e-12 * (1.0 + total));
        }
        for &d in &offsets {
            for probe in [f[0].0 - d, f[f.len() - 1].0 + d] {
                let gap = f.iter().map(|p| (p.0 - probe).abs()).fold(f64::INFINITY, f64::min);
                let est = bohr_coefficient(&s, probe, &q).unwrap();
                let t = est.windows.last().unwrap().0;
                prop_assert!(est.value.norm() <= 2.0 * total / (gap * t) + q.tolerance);
            }
        }
    }

    #[test]
    fn partition_refinement_is_monotone(f in planted(6), b in 0.5f64..20.0) {
        let s = common::signal(&f);
        let est = match partition_variation(|x| s.eval(x), 0.0, b, 4, 1e-9, 10) {
            Ok(e) => e,
            Err(e) => match e.partial() {
                Some(apspectra::Partial::Variation(v)) => v.clone(),
                _ => panic!("{e}"),
            },
        };
        for w in est.refinement_trace.windows(2) {
            prop_assert!(w[1].1 >= w[0].1);
            prop_assert_eq!(w[1].0, 2 * w[0].0);
        }
    }

    #[test]
    fn variation_is_additive(f in planted(6), a in -10.0f64..10.0, l1 in 0.1f64..10.0, l2 in 0.1f64..10.0) {
        let tol = 1e-6;
        let s = common::signal(&f);
        let (b, c) = (a + l1, a + l1 + l2);
        let whole = total_variation(&s, a, c, 64, tol, 16).unwrap().value;
        let left = total_variation(&s, a, b, 64, tol, 16).unwrap().value;
        let right = total_variation(&s, b, c, 64, tol, 16).unwrap().value;
        prop_assert!((whole - left - right).abs() <= 3.0 * tol * (1.0 + whole));
    }

    #[test]
    fn partition_and_quadrature_agree(f in planted(6), b in 0.5f64..20.0) {
        let tol = 1e-6;
        let s = common::signal(&f);
        let quad = total_variation(&s, 0.0, b, 64, tol, 16).unwrap().value;
        let part = partition_variation(|x| s.eval(x), 0.0, b, 64, tol, 16).unwrap().value;
        prop_assert!((quad - part).abs() <= 10.0 * tol * (1.0 + quad), "{} vs {}", quad, part);
    }

    #[test]
    fn variation_scales_with_modulus(f in planted(6), c in coefficient(), real in any::<bool>(), b in 0.5f64..20.0) {
        let tol = 1e-6;
        let c = if real { Complex64::new(c.re, 0.0) } else { c };
        prop_assume!(c.norm() > 1e-3);
        let p = TrigPolynomial::from_pairs(f).unwrap();
        let v = total_variation(&Signal::Trig(p.clone()), 0.0, b, 64, tol, 16).unwrap().value;
        let vc = total_variation(&Signal::Trig(p.scale(c)), 0.0, b, 64, tol, 16).unwrap().value;
        prop_assert!((vc - c.norm() * v).abs() <= tol * (1.0 + vc));
    }

    #[test]
    fn average_variation_of_periodic_signal(
        harmonics in prop::collection::vec((1u32..5, coefficient()), 1..4),
        omega in 0.3f64..3.0,
    ) {
        let q = QuadratureParams::default();
        let s = common::signal(
            &harmonics.iter().map(|&(k, c)| (omega * k as f64, c)).collect::<Vec<_>>(),
        );
        let period = 2.0 * PI / omega;
        let per_period = total_variation(&s, 0.0, period, 64, 1e-9, 16).unwrap().value / period;
        let avg = average_variation(&s, &q).unwrap().value;
        prop_assert!((avg - per_period).abs() <= 2.0 * q.tolerance * (1.0 + per_period), "{} vs {}", avg, per_period);
    }

    #[test]
    fn decay_bound_orders_are_consistent(f in planted(6), n in 1u32..=2) {
        let params = BoundParams::default();
        let s = common::signal(&f);
        let lambdas: Vec<f64> = f.iter().map(|p| p.0).collect();
        let direct = check_decay_bound(&s, &lambdas, n, &params).unwrap();
        let derived = Signal::Trig(s.to_trig().differentiate_n(n as usize));
        let via_derivative = check_decay_bound(&derived, &lambdas, 0, &params).unwrap();
        for (a, b) in direct.entries.iter().zip(&via_derivative.entries) {
            prop_assert_eq!(a.satisfied, b.satisfied);
            let scale = a.lambda.abs().powi(n as i32);
            prop_assert!((a.coeff_magnitude * scale - b.coeff_magnitude).abs() <= 1e-3 * b.coeff_magnitude.max(1.0));
        }
    }

    #[test]
    fn decay_bound_is_nonincreasing_in_frequency(f in planted(8), n in 0u32..=2) {
        let s = common::signal(&f);
        let lambdas: Vec<f64> = f.iter().map(|p| p.0).collect();
        let r = check_decay_bound(&s, &lambdas, n, &BoundParams::default()).unwrap();
        let mut entries = r.entries.clone();
        entries.sort_by(|a, b| a.lambda.abs().total_cmp(&b.lambda.abs()));
        for w in entries.windows(2) {
            prop_assert!(w[1].bound <= w[0].bound);
        }
    }

    #[test]
    fn translation_sets_grow_with_epsilon(f in planted(3), e1 in 0.05f64..0.5, de in 0.0f64..0.5) {
        let s = common::signal(&f);
        let h = apspectra::almost_periodicity::probe_step_limit(&s);
        let small = find_translation_numbers(&s, e1, (0.0, 50.0), 0.05, 30.0, h).unwrap();
        let large = find_translation_numbers(&s, e1 + de, (0.0, 50.0), 0.05, 30.0, h).unwrap();
        for t in &small {
            prop_assert!(large.iter().any(|u| u.tau == t.tau));
        }
        let grid = ProbeGrid::new(&s, 30.0, h);
        for t in &large {
            prop_assert_eq!(grid.discrepancy(t.tau), t.discrepancy);
        }
    }

    #[test]
    fn zeta_polynomial_matches_direct_sum(x in prop::sample::select(vec![0.5, 1.0, 2.0]), n in 1u32..=100, ys in prop::collection::vec(-200.0f64..200.0, 20)) {
        let z = ZetaTruncation::new(x, n, 0).unwrap();
        let p = z.to_trig();
        for &y in &ys {
            let direct = z.eval(y);
            prop_assert!((p.eval(y) - direct).norm() <= 1e-12 * p.l1_norm());
        }
    }

    #[test]
    fn zeta_derivatives_are_term_derivatives(x in prop::sample::select(vec![0.5, 1.0, 2.0]), n in 1u32..=100, j in 0u32..=4) {
        let direct = ZetaTruncation::new(x, n, j).unwrap().to_trig();
        let derived = ZetaTruncation::new(x, n, 0).unwrap().to_trig().differentiate_n(j as usize);
        prop_assert_eq!(direct, derived);
    }
}

#[test]
fn periodic_signal_periods_are_found() {
    let s = common::signal(&[
        (1.0, Complex64::new(1.0, 0.5)),
        (3.0, Complex64::new(0.0, -2.0)),
        (-2.0, Complex64::new(0.7, 0.0)),
    ]);
    let step = 2.0 * PI / 64.0;
    let h = apspectra::almost_periodicity::probe_step_limit(&s);
    for eps in [1e-9, 1e-3, 0.1] {
        let found = find_translation_numbers(&s, eps, (0.0, 8.0 * PI), step, 50.0, h).unwrap();
        for k in 0..=4 {
            let tau = (64 * k) as f64 * step;
            assert!(found.iter().any(|t| t.tau == tau), "ε={eps}: missing {tau}");
        }
    }
}

#[test]
fn zeta_coefficients_are_recovered() {
    let q = QuadratureParams::default();
    for x in [0.5, 1.0, 2.0] {
        let n_terms = 12;
        let s = Signal::Zeta(ZetaTruncation::new(x, n_terms, 0).unwrap());
        for n in 1..=n_terms {
            let l = -(n as f64).ln();
            let expected = (n as f64).powf(-x);
            let a = bohr_coefficient(&s, l, &q).unwrap().value;
            assert!((a - expected).norm() <= 1e-2 * expected, "x={x} n={n}: {a}");
        }
    }
}

#[test]
fn zeta_lower_bound_holds_beyond_the_critical_line() {
    let q = QuadratureParams::default();
    for x in [1.0, 2.0] {
        for n in [2, 4, 7, 12, 20] {
            for j in 0..=2 {
                let z = ZetaTruncation::new(x, n, j).unwrap();
                let r = zeta_bound_experiment(&z, &q, 1e-3).unwrap();
                assert!(r.converged);
                assert!(
                    r.average_variation >= r.lower_bound * (1.0 - 1e-2),
                    "x={x} N={n} J={j}: {} < {}",
                    r.average_variation,
                    r.lower_bound
                );
            }
        }
    }
}

#[test]
fn zeta_lower_bound_is_monotone_in_n() {
    for x in [0.5, 1.0, 2.0] {
        for j in 0..=3 {
            let values: Vec<f64> = (1..=200)
                .map(|n| zeta_variation_lower_bound(x, n, j))
                .collect();
            assert!(values.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}
