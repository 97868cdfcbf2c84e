//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::{PI, SQRT_2};
use std::time::Instant;

use apspectra::bohr::{bohr_coefficient, bohr_mean, QuadratureParams};
use apspectra::bounds::{check_decay_bound, check_taibleson, BoundParams};
use apspectra::variation::{average_variation, partition_variation, total_variation};
use apspectra::zeta::{zeta_bound_experiment, zeta_variation_lower_bound, ZetaTruncation};
use apspectra::{
    estimate_inclusion_length, find_translation_numbers, scan_spectrum, Signal, TrigPolynomial,
};
use common::cli::{check_golden, GOLDEN_CASES};
use num_complex::Complex64;
use rand::Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn planted_set(seed: u64, count: usize) -> Vec<Vec<(f64, Complex64)>> {
    let mut rng = common::rng(seed);
    (0..count).map(|_| common::planted(&mut rng)).collect()
}

fn planted_recovery() -> Verdict {
    let q = QuadratureParams::default();
    let mut worst_freq = 0.0f64;
    let mut worst_coef = 0.0f64;
    let mut failures = Vec::new();
    for (i, pairs) in planted_set(1, 50).iter().enumerate() {
        let f = common::signal(pairs);
        let min_abs = pairs
            .iter()
            .map(|p| p.1.norm())
            .fold(f64::INFINITY, f64::min);
        let est = scan_spectrum(&f, (-6.0, 6.0), 0.01, 0.25 * min_abs, &q).unwrap();
        if est.exponents.len() != pairs.len() {
            failures.push(format!(
                "signal {i}: {} exponents for {} planted",
                est.exponents.len(),
                pairs.len()
            ));
            continue;
        }
        for (line, &(l, a)) in est.exponents.iter().zip(pairs) {
            let df = (line.lambda - l).abs();
            let dc = (line.coefficient - a).norm() / a.norm();
            worst_freq = worst_freq.max(df);
            worst_coef = worst_coef.max(dc);
            if df > 1e-3 || dc > 1e-2 {
                failures.push(format!(
                    "signal {i}: λ={l} err {df:.2e}, coef rel err {dc:.2e}"
                ));
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "50 signals; worst |Δλ| {worst_freq:.2e} (<= 1e-3), worst coefficient rel err {worst_coef:.2e} (<= 1e-2){}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    )
}

fn main_bound() -> Verdict {
    let params = BoundParams::default();
    let mut entries = 0;
    let mut violations = Vec::new();
    let mut min_ratio = f64::INFINITY;
    for (i, pairs) in planted_set(1, 50).iter().enumerate() {
        let f = common::signal(pairs);
        let lambdas: Vec<f64> = pairs
            .iter()
            .map(|p| p.0)
            .filter(|l| l.abs() >= 0.1)
            .collect();
        for n in 0..=2 {
            let r = check_decay_bound(&f, &lambdas, n, &params).unwrap();
            for e in &r.entries {
                entries += 1;
                min_ratio = min_ratio.min(e.bound / e.coeff_magnitude);
                if !e.satisfied {
                    violations.push(format!("signal {i} n={n} λ={}: {e:?}", e.lambda));
                }
            }
        }
    }
    verdict(
        violations.is_empty(),
        format!(
            "{entries} entries at n = 0, 1, 2; smallest bound/|A| {min_ratio:.4}; violations {}{}",
            violations.len(),
            if violations.is_empty() {
                String::new()
            } else {
                format!(" {violations:?}")
            }
        ),
    )
}

fn tightness() -> Verdict {
    let mut rng = common::rng(3);
    let mut worst = 0.0f64;
    let mut ok = true;
    for _ in 0..20 {
        let l = loop {
            let l: f64 = rng.gen_range(-5.0..=5.0);
            if l.abs() >= 0.1 {
                break l;
            }
        };
        let a = common::random_coefficient(&mut rng, 0.5, 3.0);
        let f = common::signal(&[(l, a)]);
        let r = check_decay_bound(&f, &[l], 0, &BoundParams::default()).unwrap();
        let e = &r.entries[0];
        worst = worst.max(e.margin.abs());
        ok &= e.satisfied && e.margin.abs() <= 1e-3;
    }
    verdict(
        ok,
        format!("20 single exponentials; worst |margin| {worst:.2e} (<= 1e-3)"),
    )
}

fn derivative_relation() -> Verdict {
    let q = QuadratureParams::default();
    let mut worst = 0.0f64;
    let mut ok = true;
    for pairs in planted_set(4, 20) {
        let f = common::signal(&pairs);
        let df = Signal::Trig(f.derivative());
        for &(l, _) in &pairs {
            let a = bohr_coefficient(&f, l, &q).unwrap().value;
            let ad = bohr_coefficient(&df, l, &q).unwrap().value;
            let expected = Complex64::new(0.0, l) * a;
            let ratio = (ad - expected).norm() / (q.tolerance * (1.0 + expected.norm()));
            worst = worst.max(ratio);
            ok &= ratio <= 5.0;
        }
    }
    verdict(
        ok,
        format!("20 signals, all planted λ; worst |a_f'(λ) - iλ a_f(λ)| = {worst:.2} · tol·(1+|iλ a_f|) (<= 5)"),
    )
}

fn variation_oracles() -> Verdict {
    let sin = common::signal(&[
        (1.0, Complex64::new(0.0, -0.5)),
        (-1.0, Complex64::new(0.0, 0.5)),
    ]);
    let tv = total_variation(&sin, 0.0, 2.0 * PI, 64, 1e-8, 16)
        .unwrap()
        .value;
    let av = average_variation(&sin, &QuadratureParams::with_tolerance(1e-5))
        .unwrap()
        .value;
    let tol = 1e-6;
    let mut rng = common::rng(5);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let pairs = common::planted(&mut rng);
        let f = common::signal(&pairs);
        let b: f64 = rng.gen_range(1.0..20.0);
        let quad = total_variation(&f, 0.0, b, 64, tol, 16).unwrap().value;
        let part = partition_variation(|x| f.eval(x), 0.0, b, 64, tol, 16)
            .unwrap()
            .value;
        worst = worst.max((quad - part).abs() / (tol * (1.0 + quad)));
    }
    let ok = (tv - 4.0).abs() <= 1e-6 && (av - 2.0 / PI).abs() <= 1e-4 && worst <= 10.0;
    verdict(
        ok,
        format!(
            "V(sin,[0,2π]) - 4 = {:.1e} (<= 1e-6); V̄(sin) - 2/π = {:.1e} (<= 1e-4); partition vs quadrature on 20 signals: worst {worst:.2} · tol·(1+V) (<= 10, tol {tol:e})",
            tv - 4.0,
            av - 2.0 / PI
        ),
    )
}

fn taibleson() -> Verdict {
    let mut rng = common::rng(6);
    let mut ok = true;
    let mut min_margin = f64::INFINITY;
    for i in 0..10 {
        let f = common::real_periodic(&mut rng);
        match check_taibleson(&f, 10, &BoundParams::default()) {
            Ok(r) => {
                ok &= r.all_satisfied() && r.entries.len() == 20;
                for e in &r.entries {
                    min_margin = min_margin.min(e.margin);
                }
            }
            Err(e) => {
                ok = false;
                eprintln!("taibleson signal {i}: {e}");
            }
        }
    }
    verdict(
        ok,
        format!("10 signals, 1 <= |j| <= 10; smallest margin {min_margin:.3e}"),
    )
}

fn zeta_experiment() -> Verdict {
    let q = QuadratureParams::default();
    let mut ok = true;
    let mut rows = Vec::new();
    let mut slowest = 0.0f64;
    for n in [2u32, 3, 5, 10, 20] {
        for j in 0..=2 {
            let z = ZetaTruncation::new(0.5, n, j).unwrap();
            let start = Instant::now();
            let r = zeta_bound_experiment(&z, &q, 1e-3).unwrap();
            let secs = start.elapsed().as_secs_f64();
            slowest = slowest.max(secs);
            let lb = zeta_variation_lower_bound(0.5, n, j);
            let pass = r.converged && r.average_variation >= lb * (1.0 - 1e-2) && secs <= 60.0;
            ok &= pass;
            rows.push(format!("N={n} J={j}: {:.4}/{lb:.4}", r.average_variation));
            if n == 2 && j == 0 {
                ok &= (r.average_variation - lb).abs() <= 1e-2 * lb;
            }
        }
    }
    verdict(
        ok,
        format!(
            "V̄/lower bound: {}; slowest run {slowest:.2} s (<= 60)",
            rows.join(", ")
        ),
    )
}

fn offset_independence() -> Verdict {
    let q = QuadratureParams::default();
    let mut rng = common::rng(8);
    let mut worst = 0.0f64;
    let mut converged = 0;
    for _ in 0..10 {
        let mut pairs = common::planted(&mut rng);
        pairs.push((0.0, common::random_coefficient(&mut rng, 0.5, 3.0)));
        let f = common::signal(&pairs);
        let means: Vec<Complex64> = (0..10)
            .filter_map(|_| {
                let a: f64 = rng.gen_range(-1000.0..1000.0);
                bohr_mean(&f, a, &q).ok().map(|m| m.value)
            })
            .collect();
        converged += means.len();
        for x in &means {
            for y in &means {
                worst = worst.max((x - y).norm() / (q.tolerance * (1.0 + x.norm())));
            }
        }
    }
    verdict(
        worst <= 2.0 && converged == 100,
        format!("10 signals x 10 offsets, {converged} converged; worst pairwise gap {worst:.2} · tol·(1+|M|) (<= 2)"),
    )
}

fn translation_numbers() -> Verdict {
    let p = TrigPolynomial::from_pairs([
        (1.0, Complex64::new(1.0, 0.0)),
        (SQRT_2, Complex64::new(1.0, 0.0)),
    ])
    .unwrap();
    let f = Signal::Trig(p.clone());
    let eps = 0.2;
    let window = 100.0;
    let probe = apspectra::almost_periodicity::probe_step_limit(&f);
    let found = find_translation_numbers(&f, eps, (0.0, 300.0), 0.01, window, probe).unwrap();
    let fine = probe / 10.0;
    let nodes = (window / fine).floor() as usize;
    let mut worst = 0.0f64;
    let mut failed = 0;
    for t in &found {
        let d = (0..=nodes)
            .map(|i| {
                let x = i as f64 * fine;
                (p.eval(x + t.tau) - p.eval(x)).norm()
            })
            .fold(0.0, f64::max);
        worst = worst.max(d);
        if d >= eps {
            failed += 1;
        }
    }
    let gap = estimate_inclusion_length(&found, (0.0, 300.0)).map(|e| e.l_estimate);
    let ok = !found.is_empty() && failed == 0 && matches!(gap, Ok(g) if g < 100.0);
    verdict(
        ok,
        format!(
            "{} numbers; worst fine-grid discrepancy {worst:.4} (< {eps}), {failed} oracle failures; inclusion length {gap:?} (< 100)",
            found.len()
        ),
    )
}

fn cli_determinism() -> Verdict {
    let mut bad = Vec::new();
    let mut created = Vec::new();
    for &(name, args) in GOLDEN_CASES {
        let o = check_golden(name, args);
        match (o.deterministic, o.matches_golden) {
            (true, Some(true)) => {}
            (true, None) => created.push(name),
            _ => bad.push(format!(
                "{name} (deterministic {}, golden {:?})",
                o.deterministic, o.matches_golden
            )),
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{} cases run twice and compared with golden files{}{}",
            GOLDEN_CASES.len(),
            if created.is_empty() {
                String::new()
            } else {
                format!("; golden files created: {created:?}")
            },
            if bad.is_empty() {
                String::new()
            } else {
                format!("; mismatches: {bad:?}")
            }
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("planted-spectrum recovery", planted_recovery),
        ("decay bound at n = 0, 1, 2", main_bound),
        ("single-exponential tightness", tightness),
        ("derivative relation", derivative_relation),
        ("variation oracles", variation_oracles),
        ("periodic special case", taibleson),
        ("zeta lower bound", zeta_experiment),
        ("mean offset independence", offset_independence),
        ("translation numbers", translation_numbers),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name} [{:.1} s]: {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
