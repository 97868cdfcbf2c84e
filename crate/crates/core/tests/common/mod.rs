#![allow(dead_code)]

pub mod cli;

use std::f64::consts::PI;

use apspectra::{Signal, TrigPolynomial};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Frequencies uniform in `[-fmax, fmax]` with pairwise gaps of at least `gap`.
pub fn separated_frequencies(rng: &mut ChaCha8Rng, count: usize, fmax: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut f: Vec<f64> = (0..count).map(|_| rng.gen_range(-fmax..=fmax)).collect();
        f.sort_by(f64::total_cmp);
        if f.windows(2).all(|w| w[1] - w[0] >= gap) {
            return f;
        }
    }
}

pub fn random_coefficient(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..2.0 * PI))
}

/// Planted spectrum: 2–8 terms, frequencies in [-5, 5] with gaps >= 0.3,
/// magnitudes in [0.5, 3].
pub fn planted(rng: &mut ChaCha8Rng) -> Vec<(f64, Complex64)> {
    let count = rng.gen_range(2..=8);
    separated_frequencies(rng, count, 5.0, 0.3)
        .into_iter()
        .map(|l| (l, random_coefficient(rng, 0.5, 3.0)))
        .collect()
}

pub fn signal(pairs: &[(f64, Complex64)]) -> Signal {
    Signal::Trig(TrigPolynomial::from_pairs(pairs.iter().copied()).unwrap())
}

/// Real 1-periodic polynomial: harmonics `2πk`, `1 <= k <= 5`, with
/// conjugate-symmetric coefficients and a real constant term.
pub fn real_periodic(rng: &mut ChaCha8Rng) -> Signal {
    let mut pairs = vec![(0.0, Complex64::new(rng.gen_range(-1.0..1.0), 0.0))];
    let harmonics = rng.gen_range(1..=5);
    for k in 1..=harmonics {
        if k > 1 && rng.gen_bool(0.3) {
            continue;
        }
        let c = random_coefficient(rng, 0.1, 2.0);
        let l = 2.0 * PI * k as f64;
        pairs.push((l, c));
        pairs.push((-l, c.conj()));
    }
    signal(&pairs)
}
