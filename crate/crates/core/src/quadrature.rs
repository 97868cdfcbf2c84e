//! Composite 8-point Gauss–Legendre quadrature.
//!
//! Besides the generic rule over a closure, this module evaluates the same
//! composite rule for a sum of complex exponentials in closed form: on a
//! uniform panel grid every panel integral of `e^{iμx}` is the first panel's
//! integral times `e^{iμpw}`, so the sum over panels is a geometric series.
//! The result matches the panel-by-panel rule to rounding, at O(terms) cost
//! independent of the window length.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::signal::TrigTerm;

/// Positive Gauss–Legendre abscissae on [-1, 1] for 8 nodes.
const GL8_POS_NODES: [f64; 4] = [
    0.183_434_642_495_649_78,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];

const GL8_POS_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_361_77,
    0.313_706_645_877_887_05,
    0.222_381_034_453_374_34,
    0.101_228_536_290_376_69,
];

/// All 8 nodes, ascending.
pub const GL8_NODES: [f64; 8] = [
    -GL8_POS_NODES[3],
    -GL8_POS_NODES[2],
    -GL8_POS_NODES[1],
    -GL8_POS_NODES[0],
    GL8_POS_NODES[0],
    GL8_POS_NODES[1],
    GL8_POS_NODES[2],
    GL8_POS_NODES[3],
];

pub const GL8_WEIGHTS: [f64; 8] = [
    GL8_POS_WEIGHTS[3],
    GL8_POS_WEIGHTS[2],
    GL8_POS_WEIGHTS[1],
    GL8_POS_WEIGHTS[0],
    GL8_POS_WEIGHTS[0],
    GL8_POS_WEIGHTS[1],
    GL8_POS_WEIGHTS[2],
    GL8_POS_WEIGHTS[3],
];

/// Number of equal panels needed so that none is wider than `max_width`.
pub fn panel_count(length: f64, max_width: f64) -> usize {
    if !(max_width.is_finite() && max_width > 0.0) || length <= 0.0 {
        return 1;
    }
    ((length / max_width).ceil() as usize).max(1)
}

/// Largest panel width for an integrand whose fastest angular frequency is
/// `max_frequency`: `π / (4 · max_frequency)`, unbounded for constants.
pub fn max_panel_width(max_frequency: f64) -> f64 {
    if max_frequency > 0.0 {
        std::f64::consts::PI / (4.0 * max_frequency)
    } else {
        f64::INFINITY
    }
}

/// Single-panel 8-point rule on `[a, b]`.
pub fn gauss_legendre<T, F>(f: F, a: f64, b: f64) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::default();
    for (t, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
        acc = acc + f(mid + half * t) * *w;
    }
    acc * half
}

/// Composite 8-point rule with `panels` equal panels on `[a, b]`.
pub fn composite_gauss_legendre<T, F>(f: F, a: f64, b: f64, panels: usize) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut acc = T::default();
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let hi = if p + 1 == panels { b } else { lo + width };
        acc = acc + gauss_legendre(&f, lo, hi);
    }
    acc
}

/// Composite 8-point rule for `∫_a^{a+length} Σ_k A_k e^{i(λ_k - shift)x} dx`
/// on `panels` equal panels, evaluated through the geometric-series identity.
pub fn exponential_sum_integral(
    terms: &[TrigTerm],
    shift: f64,
    a: f64,
    length: f64,
    panels: usize,
) -> Complex64 {
    let panels = panels.max(1);
    let n = panels as f64;
    let width = length / n;
    let half = 0.5 * width;
    let centre = a + 0.5 * length;
    terms
        .iter()
        .map(|t| {
            let mu = t.frequency - shift;
            // One panel of e^{iμx} centred at 0; symmetric nodes make it real.
            let panel: f64 = GL8_POS_NODES
                .iter()
                .zip(GL8_POS_WEIGHTS.iter())
                .map(|(x, w)| 2.0 * w * (mu * half * x).cos())
                .sum::<f64>()
                * half;
            // Σ_{p<n} e^{iμpw} = e^{iμ(n-1)w/2} · sin(nμw/2) / sin(μw/2)
            let theta = 0.5 * mu * width;
            let s = theta.sin();
            let dirichlet = if s == 0.0 { n } else { (n * theta).sin() / s };
            let (sp, cp) = (mu * centre).sin_cos();
            t.coefficient * Complex64::new(cp, sp) * (panel * dirichlet)
        })
        .sum()
}
