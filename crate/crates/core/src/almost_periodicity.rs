//! ε-translation numbers: shifts `τ` with `sup_x |f(x+τ) - f(x)| < ε`, the
//! supremum taken over a finite probe grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bohr::uniform_grid;
use crate::error::{check_finite, check_positive, Error, Result};
use crate::signal::Signal;

pub const DEFAULT_PROBE_WINDOW: f64 = 100.0;

/// Finest probe step allowed for a signal: `π / (10 λ_max)`.
pub fn probe_step_limit(f: &Signal) -> f64 {
    let lambda_max = f.max_abs_frequency();
    if lambda_max > 0.0 {
        PI / (10.0 * lambda_max)
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationNumber {
    pub tau: f64,
    pub discrepancy: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InclusionLengthEstimate {
    pub epsilon: f64,
    pub l_estimate: f64,
    pub search_range: (f64, f64),
}

/// Probe grid `0, h, 2h, ...` up to `window`, with the signal's terms
/// pre-evaluated so each shift costs one complex product per term and node.
pub struct ProbeGrid {
    frequencies: Vec<f64>,
    /// `A_k e^{iλ_k x_i}`, row-major by node.
    samples: Vec<Complex64>,
    nodes: usize,
}

impl ProbeGrid {
    pub fn new(f: &Signal, window: f64, step: f64) -> Self {
        let p = f.to_trig();
        let xs = uniform_grid(0.0, window, step);
        let frequencies: Vec<f64> = p.frequencies().collect();
        let mut samples = Vec::with_capacity(xs.len() * frequencies.len());
        for &x in &xs {
            samples.extend(p.terms().iter().map(|t| t.eval(x)));
        }
        Self {
            frequencies,
            samples,
            nodes: xs.len(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `max_i |f(x_i + τ) - f(x_i)|`.
    pub fn discrepancy(&self, tau: f64) -> f64 {
        let k = self.frequencies.len();
        if k == 0 {
            return 0.0;
        }
        let shift: Vec<Complex64> = self
            .frequencies
            .iter()
            .map(|&l| Complex64::from_polar(1.0, l * tau) - 1.0)
            .collect();
        self.samples
            .chunks_exact(k)
            .map(|row| {
                row.iter()
                    .zip(shift.iter())
                    .map(|(s, d)| s * d)
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Every grid shift in `tau_range` whose probe-grid discrepancy is below `epsilon`.
pub fn find_translation_numbers(
    f: &Signal,
    epsilon: f64,
    tau_range: (f64, f64),
    tau_step: f64,
    probe_window: f64,
    probe_step: f64,
) -> Result<Vec<TranslationNumber>> {
    check_positive("epsilon", epsilon)?;
    check_positive("tau_step", tau_step)?;
    check_positive("probe_window", probe_window)?;
    check_positive("probe_step", probe_step)?;
    let (lo, hi) = tau_range;
    check_finite("tau_range", lo)?;
    check_finite("tau_range", hi)?;
    if lo >= hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    let limit = probe_step_limit(f);
    if probe_step > limit * (1.0 + 1e-12) {
        return Err(Error::StepTooCoarse {
            step: probe_step,
            limit,
        });
    }
    let grid = ProbeGrid::new(f, probe_window, probe_step);
    let found = uniform_grid(lo, hi, tau_step)
        .into_par_iter()
        .filter_map(|tau| {
            let discrepancy = grid.discrepancy(tau);
            (discrepancy < epsilon).then_some(TranslationNumber {
                tau,
                discrepancy,
                epsilon,
            })
        })
        .collect();
    Ok(found)
}

/// Largest gap between consecutive translation numbers, counting the gaps to
/// both ends of `search_range`.
pub fn estimate_inclusion_length(
    numbers: &[TranslationNumber],
    search_range: (f64, f64),
) -> Result<InclusionLengthEstimate> {
    let (lo, hi) = search_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange { lo, hi });
    }
    let (first, last) = match (numbers.first(), numbers.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::EmptyList),
    };
    let inner = numbers
        .windows(2)
        .map(|w| w[1].tau - w[0].tau)
        .fold(0.0, f64::max);
    let l_estimate = inner.max(first.tau - lo).max(hi - last.tau);
    Ok(InclusionLengthEstimate {
        epsilon: first.epsilon,
        l_estimate,
        search_range,
    })
}
