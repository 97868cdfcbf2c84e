//! Bohr mean values, Bohr–Fourier coefficients and exponent scanning.
//!
//! The mean `M{f} = lim (1/T) ∫_a^{a+T} f` is approximated over geometric
//! windows `T_m = T_0 · g^m` with composite Gauss–Legendre quadrature. The
//! sequence stops once successive windows agree to `tol · (1 + |value|)` and
//! the leakage envelope (see [`Convergence`]) is below the same bound. The
//! coefficient `a(λ)` is the mean of `f(x) e^{-iλx}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_finite, check_positive, Error, Partial, Result};
use crate::quadrature::{exponential_sum_integral, max_panel_width, panel_count};
use crate::search::golden_section_max;
use crate::signal::{Signal, TrigPolynomial};

pub const DEFAULT_T_INITIAL: f64 = 64.0;
pub const DEFAULT_GROWTH: f64 = 2.0;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_MAX_DOUBLINGS: u32 = 16;

/// Exponent of the probe window `T_{m-1} · g^{1/φ}` placed between
/// consecutive windows.
pub const PROBE_EXPONENT: f64 = 0.618_033_988_749_894_9;

/// Golden-section iterations per refinement stage.
pub const REFINE_ITERATIONS: usize = 40;

/// Window schedule and stopping rule shared by every windowed limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureParams {
    pub t_initial: f64,
    pub growth: f64,
    pub tolerance: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureParams {
    fn default() -> Self {
        Self {
            t_initial: DEFAULT_T_INITIAL,
            growth: DEFAULT_GROWTH,
            tolerance: DEFAULT_TOLERANCE,
            max_doublings: DEFAULT_MAX_DOUBLINGS,
        }
    }
}

impl QuadratureParams {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("t_initial", self.t_initial)?;
        check_positive("tolerance", self.tolerance)?;
        if !(self.growth.is_finite() && self.growth > 1.0) {
            return Err(Error::param(
                "growth",
                format!("must be finite and > 1, got {}", self.growth),
            ));
        }
        Ok(())
    }

    pub fn window(&self, m: u32) -> f64 {
        self.t_initial * self.growth.powi(m as i32)
    }

    /// Probe window between `T_{m-1}` and `T_m`, for `m >= 1`.
    pub fn probe_window(&self, m: u32) -> f64 {
        self.t_initial * self.growth.powf(m as f64 - 1.0 + PROBE_EXPONENT)
    }

    pub fn final_window(&self) -> f64 {
        self.window(self.max_doublings)
    }

    /// Relative-plus-absolute agreement test between successive estimates.
    pub fn agrees(&self, delta: f64, value: f64) -> bool {
        delta <= self.tolerance * (1.0 + value.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanValueEstimate {
    pub value: Complex64,
    pub offset: f64,
    /// `(T, (1/T) ∫_a^{a+T} ...)` for each window evaluated.
    pub windows: Vec<(f64, Complex64)>,
    pub converged: bool,
    pub tolerance: f64,
}

/// `(1/T) ∫_a^{a+T} p(x) e^{-i·shift·x} dx` by composite Gauss–Legendre with
/// panels no wider than `π / (4 (λ_max + |shift|))`.
pub fn window_mean(p: &TrigPolynomial, shift: f64, a: f64, t: f64) -> Complex64 {
    let fastest = p.max_abs_frequency() + shift.abs();
    let panels = panel_count(t, max_panel_width(fastest));
    exponential_sum_integral(p.terms(), shift, a, t, panels) / t
}

/// Stopping rule for a windowed limit `E(T) = L + S(T)/T` with `S` bounded.
///
/// Each comparison records `|E(T_m) - E(T_{m-1})| · T_m` and
/// `|E(T_m) - E(T_probe)| · T_m`, both of the order of `sup |S|`. The limit is
/// accepted when the largest recorded value divided by `T_m` is within
/// `tol · (1 + |value|)`. The probe window has an irrational log-ratio to the
/// geometric windows, so a leakage frequency `δ` with `δ T_0` close to a
/// multiple of `2π`, which freezes `E(T_m)` across doublings, still shows up
/// in the probe difference.
#[derive(Debug, Clone, Copy, Default)]
pub struct Convergence {
    envelope: f64,
}

impl Convergence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the differences at window `t` and reports whether the value
    /// is accepted.
    pub fn accept(
        &mut self,
        params: &QuadratureParams,
        t: f64,
        delta_previous: f64,
        delta_probe: f64,
        value: f64,
    ) -> bool {
        self.envelope = self.envelope.max(delta_previous * t).max(delta_probe * t);
        params.agrees(self.envelope / t, value)
    }
}

fn windowed_limit(
    p: &TrigPolynomial,
    shift: f64,
    a: f64,
    params: &QuadratureParams,
) -> Result<MeanValueEstimate> {
    params.validate()?;
    check_finite("offset", a)?;
    check_finite("lambda", shift)?;
    let mut windows: Vec<(f64, Complex64)> = Vec::new();
    let mut rule = Convergence::new();
    for m in 0..=params.max_doublings {
        let t = params.window(m);
        let est = window_mean(p, shift, a, t);
        let done = windows.last().is_some_and(|&(_, prev)| {
            let probe = window_mean(p, shift, a, params.probe_window(m));
            rule.accept(
                params,
                t,
                (est - prev).norm(),
                (est - probe).norm(),
                est.norm(),
            )
        });
        windows.push((t, est));
        if done {
            return Ok(MeanValueEstimate {
                value: est,
                offset: a,
                windows,
                converged: true,
                tolerance: params.tolerance,
            });
        }
    }
    let value = windows.last().map(|w| w.1).unwrap_or_default();
    Err(Error::NotConverged {
        what: "bohr mean",
        partial: Box::new(Partial::Mean(MeanValueEstimate {
            value,
            offset: a,
            windows,
            converged: false,
            tolerance: params.tolerance,
        })),
    })
}

/// Bohr mean value `M{f}` with averaging windows starting at offset `a`.
pub fn bohr_mean(f: &Signal, a: f64, params: &QuadratureParams) -> Result<MeanValueEstimate> {
    windowed_limit(&f.to_trig(), 0.0, a, params)
}

/// Bohr–Fourier coefficient `a(λ) = M{f(x) e^{-iλx}}`.
pub fn bohr_coefficient(
    f: &Signal,
    lambda: f64,
    params: &QuadratureParams,
) -> Result<MeanValueEstimate> {
    bohr_coefficient_at(f, lambda, 0.0, params)
}

/// [`bohr_coefficient`] with averaging windows starting at offset `a`.
pub fn bohr_coefficient_at(
    f: &Signal,
    lambda: f64,
    a: f64,
    params: &QuadratureParams,
) -> Result<MeanValueEstimate> {
    windowed_limit(&f.to_trig(), lambda, a, params)
}

/// Converged estimate, or the partial estimate carried by `NotConverged`.
pub(crate) fn estimate_or_partial(r: Result<MeanValueEstimate>) -> Result<MeanValueEstimate> {
    match r {
        Err(Error::NotConverged { partial, .. }) => match *partial {
            Partial::Mean(m) => Ok(m),
            other => Err(Error::NotConverged {
                what: "bohr mean",
                partial: Box::new(other),
            }),
        },
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralLine {
    pub lambda: f64,
    pub coefficient: Complex64,
    pub magnitude: f64,
    /// Whether the coefficient's window sequence met the tolerance.
    pub converged: bool,
    /// Largest averaging window used for the coefficient.
    pub window: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumEstimate {
    pub exponents: Vec<SpectralLine>,
    pub scan_range: (f64, f64),
    pub scan_step: f64,
    pub threshold: f64,
    /// Averaging window used for the coarse grid.
    pub scan_window: f64,
    /// `(λ, a_T(λ))` on the coarse grid at `T = scan_window`.
    pub grid: Vec<(f64, Complex64)>,
}

/// Uniform grid `lo, lo + step, ...` up to `hi` (inclusive up to rounding).
pub(crate) fn uniform_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Indices of local maxima of `values`; a plateau contributes its leftmost index.
pub(crate) fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut peaks = Vec::new();
    let n = values.len();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[j + 1] == values[i] {
            j += 1;
        }
        let rises = i == 0 || values[i - 1] < values[i];
        let falls = j + 1 == n || values[j + 1] < values[i];
        if rises && falls {
            peaks.push(i);
        }
        i = j + 1;
    }
    peaks
}

/// Refines a grid peak of `|a_T(λ)|` by golden-section search, first within
/// `±step` at the scan window and then over doubling windows with a bracket
/// of three quarters of the main-lobe half-width `2π/T`.
fn refine_peak(p: &TrigPolynomial, seed: f64, step: f64, t_scan: f64, t_final: f64) -> f64 {
    let mut centre = seed;
    let mut t = t_scan;
    let mut half = step;
    loop {
        // re-centre when the maximum sits on the bracket edge
        for _ in 0..4 {
            let (x, _) = golden_section_max(
                |l| window_mean(p, l, 0.0, t).norm(),
                centre - half,
                centre + half,
                REFINE_ITERATIONS,
            );
            let on_edge = (x - centre).abs() > 0.98 * half;
            centre = x;
            if !on_edge {
                break;
            }
        }
        if t >= t_final {
            return centre;
        }
        t = (2.0 * t).min(t_final);
        half = 0.75 * 2.0 * PI / t;
    }
}

/// Scans `|a(λ)|` on a uniform grid, refines local maxima and reports the
/// exponents whose converged coefficient magnitude reaches `threshold`.
///
/// The coarse grid uses the window `T = π / step`, so the main lobe of each
/// exponent spans four grid steps. Seeds are grid maxima above
/// `threshold / 2`; each seed is refined, its coefficient recomputed with the
/// full window schedule, and candidates closer than `step` are merged.
pub fn scan_spectrum(
    f: &Signal,
    lambda_range: (f64, f64),
    step: f64,
    threshold: f64,
    params: &QuadratureParams,
) -> Result<SpectrumEstimate> {
    let (lo, hi) = lambda_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange { lo, hi });
    }
    check_positive("step", step)?;
    check_positive("threshold", threshold)?;
    params.validate()?;

    let p = f.to_trig();
    let p: &TrigPolynomial = &p;
    let t_scan = PI / step;
    let t_final = params.final_window().max(t_scan);

    let grid: Vec<(f64, Complex64)> = uniform_grid(lo, hi, step)
        .into_par_iter()
        .map(|l| (l, window_mean(p, l, 0.0, t_scan)))
        .collect();
    let magnitudes: Vec<f64> = grid.iter().map(|g| g.1.norm()).collect();

    let seeds: Vec<f64> = local_maxima(&magnitudes)
        .into_iter()
        .filter(|&i| magnitudes[i] >= 0.5 * threshold)
        .map(|i| grid[i].0)
        .collect();

    let candidates: Vec<SpectralLine> = seeds
        .par_iter()
        .map(|&seed| -> Result<SpectralLine> {
            let lambda = refine_peak(p, seed, step, t_scan, t_final);
            let est = estimate_or_partial(windowed_limit(p, lambda, 0.0, params))?;
            Ok(SpectralLine {
                lambda,
                coefficient: est.value,
                magnitude: est.value.norm(),
                converged: est.converged,
                window: est.windows.last().map(|w| w.0).unwrap_or(0.0),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut kept: Vec<SpectralLine> = candidates
        .into_iter()
        .filter(|c| c.magnitude >= threshold && c.lambda >= lo - step && c.lambda <= hi + step)
        .collect();
    kept.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let mut exponents: Vec<SpectralLine> = Vec::with_capacity(kept.len());
    for c in kept {
        match exponents.last_mut() {
            Some(last) if c.lambda - last.lambda <= step => {
                if c.magnitude > last.magnitude {
                    *last = c;
                }
            }
            _ => exponents.push(c),
        }
    }

    Ok(SpectrumEstimate {
        exponents,
        scan_range: lambda_range,
        scan_step: step,
        threshold,
        scan_window: t_scan,
        grid,
    })
}
