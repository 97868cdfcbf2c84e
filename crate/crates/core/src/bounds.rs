//! Coefficient decay checks: `|A_j| ≤ V̄(f^{(n)}) / |λ_j|^{n+1}` for almost
//! periodic signals, and the classical `|c_j| ≤ V_[0,1](f) / (2π|j|)` for
//! 1-periodic ones.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bohr::{bohr_coefficient, QuadratureParams};
use crate::error::{check_positive, Error, Partial, Result};
use crate::signal::Signal;
use crate::variation::{
    average_variation, total_variation, DEFAULT_INITIAL_GRID, DEFAULT_MAX_REFINEMENTS,
};

pub const DEFAULT_REPORT_TOLERANCE: f64 = 1e-3;

/// Largest allowed `|f(x+1) - f(x)|` on the periodicity probe grid.
pub const PERIODICITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    pub quadrature: QuadratureParams,
    pub report_tolerance: f64,
    pub initial_grid: usize,
    pub max_refinements: u32,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            quadrature: QuadratureParams::default(),
            report_tolerance: DEFAULT_REPORT_TOLERANCE,
            initial_grid: DEFAULT_INITIAL_GRID,
            max_refinements: DEFAULT_MAX_REFINEMENTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub lambda: f64,
    pub coeff_magnitude: f64,
    pub bound: f64,
    /// `bound - coeff_magnitude`.
    pub margin: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
    pub derivative_order: u32,
    pub variation_value: f64,
    pub report_tolerance: f64,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }
}

/// Absolute slack for coefficients that are zero up to rounding, relative
/// to `1 + Σ|A_k|`.
const ROUNDING_FLOOR: f64 = 1e-12;

fn rounding_floor(f: &Signal) -> f64 {
    ROUNDING_FLOOR * (1.0 + f.to_trig().l1_norm())
}

fn entry(
    lambda: f64,
    coeff_magnitude: f64,
    bound: f64,
    report_tolerance: f64,
    floor: f64,
) -> BoundEntry {
    BoundEntry {
        lambda,
        coeff_magnitude,
        bound,
        margin: bound - coeff_magnitude,
        satisfied: coeff_magnitude <= bound * (1.0 + report_tolerance) + floor,
    }
}

/// Checks `|A_j| ≤ V̄(f^{(n)}) / |λ_j|^{n+1}` at each requested exponent.
pub fn check_decay_bound(
    f: &Signal,
    exponents: &[f64],
    n: u32,
    params: &BoundParams,
) -> Result<BoundReport> {
    check_positive("report_tolerance", params.report_tolerance)?;
    params.quadrature.validate()?;
    if exponents.contains(&0.0) {
        return Err(Error::ZeroExponent);
    }
    if let Some(&bad) = exponents.iter().find(|l| !l.is_finite()) {
        return Err(Error::param("lambda", format!("must be finite, got {bad}")));
    }
    let variation = average_variation(&f.derivative_n(n as usize), &params.quadrature)?.value;
    let floor = rounding_floor(f);
    let entries = exponents
        .iter()
        .map(|&lambda| {
            let a = bohr_coefficient(f, lambda, &params.quadrature)?.value;
            let bound = variation / lambda.abs().powi(n as i32 + 1);
            Ok(entry(
                lambda,
                a.norm(),
                bound,
                params.report_tolerance,
                floor,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport {
        entries,
        derivative_order: n,
        variation_value: variation,
        report_tolerance: params.report_tolerance,
    })
}

/// Largest `|f(x+1) - f(x)|` over a probe grid on `[0, 4]`.
pub fn periodicity_discrepancy(f: &Signal) -> f64 {
    (0..=4000)
        .map(|i| {
            let x = i as f64 * 1e-3;
            (f.eval(x + 1.0) - f.eval(x)).norm()
        })
        .fold(0.0, f64::max)
}

/// Classical bound for a 1-periodic signal: `|c_j| ≤ V_[0,1](f) / (2π|j|)`
/// for `1 ≤ |j| ≤ j_max`, with `c_j = a(2πj)`.
pub fn check_taibleson(f: &Signal, j_max: u32, params: &BoundParams) -> Result<BoundReport> {
    check_positive("report_tolerance", params.report_tolerance)?;
    params.quadrature.validate()?;
    if j_max == 0 {
        return Err(Error::param("j_max", "must be >= 1"));
    }
    let discrepancy = periodicity_discrepancy(f);
    if discrepancy.is_nan() || discrepancy > PERIODICITY_TOLERANCE {
        return Err(Error::NotPeriodic { discrepancy });
    }
    let variation = match total_variation(
        f,
        0.0,
        1.0,
        params.initial_grid,
        params.quadrature.tolerance,
        params.max_refinements,
    ) {
        Ok(v) => v.value,
        Err(Error::NotConverged { partial, .. }) => match *partial {
            Partial::Variation(v) => v.value,
            other => {
                return Err(Error::NotConverged {
                    what: "total variation",
                    partial: Box::new(other),
                })
            }
        },
        Err(e) => return Err(e),
    };
    let floor = rounding_floor(f);
    let j_max = j_max as i64;
    let entries = (-j_max..=j_max)
        .filter(|&j| j != 0)
        .map(|j| {
            let lambda = 2.0 * PI * j as f64;
            let c = bohr_coefficient(f, lambda, &params.quadrature)?.value;
            Ok(entry(
                lambda,
                c.norm(),
                variation / lambda.abs(),
                params.report_tolerance,
                floor,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport {
        entries,
        derivative_order: 0,
        variation_value: variation,
        report_tolerance: params.report_tolerance,
    })
}
