//! Truncated Riemann-zeta partial sums `ζ_{x,N}(y) = Σ_{n≤N} n^{-x} e^{-iy log n}`
//! and their derivatives, viewed as almost periodic functions of `y` with
//! frequencies `-log n`.

use num_complex::Complex64;
use serde::Serialize;

use crate::bohr::QuadratureParams;
use crate::error::{check_finite, Error, Partial, Result};
use crate::signal::{times_i_lambda, Signal, TrigPolynomial, TrigTerm};
use crate::variation::average_variation;

/// Largest truncation length accepted from the command line.
pub const MAX_CLI_TERMS: u32 = 10_000;

/// `J`-th derivative of `ζ_{x,N}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaTruncation {
    /// Real part `x` of the argument.
    pub abscissa: f64,
    /// Number of terms `N`.
    pub terms: u32,
    /// Derivative order `J`.
    pub order: u32,
}

impl ZetaTruncation {
    pub fn new(abscissa: f64, terms: u32, order: u32) -> Result<Self> {
        check_finite("x", abscissa)?;
        if terms == 0 {
            return Err(Error::param("N", "must be >= 1"));
        }
        Ok(Self {
            abscissa,
            terms,
            order,
        })
    }

    pub fn derivative(&self) -> Self {
        Self {
            order: self.order + 1,
            ..*self
        }
    }

    pub fn max_abs_frequency(&self) -> f64 {
        if self.order > 0 && self.terms == 1 {
            return 0.0;
        }
        (self.terms as f64).ln()
    }

    /// Direct summation `Σ n^{-x} (-i log n)^J e^{-iy log n}`.
    pub fn eval(&self, y: f64) -> Complex64 {
        let rot = match self.order % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        let sum: Complex64 = (1..=self.terms)
            .map(|n| {
                let ln = (n as f64).ln();
                let mag = (n as f64).powf(-self.abscissa) * ln.powi(self.order as i32);
                Complex64::from_polar(mag, -y * ln)
            })
            .sum();
        rot * sum
    }

    /// Terms `(-log n, n^{-x} (-i log n)^J)` for `n = 1..=N`, canonicalised.
    ///
    /// The factor `(-i log n)^J` is applied as `J` successive multiplications
    /// by `i·λ`, the same operation sequence as term-by-term differentiation.
    pub fn to_trig(&self) -> TrigPolynomial {
        let terms = (1..=self.terms)
            .map(|n| {
                let lambda = -(n as f64).ln() + 0.0;
                let mut coef = Complex64::new((n as f64).powf(-self.abscissa), 0.0);
                for _ in 0..self.order {
                    coef = times_i_lambda(lambda, coef);
                }
                TrigTerm::new(lambda, coef)
            })
            .collect();
        TrigPolynomial::canonical(terms)
    }
}

/// `max_{1≤n≤N} n^{-x} (log n)^{J+1}`; the `n = 1` candidate is 0.
pub fn zeta_variation_lower_bound(x: f64, n_terms: u32, order: u32) -> f64 {
    (1..=n_terms)
        .map(|n| {
            let ln = (n as f64).ln();
            (n as f64).powf(-x) * ln.powi(order as i32 + 1)
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaBoundReport {
    pub truncation: ZetaTruncation,
    pub average_variation: f64,
    pub lower_bound: f64,
    /// `average_variation - lower_bound`.
    pub margin: f64,
    pub satisfied: bool,
    pub converged: bool,
    pub report_tolerance: f64,
    pub windows: Vec<(f64, f64)>,
}

/// Estimates the average variation of `ζ^{(J)}_{x,N}` and compares it with
/// [`zeta_variation_lower_bound`]. A non-converged window sequence yields a
/// report with `converged = false` built from the last window.
pub fn zeta_bound_experiment(
    z: &ZetaTruncation,
    params: &QuadratureParams,
    report_tolerance: f64,
) -> Result<ZetaBoundReport> {
    let est = match average_variation(&Signal::Zeta(*z), params) {
        Ok(e) => e,
        Err(Error::NotConverged { partial, .. }) => match *partial {
            Partial::AverageVariation(e) => e,
            other => {
                return Err(Error::NotConverged {
                    what: "average variation",
                    partial: Box::new(other),
                })
            }
        },
        Err(e) => return Err(e),
    };
    let lower_bound = zeta_variation_lower_bound(z.abscissa, z.terms, z.order);
    Ok(ZetaBoundReport {
        truncation: *z,
        average_variation: est.value,
        lower_bound,
        margin: est.value - lower_bound,
        satisfied: est.value >= lower_bound * (1.0 - report_tolerance),
        converged: est.converged,
        report_tolerance,
        windows: est.windows,
    })
}
