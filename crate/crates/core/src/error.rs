use thiserror::Error;

use crate::bohr::MeanValueEstimate;
use crate::variation::{AverageVariationEstimate, VariationEstimate};

pub type Result<T> = std::result::Result<T, Error>;

/// Estimate that was still in progress when an iteration budget ran out.
#[derive(Debug, Clone, PartialEq)]
pub enum Partial {
    Mean(MeanValueEstimate),
    Variation(VariationEstimate),
    AverageVariation(AverageVariationEstimate),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("cannot integrate a term with zero frequency (coefficient {re}{im:+}i): the primitive is unbounded")]
    ZeroFrequencyTerm { re: f64, im: f64 },

    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("probe step {step} exceeds the limit {limit} set by the fastest frequency")]
    StepTooCoarse { step: f64, limit: f64 },

    #[error("no translation numbers found in the searched range")]
    EmptyList,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("the decay bound is undefined at frequency zero")]
    ZeroExponent,

    #[error("signal is not 1-periodic (max probe discrepancy {discrepancy:e})")]
    NotPeriodic { discrepancy: f64 },

    #[error("{what} did not converge within the iteration budget")]
    NotConverged {
        what: &'static str,
        partial: Box<Partial>,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn partial(&self) -> Option<&Partial> {
        match self {
            Error::NotConverged { partial, .. } => Some(partial),
            _ => None,
        }
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {value}")))
    }
}
