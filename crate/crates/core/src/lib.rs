//! Numerical toolkit for uniformly almost periodic functions.
//!
//! Signals are finite trigonometric polynomials `Σ A_k e^{iλ_k x}` with
//! arbitrary real frequencies, or truncated zeta sums. The crate computes
//! Bohr mean values and Bohr–Fourier coefficients, scans for Fourier
//! exponents, searches ε-translation numbers, estimates (average) total
//! variation and checks the decay bound `|A_j| ≤ V̄(f^{(n)}) / |λ_j|^{n+1}`.

pub mod almost_periodicity;
pub mod bohr;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod quadrature;
pub mod search;
pub mod signal;
pub mod variation;
pub mod zeta;

pub use almost_periodicity::{
    estimate_inclusion_length, find_translation_numbers, InclusionLengthEstimate, TranslationNumber,
};
pub use bohr::{
    bohr_coefficient, bohr_coefficient_at, bohr_mean, scan_spectrum, MeanValueEstimate,
    QuadratureParams, SpectralLine, SpectrumEstimate,
};
pub use bounds::{check_decay_bound, check_taibleson, BoundEntry, BoundParams, BoundReport};
pub use error::{Error, Partial, Result};
pub use signal::{Signal, SignalSpec, TrigPolynomial, TrigTerm};
pub use variation::{
    average_variation, partition_variation, total_variation, AverageVariationEstimate,
    VariationEstimate, VariationMethod,
};
pub use zeta::{
    zeta_bound_experiment, zeta_variation_lower_bound, ZetaBoundReport, ZetaTruncation,
};
