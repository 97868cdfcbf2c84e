//! Signal representations.
//!
//! A [`TrigPolynomial`] is a finite sum `Σ A_k e^{iλ_k x}` with arbitrary real
//! frequencies. It is kept in canonical form: frequencies strictly increasing,
//! near-equal frequencies merged, exactly-zero coefficients dropped. Every
//! algebraic operation returns a canonical polynomial.

use std::borrow::Cow;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::ZetaTruncation;

/// Relative tolerance under which two frequencies are treated as the same.
pub const FREQUENCY_MERGE_TOLERANCE: f64 = 1e-12;

/// Tolerance for the conjugate-symmetry test in [`TrigPolynomial::is_real_valued`].
const REAL_SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub frequency: f64,
    pub coefficient: Complex64,
}

impl TrigTerm {
    pub fn new(frequency: f64, coefficient: Complex64) -> Self {
        Self {
            frequency,
            coefficient,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        let (s, c) = (self.frequency * x).sin_cos();
        self.coefficient * Complex64::new(c, s)
    }
}

#[inline]
pub(crate) fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= FREQUENCY_MERGE_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

/// Finite trigonometric polynomial in canonical form.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    terms: Vec<TrigTerm>,
}

impl TrigPolynomial {
    /// Builds a canonical polynomial, merging equal frequencies and dropping
    /// zero coefficients. Non-finite frequencies or coefficients are rejected.
    pub fn new(terms: Vec<TrigTerm>) -> Result<Self> {
        for t in &terms {
            if !t.frequency.is_finite() {
                return Err(Error::param(
                    "frequency",
                    format!("must be finite, got {}", t.frequency),
                ));
            }
            if !(t.coefficient.re.is_finite() && t.coefficient.im.is_finite()) {
                return Err(Error::param(
                    "coefficient",
                    format!("must be finite, got {}", t.coefficient),
                ));
            }
        }
        Ok(Self::canonical(terms))
    }

    /// Convenience constructor from `(frequency, coefficient)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, Complex64)>,
    {
        Self::new(
            pairs
                .into_iter()
                .map(|(f, c)| TrigTerm::new(f, c))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::canonical(vec![TrigTerm::new(0.0, c)])
    }

    pub(crate) fn canonical(mut terms: Vec<TrigTerm>) -> Self {
        for t in terms.iter_mut() {
            // -0.0 and 0.0 are the same frequency
            t.frequency += 0.0;
        }
        terms.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
        let mut merged: Vec<TrigTerm> = Vec::with_capacity(terms.len());
        let mut iter = terms.into_iter();
        if let Some(mut run) = iter.next() {
            for t in iter {
                if same_frequency(run.frequency, t.frequency) {
                    run.coefficient += t.coefficient;
                } else {
                    merged.push(run);
                    run = t;
                }
            }
            merged.push(run);
        }
        merged.retain(|t| t.coefficient != Complex64::new(0.0, 0.0));
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.terms.iter().map(|t| t.frequency)
    }

    /// Largest `|λ|` present, or 0 for the zero polynomial.
    pub fn max_abs_frequency(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.frequency.abs())
            .fold(0.0, f64::max)
    }

    /// `Σ |A_k|`, an upper bound for `sup |p|`.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.norm()).sum()
    }

    /// Coefficient at `frequency` (merge tolerance applies), zero if absent.
    pub fn coefficient_at(&self, frequency: f64) -> Complex64 {
        self.terms
            .iter()
            .find(|t| same_frequency(t.frequency, frequency))
            .map(|t| t.coefficient)
            .unwrap_or_default()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.len() + other.len());
        terms.extend_from_slice(&self.terms);
        terms.extend_from_slice(&other.terms);
        Self::canonical(terms)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for p in &self.terms {
            for q in &other.terms {
                terms.push(TrigTerm::new(
                    p.frequency + q.frequency,
                    p.coefficient * q.coefficient,
                ));
            }
        }
        Self::canonical(terms)
    }

    /// Pointwise complex conjugate: `(λ, A) -> (-λ, conj A)`.
    pub fn conjugate(&self) -> Self {
        Self::canonical(
            self.terms
                .iter()
                .map(|t| TrigTerm::new(-t.frequency, t.coefficient.conj()))
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::canonical(
            self.terms
                .iter()
                .map(|t| TrigTerm::new(t.frequency, c * t.coefficient))
                .collect(),
        )
    }

    /// Term-by-term derivative `(λ, A) -> (λ, iλA)`; the constant term vanishes.
    pub fn differentiate(&self) -> Self {
        Self::canonical(
            self.terms
                .iter()
                .map(|t| TrigTerm::new(t.frequency, times_i_lambda(t.frequency, t.coefficient)))
                .collect(),
        )
    }

    pub fn differentiate_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.differentiate())
    }

    /// Term-by-term primitive `(λ, A) -> (λ, A/(iλ))` with zero integration constant.
    pub fn integrate(&self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            if t.frequency == 0.0 {
                return Err(Error::ZeroFrequencyTerm {
                    re: t.coefficient.re,
                    im: t.coefficient.im,
                });
            }
            // A / (iλ) = -iA / λ
            let a = t.coefficient;
            terms.push(TrigTerm::new(
                t.frequency,
                Complex64::new(a.im / t.frequency, -a.re / t.frequency),
            ));
        }
        Ok(Self::canonical(terms))
    }

    /// True when the polynomial is conjugate-symmetric, i.e. takes real values.
    pub fn is_real_valued(&self) -> bool {
        self.terms.iter().all(|t| {
            let scale = REAL_SYMMETRY_TOLERANCE * t.coefficient.norm().max(f64::MIN_POSITIVE);
            let mirror = self.coefficient_at(-t.frequency);
            (mirror - t.coefficient.conj()).norm() <= scale
        })
    }
}

#[inline]
pub(crate) fn times_i_lambda(lambda: f64, a: Complex64) -> Complex64 {
    Complex64::new(0.0, lambda) * a
}

/// An evaluable almost periodic signal.
#[derive(Debug, Clone, PartialEq)]
pub enum Signal {
    Trig(TrigPolynomial),
    Zeta(ZetaTruncation),
}

impl Signal {
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            Signal::Trig(p) => p.eval(x),
            Signal::Zeta(z) => z.eval(x),
        }
    }

    /// Exact trigonometric-polynomial form of the signal.
    pub fn to_trig(&self) -> Cow<'_, TrigPolynomial> {
        match self {
            Signal::Trig(p) => Cow::Borrowed(p),
            Signal::Zeta(z) => Cow::Owned(z.to_trig()),
        }
    }

    pub fn derivative(&self) -> TrigPolynomial {
        match self {
            Signal::Trig(p) => p.differentiate(),
            Signal::Zeta(z) => z.derivative().to_trig(),
        }
    }

    /// n-th derivative as a signal of the same kind.
    pub fn derivative_n(&self, n: usize) -> Signal {
        match self {
            Signal::Trig(p) => Signal::Trig(p.differentiate_n(n)),
            Signal::Zeta(z) => Signal::Zeta(ZetaTruncation {
                order: z.order + n as u32,
                ..*z
            }),
        }
    }

    pub fn max_abs_frequency(&self) -> f64 {
        match self {
            Signal::Trig(p) => p.max_abs_frequency(),
            Signal::Zeta(z) => z.max_abs_frequency(),
        }
    }
}

impl From<TrigPolynomial> for Signal {
    fn from(p: TrigPolynomial) -> Self {
        Signal::Trig(p)
    }
}

impl From<ZetaTruncation> for Signal {
    fn from(z: ZetaTruncation) -> Self {
        Signal::Zeta(z)
    }
}

/// On-disk signal description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SignalSpec {
    Trig { terms: Vec<TermSpec> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub freq: f64,
    pub re: f64,
    pub im: f64,
}

impl SignalSpec {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn load(path: &Path) -> std::result::Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn to_polynomial(&self) -> Result<TrigPolynomial> {
        match self {
            SignalSpec::Trig { terms } => TrigPolynomial::from_pairs(
                terms.iter().map(|t| (t.freq, Complex64::new(t.re, t.im))),
            ),
        }
    }
}

impl From<&TrigPolynomial> for SignalSpec {
    fn from(p: &TrigPolynomial) -> Self {
        SignalSpec::Trig {
            terms: p
                .terms()
                .iter()
                .map(|t| TermSpec {
                    freq: t.frequency,
                    re: t.coefficient.re,
                    im: t.coefficient.im,
                })
                .collect(),
        }
    }
}
