//! Complex simultaneous perturbation stochastic approximation (CSPSA).
//!
//! Each iteration evaluates the cost at `θ ± c_k·Δ` with `Δ` drawn
//! uniformly from `{±1, ±i}^d` and forms
//!
//! ```text
//! g_i = (f(θ + c_kΔ) − f(θ − c_kΔ)) / (2·c_k·Δ_i*)
//! ```
//!
//! which is an estimate of the Wirtinger derivative `∂f/∂θ*`, the
//! steepest-ascent direction of a real cost of complex variables. The
//! update is `θ ← θ − a_k·g` with `a_k = a/(k+1+A)^s`, `c_k = b/(k+1)^r`.

use alloc::vec::Vec;
use core::str::FromStr;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::rng::RngStream;
use crate::statevector::ProductParams;
use crate::{Error, Result};

/// Updated per-qubit vectors below this norm are rejected.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Gain schedule constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainSet {
    /// Step numerator `a`.
    pub a: f64,
    /// Perturbation numerator `b`.
    pub b: f64,
    /// Stability offset `A`.
    pub stability: f64,
    /// Step exponent `s`.
    pub step_exponent: f64,
    /// Perturbation exponent `r`.
    pub perturbation_exponent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainPreset {
    Standard,
    Asymptotic,
}

impl FromStr for GainPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(Self::Standard),
            "asymptotic" => Ok(Self::Asymptotic),
            _ => Err(Error::UnknownPreset),
        }
    }
}

impl GainPreset {
    pub fn gains(self) -> GainSet {
        match self {
            Self::Standard => GainSet { a: 3.0, b: 0.1, stability: 0.0, step_exponent: 0.602, perturbation_exponent: 0.101 },
            Self::Asymptotic => GainSet { a: 3.0, b: 0.1, stability: 0.0, step_exponent: 1.0, perturbation_exponent: 0.166 },
        }
    }
}

/// Looks up a preset by name (`standard` or `asymptotic`).
pub fn preset_gains(name: &str) -> Result<GainSet> {
    Ok(name.parse::<GainPreset>()?.gains())
}

impl GainSet {
    pub fn with_stability(self, stability: f64) -> Self {
        Self { stability, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let exponent_ok = |e: f64| e > 0.0 && e <= 1.0;
        if !(self.a > 0.0 && self.b > 0.0) {
            return Err(Error::InvalidConfig("gain numerators must be positive"));
        }
        if !(self.stability >= 0.0) {
            return Err(Error::InvalidConfig("stability offset must be non-negative"));
        }
        if !exponent_ok(self.step_exponent) || !exponent_ok(self.perturbation_exponent) {
            return Err(Error::InvalidConfig("gain exponents must lie in (0, 1]"));
        }
        Ok(())
    }

    /// `(a_k, c_k)` for the zero-based iteration `k`.
    pub fn at(&self, k: usize) -> (f64, f64) {
        let k = k as f64;
        let a_k = self.a / (k + 1.0 + self.stability).powf(self.step_exponent);
        let c_k = self.b / (k + 1.0).powf(self.perturbation_exponent);
        (a_k, c_k)
    }
}

pub fn gains_at(gains: &GainSet, k: usize) -> (f64, f64) {
    gains.at(k)
}

/// A perturbation vector with components in `{+1, −1, +i, −i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation(Vec<Complex64>);

const SYMBOLS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

impl Perturbation {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("perturbation must have at least one component"));
        }
        if components.iter().any(|c| !SYMBOLS.contains(c)) {
            return Err(Error::InvalidArgument("perturbation components must be one of +1, -1, +i, -i"));
        }
        Ok(Self(components))
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn sample_perturbation(dim: usize, rng: &mut RngStream) -> Result<Perturbation> {
    if dim == 0 {
        return Err(Error::InvalidArgument("perturbation dimension must be at least 1"));
    }
    Ok(Perturbation((0..dim).map(|_| SYMBOLS[rng.below(4)]).collect()))
}

/// `θ + scale·Δ`.
pub fn perturb(theta: &[Complex64], delta: &Perturbation, scale: f64) -> Vec<Complex64> {
    theta.iter().zip(delta.components()).map(|(t, d)| t + d * scale).collect()
}

/// Two-point gradient estimate. Since `|Δ_i| = 1`, `1/Δ_i* = Δ_i`.
pub fn gradient_estimate(
    f_plus: f64,
    f_minus: f64,
    c_k: f64,
    delta: &Perturbation,
) -> Result<Vec<Complex64>> {
    if !(c_k > 0.0) {
        return Err(Error::NonPositivePerturbation(c_k));
    }
    let scale = (f_plus - f_minus) / (2.0 * c_k);
    Ok(delta.components().iter().map(|d| d * scale).collect())
}

/// `θ − a_k·g` on a flat vector.
pub fn step_flat(theta: &[Complex64], grad: &[Complex64], a_k: f64) -> Result<Vec<Complex64>> {
    if theta.len() != grad.len() {
        return Err(Error::DimensionMismatch { expected: theta.len(), actual: grad.len() });
    }
    Ok(theta.iter().zip(grad).map(|(t, g)| t - g * a_k).collect())
}

/// Result of a guarded parameter update.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub params: ProductParams,
    /// Qubits whose update was rejected because the new vector collapsed.
    pub rejected: Vec<usize>,
}

/// `θ − a_k·g` on product parameters (gradient in flattened order). A
/// qubit whose updated 2-vector would have norm below
/// [`DEGENERACY_THRESHOLD`] keeps its previous value.
pub fn step(params: &ProductParams, grad: &[Complex64], a_k: f64) -> Result<StepOutcome> {
    let expected = 2 * params.n();
    if grad.len() != expected {
        return Err(Error::DimensionMismatch { expected, actual: grad.len() });
    }
    let mut rejected = Vec::new();
    let entries = params
        .entries()
        .iter()
        .zip(grad.chunks_exact(2))
        .enumerate()
        .map(|(j, (old, g))| {
            let new = [old[0] - g[0] * a_k, old[1] - g[1] * a_k];
            let norm = (new[0].norm_sqr() + new[1].norm_sqr()).sqrt();
            if norm < DEGENERACY_THRESHOLD || !norm.is_finite() {
                rejected.push(j);
                *old
            } else {
                new
            }
        })
        .collect();
    Ok(StepOutcome { params: ProductParams::new(entries)?, rejected })
}

/// Plain CSPSA over `ℂ^d` with a user cost. Useful for checking the
/// optimizer on functions with a known minimum.
pub fn minimize<F>(
    initial: &[Complex64],
    gains: &GainSet,
    iterations: usize,
    rng: &mut RngStream,
    mut cost: F,
) -> Result<Vec<Complex64>>
where
    F: FnMut(&[Complex64]) -> f64,
{
    gains.validate()?;
    let mut theta = initial.to_vec();
    for k in 0..iterations {
        let (a_k, c_k) = gains.at(k);
        let delta = sample_perturbation(theta.len(), rng)?;
        let f_plus = cost(&perturb(&theta, &delta, c_k));
        let f_minus = cost(&perturb(&theta, &delta, -c_k));
        let grad = gradient_estimate(f_plus, f_minus, c_k, &delta)?;
        theta = step_flat(&theta, &grad, a_k)?;
    }
    Ok(theta)
}
