//! A parametric noise surrogate applied at the level of outcome
//! distributions, and tensor-structured readout mitigation.
//!
//! The model has two parts: with probability `depolarizing` a shot is
//! replaced by a uniformly random bit string, and each qubit's readout is
//! flipped independently (`p01 = P(read 1 | 0)`, `p10 = P(read 0 | 1)`).
//! Mitigation only inverts the readout part.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Confusion matrices closer to singular than this are rejected.
pub const MIN_CONFUSION_DET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutError {
    /// P(read 1 | true 0).
    pub p01: f64,
    /// P(read 0 | true 1).
    pub p10: f64,
}

impl ReadoutError {
    pub const NONE: Self = Self { p01: 0.0, p10: 0.0 };

    /// Column-stochastic confusion matrix `C[read][true]`.
    pub fn confusion(&self) -> [[f64; 2]; 2] {
        [[1.0 - self.p01, self.p10], [self.p01, 1.0 - self.p10]]
    }

    fn det(&self) -> f64 {
        1.0 - self.p01 - self.p10
    }

    fn inverse(&self, qubit: usize) -> Result<[[f64; 2]; 2]> {
        let det = self.det();
        if !(det.abs() > MIN_CONFUSION_DET) {
            return Err(Error::SingularConfusion { qubit });
        }
        let [[a, b], [c, d]] = self.confusion();
        Ok([[d / det, -b / det], [-c / det, a / det]])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    /// Probability that a shot is replaced by a uniform random outcome.
    pub depolarizing: f64,
    /// One entry per qubit, or a single entry applied to every qubit.
    pub readout: Vec<ReadoutError>,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self::noiseless()
    }
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self { depolarizing: 0.0, readout: vec![ReadoutError::NONE] }
    }

    pub fn uniform(depolarizing: f64, p01: f64, p10: f64) -> Result<Self> {
        let model = Self { depolarizing, readout: vec![ReadoutError { p01, p10 }] };
        model.validate()?;
        Ok(model)
    }

    pub fn per_qubit(depolarizing: f64, readout: Vec<ReadoutError>) -> Result<Self> {
        let model = Self { depolarizing, readout };
        model.validate()?;
        Ok(model)
    }

    /// Defaults for the 7-qubit noise study: `p_d = 0.02`,
    /// `p01 = p10 = 0.015`.
    pub fn study_default() -> Self {
        Self { depolarizing: 0.02, readout: vec![ReadoutError { p01: 0.015, p10: 0.015 }] }
    }

    /// The same model without the depolarizing part.
    pub fn readout_only(&self) -> Self {
        Self { depolarizing: 0.0, readout: self.readout.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |p: f64| (0.0..=1.0).contains(&p);
        if !unit(self.depolarizing) {
            return Err(Error::InvalidArgument("depolarizing probability outside [0, 1]"));
        }
        if self.readout.is_empty() {
            return Err(Error::InvalidArgument("readout model needs at least one entry"));
        }
        if self.readout.iter().any(|r| !unit(r.p01) || !unit(r.p10)) {
            return Err(Error::InvalidArgument("readout flip probability outside [0, 1]"));
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        self.depolarizing == 0.0 && self.readout.iter().all(|r| *r == ReadoutError::NONE)
    }

    /// Readout error of qubit `j` in an `n`-qubit register.
    pub fn readout_for(&self, j: usize, n: usize) -> Result<ReadoutError> {
        match self.readout.len() {
            1 => Ok(self.readout[0]),
            len if len == n => Ok(self.readout[j]),
            len => Err(Error::DimensionMismatch { expected: n, actual: len }),
        }
    }
}

fn qubit_count(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument("distribution length must be a power of two"));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Applies a 2×2 matrix to qubit `j` of a real vector over `2^n` outcomes.
fn apply_local(p: &mut [f64], j: usize, m: &[[f64; 2]; 2]) {
    let stride = 1usize << j;
    for block in p.chunks_exact_mut(stride << 1) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x0, x1) = (*a0, *a1);
            *a0 = m[0][0] * x0 + m[0][1] * x1;
            *a1 = m[1][0] * x0 + m[1][1] * x1;
        }
    }
}

/// `(1 − p_d)·(C₁ ⊗ … ⊗ Cₙ)p + p_d·uniform`.
pub fn corrupt_distribution(probs: &[f64], model: &NoiseModel) -> Result<Vec<f64>> {
    model.validate()?;
    let n = qubit_count(probs.len())?;
    let mut out = probs.to_vec();
    for j in 0..n {
        let r = model.readout_for(j, n)?;
        if r != ReadoutError::NONE {
            apply_local(&mut out, j, &r.confusion());
        }
    }
    if model.depolarizing > 0.0 {
        let flat = model.depolarizing / probs.len() as f64;
        let keep = 1.0 - model.depolarizing;
        out.iter_mut().for_each(|p| *p = keep * *p + flat);
    }
    Ok(out)
}

/// Output of readout mitigation.
#[derive(Debug, Clone, PartialEq)]
pub struct MitigatedDistribution {
    /// Result of the exact inverse; entries may be slightly negative.
    pub quasi: Vec<f64>,
    /// Negative entries set to zero, then renormalized.
    pub clipped: Vec<f64>,
}

/// Inverts each qubit's confusion matrix on an empirical distribution.
pub fn mitigate_readout(empirical: &[f64], model: &NoiseModel) -> Result<MitigatedDistribution> {
    model.validate()?;
    let n = qubit_count(empirical.len())?;
    let mut quasi = empirical.to_vec();
    for j in 0..n {
        let r = model.readout_for(j, n)?;
        if r != ReadoutError::NONE {
            apply_local(&mut quasi, j, &r.inverse(j)?);
        }
    }
    let mut clipped: Vec<f64> = quasi.iter().map(|&q| q.max(0.0)).collect();
    let sum: f64 = clipped.iter().sum();
    if sum > 0.0 {
        clipped.iter_mut().for_each(|p| *p /= sum);
    }
    Ok(MitigatedDistribution { quasi, clipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ghz_probs(n: usize) -> Vec<f64> {
        let mut p = vec![0.0; 1 << n];
        p[0] = 0.5;
        p[(1 << n) - 1] = 0.5;
        p
    }

    #[test]
    fn noiseless_is_identity() {
        let p = ghz_probs(3);
        let m = NoiseModel::noiseless();
        assert_eq!(corrupt_distribution(&p, &m).unwrap(), p);
        let mit = mitigate_readout(&p, &m).unwrap();
        assert_eq!(mit.quasi, p);
        assert_eq!(mit.clipped, p);
    }

    #[test]
    fn single_qubit_flip() {
        let m = NoiseModel::uniform(0.0, 0.1, 0.0).unwrap();
        let out = corrupt_distribution(&[1.0, 0.0], &m).unwrap();
        assert_abs_diff_eq!(out[0], 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(out[1], 0.1, epsilon = 1e-15);
    }

    #[test]
    fn full_depolarizing_is_uniform() {
        let m = NoiseModel::uniform(1.0, 0.2, 0.1).unwrap();
        let out = corrupt_distribution(&ghz_probs(4), &m).unwrap();
        assert!(out.iter().all(|&p| (p - 1.0 / 16.0).abs() < 1e-15));
    }

    #[test]
    fn ghz_readout_roundtrip() {
        let p = ghz_probs(3);
        let m = NoiseModel::uniform(0.0, 0.02, 0.02).unwrap();
        let noisy = corrupt_distribution(&p, &m).unwrap();
        let back = mitigate_readout(&noisy, &m).unwrap();
        for (a, b) in back.clipped.iter().zip(&p) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn per_qubit_length_checked() {
        let m = NoiseModel::per_qubit(0.0, vec![ReadoutError { p01: 0.1, p10: 0.1 }; 2]).unwrap();
        assert!(corrupt_distribution(&ghz_probs(3), &m).is_err());
        assert!(corrupt_distribution(&ghz_probs(2), &m).is_ok());
    }

    #[test]
    fn singular_confusion_rejected() {
        let m = NoiseModel::uniform(0.0, 0.5, 0.5).unwrap();
        assert_eq!(mitigate_readout(&ghz_probs(2), &m), Err(Error::SingularConfusion { qubit: 0 }));
    }

    #[test]
    fn invalid_probabilities_rejected() {
        assert!(NoiseModel::uniform(1.5, 0.0, 0.0).is_err());
        assert!(NoiseModel::uniform(0.0, -0.1, 0.0).is_err());
    }

    #[test]
    fn clipping_renormalizes() {
        let m = NoiseModel::uniform(0.0, 0.1, 0.1).unwrap();
        // A raw empirical vector that lies outside the image of the channel.
        let mit = mitigate_readout(&[1.0, 0.0], &m).unwrap();
        assert!(mit.quasi[1] < 0.0);
        assert_eq!(mit.clipped, vec![1.0, 0.0]);
    }
}
