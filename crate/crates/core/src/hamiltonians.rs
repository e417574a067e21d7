//! Global and local cost functions.
//!
//! The global cost is the infidelity `⟨H_G⟩ = 1 − |⟨0…0|U†(θ)|Ψ⟩|²`. The
//! local cost `⟨H_L⟩` averages the two-qubit infidelities
//! `I_ij = 1 − P(qubit i = 0, qubit j = 0)` over all pairs. Both operators
//! are diagonal in the computational basis with ground state `|0…0⟩`, and
//!
//! ```text
//! ⟨H_L⟩ ≤ ⟨H_G⟩ ≤ (n/2)·⟨H_L⟩
//! ```
//!
//! because the first excited level of `H_L` is `2/n` and its top level is 1.
//!
//! `⟨H_L⟩` is estimated on hardware by `X_g`, the mean local infidelity over
//! one uniformly random partition `g` of the qubits into disjoint pairs.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_distr::{Binomial, Distribution};

use crate::noise::{corrupt_distribution, NoiseModel};
use crate::rng::RngStream;
use crate::statevector::{
    apply_product_unitary_dagger, fidelity_exact, probabilities, sample_shots, ProductParams,
    PureState, ShotRecord,
};
use crate::{Error, Result};

/// A set of `⌊n/2⌋` disjoint qubit pairs plus the unpaired qubit when `n`
/// is odd.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairPartition {
    n: usize,
    pairs: Vec<(usize, usize)>,
    leftover: Option<usize>,
}

impl PairPartition {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, leftover: Option<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidQubitCount { n, reason: "pair partitions need at least 2 qubits" });
        }
        if pairs.len() != n / 2 || leftover.is_some() != (n % 2 == 1) {
            return Err(Error::InvalidArgument("partition must have floor(n/2) pairs and a leftover iff n is odd"));
        }
        let mut seen = vec![false; n];
        let indices = pairs.iter().flat_map(|&(i, j)| [i, j]).chain(leftover);
        for q in indices {
            if q >= n || seen[q] {
                return Err(Error::InvalidArgument("partition indices must be distinct and below n"));
            }
            seen[q] = true;
        }
        Ok(Self { n, pairs, leftover })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn leftover(&self) -> Option<usize> {
        self.leftover
    }

    /// Order-independent form: each pair as `(min, max)`, pairs sorted.
    pub fn canonical(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
        pairs.sort_unstable();
        Self { n: self.n, pairs, leftover: self.leftover }
    }
}

/// One level of the `H_L` spectrum: all basis states with `k` ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub k: usize,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsReport {
    pub hl_value: f64,
    pub lower: f64,
    pub upper: f64,
    pub global: f64,
}

impl BoundsReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.lower <= self.global + tol && self.global <= self.upper + tol
    }
}

/// How a cost is evaluated: exactly from the statevector or from shots.
pub enum Estimator<'a> {
    Exact,
    Sampled { shots: u64, rng: &'a mut RngStream, noise: Option<&'a NoiseModel> },
}

fn require_pairs(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidQubitCount { n, reason: "local cost needs at least 2 qubits" });
    }
    Ok(())
}

/// Outcome distribution of the ansatz state, corrupted by `noise` if given.
pub fn ansatz_distribution(
    target: &PureState,
    params: &ProductParams,
    noise: Option<&NoiseModel>,
) -> Result<Vec<f64>> {
    let probs = probabilities(&apply_product_unitary_dagger(target, params)?);
    match noise {
        Some(model) if !model.is_noiseless() => corrupt_distribution(&probs, model),
        _ => Ok(probs),
    }
}

/// `I_Ψ(θ) = 1 − |⟨0…0|U†(θ)|Ψ⟩|²`.
pub fn global_infidelity_exact(target: &PureState, params: &ProductParams) -> Result<f64> {
    Ok(1.0 - fidelity_exact(target, params)?)
}

/// Shot estimate of `I_Ψ(θ)`: one minus the observed frequency of `0…0`.
///
/// Only the count of the all-zero outcome enters the estimate, so it is drawn
/// directly from its binomial marginal.
pub fn global_infidelity_sampled(
    target: &PureState,
    params: &ProductParams,
    shots: u64,
    rng: &mut RngStream,
    noise: Option<&NoiseModel>,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let p0 = match noise {
        Some(model) if !model.is_noiseless() => ansatz_distribution(target, params, Some(model))?[0],
        _ => fidelity_exact(target, params)?,
    };
    let hits = Binomial::new(shots, p0.clamp(0.0, 1.0))
        .map_err(|_| Error::InvalidArgument("outcome probability is not finite"))?
        .sample(rng);
    Ok(1.0 - hits as f64 / shots as f64)
}

/// Exact two-qubit infidelities `I_ij` for every pair, read off one outcome
/// distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PairInfidelities {
    n: usize,
    values: Vec<f64>,
}

impl PairInfidelities {
    /// `I_ij = 1 − P(bit i = 0 ∧ bit j = 0)` under `probs`.
    pub fn from_distribution(probs: &[f64]) -> Result<Self> {
        if probs.len() < 4 || !probs.len().is_power_of_two() {
            return Err(Error::InvalidArgument("distribution must cover at least 2 qubits"));
        }
        let n = probs.len().trailing_zeros() as usize;
        let mut both_zero = vec![0.0; n * n];
        let full = probs.len() - 1;
        for (x, &p) in probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let zeros = !x & full;
            let mut rest = zeros;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut others = rest;
                while others != 0 {
                    let j = others.trailing_zeros() as usize;
                    others &= others - 1;
                    both_zero[i * n + j] += p;
                }
            }
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 1.0 - both_zero[i * n + j];
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Ok(Self { n, values })
    }

    pub fn exact(target: &PureState, params: &ProductParams) -> Result<Self> {
        require_pairs(target.n())?;
        Self::from_distribution(&ansatz_distribution(target, params, None)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i != j && i < self.n && j < self.n, "invalid pair ({i}, {j})");
        self.values[i * self.n + j]
    }

    /// `⟨H_L⟩`: the mean over all unordered pairs.
    pub fn mean(&self) -> f64 {
        let n = self.n;
        let mut total = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                total += self.values[i * n + j];
            }
        }
        total * 2.0 / (n * (n - 1)) as f64
    }

    /// `X_g` with exact marginals.
    pub fn partition_mean(&self, g: &PairPartition) -> f64 {
        let sum: f64 = g.pairs().iter().map(|&(i, j)| self.get(i, j)).sum();
        sum / g.pairs().len() as f64
    }
}

/// `I_ij` for a single pair.
pub fn local_infidelity_exact(
    target: &PureState,
    params: &ProductParams,
    i: usize,
    j: usize,
) -> Result<f64> {
    let n = target.n();
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidPair { i, j, n });
    }
    let probs = ansatz_distribution(target, params, None)?;
    let mask = (1usize << i) | (1usize << j);
    let both_zero: f64 = probs.iter().enumerate().filter(|(x, _)| x & mask == 0).map(|(_, p)| p).sum();
    Ok(1.0 - both_zero)
}

/// `⟨H_L⟩_θ = (2/(n(n−1))) Σ_{i<j} I_ij`.
pub fn expected_hl_exact(target: &PureState, params: &ProductParams) -> Result<f64> {
    Ok(PairInfidelities::exact(target, params)?.mean())
}

/// `⟨H_L⟩ ≤ I_Ψ ≤ (n/2)⟨H_L⟩` evaluated at `params`.
pub fn infidelity_bounds(target: &PureState, params: &ProductParams) -> Result<BoundsReport> {
    let n = target.n();
    let hl_value = expected_hl_exact(target, params)?;
    let global = global_infidelity_exact(target, params)?;
    Ok(BoundsReport { hl_value, lower: hl_value, upper: n as f64 / 2.0 * hl_value, global })
}

/// Uniform pair partition: shuffle `0..n` and pair consecutive entries.
pub fn sample_partition(n: usize, rng: &mut RngStream) -> Result<PairPartition> {
    require_pairs(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let pairs = order.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    let leftover = (n % 2 == 1).then(|| order[n - 1]);
    Ok(PairPartition { n, pairs, leftover })
}

/// Every pair partition of `n` qubits in canonical form, in lexicographic
/// order. There are `(n−1)!!` for even `n` and `n!!` for odd `n`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<PairPartition>> {
    require_pairs(n)?;
    if n > 14 {
        return Err(Error::InvalidQubitCount { n, reason: "enumeration limited to 14 qubits" });
    }
    fn recurse(
        n: usize,
        free: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        leftover: Option<usize>,
        out: &mut Vec<PairPartition>,
    ) {
        if free.is_empty() {
            out.push(PairPartition { n, pairs: pairs.clone(), leftover });
            return;
        }
        let first = free.remove(0);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            pairs.push((first, partner));
            recurse(n, free, pairs, leftover, out);
            pairs.pop();
            free.insert(idx, partner);
        }
        free.insert(0, first);
    }

    let mut out = Vec::new();
    let leftovers: Vec<Option<usize>> =
        if n.is_multiple_of(2) { vec![None] } else { (0..n).map(Some).collect() };
    for leftover in leftovers {
        let mut free: Vec<usize> = (0..n).filter(|&q| Some(q) != leftover).collect();
        recurse(n, &mut free, &mut Vec::new(), leftover, &mut out);
    }
    out.sort();
    Ok(out)
}

/// Empirical `X_g` from one shared shot record: the mean over the pairs of
/// `g` of `1 − freq(bit i = 0 ∧ bit j = 0)`.
pub fn xg_from_shots(record: &ShotRecord, g: &PairPartition) -> f64 {
    let sum: f64 = g.pairs().iter().map(|&(i, j)| 1.0 - record.pair_zero_frequency(i, j)).sum();
    sum / g.pairs().len() as f64
}

/// Draws one shot record of `shots` full-register measurements of the ansatz
/// state and returns `X_g` computed from it.
pub fn xg_estimate(
    target: &PureState,
    params: &ProductParams,
    g: &PairPartition,
    shots: u64,
    rng: &mut RngStream,
    noise: Option<&NoiseModel>,
) -> Result<f64> {
    if g.n() != target.n() {
        return Err(Error::DimensionMismatch { expected: target.n(), actual: g.n() });
    }
    let probs = ansatz_distribution(target, params, noise)?;
    let record = sample_shots(&probs, shots, rng)?;
    Ok(xg_from_shots(&record, g))
}

/// Upper bound on the mean square error of `X_g`:
/// `2/n + ((n−1)/((n−2)(n−3)) − 2/n)·⟨H_L⟩²`.
pub fn xg_mse_bound(n: usize, hl_value: f64) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidQubitCount { n, reason: "MSE bound needs at least 4 qubits" });
    }
    let nf = n as f64;
    Ok(2.0 / nf + ((nf - 1.0) / ((nf - 2.0) * (nf - 3.0)) - 2.0 / nf) * hl_value * hl_value)
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `H_L` eigenvalue of a basis state with `ones` qubits in `|1⟩`.
pub fn hl_level(n: usize, ones: usize) -> f64 {
    let zeros = (n - ones) as f64;
    1.0 - zeros * (zeros - 1.0).max(0.0) / (n * (n - 1)) as f64
}

/// Closed-form spectrum of `H_L`, one entry per Hamming weight.
pub fn hl_spectrum(n: usize) -> Result<Vec<SpectrumEntry>> {
    require_pairs(n)?;
    if n > 62 {
        return Err(Error::InvalidQubitCount { n, reason: "multiplicities overflow beyond 62 qubits" });
    }
    Ok((0..=n)
        .map(|k| SpectrumEntry { k, eigenvalue: hl_level(n, k), multiplicity: binomial(n, k) })
        .collect())
}

/// Diagonal of `H_L = 1 − (2/(n(n−1))) Σ_{i<j} Π_ij`, assembled projector by
/// projector.
pub fn assemble_hl_diagonal(n: usize) -> Result<Vec<f64>> {
    require_pairs(n)?;
    if n > 20 {
        return Err(Error::InvalidQubitCount { n, reason: "explicit assembly limited to 20 qubits" });
    }
    let dim = 1usize << n;
    let mut projector_sum = vec![0.0; dim];
    for i in 0..n {
        for j in (i + 1)..n {
            let mask = (1usize << i) | (1usize << j);
            for (x, acc) in projector_sum.iter_mut().enumerate() {
                if x & mask == 0 {
                    *acc += 1.0;
                }
            }
        }
    }
    let scale = 2.0 / (n * (n - 1)) as f64;
    Ok(projector_sum.into_iter().map(|s| 1.0 - scale * s).collect())
}

/// `(1−λ)·⟨H_L⟩ + λ·⟨H_G⟩`. Sampled mode estimates `⟨H_L⟩` with `X_g` over
/// a fresh random partition and `⟨H_G⟩` from its own shots.
pub fn interpolated_cost(
    target: &PureState,
    params: &ProductParams,
    lambda: f64,
    estimator: Estimator<'_>,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument("interpolation weight outside [0, 1]"));
    }
    let (local, global) = match estimator {
        Estimator::Exact => (expected_hl_exact(target, params)?, global_infidelity_exact(target, params)?),
        Estimator::Sampled { shots, rng, noise } => {
            let g = sample_partition(target.n(), rng)?;
            let local = xg_estimate(target, params, &g, shots, rng, noise)?;
            (local, global_infidelity_sampled(target, params, shots, rng, noise)?)
        }
    };
    Ok((1.0 - lambda) * local + lambda * global)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::haar_random_state;
    use alloc::collections::BTreeMap;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn ghz(n: usize) -> PureState {
        let mut a = vec![Complex64::new(0.0, 0.0); 1 << n];
        a[0] = Complex64::new(1.0, 0.0);
        a[(1 << n) - 1] = Complex64::new(1.0, 0.0);
        PureState::from_unnormalized(a).unwrap()
    }

    fn w(n: usize) -> PureState {
        let mut a = vec![Complex64::new(0.0, 0.0); 1 << n];
        for j in 0..n {
            a[1 << j] = Complex64::new(1.0, 0.0);
        }
        PureState::from_unnormalized(a).unwrap()
    }

    #[test]
    fn global_exact_examples() {
        let mut rng = RngStream::new(2, 0);
        let p = ProductParams::random(4, &mut rng);
        assert_abs_diff_eq!(global_infidelity_exact(&PureState::product(&p), &p).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(global_infidelity_exact(&ghz(5), &ProductParams::identity(5)).unwrap(), 0.5, epsilon = 1e-15);
        assert_eq!(global_infidelity_exact(&w(3), &ProductParams::identity(3)).unwrap(), 1.0);
    }

    #[test]
    fn global_sampled_examples() {
        let mut rng = RngStream::new(4, 0);
        let p = ProductParams::random(3, &mut rng);
        let prod = PureState::product(&p);
        let v = global_infidelity_sampled(&prod, &p, 100, &mut rng, None).unwrap();
        assert!(v.abs() < 1e-12);

        let id = ProductParams::identity(3);
        let v = global_infidelity_sampled(&ghz(3), &id, 1_000_000, &mut RngStream::new(8, 0), None).unwrap();
        assert!((v - 0.5).abs() < 0.002);
        let again = global_infidelity_sampled(&ghz(3), &id, 1_000_000, &mut RngStream::new(8, 0), None).unwrap();
        assert_eq!(v, again);
        assert_eq!(global_infidelity_sampled(&ghz(3), &id, 0, &mut rng, None), Err(Error::ZeroShots));
    }

    #[test]
    fn local_examples() {
        let id4 = ProductParams::identity(4);
        let zero = PureState::zero(4).unwrap();
        for (i, j) in [(0, 1), (1, 3), (2, 0)] {
            assert_eq!(local_infidelity_exact(&zero, &id4, i, j).unwrap(), 0.0);
            assert_abs_diff_eq!(local_infidelity_exact(&ghz(4), &id4, i, j).unwrap(), 0.5, epsilon = 1e-15);
        }
        let id3 = ProductParams::identity(3);
        assert_abs_diff_eq!(local_infidelity_exact(&w(3), &id3, 0, 2).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(local_infidelity_exact(&w(3), &id3, 1, 1), Err(Error::InvalidPair { i: 1, j: 1, n: 3 }));
    }

    #[test]
    fn local_depends_only_on_its_pair() {
        let mut rng = RngStream::new(10, 0);
        let target = haar_random_state(5, &mut rng).unwrap();
        let mut p = ProductParams::random(5, &mut rng);
        let before = local_infidelity_exact(&target, &p, 1, 3).unwrap();
        p.set_qubit(0, [Complex64::new(0.3, 0.2), Complex64::new(-1.0, 0.5)]).unwrap();
        p.set_qubit(4, [Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(local_infidelity_exact(&target, &p, 1, 3).unwrap(), before, epsilon = 1e-12);
    }

    #[test]
    fn hl_examples() {
        assert_abs_diff_eq!(expected_hl_exact(&ghz(4), &ProductParams::identity(4)).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(expected_hl_exact(&w(3), &ProductParams::identity(3)).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        let p = ProductParams::random(5, &mut RngStream::new(1, 1));
        assert_abs_diff_eq!(expected_hl_exact(&PureState::product(&p), &p).unwrap(), 0.0, epsilon = 1e-12);
        let one = PureState::zero(1).unwrap();
        assert!(expected_hl_exact(&one, &ProductParams::identity(1)).is_err());
    }

    #[test]
    fn bounds_examples() {
        let r = infidelity_bounds(&ghz(4), &ProductParams::identity(4)).unwrap();
        assert_abs_diff_eq!(r.lower, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.global, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.upper, 1.0, epsilon = 1e-15);

        let r = infidelity_bounds(&w(3), &ProductParams::identity(3)).unwrap();
        assert_abs_diff_eq!(r.lower, 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(r.global, 1.0);
        assert_abs_diff_eq!(r.upper, 1.0, epsilon = 1e-15);
        assert!(r.holds(1e-9));
        // The floor(n/2) factor would give 2/3 < 1 here.
        assert!(r.global > (3 / 2) as f64 * r.hl_value + 1e-9);

        let p = ProductParams::random(6, &mut RngStream::new(2, 2));
        let r = infidelity_bounds(&PureState::product(&p), &p).unwrap();
        assert!(r.lower.abs() < 1e-12 && r.global.abs() < 1e-12 && r.upper.abs() < 1e-12);
    }

    #[test]
    fn partition_n2_is_unique() {
        let mut rng = RngStream::new(0, 0);
        for _ in 0..20 {
            let g = sample_partition(2, &mut rng).unwrap().canonical();
            assert_eq!(g.pairs(), &[(0, 1)]);
            assert_eq!(g.leftover(), None);
        }
        assert!(sample_partition(1, &mut rng).is_err());
    }

    #[test]
    fn partition_n4_uniform() {
        let mut rng = RngStream::new(21, 0);
        let draws = 100_000;
        let mut freq: BTreeMap<PairPartition, usize> = BTreeMap::new();
        for _ in 0..draws {
            *freq.entry(sample_partition(4, &mut rng).unwrap().canonical()).or_default() += 1;
        }
        assert_eq!(freq.len(), 3);
        for &c in freq.values() {
            assert!((c as f64 / draws as f64 - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn partition_n5_leftover_uniform() {
        let mut rng = RngStream::new(22, 0);
        let draws = 100_000;
        let mut counts = [0usize; 5];
        for _ in 0..draws {
            let g = sample_partition(5, &mut rng).unwrap();
            assert_eq!(g.pairs().len(), 2);
            counts[g.leftover().unwrap()] += 1;
        }
        for c in counts {
            assert!((c as f64 / draws as f64 - 0.2).abs() < 0.02);
        }
    }

    #[test]
    fn partition_validation() {
        assert!(PairPartition::new(4, vec![(0, 1), (2, 3)], None).is_ok());
        assert!(PairPartition::new(4, vec![(0, 1), (1, 3)], None).is_err());
        assert!(PairPartition::new(3, vec![(0, 1)], None).is_err());
        assert!(PairPartition::new(3, vec![(0, 1)], Some(2)).is_ok());
        assert!(PairPartition::new(4, vec![(0, 1), (2, 4)], None).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(2).unwrap().len(), 1);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 3);
        assert_eq!(enumerate_partitions(5).unwrap().len(), 15);
        assert_eq!(enumerate_partitions(6).unwrap().len(), 15);
        assert_eq!(enumerate_partitions(8).unwrap().len(), 105);
    }

    #[test]
    fn xg_product_state_is_zero() {
        let mut rng = RngStream::new(5, 0);
        let p = ProductParams::random(6, &mut rng);
        let prod = PureState::product(&p);
        let g = sample_partition(6, &mut rng).unwrap();
        assert!(xg_estimate(&prod, &p, &g, 64, &mut rng, None).unwrap().abs() < 1e-12);
    }

    #[test]
    fn xg_ghz_statistical() {
        let mut rng = RngStream::new(6, 0);
        let g = sample_partition(4, &mut rng).unwrap();
        let v = xg_estimate(&ghz(4), &ProductParams::identity(4), &g, 1_000_000, &mut rng, None).unwrap();
        assert!((v - 0.5).abs() < 0.003);
    }

    #[test]
    fn xg_mean_over_matchings_is_hl() {
        let mut rng = RngStream::new(7, 0);
        let target = haar_random_state(4, &mut rng).unwrap();
        let p = ProductParams::random(4, &mut rng);
        let inf = PairInfidelities::exact(&target, &p).unwrap();
        let parts = enumerate_partitions(4).unwrap();
        let mean: f64 = parts.iter().map(|g| inf.partition_mean(g)).sum::<f64>() / parts.len() as f64;
        assert_abs_diff_eq!(mean, expected_hl_exact(&target, &p).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn mse_bound_examples() {
        assert_abs_diff_eq!(xg_mse_bound(4, 0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(xg_mse_bound(4, 1.0).unwrap(), 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(xg_mse_bound(6, 0.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert!(xg_mse_bound(3, 0.1).is_err());
    }

    #[test]
    fn spectrum_n4() {
        let s = hl_spectrum(4).unwrap();
        let expect = [0.0, 0.5, 5.0 / 6.0, 1.0, 1.0];
        for (e, x) in s.iter().zip(expect) {
            assert_abs_diff_eq!(e.eigenvalue, x, epsilon = 1e-15);
        }
        assert_eq!(s.iter().map(|e| e.multiplicity).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn spectrum_first_gap() {
        for n in 2..=20 {
            let s = hl_spectrum(n).unwrap();
            assert_eq!(s[0].eigenvalue, 0.0);
            assert_abs_diff_eq!(s[1].eigenvalue, 2.0 / n as f64, epsilon = 1e-15);
            assert_eq!(s[1].multiplicity, n as u64);
            assert_eq!(s.iter().map(|e| e.multiplicity).sum::<u64>(), 1u64 << n);
            assert!(s.windows(2).all(|w| w[0].eigenvalue <= w[1].eigenvalue));
            assert_eq!(s[n].eigenvalue, 1.0);
            assert_eq!(s[n - 1].eigenvalue, 1.0);
        }
    }

    #[test]
    fn interpolation_endpoints() {
        let mut rng = RngStream::new(9, 0);
        let target = haar_random_state(4, &mut rng).unwrap();
        let p = ProductParams::random(4, &mut rng);
        let hl = expected_hl_exact(&target, &p).unwrap();
        let hg = global_infidelity_exact(&target, &p).unwrap();
        assert_eq!(interpolated_cost(&target, &p, 0.0, Estimator::Exact).unwrap(), hl);
        assert_eq!(interpolated_cost(&target, &p, 1.0, Estimator::Exact).unwrap(), hg);
        let mid = interpolated_cost(&ghz(4), &ProductParams::identity(4), 0.5, Estimator::Exact).unwrap();
        assert_abs_diff_eq!(mid, 0.5, epsilon = 1e-15);
        assert!(interpolated_cost(&target, &p, 1.5, Estimator::Exact).is_err());
        let sampled = interpolated_cost(
            &ghz(4),
            &ProductParams::identity(4),
            0.5,
            Estimator::Sampled { shots: 200_000, rng: &mut rng, noise: None },
        )
        .unwrap();
        assert!((sampled - 0.5).abs() < 0.01);
    }
}
