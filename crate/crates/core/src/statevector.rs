//! Dense statevectors, the product-unitary ansatz, Born probabilities and
//! shot sampling.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand_distr::{Distribution, StandardNormal};

use crate::rng::RngStream;
use crate::{Error, Result};

/// Inputs whose squared norm is within this distance of 1 are accepted and
/// renormalized silently.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-8;

/// Per-qubit parameter vectors with a smaller norm are degenerate.
pub const MIN_PARAM_NORM: f64 = 1e-300;

/// Largest register the dense representation will allocate.
pub const MAX_QUBITS: usize = 30;

/// A normalized pure state of `n` qubits.
///
/// Amplitude `k` belongs to the basis state whose bit `j` is the outcome of
/// qubit `j` (qubit 0 is the least significant bit).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(
            "amplitude vector length must be a power of two and at least 2",
        ));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::InvalidQubitCount { n, reason: "too many qubits for a dense statevector" });
    }
    Ok(n)
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum()
}

impl PureState {
    /// Wraps an amplitude vector that is already normalized to within
    /// [`INPUT_NORM_TOLERANCE`], renormalizing it exactly.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(amplitudes.len())?;
        let sum = norm_sqr(&amplitudes);
        if !((sum - 1.0).abs() <= INPUT_NORM_TOLERANCE) {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self::rescaled(n, amplitudes, sum))
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(amplitudes.len())?;
        let sum = norm_sqr(&amplitudes);
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self::rescaled(n, amplitudes, sum))
    }

    fn rescaled(n: usize, mut amplitudes: Vec<Complex64>, sum: f64) -> Self {
        let scale = 1.0 / sum.sqrt();
        if scale != 1.0 {
            amplitudes.iter_mut().for_each(|a| *a *= scale);
        }
        Self { n, amplitudes }
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidQubitCount { n, reason: "expected 1..=30 qubits" });
        }
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::InvalidArgument("basis index out of range"));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// The product state `⊗_j U_j|0⟩` encoded by `params`.
    pub fn product(params: &ProductParams) -> Self {
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for j in 0..params.n() {
            let [c0, c1] = params.local_state(j);
            // New qubit becomes the next most significant bit.
            let mut next = Vec::with_capacity(amplitudes.len() * 2);
            next.extend(amplitudes.iter().map(|a| a * c0));
            next.extend(amplitudes.iter().map(|a| a * c1));
            amplitudes = next;
        }
        Self { n: params.n(), amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: other.n });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }
}

/// Complex parameters of the product ansatz: one 2-vector `(z0, z1)` per
/// qubit, i.e. `θ ∈ ℂ^{2×n}`.
///
/// The vectors are stored unnormalized; [`unitary_from_params`] normalizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductParams {
    entries: Vec<[Complex64; 2]>,
}

impl ProductParams {
    pub fn new(entries: Vec<[Complex64; 2]>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidQubitCount { n: 0, reason: "at least one qubit required" });
        }
        for (qubit, e) in entries.iter().enumerate() {
            if !(pair_norm(e) > MIN_PARAM_NORM) {
                return Err(Error::DegenerateParameter { qubit });
            }
        }
        Ok(Self { entries })
    }

    /// Parameters for which every `U_j` is the identity.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "at least one qubit required");
        Self { entries: vec![[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]; n] }
    }

    /// The same local state on every qubit.
    pub fn uniform(n: usize, z0: Complex64, z1: Complex64) -> Result<Self> {
        Self::new(vec![[z0, z1]; n])
    }

    /// iid standard complex Gaussian components (`E|z|² = 1`), so each
    /// normalized local state is uniform on the Bloch sphere.
    pub fn random(n: usize, rng: &mut RngStream) -> Self {
        assert!(n >= 1, "at least one qubit required");
        let entries = (0..n)
            .map(|_| loop {
                let e = [complex_gaussian(rng), complex_gaussian(rng)];
                if pair_norm(&e) > MIN_PARAM_NORM {
                    break e;
                }
            })
            .collect();
        Self { entries }
    }

    /// Builds from the flattened `2n` vector `(z0_0, z1_0, z0_1, z1_1, …)`.
    pub fn from_flat(flat: &[Complex64]) -> Result<Self> {
        if flat.is_empty() || !flat.len().is_multiple_of(2) {
            return Err(Error::InvalidArgument("flattened parameters must have even, nonzero length"));
        }
        Self::new(flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect())
    }

    pub fn to_flat(&self) -> Vec<Complex64> {
        self.entries.iter().flat_map(|e| e.iter().copied()).collect()
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[[Complex64; 2]] {
        &self.entries
    }

    pub fn qubit(&self, j: usize) -> [Complex64; 2] {
        self.entries[j]
    }

    /// Replaces qubit `j`'s vector, rejecting degenerate input.
    pub fn set_qubit(&mut self, j: usize, value: [Complex64; 2]) -> Result<()> {
        if !(pair_norm(&value) > MIN_PARAM_NORM) {
            return Err(Error::DegenerateParameter { qubit: j });
        }
        self.entries[j] = value;
        Ok(())
    }

    /// Every qubit's vector scaled to unit norm. The ansatz is unchanged.
    pub fn normalized(&self) -> Self {
        let entries = (0..self.n()).map(|j| self.local_state(j)).collect();
        Self { entries }
    }

    /// Normalized local state `U_j|0⟩`.
    pub fn local_state(&self, j: usize) -> [Complex64; 2] {
        let [z0, z1] = self.entries[j];
        let r = pair_norm(&self.entries[j]);
        [z0 / r, z1 / r]
    }
}

fn pair_norm(e: &[Complex64; 2]) -> f64 {
    (e[0].norm_sqr() + e[1].norm_sqr()).sqrt()
}

fn complex_gaussian(rng: &mut RngStream) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(pub [[Complex64; 2]; 2]);

impl Unitary2 {
    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Unitary2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        Unitary2(core::array::from_fn(|r| {
            core::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c])
        }))
    }

    /// Largest absolute entry of `self − I`.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let id = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((self.0[r][c] - Complex64::new(id, 0.0)).norm());
            }
        }
        worst
    }
}

/// The single-qubit unitary whose first column is the normalized
/// `(z0, z1)` and whose second column is `(−z1*, z0*)` normalized.
pub fn unitary_from_params(z0: Complex64, z1: Complex64) -> Result<Unitary2> {
    let r = pair_norm(&[z0, z1]);
    if !(r > MIN_PARAM_NORM) || !r.is_finite() {
        return Err(Error::DegenerateParameter { qubit: 0 });
    }
    let (u0, u1) = (z0 / r, z1 / r);
    Ok(Unitary2([[u0, -u1.conj()], [u1, u0.conj()]]))
}

/// `U†(θ)|Ψ⟩`, one single-qubit gate at a time, in `O(n·2^n)`.
pub fn apply_product_unitary_dagger(state: &PureState, params: &ProductParams) -> Result<PureState> {
    if params.n() != state.n() {
        return Err(Error::DimensionMismatch { expected: state.n(), actual: params.n() });
    }
    let mut amps = state.amplitudes.clone();
    for j in 0..state.n() {
        let [z0, z1] = params.qubit(j);
        let m = unitary_from_params(z0, z1)
            .map_err(|_| Error::DegenerateParameter { qubit: j })?
            .dagger()
            .0;
        let stride = 1usize << j;
        for block in amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = m[0][0] * x0 + m[0][1] * x1;
                *a1 = m[1][0] * x0 + m[1][1] * x1;
            }
        }
    }
    Ok(PureState { n: state.n, amplitudes: amps })
}

/// Born probabilities `|ψ_k|²` in the computational basis.
pub fn probabilities(state: &PureState) -> Vec<f64> {
    state.amplitudes.iter().map(|a| a.norm_sqr()).collect()
}

/// `|⟨0…0|U†(θ)|Ψ⟩|²`, computed as the overlap of `|Ψ⟩` with the product
/// state `⊗_j U_j|0⟩` by contracting one qubit at a time (`O(2^n)`).
pub fn fidelity_exact(target: &PureState, params: &ProductParams) -> Result<f64> {
    Ok(product_overlap(target, params)?.norm_sqr())
}

/// `⟨φ(θ)|Ψ⟩` where `|φ(θ)⟩ = ⊗_j U_j|0⟩`.
pub fn product_overlap(target: &PureState, params: &ProductParams) -> Result<Complex64> {
    if params.n() != target.n() {
        return Err(Error::DimensionMismatch { expected: target.n(), actual: params.n() });
    }
    let [c0, c1] = conj_pair(params.local_state(0));
    let mut buf: Vec<Complex64> =
        target.amplitudes.chunks_exact(2).map(|p| c0 * p[0] + c1 * p[1]).collect();
    for j in 1..target.n() {
        let [c0, c1] = conj_pair(params.local_state(j));
        let half = buf.len() / 2;
        for y in 0..half {
            buf[y] = c0 * buf[2 * y] + c1 * buf[2 * y + 1];
        }
        buf.truncate(half);
    }
    Ok(buf[0])
}

fn conj_pair(p: [Complex64; 2]) -> [Complex64; 2] {
    [p[0].conj(), p[1].conj()]
}

/// Measured outcomes of `total` full-register shots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotRecord {
    n: usize,
    counts: BTreeMap<usize, u64>,
    total: u64,
}

impl ShotRecord {
    pub fn from_counts(n: usize, counts: BTreeMap<usize, u64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidQubitCount { n, reason: "expected 1..=30 qubits" });
        }
        if counts.keys().any(|&k| k >> n != 0) {
            return Err(Error::InvalidArgument("outcome does not fit in n bits"));
        }
        let total = counts.values().sum();
        if total == 0 {
            return Err(Error::ZeroShots);
        }
        Ok(Self { n, counts, total })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, outcome: usize) -> f64 {
        self.count(outcome) as f64 / self.total as f64
    }

    /// Fraction of shots in which qubits `i` and `j` both read 0.
    pub fn pair_zero_frequency(&self, i: usize, j: usize) -> f64 {
        let mask = (1usize << i) | (1usize << j);
        let hits: u64 = self.counts.iter().filter(|(&k, _)| k & mask == 0).map(|(_, &c)| c).sum();
        hits as f64 / self.total as f64
    }

    /// Relative frequencies as a dense vector of length `2^n`.
    pub fn empirical_distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1usize << self.n];
        for (&k, &c) in &self.counts {
            p[k] = c as f64 / self.total as f64;
        }
        p
    }
}

/// Multinomial sample of `shots` outcomes from `probs`.
///
/// `probs` must sum to 1 within [`INPUT_NORM_TOLERANCE`]; it is renormalized
/// internally. Outcomes with zero probability are never drawn.
pub fn sample_shots(probs: &[f64], shots: u64, rng: &mut RngStream) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let n = qubits_for_len(probs.len())?;
    let sum: f64 = probs.iter().sum();
    if !((sum - 1.0).abs() <= INPUT_NORM_TOLERANCE) || probs.iter().any(|&p| p < 0.0) {
        return Err(Error::NotNormalized { sum });
    }
    let mut draws: Vec<f64> = (0..shots).map(|_| rng.uniform() * sum).collect();
    draws.sort_by(f64::total_cmp);

    let last_nonzero = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
    let mut counts = BTreeMap::new();
    let mut k = 0;
    let mut next = probs[0];
    for u in draws {
        while u >= next && k < last_nonzero {
            k += 1;
            next += probs[k];
        }
        *counts.entry(k).or_insert(0) += 1;
    }
    Ok(ShotRecord { n, counts, total: shots })
}

/// A Haar-random pure state: iid complex Gaussian amplitudes, normalized.
pub fn haar_random_state(n: usize, rng: &mut RngStream) -> Result<PureState> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidQubitCount { n, reason: "expected 1..=30 qubits" });
    }
    let amplitudes: Vec<Complex64> = (0..1usize << n).map(|_| complex_gaussian(rng)).collect();
    PureState::from_unnormalized(amplitudes)
}
