//! Classical reference values for the GME.
//!
//! [`exact_gme_product`] minimizes `1 − |⟨Ψ|Φ₁⊗…⊗Φₙ⟩|²` over per-qubit
//! angles with `|Φ_j⟩ = cos θ_j|0⟩ + e^{iφ_j} sin θ_j|1⟩`. The local
//! minimizer is BFGS on the analytic gradient; it is wrapped in basin hopping
//! (random angle kicks with Metropolis acceptance) and restarted from random
//! angles.
//!
//! [`exact_gme_symmetric`] restricts the search to `|Φ⟩^⊗n` for the GHZ/W
//! superposition families, where the overlap has a closed form in `O(1)`
//! complex powers. A grid scan seeds Nelder–Mead refinements.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::optimize::{bfgs, nelder_mead};
use crate::rng::RngStream;
use crate::statevector::PureState;
use crate::{Error, Result};

pub const DEFAULT_RESTARTS: usize = 20;

/// Settings for the full product-ansatz oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductOracle {
    pub restarts: usize,
    pub hops: usize,
    /// Half-width of the uniform angle kick per hop.
    pub hop_step: f64,
    /// Metropolis temperature for accepting uphill hops.
    pub temperature: f64,
    pub max_qubits: usize,
    pub seed: u64,
}

impl Default for ProductOracle {
    fn default() -> Self {
        Self { restarts: DEFAULT_RESTARTS, hops: 10, hop_step: 0.5, temperature: 0.02, max_qubits: 12, seed: 0 }
    }
}

struct AngleCost {
    conj_target: Vec<Complex64>,
    n: usize,
    local: Vec<[Complex64; 2]>,
    dtheta: Vec<[Complex64; 2]>,
    dphi: Vec<[Complex64; 2]>,
    env: Vec<[Complex64; 2]>,
    prefix: Vec<Complex64>,
}

impl AngleCost {
    fn new(target: &PureState) -> Self {
        let n = target.n();
        Self {
            conj_target: target.amplitudes().iter().map(|a| a.conj()).collect(),
            n,
            local: vec![[Complex64::new(0.0, 0.0); 2]; n],
            dtheta: vec![[Complex64::new(0.0, 0.0); 2]; n],
            dphi: vec![[Complex64::new(0.0, 0.0); 2]; n],
            env: vec![[Complex64::new(0.0, 0.0); 2]; n],
            prefix: vec![Complex64::new(0.0, 0.0); n + 1],
        }
    }

    /// Cost `1 − |⟨Ψ|Φ⟩|²` and its gradient in `(θ_0, φ_0, θ_1, φ_1, …)`.
    fn eval(&mut self, angles: &[f64], grad: &mut [f64]) -> f64 {
        let n = self.n;
        for j in 0..n {
            let (theta, phi) = (angles[2 * j], angles[2 * j + 1]);
            let (st, ct) = theta.sin_cos();
            let e = Complex64::from_polar(1.0, phi);
            self.local[j] = [Complex64::new(ct, 0.0), e * st];
            self.dtheta[j] = [Complex64::new(-st, 0.0), e * ct];
            self.dphi[j] = [Complex64::new(0.0, 0.0), e * Complex64::new(0.0, st)];
            self.env[j] = [Complex64::new(0.0, 0.0); 2];
        }
        let mut overlap = Complex64::new(0.0, 0.0);
        for (x, &psi) in self.conj_target.iter().enumerate() {
            if psi == Complex64::new(0.0, 0.0) {
                continue;
            }
            self.prefix[0] = psi;
            for j in 0..n {
                self.prefix[j + 1] = self.prefix[j] * self.local[j][(x >> j) & 1];
            }
            overlap += self.prefix[n];
            let mut suffix = Complex64::new(1.0, 0.0);
            for j in (0..n).rev() {
                let b = (x >> j) & 1;
                self.env[j][b] += self.prefix[j] * suffix;
                suffix *= self.local[j][b];
            }
        }
        for j in 0..n {
            let d_t = self.env[j][0] * self.dtheta[j][0] + self.env[j][1] * self.dtheta[j][1];
            let d_p = self.env[j][1] * self.dphi[j][1];
            grad[2 * j] = -2.0 * (overlap.conj() * d_t).re;
            grad[2 * j + 1] = -2.0 * (overlap.conj() * d_p).re;
        }
        1.0 - overlap.norm_sqr()
    }
}

fn random_angles(n: usize, rng: &mut RngStream) -> Vec<f64> {
    (0..n).flat_map(|_| [rng.uniform() * PI, rng.uniform() * 2.0 * PI]).collect::<Vec<_>>()
}

impl ProductOracle {
    /// Minimum infidelity over product states found by the search.
    pub fn run(&self, target: &PureState) -> Result<f64> {
        let n = target.n();
        if n > self.max_qubits {
            return Err(Error::OracleGuard { n, max: self.max_qubits });
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("oracle needs at least one restart"));
        }
        let mut cost = AngleCost::new(target);
        let mut local_min = |x0: &[f64]| bfgs(|x, g| cost.eval(x, g), x0, 2000, 1e-11);
        let mut rng = RngStream::new(self.seed, 0x6f72_6163_6c65);
        let mut best = f64::INFINITY;
        for _ in 0..self.restarts {
            let mut current = local_min(&random_angles(n, &mut rng));
            best = best.min(current.f);
            for _ in 0..self.hops {
                let kicked: Vec<f64> =
                    current.x.iter().map(|&a| a + (2.0 * rng.uniform() - 1.0) * self.hop_step).collect();
                let trial = local_min(&kicked);
                best = best.min(trial.f);
                let accept = trial.f < current.f
                    || rng.uniform() < (-(trial.f - current.f) / self.temperature).exp();
                if accept {
                    current = trial;
                }
            }
        }
        Ok(best.max(0.0))
    }
}

/// GME by basin hopping over the full product ansatz with default settings
/// except for `restarts` and `hops`.
pub fn exact_gme_product(target: &PureState, restarts: usize, hops: usize) -> Result<f64> {
    ProductOracle { restarts, hops, ..ProductOracle::default() }.run(target)
}

/// Superposition families whose GME is attained by a symmetric product state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricFamily {
    GhzW,
    WWTilde,
}

/// `⟨Ψ|Φ^⊗n⟩` for `|Φ⟩ = cos θ|0⟩ + e^{iφ} sin θ|1⟩`.
fn symmetric_overlap(family: SymmetricFamily, n: usize, s: f64, theta: f64, phi: f64) -> Complex64 {
    let nf = n as f64;
    let a = Complex64::new(theta.cos(), 0.0);
    let b = Complex64::from_polar(theta.sin(), phi);
    let pow = |z: Complex64, k: usize| z.powu(k as u32);
    let (ws, wc) = (s.sqrt(), (1.0 - s).sqrt());
    match family {
        SymmetricFamily::GhzW => {
            let ghz = (pow(a, n) + pow(b, n)) * core::f64::consts::FRAC_1_SQRT_2;
            let w = pow(a, n - 1) * b * nf.sqrt();
            ghz * ws + w * wc
        }
        SymmetricFamily::WWTilde => {
            let w = pow(a, n - 1) * b * nf.sqrt();
            let w_tilde = a * pow(b, n - 1) * nf.sqrt();
            // W and W̃ coincide at n = 2, so the raw superposition is not unit norm there.
            let norm = if n == 2 { ws + wc } else { 1.0 };
            (w * ws + w_tilde * wc) / norm
        }
    }
}

/// GME of `GHZW(s)` or `WW̃(s)` on `n` qubits over symmetric product states.
pub fn exact_gme_symmetric(family: SymmetricFamily, n: usize, s: f64, restarts: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidArgument("superposition weight s must lie in [0, 1]"));
    }
    if n < 2 {
        return Err(Error::InvalidQubitCount { n, reason: "symmetric oracle needs at least 2 qubits" });
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidQubitCount { n, reason: "qubit count too large" });
    }
    let cost = |x: &[f64]| 1.0 - symmetric_overlap(family, n, s, x[0], x[1]).norm_sqr();

    const THETA_STEPS: usize = 64;
    const PHI_STEPS: usize = 64;
    let mut seeds: Vec<(f64, [f64; 2])> = Vec::with_capacity(THETA_STEPS * PHI_STEPS);
    for i in 0..=THETA_STEPS {
        for k in 0..PHI_STEPS {
            let x = [PI / 2.0 * i as f64 / THETA_STEPS as f64, 2.0 * PI * k as f64 / PHI_STEPS as f64];
            seeds.push((cost(&x), x));
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rng = RngStream::new(0, 0x73796d6d);
    let mut best = seeds[0].0;
    for r in 0..restarts.max(1) {
        // Best grid points first, then random starts.
        let x0 = if r < 4 && r < seeds.len() {
            seeds[r].1
        } else {
            [rng.uniform() * PI / 2.0, rng.uniform() * 2.0 * PI]
        };
        let refined = nelder_mead(cost, &x0, 0.05, 4000, 1e-15);
        best = best.min(refined.f);
    }
    Ok(best.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gme::{make_named_state, StateFamily};
    use crate::statevector::{fidelity_exact, haar_random_state, ProductParams};

    fn w_gme(n: usize) -> f64 {
        let nf = n as f64;
        1.0 - ((nf - 1.0) / nf).powi(n as i32 - 1)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = RngStream::new(3, 0);
        let target = haar_random_state(4, &mut rng).unwrap();
        let mut cost = AngleCost::new(&target);
        let x = random_angles(4, &mut rng);
        let mut g = vec![0.0; 8];
        cost.eval(&x, &mut g);
        let mut scratch = vec![0.0; 8];
        for i in 0..8 {
            let h = 1e-6;
            let mut xp = x.clone();
            xp[i] += h;
            let mut xm = x.clone();
            xm[i] -= h;
            let fd = (cost.eval(&xp, &mut scratch) - cost.eval(&xm, &mut scratch)) / (2.0 * h);
            assert!((fd - g[i]).abs() < 1e-7, "component {i}: {fd} vs {}", g[i]);
        }
    }

    #[test]
    fn angle_cost_agrees_with_statevector() {
        let mut rng = RngStream::new(4, 0);
        let target = haar_random_state(3, &mut rng).unwrap();
        let x = random_angles(3, &mut rng);
        let params = ProductParams::new(
            (0..3)
                .map(|j| {
                    [Complex64::new(x[2 * j].cos(), 0.0), Complex64::from_polar(x[2 * j].sin(), x[2 * j + 1])]
                })
                .collect(),
        )
        .unwrap();
        let mut g = vec![0.0; 6];
        let c = AngleCost::new(&target).eval(&x, &mut g);
        assert!((c - (1.0 - fidelity_exact(&target, &params).unwrap())).abs() < 1e-12);
    }

    #[test]
    fn product_oracle_known_values() {
        let ghz = make_named_state(StateFamily::Ghz, 4, None).unwrap();
        assert!((exact_gme_product(&ghz, 5, 5).unwrap() - 0.5).abs() < 1e-6);
        let w = make_named_state(StateFamily::W, 3, None).unwrap();
        assert!((exact_gme_product(&w, 5, 5).unwrap() - 5.0 / 9.0).abs() < 1e-6);
        let zero = PureState::zero(3).unwrap();
        assert!(exact_gme_product(&zero, 3, 2).unwrap() < 1e-9);
    }

    #[test]
    fn product_oracle_guard() {
        let big = PureState::zero(13).unwrap();
        assert_eq!(exact_gme_product(&big, 1, 0), Err(Error::OracleGuard { n: 13, max: 12 }));
    }

    #[test]
    fn symmetric_known_values() {
        for n in [3, 7, 18] {
            let v = exact_gme_symmetric(SymmetricFamily::GhzW, n, 1.0, DEFAULT_RESTARTS).unwrap();
            assert!((v - 0.5).abs() < 1e-6);
        }
        let v = exact_gme_symmetric(SymmetricFamily::GhzW, 18, 0.0, DEFAULT_RESTARTS).unwrap();
        assert!((v - w_gme(18)).abs() < 1e-6, "{v} vs {}", w_gme(18));
        assert!(exact_gme_symmetric(SymmetricFamily::GhzW, 4, -0.1, 5).is_err());
    }

    #[test]
    fn symmetric_overlap_matches_statevector() {
        for (family, sym) in [(StateFamily::GhzW, SymmetricFamily::GhzW), (StateFamily::WWTilde, SymmetricFamily::WWTilde)] {
            for n in 2..6 {
                let st = make_named_state(family, n, Some(0.37)).unwrap();
                let (theta, phi) = (0.7, 1.9);
                let params = ProductParams::uniform(
                    n,
                    Complex64::new(theta.cos(), 0.0),
                    Complex64::from_polar(theta.sin(), phi),
                )
                .unwrap();
                let direct = fidelity_exact(&st, &params).unwrap();
                let closed = symmetric_overlap(sym, n, 0.37, theta, phi).norm_sqr();
                assert!((direct - closed).abs() < 1e-12, "{family:?} n={n}");
            }
        }
    }
}
