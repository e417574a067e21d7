//! VDGE and iVDGE.
//!
//! VDGE runs CSPSA on the sampled global infidelity. iVDGE first runs
//! `n_local` CSPSA iterations on the pair-partition estimate of the local
//! cost and then hands the parameters to VDGE for `n_global` iterations.
//!
//! In a local iteration one perturbation `Δ ∈ {±1, ±i}^{2n}` is drawn and
//! the register is measured twice, at `θ ± c_kΔ`. Each pair `(i, j)` of the
//! sampled partition reads its own marginal infidelity off those two shot
//! records, and that difference drives the update of the four components
//! belonging to qubits `i` and `j`. The unpaired qubit of an odd register is
//! left untouched for that iteration.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cspsa::{gradient_estimate, perturb, sample_perturbation, step, GainPreset, GainSet};
use crate::hamiltonians::{
    ansatz_distribution, global_infidelity_exact, global_infidelity_sampled, sample_partition,
    PairInfidelities, PairPartition,
};
use crate::noise::{mitigate_readout, NoiseModel};
use crate::rng::RngStream;
use crate::statevector::{sample_shots, ProductParams, PureState};
use crate::{Error, Result};

pub const DEFAULT_BP_THRESHOLD: f64 = 0.9;

const INIT_STREAM_TAG: u64 = 0x696e_6974;

/// Shots per cost evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    /// Exact expectation values; consumes no shots.
    Exact,
    Count(u64),
}

impl Shots {
    fn count(self) -> u64 {
        match self {
            Shots::Exact => 0,
            Shots::Count(s) => s,
        }
    }
}

/// When readout mitigation is applied under a noise model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MitigationPolicy {
    Never,
    /// Only the final estimate is mitigated.
    #[default]
    FinalOnly,
    EveryEvaluation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Vdge,
    Ivdge,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Vdge => "vdge",
            Method::Ivdge => "ivdge",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VqaConfig {
    pub n_local: usize,
    pub n_global: usize,
    pub shots_local: Shots,
    pub shots_global: Shots,
    pub gains_local: GainSet,
    pub gains_global: GainSet,
    pub repetitions: usize,
    pub seed: u64,
    pub noise: Option<NoiseModel>,
    pub mitigation: MitigationPolicy,
    pub bp_threshold: f64,
    /// Restart the gain schedule at the local/global handoff. When false the
    /// global stage continues counting from `n_local`.
    pub restart_global_schedule: bool,
    /// Rescale every qubit's parameter vector to unit norm after each
    /// update. The cost is scale invariant, but the effective step size of
    /// CSPSA shrinks as `1/|z|²`, and noisy early steps inflate `|z|`.
    pub normalize_params: bool,
}

impl Default for VqaConfig {
    /// 80 local iterations at 512 shots, 295 global at 8192, asymptotic
    /// gains with `A = 0` locally and `A = 4` globally, best of 5, unit-norm
    /// parameters.
    fn default() -> Self {
        let asymptotic = GainPreset::Asymptotic.gains();
        Self {
            n_local: 80,
            n_global: 295,
            shots_local: Shots::Count(512),
            shots_global: Shots::Count(8192),
            gains_local: asymptotic,
            gains_global: asymptotic.with_stability(4.0),
            repetitions: 5,
            seed: 0,
            noise: None,
            mitigation: MitigationPolicy::FinalOnly,
            bp_threshold: DEFAULT_BP_THRESHOLD,
            restart_global_schedule: true,
            normalize_params: true,
        }
    }
}

impl VqaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_local + self.n_global == 0 {
            return Err(Error::InvalidConfig("at least one iteration required"));
        }
        if matches!(self.shots_local, Shots::Count(0)) || matches!(self.shots_global, Shots::Count(0)) {
            return Err(Error::InvalidConfig("shot counts must be at least 1"));
        }
        if !(self.bp_threshold > 0.0 && self.bp_threshold < 1.0) {
            return Err(Error::InvalidConfig("barren-plateau threshold must lie in (0, 1)"));
        }
        self.gains_local.validate()?;
        self.gains_global.validate()?;
        if let Some(noise) = &self.noise {
            noise.validate()?;
        }
        Ok(())
    }

    /// Total shots spent by the optimization loop of `method`.
    pub fn optimization_shots(&self, method: Method) -> u64 {
        let global = 2 * self.n_global as u64 * self.shots_global.count();
        match method {
            Method::Vdge => global,
            Method::Ivdge => global + 2 * self.n_local as u64 * self.shots_local.count(),
        }
    }

    fn active_noise(&self) -> Option<&NoiseModel> {
        self.noise.as_ref().filter(|m| !m.is_noiseless())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Local,
    Global,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Local => "local",
            Stage::Global => "global",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    /// One-based, counted across both stages.
    pub iteration: usize,
    pub stage: Stage,
    /// Mean of the two sampled cost values of the iteration.
    pub cost_sampled: f64,
    /// Noiseless global infidelity at the updated parameters.
    pub infidelity_exact: f64,
    pub cumulative_shots: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub method: Method,
    pub records: Vec<IterationRecord>,
    pub initial_params: ProductParams,
    pub final_params: ProductParams,
    /// Exact infidelity at the final parameters when noiseless; the
    /// (optionally mitigated) sampled estimate under noise.
    pub final_estimate: f64,
    /// Shots spent on the final estimate, outside the optimization loop.
    pub estimate_shots: u64,
}

impl RunTrace {
    pub fn total_shots(&self) -> u64 {
        self.records.last().map_or(0, |r| r.cumulative_shots)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmeEstimate {
    pub value: f64,
    pub best_rep: usize,
    pub traces: Vec<RunTrace>,
    pub bp_flag: bool,
}

impl GmeEstimate {
    pub fn from_traces(traces: Vec<RunTrace>, bp_threshold: f64) -> Result<Self> {
        let (best_rep, value) = traces
            .iter()
            .map(|t| t.final_estimate)
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or(Error::InvalidConfig("at least one repetition required"))?;
        Ok(Self { value, best_rep, traces, bp_flag: classify_bp(value, bp_threshold) })
    }
}

/// Trapped in a barren plateau iff `estimate > threshold`.
pub fn classify_bp(estimate: f64, threshold: f64) -> bool {
    estimate > threshold
}

struct Evaluator<'a> {
    target: &'a PureState,
    noise: Option<&'a NoiseModel>,
    mitigation: MitigationPolicy,
}

impl Evaluator<'_> {
    fn mitigate_each(&self) -> Option<&NoiseModel> {
        self.noise.filter(|_| self.mitigation == MitigationPolicy::EveryEvaluation)
    }

    fn global(&self, params: &ProductParams, shots: Shots, rng: &mut RngStream) -> Result<f64> {
        match (shots, self.mitigate_each()) {
            (Shots::Exact, None) => match self.noise {
                None => global_infidelity_exact(self.target, params),
                Some(m) => Ok(1.0 - ansatz_distribution(self.target, params, Some(m))?[0]),
            },
            (Shots::Exact, Some(m)) => {
                let probs = ansatz_distribution(self.target, params, Some(m))?;
                Ok(1.0 - mitigate_readout(&probs, m)?.clipped[0])
            }
            (Shots::Count(s), None) => global_infidelity_sampled(self.target, params, s, rng, self.noise),
            (Shots::Count(s), Some(m)) => {
                let probs = ansatz_distribution(self.target, params, Some(m))?;
                let record = sample_shots(&probs, s, rng)?;
                Ok(1.0 - mitigate_readout(&record.empirical_distribution(), m)?.clipped[0])
            }
        }
    }

    /// Local infidelities of the pairs of `g`, all from one measurement.
    fn local(&self, params: &ProductParams, g: &PairPartition, shots: Shots, rng: &mut RngStream) -> Result<Vec<f64>> {
        let probs = ansatz_distribution(self.target, params, self.noise)?;
        let from_distribution = |p: &[f64]| -> Result<Vec<f64>> {
            let inf = PairInfidelities::from_distribution(p)?;
            Ok(g.pairs().iter().map(|&(i, j)| inf.get(i, j)).collect())
        };
        match (shots, self.mitigate_each()) {
            (Shots::Exact, None) => from_distribution(&probs),
            (Shots::Exact, Some(m)) => from_distribution(&mitigate_readout(&probs, m)?.clipped),
            (Shots::Count(s), None) => {
                let record = sample_shots(&probs, s, rng)?;
                Ok(g.pairs().iter().map(|&(i, j)| 1.0 - record.pair_zero_frequency(i, j)).collect())
            }
            (Shots::Count(s), Some(m)) => {
                let record = sample_shots(&probs, s, rng)?;
                from_distribution(&mitigate_readout(&record.empirical_distribution(), m)?.clipped)
            }
        }
    }

    /// The reported estimate at the final parameters.
    fn final_estimate(&self, params: &ProductParams, shots: Shots, rng: &mut RngStream) -> Result<(f64, u64)> {
        let Some(model) = self.noise else {
            return Ok((global_infidelity_exact(self.target, params)?, 0));
        };
        let probs = ansatz_distribution(self.target, params, Some(model))?;
        let (empirical, used) = match shots {
            Shots::Exact => (probs, 0),
            Shots::Count(s) => (sample_shots(&probs, s, rng)?.empirical_distribution(), s),
        };
        let p0 = match self.mitigation {
            MitigationPolicy::Never => empirical[0],
            _ => mitigate_readout(&empirical, model)?.clipped[0],
        };
        Ok((1.0 - p0, used))
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

struct Runner<'a> {
    eval: Evaluator<'a>,
    config: &'a VqaConfig,
    params: ProductParams,
    records: Vec<IterationRecord>,
    shots: u64,
}

impl<'a> Runner<'a> {
    fn new(target: &'a PureState, config: &'a VqaConfig, initial: ProductParams) -> Result<Self> {
        config.validate()?;
        if initial.n() != target.n() {
            return Err(Error::DimensionMismatch { expected: target.n(), actual: initial.n() });
        }
        let eval = Evaluator { target, noise: config.active_noise(), mitigation: config.mitigation };
        Ok(Self { eval, config, params: initial, records: Vec::new(), shots: 0 })
    }

    fn settle(&self, params: ProductParams) -> ProductParams {
        if self.config.normalize_params {
            params.normalized()
        } else {
            params
        }
    }

    fn record(&mut self, stage: Stage, cost_sampled: f64, shots: Shots) -> Result<()> {
        self.shots += 2 * shots.count();
        let infidelity_exact = global_infidelity_exact(self.eval.target, &self.params)?.clamp(0.0, 1.0);
        self.records.push(IterationRecord {
            iteration: self.records.len() + 1,
            stage,
            cost_sampled,
            infidelity_exact,
            cumulative_shots: self.shots,
        });
        Ok(())
    }

    fn local_iteration(&mut self, k: usize, rng: &mut RngStream) -> Result<()> {
        let n = self.params.n();
        let shots = self.config.shots_local;
        let (a_k, c_k) = self.config.gains_local.at(k);
        let g = sample_partition(n, rng)?;
        let delta = sample_perturbation(2 * n, rng)?;
        let theta = self.params.to_flat();
        let plus = ProductParams::from_flat(&perturb(&theta, &delta, c_k))?;
        let minus = ProductParams::from_flat(&perturb(&theta, &delta, -c_k))?;
        let f_plus = self.eval.local(&plus, &g, shots, rng)?;
        let f_minus = self.eval.local(&minus, &g, shots, rng)?;

        let mut grad = vec![Complex64::new(0.0, 0.0); 2 * n];
        let components = delta.components();
        for (p, &(i, j)) in g.pairs().iter().enumerate() {
            let scale = (f_plus[p] - f_minus[p]) / (2.0 * c_k);
            for q in [i, j] {
                for b in 0..2 {
                    grad[2 * q + b] = components[2 * q + b] * scale;
                }
            }
        }
        let mut next = self.settle(step(&self.params, &grad, a_k)?.params);
        if let Some(q) = g.leftover() {
            // Keep the unpaired qubit bit-for-bit.
            next.set_qubit(q, self.params.qubit(q))?;
        }
        self.params = next;
        self.record(Stage::Local, 0.5 * (mean(&f_plus) + mean(&f_minus)), shots)
    }

    fn global_iteration(&mut self, k: usize, rng: &mut RngStream) -> Result<()> {
        let n = self.params.n();
        let shots = self.config.shots_global;
        let (a_k, c_k) = self.config.gains_global.at(k);
        let delta = sample_perturbation(2 * n, rng)?;
        let theta = self.params.to_flat();
        let plus = ProductParams::from_flat(&perturb(&theta, &delta, c_k))?;
        let minus = ProductParams::from_flat(&perturb(&theta, &delta, -c_k))?;
        let f_plus = self.eval.global(&plus, shots, rng)?;
        let f_minus = self.eval.global(&minus, shots, rng)?;
        let grad = gradient_estimate(f_plus, f_minus, c_k, &delta)?;
        self.params = self.settle(step(&self.params, &grad, a_k)?.params);
        self.record(Stage::Global, 0.5 * (f_plus + f_minus), shots)
    }

    fn finish(self, method: Method, initial: ProductParams, rng: &mut RngStream) -> Result<RunTrace> {
        let (final_estimate, estimate_shots) =
            self.eval.final_estimate(&self.params, self.config.shots_global, rng)?;
        Ok(RunTrace {
            method,
            records: self.records,
            initial_params: initial,
            final_params: self.params,
            final_estimate,
            estimate_shots,
        })
    }
}

fn initial_params(n: usize, rng: &RngStream) -> ProductParams {
    ProductParams::random(n, &mut rng.derive(INIT_STREAM_TAG))
}

/// VDGE from explicit starting parameters; `n_local` is ignored.
pub fn run_vdge_from(
    target: &PureState,
    config: &VqaConfig,
    initial: ProductParams,
    rng: &mut RngStream,
) -> Result<RunTrace> {
    if config.n_global == 0 {
        return Err(Error::InvalidConfig("VDGE needs at least one global iteration"));
    }
    let mut runner = Runner::new(target, config, initial.clone())?;
    for k in 0..config.n_global {
        runner.global_iteration(k, rng)?;
    }
    runner.finish(Method::Vdge, initial, rng)
}

/// VDGE from random initial parameters. The start is drawn from a stream
/// derived from `rng`, so [`run_ivdge`] given the same stream starts from
/// the same point.
pub fn run_vdge(target: &PureState, config: &VqaConfig, rng: &mut RngStream) -> Result<RunTrace> {
    run_vdge_from(target, config, initial_params(target.n(), rng), rng)
}

/// iVDGE from explicit starting parameters.
pub fn run_ivdge_from(
    target: &PureState,
    config: &VqaConfig,
    initial: ProductParams,
    rng: &mut RngStream,
) -> Result<RunTrace> {
    if config.n_local == 0 {
        return Err(Error::InvalidConfig("iVDGE needs at least one local iteration"));
    }
    if target.n() < 2 {
        return Err(Error::InvalidQubitCount { n: target.n(), reason: "iVDGE needs at least 2 qubits" });
    }
    let mut runner = Runner::new(target, config, initial.clone())?;
    for k in 0..config.n_local {
        runner.local_iteration(k, rng)?;
    }
    let offset = if config.restart_global_schedule { 0 } else { config.n_local };
    for k in 0..config.n_global {
        runner.global_iteration(offset + k, rng)?;
    }
    runner.finish(Method::Ivdge, initial, rng)
}

pub fn run_ivdge(target: &PureState, config: &VqaConfig, rng: &mut RngStream) -> Result<RunTrace> {
    run_ivdge_from(target, config, initial_params(target.n(), rng), rng)
}

/// Repetition `rep` of `method` on the stream `(config.seed, rep)`.
pub fn run_repetition(target: &PureState, config: &VqaConfig, method: Method, rep: usize) -> Result<RunTrace> {
    let mut rng = RngStream::new(config.seed, rep as u64);
    match method {
        Method::Vdge => run_vdge(target, config, &mut rng),
        Method::Ivdge => run_ivdge(target, config, &mut rng),
    }
}

/// Runs `config.repetitions` independent repetitions and keeps the minimum
/// final estimate.
pub fn best_of_repetitions(target: &PureState, config: &VqaConfig, method: Method) -> Result<GmeEstimate> {
    if config.repetitions == 0 {
        return Err(Error::InvalidConfig("at least one repetition required"));
    }
    let traces = (0..config.repetitions)
        .map(|rep| run_repetition(target, config, method, rep))
        .collect::<Result<Vec<_>>>()?;
    GmeEstimate::from_traces(traces, config.bp_threshold)
}
