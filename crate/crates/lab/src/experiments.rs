//! Ensemble experiments: single runs, the random-state benchmark, the `s`
//! sweep over superposition families and the shot-budget noise study.
//!
//! Every ensemble member is an isolated computation seeded by
//! `derive_seed(seed, member)`. Members run on a pool of `jobs` threads and
//! are collected in member order, so the thread count never changes results.

use std::path::Path;

use gme_core::gme::{
    exact_gme_symmetric, make_named_state, run_repetition, GmeEstimate, Method, ProductOracle, RunTrace, Shots,
    StateFamily, SymmetricFamily, VqaConfig,
};
use gme_core::noise::NoiseModel;
use gme_core::statevector::{haar_random_state, PureState};
use gme_core::{derive_seed, RngStream};
use rayon::prelude::*;

use crate::error::{LabError, Result};
use crate::output::{format_float, write_summary_file};
use crate::summary::{EnsembleSummary, SummaryRow};

const HAAR_STREAM: u64 = 0x6861_6172;

/// Random-benchmark CSPSA stability offsets for `n = 3, 4, 5, 6`.
pub const BENCHMARK_GAIN_A: [f64; 4] = [32.0, 16.0, 8.0, 4.0];

/// Restarts of the symmetric oracle's grid-seeded local search.
const SYMMETRIC_RESTARTS: usize = 8;

/// The experiment kinds of the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Vdge,
    Ivdge,
    SweepS,
    NoiseStudy,
    RandomBenchmark,
    BoundsCheck,
    EstimatorCheck,
    SpectrumCheck,
    ExactGme,
}

impl ExperimentKind {
    pub fn is_stochastic(self) -> bool {
        matches!(self, Self::Vdge | Self::Ivdge | Self::SweepS | Self::NoiseStudy | Self::RandomBenchmark)
    }
}

/// One row of the noise study: VDGE global shots and the iVDGE local/global
/// pair compared against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoiseRow {
    pub vdge_shots: u64,
    pub local_shots: u64,
    pub global_shots: u64,
}

/// The budget rows of the noise study, from 8192 global shots down to 130.
pub fn default_noise_rows() -> Vec<NoiseRow> {
    [(8192, 512, 8192), (4096, 512, 4096), (2048, 512, 2048), (1024, 512, 1024), (512, 256, 512), (256, 128, 256), (130, 64, 128)]
        .into_iter()
        .map(|(vdge_shots, local_shots, global_shots)| NoiseRow { vdge_shots, local_shots, global_shots })
        .collect()
}

/// Everything an ensemble experiment needs besides the output location.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// `None` draws a Haar-random target per member.
    pub family: Option<StateFamily>,
    pub n: usize,
    /// Superposition weights; a single entry for single runs.
    pub s_grid: Vec<f64>,
    /// Settings shared by both methods. `n_local`/`n_global` are the iVDGE
    /// budget; `seed` is the experiment seed.
    pub vqa: VqaConfig,
    /// VDGE iterations. `None` matches the iVDGE shot budget.
    pub vdge_iterations: Option<usize>,
    pub noise_rows: Vec<NoiseRow>,
    pub ensemble: usize,
    pub jobs: usize,
}

/// `s = 0.05 m` for `m = 0, …, 20`.
pub fn default_s_grid() -> Vec<f64> {
    (0..=20).map(|m| m as f64 / 20.0).collect()
}

impl ExperimentSpec {
    /// Haar-random benchmark on `n` qubits with the per-`n` global offset.
    pub fn random_benchmark(n: usize) -> Self {
        let mut vqa = VqaConfig::default();
        if let Some(&a) = n.checked_sub(3).and_then(|i| BENCHMARK_GAIN_A.get(i)) {
            vqa.gains_global = vqa.gains_global.with_stability(a);
        }
        Self {
            kind: ExperimentKind::RandomBenchmark,
            family: None,
            n,
            s_grid: Vec::new(),
            vqa,
            vdge_iterations: None,
            noise_rows: Vec::new(),
            ensemble: 20,
            jobs: 1,
        }
    }

    pub fn sweep(family: StateFamily, n: usize) -> Self {
        Self {
            kind: ExperimentKind::SweepS,
            family: Some(family),
            n,
            s_grid: default_s_grid(),
            ensemble: 10,
            ..Self::random_benchmark(n)
        }
    }

    /// GHZ(7) under the default noise model, single runs, 200 VDGE
    /// iterations, global offset 8.
    pub fn noise_study() -> Self {
        let mut vqa = VqaConfig { repetitions: 1, noise: Some(NoiseModel::study_default()), ..VqaConfig::default() };
        vqa.gains_global = vqa.gains_global.with_stability(8.0);
        Self {
            kind: ExperimentKind::NoiseStudy,
            family: Some(StateFamily::Ghz),
            n: 7,
            s_grid: Vec::new(),
            vqa,
            vdge_iterations: Some(200),
            noise_rows: default_noise_rows(),
            ensemble: 100,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.vqa.validate()?;
        if self.jobs == 0 {
            return Err(LabError::spec("--jobs must be at least 1"));
        }
        if self.vqa.repetitions == 0 {
            return Err(LabError::spec("--reps must be at least 1"));
        }
        if self.s_grid.iter().any(|s| !(0.0..=1.0).contains(s)) {
            return Err(LabError::spec("every s must lie in [0, 1]"));
        }
        match self.kind {
            ExperimentKind::SweepS => {
                if self.s_grid.is_empty() {
                    return Err(LabError::spec("the s grid is empty"));
                }
                symmetric_family(self.family)?;
            }
            ExperimentKind::NoiseStudy => {
                if self.noise_rows.is_empty() {
                    return Err(LabError::spec("no noise-study rows"));
                }
                if self.vdge_iterations == Some(0) {
                    return Err(LabError::spec("the noise study needs at least one VDGE iteration"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn seed(&self) -> u64 {
        self.vqa.seed
    }

    /// The VDGE configuration on the iVDGE budget.
    pub fn vdge_config(&self) -> VqaConfig {
        let n_global = self.vdge_iterations.unwrap_or_else(|| matched_vdge_iterations(&self.vqa));
        VqaConfig { n_local: 0, n_global, ..self.vqa.clone() }
    }

    fn target(&self, s: Option<f64>, member_seed: u64) -> Result<PureState> {
        Ok(match self.family {
            Some(family) => make_named_state(family, self.n, s)?,
            None => haar_random_state(self.n, &mut RngStream::new(member_seed, HAAR_STREAM))?,
        })
    }
}

/// VDGE iterations spending the same optimization shots as iVDGE:
/// `n_global + n_local·S_L/S_G`, rounded when the ratio is fractional.
pub fn matched_vdge_iterations(ivdge: &VqaConfig) -> usize {
    let local = match (ivdge.shots_local, ivdge.shots_global) {
        (Shots::Count(l), Shots::Count(g)) => (ivdge.n_local as f64 * l as f64 / g as f64).round() as usize,
        (Shots::Exact, _) => 0,
        (Shots::Count(_), Shots::Exact) => ivdge.n_local,
    };
    ivdge.n_global + local
}

fn symmetric_family(family: Option<StateFamily>) -> Result<SymmetricFamily> {
    match family {
        Some(StateFamily::GhzW) => Ok(SymmetricFamily::GhzW),
        Some(StateFamily::WWTilde) => Ok(SymmetricFamily::WWTilde),
        _ => Err(LabError::spec("the s sweep needs --family GHZW or WWtilde")),
    }
}

/// Maps `f` over `0..count` on a pool of `jobs` threads, in index order.
pub fn par_map<T, F>(jobs: usize, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

fn best_of(target: &PureState, config: &VqaConfig, method: Method, jobs: usize) -> Result<GmeEstimate> {
    let traces = par_map(jobs, config.repetitions, |rep| Ok(run_repetition(target, config, method, rep)?))?;
    Ok(GmeEstimate::from_traces(traces, config.bp_threshold)?)
}

/// A single best-of-repetitions estimate. Repetitions run in parallel.
pub fn run_single(spec: &ExperimentSpec, method: Method) -> Result<GmeEstimate> {
    spec.validate()?;
    if spec.family.is_some_and(StateFamily::is_superposition) && spec.s_grid.len() != 1 {
        return Err(LabError::spec("superposition families need exactly one --s"));
    }
    let target = spec.target(spec.s_grid.first().copied(), spec.seed())?;
    let config = match method {
        Method::Vdge => spec.vdge_config(),
        Method::Ivdge => spec.vqa.clone(),
    };
    best_of(&target, &config, method, spec.jobs)
}

/// Pointwise best-of-repetitions infidelity: the minimum over repetitions
/// at each iteration.
pub fn best_curve(traces: &[RunTrace]) -> Vec<f64> {
    let len = traces.iter().map(|t| t.records.len()).min().unwrap_or(0);
    (0..len)
        .map(|t| traces.iter().map(|tr| tr.records[t].infidelity_exact).fold(f64::INFINITY, f64::min))
        .collect()
}

fn summarize(x: f64, values: &[f64], bp_threshold: Option<f64>) -> Option<SummaryRow> {
    (!values.is_empty()).then(|| SummaryRow::from_values(x, values, bp_threshold))
}

/// One method's results over a benchmark ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSeries {
    /// `|E − Ê|` against cumulative optimization shots.
    pub curve: EnsembleSummary,
    pub estimates: Vec<f64>,
    pub errors: Vec<f64>,
}

impl MethodSeries {
    fn from_members(members: &[(f64, GmeEstimate)]) -> Self {
        let estimates: Vec<f64> = members.iter().map(|(_, e)| e.value).collect();
        let errors: Vec<f64> = members.iter().map(|(gme, e)| (gme - e.value).abs()).collect();
        let curves: Vec<Vec<f64>> =
            members.iter().map(|(gme, e)| best_curve(&e.traces).iter().map(|v| (gme - v).abs()).collect()).collect();
        let xs: Vec<f64> = members
            .first()
            .map(|(_, e)| e.traces[0].records.iter().map(|r| r.cumulative_shots as f64).collect())
            .unwrap_or_default();
        Self { curve: EnsembleSummary::from_curves(&xs, &curves), estimates, errors }
    }

    pub fn final_error(&self, x: f64) -> EnsembleSummary {
        EnsembleSummary { rows: summarize(x, &self.errors, None).into_iter().collect() }
    }

    pub fn median_error(&self) -> Option<f64> {
        summarize(0.0, &self.errors, None).map(|r| r.median)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub n: usize,
    pub oracle: Vec<f64>,
    pub vdge: MethodSeries,
    pub ivdge: MethodSeries,
}

/// Haar-random targets: the product oracle, then VDGE and iVDGE best of
/// repetitions on matched shot budgets.
pub fn run_random_benchmark(spec: &ExperimentSpec) -> Result<BenchmarkReport> {
    spec.validate()?;
    let vdge_config = spec.vdge_config();
    let members = par_map(spec.jobs, spec.ensemble, |m| {
        let seed = derive_seed(spec.seed(), m as u64);
        let target = spec.target(None, seed)?;
        let gme = ProductOracle::default().run(&target)?;
        let ivdge = gme_core::gme::best_of_repetitions(&target, &VqaConfig { seed, ..spec.vqa.clone() }, Method::Ivdge)?;
        let vdge = gme_core::gme::best_of_repetitions(&target, &VqaConfig { seed, ..vdge_config.clone() }, Method::Vdge)?;
        Ok((gme, vdge, ivdge))
    })?;
    let split = |pick: fn(&(f64, GmeEstimate, GmeEstimate)) -> &GmeEstimate| {
        members.iter().map(|m| (m.0, pick(m).clone())).collect::<Vec<_>>()
    };
    Ok(BenchmarkReport {
        n: spec.n,
        oracle: members.iter().map(|m| m.0).collect(),
        vdge: MethodSeries::from_members(&split(|m| &m.1)),
        ivdge: MethodSeries::from_members(&split(|m| &m.2)),
    })
}

pub fn write_benchmark(report: &BenchmarkReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (series, name) in [(&report.vdge, "vdge"), (&report.ivdge, "ivdge")] {
        write_summary_file(&series.curve, &dir.join(format!("{name}_error_vs_shots.csv")))?;
        write_summary_file(&series.final_error(report.n as f64), &dir.join(format!("{name}_final_error.csv")))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub s: f64,
    pub gme: f64,
    pub vdge: Vec<f64>,
    pub ivdge: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub points: Vec<SweepPoint>,
    pub bp_threshold: f64,
}

impl SweepReport {
    fn values(point: &SweepPoint, method: Method) -> &[f64] {
        match method {
            Method::Vdge => &point.vdge,
            Method::Ivdge => &point.ivdge,
        }
    }

    /// Median and quartiles of `Ê` per `s`, with the trapped percentage.
    pub fn estimates(&self, method: Method) -> EnsembleSummary {
        let rows = self
            .points
            .iter()
            .filter_map(|p| summarize(p.s, Self::values(p, method), Some(self.bp_threshold)))
            .collect();
        EnsembleSummary { rows }
    }

    /// Median and quartiles of `|E − Ê|` per `s`.
    pub fn errors(&self, method: Method) -> EnsembleSummary {
        let rows = self
            .points
            .iter()
            .filter_map(|p| {
                let errs: Vec<f64> = Self::values(p, method).iter().map(|v| (p.gme - v).abs()).collect();
                summarize(p.s, &errs, None)
            })
            .collect();
        EnsembleSummary { rows }
    }
}

/// Superposition family over the `s` grid: the symmetric oracle and an
/// ensemble of best-of-repetitions estimates per method at every `s`.
pub fn run_sweep_s(spec: &ExperimentSpec) -> Result<SweepReport> {
    spec.validate()?;
    let family = symmetric_family(spec.family)?;
    let oracle = spec
        .s_grid
        .iter()
        .map(|&s| exact_gme_symmetric(family, spec.n, s, SYMMETRIC_RESTARTS))
        .collect::<gme_core::Result<Vec<_>>>()?;
    let targets = spec.s_grid.iter().map(|&s| spec.target(Some(s), 0)).collect::<Result<Vec<_>>>()?;
    let vdge_config = spec.vdge_config();
    let per = spec.ensemble;
    let runs = par_map(spec.jobs, spec.s_grid.len() * per, |task| {
        let (point, member) = (task / per, task % per);
        let seed = derive_seed(derive_seed(spec.seed(), point as u64), member as u64);
        let target = &targets[point];
        let iv = gme_core::gme::best_of_repetitions(target, &VqaConfig { seed, ..spec.vqa.clone() }, Method::Ivdge)?;
        let v = gme_core::gme::best_of_repetitions(target, &VqaConfig { seed, ..vdge_config.clone() }, Method::Vdge)?;
        Ok((v.value, iv.value))
    })?;
    let points = spec
        .s_grid
        .iter()
        .zip(&oracle)
        .enumerate()
        .map(|(i, (&s, &gme))| {
            let chunk = &runs[i * per..(i + 1) * per];
            SweepPoint { s, gme, vdge: chunk.iter().map(|r| r.0).collect(), ivdge: chunk.iter().map(|r| r.1).collect() }
        })
        .collect();
    Ok(SweepReport { points, bp_threshold: spec.vqa.bp_threshold })
}

pub fn write_sweep(report: &SweepReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_path(dir.join("oracle.csv"))?;
    w.write_record(["s", "gme"])?;
    for p in &report.points {
        w.write_record([format_float(p.s), format_float(p.gme)])?;
    }
    w.flush()?;
    for method in [Method::Vdge, Method::Ivdge] {
        write_summary_file(&report.estimates(method), &dir.join(format!("{}_estimate.csv", method.name())))?;
        write_summary_file(&report.errors(method), &dir.join(format!("{}_error.csv", method.name())))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseRowResult {
    pub row: NoiseRow,
    pub vdge_iterations: usize,
    /// Global iterations of iVDGE chosen to match the VDGE shot budget.
    pub ivdge_global_iterations: usize,
    pub vdge: Vec<f64>,
    pub ivdge: Vec<f64>,
}

impl NoiseRowResult {
    pub fn vdge_shots(&self) -> u64 {
        2 * self.vdge_iterations as u64 * self.row.vdge_shots
    }

    pub fn ivdge_shots(&self, n_local: usize) -> u64 {
        2 * (n_local as u64 * self.row.local_shots + self.ivdge_global_iterations as u64 * self.row.global_shots)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoiseReport {
    pub rows: Vec<NoiseRowResult>,
    pub n_local: usize,
    pub bp_threshold: f64,
}

impl NoiseReport {
    /// Final estimates summarized per row, `x` being the global shots of
    /// the method.
    pub fn summary(&self, method: Method) -> EnsembleSummary {
        let rows = self
            .rows
            .iter()
            .filter_map(|r| match method {
                Method::Vdge => summarize(r.row.vdge_shots as f64, &r.vdge, Some(self.bp_threshold)),
                Method::Ivdge => summarize(r.row.global_shots as f64, &r.ivdge, Some(self.bp_threshold)),
            })
            .collect();
        EnsembleSummary { rows }
    }

    pub fn table(&self) -> String {
        let vdge = self.summary(Method::Vdge);
        let ivdge = self.summary(Method::Ivdge);
        let mut out = String::from("vdge_shots  bp%    median   | ivdge_shots  bp%    median\n");
        for (i, r) in self.rows.iter().enumerate() {
            let (Some(v), Some(iv)) = (vdge.rows.get(i), ivdge.rows.get(i)) else { continue };
            out.push_str(&format!(
                "{:>10}  {:>5.1}  {:.4}   | {:>5}/{:<5}  {:>5.1}  {:.4}\n",
                r.row.vdge_shots,
                v.bp_pct.unwrap_or(0.0),
                v.median,
                r.row.local_shots,
                r.row.global_shots,
                iv.bp_pct.unwrap_or(0.0),
                iv.median,
            ));
        }
        out
    }
}

/// Single-run ensembles per budget row. iVDGE spends `n_local` local
/// iterations and as many global ones as the VDGE budget leaves.
pub fn run_noise_study(spec: &ExperimentSpec) -> Result<NoiseReport> {
    spec.validate()?;
    let target = spec.target(spec.s_grid.first().copied(), 0)?;
    let vdge_iterations = spec.vdge_iterations.unwrap_or(200);
    let n_local = spec.vqa.n_local;
    let configs = spec
        .noise_rows
        .iter()
        .map(|row| {
            let budget = vdge_iterations as f64 * row.vdge_shots as f64 - n_local as f64 * row.local_shots as f64;
            if budget < row.global_shots as f64 {
                return Err(LabError::spec(format!(
                    "row {}: the local stage alone exhausts the VDGE budget",
                    row.vdge_shots
                )));
            }
            let n_global = (budget / row.global_shots as f64).round() as usize;
            let vdge = VqaConfig {
                n_local: 0,
                n_global: vdge_iterations,
                shots_global: Shots::Count(row.vdge_shots),
                ..spec.vqa.clone()
            };
            let ivdge = VqaConfig {
                n_local,
                n_global,
                shots_local: Shots::Count(row.local_shots),
                shots_global: Shots::Count(row.global_shots),
                ..spec.vqa.clone()
            };
            Ok((vdge, ivdge))
        })
        .collect::<Result<Vec<_>>>()?;
    let per = spec.ensemble;
    let runs = par_map(spec.jobs, configs.len() * per, |task| {
        let (row, member) = (task / per, task % per);
        let seed = derive_seed(derive_seed(spec.seed(), row as u64), member as u64);
        let (vdge, ivdge) = &configs[row];
        let v = run_repetition(&target, &VqaConfig { seed, ..vdge.clone() }, Method::Vdge, 0)?;
        let iv = run_repetition(&target, &VqaConfig { seed, ..ivdge.clone() }, Method::Ivdge, 0)?;
        Ok((v.final_estimate, iv.final_estimate))
    })?;
    let rows = spec
        .noise_rows
        .iter()
        .zip(&configs)
        .enumerate()
        .map(|(i, (&row, (_, ivdge)))| {
            let chunk = &runs[i * per..(i + 1) * per];
            NoiseRowResult {
                row,
                vdge_iterations,
                ivdge_global_iterations: ivdge.n_global,
                vdge: chunk.iter().map(|r| r.0).collect(),
                ivdge: chunk.iter().map(|r| r.1).collect(),
            }
        })
        .collect();
    Ok(NoiseReport { rows, n_local, bp_threshold: spec.vqa.bp_threshold })
}

pub fn write_noise_study(report: &NoiseReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_summary_file(&report.summary(Method::Vdge), &dir.join("vdge.csv"))?;
    write_summary_file(&report.summary(Method::Ivdge), &dir.join("ivdge.csv"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(kind: ExperimentKind) -> ExperimentSpec {
        let mut spec = match kind {
            ExperimentKind::SweepS => ExperimentSpec::sweep(StateFamily::GhzW, 3),
            ExperimentKind::NoiseStudy => ExperimentSpec::noise_study(),
            _ => ExperimentSpec::random_benchmark(3),
        };
        spec.vqa.n_local = 4;
        spec.vqa.n_global = 6;
        spec.vqa.repetitions = 2;
        spec.vqa.seed = 3;
        spec.ensemble = 3;
        spec
    }

    #[test]
    fn budget_matching() {
        assert_eq!(matched_vdge_iterations(&VqaConfig::default()), 300);
        let exact = VqaConfig { shots_local: Shots::Exact, ..VqaConfig::default() };
        assert_eq!(matched_vdge_iterations(&exact), 295);
    }

    #[test]
    fn benchmark_budgets_end_equal() {
        let mut spec = tiny(ExperimentKind::RandomBenchmark);
        spec.vqa.n_local = 8;
        spec.vqa.shots_local = Shots::Count(256);
        spec.vqa.shots_global = Shots::Count(1024);
        let report = run_random_benchmark(&spec).unwrap();
        assert_eq!(report.vdge.curve.last().unwrap().x, report.ivdge.curve.last().unwrap().x);
        assert_eq!(report.ivdge.curve.rows.len(), 14);
        assert_eq!(report.vdge.curve.rows.len(), 8);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let mut spec = tiny(ExperimentKind::SweepS);
        spec.s_grid = vec![0.0, 0.5];
        let serial = run_sweep_s(&spec).unwrap();
        spec.jobs = 4;
        assert_eq!(run_sweep_s(&spec).unwrap(), serial);
    }

    #[test]
    fn noise_rows_balance_budgets() {
        let mut spec = tiny(ExperimentKind::NoiseStudy);
        spec.vqa.n_local = 80;
        spec.ensemble = 1;
        spec.noise_rows.truncate(1);
        spec.vdge_iterations = Some(200);
        let report = run_noise_study(&spec).unwrap();
        let row = &report.rows[0];
        assert_eq!(row.ivdge_global_iterations, 195);
        assert_eq!(row.vdge_shots(), row.ivdge_shots(80));
    }

    #[test]
    fn empty_ensemble_gives_empty_summaries() {
        let mut spec = tiny(ExperimentKind::SweepS);
        spec.ensemble = 0;
        let report = run_sweep_s(&spec).unwrap();
        assert!(report.estimates(Method::Ivdge).rows.is_empty());
    }

    #[test]
    fn validation() {
        let mut spec = tiny(ExperimentKind::SweepS);
        spec.family = Some(StateFamily::W);
        assert!(spec.validate().is_err());
        let mut spec = tiny(ExperimentKind::SweepS);
        spec.s_grid.clear();
        assert!(spec.validate().is_err());
        let mut spec = tiny(ExperimentKind::RandomBenchmark);
        spec.jobs = 0;
        assert!(spec.validate().is_err());
    }
}
