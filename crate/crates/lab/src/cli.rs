//! Command-line parsing and dispatch.
//!
//! Values come from flags first, then from the `--config` file, then from
//! per-experiment defaults. The seed additionally falls back to the
//! `GME_LAB_SEED` environment variable.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use gme_core::cspsa::GainPreset;
use gme_core::gme::{Method, Shots, StateFamily};

use crate::config::{load_noise, KeyValues};
use crate::error::{LabError, Result};
use crate::experiments::{
    run_noise_study, run_random_benchmark, run_single, run_sweep_s, write_benchmark, write_noise_study, write_sweep,
    ExperimentKind, ExperimentSpec,
};
use crate::output::{format_float, write_trace_file};
use crate::suites::{bounds_check, estimator_check, exact_gme, spectrum_check, spectrum_table, SuiteReport};

pub const SEED_ENV: &str = "GME_LAB_SEED";

/// Shot count per evaluation, or `exact` for noiseless expectation values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotsArg(pub Shots);

impl FromStr for ShotsArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Self(Shots::Exact));
        }
        match s.parse::<u64>() {
            Ok(0) => Err("shot counts must be at least 1".into()),
            Ok(k) => Ok(Self(Shots::Count(k))),
            Err(_) => Err(format!("`{s}` is neither a shot count nor `exact`")),
        }
    }
}

/// A named family, or `haar` for a seeded Haar-random state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyArg(pub Option<StateFamily>);

impl FromStr for FamilyArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("haar") {
            return Ok(Self(None));
        }
        s.parse::<StateFamily>().map(|f| Self(Some(f))).map_err(|_| {
            format!("unknown family `{s}` (expected GHZ, W, Wtilde, GHZW, WWtilde or haar)")
        })
    }
}

/// Comma-separated list of `s` values.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", v.trim())))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Grid)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Number of qubits.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// GHZ, W, Wtilde, GHZW, WWtilde, or haar.
    #[arg(long, global = true)]
    pub family: Option<FamilyArg>,
    /// Superposition weight; a comma-separated grid for sweep-s.
    #[arg(long, global = true)]
    pub s: Option<Grid>,
    /// Experiment seed. Falls back to the config file, then GME_LAB_SEED.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Shots per local-cost evaluation, or `exact`.
    #[arg(long, global = true)]
    pub shots_local: Option<ShotsArg>,
    /// Shots per global-cost evaluation, or `exact`.
    #[arg(long, global = true)]
    pub shots_global: Option<ShotsArg>,
    #[arg(long, global = true)]
    pub iters_local: Option<usize>,
    /// Global iterations. For `vdge` and `noise-study` this is the VDGE
    /// iteration count.
    #[arg(long, global = true)]
    pub iters_global: Option<usize>,
    /// Repetitions per estimate (best of).
    #[arg(long, global = true)]
    pub reps: Option<usize>,
    #[arg(long, global = true)]
    pub ensemble: Option<usize>,
    /// standard or asymptotic.
    #[arg(long, global = true)]
    pub gains: Option<GainPreset>,
    /// Stability offset A of the global-stage step schedule.
    #[arg(long = "gain-A", global = true)]
    pub gain_a: Option<f64>,
    #[arg(long, global = true)]
    pub noise_file: Option<PathBuf>,
    /// Worker threads for ensemble members and repetitions.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output file (vdge, ivdge) or directory (ensembles).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

const CONFIG_KEYS: [&str; 15] = [
    "n",
    "family",
    "s",
    "seed",
    "shots-local",
    "shots-global",
    "iters-local",
    "iters-global",
    "reps",
    "ensemble",
    "gains",
    "gain-a",
    "noise-file",
    "jobs",
    "out",
];

impl Common {
    /// Fills unset flags from the config file.
    pub fn merge_config(mut self) -> Result<Self> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        let kv = KeyValues::load(&path)?;
        let unknown = kv.unknown_keys(&CONFIG_KEYS);
        if !unknown.is_empty() {
            return Err(LabError::config(format!("{}: unknown keys {}", path.display(), unknown.join(", "))));
        }
        self.n = kv.resolve(self.n, "n")?;
        self.family = kv.resolve(self.family, "family")?;
        self.s = kv.resolve(self.s, "s")?;
        self.seed = kv.resolve(self.seed, "seed")?;
        self.shots_local = kv.resolve(self.shots_local, "shots-local")?;
        self.shots_global = kv.resolve(self.shots_global, "shots-global")?;
        self.iters_local = kv.resolve(self.iters_local, "iters-local")?;
        self.iters_global = kv.resolve(self.iters_global, "iters-global")?;
        self.reps = kv.resolve(self.reps, "reps")?;
        self.ensemble = kv.resolve(self.ensemble, "ensemble")?;
        self.gains = kv.resolve(self.gains, "gains")?;
        self.gain_a = kv.resolve(self.gain_a, "gain-a")?;
        self.noise_file = kv.resolve(self.noise_file, "noise-file")?;
        self.jobs = kv.resolve(self.jobs, "jobs")?;
        self.out = kv.resolve(self.out, "out")?;
        Ok(self)
    }

    fn seed(&self) -> Result<u64> {
        if let Some(seed) = self.seed {
            return Ok(seed);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|e| LabError::config(format!("{SEED_ENV}=`{v}`: {e}"))),
            Err(_) => Err(LabError::config(format!("--seed is required (or set {SEED_ENV})"))),
        }
    }

    fn require_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| LabError::config("--n is required"))
    }

    /// Applies the run-shaping flags on top of `spec`'s defaults.
    fn apply(&self, spec: &mut ExperimentSpec) -> Result<()> {
        spec.vqa.seed = self.seed()?;
        let vqa = &mut spec.vqa;
        if let Some(k) = self.iters_local {
            vqa.n_local = k;
        }
        if let Some(k) = self.iters_global {
            match spec.kind {
                ExperimentKind::Vdge | ExperimentKind::NoiseStudy => spec.vdge_iterations = Some(k),
                _ => vqa.n_global = k,
            }
        }
        if let Some(ShotsArg(s)) = self.shots_local {
            vqa.shots_local = s;
        }
        if let Some(ShotsArg(s)) = self.shots_global {
            vqa.shots_global = s;
        }
        if let Some(r) = self.reps {
            vqa.repetitions = r;
        }
        if let Some(preset) = self.gains {
            let gains = preset.gains();
            vqa.gains_local = gains.with_stability(vqa.gains_local.stability);
            vqa.gains_global = gains.with_stability(vqa.gains_global.stability);
        }
        if let Some(a) = self.gain_a {
            vqa.gains_global = vqa.gains_global.with_stability(a);
        }
        if let Some(path) = &self.noise_file {
            vqa.noise = Some(load_noise(path)?);
        }
        if let Some(e) = self.ensemble {
            spec.ensemble = e;
        }
        if let Some(j) = self.jobs {
            spec.jobs = j;
        }
        if let Some(Grid(grid)) = &self.s {
            spec.s_grid = grid.clone();
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "gme-lab", version, about = "Variational estimation of the geometric measure of entanglement")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Best-of-repetitions VDGE on one state; writes the best trace.
    Vdge,
    /// Best-of-repetitions iVDGE on one state; writes the best trace.
    Ivdge,
    /// Ensembles over the s grid of a superposition family.
    SweepS,
    /// Single-run ensembles per shot budget under a noise model.
    NoiseStudy {
        /// Drop the noise model (baseline run).
        #[arg(long)]
        noiseless: bool,
    },
    /// Haar-random states against the product oracle.
    RandomBenchmark,
    /// Infidelity sandwich on random instances.
    BoundsCheck {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Unbiasedness and variance of the pair-partition estimator.
    EstimatorCheck {
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// Spectrum of the local cost Hamiltonian.
    SpectrumCheck,
    /// Exact GME of a named state.
    ExactGme,
}

impl Command {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            Command::Vdge => ExperimentKind::Vdge,
            Command::Ivdge => ExperimentKind::Ivdge,
            Command::SweepS => ExperimentKind::SweepS,
            Command::NoiseStudy { .. } => ExperimentKind::NoiseStudy,
            Command::RandomBenchmark => ExperimentKind::RandomBenchmark,
            Command::BoundsCheck { .. } => ExperimentKind::BoundsCheck,
            Command::EstimatorCheck { .. } => ExperimentKind::EstimatorCheck,
            Command::SpectrumCheck => ExperimentKind::SpectrumCheck,
            Command::ExactGme => ExperimentKind::ExactGme,
        }
    }
}

fn suite_result(report: &SuiteReport, out: &mut impl Write) -> Result<()> {
    write!(out, "{report}")?;
    if report.passed() {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        Err(LabError::spec(format!("{failed} check(s) failed")))
    }
}

fn single_qubit_range(n: Option<usize>, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    n.map_or_else(|| default.collect(), |n| vec![n])
}

/// Runs a parsed command line, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    let common = cli.common.merge_config()?;
    let kind = cli.command.kind();
    match cli.command {
        Command::SpectrumCheck => {
            let ns = single_qubit_range(common.n, 2..=8);
            for &n in &ns {
                writeln!(out, "n = {n}")?;
                write!(out, "{}", spectrum_table(&gme_core::hamiltonians::hl_spectrum(n)?))?;
            }
            suite_result(&spectrum_check(&ns)?, out)
        }
        Command::BoundsCheck { samples } => {
            let ns = single_qubit_range(common.n, 2..=8);
            suite_result(&bounds_check(&ns, samples, common.seed.unwrap_or(0))?, out)
        }
        Command::EstimatorCheck { instances } => {
            let ns = common.n.map_or_else(|| vec![4, 6], |n| vec![n]);
            suite_result(&estimator_check(&ns, instances, common.seed.unwrap_or(0))?, out)
        }
        Command::ExactGme => {
            let family = common.family.ok_or_else(|| LabError::config("--family is required"))?;
            let family = family.0.ok_or_else(|| LabError::config("exact-gme needs a named family"))?;
            let s = common.s.as_ref().and_then(|g| g.0.first().copied());
            let value = exact_gme(family, common.require_n()?, s)?;
            writeln!(out, "{}", format_float(value))?;
            Ok(())
        }
        Command::Vdge | Command::Ivdge => {
            let method = if kind == ExperimentKind::Vdge { Method::Vdge } else { Method::Ivdge };
            let n = common.require_n()?;
            let family = common.family.ok_or_else(|| LabError::config("--family is required"))?.0;
            let mut spec = ExperimentSpec { kind, family, ..ExperimentSpec::random_benchmark(n) };
            spec.vqa.gains_global = gme_core::gme::VqaConfig::default().gains_global;
            common.apply(&mut spec)?;
            let estimate = run_single(&spec, method)?;
            let path = common.out.clone().unwrap_or_else(|| PathBuf::from(format!("{}_trace.csv", method.name())));
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            write_trace_file(&estimate.traces[estimate.best_rep], &path)?;
            writeln!(
                out,
                "{} estimate {} (best of {}, repetition {}), barren plateau: {}",
                method.name(),
                format_float(estimate.value),
                estimate.traces.len(),
                estimate.best_rep,
                if estimate.bp_flag { "yes" } else { "no" },
            )?;
            writeln!(out, "trace written to {}", path.display())?;
            Ok(())
        }
        Command::RandomBenchmark => {
            let n = common.require_n()?;
            let mut spec = ExperimentSpec::random_benchmark(n);
            common.apply(&mut spec)?;
            let report = run_random_benchmark(&spec)?;
            let dir = out_dir(&common, "random-benchmark");
            write_benchmark(&report, &dir)?;
            for (name, series) in [("vdge", &report.vdge), ("ivdge", &report.ivdge)] {
                if let Some(m) = series.median_error() {
                    writeln!(out, "{name} median final |E - Ê| = {}", format_float(m))?;
                }
            }
            writeln!(out, "results written to {}", dir.display())?;
            Ok(())
        }
        Command::SweepS => {
            let family = common.family.map_or(Some(StateFamily::GhzW), |f| f.0);
            let mut spec = ExperimentSpec { family, ..ExperimentSpec::sweep(StateFamily::GhzW, common.n.unwrap_or(18)) };
            common.apply(&mut spec)?;
            let report = run_sweep_s(&spec)?;
            let dir = out_dir(&common, "sweep-s");
            write_sweep(&report, &dir)?;
            writeln!(out, "s      gme       vdge median  ivdge median")?;
            let (v, iv) = (report.estimates(Method::Vdge), report.estimates(Method::Ivdge));
            for ((p, a), b) in report.points.iter().zip(&v.rows).zip(&iv.rows) {
                writeln!(out, "{:<6} {:<9.6} {:<12.6} {:.6}", p.s, p.gme, a.median, b.median)?;
            }
            writeln!(out, "results written to {}", dir.display())?;
            Ok(())
        }
        Command::NoiseStudy { noiseless } => {
            let mut spec = ExperimentSpec::noise_study();
            if let Some(family) = common.family {
                spec.family = family.0;
            }
            if let Some(n) = common.n {
                spec.n = n;
            }
            common.apply(&mut spec)?;
            if noiseless {
                spec.vqa.noise = None;
            }
            let report = run_noise_study(&spec)?;
            let dir = out_dir(&common, "noise-study");
            write_noise_study(&report, &dir)?;
            write!(out, "{}", report.table())?;
            writeln!(out, "results written to {}", dir.display())?;
            Ok(())
        }
    }
}

fn out_dir(common: &Common, name: &str) -> PathBuf {
    common.out.clone().unwrap_or_else(|| Path::new("results").join(name))
}
