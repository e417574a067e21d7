//! Property suites with one PASS/FAIL line per check and measured margins.

use std::fmt;

use gme_core::gme::StateFamily;
use gme_core::hamiltonians::{
    assemble_hl_diagonal, enumerate_partitions, expected_hl_exact, hl_spectrum, infidelity_bounds, xg_mse_bound,
    PairInfidelities, SpectrumEntry,
};
use gme_core::statevector::{haar_random_state, ProductParams, PureState};
use gme_core::RngStream;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Closed-form levels against the assembled diagonal (for `n ≤ 6`).
pub fn spectrum_check(ns: &[usize]) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for &n in ns {
        let spectrum = hl_spectrum(n)?;
        let nf = n as f64;
        let total: u64 = spectrum.iter().map(|e| e.multiplicity).sum();
        let closed = spectrum[0].eigenvalue == 0.0
            && spectrum[0].multiplicity == 1
            && (spectrum[1].eigenvalue - 2.0 / nf).abs() <= 1e-12
            && spectrum[1].multiplicity == n as u64
            && spectrum[n].eigenvalue == 1.0
            && total == 1 << n;
        report.checks.push(Check::new(
            format!("spectrum closed form n={n}"),
            closed,
            format!("E0={} E1={} (2/n={}) Emax={} dim={total}", spectrum[0].eigenvalue, spectrum[1].eigenvalue, 2.0 / nf, spectrum[n].eigenvalue),
        ));
        if n <= 6 {
            let diag = assemble_hl_diagonal(n)?;
            let worst = diag
                .iter()
                .enumerate()
                .map(|(x, d)| (d - spectrum[x.count_ones() as usize].eigenvalue).abs())
                .fold(0.0, f64::max);
            report.checks.push(Check::new(
                format!("spectrum vs assembled diagonal n={n}"),
                worst <= 1e-12,
                format!("max deviation {worst:.3e}"),
            ));
        }
    }
    Ok(report)
}

pub fn spectrum_table(spectrum: &[SpectrumEntry]) -> String {
    let mut out = String::from("k  eigenvalue      multiplicity\n");
    for e in spectrum {
        out.push_str(&format!("{:<2} {:<15.12} {}\n", e.k, e.eigenvalue, e.multiplicity));
    }
    out
}

/// `⟨H_L⟩ ≤ I ≤ (n/2)⟨H_L⟩` on Haar targets with random parameters, and
/// all three zero for product targets at their own parameters.
pub fn bounds_check(ns: &[usize], samples: usize, seed: u64) -> Result<SuiteReport> {
    const TOL: f64 = 1e-9;
    let mut report = SuiteReport::default();
    for &n in ns {
        let mut rng = RngStream::new(seed, n as u64);
        let (mut lower_margin, mut upper_margin) = (f64::INFINITY, f64::INFINITY);
        for _ in 0..samples {
            let psi = haar_random_state(n, &mut rng)?;
            let params = ProductParams::random(n, &mut rng);
            let b = infidelity_bounds(&psi, &params)?;
            lower_margin = lower_margin.min(b.global - b.hl_value);
            upper_margin = upper_margin.min(n as f64 / 2.0 * b.hl_value - b.global);
        }
        report.checks.push(Check::new(
            format!("bounds n={n}"),
            lower_margin >= -TOL && upper_margin >= -TOL,
            format!("{samples} samples, min(I - HL) = {lower_margin:.3e}, min(n/2 HL - I) = {upper_margin:.3e}"),
        ));
        let mut worst = 0.0f64;
        for _ in 0..samples.min(100) {
            let params = ProductParams::random(n, &mut rng);
            let b = infidelity_bounds(&PureState::product(&params), &params)?;
            worst = worst.max(b.global.abs()).max(b.hl_value.abs()).max(b.upper.abs());
        }
        report.checks.push(Check::new(
            format!("product states saturate n={n}"),
            worst <= TOL,
            format!("max |I|, |HL|, |upper| = {worst:.3e}"),
        ));
    }
    Ok(report)
}

/// Exhaustive matchings: `X_g` is unbiased for `⟨H_L⟩` and its variance
/// respects the closed-form bound.
pub fn estimator_check(ns: &[usize], instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for &n in ns {
        let partitions = enumerate_partitions(n)?;
        let mut rng = RngStream::new(seed, 0x6573_7469 ^ n as u64);
        let (mut bias, mut slack) = (0.0f64, f64::INFINITY);
        for _ in 0..instances {
            let psi = haar_random_state(n, &mut rng)?;
            let params = ProductParams::random(n, &mut rng);
            let table = PairInfidelities::exact(&psi, &params)?;
            let hl = expected_hl_exact(&psi, &params)?;
            let xs: Vec<f64> = partitions.iter().map(|g| table.partition_mean(g)).collect();
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - hl).powi(2)).sum::<f64>() / xs.len() as f64;
            bias = bias.max((mean - hl).abs());
            slack = slack.min(xg_mse_bound(n, hl)? - var);
        }
        report.checks.push(Check::new(
            format!("estimator unbiased n={n}"),
            bias < 1e-12,
            format!("{} matchings, {instances} instances, max |mean - HL| = {bias:.3e}", partitions.len()),
        ));
        report.checks.push(Check::new(
            format!("estimator variance bound n={n}"),
            slack >= 0.0,
            format!("min(bound - var) = {slack:.3e}"),
        ));
    }
    Ok(report)
}

/// Product oracle up to 10 qubits, symmetric oracle beyond.
pub fn exact_gme(family: StateFamily, n: usize, s: Option<f64>) -> Result<f64> {
    use gme_core::gme::{exact_gme_symmetric, make_named_state, ProductOracle, SymmetricFamily};
    if n <= 10 {
        let psi = make_named_state(family, n, s)?;
        return Ok(ProductOracle::default().run(&psi)?);
    }
    let weight = || s.ok_or_else(|| crate::error::LabError::spec("superposition families need --s"));
    let value = match family {
        StateFamily::GhzW => exact_gme_symmetric(SymmetricFamily::GhzW, n, weight()?, 8)?,
        StateFamily::WWTilde => exact_gme_symmetric(SymmetricFamily::WWTilde, n, weight()?, 8)?,
        StateFamily::Ghz => exact_gme_symmetric(SymmetricFamily::GhzW, n, 1.0, 8)?,
        StateFamily::W => exact_gme_symmetric(SymmetricFamily::GhzW, n, 0.0, 8)?,
        StateFamily::WTilde => exact_gme_symmetric(SymmetricFamily::WWTilde, n, 0.0, 8)?,
    };
    Ok(value)
}
