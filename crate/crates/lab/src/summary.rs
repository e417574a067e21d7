//! Medians, quartiles and barren-plateau percentages over ensembles.

use gme_core::gme::classify_bp;

/// Linear-interpolation quantile (Hyndman–Fan type 7) of sorted data.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub x: f64,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub bp_pct: Option<f64>,
}

impl SummaryRow {
    /// Summarizes `values` at abscissa `x`. With a threshold, also reports the
    /// percentage of values classified as trapped.
    pub fn from_values(x: f64, values: &[f64], bp_threshold: Option<f64>) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let bp_pct = bp_threshold.map(|t| {
            100.0 * values.iter().filter(|&&v| classify_bp(v, t)).count() as f64 / values.len() as f64
        });
        Self {
            x,
            median: quantile_sorted(&sorted, 0.5),
            q1: quantile_sorted(&sorted, 0.25),
            q3: quantile_sorted(&sorted, 0.75),
            bp_pct,
        }
    }
}

/// One summarized series: a row per grid point or per iteration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnsembleSummary {
    pub rows: Vec<SummaryRow>,
}

impl EnsembleSummary {
    pub fn has_bp(&self) -> bool {
        self.rows.iter().any(|r| r.bp_pct.is_some())
    }

    pub fn last(&self) -> Option<&SummaryRow> {
        self.rows.last()
    }

    /// Pointwise summary of equally long curves, one per ensemble member.
    pub fn from_curves(xs: &[f64], curves: &[Vec<f64>]) -> Self {
        let rows = xs
            .iter()
            .enumerate()
            .map(|(t, &x)| {
                let column: Vec<f64> = curves.iter().map(|c| c[t]).collect();
                SummaryRow::from_values(x, &column, None)
            })
            .collect();
        Self { rows }
    }
}
