//! CSV output. Floats are written with 12 significant digits in the shortest
//! of fixed and exponent notation, like C's `%.12g`.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use gme_core::gme::RunTrace;

use crate::error::Result;
use crate::summary::EnsembleSummary;

pub const TRACE_HEADER: [&str; 5] = ["iteration", "stage", "cost_sampled", "infidelity_exact", "cum_shots"];

const SIGNIFICANT: i32 = 12;

pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT).contains(&exp) {
        let decimals = (SIGNIFICANT - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_trace<W: Write>(trace: &RunTrace, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for r in &trace.records {
        w.write_record([
            r.iteration.to_string(),
            r.stage.name().to_string(),
            format_float(r.cost_sampled),
            format_float(r.infidelity_exact),
            r.cumulative_shots.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `x,median,q1,q3`, plus `bp_pct` when the series carries it.
pub fn write_summary<W: Write>(summary: &EnsembleSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let with_bp = summary.has_bp();
    let mut header = vec!["x", "median", "q1", "q3"];
    if with_bp {
        header.push("bp_pct");
    }
    w.write_record(&header)?;
    for r in &summary.rows {
        let mut fields = vec![format_float(r.x), format_float(r.median), format_float(r.q1), format_float(r.q3)];
        if with_bp {
            fields.push(format_float(r.bp_pct.unwrap_or(0.0)));
        }
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace_file(trace: &RunTrace, path: &Path) -> Result<()> {
    write_trace(trace, File::create(path)?)
}

pub fn write_summary_file(summary: &EnsembleSummary, path: &Path) -> Result<()> {
    write_summary(summary, File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summary::SummaryRow;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.5), "0.5");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(8192.0), "8192");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_float(1e-7), "1e-07");
        assert_eq!(format_float(-1.234_567_890_123_4e15), "-1.23456789012e+15");
        assert_eq!(format_float(123_456.789), "123456.789");
        assert_eq!(format_float(0.000_123_4), "0.0001234");
    }

    #[test]
    fn empty_summary_is_header_only() {
        let mut buf = Vec::new();
        write_summary(&EnsembleSummary::default(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,median,q1,q3\n");
    }

    #[test]
    fn bp_column_only_when_present() {
        let summary = EnsembleSummary { rows: vec![SummaryRow::from_values(0.25, &[0.3, 0.95], Some(0.9))] };
        let mut buf = Vec::new();
        write_summary(&summary, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,median,q1,q3,bp_pct\n0.25,0.625,0.4625,0.7875,50\n");
    }
}
