//! CSV, JSON and plain-text renderings of reports.
//!
//! CSV floats use 17 significant digits, enough to round-trip any `f64`.
//! JSON floats use `serde_json`'s shortest round-trip form. Tables use 6
//! significant digits and are meant for people.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::asymptotics::{SequenceCheck, SweepRow};
use crate::error::Result;
use crate::spectrum::SpectrumReport;

/// `v` in scientific notation with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, v)
    } else {
        format!("{v:.5e}")
    }
}

/// One row per catalog case, in catalog order.
pub fn spectrum_csv<W: Write>(report: &SpectrumReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "k",
        "case_id",
        "interval_lo",
        "interval_hi",
        "lambda",
        "residual",
        "cluster_id",
    ])?;
    for r in &report.case_results {
        w.write_record([
            report.k.to_string(),
            r.case_id.to_string(),
            sig17(r.interval_lo),
            sig17(r.interval_hi),
            sig17(r.lambda),
            sig17(r.residual),
            r.cluster_id.map(|c| c.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty-printed JSON followed by a newline.
pub fn json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn spectrum_table(report: &SpectrumReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "k = {} ({}), {} distinct eigenvalues, {} claimed, max = {}",
        report.k,
        report.parity,
        report.distinct_count,
        report.claimed_count,
        sig6(report.max_lambda)
    );
    let _ = writeln!(s, "{:>4}  {:>12}  {:>11}  cases", "#", "lambda", "residual");
    for (i, e) in report.entries.iter().enumerate() {
        let tags: Vec<_> = e.case_ids.iter().map(|c| c.tag()).collect();
        let _ = writeln!(
            s,
            "{i:>4}  {:>12}  {:>11.3e}  {}",
            sig6(e.lambda),
            e.residual,
            tags.join(", ")
        );
    }
    let unverified: Vec<_> = report.unverified().collect();
    if !unverified.is_empty() {
        let _ = writeln!(s, "unverified roots:");
        for r in unverified {
            let _ = writeln!(
                s,
                "      {:>12}  {:>11.3e}  {}",
                sig6(r.lambda),
                r.residual,
                r.case_id
            );
        }
    }
    s
}

/// One row per (k, eigenvalue).
pub fn sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "lambda", "case_ids", "nearest_limit", "distance"])?;
    for row in rows {
        for i in 0..row.lambdas.len() {
            let tags: Vec<_> = row.case_ids[i].iter().map(|c| c.tag()).collect();
            w.write_record([
                row.k.to_string(),
                sig17(row.lambdas[i]),
                tags.join(";"),
                sig17(row.nearest_limit[i]),
                sig17(row.distances[i]),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>4}  {:>5}  {:>10}  eigenvalues",
        "k", "count", "max dist"
    );
    for row in rows {
        let vals: Vec<_> = row.lambdas.iter().map(|&l| sig6(l)).collect();
        let _ = writeln!(
            s,
            "{:>4}  {:>5}  {:>10}  {}",
            row.k,
            row.lambdas.len(),
            sig6(row.max_cluster_distance),
            vals.join(" ")
        );
    }
    s
}

/// One row per k in the sequence.
pub fn sequence_csv<W: Write>(check: &SequenceCheck, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["case_id", "k", "lambda", "gap_to_limit"])?;
    for i in 0..check.k_values.len() {
        w.write_record([
            check.case_id.to_string(),
            check.k_values[i].to_string(),
            sig17(check.lambdas[i]),
            sig17(check.offsets[i].abs()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn sequence_table(check: &SequenceCheck) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} -> {} ({}): monotone {}, in bracket {}, converging {}",
        check.case_id,
        check.claimed_limit,
        check.direction,
        check.monotone,
        check.within_bracket,
        check.converging
    );
    let _ = writeln!(s, "{:>4}  {:>12}  {:>12}", "k", "lambda", "gap");
    for i in 0..check.k_values.len() {
        let _ = writeln!(
            s,
            "{:>4}  {:>12}  {:>12}",
            check.k_values[i],
            sig6(check.lambdas[i]),
            sig6(check.offsets[i].abs())
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::compute_spectrum;

    #[test]
    fn sig17_round_trips() {
        for v in [0.1, 1.0 / 3.0, 2.380_277_569_097_614_3, 1e-300, -7.25] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(sig17(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn sig6_examples() {
        assert_eq!(sig6(0.245_122_333_753_307_2), "0.245122");
        assert_eq!(sig6(2.380_277_569), "2.38028");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(1.5e-7), "1.50000e-7");
    }

    #[test]
    fn spectrum_csv_shape() {
        let r = compute_spectrum(4, 1e-12).unwrap();
        let mut buf = Vec::new();
        spectrum_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(
            lines[0],
            "k,case_id,interval_lo,interval_hi,lambda,residual,cluster_id"
        );
        assert_eq!(lines.len(), 15);
        let e_v = lines.iter().find(|l| l.contains(",E-v,")).unwrap();
        assert!(e_v.ends_with(','));
    }

    #[test]
    fn json_parses_back() {
        let r = compute_spectrum(3, 1e-12).unwrap();
        let mut buf = Vec::new();
        json(&r, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["distinct_count"], 8);
        assert_eq!(v["entries"][0]["lambda"], 0.0);
        assert_eq!(v["case_results"][3]["case_id"], "O-ii");
    }
}
