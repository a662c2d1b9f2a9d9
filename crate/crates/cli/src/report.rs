//! Text output for embed reports and metrics.

use std::fmt::Write as _;

use tstego_core::{EmbedReport, MetricsReport};

/// Four decimals, or `inf` for an unbounded PSNR.
pub fn fmt_metric(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_owned()
    } else {
        format!("{v:.4}")
    }
}

pub fn embed_report_lines(report: &EmbedReport, capacity_bits: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "bits_embedded={}", report.bits_embedded);
    let _ = writeln!(s, "pixels_whitened={}", report.pixels_whitened);
    let _ = writeln!(s, "pixels_adjusted={}", report.pixels_adjusted);
    let _ = writeln!(s, "capacity_used={}", fmt_metric(report.capacity_used));
    let _ = writeln!(s, "capacity_bits={capacity_bits}");
    let _ = writeln!(s, "baseline={}", report.baseline);
    s
}

pub const METRICS_HEADER: &str =
    "mse,rmse,psnr_db,ncc,hist_delta_r,hist_delta_g,hist_delta_b,c_max";

pub fn metrics_csv(m: &MetricsReport) -> String {
    format!(
        "{METRICS_HEADER}\n{},{},{},{},{},{},{},{}\n",
        fmt_metric(m.mse),
        fmt_metric(m.rmse),
        fmt_metric(m.psnr),
        fmt_metric(m.ncc),
        m.hist_delta_r,
        m.hist_delta_g,
        m.hist_delta_b,
        m.c_max
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_formatting() {
        assert_eq!(fmt_metric(f64::INFINITY), "inf");
        assert_eq!(fmt_metric(0.44871), "0.4487");
        assert_eq!(fmt_metric(1.0), "1.0000");
    }

    #[test]
    fn metrics_row() {
        let m = MetricsReport {
            mse: 0.0,
            rmse: 0.0,
            psnr: f64::INFINITY,
            ncc: 1.0,
            hist_delta_r: 0,
            hist_delta_g: 0,
            hist_delta_b: 4,
            c_max: 255,
        };
        assert_eq!(
            metrics_csv(&m),
            format!("{METRICS_HEADER}\n0.0000,0.0000,inf,1.0000,0,0,4,255\n")
        );
    }
}
