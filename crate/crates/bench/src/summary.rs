use std::collections::BTreeMap;

use serde::Serialize;

use crate::record::{Alg, BenchRecord, Mode};

/// Aggregate of one `(n, mode, algorithm)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub mode: Mode,
    pub algorithm: Alg,
    pub matrices: usize,
    pub converged: usize,
    /// Seconds.
    pub total_time: f64,
    pub time_per_matrix: f64,
    pub mean_iterations: f64,
    pub median_iterations: f64,
}

/// Squared-versus-power comparison of one `(n, mode)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpeedupRow {
    pub n: usize,
    pub mode: Mode,
    /// Total power time over total squared time, two significant figures.
    pub speedup: f64,
    /// Speedup measured for this cell on a 12-core desktop with a BLAS
    /// backend, for manual comparison. Hardware-bound.
    pub published_speedup: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub workers: usize,
    pub rows: Vec<SummaryRow>,
    pub speedups: Vec<SpeedupRow>,
    /// Diagnostics about cells that could not be summarised.
    pub warnings: Vec<String>,
}

/// Rounds to `digits` significant figures.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - magnitude);
    (x * factor).round() / factor
}

/// Reference speedups of squared over power iteration.
pub fn published_speedup(n: usize, mode: Mode) -> Option<f64> {
    match (mode, n) {
        (Mode::Real, 100) => Some(65.0),
        (Mode::Real, 1000) => Some(36.0),
        (Mode::Real, 3000) => Some(21.0),
        (Mode::Real, 5000) => Some(11.0),
        (Mode::Complex, 100) => Some(49.0),
        (Mode::Complex, 1000) => Some(9.5),
        (Mode::Complex, 3000) => Some(7.0),
        (Mode::Complex, 5000) => Some(3.8),
        _ => None,
    }
}

fn median(sorted: &[usize]) -> f64 {
    let m = sorted.len();
    if !m.is_multiple_of(2) {
        sorted[m / 2] as f64
    } else {
        0.5 * (sorted[m / 2 - 1] + sorted[m / 2]) as f64
    }
}

pub fn summarize(records: &[BenchRecord], workers: usize) -> Summary {
    let mut summary = Summary {
        workers,
        ..Summary::default()
    };
    if records.is_empty() {
        summary.warnings.push("no records to summarize".to_string());
        return summary;
    }

    let mut cells: BTreeMap<(usize, Mode, Alg), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.n, r.mode, r.algorithm)).or_default().push(r);
    }

    for (&(n, mode, algorithm), rs) in &cells {
        let total_time: f64 = rs.iter().map(|r| r.wall_time).sum();
        let mut iters: Vec<usize> = rs.iter().map(|r| r.iterations).collect();
        iters.sort_unstable();
        summary.rows.push(SummaryRow {
            n,
            mode,
            algorithm,
            matrices: rs.len(),
            converged: rs.iter().filter(|r| r.converged).count(),
            total_time,
            time_per_matrix: total_time / rs.len() as f64,
            mean_iterations: iters.iter().sum::<usize>() as f64 / iters.len() as f64,
            median_iterations: median(&iters),
        });
    }

    let mut pairs: BTreeMap<(usize, Mode), (Option<f64>, Option<f64>)> = BTreeMap::new();
    for row in &summary.rows {
        let slot = pairs.entry((row.n, row.mode)).or_default();
        match row.algorithm {
            Alg::Power => slot.0 = Some(row.total_time),
            Alg::Squared => slot.1 = Some(row.total_time),
        }
    }
    for ((n, mode), times) in pairs {
        match times {
            (Some(power), Some(squared)) if squared > 0.0 => summary.speedups.push(SpeedupRow {
                n,
                mode,
                speedup: round_sig(power / squared, 2),
                published_speedup: published_speedup(n, mode),
            }),
            _ => summary.warnings.push(format!(
                "n={n} {mode:?}: speedup needs timed runs of both algorithms"
            )),
        }
    }
    summary
}

impl Summary {
    /// Plain-text table.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:>6} {:>8} {:>8} {:>5} {:>5} {:>12} {:>14} {:>10} {:>10}\n",
            "n", "mode", "alg", "runs", "conv", "total [s]", "per matrix", "mean it", "median it"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:>6} {:>8} {:>8} {:>5} {:>5} {:>12.4} {:>14} {:>10.1} {:>10.1}\n",
                r.n,
                format!("{:?}", r.mode).to_lowercase(),
                format!("{:?}", r.algorithm).to_lowercase(),
                r.matrices,
                r.converged,
                r.total_time,
                format_duration(r.time_per_matrix),
                r.mean_iterations,
                r.median_iterations
            ));
        }
        for s in &self.speedups {
            let published = s
                .published_speedup
                .map(|p| format!("{p}x"))
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "speedup n={} {}: {}x (published {published})\n",
                s.n,
                format!("{:?}", s.mode).to_lowercase(),
                s.speedup
            ));
        }
        out.push_str(&format!("workers: {}\n", self.workers));
        out
    }
}

fn format_duration(secs: f64) -> String {
    if secs >= 1.0 {
        format!("{secs:.2} s")
    } else if secs >= 1e-3 {
        format!("{:.2} ms", secs * 1e3)
    } else {
        format!("{:.1} us", secs * 1e6)
    }
}
