use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::record::{Alg, BenchRecord};
use crate::{BenchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// Unit-width bins over the iteration count.
    Linear,
    /// Bins over `floor(log2(iterations))`; edges are exponents.
    Log2,
}

/// Iteration-count histogram over converged runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HistogramData {
    /// `counts.len() + 1` edges; bin `i` is `[bin_edges[i], bin_edges[i + 1])`.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub scale: Scale,
}

impl HistogramData {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["lower", "upper", "count"])?;
        for (i, c) in self.counts.iter().enumerate() {
            w.serialize((self.bin_edges[i], self.bin_edges[i + 1], c))?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn histogram(records: &[BenchRecord], algorithm: Alg, scale: Scale) -> Result<HistogramData> {
    let keys: Vec<u64> = records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.converged && r.iterations > 0)
        .map(|r| match scale {
            Scale::Linear => r.iterations as u64,
            Scale::Log2 => u64::from(r.iterations.ilog2()),
        })
        .collect();
    if keys.is_empty() {
        return Err(BenchError::EmptyData(
            format!("{algorithm:?}").to_lowercase(),
        ));
    }

    let mut tally: BTreeMap<u64, u64> = BTreeMap::new();
    for k in &keys {
        *tally.entry(*k).or_default() += 1;
    }
    let lo = *tally.keys().next().unwrap();
    let hi = *tally.keys().next_back().unwrap();
    let counts = (lo..=hi)
        .map(|k| tally.get(&k).copied().unwrap_or(0))
        .collect();
    let bin_edges = (lo..=hi + 1).map(|k| k as f64).collect();
    Ok(HistogramData {
        bin_edges,
        counts,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Mode;

    fn rec(alg: Alg, iterations: usize, converged: bool) -> BenchRecord {
        BenchRecord {
            n: 10,
            mode: Mode::Real,
            algorithm: alg,
            matrix_index: 0,
            seed: 0,
            wall_time: 0.0,
            iterations,
            converged,
            eigenvalue: 0.0,
            residual: 0.0,
            oracle_error: None,
        }
    }

    #[test]
    fn log2_binning() {
        let rs: Vec<_> = [4, 5, 7, 8]
            .iter()
            .map(|&i| rec(Alg::Power, i, true))
            .collect();
        let h = histogram(&rs, Alg::Power, Scale::Log2).unwrap();
        assert_eq!(h.bin_edges, vec![2.0, 3.0, 4.0]);
        assert_eq!(h.counts, vec![3, 1]);
    }

    #[test]
    fn single_linear_bin() {
        let h = histogram(&[rec(Alg::Squared, 13, true)], Alg::Squared, Scale::Linear).unwrap();
        assert_eq!(h.bin_edges, vec![13.0, 14.0]);
        assert_eq!(h.counts, vec![1]);
    }

    #[test]
    fn linear_bins_fill_gaps() {
        let rs: Vec<_> = [3, 6, 6]
            .iter()
            .map(|&i| rec(Alg::Squared, i, true))
            .collect();
        let h = histogram(&rs, Alg::Squared, Scale::Linear).unwrap();
        assert_eq!(h.counts, vec![1, 0, 0, 2]);
        assert_eq!(h.bin_edges.len(), h.counts.len() + 1);
    }

    #[test]
    fn only_converged_runs_of_the_algorithm_count() {
        let rs = vec![
            rec(Alg::Power, 100, true),
            rec(Alg::Power, 1_000_000, false),
            rec(Alg::Squared, 9, true),
        ];
        let h = histogram(&rs, Alg::Power, Scale::Log2).unwrap();
        assert_eq!(h.total(), 1);
        assert!(matches!(
            histogram(&rs[1..2], Alg::Power, Scale::Linear),
            Err(BenchError::EmptyData(_))
        ));
    }

    #[test]
    fn csv_output() {
        let rs: Vec<_> = [4, 8].iter().map(|&i| rec(Alg::Power, i, true)).collect();
        let h = histogram(&rs, Alg::Power, Scale::Log2).unwrap();
        let mut buf = Vec::new();
        h.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lower,upper,count\n2.0,3.0,1\n3.0,4.0,1\n"
        );
    }
}
