use std::io::{Read, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::Result;

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Real symmetric matrices.
    Real,
    /// Complex Hermitian matrices.
    Complex,
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Alg {
    /// Matrix-vector power iteration.
    Power,
    /// Power iteration through repeated squaring.
    Squared,
}

impl From<Alg> for powersquare::Algorithm {
    fn from(a: Alg) -> Self {
        match a {
            Alg::Power => powersquare::Algorithm::Power,
            Alg::Squared => powersquare::Algorithm::Squared,
        }
    }
}

/// One timed solve. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub mode: Mode,
    pub algorithm: Alg,
    pub matrix_index: usize,
    /// Seed of the matrix; `solve --seed` with this value reproduces the run.
    pub seed: u64,
    /// Seconds spent inside the solver call.
    pub wall_time: f64,
    /// Zero only when the solver raised before iterating.
    pub iterations: usize,
    pub converged: bool,
    pub eigenvalue: f64,
    pub residual: f64,
    /// `|λ - λ_ref| / |λ_ref|` against the Jacobi reference.
    pub oracle_error: Option<f64>,
}

impl BenchRecord {
    pub fn sort_key(&self) -> (usize, Mode, Alg, usize) {
        (self.n, self.mode, self.algorithm, self.matrix_index)
    }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record([
            "n",
            "mode",
            "algorithm",
            "matrix_index",
            "seed",
            "wall_time",
            "iterations",
            "converged",
            "eigenvalue",
            "residual",
            "oracle_error",
        ])?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize().map(|r| r.map_err(Into::into)).collect()
}
