//! Exhaustive check of the remnant formula against the oracle.
//!
//! Partitions of each weight are cut into one contiguous chunk per worker.
//! Worker `i` always uses oracle `i`, so memo tables persist across weights
//! without being shared. Values do not depend on which memo computed them,
//! so the report is identical for any worker count.

use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{conway_pair, GrundyOracle};
use crate::outcome::{Convention, ConventionSelection};
use crate::partitions::{enumerate_partitions, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub max_n: u32,
    pub conventions: ConventionSelection,
    pub max_rows: Option<usize>,
    pub jobs: usize,
}

impl VerifyOptions {
    pub fn new(max_n: u32, conventions: ConventionSelection) -> Self {
        Self { max_n, conventions, max_rows: None, jobs: 1 }
    }

    pub fn max_rows(mut self, max_rows: Option<usize>) -> Self {
        self.max_rows = max_rows;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u32,
    pub positions: usize,
    pub mismatches: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub position: Partition,
    pub convention: Convention,
    pub oracle: u32,
    pub formula: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub options: VerifyOptions,
    pub rows: Vec<VerifyRow>,
    pub total_positions: usize,
    pub total_mismatches: usize,
    pub elapsed_ms: f64,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.total_mismatches == 0
    }

    /// Copy with wall times and worker count zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut copy = self.clone();
        copy.options.jobs = 0;
        copy.elapsed_ms = 0.0;
        for row in &mut copy.rows {
            row.elapsed_ms = 0.0;
        }
        copy
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per weight: `n,positions,mismatches,elapsed_ms`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(["n", "positions", "mismatches", "elapsed_ms"]).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record([
                    row.n.to_string(),
                    row.positions.to_string(),
                    row.mismatches.to_string(),
                    format!("{:.3}", row.elapsed_ms),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn summary(&self) -> String {
        let conventions: Vec<&str> = self.options.conventions.conventions().iter().map(|c| c.as_str()).collect();
        format!(
            "checked {} positions (n <= {}{}, {}) in {:.1} ms: {} mismatches",
            self.total_positions,
            self.options.max_n,
            self.options.max_rows.map(|k| format!(", at most {k} rows")).unwrap_or_default(),
            conventions.join("+"),
            self.elapsed_ms,
            self.total_mismatches
        )
    }
}

fn check(oracle: &mut GrundyOracle, p: &Partition, conventions: &[Convention]) -> Vec<Counterexample> {
    let pair = conway_pair(p);
    conventions
        .iter()
        .filter_map(|&convention| {
            let oracle_value = oracle.value(p, convention).expect("oracle bound covers max_n");
            let formula = pair.value(convention);
            (oracle_value != formula).then(|| Counterexample {
                position: p.clone(),
                convention,
                oracle: oracle_value,
                formula,
            })
        })
        .collect()
}

/// Compares the oracle against the remnant formula on every partition of
/// every weight up to `options.max_n`.
pub fn verify_theorems(options: VerifyOptions) -> VerificationReport {
    let conventions = options.conventions.conventions();
    let jobs = options.jobs.max(1);
    let oracles: Vec<Mutex<GrundyOracle>> = (0..jobs).map(|_| Mutex::new(GrundyOracle::new(options.max_n))).collect();
    let run = || {
        let started = Instant::now();
        let mut rows = Vec::new();
        let mut counterexamples = Vec::new();
        for n in 0..=options.max_n {
            let row_started = Instant::now();
            let positions: Vec<Partition> = enumerate_partitions(n, options.max_rows).collect();
            let chunk = positions.len().div_ceil(jobs).max(1);
            let found: Vec<Counterexample> = positions
                .par_chunks(chunk)
                .enumerate()
                .flat_map_iter(|(worker, chunk)| {
                    let mut oracle = oracles[worker].lock().expect("oracle lock poisoned");
                    chunk.iter().flat_map(|p| check(&mut oracle, p, conventions)).collect::<Vec<_>>()
                })
                .collect();
            rows.push(VerifyRow {
                n,
                positions: positions.len(),
                mismatches: found.len(),
                elapsed_ms: row_started.elapsed().as_secs_f64() * 1e3,
            });
            counterexamples.extend(found);
        }
        VerificationReport {
            options,
            total_positions: rows.iter().map(|r| r.positions).sum(),
            total_mismatches: counterexamples.len(),
            rows,
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
            counterexamples,
        }
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}
