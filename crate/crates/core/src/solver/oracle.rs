use std::collections::HashMap;

use thiserror::Error;

use crate::nim::mex;
use crate::outcome::{Convention, ConwayPair};
use crate::partitions::Partition;
use crate::rules::{apply_unchecked, legal_moves};

pub const DEFAULT_ORACLE_MAX_WEIGHT: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("position {position} has weight {weight}, above the oracle bound of {max_weight}")]
    BoundExceeded { position: Partition, weight: u32, max_weight: u32 },
}

/// Brute-force Grundy values by mex recursion over [`legal_moves`].
///
/// Uses nothing but the move rule. Memo tables are per instance and per
/// convention; give each worker its own oracle.
#[derive(Debug)]
pub struct GrundyOracle {
    max_weight: u32,
    normal: HashMap<Partition, u32>,
    misere: HashMap<Partition, u32>,
}

impl Default for GrundyOracle {
    fn default() -> Self {
        Self::new(DEFAULT_ORACLE_MAX_WEIGHT)
    }
}

impl GrundyOracle {
    pub fn new(max_weight: u32) -> Self {
        Self { max_weight, normal: HashMap::new(), misere: HashMap::new() }
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn value(&mut self, p: &Partition, convention: Convention) -> Result<u32, OracleError> {
        let weight = p.weight();
        if weight > self.max_weight {
            return Err(OracleError::BoundExceeded { position: p.clone(), weight, max_weight: self.max_weight });
        }
        Ok(self.eval(p, convention))
    }

    pub fn pair(&mut self, p: &Partition) -> Result<ConwayPair, OracleError> {
        Ok(ConwayPair::new(self.value(p, Convention::Normal)?, self.value(p, Convention::Misere)?))
    }

    /// Number of memoized positions, both conventions.
    pub fn memo_len(&self) -> usize {
        self.normal.len() + self.misere.len()
    }

    fn memo(&mut self, convention: Convention) -> &mut HashMap<Partition, u32> {
        match convention {
            Convention::Normal => &mut self.normal,
            Convention::Misere => &mut self.misere,
        }
    }

    fn eval(&mut self, p: &Partition, convention: Convention) -> u32 {
        if let Some(&v) = self.memo(convention).get(p) {
            return v;
        }
        let moves = legal_moves(p);
        let v = if moves.is_empty() {
            match convention {
                Convention::Normal => 0,
                Convention::Misere => 1,
            }
        } else {
            let children: Vec<u32> = moves.iter().map(|m| self.eval(&apply_unchecked(p, m), convention)).collect();
            mex(children)
        };
        self.memo(convention).insert(p.clone(), v);
        v
    }
}

/// One-off oracle evaluation with the default weight bound.
pub fn grundy_oracle(p: &Partition, convention: Convention) -> Result<u32, OracleError> {
    GrundyOracle::default().value(p, convention)
}
