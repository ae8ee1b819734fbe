//! Conway-Gurvich-Ho class checks over a bounded universe.
//!
//! Pairs come from the [`GrundyOracle`], not from the remnant formula.
//! Results cover only the partitions enumerated, so a PASS here is
//! evidence rather than proof.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::GrundyOracle;
use crate::outcome::ConwayPair;
use crate::partitions::{enumerate_partitions, Partition};
use crate::rules::{apply_unchecked, legal_moves};

const ZERO_ONE: ConwayPair = ConwayPair::new(0, 1);
const ONE_ZERO: ConwayPair = ConwayPair::new(1, 0);

fn is_unit(pair: ConwayPair) -> bool {
    pair == ZERO_ONE || pair == ONE_ZERO
}

fn is_pet_pair(pair: ConwayPair) -> bool {
    is_unit(pair) || (pair.normal == pair.misere && pair.normal >= 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub position: Partition,
    pub pair: ConwayPair,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCheck {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl ClassCheck {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self { holds: violations.is_empty(), violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub position: Partition,
    pub pair: ConwayPair,
}

/// Pet holds iff no witness (a pair outside {(0,1), (1,0), (k,k) k≥2}) exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetCheck {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CghRow {
    pub n: u32,
    pub positions: usize,
    pub forced_violations: usize,
    pub miserable_violations: usize,
    pub pet_witnesses: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CghReport {
    pub max_n: u32,
    pub max_rows: Option<usize>,
    pub scope: String,
    pub positions: usize,
    pub rows: Vec<CghRow>,
    pub forced: ClassCheck,
    pub miserable: ClassCheck,
    pub pet: PetCheck,
}

/// What the classification should look like on a given universe.
/// `pet` is `None` when the universe is too small to tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub forced: bool,
    pub miserable: bool,
    pub pet: Option<bool>,
}

/// The classification claimed for RIT: forced and miserable always; pet
/// only with at most two rows. With three
/// or more rows the lightest non-pet position is [4,2,2] (pair (0,0)), so
/// pet failure is only expected once `max_n >= 8`.
pub fn expected_classification(max_n: u32, max_rows: Option<usize>) -> Expected {
    let pet = match max_rows {
        Some(k) if k <= 2 => Some(true),
        _ if max_n >= 8 => Some(false),
        _ => None,
    };
    Expected { forced: true, miserable: true, pet }
}

impl CghReport {
    pub fn expected(&self) -> Expected {
        expected_classification(self.max_n, self.max_rows)
    }

    pub fn confirms_expected(&self) -> bool {
        let expected = self.expected();
        self.forced.holds == expected.forced
            && self.miserable.holds == expected.miserable
            && expected.pet.is_none_or(|pet| pet == self.pet.holds)
    }

    /// `forced: PASS, miserable: PASS, pet: FAIL (witness [4,2,2] ...)`.
    pub fn summary(&self) -> String {
        let verdict = |holds: bool| if holds { "PASS" } else { "FAIL" };
        let pet = match self.pet.witnesses.first() {
            Some(w) => {
                format!("FAIL (witness {} with pair {}, {} witnesses)", w.position, w.pair, self.pet.witnesses.len())
            }
            None => "PASS".to_string(),
        };
        format!("forced: {}, miserable: {}, pet: {pet}", verdict(self.forced.holds), verdict(self.miserable.holds))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per weight.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["n", "positions", "forced_violations", "miserable_violations", "pet_witnesses"])
            .expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record([
                    row.n.to_string(),
                    row.positions.to_string(),
                    row.forced_violations.to_string(),
                    row.miserable_violations.to_string(),
                    row.pet_witnesses.to_string(),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

fn forced_violation(pair: ConwayPair, children: &[ConwayPair]) -> Option<String> {
    let required = match pair {
        p if p == ZERO_ONE => ONE_ZERO,
        p if p == ONE_ZERO => ZERO_ONE,
        _ => return None,
    };
    children
        .iter()
        .find(|&&c| c != required)
        .map(|c| format!("a {pair} position moves to {c}, expected every move to reach {required}"))
}

fn miserable_violation(pair: ConwayPair, children: &[ConwayPair]) -> Option<String> {
    if is_unit(pair) {
        return None;
    }
    let to_zero_one = children.contains(&ZERO_ONE);
    let to_one_zero = children.contains(&ONE_ZERO);
    if !to_zero_one && !to_one_zero {
        return None;
    }
    if to_zero_one && to_one_zero {
        return None;
    }
    let reached = if to_zero_one { ZERO_ONE } else { ONE_ZERO };
    Some(format!("a {pair} position reaches {reached} but not its counterpart"))
}

/// Checks forced, miserable and pet over every partition of weight at most
/// `max_n` (at most `max_rows` rows when given).
pub fn cgh_check(max_n: u32, max_rows: Option<usize>) -> CghReport {
    let mut oracle = GrundyOracle::new(max_n);
    let mut pairs: HashMap<Partition, ConwayPair> = HashMap::new();
    let mut pair_of = |p: &Partition, pairs: &mut HashMap<Partition, ConwayPair>| -> ConwayPair {
        *pairs.entry(p.clone()).or_insert_with(|| oracle.pair(p).expect("weights stay within max_n"))
    };

    let mut rows = Vec::new();
    let mut forced = Vec::new();
    let mut miserable = Vec::new();
    let mut witnesses = Vec::new();
    for n in 0..=max_n {
        let mut row = CghRow { n, positions: 0, forced_violations: 0, miserable_violations: 0, pet_witnesses: 0 };
        for p in enumerate_partitions(n, max_rows) {
            row.positions += 1;
            let pair = pair_of(&p, &mut pairs);
            let children: Vec<ConwayPair> =
                legal_moves(&p).iter().map(|m| pair_of(&apply_unchecked(&p, m), &mut pairs)).collect();
            if let Some(detail) = forced_violation(pair, &children) {
                row.forced_violations += 1;
                forced.push(Violation { position: p.clone(), pair, detail });
            }
            if let Some(detail) = miserable_violation(pair, &children) {
                row.miserable_violations += 1;
                miserable.push(Violation { position: p.clone(), pair, detail });
            }
            if !is_pet_pair(pair) {
                row.pet_witnesses += 1;
                witnesses.push(Witness { position: p, pair });
            }
        }
        rows.push(row);
    }

    CghReport {
        max_n,
        max_rows,
        scope: format!(
            "empirical: all partitions of n <= {max_n}{}",
            max_rows.map(|k| format!(" with at most {k} rows")).unwrap_or_default()
        ),
        positions: rows.iter().map(|r| r.positions).sum(),
        rows,
        forced: ClassCheck::from_violations(forced),
        miserable: ClassCheck::from_violations(miserable),
        pet: PetCheck { holds: witnesses.is_empty(), witnesses },
    }
}
