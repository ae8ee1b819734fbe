//! The RIT move rule.
//!
//! For a partition λ and a column `k` in `1..=λ1`, let `i` be the largest
//! row with `λ_i ≥ k`; the move sets row `i` to `k - 1`. Every column gives
//! exactly one move, so a nonempty position has exactly `λ1` moves. Moves
//! are keyed by `k` and always listed in ascending `k`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("column {k} is out of range for {position}; legal columns are {}", legal_range(*largest))]
    ColumnOutOfRange { k: u32, position: Partition, largest: u32 },

    #[error("move {found:?} does not match the move at column {} of {position} ({expected:?})", expected.k)]
    Inconsistent { position: Partition, found: RitMove, expected: RitMove },

    #[error("mirror response is only defined for even-row moves, got a move on row {row}")]
    OddRowMirror { row: usize },
}

fn legal_range(largest: u32) -> String {
    if largest == 0 {
        "none (terminal position)".to_string()
    } else {
        format!("1..{largest}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowParity {
    Odd,
    Even,
}

impl RowParity {
    pub fn of_row(row: usize) -> Self {
        if row % 2 == 1 {
            RowParity::Odd
        } else {
            RowParity::Even
        }
    }
}

/// A legal move, keyed by its column `k`. `row` (1-based), `removed` and
/// `parity` are derived from the position it was generated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RitMove {
    pub k: u32,
    pub row: usize,
    pub removed: u32,
    pub parity: RowParity,
}

impl RitMove {
    /// The move at column `k` of `p`.
    pub fn at_column(p: &Partition, k: u32) -> Result<Self, MoveError> {
        if k == 0 || k > p.largest_part() {
            return Err(MoveError::ColumnOutOfRange { k, position: p.clone(), largest: p.largest_part() });
        }
        Ok(Self::at_column_unchecked(p, k))
    }

    fn at_column_unchecked(p: &Partition, k: u32) -> Self {
        // parts are nonincreasing, so the last row reaching column k is the
        // count of rows reaching it
        let row = p.parts().partition_point(|&len| len >= k);
        let removed = p.parts()[row - 1] - (k - 1);
        Self { k, row, removed, parity: RowParity::of_row(row) }
    }

    pub fn is_odd_row(&self) -> bool {
        self.parity == RowParity::Odd
    }

    /// Length the moved row is left with.
    pub fn new_len(&self) -> u32 {
        self.k - 1
    }

    pub fn record(&self, p: &Partition) -> Result<MoveRecord, MoveError> {
        Ok(MoveRecord { k: self.k, row: self.row, removed: self.removed, result: apply_move(p, self)? })
    }
}

/// Wire form of a move: `{"k", "row", "removed", "result"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub k: u32,
    pub row: usize,
    pub removed: u32,
    pub result: Partition,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} (row {}, remove {}) -> {}", self.k, self.row, self.removed, self.result)
    }
}

/// One move per column `k` in `1..=λ1`, ascending.
pub fn legal_moves(p: &Partition) -> Vec<RitMove> {
    (1..=p.largest_part()).map(|k| RitMove::at_column_unchecked(p, k)).collect()
}

/// Legal moves of `p` together with their resulting positions.
pub fn legal_move_records(p: &Partition) -> Vec<MoveRecord> {
    legal_moves(p)
        .into_iter()
        .map(|m| MoveRecord { k: m.k, row: m.row, removed: m.removed, result: apply_unchecked(p, &m) })
        .collect()
}

/// Applies `m` to `p`, checking that `m` is exactly the move at column
/// `m.k` of `p`.
pub fn apply_move(p: &Partition, m: &RitMove) -> Result<Partition, MoveError> {
    let expected = RitMove::at_column(p, m.k)?;
    if expected != *m {
        return Err(MoveError::Inconsistent { position: p.clone(), found: *m, expected });
    }
    Ok(apply_unchecked(p, m))
}

pub(crate) fn apply_unchecked(p: &Partition, m: &RitMove) -> Partition {
    let mut parts = p.parts().to_vec();
    parts[m.row - 1] = m.k - 1;
    Partition::from_sorted_with_zeros(parts)
}

pub fn is_terminal(p: &Partition) -> bool {
    p.is_empty()
}

/// Answer to an even-row move: take the same number of boxes from the row
/// directly above, in the position after the move. The answer restores
/// the remnant of `p`.
pub fn mirror_response(p: &Partition, m: &RitMove) -> Result<RitMove, MoveError> {
    let after = apply_move(p, m)?;
    if m.is_odd_row() {
        return Err(MoveError::OddRowMirror { row: m.row });
    }
    let above = m.row - 1;
    // row `above` keeps length λ_{j-1} - removed >= λ_j - removed, which is
    // what row j now holds, so column new_len + 1 lands on row `above`
    let k = after.row_len(above) - m.removed + 1;
    let response = RitMove::at_column(&after, k)?;
    debug_assert_eq!((response.row, response.removed), (above, m.removed));
    Ok(response)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::parse_partition;

    fn p(s: &str) -> Partition {
        parse_partition(s).unwrap()
    }

    fn results(q: &Partition) -> Vec<(u32, Partition)> {
        legal_moves(q).iter().map(|m| (m.k, apply_move(q, m).unwrap())).collect()
    }

    #[test]
    fn moves_of_5421() {
        let q = p("[5,4,2,1]");
        assert_eq!(
            results(&q),
            vec![(1, p("[5,4,2]")), (2, p("[5,4,1,1]")), (3, p("[5,2,2,1]")), (4, p("[5,3,2,1]")), (5, p("[4,4,2,1]")),]
        );
        let rows: Vec<usize> = legal_moves(&q).iter().map(|m| m.row).collect();
        assert_eq!(rows, vec![4, 3, 2, 2, 1]);
    }

    #[test]
    fn two_two() {
        assert_eq!(results(&p("[2,2]")), vec![(1, p("[2]")), (2, p("[2,1]"))]);
    }

    #[test]
    fn terminal() {
        assert!(legal_moves(&Partition::empty()).is_empty());
        assert!(is_terminal(&Partition::empty()));
        assert!(!is_terminal(&p("[1]")));
        assert!(!is_terminal(&p("[5,4,2,1]")));
    }

    #[test]
    fn apply_examples() {
        let q = p("[5,4,2,1]");
        let m3 = RitMove::at_column(&q, 3).unwrap();
        assert_eq!(apply_move(&q, &m3).unwrap(), p("[5,2,2,1]"));
        let m1 = RitMove::at_column(&q, 1).unwrap();
        assert_eq!(apply_move(&q, &m1).unwrap(), p("[5,4,2]"));
        let one = p("[1]");
        assert_eq!(apply_move(&one, &RitMove::at_column(&one, 1).unwrap()).unwrap(), Partition::empty());
    }

    #[test]
    fn apply_rejects_illegal_moves() {
        let q = p("[5,4,2,1]");
        assert!(matches!(RitMove::at_column(&q, 6), Err(MoveError::ColumnOutOfRange { k: 6, .. })));
        assert!(matches!(RitMove::at_column(&q, 0), Err(MoveError::ColumnOutOfRange { .. })));
        let forged = RitMove { k: 3, row: 2, removed: 1, parity: RowParity::Even };
        assert!(matches!(apply_move(&q, &forged), Err(MoveError::Inconsistent { .. })));
        let from_other = RitMove::at_column(&p("[3]"), 1).unwrap();
        assert!(apply_move(&q, &from_other).is_err());
    }

    #[test]
    fn mirror_examples() {
        let q = p("[5,4,2,1]");
        let m = RitMove::at_column(&q, 4).unwrap();
        assert_eq!((m.row, m.removed), (2, 1));
        let after = apply_move(&q, &m).unwrap();
        let r = mirror_response(&q, &m).unwrap();
        assert_eq!((r.row, r.removed), (1, 1));
        assert_eq!(apply_move(&after, &r).unwrap(), p("[4,3,2,1]"));

        let q = p("[2,2]");
        let m = RitMove::at_column(&q, 1).unwrap();
        assert_eq!((m.row, m.removed), (2, 2));
        let r = mirror_response(&q, &m).unwrap();
        assert_eq!((r.row, r.removed), (1, 2));
        assert_eq!(apply_move(&p("[2]"), &r).unwrap(), Partition::empty());

        let q = p("[3,2]");
        let m = RitMove::at_column(&q, 2).unwrap();
        let r = mirror_response(&q, &m).unwrap();
        assert_eq!(apply_move(&p("[3,1]"), &r).unwrap(), p("[2,1]"));
    }

    #[test]
    fn mirror_rejects_odd_rows() {
        let q = p("[5,4,2,1]");
        let m = RitMove::at_column(&q, 5).unwrap();
        assert_eq!(mirror_response(&q, &m), Err(MoveError::OddRowMirror { row: 1 }));
    }

    #[test]
    fn column_error_reports_range() {
        let err = RitMove::at_column(&p("[5,4,2,1]"), 9).unwrap_err();
        assert!(err.to_string().contains("1..5"), "{err}");
    }
}
