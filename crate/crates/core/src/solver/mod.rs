//! Solving RIT positions.
//!
//! [`conway_pair`] reads both Grundy values off the remnant. The
//! [`GrundyOracle`] computes them the slow way, straight from the move
//! rule, and never looks at the decomposition; the verification
//! harnesses compare the two.

mod cgh;
mod oracle;
mod report;
mod verify;

pub use cgh::{
    cgh_check, expected_classification, CghReport, CghRow, ClassCheck, Expected, PetCheck, Violation, Witness,
};
pub use oracle::{grundy_oracle, GrundyOracle, OracleError, DEFAULT_ORACLE_MAX_WEIGHT};
pub use report::{analyze, AnalysisReport};
pub use verify::{verify_theorems, Counterexample, VerificationReport, VerifyOptions, VerifyRow};

use crate::decomposition::{lift_nim_move, rem_of};
use crate::nim::{self, nim_winning_moves};
use crate::outcome::{Convention, ConwayPair};
use crate::partitions::Partition;
use crate::rules::{self, apply_move, mirror_response, MoveError, RitMove};

/// `(G, G⁻)` of `p`, taken from the Nim values of its remnant.
pub fn conway_pair(p: &Partition) -> ConwayPair {
    let rem = rem_of(p).as_nim();
    ConwayPair::new(nim::grundy(&rem), nim::misere_grundy(&rem))
}

/// Every legal move after which the opponent faces a zero value under
/// `convention`, in column order.
pub fn winning_moves(p: &Partition, convention: Convention) -> Vec<RitMove> {
    rules::legal_moves(p)
        .into_iter()
        .filter(|m| conway_pair(&rules::apply_unchecked(p, m)).value(convention) == 0)
        .collect()
}

/// The engine's move from `p`, or `None` at the terminal position.
///
/// A winning position is answered by lifting the first winning Nim move on
/// the remnant (lowest heap, then largest removal) onto its odd row. A
/// losing position, or a misère position whose remnant is all zeros, gets
/// the fallback: one box off the last row.
pub fn best_move(p: &Partition, convention: Convention) -> Option<RitMove> {
    let last = *p.parts().last()?;
    let rem = rem_of(p).as_nim();
    if let Some(first) = nim_winning_moves(&rem, convention).first() {
        let lifted =
            lift_nim_move(p, first.heap, first.new_size).expect("winning Nim moves are reductions of existing heaps");
        return Some(lifted);
    }
    // With an all-zero remnant the row count is even, so this shortens an
    // even row and leaves remnant (0, …, 0, 1): misère value 0.
    Some(RitMove::at_column(p, last).expect("last row length is a legal column"))
}

/// The engine's reply after the opponent plays `opponent_move` from `p`.
///
/// Even-row moves out of a zero-value position are mirrored on the row
/// above, which restores the remnant. Anything else is answered with
/// [`best_move`] on the new position.
pub fn respond(p: &Partition, opponent_move: &RitMove, convention: Convention) -> Result<Option<RitMove>, MoveError> {
    let after = apply_move(p, opponent_move)?;
    if !opponent_move.is_odd_row() && conway_pair(p).value(convention) == 0 {
        return mirror_response(p, opponent_move).map(Some);
    }
    Ok(best_move(&after, convention))
}
