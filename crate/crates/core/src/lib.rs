//! Engine for Row Impartial Terminus (RIT), an impartial game played on
//! Young diagrams.
//!
//! A move shortens one row so the result is still a Young diagram; the
//! empty diagram is terminal. Every position splits into a *core* and a
//! *remnant*, and the remnant read as a Nim position carries the full
//! Conway pair (normal and misère Grundy values) of the RIT position.
//!
//! Module map:
//! - [`partitions`]: the position type, text format, enumeration.
//! - [`rules`]: move generation and application.
//! - [`decomposition`]: core/remnant and the odd-row ↔ Nim-move lift.
//! - [`nim`]: mex, nim-sum, normal and misère Grundy values for Nim.
//! - [`solver`]: Conway pairs, the brute-force oracle, the engine,
//!   verification harnesses and CGH classification checks.

pub mod decomposition;
pub mod nim;
pub mod outcome;
pub mod partitions;
pub mod rules;
pub mod solver;

pub use decomposition::{core_of, lift_nim_move, rem_of, CorePartition, Decomposition, Remnant};
pub use nim::{NimMove, NimPosition};
pub use outcome::{Convention, ConventionSelection, ConwayPair, Outcome, Winner};
pub use partitions::{enumerate_partitions, parse_partition, partitions_up_to, Partition, PartitionError};
pub use rules::{apply_move, is_terminal, legal_moves, mirror_response, MoveError, MoveRecord, RitMove, RowParity};
pub use solver::{
    analyze, best_move, cgh_check, conway_pair, grundy_oracle, respond, verify_theorems, winning_moves, AnalysisReport,
    CghReport, GrundyOracle, OracleError, VerificationReport, VerifyOptions,
};
