//! Game sessions: a start position, a convention and the move history.
//!
//! The current position is always the start position with the history
//! replayed on top of it. The human moves only when it is their turn, and
//! the engine's reply is applied in the same mutation, so between requests
//! it is always the human's turn or the game is over.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rit_core::rules::{legal_move_records, MoveError, MoveRecord, RitMove};
use rit_core::solver::{best_move, conway_pair, respond};
use rit_core::{Convention, ConwayPair, Decomposition, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Human,
    Engine,
}

impl Mover {
    pub fn other(self) -> Self {
        match self {
            Mover::Human => Mover::Engine,
            Mover::Engine => Mover::Human,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Mover,
    #[serde(rename = "move")]
    pub record: MoveRecord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum Status {
    InProgress,
    Finished { winner: Mover },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("the game is already finished")]
    Finished,

    #[error("stale move sequence number {got}; the session is at {expected}")]
    StaleSequence { expected: usize, got: usize },

    #[error(transparent)]
    IllegalMove(#[from] MoveError),

    #[error("history entry {index} does not replay: {reason}")]
    Replay { index: usize, reason: String },
}

/// Stored state of one game. `position` is derived, but kept so reads
/// need no replay; [`GameSession::check_replay`] ties the two together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSession {
    pub id: String,
    pub start: Partition,
    pub convention: Convention,
    pub engine_first: bool,
    pub position: Partition,
    pub history: Vec<HistoryEntry>,
}

impl GameSession {
    /// New session; with `engine_first` the engine's opening is already
    /// applied.
    pub fn create(id: String, start: Partition, convention: Convention, engine_first: bool) -> Self {
        let mut session = Self { id, position: start.clone(), start, convention, engine_first, history: Vec::new() };
        if engine_first {
            if let Some(m) = best_move(&session.position, convention) {
                session.push(Mover::Engine, &m).expect("engine moves are legal");
            }
        }
        session
    }

    /// Number of moves played so far. A move submission must quote it.
    pub fn seq(&self) -> usize {
        self.history.len()
    }

    pub fn status(&self) -> Status {
        if !self.position.is_empty() {
            return Status::InProgress;
        }
        // with no moves played, the side that would have moved before the
        // first player counts as the last mover
        let last_mover = match self.history.last() {
            Some(entry) => entry.mover,
            None if self.engine_first => Mover::Human,
            None => Mover::Engine,
        };
        let winner = match self.convention {
            Convention::Normal => last_mover,
            Convention::Misere => last_mover.other(),
        };
        Status::Finished { winner }
    }

    /// Plays the human move at column `k`, then the engine's reply if the
    /// game is not over.
    pub fn submit(&mut self, k: u32, seq: usize) -> Result<(), SessionError> {
        if self.status() != Status::InProgress {
            return Err(SessionError::Finished);
        }
        if seq != self.seq() {
            return Err(SessionError::StaleSequence { expected: self.seq(), got: seq });
        }
        let before = self.position.clone();
        let human = RitMove::at_column(&before, k)?;
        let reply = respond(&before, &human, self.convention)?;
        self.push(Mover::Human, &human)?;
        if let Some(reply) = reply {
            self.push(Mover::Engine, &reply)?;
        }
        Ok(())
    }

    fn push(&mut self, mover: Mover, m: &RitMove) -> Result<(), MoveError> {
        let record = m.record(&self.position)?;
        self.position = record.result.clone();
        self.history.push(HistoryEntry { mover, record });
        Ok(())
    }

    /// Replays the history from `start` and checks that every recorded move
    /// is the legal move at its column and that play ends at `position`.
    pub fn check_replay(&self) -> Result<(), SessionError> {
        let mut position = self.start.clone();
        for (index, entry) in self.history.iter().enumerate() {
            let fail = |reason: String| SessionError::Replay { index, reason };
            let m = RitMove::at_column(&position, entry.record.k).map_err(|e| fail(e.to_string()))?;
            let expected = m.record(&position).map_err(|e| fail(e.to_string()))?;
            if expected != entry.record {
                return Err(fail(format!("recorded {:?}, legal move is {:?}", entry.record, expected)));
            }
            position = expected.result;
        }
        if position != self.position {
            return Err(SessionError::Replay {
                index: self.history.len(),
                reason: format!("history ends at {position}, session is at {}", self.position),
            });
        }
        Ok(())
    }

    pub fn view(&self) -> SessionView {
        let decomposition = Decomposition::of(&self.position);
        SessionView {
            id: self.id.clone(),
            start: self.start.clone(),
            position: self.position.clone(),
            convention: self.convention,
            engine_first: self.engine_first,
            seq: self.seq(),
            status: self.status(),
            history: self.history.clone(),
            legal_moves: legal_move_records(&self.position),
            display: Display {
                core: decomposition.core.as_partition().clone(),
                rem: decomposition.rem.heaps().to_vec(),
                rem_normalized: decomposition.rem_normalized.heaps().to_vec(),
                pair: conway_pair(&self.position),
            },
        }
    }
}

/// Decomposition and pair of the current position, for the board overlay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Display {
    pub core: Partition,
    pub rem: Vec<u32>,
    pub rem_normalized: Vec<u32>,
    pub pair: ConwayPair,
}

/// Session JSON as returned by the API.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub start: Partition,
    pub position: Partition,
    pub convention: Convention,
    pub engine_first: bool,
    pub seq: usize,
    pub status: Status,
    pub history: Vec<HistoryEntry>,
    pub legal_moves: Vec<MoveRecord>,
    pub display: Display,
}
