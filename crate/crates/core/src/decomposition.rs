//! Core/remnant decomposition.
//!
//! For λ = ⟨λ1, …, λr⟩ (with λj = 0 past row r):
//! - the core is ⟨λ2, λ2, λ4, λ4, …⟩, built from the even rows;
//! - the remnant is the tuple (λ1 − λ2, λ3 − λ4, …) of length ⌈r/2⌉.
//!
//! A move on an odd row leaves the core alone and is a Nim move on the
//! remnant, and every Nim move on the remnant lifts to such a move
//! ([`lift_nim_move`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nim::NimPosition;
use crate::partitions::Partition;
use crate::rules::RitMove;

/// `(λ1 − λ2, λ3 − λ4, …)` in row order. Positional: heap `i` (1-based)
/// belongs to rows `2i − 1` and `2i`. Trailing zero heaps are kept.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Remnant {
    heaps: Vec<u32>,
}

impl Remnant {
    pub fn heaps(&self) -> &[u32] {
        &self.heaps
    }

    pub fn total(&self) -> u32 {
        self.heaps.iter().sum()
    }

    /// The remnant as a Nim position, heap order preserved.
    pub fn as_nim(&self) -> NimPosition {
        NimPosition::new(self.heaps.clone())
    }

    /// Zero heaps dropped and the rest sorted descending: the form used
    /// whenever two remnants are compared as Nim positions.
    pub fn normalized(&self) -> NimPosition {
        self.as_nim().normalized()
    }
}

/// The core partition ⟨λ2, λ2, λ4, λ4, …⟩.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CorePartition(Partition);

impl CorePartition {
    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.weight()
    }
}

pub fn core_of(p: &Partition) -> CorePartition {
    let parts: Vec<u32> = p.parts().chunks_exact(2).flat_map(|pair| [pair[1], pair[1]]).collect();
    CorePartition(Partition::new(parts).expect("doubled even rows stay nonincreasing and positive"))
}

pub fn rem_of(p: &Partition) -> Remnant {
    let heaps = p.parts().chunks(2).map(|pair| pair[0] - pair.get(1).copied().unwrap_or(0)).collect();
    Remnant { heaps }
}

/// Core and remnant together, in the `{"core", "rem", "rem_normalized"}`
/// wire form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub core: CorePartition,
    pub rem: Remnant,
    pub rem_normalized: NimPosition,
}

impl Decomposition {
    pub fn of(p: &Partition) -> Self {
        let rem = rem_of(p);
        let rem_normalized = rem.normalized();
        Self { core: core_of(p), rem, rem_normalized }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("heap {heap_index} does not exist; the remnant has {heaps} heap(s)")]
    HeapOutOfRange { heap_index: usize, heaps: usize },

    #[error("heap {heap_index} has size {current}; a Nim move must shrink it, not set it to {new_size}")]
    NotAReduction { heap_index: usize, current: u32, new_size: u32 },
}

/// Realizes the Nim move "heap `heap_index` (1-based) → `new_size`" on the
/// remnant of `p` as the RIT move on row `2·heap_index − 1` removing
/// `current − new_size` boxes.
pub fn lift_nim_move(p: &Partition, heap_index: usize, new_size: u32) -> Result<RitMove, LiftError> {
    let rem = rem_of(p);
    let current = heap_index
        .checked_sub(1)
        .and_then(|i| rem.heaps.get(i))
        .copied()
        .ok_or(LiftError::HeapOutOfRange { heap_index, heaps: rem.heaps.len() })?;
    if new_size >= current {
        return Err(LiftError::NotAReduction { heap_index, current, new_size });
    }
    let row = 2 * heap_index - 1;
    // the odd row ends up new_size boxes past the even row below it
    let k = p.row_len(row + 1) + new_size + 1;
    let m = RitMove::at_column(p, k).expect("column lies within the top row");
    debug_assert_eq!((m.row, m.removed), (row, current - new_size));
    Ok(m)
}
