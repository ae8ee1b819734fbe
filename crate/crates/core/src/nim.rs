//! Nim: mex, nim-sum, and normal and misère Grundy values.
//!
//! [`misere_grundy`] uses the closed form (flip the low bit when no heap
//! exceeds one). [`NimRecursion`] evaluates the literal mex recursion and
//! exists to check that closed form.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::outcome::Convention;

/// A Nim position: heap sizes in positional order. Zero heaps are allowed
/// and contribute nothing; [`NimPosition::normalized`] gives the multiset
/// form used for identity comparisons.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NimPosition {
    heaps: Vec<u32>,
}

impl NimPosition {
    pub fn new(heaps: Vec<u32>) -> Self {
        Self { heaps }
    }

    pub fn heaps(&self) -> &[u32] {
        &self.heaps
    }

    /// Zero heaps dropped, remaining heaps sorted descending.
    pub fn normalized(&self) -> NimPosition {
        let mut heaps: Vec<u32> = self.heaps.iter().copied().filter(|&h| h > 0).collect();
        heaps.sort_unstable_by(|a, b| b.cmp(a));
        NimPosition { heaps }
    }

    pub fn is_terminal(&self) -> bool {
        self.heaps.iter().all(|&h| h == 0)
    }

    /// Every position reachable in one move, as `(move, result)`.
    pub fn options(&self) -> impl Iterator<Item = (NimMove, NimPosition)> + '_ {
        self.heaps.iter().enumerate().flat_map(move |(i, &h)| {
            (0..h).map(move |new_size| {
                let mut heaps = self.heaps.clone();
                heaps[i] = new_size;
                (NimMove { heap: i + 1, new_size }, NimPosition { heaps })
            })
        })
    }

    pub fn apply(&self, m: NimMove) -> NimPosition {
        let mut heaps = self.heaps.clone();
        heaps[m.heap - 1] = m.new_size;
        NimPosition { heaps }
    }
}

impl From<Vec<u32>> for NimPosition {
    fn from(heaps: Vec<u32>) -> Self {
        Self::new(heaps)
    }
}

/// Reduce heap `heap` (1-based) to `new_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NimMove {
    pub heap: usize,
    pub new_size: u32,
}

/// Smallest nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32
}

/// Bitwise XOR of all values; zero for none.
pub fn nim_sum<I: IntoIterator<Item = T>, T: Into<u64>>(values: I) -> u64 {
    values.into_iter().fold(0, |acc, v| acc ^ v.into())
}

pub fn grundy(p: &NimPosition) -> u32 {
    p.heaps.iter().fold(0, |acc, &h| acc ^ h)
}

pub fn misere_grundy(p: &NimPosition) -> u32 {
    let g = grundy(p);
    if p.heaps.iter().any(|&h| h >= 2) {
        g
    } else {
        g ^ 1
    }
}

pub fn value(p: &NimPosition, convention: Convention) -> u32 {
    match convention {
        Convention::Normal => grundy(p),
        Convention::Misere => misere_grundy(p),
    }
}

/// Literal misère recursion with a fresh memo table.
pub fn misere_grundy_recursive(p: &NimPosition) -> u32 {
    NimRecursion::new().value(p, Convention::Misere)
}

/// Memoized mex recursion over Nim positions, keyed by normalized
/// position. Terminal positions get 0 (normal) or 1 (misère).
#[derive(Debug, Default)]
pub struct NimRecursion {
    normal: HashMap<NimPosition, u32>,
    misere: HashMap<NimPosition, u32>,
}

impl NimRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, p: &NimPosition, convention: Convention) -> u32 {
        self.eval(p.normalized(), convention)
    }

    fn eval(&mut self, key: NimPosition, convention: Convention) -> u32 {
        let memo = match convention {
            Convention::Normal => &self.normal,
            Convention::Misere => &self.misere,
        };
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let v = if key.is_terminal() {
            match convention {
                Convention::Normal => 0,
                Convention::Misere => 1,
            }
        } else {
            let children: Vec<NimPosition> = key.options().map(|(_, q)| q.normalized()).collect();
            let values: Vec<u32> = children.into_iter().map(|q| self.eval(q, convention)).collect();
            mex(values)
        };
        let memo = match convention {
            Convention::Normal => &mut self.normal,
            Convention::Misere => &mut self.misere,
        };
        memo.insert(key, v);
        v
    }
}

/// Every single-heap reduction that leaves the opponent a zero value under
/// `convention`, ordered by heap then new size.
pub fn nim_winning_moves(p: &NimPosition, convention: Convention) -> Vec<NimMove> {
    let total = grundy(p);
    let mut moves = Vec::new();
    for (i, &h) in p.heaps.iter().enumerate() {
        // a zero-value result needs nim-sum 0 (some heap >= 2 left) or
        // nim-sum 1 (only heaps <= 1 left), so these are the only targets
        let mut candidates = vec![total ^ h];
        if convention == Convention::Misere {
            candidates.extend([0, 1]);
        }
        candidates.sort_unstable();
        candidates.dedup();
        for new_size in candidates.into_iter().filter(|&x| x < h) {
            let m = NimMove { heap: i + 1, new_size };
            if value(&p.apply(m), convention) == 0 {
                moves.push(m);
            }
        }
    }
    moves
}
