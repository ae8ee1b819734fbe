//! Integer partitions as RIT positions.
//!
//! A [`Partition`] is stored in canonical form: parts are positive and
//! nonincreasing, top row first. Zero rows never appear, so two equal
//! positions always have equal values and can key memo tables directly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition {input:?}: {reason}")]
    Syntax { input: String, reason: String },

    #[error("part {value} at position {position} is not positive")]
    NonPositivePart { position: usize, value: i64 },

    #[error("parts must be nonincreasing, but part {position} ({next}) exceeds the part before it ({prev})")]
    NotNonincreasing { position: usize, prev: u32, next: u32 },
}

/// A partition of `n`: the row lengths of a Young diagram, top row first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// The empty partition, the only partition of zero.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Validates `parts` and wraps them. Parts listed out of order are
    /// rejected rather than sorted.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        for (i, &part) in parts.iter().enumerate() {
            if part == 0 {
                return Err(PartitionError::NonPositivePart { position: i + 1, value: 0 });
            }
        }
        check_nonincreasing(&parts)?;
        Ok(Self { parts })
    }

    /// Builds a partition from a sequence that may carry trailing zero rows,
    /// dropping them. Used by move application.
    pub(crate) fn from_sorted_with_zeros(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(check_nonincreasing(&parts).is_ok() && !parts.contains(&0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of the top row, or zero for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Length of row `row` (1-based); rows beyond the last have length zero.
    pub fn row_len(&self, row: usize) -> u32 {
        row.checked_sub(1).and_then(|i| self.parts.get(i)).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Young diagram as text, one `[]` per box, top row first.
    pub fn diagram(&self) -> String {
        let mut out = String::new();
        for (i, &part) in self.parts.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for _ in 0..part {
                out.push_str("[]");
            }
        }
        out
    }

    /// The staircase `[m, m-1, ..., 1]`.
    pub fn staircase(m: u32) -> Self {
        Self { parts: (1..=m).rev().collect() }
    }
}

fn check_nonincreasing(parts: &[u32]) -> Result<(), PartitionError> {
    for (i, pair) in parts.windows(2).enumerate() {
        if pair[1] > pair[0] {
            return Err(PartitionError::NotNonincreasing { position: i + 2, prev: pair[0], next: pair[1] });
        }
    }
    Ok(())
}

/// Parses the bracketed text form, e.g. `[5,4,2,1]` or `[ ]`.
pub fn parse_partition(text: &str) -> Result<Partition, PartitionError> {
    let syntax = |reason: &str| PartitionError::Syntax { input: text.to_string(), reason: reason.to_string() };

    let body = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax("expected a bracketed list such as [3,1]"))?;
    if body.trim().is_empty() {
        return Ok(Partition::empty());
    }

    let mut parts = Vec::new();
    for (i, item) in body.split(',').enumerate() {
        let item = item.trim();
        if item.is_empty() {
            return Err(syntax("empty entry in list"));
        }
        let value: i64 = item.parse().map_err(|_| syntax(&format!("{item:?} is not an integer")))?;
        if value <= 0 {
            return Err(PartitionError::NonPositivePart { position: i + 1, value });
        }
        let part = u32::try_from(value).map_err(|_| syntax(&format!("part {value} is too large")))?;
        parts.push(part);
    }
    check_nonincreasing(&parts)?;
    Ok(Partition { parts })
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_partition(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{part}")?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;

    fn try_from(values: Vec<i64>) -> Result<Self, Self::Error> {
        let mut parts = Vec::with_capacity(values.len());
        for (i, value) in values.into_iter().enumerate() {
            if value <= 0 {
                return Err(PartitionError::NonPositivePart { position: i + 1, value });
            }
            let part = u32::try_from(value)
                .map_err(|_| PartitionError::Syntax { input: value.to_string(), reason: "part too large".into() })?;
            parts.push(part);
        }
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Sum of parts.
pub fn weight(p: &Partition) -> u32 {
    p.weight()
}

/// All partitions of `n` with at most `max_rows` rows (unbounded when
/// `None`), in decreasing lexicographic order.
pub fn enumerate_partitions(n: u32, max_rows: Option<usize>) -> Partitions {
    let max_rows = max_rows.unwrap_or(usize::MAX);
    let first = if n == 0 {
        Some(Vec::new())
    } else if max_rows == 0 {
        None
    } else {
        Some(vec![n])
    };
    Partitions { max_rows, current: first }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    max_rows: usize,
    current: Option<Vec<u32>>,
}

impl Partitions {
    /// Lexicographic successor: decrement the rightmost part that can still
    /// absorb the tail within the row budget, then refill greedily.
    fn advance(&self, parts: &[u32]) -> Option<Vec<u32>> {
        let mut tail: u64 = 0;
        for i in (0..parts.len()).rev() {
            let value = parts[i];
            tail += u64::from(value);
            if value <= 1 {
                continue;
            }
            let cap = value - 1;
            let spill = tail - u64::from(cap);
            let rows_left = self.max_rows.saturating_sub(i + 1) as u64;
            if spill <= u64::from(cap).saturating_mul(rows_left) {
                let mut next = parts[..i].to_vec();
                next.push(cap);
                let mut rest = spill;
                while rest > 0 {
                    let take = rest.min(u64::from(cap)) as u32;
                    next.push(take);
                    rest -= u64::from(take);
                }
                return Some(next);
            }
        }
        None
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        self.current = self.advance(&parts);
        Some(Partition { parts })
    }
}

impl std::iter::FusedIterator for Partitions {}

/// All partitions of weight `0..=max_n`, by weight then decreasing lex.
pub fn partitions_up_to(max_n: u32, max_rows: Option<usize>) -> impl Iterator<Item = Partition> {
    (0..=max_n).flat_map(move |n| enumerate_partitions(n, max_rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_partition("[5,4,2,1]").unwrap(), p(&[5, 4, 2, 1]));
        assert_eq!(parse_partition("[]").unwrap(), Partition::empty());
        assert_eq!(parse_partition(" [ 3, 1 ] ").unwrap(), p(&[3, 1]));
        assert_eq!(parse_partition("[ ]").unwrap(), Partition::empty());
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            parse_partition("[2,3]"),
            Err(PartitionError::NotNonincreasing { position: 2, prev: 2, next: 3 })
        ));
        assert!(matches!(parse_partition("[2,0]"), Err(PartitionError::NonPositivePart { position: 2, value: 0 })));
        assert!(matches!(parse_partition("[-1]"), Err(PartitionError::NonPositivePart { value: -1, .. })));
        for bad in ["", "5,4", "[5,4", "[5,,4]", "[a]", "[1,]", "[1.5]"] {
            assert!(matches!(parse_partition(bad), Err(PartitionError::Syntax { .. })), "{bad:?}");
        }
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&p(&[5, 4, 2, 1])), 12);
        assert_eq!(weight(&Partition::empty()), 0);
        assert_eq!(weight(&p(&[2, 2])), 4);
    }

    #[test]
    fn partitions_of_four() {
        let all: Vec<_> = enumerate_partitions(4, None).collect();
        assert_eq!(all, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn partitions_of_zero() {
        let all: Vec<_> = enumerate_partitions(0, None).collect();
        assert_eq!(all, vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(0, Some(1)).count(), 1);
    }

    #[test]
    fn row_restricted_partitions_of_four() {
        let all: Vec<_> = enumerate_partitions(4, Some(2)).collect();
        assert_eq!(all, vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        let one_row: Vec<_> = enumerate_partitions(4, Some(1)).collect();
        assert_eq!(one_row, vec![p(&[4])]);
        assert_eq!(enumerate_partitions(4, Some(0)).count(), 0);
    }

    #[test]
    fn diagram_rendering() {
        assert_eq!(p(&[3, 1]).diagram(), "[][][]\n[]");
        assert_eq!(Partition::empty().diagram(), "");
    }

    #[test]
    fn json_form_is_a_plain_array() {
        let q = p(&[5, 4, 2, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[5,4,2,1]");
        assert_eq!(serde_json::from_str::<Partition>("[5,4,2,1]").unwrap(), q);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        assert!(serde_json::from_str::<Partition>("[0]").is_err());
    }

    #[test]
    fn staircase() {
        assert_eq!(Partition::staircase(3), p(&[3, 2, 1]));
        assert_eq!(Partition::staircase(0), Partition::empty());
    }
}
