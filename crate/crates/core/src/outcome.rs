//! Play conventions, Conway pairs and P/N outcomes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Normal play: the last mover wins. Misère play: the last mover loses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Normal,
    Misere,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Normal, Convention::Misere];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Normal => "normal",
            Convention::Misere => "misere",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normal" => Ok(Convention::Normal),
            "misere" | "misère" => Ok(Convention::Misere),
            other => Err(format!("unknown convention {other:?} (expected normal or misere)")),
        }
    }
}

/// Which conventions a bulk run covers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionSelection {
    #[default]
    Normal,
    Misere,
    Both,
}

impl ConventionSelection {
    pub fn conventions(self) -> &'static [Convention] {
        match self {
            ConventionSelection::Normal => &[Convention::Normal],
            ConventionSelection::Misere => &[Convention::Misere],
            ConventionSelection::Both => &Convention::ALL,
        }
    }
}

impl FromStr for ConventionSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "both" => Ok(ConventionSelection::Both),
            other => Convention::from_str(other)
                .map(|c| match c {
                    Convention::Normal => ConventionSelection::Normal,
                    Convention::Misere => ConventionSelection::Misere,
                })
                .map_err(|_| format!("unknown convention {other:?} (expected normal, misere or both)")),
        }
    }
}

/// `(G, G⁻)`: normal and misère Grundy values of a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConwayPair {
    pub normal: u32,
    pub misere: u32,
}

impl ConwayPair {
    pub const fn new(normal: u32, misere: u32) -> Self {
        Self { normal, misere }
    }

    pub fn value(self, convention: Convention) -> u32 {
        match convention {
            Convention::Normal => self.normal,
            Convention::Misere => self.misere,
        }
    }

    pub fn outcome(self, convention: Convention) -> Outcome {
        let winner = if self.value(convention) == 0 { Winner::Previous } else { Winner::Next };
        Outcome { convention, winner }
    }
}

impl fmt::Display for ConwayPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.normal, self.misere)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Next,
    Previous,
}

/// Who wins from a position with perfect play under a convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Outcome {
    pub convention: Convention,
    pub winner: Winner,
}

impl Outcome {
    /// `P` when the previous player wins, `N` otherwise.
    pub fn letter(self) -> char {
        match self.winner {
            Winner::Previous => 'P',
            Winner::Next => 'N',
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let who = match self.winner {
            Winner::Previous => "previous player wins",
            Winner::Next => "next player wins",
        };
        write!(f, "{}-position under {} play ({who})", self.letter(), self.convention)
    }
}
