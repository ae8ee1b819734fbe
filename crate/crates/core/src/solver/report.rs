use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{best_move, conway_pair, winning_moves};
use crate::decomposition::Decomposition;
use crate::outcome::{Convention, ConwayPair, Outcome};
use crate::partitions::Partition;
use crate::rules::{MoveRecord, RitMove};

/// Everything known about one position: decomposition, Conway pair,
/// outcomes under both conventions, and the moves that win under the
/// requested convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub position: Partition,
    pub weight: u32,
    pub convention: Convention,
    #[serde(flatten)]
    pub decomposition: Decomposition,
    pub pair: ConwayPair,
    pub outcomes: Vec<Outcome>,
    pub winning_moves: Vec<MoveRecord>,
    pub engine_move: Option<MoveRecord>,
}

pub fn analyze(p: &Partition, convention: Convention) -> AnalysisReport {
    let pair = conway_pair(p);
    let record = |m: &RitMove| m.record(p).expect("generated moves are legal");
    AnalysisReport {
        position: p.clone(),
        weight: p.weight(),
        convention,
        decomposition: Decomposition::of(p),
        pair,
        outcomes: Convention::ALL.iter().map(|&c| pair.outcome(c)).collect(),
        winning_moves: winning_moves(p, convention).iter().map(record).collect(),
        engine_move: best_move(p, convention).as_ref().map(record),
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "position     {}  (n = {}, {} rows)", self.position, self.weight, self.position.rows());
        if self.position.is_empty() {
            let _ = writeln!(out, "(empty diagram)");
        } else {
            for line in self.position.diagram().lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        let heaps = |h: &[u32]| h.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "core         {}", self.decomposition.core.as_partition());
        let _ = writeln!(
            out,
            "remnant      ({})  as Nim: ({})",
            heaps(self.decomposition.rem.heaps()),
            heaps(self.decomposition.rem_normalized.heaps())
        );
        let _ = writeln!(out, "conway pair  {}", self.pair);
        for outcome in &self.outcomes {
            let _ = writeln!(out, "{:<12} {outcome}", outcome.convention.as_str());
        }
        if self.winning_moves.is_empty() {
            let _ = writeln!(out, "winning moves ({}): none", self.convention);
        } else {
            let _ = writeln!(out, "winning moves ({}):", self.convention);
            for m in &self.winning_moves {
                let _ = writeln!(out, "  {}", m);
            }
        }
        match &self.engine_move {
            None => {
                let _ = writeln!(out, "engine move: none (terminal position)");
            }
            Some(m) if self.winning_moves.contains(m) => {
                let _ = writeln!(out, "engine move: {}", m);
            }
            Some(m) => {
                let _ = writeln!(out, "engine move: {}  (fallback, no winning move)", m);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::parse_partition;

    #[test]
    fn losing_position_report() {
        let report = analyze(&parse_partition("[5,4,2,1]").unwrap(), Convention::Normal);
        assert_eq!(report.pair, ConwayPair::new(0, 1));
        assert!(report.winning_moves.is_empty());
        assert_eq!(report.engine_move.as_ref().map(|m| m.k), Some(1));
        assert!(report.render_human().contains("fallback"));
        let text = report.render_human();
        assert!(text.contains("[][][][][]\n"), "{text}");
    }

    #[test]
    fn json_round_trip() {
        let report = analyze(&parse_partition("[3,1]").unwrap(), Convention::Misere);
        let json = report.to_json();
        assert!(
            json.starts_with(r#"{"position":[3,1],"weight":4,"convention":"misere","core":[1,1],"rem":[2],"#),
            "{json}"
        );
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), json);
    }
}
