//! Terminal play against the engine, over any line reader and writer.
//!
//! The game runs on the same session model as the HTTP service, so the
//! engine replies and the winner rule are identical in both front ends.

use std::io::{self, BufRead, Write};

use rit_core::solver::conway_pair;
use rit_core::{Convention, Partition};
use rit_service::{GameSession, Mover, SessionError, Status};

fn describe(mover: Mover) -> &'static str {
    match mover {
        Mover::Human => "you",
        Mover::Engine => "engine",
    }
}

fn show_position(session: &GameSession, out: &mut impl Write) -> io::Result<()> {
    let p = &session.position;
    writeln!(out, "position {p}  pair {}", conway_pair(p))?;
    for line in p.diagram().lines() {
        writeln!(out, "  {line}")?;
    }
    Ok(())
}

/// Plays one game from `start`. Moves are read as column numbers, one per
/// line; `q` or end of input abandons the game.
pub fn run(
    start: Partition,
    convention: Convention,
    engine_first: bool,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> io::Result<()> {
    let mut session = GameSession::create("terminal".to_string(), start, convention, engine_first);
    writeln!(out, "RIT under {convention} play, starting from {}", session.start)?;
    if let Some(entry) = session.history.first() {
        writeln!(out, "engine plays {}", entry.record)?;
    }

    let mut line = String::new();
    while session.status() == Status::InProgress {
        show_position(&session, out)?;
        write!(out, "your move (k in 1..{}, q to quit): ", session.position.largest_part())?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 || line.trim() == "q" {
            writeln!(out)?;
            writeln!(out, "game abandoned")?;
            return Ok(());
        }
        let Ok(k) = line.trim().parse::<u32>() else {
            writeln!(out, "not a column number: {:?}", line.trim())?;
            continue;
        };
        let played = session.seq();
        match session.submit(k, played) {
            Ok(()) => {
                for entry in &session.history[played..] {
                    writeln!(
                        out,
                        "{} {} {}",
                        describe(entry.mover),
                        if entry.mover == Mover::Human { "play" } else { "plays" },
                        entry.record
                    )?;
                }
            }
            Err(SessionError::IllegalMove(e)) => writeln!(out, "illegal move: {e}")?,
            Err(e) => return Err(io::Error::other(e)),
        }
    }

    if session.history.is_empty() {
        let outcome = conway_pair(&session.position).outcome(convention);
        writeln!(out, "{} is terminal: {outcome}", session.position)?;
    }
    if let Status::Finished { winner } = session.status() {
        let rule = match convention {
            Convention::Normal => "the last mover wins",
            Convention::Misere => "the last mover loses",
        };
        writeln!(out, "game over, {rule}: {} win{}", describe(winner), if winner == Mover::Human { "" } else { "s" })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rit_core::parse_partition;

    fn transcript(start: &str, convention: Convention, engine_first: bool, input: &str) -> String {
        let mut out = Vec::new();
        run(parse_partition(start).unwrap(), convention, engine_first, &mut input.as_bytes(), &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn misere_engine_first_from_two() {
        let t = transcript("[2]", Convention::Misere, true, "1\n");
        assert!(t.contains("engine plays k=2 (row 1, remove 1) -> [1]"), "{t}");
        assert!(t.contains("you play k=1 (row 1, remove 1) -> []"), "{t}");
        assert!(t.ends_with("game over, the last mover loses: engine wins\n"), "{t}");
    }

    #[test]
    fn empty_start() {
        let normal = transcript("[]", Convention::Normal, false, "");
        assert!(normal.contains("P-position under normal play"), "{normal}");
        assert!(normal.ends_with("engine wins\n"), "{normal}");
        let misere = transcript("[]", Convention::Misere, false, "");
        assert!(misere.contains("N-position under misere play"), "{misere}");
        assert!(misere.ends_with("you win\n"), "{misere}");
    }

    #[test]
    fn bad_input_reprompts() {
        let t = transcript("[1]", Convention::Normal, false, "x\n7\n1\n");
        assert!(t.contains("not a column number: \"x\""), "{t}");
        assert!(t.contains("illegal move: column 7 is out of range"), "{t}");
        assert!(t.ends_with("the last mover wins: you win\n"), "{t}");
    }

    #[test]
    fn quit_and_eof() {
        assert!(transcript("[3,1]", Convention::Normal, false, "q\n").ends_with("game abandoned\n"));
        assert!(transcript("[3,1]", Convention::Normal, false, "").ends_with("game abandoned\n"));
    }
}
