//! In-memory session store with an optional JSON-lines snapshot log.
//!
//! Ids come from a counter (`g1`, `g2`, …), so identical request sequences
//! produce identical sessions. Each session sits behind its own mutex:
//! mutations of one session are serialized, distinct sessions never block
//! each other beyond the map lookup.
//!
//! The snapshot log gets one line per created or mutated session. On load,
//! the last line for each id wins and every session must pass its replay
//! check.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use rit_core::{Convention, Partition};

use crate::session::{GameSession, SessionError};

#[derive(Debug)]
struct SnapshotLog {
    path: PathBuf,
    file: Mutex<File>,
}

#[derive(Debug, Default)]
pub struct SessionStore {
    next_id: AtomicU64,
    sessions: RwLock<HashMap<String, Arc<Mutex<GameSession>>>>,
    snapshot: Option<SnapshotLog>,
}

impl SessionStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Store backed by the snapshot log at `path`, restoring any sessions
    /// already recorded there.
    pub fn with_snapshot(path: impl AsRef<Path>) -> io::Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut restored: HashMap<String, GameSession> = HashMap::new();
        if path.exists() {
            for (line_no, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let session: GameSession = serde_json::from_str(&line).map_err(|e| {
                    io::Error::new(io::ErrorKind::InvalidData, format!("{}:{}: {e}", path.display(), line_no + 1))
                })?;
                restored.insert(session.id.clone(), session);
            }
        }
        for session in restored.values() {
            session.check_replay().map_err(|e| {
                io::Error::new(io::ErrorKind::InvalidData, format!("session {} in {}: {e}", session.id, path.display()))
            })?;
        }
        let next_id = restored.keys().filter_map(|id| id.strip_prefix('g')?.parse::<u64>().ok()).max().unwrap_or(0);
        let file = OpenOptions::new().create(true).append(true).open(&path)?;
        Ok(Self {
            next_id: AtomicU64::new(next_id),
            sessions: RwLock::new(restored.into_iter().map(|(id, s)| (id, Arc::new(Mutex::new(s)))).collect()),
            snapshot: Some(SnapshotLog { path, file: Mutex::new(file) }),
        })
    }

    pub fn snapshot_path(&self) -> Option<&Path> {
        self.snapshot.as_ref().map(|s| s.path.as_path())
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, start: Partition, convention: Convention, engine_first: bool) -> io::Result<GameSession> {
        let id = format!("g{}", self.next_id.fetch_add(1, Ordering::SeqCst) + 1);
        let session = GameSession::create(id.clone(), start, convention, engine_first);
        self.record(&session)?;
        self.sessions.write().expect("session map poisoned").insert(id, Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Option<GameSession> {
        let handle = self.handle(id)?;
        let session = handle.lock().expect("session poisoned").clone();
        Some(session)
    }

    /// Applies a human move and the engine reply under the session's lock.
    /// `None` when no session has this id.
    pub fn submit(&self, id: &str, k: u32, seq: usize) -> Option<Result<GameSession, StoreError>> {
        let handle = self.handle(id)?;
        let mut session = handle.lock().expect("session poisoned");
        let backup = session.clone();
        let result = session
            .submit(k, seq)
            .map_err(StoreError::Session)
            .and_then(|()| session.check_replay().map_err(StoreError::Session))
            .and_then(|()| self.record(&session).map_err(StoreError::Snapshot))
            .map(|()| session.clone());
        if result.is_err() {
            *session = backup;
        }
        Some(result)
    }

    fn handle(&self, id: &str) -> Option<Arc<Mutex<GameSession>>> {
        self.sessions.read().expect("session map poisoned").get(id).cloned()
    }

    fn record(&self, session: &GameSession) -> io::Result<()> {
        let Some(log) = &self.snapshot else {
            return Ok(());
        };
        let line = serde_json::to_string(session).map_err(io::Error::other)?;
        let mut file = log.file.lock().expect("snapshot log poisoned");
        writeln!(file, "{line}")?;
        file.flush()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error(transparent)]
    Session(SessionError),

    #[error("could not write snapshot: {0}")]
    Snapshot(io::Error),
}

#[cfg(test)]
mod tests {
    use super::*;
    use rit_core::parse_partition;

    #[test]
    fn ids_count_up() {
        let store = SessionStore::new();
        let a = store.create(Partition::empty(), Convention::Normal, false).unwrap();
        let b = store.create(Partition::empty(), Convention::Normal, false).unwrap();
        assert_eq!((a.id.as_str(), b.id.as_str()), ("g1", "g2"));
        assert_eq!(store.len(), 2);
        assert!(store.get("g3").is_none());
        assert!(store.submit("g3", 1, 0).is_none());
    }

    #[test]
    fn snapshot_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sessions.jsonl");
        {
            let store = SessionStore::with_snapshot(&path).unwrap();
            store.create(parse_partition("[5,4,2,1]").unwrap(), Convention::Normal, false).unwrap();
            store.create(parse_partition("[3,1]").unwrap(), Convention::Misere, true).unwrap();
            store.submit("g1", 4, 0).unwrap().unwrap();
        }
        let store = SessionStore::with_snapshot(&path).unwrap();
        assert_eq!(store.len(), 2);
        assert_eq!(store.get("g1").unwrap().position, parse_partition("[4,3,2,1]").unwrap());
        assert_eq!(store.create(Partition::empty(), Convention::Normal, false).unwrap().id, "g3");
    }

    #[test]
    fn corrupt_snapshot_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sessions.jsonl");
        {
            let store = SessionStore::with_snapshot(&path).unwrap();
            store.create(parse_partition("[2,1]").unwrap(), Convention::Normal, false).unwrap();
            store.submit("g1", 1, 0).unwrap().unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let mut last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        last["position"] = serde_json::json!([7]);
        std::fs::write(&path, format!("{last}\n")).unwrap();
        let err = SessionStore::with_snapshot(&path).unwrap_err();
        assert_eq!(err.kind(), io::ErrorKind::InvalidData);
    }
}
