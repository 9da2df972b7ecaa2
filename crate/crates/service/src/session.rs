//! Game sessions and their JSON files.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex as StdMutex};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;

use hexpoint_core::hex::{Board, Coord, Player};

use crate::error::{AppError, ErrorCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Opponent {
    #[default]
    None,
    Solver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveRecord {
    pub z1: usize,
    pub z2: usize,
    pub player: Player,
    /// Milliseconds since the Unix epoch.
    pub at: u64,
}

impl MoveRecord {
    pub fn coord(&self) -> Coord {
        Coord::new(self.z1, self.z2)
    }
}

/// On-disk form. The board is stored in the text format and must match a
/// replay of `history` from the empty board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionFile {
    pub id: String,
    pub k: usize,
    pub opponent: Opponent,
    pub history: Vec<MoveRecord>,
    pub board: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSession {
    pub id: String,
    pub opponent: Opponent,
    pub history: Vec<MoveRecord>,
    pub board: Board,
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn corrupt(id: &str, why: impl std::fmt::Display) -> AppError {
    AppError::new(ErrorCode::CorruptSession, format!("session {id}: {why}"))
}

impl GameSession {
    pub fn new(id: String, k: usize, opponent: Opponent) -> GameSession {
        GameSession {
            id,
            opponent,
            history: Vec::new(),
            board: Board::new(k),
        }
    }

    /// Plays for the side to move. Fails once the game has a winner.
    pub fn play(&mut self, at: Coord) -> Result<(), AppError> {
        if let Some(w) = self.board.winner() {
            return Err(AppError::new(ErrorCode::GameOver, format!("the game is over; {w} has won")));
        }
        let player = self.board.to_move();
        self.board = self.board.play(at)?;
        self.history.push(MoveRecord {
            z1: at.z1,
            z2: at.z2,
            player,
            at: now_ms(),
        });
        Ok(())
    }

    pub fn to_file(&self) -> SessionFile {
        SessionFile {
            id: self.id.clone(),
            k: self.board.k(),
            opponent: self.opponent,
            history: self.history.clone(),
            board: self.board.to_text(),
        }
    }

    /// Rebuilds a session by replaying its history, rejecting any file whose
    /// stored board or move order disagrees with the replay.
    pub fn from_file(file: SessionFile) -> Result<GameSession, AppError> {
        if file.k == 0 {
            return Err(corrupt(&file.id, "board side is zero"));
        }
        let mut session = GameSession::new(file.id.clone(), file.k, file.opponent);
        for (i, mv) in file.history.iter().enumerate() {
            if mv.player != session.board.to_move() {
                return Err(corrupt(&file.id, format!("move {} is by {}, expected {}", i + 1, mv.player, session.board.to_move())));
            }
            if session.board.winner().is_some() {
                return Err(corrupt(&file.id, format!("move {} comes after the game ended", i + 1)));
            }
            session.board = session
                .board
                .play(mv.coord())
                .map_err(|e| corrupt(&file.id, format!("move {}: {e}", i + 1)))?;
        }
        session.history = file.history;
        let stored = Board::parse_text(&file.board).map_err(|e| corrupt(&file.id, e))?;
        if stored.to_text() != session.board.to_text() {
            return Err(corrupt(&file.id, "stored board does not match the move history"));
        }
        Ok(session)
    }
}

/// Sessions kept in memory and mirrored to `<dir>/<id>.json`. Each session
/// has its own lock, so moves on one game serialize while other games run.
#[derive(Debug)]
pub struct SessionStore {
    dir: PathBuf,
    live: StdMutex<HashMap<String, Arc<Mutex<GameSession>>>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_hexdigit() || b == b'-')
}

impl SessionStore {
    pub fn new(dir: impl Into<PathBuf>) -> SessionStore {
        SessionStore {
            dir: dir.into(),
            live: StdMutex::new(HashMap::new()),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }

    pub fn save(&self, session: &GameSession) -> Result<(), AppError> {
        std::fs::create_dir_all(&self.dir)?;
        let json = serde_json::to_string_pretty(&session.to_file())
            .map_err(|e| AppError::new(ErrorCode::Internal, e.to_string()))?;
        let tmp = self.dir.join(format!("{}.json.tmp", session.id));
        std::fs::write(&tmp, json)?;
        std::fs::rename(&tmp, self.path(&session.id))?;
        Ok(())
    }

    pub fn load(&self, id: &str) -> Result<GameSession, AppError> {
        let not_found = || AppError::new(ErrorCode::NotFound, format!("no game with id `{id}`"));
        if !valid_id(id) {
            return Err(not_found());
        }
        let text = match std::fs::read_to_string(self.path(id)) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(not_found()),
            Err(e) => return Err(e.into()),
        };
        let file: SessionFile = serde_json::from_str(&text).map_err(|e| corrupt(id, e))?;
        if file.id != id {
            return Err(corrupt(id, format!("file holds session `{}`", file.id)));
        }
        GameSession::from_file(file)
    }

    pub fn create(&self, k: usize, opponent: Opponent) -> Result<Arc<Mutex<GameSession>>, AppError> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = GameSession::new(id.clone(), k, opponent);
        self.save(&session)?;
        let handle = Arc::new(Mutex::new(session));
        self.live.lock().expect("session map poisoned").insert(id, handle.clone());
        Ok(handle)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, AppError> {
        if let Some(s) = self.live.lock().expect("session map poisoned").get(id) {
            return Ok(s.clone());
        }
        let session = self.load(id)?;
        let mut live = self.live.lock().expect("session map poisoned");
        // another request may have loaded it meanwhile
        Ok(live
            .entry(id.to_string())
            .or_insert_with(|| Arc::new(Mutex::new(session)))
            .clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::new(dir.path());
        let mut s = GameSession::new("ab12".into(), 3, Opponent::None);
        for at in [Coord::new(2, 2), Coord::new(1, 1), Coord::new(1, 2)] {
            s.play(at).unwrap();
        }
        store.save(&s).unwrap();
        let back = store.load("ab12").unwrap();
        assert_eq!(back.board.to_text(), s.board.to_text());
        assert_eq!(back, s);
    }

    #[test]
    fn tampered_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::new(dir.path());
        let mut s = GameSession::new("cd34".into(), 2, Opponent::Solver);
        s.play(Coord::new(1, 1)).unwrap();
        s.play(Coord::new(2, 1)).unwrap();
        store.save(&s).unwrap();

        let path = dir.path().join("cd34.json");
        let mut file: SessionFile = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        file.history[1].z1 = 1;
        file.history[1].z2 = 2;
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(store.load("cd34").unwrap_err().code, ErrorCode::CorruptSession);

        file.history.swap(0, 1);
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(store.load("cd34").unwrap_err().code, ErrorCode::CorruptSession);

        std::fs::write(&path, "{").unwrap();
        assert_eq!(store.load("cd34").unwrap_err().code, ErrorCode::CorruptSession);
    }

    #[test]
    fn unknown_and_malformed_ids() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::new(dir.path());
        assert_eq!(store.load("ffff").unwrap_err().code, ErrorCode::NotFound);
        assert_eq!(store.load("../etc/passwd").unwrap_err().code, ErrorCode::NotFound);
    }

    #[test]
    fn no_moves_after_the_end() {
        let mut s = GameSession::new("ee".into(), 1, Opponent::None);
        s.play(Coord::new(1, 1)).unwrap();
        assert_eq!(s.play(Coord::new(1, 1)).unwrap_err().code, ErrorCode::GameOver);
    }
}
