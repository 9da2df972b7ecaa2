//! JSON-over-HTTP API.
//!
//! | method | path                    | body                      | reply                                  |
//! |--------|-------------------------|---------------------------|----------------------------------------|
//! | POST   | `/games`                | `{k, opponent}`           | `{id, board}`                          |
//! | POST   | `/games/{id}/moves`     | `{z1, z2}`                | `{board, winner?, solverMove?}`        |
//! | GET    | `/games/{id}`           |                           | session                                |
//! | GET    | `/games/{id}/interface` |                           | interface graph and its two paths      |
//! | POST   | `/fixedpoint`           | `{map \| mapName, eps, ...}` | `{point, residual, k, coveringCounts}` |
//! | POST   | `/sperner`              | `{m, n, map \| mapName}`  | `{completelyLabeledCells, count}`      |
//!
//! Errors are `{code, message}`; see [`crate::error`] for the status table.

use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use hexpoint_core::hex::{Coord, Player};
use hexpoint_core::solver::{Solver, SolverConfig, DEFAULT_MAX_K, HARD_MAX_K};

use crate::error::{AppError, ErrorCode};
use crate::ops::{self, BoardView, FixedPointRequest, FixedPointResponse, InterfaceView, SpernerRequest, SpernerResponse};
use crate::session::{GameSession, MoveRecord, Opponent, SessionStore};

/// Largest board accepted for two-human games.
pub const MAX_BOARD: usize = 19;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub data_dir: PathBuf,
    /// Largest board the solver will play on.
    pub max_k: usize,
    /// Largest Sperner resolution accepted.
    pub max_n: usize,
    /// Largest lattice side for fixed-point scans.
    pub max_lattice: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            data_dir: PathBuf::from("./data"),
            max_k: DEFAULT_MAX_K,
            max_n: 256,
            max_lattice: hexpoint_core::brouwer::DEFAULT_MAX_LATTICE,
        }
    }
}

impl Config {
    /// Reads `HEXPOINT_DATA`, `HEXPOINT_MAX_K` and `HEXPOINT_MAX_N`.
    pub fn from_env() -> Result<Config, AppError> {
        let mut cfg = Config::default();
        if let Ok(dir) = std::env::var("HEXPOINT_DATA") {
            cfg.data_dir = PathBuf::from(dir);
        }
        let number = |name: &str| -> Result<Option<usize>, AppError> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| AppError::new(ErrorCode::InvalidInput, format!("{name}={v} is not a number"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(k) = number("HEXPOINT_MAX_K")? {
            cfg.max_k = k.min(HARD_MAX_K);
        }
        if let Some(n) = number("HEXPOINT_MAX_N")? {
            cfg.max_n = n;
        }
        Ok(cfg)
    }
}

#[derive(Clone)]
pub struct AppState {
    pub config: Arc<Config>,
    pub store: Arc<SessionStore>,
    pub solver: Arc<Solver>,
}

impl AppState {
    pub fn new(config: Config) -> AppState {
        let solver = Solver::new(SolverConfig {
            max_k: config.max_k,
            node_budget: None,
        });
        AppState {
            store: Arc::new(SessionStore::new(config.data_dir.clone())),
            config: Arc::new(config),
            solver: Arc::new(solver),
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(play_move))
        .route("/games/{id}/interface", get(get_interface))
        .route("/fixedpoint", post(fixed_point))
        .route("/sperner", post(sperner))
        .with_state(state)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, AppError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| AppError::new(ErrorCode::BadRequest, e.body_text()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateGame {
    pub k: usize,
    #[serde(default)]
    pub opponent: Opponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreatedGame {
    pub id: String,
    pub board: BoardView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: String,
    pub k: usize,
    pub opponent: Opponent,
    pub board: BoardView,
    pub history: Vec<MoveRecord>,
    pub winner: Option<Player>,
}

impl From<&GameSession> for SessionView {
    fn from(s: &GameSession) -> Self {
        SessionView {
            id: s.id.clone(),
            k: s.board.k(),
            opponent: s.opponent,
            board: BoardView::from(&s.board),
            history: s.history.clone(),
            winner: s.board.winner(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRequest {
    pub z1: usize,
    pub z2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MoveResponse {
    pub board: BoardView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Player>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver_move: Option<MoveRequest>,
}

async fn create_game(
    State(state): State<AppState>,
    payload: Result<Json<CreateGame>, JsonRejection>,
) -> Result<Json<CreatedGame>, AppError> {
    let req = body(payload)?;
    if req.k == 0 {
        return Err(AppError::new(ErrorCode::InvalidInput, "board side must be at least 1"));
    }
    let cap = match req.opponent {
        Opponent::Solver => state.config.max_k,
        Opponent::None => MAX_BOARD,
    };
    if req.k > cap {
        return Err(AppError::new(
            ErrorCode::BoardTooLarge,
            format!("board side {} exceeds the limit {cap} for this opponent", req.k),
        ));
    }
    let handle = state.store.create(req.k, req.opponent)?;
    let session = handle.lock().await;
    Ok(Json(CreatedGame {
        id: session.id.clone(),
        board: BoardView::from(&session.board),
    }))
}

async fn get_game(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, AppError> {
    let handle = state.store.get(&id)?;
    let session = handle.lock().await;
    Ok(Json(SessionView::from(&*session)))
}

async fn play_move(
    State(state): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<MoveResponse>, AppError> {
    let mv = body(payload)?;
    let handle = state.store.get(&id)?;
    let mut session = handle.lock().await;
    let mut next = session.clone();
    next.play(Coord::new(mv.z1, mv.z2))?;
    let mut solver_move = None;
    if next.opponent == Opponent::Solver && next.board.winner().is_none() && !next.board.is_full() {
        let solver = state.solver.clone();
        let board = next.board.clone();
        let reply = tokio::task::spawn_blocking(move || solver.best_move(&board))
            .await
            .map_err(|e| AppError::new(ErrorCode::Internal, e.to_string()))??;
        next.play(reply)?;
        solver_move = Some(MoveRequest {
            z1: reply.z1,
            z2: reply.z2,
        });
    }
    state.store.save(&next)?;
    *session = next;
    Ok(Json(MoveResponse {
        board: BoardView::from(&session.board),
        winner: session.board.winner(),
        solver_move,
    }))
}

async fn get_interface(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<InterfaceView>, AppError> {
    let handle = state.store.get(&id)?;
    let board = handle.lock().await.board.clone();
    Ok(Json(ops::interface_view(&board)?))
}

async fn fixed_point(
    State(state): State<AppState>,
    payload: Result<Json<FixedPointRequest>, JsonRejection>,
) -> Result<Json<FixedPointResponse>, AppError> {
    let req = body(payload)?;
    let cap = state.config.max_lattice;
    let r = tokio::task::spawn_blocking(move || ops::fixed_point(&req, cap))
        .await
        .map_err(|e| AppError::new(ErrorCode::Internal, e.to_string()))??;
    Ok(Json(r))
}

async fn sperner(
    State(state): State<AppState>,
    payload: Result<Json<SpernerRequest>, JsonRejection>,
) -> Result<Json<SpernerResponse>, AppError> {
    let req = body(payload)?;
    let cap = state.config.max_n;
    let r = tokio::task::spawn_blocking(move || ops::sperner(&req, cap))
        .await
        .map_err(|e| AppError::new(ErrorCode::Internal, e.to_string()))??;
    Ok(Json(r))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: std::net::SocketAddr, config: Config) -> Result<(), AppError> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(AppState::new(config))).await?;
    Ok(())
}
