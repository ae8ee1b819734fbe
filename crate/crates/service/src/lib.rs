//! HTTP/JSON API for playing RIT against the engine.
//!
//! Routes, all bodies JSON:
//!
//! - `POST /api/v1/games` with `{"start", "convention", "engine_first"}`
//!   creates a session (201).
//! - `GET /api/v1/games/{id}` returns the session.
//! - `POST /api/v1/games/{id}/moves` with `{"k", "seq"}` plays a human move
//!   and the engine's reply. `seq` must equal the session's current `seq`.
//! - `GET /api/v1/analysis?partition=[..]&convention=..` returns the same
//!   JSON as `rit analyze --format json`.
//!
//! Anything else is served from the static directory when one is
//! configured. Errors are `{"error": {"code", "message"}}`.

pub mod session;
pub mod store;

use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{any, get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tower_http::services::ServeDir;

use rit_core::rules::MoveError;
use rit_core::solver::analyze;
use rit_core::{parse_partition, Convention, Partition, PartitionError};

pub use session::{GameSession, HistoryEntry, Mover, SessionError, SessionView, Status};
pub use store::{SessionStore, StoreError};

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("malformed request: {0}")]
    BadRequest(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(#[from] PartitionError),

    #[error("unknown convention {0:?}; expected normal or misere")]
    InvalidConvention(String),

    #[error("no game with id {0:?}")]
    GameNotFound(String),

    #[error("no such endpoint: {0}")]
    NoRoute(String),

    #[error("illegal move: {0}")]
    IllegalMove(MoveError),

    #[error("{0}")]
    Conflict(SessionError),

    #[error("session storage failed: {0}")]
    Storage(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) | ApiError::InvalidPartition(_) | ApiError::InvalidConvention(_) => {
                StatusCode::BAD_REQUEST
            }
            ApiError::GameNotFound(_) | ApiError::NoRoute(_) => StatusCode::NOT_FOUND,
            ApiError::IllegalMove(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            ApiError::BadRequest(_) => "bad_request",
            ApiError::InvalidPartition(_) => "invalid_partition",
            ApiError::InvalidConvention(_) => "invalid_convention",
            ApiError::GameNotFound(_) => "game_not_found",
            ApiError::NoRoute(_) => "not_found",
            ApiError::IllegalMove(_) => "illegal_move",
            ApiError::Conflict(SessionError::StaleSequence { .. }) => "stale_sequence",
            ApiError::Conflict(_) => "game_finished",
            ApiError::Storage(_) => "storage_error",
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Session(SessionError::IllegalMove(m)) => ApiError::IllegalMove(m),
            StoreError::Session(e @ (SessionError::Finished | SessionError::StaleSequence { .. })) => {
                ApiError::Conflict(e)
            }
            StoreError::Session(e @ SessionError::Replay { .. }) => ApiError::Storage(e.to_string()),
            StoreError::Snapshot(e) => ApiError::Storage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDetail {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: ErrorDetail,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody { error: ErrorDetail { code: self.code().to_string(), message: self.to_string() } };
        (self.status(), Json(body)).into_response()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ServiceConfig {
    pub static_dir: Option<PathBuf>,
    pub snapshot: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct AppState {
    pub store: Arc<SessionStore>,
}

impl AppState {
    pub fn new(store: SessionStore) -> Self {
        Self { store: Arc::new(store) }
    }
}

#[derive(Debug, Deserialize)]
struct CreateGame {
    start: Vec<i64>,
    #[serde(default)]
    convention: Option<String>,
    #[serde(default)]
    engine_first: bool,
}

#[derive(Debug, Deserialize)]
struct SubmitMove {
    k: u32,
    seq: usize,
}

#[derive(Debug, Deserialize)]
struct AnalysisQuery {
    partition: String,
    #[serde(default)]
    convention: Option<String>,
}

fn parse_convention(text: Option<&str>) -> Result<Convention, ApiError> {
    match text {
        None => Ok(Convention::default()),
        Some(s) => s.parse().map_err(|_| ApiError::InvalidConvention(s.to_string())),
    }
}

fn parse_body<T: serde::de::DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(e.to_string()))
}

async fn create_game(State(state): State<AppState>, body: Bytes) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let request: CreateGame = parse_body(&body)?;
    let start = Partition::try_from(request.start)?;
    let convention = parse_convention(request.convention.as_deref())?;
    let session =
        state.store.create(start, convention, request.engine_first).map_err(|e| ApiError::Storage(e.to_string()))?;
    Ok((StatusCode::CREATED, Json(session.view())))
}

async fn get_game(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let session = state.store.get(&id).ok_or(ApiError::GameNotFound(id))?;
    Ok(Json(session.view()))
}

async fn submit_move(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<SessionView>, ApiError> {
    let request: SubmitMove = parse_body(&body)?;
    let session = state.store.submit(&id, request.k, request.seq).ok_or(ApiError::GameNotFound(id))??;
    Ok(Json(session.view()))
}

/// Body is `AnalysisReport::to_json`, the same bytes the CLI prints.
async fn get_analysis(query: Result<Query<AnalysisQuery>, QueryRejection>) -> Result<Response, ApiError> {
    let Query(query) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let position = parse_partition(&query.partition)?;
    let convention = parse_convention(query.convention.as_deref())?;
    let json = analyze(&position, convention).to_json();
    Ok(([(header::CONTENT_TYPE, "application/json")], json).into_response())
}

async fn unknown_api_route(uri: axum::http::Uri) -> ApiError {
    ApiError::NoRoute(uri.path().to_string())
}

const PLACEHOLDER_PAGE: &str = "<!doctype html>
<html><head><meta charset=\"utf-8\"><title>RIT</title></head>
<body>
<h1>RIT</h1>
<p>No web board is installed. Start the server with <code>--static-dir</code> pointing at a built bundle,
or use the JSON API under <code>/api/v1</code>.</p>
</body></html>
";

async fn placeholder() -> Html<&'static str> {
    Html(PLACEHOLDER_PAGE)
}

/// The API routes over `state`, with static files (or a placeholder page)
/// for everything else.
pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/v1/games", post(create_game))
        .route("/api/v1/games/{id}", get(get_game))
        .route("/api/v1/games/{id}/moves", post(submit_move))
        .route("/api/v1/analysis", get(get_analysis))
        .route("/api", any(unknown_api_route))
        .route("/api/{*rest}", any(unknown_api_route))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir).append_index_html_on_directories(true)),
        None => api.route("/", get(placeholder)),
    }
}

/// Router plus store built from `config`, restoring sessions from the
/// snapshot log if one is configured.
pub fn app(config: &ServiceConfig) -> io::Result<Router> {
    let store = match &config.snapshot {
        Some(path) => SessionStore::with_snapshot(path)?,
        None => SessionStore::new(),
    };
    Ok(router(AppState::new(store), config.static_dir.clone()))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: &ServiceConfig) -> io::Result<()> {
    let app = app(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app).await
}
