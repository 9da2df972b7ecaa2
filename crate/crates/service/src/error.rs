//! One error type for the CLI and the HTTP API.
//!
//! Every failure carries a stable code; the code alone decides the process
//! exit status and the HTTP status:
//!
//! | code                  | HTTP | exit |
//! |-----------------------|------|------|
//! | `parse_error`         | 400  | 2    |
//! | `bad_request`         | 400  | 2    |
//! | `not_found`           | 404  | 2    |
//! | `occupied_cell`       | 409  | 2    |
//! | `game_over`           | 409  | 2    |
//! | `board_not_full`      | 409  | 2    |
//! | `winning_path_exists` | 409  | 2    |
//! | `out_of_bounds`       | 422  | 2    |
//! | `invalid_input`       | 422  | 2    |
//! | `map_range`           | 422  | 2    |
//! | `map_eval`            | 422  | 2    |
//! | `not_converged`       | 422  | 2    |
//! | `board_too_large`     | 503  | 3    |
//! | `resource_limit`      | 503  | 3    |
//! | `budget_exceeded`     | 503  | 3    |
//! | `corrupt_session`     | 500  | 1    |
//! | `internal`            | 500  | 1    |

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use hexpoint_core::brouwer::BrouwerError;
use hexpoint_core::funcspec::{CatalogError, EvalError, ParseError};
use hexpoint_core::hex::HexError;
use hexpoint_core::solver::SolveError;
use hexpoint_core::sperner::SpernerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    ParseError,
    BadRequest,
    NotFound,
    OccupiedCell,
    GameOver,
    BoardNotFull,
    WinningPathExists,
    OutOfBounds,
    InvalidInput,
    MapRange,
    MapEval,
    NotConverged,
    BoardTooLarge,
    ResourceLimit,
    BudgetExceeded,
    CorruptSession,
    Internal,
}

impl ErrorCode {
    pub const ALL: [ErrorCode; 17] = [
        ErrorCode::ParseError,
        ErrorCode::BadRequest,
        ErrorCode::NotFound,
        ErrorCode::OccupiedCell,
        ErrorCode::GameOver,
        ErrorCode::BoardNotFull,
        ErrorCode::WinningPathExists,
        ErrorCode::OutOfBounds,
        ErrorCode::InvalidInput,
        ErrorCode::MapRange,
        ErrorCode::MapEval,
        ErrorCode::NotConverged,
        ErrorCode::BoardTooLarge,
        ErrorCode::ResourceLimit,
        ErrorCode::BudgetExceeded,
        ErrorCode::CorruptSession,
        ErrorCode::Internal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::ParseError => "parse_error",
            ErrorCode::BadRequest => "bad_request",
            ErrorCode::NotFound => "not_found",
            ErrorCode::OccupiedCell => "occupied_cell",
            ErrorCode::GameOver => "game_over",
            ErrorCode::BoardNotFull => "board_not_full",
            ErrorCode::WinningPathExists => "winning_path_exists",
            ErrorCode::OutOfBounds => "out_of_bounds",
            ErrorCode::InvalidInput => "invalid_input",
            ErrorCode::MapRange => "map_range",
            ErrorCode::MapEval => "map_eval",
            ErrorCode::NotConverged => "not_converged",
            ErrorCode::BoardTooLarge => "board_too_large",
            ErrorCode::ResourceLimit => "resource_limit",
            ErrorCode::BudgetExceeded => "budget_exceeded",
            ErrorCode::CorruptSession => "corrupt_session",
            ErrorCode::Internal => "internal",
        }
    }

    pub fn http_status(self) -> StatusCode {
        use ErrorCode::*;
        match self {
            ParseError | BadRequest => StatusCode::BAD_REQUEST,
            NotFound => StatusCode::NOT_FOUND,
            OccupiedCell | GameOver | BoardNotFull | WinningPathExists => StatusCode::CONFLICT,
            OutOfBounds | InvalidInput | MapRange | MapEval | NotConverged => StatusCode::UNPROCESSABLE_ENTITY,
            BoardTooLarge | ResourceLimit | BudgetExceeded => StatusCode::SERVICE_UNAVAILABLE,
            CorruptSession | Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    pub fn exit_code(self) -> u8 {
        match self.http_status().as_u16() {
            503 => 3,
            500 => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct AppError {
    pub code: ErrorCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

impl AppError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> AppError {
        AppError {
            code,
            message: message.into(),
        }
    }

    pub fn body(&self) -> ErrorBody {
        ErrorBody {
            code: self.code.as_str().to_string(),
            message: self.message.clone(),
        }
    }
}

impl IntoResponse for AppError {
    fn into_response(self) -> Response {
        (self.code.http_status(), Json(self.body())).into_response()
    }
}

impl From<HexError> for AppError {
    fn from(e: HexError) -> Self {
        let code = match &e {
            HexError::OccupiedCell(_) => ErrorCode::OccupiedCell,
            HexError::OutOfBounds { .. } => ErrorCode::OutOfBounds,
            HexError::BoardNotFull => ErrorCode::BoardNotFull,
            HexError::Parse { .. } => ErrorCode::ParseError,
            HexError::Graph(_) | HexError::InterfaceInconsistent(_) => ErrorCode::Internal,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<SolveError> for AppError {
    fn from(e: SolveError) -> Self {
        let code = match &e {
            SolveError::BoardTooLarge { .. } => ErrorCode::BoardTooLarge,
            SolveError::BudgetExceeded { .. } => ErrorCode::BudgetExceeded,
            SolveError::GameOver => ErrorCode::GameOver,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        let code = match &e {
            ParseError::Syntax { .. } => ErrorCode::ParseError,
            ParseError::Arity { .. } => ErrorCode::InvalidInput,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<EvalError> for AppError {
    fn from(e: EvalError) -> Self {
        let code = match &e {
            EvalError::MapRange { .. } => ErrorCode::MapRange,
            _ => ErrorCode::MapEval,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<CatalogError> for AppError {
    fn from(e: CatalogError) -> Self {
        let code = match &e {
            CatalogError::NotFound(_) => ErrorCode::NotFound,
            CatalogError::BadParameters { .. } => ErrorCode::InvalidInput,
        };
        AppError::new(code, e.to_string())
    }
}

impl From<SpernerError> for AppError {
    fn from(e: SpernerError) -> Self {
        match e {
            SpernerError::Map(inner) => inner.into(),
            SpernerError::ResourceLimit { .. } => AppError::new(ErrorCode::ResourceLimit, e.to_string()),
            _ => AppError::new(ErrorCode::InvalidInput, e.to_string()),
        }
    }
}

impl From<BrouwerError> for AppError {
    fn from(e: BrouwerError) -> Self {
        match e {
            BrouwerError::Map(inner) => inner.into(),
            BrouwerError::Board(inner) => inner.into(),
            BrouwerError::ResourceLimit { .. } => AppError::new(ErrorCode::ResourceLimit, e.to_string()),
            BrouwerError::NotConverged { .. } => AppError::new(ErrorCode::NotConverged, e.to_string()),
            BrouwerError::WinningPathExists { .. } | BrouwerError::OutOfBoundsDisplacement { .. } => {
                AppError::new(ErrorCode::WinningPathExists, e.to_string())
            }
            _ => AppError::new(ErrorCode::InvalidInput, e.to_string()),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::new(ErrorCode::Internal, e.to_string())
    }
}
