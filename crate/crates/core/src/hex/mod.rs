//! Board model, winner detection and the interface-graph proof of the
//! no-draw property.

mod board;
mod graph;
mod interface;

pub use board::{adjacent, Board, Cell, Coord, Edge, Player, NEIGHBOR_OFFSETS};
pub use graph::{decompose, Decomposition, GraphError, SimpleGraph};
pub use interface::{
    interface_graph, interface_paths, winner_via_interface, BoundaryNode, Corner, InterfaceGraph,
    InterfaceNode, InterfacePaths,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HexError {
    #[error("cell {0} is already occupied")]
    OccupiedCell(Coord),
    #[error("coordinate {at} is outside the {k}x{k} board")]
    OutOfBounds { at: Coord, k: usize },
    #[error("the board has empty cells")]
    BoardNotFull,
    #[error("board text, line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("interface graph inconsistent: {0}")]
    InterfaceInconsistent(&'static str),
}

/// Winner by connectivity; see [`Board::winner`].
pub fn winner(board: &Board) -> Option<Player> {
    board.winner()
}
