//! The size-k lattice Hex board.
//!
//! Cells are lattice points `(z1, z2)` with `1 <= z1, z2 <= k`. Two cells are
//! adjacent when they differ by one in max-norm and are comparable
//! componentwise, which gives every interior cell exactly six neighbours:
//! `(±1, 0)`, `(0, ±1)` and `±(1, 1)`.
//!
//! `H` joins West (`z1 = 1`) to East (`z1 = k`); `V` joins South (`z2 = 1`)
//! to North (`z2 = k`).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HexError;

/// The six lattice offsets of the neighbours of a cell, in counter-clockwise
/// order starting East.
pub const NEIGHBOR_OFFSETS: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    /// Connects the East and West edges.
    H,
    /// Connects the North and South edges.
    V,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::H => Player::V,
            Player::V => Player::H,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Player::H => 'H',
            Player::V => 'V',
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Player {
    type Err = HexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" => Ok(Player::H),
            "V" => Ok(Player::V),
            other => Err(HexError::Parse {
                line: 0,
                message: format!("unknown player `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Cell {
    #[default]
    Empty,
    H,
    V,
}

impl Cell {
    pub fn player(self) -> Option<Player> {
        match self {
            Cell::Empty => None,
            Cell::H => Some(Player::H),
            Cell::V => Some(Player::V),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Cell::Empty => '.',
            Cell::H => 'H',
            Cell::V => 'V',
        }
    }
}

impl From<Player> for Cell {
    fn from(p: Player) -> Cell {
        match p {
            Player::H => Cell::H,
            Player::V => Cell::V,
        }
    }
}

impl From<Option<Player>> for Cell {
    fn from(p: Option<Player>) -> Cell {
        p.map_or(Cell::Empty, Cell::from)
    }
}

/// A lattice coordinate on the board, 1-based in both components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub z1: usize,
    pub z2: usize,
}

impl Coord {
    pub const fn new(z1: usize, z2: usize) -> Coord {
        Coord { z1, z2 }
    }

    /// The neighbour at a lattice offset, if it stays on a board of side `k`.
    pub fn offset(self, d: (i64, i64), k: usize) -> Option<Coord> {
        let z1 = self.z1 as i64 + d.0;
        let z2 = self.z2 as i64 + d.1;
        if z1 >= 1 && z2 >= 1 && z1 <= k as i64 && z2 <= k as i64 {
            Some(Coord::new(z1 as usize, z2 as usize))
        } else {
            None
        }
    }
}

// Scan order used everywhere a deterministic choice is needed: `z2` major, then `z1`.
impl Ord for Coord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.z2, self.z1).cmp(&(other.z2, other.z1))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z1, self.z2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Edge {
    N,
    S,
    E,
    W,
}

impl Edge {
    /// Whether `c` lies on this edge of a board of side `k`.
    pub fn contains(self, c: Coord, k: usize) -> bool {
        match self {
            Edge::N => c.z2 == k,
            Edge::S => c.z2 == 1,
            Edge::E => c.z1 == k,
            Edge::W => c.z1 == 1,
        }
    }
}

/// Lattice adjacency: max-norm distance one and componentwise comparable.
pub fn adjacent(a: Coord, b: Coord) -> bool {
    let d1 = a.z1 as i64 - b.z1 as i64;
    let d2 = a.z2 as i64 - b.z2 as i64;
    let max_norm = d1.abs().max(d2.abs());
    let comparable = (d1 <= 0 && d2 <= 0) || (d1 >= 0 && d2 >= 0);
    max_norm == 1 && comparable
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Board {
    k: usize,
    cells: Vec<Cell>,
    to_move: Player,
}

impl Board {
    /// An empty board with `H` to move.
    pub fn new(k: usize) -> Board {
        Board::with_first_player(k, Player::H)
    }

    pub fn with_first_player(k: usize, first: Player) -> Board {
        assert!(k >= 1, "board side must be positive");
        Board {
            k,
            cells: vec![Cell::Empty; k * k],
            to_move: first,
        }
    }

    /// Analysis-mode constructor: any coloring is accepted.
    pub fn from_cells(k: usize, cells: Vec<Cell>, to_move: Player) -> Result<Board, HexError> {
        if k == 0 || cells.len() != k * k {
            return Err(HexError::Parse {
                line: 0,
                message: format!("expected {} cells for k={k}, got {}", k * k, cells.len()),
            });
        }
        Ok(Board { k, cells, to_move })
    }

    /// Full coloring from a bit pattern: bit `i` of `bits` set means `H` at the
    /// cell with row-major index `i` (`z2` major), clear means `V`.
    pub fn from_coloring_bits(k: usize, bits: u64) -> Board {
        let cells = (0..k * k)
            .map(|i| if bits >> i & 1 == 1 { Cell::H } else { Cell::V })
            .collect();
        Board { k, cells, to_move: Player::H }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn set_to_move(&mut self, p: Player) {
        self.to_move = p;
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.z1 >= 1 && c.z2 >= 1 && c.z1 <= self.k && c.z2 <= self.k
    }

    pub fn index(&self, c: Coord) -> usize {
        (c.z2 - 1) * self.k + (c.z1 - 1)
    }

    pub fn coord(&self, index: usize) -> Coord {
        Coord::new(index % self.k + 1, index / self.k + 1)
    }

    pub fn get(&self, c: Coord) -> Result<Cell, HexError> {
        if !self.in_bounds(c) {
            return Err(HexError::OutOfBounds { at: c, k: self.k });
        }
        Ok(self.cells[self.index(c)])
    }

    /// Overwrites a cell without touching the player to move (analysis mode).
    pub fn set(&mut self, c: Coord, cell: Cell) -> Result<(), HexError> {
        if !self.in_bounds(c) {
            return Err(HexError::OutOfBounds { at: c, k: self.k });
        }
        let i = self.index(c);
        self.cells[i] = cell;
        Ok(())
    }

    /// All coordinates in scan order.
    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.k * self.k).map(move |i| self.coord(i))
    }

    pub fn neighbors(&self, c: Coord) -> impl Iterator<Item = Coord> + '_ {
        let k = self.k;
        NEIGHBOR_OFFSETS.iter().filter_map(move |&d| c.offset(d, k))
    }

    pub fn empty_cells(&self) -> impl Iterator<Item = Coord> + '_ {
        self.coords().filter(move |&c| self.cells[self.index(c)] == Cell::Empty)
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(|&c| c != Cell::Empty)
    }

    pub fn count(&self, p: Player) -> usize {
        let target = Cell::from(p);
        self.cells.iter().filter(|&&c| c == target).count()
    }

    /// Places a stone for the player to move and passes the turn.
    pub fn play(&self, at: Coord) -> Result<Board, HexError> {
        match self.get(at)? {
            Cell::Empty => {}
            _ => return Err(HexError::OccupiedCell(at)),
        }
        let mut next = self.clone();
        let i = next.index(at);
        next.cells[i] = Cell::from(self.to_move);
        next.to_move = self.to_move.opponent();
        Ok(next)
    }

    /// Game-mode legality: stone counts consistent with alternating play and
    /// with the recorded player to move.
    pub fn is_reachable(&self) -> bool {
        let h = self.count(Player::H) as i64;
        let v = self.count(Player::V) as i64;
        match h - v {
            0 => true,
            1 => self.to_move == Player::V,
            -1 => self.to_move == Player::H,
            _ => false,
        }
    }

    /// Returns the player owning a chain between their two edges, if any.
    pub fn winner(&self) -> Option<Player> {
        if self.has_chain(Player::H) {
            Some(Player::H)
        } else if self.has_chain(Player::V) {
            Some(Player::V)
        } else {
            None
        }
    }

    pub fn has_chain(&self, p: Player) -> bool {
        self.winning_path(p).is_some()
    }

    /// A shortest chain of `p` stones joining `p`'s two edges.
    pub fn winning_path(&self, p: Player) -> Option<Vec<Coord>> {
        let (start, goal) = match p {
            Player::H => (Edge::W, Edge::E),
            Player::V => (Edge::S, Edge::N),
        };
        let owned = |c: Coord| self.cells[self.index(c)] == Cell::from(p);
        let mut prev: Vec<Option<usize>> = vec![None; self.cells.len()];
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::new();
        for c in self.coords().filter(|&c| start.contains(c, self.k) && owned(c)) {
            let i = self.index(c);
            seen[i] = true;
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            if goal.contains(c, self.k) {
                let mut path = vec![c];
                let mut i = self.index(c);
                while let Some(j) = prev[i] {
                    path.push(self.coord(j));
                    i = j;
                }
                path.reverse();
                return Some(path);
            }
            for n in self.neighbors(c) {
                let j = self.index(n);
                if !seen[j] && owned(n) {
                    seen[j] = true;
                    prev[j] = Some(self.index(c));
                    queue.push_back(n);
                }
            }
        }
        None
    }

    /// Cells of colour `p` reachable from `edge` through `p` cells.
    pub fn connected_to_edge(&self, p: Player, edge: Edge) -> Vec<bool> {
        let target = Cell::from(p);
        let mut seen = vec![false; self.cells.len()];
        let mut stack: Vec<Coord> = self
            .coords()
            .filter(|&c| edge.contains(c, self.k) && self.cells[self.index(c)] == target)
            .collect();
        for &c in &stack {
            seen[self.index(c)] = true;
        }
        while let Some(c) = stack.pop() {
            for n in self.neighbors(c) {
                let j = self.index(n);
                if !seen[j] && self.cells[j] == target {
                    seen[j] = true;
                    stack.push(n);
                }
            }
        }
        seen
    }

    /// Renders the board text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("k={}\n", self.k);
        for z2 in (1..=self.k).rev() {
            for z1 in 1..=self.k {
                out.push(self.cells[self.index(Coord::new(z1, z2))].as_char());
            }
            out.push('\n');
        }
        out.push_str(&format!("to_move={}\n", self.to_move));
        out
    }

    /// Parses the board text format. A missing `to_move` line means `H` to move.
    pub fn parse_text(src: &str) -> Result<Board, HexError> {
        let mut lines = src.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n, header) = lines.next().ok_or(HexError::Parse {
            line: 1,
            message: "missing `k=<int>` header".into(),
        })?;
        let k: usize = header
            .trim()
            .strip_prefix("k=")
            .and_then(|s| s.parse().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| HexError::Parse {
                line: n + 1,
                message: format!("expected `k=<positive int>`, found `{}`", header.trim()),
            })?;
        let mut cells = vec![Cell::Empty; k * k];
        for row in 0..k {
            let z2 = k - row;
            let (n, line) = lines.next().ok_or(HexError::Parse {
                line: n + row + 2,
                message: format!("expected {k} board rows, found {row}"),
            })?;
            let line = line.trim();
            if line.chars().count() != k {
                return Err(HexError::Parse {
                    line: n + 1,
                    message: format!("row has {} cells, expected {k}", line.chars().count()),
                });
            }
            for (col, ch) in line.chars().enumerate() {
                let cell = match ch {
                    '.' => Cell::Empty,
                    'H' => Cell::H,
                    'V' => Cell::V,
                    other => {
                        return Err(HexError::Parse {
                            line: n + 1,
                            message: format!("illegal character `{other}` at column {}", col + 1),
                        })
                    }
                };
                cells[(z2 - 1) * k + col] = cell;
            }
        }
        let mut to_move = Player::H;
        if let Some((n, line)) = lines.next() {
            let value = line.trim().strip_prefix("to_move=").ok_or_else(|| HexError::Parse {
                line: n + 1,
                message: format!("expected `to_move=<H|V>`, found `{}`", line.trim()),
            })?;
            to_move = value.parse().map_err(|_| HexError::Parse {
                line: n + 1,
                message: format!("unknown player `{value}`"),
            })?;
        }
        if let Some((n, line)) = lines.next() {
            return Err(HexError::Parse {
                line: n + 1,
                message: format!("unexpected trailing line `{}`", line.trim()),
            });
        }
        Ok(Board { k, cells, to_move })
    }
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Board {
    type Err = HexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Board::parse_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(Coord::new(1, 1), Coord::new(2, 2)));
        assert!(!adjacent(Coord::new(1, 2), Coord::new(2, 1)));
        assert!(!adjacent(Coord::new(2, 2), Coord::new(2, 2)));
        assert!(!adjacent(Coord::new(1, 1), Coord::new(3, 1)));
    }

    #[test]
    fn interior_cell_has_six_neighbours() {
        let k = 5;
        let center = Coord::new(2, 2);
        let count = (1..=k)
            .flat_map(|z2| (1..=k).map(move |z1| Coord::new(z1, z2)))
            .filter(|&c| adjacent(center, c))
            .count();
        assert_eq!(count, 6);
        let board = Board::new(k);
        assert_eq!(board.neighbors(center).count(), 6);
        for c in board.coords() {
            for n in board.coords() {
                assert_eq!(adjacent(c, n), board.neighbors(c).any(|x| x == n));
            }
        }
    }

    #[test]
    fn play_rules() {
        let b = Board::new(2);
        let b1 = b.play(Coord::new(1, 1)).unwrap();
        assert_eq!(b1.get(Coord::new(1, 1)).unwrap(), Cell::H);
        assert_eq!(b1.to_move(), Player::V);
        assert_eq!(b1.play(Coord::new(1, 1)), Err(HexError::OccupiedCell(Coord::new(1, 1))));
        assert!(matches!(b.play(Coord::new(3, 1)), Err(HexError::OutOfBounds { .. })));
        assert!(matches!(b.play(Coord::new(0, 1)), Err(HexError::OutOfBounds { .. })));
    }

    #[test]
    fn winner_small_cases() {
        let b = Board::from_cells(1, vec![Cell::H], Player::V).unwrap();
        assert_eq!(b.winner(), Some(Player::H));
        let b = Board::from_cells(3, vec![Cell::H; 9], Player::V).unwrap();
        assert_eq!(b.winner(), Some(Player::H));
        let b = Board::from_cells(3, vec![Cell::V; 9], Player::H).unwrap();
        assert_eq!(b.winner(), Some(Player::V));
        assert_eq!(Board::new(3).winner(), None);
    }

    #[test]
    fn diagonal_chain_counts() {
        // H along the (1,1) diagonal connects W to E; the anti-diagonal does not.
        let mut b = Board::new(3);
        for i in 1..=3 {
            b.set(Coord::new(i, i), Cell::H).unwrap();
        }
        assert_eq!(b.winner(), Some(Player::H));
        assert_eq!(
            b.winning_path(Player::H).unwrap(),
            vec![Coord::new(1, 1), Coord::new(2, 2), Coord::new(3, 3)]
        );
        let mut b = Board::new(3);
        for i in 1..=3 {
            b.set(Coord::new(i, 4 - i), Cell::H).unwrap();
        }
        assert_eq!(b.winner(), None);
    }

    #[test]
    fn text_format_round_trip() {
        let src = "k=3\nH.V\n.H.\nV.H\nto_move=V\n";
        let b: Board = src.parse().unwrap();
        assert_eq!(b.get(Coord::new(1, 3)).unwrap(), Cell::H);
        assert_eq!(b.get(Coord::new(3, 3)).unwrap(), Cell::V);
        assert_eq!(b.get(Coord::new(1, 1)).unwrap(), Cell::V);
        assert_eq!(b.to_move(), Player::V);
        assert_eq!(b.to_text(), src);
        let b: Board = "k=2\n..\nH.\n".parse().unwrap();
        assert_eq!(b.to_move(), Player::H);
        assert_eq!(b.get(Coord::new(1, 1)).unwrap(), Cell::H);
    }

    #[test]
    fn text_format_errors() {
        for bad in ["", "k=0\n", "k=2\n..\n", "k=2\nX.\n..\n", "k=2\n...\n..\n", "k=1\n.\nto_move=Q\n"] {
            assert!(matches!(Board::parse_text(bad), Err(HexError::Parse { .. })), "{bad:?}");
        }
        match Board::parse_text("k=2\n.x\n..\n") {
            Err(HexError::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains('x'));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reachability() {
        let b = Board::new(2).play(Coord::new(1, 1)).unwrap();
        assert!(b.is_reachable());
        let mut bad = b.clone();
        bad.set(Coord::new(2, 2), Cell::H).unwrap();
        assert!(!bad.is_reachable());
    }
}
