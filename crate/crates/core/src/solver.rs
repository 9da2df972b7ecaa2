//! Exhaustive perfect-play solver for small boards.
//!
//! Positions are packed into bitboards and searched with negamax over a
//! two-valued lattice (there is no draw value). Solved positions are memoized
//! in a concurrent map keyed by `(k, H stones, V stones, player to move)`, so a
//! single [`Solver`] can be shared between threads and reused across calls.

use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hex::{Board, Cell, Coord, Player};

/// Largest side length whose positions fit the 64-bit memo key.
pub const HARD_MAX_K: usize = 5;
pub const DEFAULT_MAX_K: usize = 4;
/// Exhaustive monotonicity checks enumerate `3^(k*k)` colorings.
pub const MONOTONICITY_MAX_K: usize = 3;

const STONE_BITS: u32 = (HARD_MAX_K * HARD_MAX_K) as u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("board side {k} exceeds the solver cap of {cap}")]
    BoardTooLarge { k: usize, cap: usize },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("the game is already over")]
    GameOver,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    WinForMover,
    LossForMover,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameValue {
    pub outcome: Outcome,
    /// Principal variation; empty for terminal positions.
    pub pv: Vec<Coord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest accepted board side, at most [`HARD_MAX_K`].
    pub max_k: usize,
    /// Maximum number of searched nodes per call, unlimited when `None`.
    pub node_budget: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_k: DEFAULT_MAX_K,
            node_budget: None,
        }
    }
}

impl SolverConfig {
    /// The extended configuration that admits `k = 5` under a node budget.
    pub fn extended(node_budget: u64) -> Self {
        SolverConfig {
            max_k: HARD_MAX_K,
            node_budget: Some(node_budget),
        }
    }
}

/// Precomputed masks for one board size. Bit `i` is the cell with row-major
/// index `i` (`z2` major).
#[derive(Debug, Clone, Copy)]
struct Geometry {
    k: usize,
    full: u64,
    west: u64,
    east: u64,
    south: u64,
    north: u64,
}

impl Geometry {
    fn new(k: usize) -> Geometry {
        let n = k * k;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut west = 0;
        let mut east = 0;
        for row in 0..k {
            west |= 1 << (row * k);
            east |= 1 << (row * k + k - 1);
        }
        let south = (1u64 << k) - 1;
        let north = south << (k * (k - 1));
        Geometry {
            k,
            full,
            west,
            east,
            south,
            north,
        }
    }

    /// All cells adjacent to some cell of `s`, plus `s` itself.
    fn dilate(&self, s: u64) -> u64 {
        let k = self.k as u32;
        let not_east = s & !self.east;
        let not_west = s & !self.west;
        let grown = s
            | (not_east << 1)
            | (not_west >> 1)
            | (s << k)
            | (s >> k)
            | (not_east << (k + 1))
            | (not_west >> (k + 1));
        grown & self.full
    }

    fn connects(&self, stones: u64, from: u64, to: u64) -> bool {
        let mut reach = stones & from;
        loop {
            if reach & to != 0 {
                return true;
            }
            let next = self.dilate(reach) & stones;
            if next == reach {
                return false;
            }
            reach = next;
        }
    }

    fn has_chain(&self, stones: u64, p: Player) -> bool {
        match p {
            Player::H => self.connects(stones, self.west, self.east),
            Player::V => self.connects(stones, self.south, self.north),
        }
    }

    /// Cell indices ordered centre-out, for move ordering.
    fn search_order(&self) -> Vec<usize> {
        let k = self.k as i64;
        let mut order: Vec<usize> = (0..self.k * self.k).collect();
        order.sort_by_key(|&i| {
            let (x, y) = ((i as i64 % k) * 2 - (k - 1), (i as i64 / k) * 2 - (k - 1));
            // hex distance from the centre in doubled lattice units
            let d = if x.signum() == y.signum() { x.abs().max(y.abs()) } else { x.abs() + y.abs() };
            (d, i)
        });
        order
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Position {
    h: u64,
    v: u64,
    mover: Player,
}

impl Position {
    fn from_board(board: &Board) -> Position {
        let mut h = 0;
        let mut v = 0;
        for (i, c) in board.cells().iter().enumerate() {
            match c {
                Cell::H => h |= 1 << i,
                Cell::V => v |= 1 << i,
                Cell::Empty => {}
            }
        }
        Position {
            h,
            v,
            mover: board.to_move(),
        }
    }

    fn stones(&self, p: Player) -> u64 {
        match p {
            Player::H => self.h,
            Player::V => self.v,
        }
    }

    fn play(&self, i: usize) -> Position {
        let mut next = *self;
        match self.mover {
            Player::H => next.h |= 1 << i,
            Player::V => next.v |= 1 << i,
        }
        next.mover = self.mover.opponent();
        next
    }

    fn key(&self, k: usize) -> u64 {
        let mover = match self.mover {
            Player::H => 0,
            Player::V => 1,
        };
        self.h | self.v << STONE_BITS | mover << (2 * STONE_BITS) | (k as u64) << (2 * STONE_BITS + 1)
    }
}

pub struct Solver {
    config: SolverConfig,
    memo: DashMap<u64, bool>,
    nodes: AtomicU64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverConfig::default())
    }
}

impl Solver {
    pub fn new(config: SolverConfig) -> Solver {
        Solver {
            config: SolverConfig {
                max_k: config.max_k.min(HARD_MAX_K),
                ..config
            },
            memo: DashMap::new(),
            nodes: AtomicU64::new(0),
        }
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    /// Number of memoized positions.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check_size(&self, k: usize) -> Result<Geometry, SolveError> {
        if k > self.config.max_k {
            return Err(SolveError::BoardTooLarge {
                k,
                cap: self.config.max_k,
            });
        }
        Ok(Geometry::new(k))
    }

    /// Game-theoretic value of the position for the player to move. Any
    /// coloring is accepted; stone counts are not checked.
    pub fn solve(&self, board: &Board) -> Result<GameValue, SolveError> {
        let geo = self.check_size(board.k())?;
        let order = geo.search_order();
        let mut pos = Position::from_board(board);
        let outcome = if self.mover_wins(&geo, &order, pos, &mut 0)? {
            Outcome::WinForMover
        } else {
            Outcome::LossForMover
        };
        let mut pv = Vec::new();
        while terminal(&geo, pos).is_none() {
            let i = self.best_index(&geo, &order, pos)?;
            pv.push(board.coord(i));
            pos = pos.play(i);
        }
        Ok(GameValue { outcome, pv })
    }

    /// A move achieving the position's value; the lowest `(z2, z1)` among
    /// equally good moves.
    pub fn best_move(&self, board: &Board) -> Result<Coord, SolveError> {
        let geo = self.check_size(board.k())?;
        let pos = Position::from_board(board);
        if terminal(&geo, pos).is_some() || board.is_full() {
            return Err(SolveError::GameOver);
        }
        let order = geo.search_order();
        self.best_index(&geo, &order, pos).map(|i| board.coord(i))
    }

    fn best_index(&self, geo: &Geometry, order: &[usize], pos: Position) -> Result<usize, SolveError> {
        let occupied = pos.h | pos.v;
        let mut first = None;
        for i in (0..geo.k * geo.k).filter(|&i| occupied >> i & 1 == 0) {
            first.get_or_insert(i);
            if !self.mover_wins(geo, order, pos.play(i), &mut 0)? {
                return Ok(i);
            }
        }
        first.ok_or(SolveError::GameOver)
    }

    fn mover_wins(&self, geo: &Geometry, order: &[usize], pos: Position, spent: &mut u64) -> Result<bool, SolveError> {
        if let Some(w) = terminal(geo, pos) {
            return Ok(w == pos.mover);
        }
        let key = pos.key(geo.k);
        if let Some(v) = self.memo.get(&key) {
            return Ok(*v);
        }
        *spent += 1;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(budget) = self.config.node_budget {
            if *spent > budget {
                return Err(SolveError::BudgetExceeded { budget });
            }
        }
        let occupied = pos.h | pos.v;
        let mut win = false;
        for &i in order {
            if occupied >> i & 1 == 0 && !self.mover_wins(geo, order, pos.play(i), spent)? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }

    /// Whether `side` wins the position under perfect play, whoever is to move.
    pub fn wins_for(&self, board: &Board, side: Player) -> Result<bool, SolveError> {
        let v = self.solve_value(board)?;
        Ok((v == Outcome::WinForMover) == (board.to_move() == side))
    }

    fn solve_value(&self, board: &Board) -> Result<Outcome, SolveError> {
        let geo = self.check_size(board.k())?;
        let order = geo.search_order();
        Ok(if self.mover_wins(&geo, &order, Position::from_board(board), &mut 0)? {
            Outcome::WinForMover
        } else {
            Outcome::LossForMover
        })
    }

    pub fn outcome(&self, board: &Board) -> Result<Outcome, SolveError> {
        self.solve_value(board)
    }
}

/// The winner of a position if either side already holds a chain.
fn terminal(geo: &Geometry, pos: Position) -> Option<Player> {
    [Player::H, Player::V]
        .into_iter()
        .find(|&p| geo.has_chain(pos.stones(p), p))
}

pub fn solve(board: &Board) -> Result<GameValue, SolveError> {
    Solver::default().solve(board)
}

pub fn best_move(board: &Board) -> Result<Coord, SolveError> {
    Solver::default().best_move(board)
}

/// Result of the extra-stone check: a position where `side` wins, and the
/// same position with one more `side` stone where it no longer does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub before: Board,
    pub after: Board,
    pub side: Player,
    pub extra: Coord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub k: usize,
    /// Positions (coloring plus player to move) examined.
    pub positions: u64,
    /// `(position, side, extra stone)` triples examined.
    pub extensions: u64,
    pub counterexample: Option<Counterexample>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, over every position reachable by alternating play, that adding a
/// stone of a winning side's colour on any empty cell (same player to move)
/// leaves that side winning.
pub fn check_extra_stone_monotonicity(k: usize) -> Result<MonotonicityReport, SolveError> {
    if k > MONOTONICITY_MAX_K {
        return Err(SolveError::BoardTooLarge {
            k,
            cap: MONOTONICITY_MAX_K,
        });
    }
    let solver = Solver::default();
    let n = k * k;
    let total = 3u64.pow(n as u32);
    let mut report = MonotonicityReport {
        k,
        positions: 0,
        extensions: 0,
        counterexample: None,
    };
    for code in 0..total {
        let mut rest = code;
        let cells: Vec<Cell> = (0..n)
            .map(|_| {
                let c = [Cell::Empty, Cell::H, Cell::V][(rest % 3) as usize];
                rest /= 3;
                c
            })
            .collect();
        for mover in [Player::H, Player::V] {
            let board = Board::from_cells(k, cells.clone(), mover).expect("cell count matches");
            if !board.is_reachable() {
                continue;
            }
            report.positions += 1;
            for side in [Player::H, Player::V] {
                if !solver.wins_for(&board, side)? {
                    continue;
                }
                let empties: Vec<Coord> = board.empty_cells().collect();
                for extra in empties {
                    report.extensions += 1;
                    let mut after = board.clone();
                    after.set(extra, Cell::from(side)).expect("in bounds");
                    if !solver.wins_for(&after, side)? {
                        report.counterexample = Some(Counterexample {
                            before: board,
                            after,
                            side,
                            extra,
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_matches_board_winner() {
        for k in 1..=3 {
            let geo = Geometry::new(k);
            for bits in 0..1u64 << (k * k) {
                let b = Board::from_coloring_bits(k, bits);
                let pos = Position::from_board(&b);
                assert_eq!(terminal(&geo, pos), b.winner(), "k={k} bits={bits:b}");
            }
        }
    }

    #[test]
    fn dilation_matches_adjacency() {
        let k = 4;
        let geo = Geometry::new(k);
        let board = Board::new(k);
        for c in board.coords() {
            let i = board.index(c);
            let grown = geo.dilate(1 << i);
            let mut expected = 1u64 << i;
            for n in board.neighbors(c) {
                expected |= 1 << board.index(n);
            }
            assert_eq!(grown, expected, "{c}");
        }
    }

    #[test]
    fn single_cell_board() {
        let v = solve(&Board::new(1)).unwrap();
        assert_eq!(v.outcome, Outcome::WinForMover);
        assert_eq!(v.pv, vec![Coord::new(1, 1)]);
        assert_eq!(best_move(&Board::new(1)).unwrap(), Coord::new(1, 1));
    }

    #[test]
    fn empty_boards_are_first_player_wins() {
        for k in 1..=3 {
            for first in [Player::H, Player::V] {
                let v = solve(&Board::with_first_player(k, first)).unwrap();
                assert_eq!(v.outcome, Outcome::WinForMover, "k={k} first={first}");
            }
        }
    }

    #[test]
    fn terminal_position_has_empty_pv() {
        // V to move and already holding a North-South chain.
        let b: Board = "k=2\nV.\nVH\nto_move=V\n".parse().unwrap();
        let v = solve(&b).unwrap();
        assert_eq!(v.outcome, Outcome::WinForMover);
        assert!(v.pv.is_empty());
        assert_eq!(best_move(&b), Err(SolveError::GameOver));
        let b: Board = "k=2\nV.\nVH\nto_move=H\n".parse().unwrap();
        assert_eq!(solve(&b).unwrap().outcome, Outcome::LossForMover);
    }

    #[test]
    fn best_move_wins_on_two_by_two() {
        let b = Board::new(2);
        let m = best_move(&b).unwrap();
        let after = b.play(m).unwrap();
        assert_eq!(solve(&after).unwrap().outcome, Outcome::LossForMover);
        let winning: Vec<Coord> = b
            .empty_cells()
            .filter(|&c| solve(&b.play(c).unwrap()).unwrap().outcome == Outcome::LossForMover)
            .collect();
        assert_eq!(m, winning[0]);
    }

    #[test]
    fn size_cap() {
        assert_eq!(
            solve(&Board::new(5)).unwrap_err(),
            SolveError::BoardTooLarge { k: 5, cap: 4 }
        );
        let s = Solver::new(SolverConfig { max_k: 9, node_budget: None });
        assert_eq!(s.config().max_k, HARD_MAX_K);
        assert!(matches!(
            check_extra_stone_monotonicity(4),
            Err(SolveError::BoardTooLarge { k: 4, cap: 3 })
        ));
    }

    #[test]
    fn node_budget_is_enforced() {
        let s = Solver::new(SolverConfig { max_k: 3, node_budget: Some(10) });
        assert_eq!(s.solve(&Board::new(3)).unwrap_err(), SolveError::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn monotonicity_small() {
        let r = check_extra_stone_monotonicity(1).unwrap();
        assert!(r.holds());
        let r = check_extra_stone_monotonicity(2).unwrap();
        assert!(r.holds());
        assert!(r.extensions > 0);
    }
}
