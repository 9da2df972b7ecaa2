//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. The logic lives in plain functions so
//! it can be tested natively; the `wasm_bindgen` wrappers only convert errors.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use hexpoint_core::brouwer::{covering_sets, sample_point};
use hexpoint_core::funcspec::{catalog, lookup, Domain, MapSpec};
use hexpoint_core::hex::{interface_graph, interface_paths, Board, Cell, Coord, InterfaceNode, Player};
use hexpoint_core::solver::{Solver, SolverConfig, DEFAULT_MAX_K};
use hexpoint_core::sperner::{brouwer_labeling, completely_labeled, subdivide_with_limits, SubdivisionLimits};

/// Largest Sperner resolution the page will draw.
pub const MAX_DEMO_N: usize = 64;
/// Largest covering-set lattice the page will draw.
pub const MAX_DEMO_LATTICE: usize = 200;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn map_for(src: &str, domain: Domain) -> Result<MapSpec, String> {
    let src = src.trim();
    match lookup(src) {
        Ok(entry) if entry.domain == domain => Ok(entry.map()),
        Ok(entry) => Err(format!("`{}` is a map on {}, expected {domain}", entry.name, entry.domain)),
        Err(_) => MapSpec::parse(src, domain).map_err(err),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BoardJson {
    k: usize,
    /// `rows[z2 - 1]` holds `z1 = 1..k` as characters.
    rows: Vec<String>,
    to_move: Player,
    winner: Option<Player>,
    path: Vec<Coord>,
}

fn board_json(b: &Board) -> BoardJson {
    let k = b.k();
    let rows = (1..=k)
        .map(|z2| {
            (1..=k)
                .map(|z1| b.get(Coord::new(z1, z2)).unwrap_or(Cell::Empty).as_char())
                .collect()
        })
        .collect();
    let winner = b.winner();
    BoardJson {
        k,
        rows,
        to_move: b.to_move(),
        winner,
        path: winner.and_then(|p| b.winning_path(p)).unwrap_or_default(),
    }
}

/// A game where the human plays `H` and, optionally, the solver answers as `V`.
pub struct Game {
    board: Board,
    solver: Option<Solver>,
}

impl Game {
    pub fn new(k: usize, vs_solver: bool) -> Result<Game, String> {
        if k == 0 {
            return Err("board side must be at least 1".into());
        }
        let cap = if vs_solver { DEFAULT_MAX_K } else { 11 };
        if k > cap {
            return Err(format!("board side {k} exceeds the limit {cap}"));
        }
        let solver = vs_solver.then(|| {
            Solver::new(SolverConfig {
                max_k: DEFAULT_MAX_K,
                node_budget: None,
            })
        });
        Ok(Game {
            board: Board::new(k),
            solver,
        })
    }

    pub fn state(&self) -> String {
        serde_json::to_string(&board_json(&self.board)).expect("board serializes")
    }

    pub fn play(&mut self, z1: usize, z2: usize) -> Result<String, String> {
        if let Some(w) = self.board.winner() {
            return Err(format!("the game is over; {w} has won"));
        }
        self.board = self.board.play(Coord::new(z1, z2)).map_err(err)?;
        let mut reply = None;
        if let Some(solver) = &self.solver {
            if self.board.winner().is_none() && !self.board.is_full() {
                let mv = solver.best_move(&self.board).map_err(err)?;
                self.board = self.board.play(mv).map_err(err)?;
                reply = Some(mv);
            }
        }
        Ok(json!({ "board": board_json(&self.board), "solverMove": reply }).to_string())
    }

    /// Interface graph of the finished game, with empty cells filled by the
    /// winner. Positions are in lattice coordinates.
    pub fn interface(&self) -> Result<String, String> {
        let winner = self.board.winner().ok_or("the game is still running")?;
        let mut full = self.board.clone();
        for c in self.board.empty_cells() {
            full.set(c, Cell::from(winner)).map_err(err)?;
        }
        let g = interface_graph(&full).map_err(err)?;
        let paths = interface_paths(&full).map_err(err)?;
        let k = full.k();
        let nodes: Vec<_> = g
            .nodes()
            .iter()
            .map(|n| {
                let (x, y) = n.position(k);
                json!({ "x": x, "y": y, "boundary": matches!(n, InterfaceNode::Boundary(_)) })
            })
            .collect();
        let edges: Vec<[usize; 2]> = g.graph().edge_set().into_iter().map(|(a, b)| [a, b]).collect();
        Ok(json!({
            "winner": paths.winner,
            "board": board_json(&full),
            "nodes": nodes,
            "edges": edges,
            "paths": paths.paths,
        })
        .to_string())
    }
}

/// Tags each lattice point `z/k` of the square with the covering set it lies
/// in (`H+`, `H-`, `V+`, `V-`, or `.` when uncovered) and reports the
/// uncovered point of least residual.
pub fn covering_heatmap(map: &str, k: usize, eps: f64) -> Result<String, String> {
    if k == 0 || k > MAX_DEMO_LATTICE {
        return Err(format!("lattice side must be in 1..={MAX_DEMO_LATTICE}"));
    }
    let f = map_for(map, Domain::Square)?;
    let cs = covering_sets(&f, k, eps).map_err(err)?;
    let tag = |z: Coord| {
        if cs.hplus.contains(&z) {
            "H+"
        } else if cs.hminus.contains(&z) {
            "H-"
        } else if cs.vplus.contains(&z) {
            "V+"
        } else if cs.vminus.contains(&z) {
            "V-"
        } else {
            "."
        }
    };
    let rows: Vec<Vec<&str>> = (1..=k).map(|z2| (1..=k).map(|z1| tag(Coord::new(z1, z2))).collect()).collect();
    let mut best: Option<(f64, [f64; 2])> = None;
    for z in cs.uncovered() {
        let p = sample_point(z, k);
        let r = f.residual(&p).map_err(err)?;
        if best.map_or(true, |(b, _)| r < b) {
            best = Some((r, p));
        }
    }
    Ok(json!({
        "k": k,
        "eps": eps,
        "rows": rows,
        "counts": cs.counts(),
        "best": best.map(|(r, p)| json!({ "point": p, "residual": r })),
    })
    .to_string())
}

/// Brouwer labeling of the `n`-th subdivision of the triangle, with its
/// completely labeled cells.
pub fn sperner_triangle(map: &str, n: usize) -> Result<String, String> {
    if n == 0 || n > MAX_DEMO_N {
        return Err(format!("subdivision must be in 1..={MAX_DEMO_N}"));
    }
    let f = map_for(map, Domain::Simplex(2))?;
    let sub = subdivide_with_limits(2, n, SubdivisionLimits::default()).map_err(err)?;
    let lab = brouwer_labeling(&f, &sub).map_err(err)?;
    let complete = completely_labeled(&sub, &lab).map_err(err)?;
    let vertices: Vec<_> = (0..sub.vertex_count())
        .map(|v| json!({ "point": sub.point(v).lambdas(), "label": lab.get(v) }))
        .collect();
    Ok(json!({
        "n": n,
        "vertices": vertices,
        "cells": sub.cells(),
        "complete": complete,
    })
    .to_string())
}

/// Catalog names usable on the given domain: `square` or `triangle`.
pub fn catalog_names(domain: &str) -> Vec<String> {
    let want = match domain {
        "square" => Domain::Square,
        "triangle" => Domain::Simplex(2),
        _ => return Vec::new(),
    };
    catalog().into_iter().filter(|e| e.domain == want).map(|e| e.name).collect()
}

#[wasm_bindgen]
pub struct HexGame(Game);

#[wasm_bindgen]
impl HexGame {
    #[wasm_bindgen(constructor)]
    pub fn new(k: usize, vs_solver: bool) -> Result<HexGame, JsError> {
        Game::new(k, vs_solver).map(HexGame).map_err(|e| JsError::new(&e))
    }

    pub fn state(&self) -> String {
        self.0.state()
    }

    pub fn play(&mut self, z1: usize, z2: usize) -> Result<String, JsError> {
        self.0.play(z1, z2).map_err(|e| JsError::new(&e))
    }

    pub fn interface(&self) -> Result<String, JsError> {
        self.0.interface().map_err(|e| JsError::new(&e))
    }
}

#[wasm_bindgen(js_name = coveringHeatmap)]
pub fn covering_heatmap_js(map: &str, k: usize, eps: f64) -> Result<String, JsError> {
    covering_heatmap(map, k, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spernerTriangle)]
pub fn sperner_triangle_js(map: &str, n: usize) -> Result<String, JsError> {
    sperner_triangle(map, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = catalogNames)]
pub fn catalog_names_js(domain: &str) -> Vec<String> {
    catalog_names(domain)
}
