//! The interface graph of a fully coloured board.
//!
//! Tile corners are the triangles of the lattice: every corner is shared by
//! three mutually adjacent tiles, and a tile side is the lattice edge between
//! two adjacent tiles. The board is surrounded by a ring of border faces
//! (`z1 = 0` and `z1 = k + 1` belong to `H`; `z2 = 0` and `z2 = k + 1` belong to
//! `V`). At the two obtuse corners the extra lattice points `(0, 0)` and
//! `(k + 1, k + 1)` are `H` faces; the points `(0, k + 1)` and `(k + 1, 0)`
//! touch no tile and are left out.
//!
//! An edge of the interface graph crosses every tile side lying between an
//! `H` face and a `V` face. Exactly four such sides separate two border faces;
//! each of them leads to one of the boundary nodes `u1..u4`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::board::{Board, Cell, Coord, Player, NEIGHBOR_OFFSETS};
use super::graph::{decompose, Decomposition, SimpleGraph};
use super::HexError;

/// A tile corner, stored as the lattice triangle it corresponds to.
///
/// With base point `(a, b)`, the lower triangle is
/// `{(a, b), (a+1, b), (a+1, b+1)}` and the upper one is
/// `{(a, b), (a, b+1), (a+1, b+1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub b: i64,
    pub a: i64,
    pub upper: bool,
}

impl Corner {
    /// Corner `index` (0..6) of the tile at lattice point `tile`: the corner
    /// between the neighbours in directions `index` and `index + 1` of
    /// [`NEIGHBOR_OFFSETS`].
    pub fn of_tile(tile: (i64, i64), index: usize) -> Corner {
        let d0 = NEIGHBOR_OFFSETS[index % 6];
        let d1 = NEIGHBOR_OFFSETS[(index + 1) % 6];
        let pts = [tile, (tile.0 + d0.0, tile.1 + d0.1), (tile.0 + d1.0, tile.1 + d1.1)];
        Corner::from_points(pts)
    }

    fn from_points(pts: [(i64, i64); 3]) -> Corner {
        let a = pts.iter().map(|p| p.0).min().unwrap();
        let b = pts.iter().map(|p| p.1).min().unwrap();
        Corner {
            a,
            b,
            upper: pts.contains(&(a, b + 1)),
        }
    }

    pub fn vertices(self) -> [(i64, i64); 3] {
        let (a, b) = (self.a, self.b);
        if self.upper {
            [(a, b), (a, b + 1), (a + 1, b + 1)]
        } else {
            [(a, b), (a + 1, b), (a + 1, b + 1)]
        }
    }

    /// Centroid in lattice coordinates, for rendering.
    pub fn centroid(self) -> (f64, f64) {
        let v = self.vertices();
        (
            v.iter().map(|p| p.0 as f64).sum::<f64>() / 3.0,
            v.iter().map(|p| p.1 as f64).sum::<f64>() / 3.0,
        )
    }
}

/// The four boundary nodes, where an `H` border meets a `V` border.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryNode {
    /// `u1`: West meets South.
    U1,
    /// `u2`: West meets North.
    U2,
    /// `u3`: East meets North.
    U3,
    /// `u4`: East meets South.
    U4,
}

impl BoundaryNode {
    pub const ALL: [BoundaryNode; 4] = [BoundaryNode::U1, BoundaryNode::U2, BoundaryNode::U3, BoundaryNode::U4];

    /// The border-to-border tile side this node hangs off.
    fn side(self, k: i64) -> ((i64, i64), (i64, i64)) {
        match self {
            BoundaryNode::U1 => ((0, 0), (1, 0)),
            BoundaryNode::U2 => ((0, k), (1, k + 1)),
            BoundaryNode::U3 => ((k, k + 1), (k + 1, k + 1)),
            BoundaryNode::U4 => ((k, 0), (k + 1, 1)),
        }
    }

    /// Position in lattice coordinates, for rendering.
    pub fn position(self, k: usize) -> (f64, f64) {
        let (p, q) = self.side(k as i64);
        ((p.0 + q.0) as f64 / 2.0, (p.1 + q.1) as f64 / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterfaceNode {
    Corner(Corner),
    Boundary(BoundaryNode),
}

impl InterfaceNode {
    pub fn position(self, k: usize) -> (f64, f64) {
        match self {
            InterfaceNode::Corner(c) => c.centroid(),
            InterfaceNode::Boundary(u) => u.position(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterfaceGraph {
    k: usize,
    nodes: Vec<InterfaceNode>,
    graph: SimpleGraph,
    boundary: [usize; 4],
}

impl InterfaceGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[InterfaceNode] {
        &self.nodes
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn boundary_id(&self, u: BoundaryNode) -> usize {
        self.boundary[u as usize]
    }

    fn boundary_of(&self, id: usize) -> Option<BoundaryNode> {
        match self.nodes[id] {
            InterfaceNode::Boundary(u) => Some(u),
            InterfaceNode::Corner(_) => None,
        }
    }
}

/// Face colour of an extended-lattice point, `None` when it is not a face.
fn face(board: &Board, p: (i64, i64)) -> Option<Player> {
    let k = board.k() as i64;
    let (x, y) = p;
    let inner = |v: i64| (1..=k).contains(&v);
    if inner(x) && inner(y) {
        return board.get(Coord::new(x as usize, y as usize)).ok().and_then(Cell::player);
    }
    if (x == 0 || x == k + 1) && inner(y) {
        return Some(Player::H);
    }
    if (y == 0 || y == k + 1) && inner(x) {
        return Some(Player::V);
    }
    if p == (0, 0) || p == (k + 1, k + 1) {
        return Some(Player::H);
    }
    None
}

/// Builds the interface graph. The board must have no empty cell.
pub fn interface_graph(board: &Board) -> Result<InterfaceGraph, HexError> {
    if !board.is_full() {
        return Err(HexError::BoardNotFull);
    }
    let k = board.k() as i64;
    let is_face = |p: (i64, i64)| face(board, p).is_some();

    let mut ids: BTreeMap<Corner, usize> = BTreeMap::new();
    for b in -1..=k + 1 {
        for a in -1..=k + 1 {
            for upper in [false, true] {
                let c = Corner { a, b, upper };
                if c.vertices().iter().all(|&p| is_face(p)) {
                    ids.insert(c, 0);
                }
            }
        }
    }
    let mut nodes: Vec<InterfaceNode> = Vec::with_capacity(ids.len() + 4);
    for (c, id) in ids.iter_mut() {
        *id = nodes.len();
        nodes.push(InterfaceNode::Corner(*c));
    }
    let mut boundary = [0; 4];
    for u in BoundaryNode::ALL {
        boundary[u as usize] = nodes.len();
        nodes.push(InterfaceNode::Boundary(u));
    }

    let mut graph = SimpleGraph::new(nodes.len());
    for y in 0..=k + 1 {
        for x in 0..=k + 1 {
            let p = (x, y);
            let Some(cp) = face(board, p) else { continue };
            for d in [(1, 0), (0, 1), (1, 1)] {
                let q = (x + d.0, y + d.1);
                match face(board, q) {
                    Some(cq) if cq != cp => {}
                    _ => continue,
                }
                let (t0, t1) = triangles_on_side(p, d);
                let ends = [ids.get(&t0).copied(), ids.get(&t1).copied()];
                let (from, to) = match ends {
                    [Some(i), Some(j)] => (i, j),
                    [Some(i), None] | [None, Some(i)] => {
                        let u = BoundaryNode::ALL
                            .into_iter()
                            .find(|u| u.side(k) == (p, q))
                            .expect("an H/V side leaving the board must be one of the four boundary sides");
                        (i, boundary[u as usize])
                    }
                    [None, None] => unreachable!("mixed side between two non-corners"),
                };
                graph
                    .add_edge(from, to)
                    .expect("each tile side is crossed once");
            }
        }
    }
    Ok(InterfaceGraph {
        k: board.k(),
        nodes,
        graph,
        boundary,
    })
}

/// The two triangles sharing the lattice edge from `p` to `p + d`.
fn triangles_on_side(p: (i64, i64), d: (i64, i64)) -> (Corner, Corner) {
    let (a, b) = p;
    match d {
        (1, 0) => (
            Corner { a, b, upper: false },
            Corner { a, b: b - 1, upper: true },
        ),
        (0, 1) => (
            Corner { a, b, upper: true },
            Corner { a: a - 1, b, upper: false },
        ),
        (1, 1) => (Corner { a, b, upper: false }, Corner { a, b, upper: true }),
        _ => unreachable!("only the three positive half-directions are enumerated"),
    }
}

/// The two boundary-to-boundary paths of a full board's interface graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterfacePaths {
    pub winner: Player,
    pub decomposition: Decomposition,
    /// Node-id sequences, the first starting at `u1`.
    pub paths: [Vec<usize>; 2],
    pub pairs: [(BoundaryNode, BoundaryNode); 2],
}

/// Reads the winner off the interface graph: the path leaving `u1` ends at
/// `u2` when `V` holds a North-South chain and at `u4` when `H` holds an
/// East-West chain.
pub fn interface_paths(board: &Board) -> Result<InterfacePaths, HexError> {
    let g = interface_graph(board)?;
    let decomposition = decompose(g.graph()).map_err(HexError::Graph)?;
    let endpoint_pair = |start: BoundaryNode| -> Result<(Vec<usize>, BoundaryNode), HexError> {
        let id = g.boundary_id(start);
        let path = decomposition
            .path_from(id)
            .ok_or(HexError::InterfaceInconsistent("boundary node is not a path endpoint"))?;
        let mut path = path.to_vec();
        if path[0] != id {
            path.reverse();
        }
        let end = g
            .boundary_of(*path.last().unwrap())
            .ok_or(HexError::InterfaceInconsistent("path from a boundary node ends inside the board"))?;
        Ok((path, end))
    };
    let (first, end) = endpoint_pair(BoundaryNode::U1)?;
    let (winner, other_start, other_end) = match end {
        BoundaryNode::U2 => (Player::V, BoundaryNode::U3, BoundaryNode::U4),
        BoundaryNode::U4 => (Player::H, BoundaryNode::U2, BoundaryNode::U3),
        _ => return Err(HexError::InterfaceInconsistent("u1 is joined to the opposite corner")),
    };
    let (second, second_end) = endpoint_pair(other_start)?;
    if second_end != other_end {
        return Err(HexError::InterfaceInconsistent("second boundary path has the wrong endpoints"));
    }
    Ok(InterfacePaths {
        winner,
        decomposition,
        paths: [first, second],
        pairs: [(BoundaryNode::U1, end), (other_start, other_end)],
    })
}

pub fn winner_via_interface(board: &Board) -> Result<Player, HexError> {
    interface_paths(board).map(|p| p.winner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corner_ids(g: &InterfaceGraph, path: &[usize]) -> Vec<InterfaceNode> {
        path.iter().map(|&i| g.nodes()[i]).collect()
    }

    #[test]
    fn tile_corner_indexing_is_consistent() {
        // Each corner of a tile is shared with the two neighbours that flank it.
        let t = (3, 3);
        for i in 0..6 {
            let c = Corner::of_tile(t, i);
            let d = NEIGHBOR_OFFSETS[i];
            let n = (t.0 + d.0, t.1 + d.1);
            let shared = (0..6).filter(|&j| Corner::of_tile(n, j) == c).count();
            assert_eq!(shared, 1, "corner {i} not found on neighbour");
            assert!(c.vertices().contains(&t));
        }
        let all: std::collections::BTreeSet<_> = (0..6).map(|i| Corner::of_tile(t, i)).collect();
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn single_tile_hand_built() {
        let b = Board::from_cells(1, vec![Cell::H], Player::V).unwrap();
        let g = interface_graph(&b).unwrap();
        // six corners around the tile plus four boundary nodes
        assert_eq!(g.nodes().len(), 10);
        assert_eq!(g.graph().edge_set().len(), 6);
        let p = interface_paths(&b).unwrap();
        assert_eq!(p.winner, Player::H);
        assert_eq!(p.pairs, [(BoundaryNode::U1, BoundaryNode::U4), (BoundaryNode::U2, BoundaryNode::U3)]);
        let first = corner_ids(&g, &p.paths[0]);
        assert_eq!(
            first,
            vec![
                InterfaceNode::Boundary(BoundaryNode::U1),
                InterfaceNode::Corner(Corner::of_tile((1, 1), 4)),
                InterfaceNode::Corner(Corner::of_tile((1, 1), 5)),
                InterfaceNode::Boundary(BoundaryNode::U4),
            ]
        );
        let second = corner_ids(&g, &p.paths[1]);
        assert_eq!(
            second,
            vec![
                InterfaceNode::Boundary(BoundaryNode::U2),
                InterfaceNode::Corner(Corner::of_tile((1, 1), 2)),
                InterfaceNode::Corner(Corner::of_tile((1, 1), 1)),
                InterfaceNode::Boundary(BoundaryNode::U3),
            ]
        );

        let b = Board::from_cells(1, vec![Cell::V], Player::H).unwrap();
        let p = interface_paths(&b).unwrap();
        assert_eq!(p.winner, Player::V);
        assert_eq!(p.pairs, [(BoundaryNode::U1, BoundaryNode::U2), (BoundaryNode::U3, BoundaryNode::U4)]);
    }

    #[test]
    fn all_h_two_by_two() {
        let b = Board::from_cells(2, vec![Cell::H; 4], Player::V).unwrap();
        let g = interface_graph(&b).unwrap();
        for u in BoundaryNode::ALL {
            assert_eq!(g.graph().degree(g.boundary_id(u)), 1);
        }
        // The interface runs along the South row and along the North row only.
        let p = interface_paths(&b).unwrap();
        assert_eq!(p.winner, Player::H);
        for &id in &p.paths[0][1..p.paths[0].len() - 1] {
            let InterfaceNode::Corner(c) = g.nodes()[id] else { panic!() };
            assert!(c.vertices().iter().any(|v| v.1 == 0), "{c:?} off the South side");
        }
        for &id in &p.paths[1][1..p.paths[1].len() - 1] {
            let InterfaceNode::Corner(c) = g.nodes()[id] else { panic!() };
            assert!(c.vertices().iter().any(|v| v.1 == 3), "{c:?} off the North side");
        }
    }

    #[test]
    fn partial_board_rejected() {
        assert_eq!(interface_graph(&Board::new(2)).unwrap_err(), HexError::BoardNotFull);
        assert_eq!(winner_via_interface(&Board::new(1)).unwrap_err(), HexError::BoardNotFull);
    }

    #[test]
    fn degrees_on_every_three_by_three_coloring() {
        for bits in 0..1u64 << 9 {
            let b = Board::from_coloring_bits(3, bits);
            let g = interface_graph(&b).unwrap();
            assert!(g.graph().max_degree() <= 2);
            let ones: Vec<usize> = (0..g.nodes().len()).filter(|&v| g.graph().degree(v) == 1).collect();
            let mut expected: Vec<usize> = BoundaryNode::ALL.iter().map(|&u| g.boundary_id(u)).collect();
            expected.sort();
            assert_eq!(ones, expected);
        }
    }
}
