//! Request/response shapes and the computations behind them, shared by the
//! CLI's `--json` mode and the HTTP API.

use serde::{Deserialize, Serialize};

use hexpoint_core::brouwer::{covering_sets, fixed_point_2d_hex, CoveringCounts, HexSolveOptions};
use hexpoint_core::funcspec::{lookup, CatalogEntry, Domain, MapSpec};
use hexpoint_core::hex::{interface_graph, interface_paths, Board, BoundaryNode, Cell, InterfaceNode, Player};
use hexpoint_core::sperner::{brouwer_labeling, completely_labeled, subdivide};

use crate::error::{AppError, ErrorCode};

/// Board in the text format plus a cell grid, `cells[z2 - 1][z1 - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoardView {
    pub k: usize,
    pub text: String,
    pub cells: Vec<Vec<String>>,
    pub to_move: Player,
    pub winner: Option<Player>,
}

impl From<&Board> for BoardView {
    fn from(b: &Board) -> Self {
        let k = b.k();
        let cells = (1..=k)
            .map(|z2| {
                (1..=k)
                    .map(|z1| {
                        let c = b.get(hexpoint_core::hex::Coord::new(z1, z2)).unwrap_or(Cell::Empty);
                        c.as_char().to_string()
                    })
                    .collect()
            })
            .collect();
        BoardView {
            k,
            text: b.to_text(),
            cells,
            to_move: b.to_move(),
            winner: b.winner(),
        }
    }
}

/// A map given either as expression text or as a catalog name.
pub fn resolve_map(
    expr: Option<&str>,
    name: Option<&str>,
    domain: Domain,
) -> Result<(MapSpec, Option<CatalogEntry>), AppError> {
    match (expr, name) {
        (Some(src), None) => Ok((MapSpec::parse(src, domain)?, None)),
        (None, Some(name)) => {
            let entry = lookup(name)?;
            if entry.domain != domain {
                return Err(AppError::new(
                    ErrorCode::InvalidInput,
                    format!("catalog map `{}` is defined on {}, expected {domain}", entry.name, entry.domain),
                ));
            }
            Ok((entry.map(), Some(entry)))
        }
        (Some(_), Some(_)) => Err(AppError::new(
            ErrorCode::BadRequest,
            "give either a map expression or a catalog name, not both",
        )),
        (None, None) => Err(AppError::new(ErrorCode::BadRequest, "a map expression or catalog name is required")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedPointRequest {
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub map_name: Option<String>,
    pub eps: f64,
    #[serde(default)]
    pub lipschitz: Option<f64>,
    /// Include the covering-set membership of every lattice point.
    #[serde(default)]
    pub heatmap: bool,
}

/// Lattice points by covering set; each entry is `[z1, z2]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoveringView {
    pub hplus: Vec<[usize; 2]>,
    pub hminus: Vec<[usize; 2]>,
    pub vplus: Vec<[usize; 2]>,
    pub vminus: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedPointResponse {
    pub x: f64,
    pub y: f64,
    pub point: [f64; 2],
    pub coord: [usize; 2],
    pub residual: f64,
    pub k: usize,
    pub covering_counts: CoveringCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringView>,
}

pub fn fixed_point(req: &FixedPointRequest, max_k: usize) -> Result<FixedPointResponse, AppError> {
    let (f, entry) = resolve_map(req.map.as_deref(), req.map_name.as_deref(), Domain::Square)?;
    // a catalog map brings its own Lipschitz bound unless one is given
    let lipschitz = req.lipschitz.or(entry.map(|e| e.lipschitz));
    let r = fixed_point_2d_hex(&f, req.eps, HexSolveOptions { lipschitz, max_k })?;
    let covering = if req.heatmap {
        let cs = covering_sets(&f, r.k, req.eps)?;
        let list = |s: &std::collections::BTreeSet<hexpoint_core::hex::Coord>| s.iter().map(|z| [z.z1, z.z2]).collect();
        Some(CoveringView {
            hplus: list(&cs.hplus),
            hminus: list(&cs.hminus),
            vplus: list(&cs.vplus),
            vminus: list(&cs.vminus),
        })
    } else {
        None
    };
    Ok(FixedPointResponse {
        x: r.point[0],
        y: r.point[1],
        point: r.point,
        coord: [r.coord.z1, r.coord.z2],
        residual: r.residual,
        k: r.k,
        covering_counts: r.counts,
        covering,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpernerRequest {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub map_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LabeledCell {
    pub id: usize,
    pub vertices: Vec<usize>,
    /// Integer lattice coordinates of each vertex; the point is `v / n`.
    pub lattice: Vec<Vec<u32>>,
    pub labels: Vec<usize>,
    pub barycenter: Vec<f64>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpernerResponse {
    pub m: usize,
    pub n: usize,
    pub vertex_count: usize,
    pub cell_count: usize,
    pub count: usize,
    pub completely_labeled_cells: Vec<LabeledCell>,
}

pub fn sperner(req: &SpernerRequest, max_n: usize) -> Result<SpernerResponse, AppError> {
    if req.n > max_n {
        return Err(AppError::new(
            ErrorCode::ResourceLimit,
            format!("n = {} exceeds the configured limit {max_n}", req.n),
        ));
    }
    let (f, _) = resolve_map(req.map.as_deref(), req.map_name.as_deref(), Domain::Simplex(req.m))?;
    let sub = subdivide(req.m, req.n)?;
    let lab = brouwer_labeling(&f, &sub)?;
    let ids = completely_labeled(&sub, &lab)?;
    let cells = ids
        .into_iter()
        .map(|id| {
            let vertices = sub.cell(id).to_vec();
            let bary = sub.barycenter(id);
            Ok(LabeledCell {
                id,
                lattice: vertices.iter().map(|&v| sub.lattice(v).to_vec()).collect(),
                labels: vertices.iter().map(|&v| lab.get(v).expect("every vertex labelled")).collect(),
                residual: f.residual(bary.lambdas())?,
                barycenter: bary.lambdas().to_vec(),
                vertices,
            })
        })
        .collect::<Result<Vec<_>, AppError>>()?;
    Ok(SpernerResponse {
        m: req.m,
        n: req.n,
        vertex_count: sub.vertex_count(),
        cell_count: sub.cell_count(),
        count: cells.len(),
        completely_labeled_cells: cells,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InterfaceNodeView {
    pub id: usize,
    /// `corner` or one of `u1`..`u4`.
    pub kind: String,
    /// Position in lattice coordinates `(z1, z2)`.
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InterfaceView {
    pub winner: Player,
    /// True when empty cells were filled with the winner's stones first.
    pub completed: bool,
    pub board: BoardView,
    pub nodes: Vec<InterfaceNodeView>,
    pub edges: Vec<[usize; 2]>,
    pub paths: Vec<Vec<usize>>,
    pub pairs: Vec<[String; 2]>,
}

fn boundary_name(u: BoundaryNode) -> String {
    format!("u{}", u as usize + 1)
}

/// The interface graph and its two boundary paths. A finished board with
/// empty cells is completed with the winner's stones, which keeps the winner.
pub fn interface_view(board: &Board) -> Result<InterfaceView, AppError> {
    let mut full = board.clone();
    let mut completed = false;
    if !board.is_full() {
        let winner = board.winner().ok_or_else(|| {
            AppError::new(ErrorCode::BoardNotFull, "the game is still running and the board has empty cells")
        })?;
        for c in board.empty_cells() {
            full.set(c, Cell::from(winner))?;
        }
        completed = true;
    }
    let g = interface_graph(&full)?;
    let paths = interface_paths(&full)?;
    let k = full.k();
    let nodes = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, node)| {
            let (x, y) = node.position(k);
            let kind = match node {
                InterfaceNode::Corner(_) => "corner".to_string(),
                InterfaceNode::Boundary(u) => boundary_name(*u),
            };
            InterfaceNodeView { id, kind, x, y }
        })
        .collect();
    Ok(InterfaceView {
        winner: paths.winner,
        completed,
        board: BoardView::from(&full),
        nodes,
        edges: g.graph().edge_set().into_iter().map(|(a, b)| [a, b]).collect(),
        paths: paths.paths.to_vec(),
        pairs: paths.pairs.iter().map(|&(a, b)| [boundary_name(a), boundary_name(b)]).collect(),
    })
}
