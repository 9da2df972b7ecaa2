use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hexpoint_core::brouwer::fixed_point_1d;
use hexpoint_core::funcspec::Domain;
use hexpoint_core::hex::{winner_via_interface, Board, Player};
use hexpoint_core::solver::{check_extra_stone_monotonicity, Solver, SolverConfig, HARD_MAX_K};
use hexpoint_core::sperner::subdivide;

use crate::api::{self, Config};
use crate::error::{AppError, ErrorCode};
use crate::ops::{self, FixedPointRequest, SpernerRequest};

/// Largest side `hexcheck` will enumerate (2^25 colorings).
pub const HEXCHECK_MAX_K: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "hexpoint", version, about = "Hex boards, Sperner labelings and approximate Brouwer fixed points")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct MapArg {
    /// Map expression, one coordinate per `;`-separated expression.
    #[arg(long)]
    pub map: Option<String>,
    /// Name of a built-in catalog map.
    #[arg(long = "map-name")]
    pub map_name: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the winner of a board file.
    Winner { boardfile: PathBuf },
    /// Solve a position with perfect play.
    Solve {
        #[arg(long)]
        k: Option<usize>,
        /// Solve the position in this board file instead of the empty board.
        #[arg(long)]
        board: Option<PathBuf>,
        /// Stop after this many searched nodes.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check that an extra stone never hurts its owner, over all positions.
    Monotonicity {
        #[arg(long)]
        k: usize,
    },
    /// Fixed point of a map of [0,1] by bisection.
    Fixedpoint1d {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Fixed point of a map of the unit square via the Hex covering sets.
    Fixedpoint2d {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        /// Lipschitz constant of the map in the max norm.
        #[arg(long)]
        lipschitz: Option<f64>,
    },
    /// Completely labeled cells of the Brouwer labeling of a subdivided simplex.
    Sperner {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        map: MapArg,
        /// Also print the subdivision in the `v`/`c` dump format.
        #[arg(long)]
        dump: bool,
    },
    /// Exhaustively check that every full board has exactly one winner.
    Hexcheck {
        #[arg(long)]
        k: usize,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

/// A finished command: text for people, JSON for `--json`.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("response types serialize")
}

fn read_board(path: &PathBuf) -> Result<Board, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::new(ErrorCode::NotFound, format!("{}: {e}", path.display())))?;
    Ok(Board::parse_text(&text)?)
}

fn winner(path: &PathBuf) -> Result<Output, AppError> {
    let board = read_board(path)?;
    let winner = board.winner();
    let chain = winner.and_then(|p| board.winning_path(p)).unwrap_or_default();
    let via_interface = if board.is_full() {
        Some(winner_via_interface(&board)?)
    } else {
        None
    };
    let text = match winner {
        Some(p) => {
            let cells: Vec<String> = chain.iter().map(|c| c.to_string()).collect();
            format!("winner: {p}\nchain: {}", cells.join(" "))
        }
        None => "winner: none (the board has no connecting chain yet)".to_string(),
    };
    let json = json!({
        "k": board.k(),
        "winner": winner,
        "chain": chain.iter().map(|c| [c.z1, c.z2]).collect::<Vec<_>>(),
        "full": board.is_full(),
        "interfaceWinner": via_interface,
    });
    Ok(Output { text, json })
}

fn solve(k: Option<usize>, board: Option<&PathBuf>, budget: Option<u64>) -> Result<Output, AppError> {
    let board = match (k, board) {
        (Some(k), None) if k >= 1 => Board::new(k),
        (Some(_), None) => return Err(AppError::new(ErrorCode::InvalidInput, "--k must be at least 1")),
        (None, Some(path)) => read_board(path)?,
        _ => return Err(AppError::new(ErrorCode::BadRequest, "give exactly one of --k or --board")),
    };
    let solver = Solver::new(SolverConfig {
        max_k: HARD_MAX_K,
        node_budget: budget,
    });
    let value = solver.solve(&board)?;
    let pv: Vec<[usize; 2]> = value.pv.iter().map(|c| [c.z1, c.z2]).collect();
    let line: Vec<String> = value.pv.iter().map(|c| c.to_string()).collect();
    let text = format!(
        "k={} mover={}: {:?}\nprincipal variation: {}",
        board.k(),
        board.to_move(),
        value.outcome,
        line.join(" ")
    );
    let json = json!({
        "k": board.k(),
        "mover": board.to_move(),
        "outcome": value.outcome,
        "bestMove": pv.first(),
        "pv": pv,
    });
    Ok(Output { text, json })
}

fn monotonicity(k: usize) -> Result<Output, AppError> {
    let report = check_extra_stone_monotonicity(k)?;
    let text = match &report.counterexample {
        None => format!(
            "k={k}: monotonicity holds over {} positions and {} extra stones",
            report.positions, report.extensions
        ),
        Some(c) => format!(
            "k={k}: counterexample for {} at {}\nbefore:\n{}after:\n{}",
            c.side,
            c.extra,
            c.before.to_text(),
            c.after.to_text()
        ),
    };
    let json = json!({
        "k": k,
        "holds": report.holds(),
        "positions": report.positions,
        "extensions": report.extensions,
        "counterexample": report.counterexample.as_ref().map(|c| json!({
            "side": c.side,
            "extra": [c.extra.z1, c.extra.z2],
            "before": c.before.to_text(),
            "after": c.after.to_text(),
        })),
    });
    Ok(Output { text, json })
}

fn fixedpoint1d(map: &MapArg, tol: f64) -> Result<Output, AppError> {
    let (f, _) = ops::resolve_map(map.map.as_deref(), map.map_name.as_deref(), Domain::Interval)?;
    let r = fixed_point_1d(&f, tol)?;
    let iterations = r.brackets.len() - 1;
    Ok(Output {
        text: format!("x = {} (residual {:e}, {iterations} bisection steps)", r.x, r.residual),
        json: json!({ "x": r.x, "residual": r.residual, "iterations": iterations }),
    })
}

fn fixedpoint2d(map: &MapArg, eps: f64, lipschitz: Option<f64>) -> Result<Output, AppError> {
    let req = FixedPointRequest {
        map: map.map.clone(),
        map_name: map.map_name.clone(),
        eps,
        lipschitz,
        heatmap: false,
    };
    let r = ops::fixed_point(&req, Config::default().max_lattice)?;
    let c = &r.covering_counts;
    let text = format!(
        "point = ({}, {}) at lattice z = ({}, {}), k = {}\nresidual = {:e}\ncovering: H+ {} H- {} V+ {} V- {}, uncovered {}",
        r.x, r.y, r.coord[0], r.coord[1], r.k, r.residual, c.hplus, c.hminus, c.vplus, c.vminus, c.uncovered
    );
    Ok(Output { text, json: to_json(&r) })
}

fn sperner(m: usize, n: usize, map: &MapArg, dump: bool) -> Result<Output, AppError> {
    let req = SpernerRequest {
        m,
        n,
        map: map.map.clone(),
        map_name: map.map_name.clone(),
    };
    let r = ops::sperner(&req, Config::from_env()?.max_n)?;
    let mut text = format!(
        "m={m} n={n}: {} vertices, {} cells, {} completely labeled",
        r.vertex_count, r.cell_count, r.count
    );
    for c in &r.completely_labeled_cells {
        let bary: Vec<String> = c.barycenter.iter().map(|v| format!("{v:.6}")).collect();
        text.push_str(&format!(
            "\n  cell {}: vertices {:?}, barycenter ({}), residual {:e}",
            c.id,
            c.lattice,
            bary.join(", "),
            c.residual
        ));
    }
    let mut json = to_json(&r);
    if dump {
        let d = subdivide(m, n)?.dump();
        text.push('\n');
        text.push_str(d.trim_end());
        json["dump"] = Value::String(d);
    }
    Ok(Output { text, json })
}

fn hexcheck(k: usize) -> Result<Output, AppError> {
    if k == 0 {
        return Err(AppError::new(ErrorCode::InvalidInput, "--k must be at least 1"));
    }
    if k > HEXCHECK_MAX_K {
        return Err(AppError::new(
            ErrorCode::ResourceLimit,
            format!("k = {k} means 2^{} colorings; the limit is k = {HEXCHECK_MAX_K}", k * k),
        ));
    }
    let total = 1u64 << (k * k);
    let (mut h_wins, mut v_wins, mut draws, mut double) = (0u64, 0u64, 0u64, 0u64);
    for bits in 0..total {
        let b = Board::from_coloring_bits(k, bits);
        match (b.has_chain(Player::H), b.has_chain(Player::V)) {
            (true, false) => h_wins += 1,
            (false, true) => v_wins += 1,
            (false, false) => draws += 1,
            (true, true) => double += 1,
        }
    }
    let ok = h_wins + v_wins;
    let mut text = format!("{ok}/{total} colorings: exactly one winner");
    if ok != total {
        text.push_str(&format!(" ({draws} draws, {double} double wins)"));
    }
    let json = json!({
        "k": k, "colorings": total, "hWins": h_wins, "vWins": v_wins,
        "draws": draws, "doubleWins": double, "ok": ok == total,
    });
    Ok(Output { text, json })
}

/// Runs every subcommand except `serve`.
pub fn execute(cli: &Cli) -> Result<Output, AppError> {
    match &cli.command {
        Command::Winner { boardfile } => winner(boardfile),
        Command::Solve { k, board, budget } => solve(*k, board.as_ref(), *budget),
        Command::Monotonicity { k } => monotonicity(*k),
        Command::Fixedpoint1d { map, tol } => fixedpoint1d(map, *tol),
        Command::Fixedpoint2d { map, eps, lipschitz } => fixedpoint2d(map, *eps, *lipschitz),
        Command::Sperner { m, n, map, dump } => sperner(*m, *n, map, *dump),
        Command::Hexcheck { k } => hexcheck(*k),
        Command::Serve { .. } => Err(AppError::new(ErrorCode::BadRequest, "serve is not a one-shot command")),
    }
}

fn report(err: &AppError, as_json: bool) -> ExitCode {
    if as_json {
        eprintln!("{}", serde_json::to_string(&err.body()).expect("error body serializes"));
    } else {
        eprintln!("error[{}]: {}", err.code.as_str(), err.message);
    }
    ExitCode::from(err.code.exit_code())
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, host } = cli.command {
        let result = Config::from_env().and_then(|config| {
            let runtime = tokio::runtime::Runtime::new()?;
            let addr = SocketAddr::new(host, port);
            eprintln!("hexpoint listening on http://{addr} (data in {})", config.data_dir.display());
            runtime.block_on(api::serve(addr, config))
        });
        return match result {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => report(&e, cli.json),
        };
    }
    match execute(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json output")
            } else {
                out.text
            };
            // a closed pipe (`| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => report(&e, cli.json),
    }
}
