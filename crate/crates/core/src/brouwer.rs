//! Approximate fixed points on `[0,1]` and on the unit square, and the
//! displacement map that turns a drawn Hex board into a fixed-point-free map.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcspec::{Domain, EvalError, MapSpec};
use crate::hex::{Board, Cell, Coord, Edge, HexError, Player, NEIGHBOR_OFFSETS};

/// Largest lattice side [`fixed_point_2d_hex`] will scan by default.
pub const DEFAULT_MAX_LATTICE: usize = 2048;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BrouwerError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("Lipschitz bound must be finite and nonnegative, got {0}")]
    InvalidModulus(f64),
    #[error("lattice side must be at least 1")]
    InvalidLattice,
    #[error("map is defined on {found}, expected {expected}")]
    WrongDomain { expected: Domain, found: Domain },
    #[error("bisection interval [{lo}, {hi}] collapsed without reaching the tolerance; the map is likely discontinuous")]
    NotConverged { lo: f64, hi: f64 },
    #[error("lattice side {k} exceeds the cap {cap}; eps is too small or the map is not continuous at this scale")]
    ResourceLimit { k: usize, cap: usize },
    #[error("{player} has a winning chain: {}", fmt_path(path))]
    WinningPathExists { player: Player, path: Vec<Coord> },
    #[error("displacement at {at} leaves the board")]
    OutOfBoundsDisplacement { at: Coord },
    #[error(transparent)]
    Board(#[from] HexError),
    #[error(transparent)]
    Map(#[from] EvalError),
}

fn fmt_path(path: &[Coord]) -> String {
    path.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn expect_domain(f: &MapSpec, expected: Domain) -> Result<(), BrouwerError> {
    if f.domain() == expected {
        Ok(())
    } else {
        Err(BrouwerError::WrongDomain {
            expected,
            found: f.domain(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneDimFixedPoint {
    pub x: f64,
    pub residual: f64,
    /// Brackets `(lo, hi)` visited by the bisection, starting with `(0, 1)`.
    pub brackets: Vec<(f64, f64)>,
}

/// Bisection on the sign of `g(x) = f(x) - x`, which is `>= 0` at 0 and
/// `<= 0` at 1 for any map of `[0,1]` into itself.
pub fn fixed_point_1d(f: &MapSpec, tol: f64) -> Result<OneDimFixedPoint, BrouwerError> {
    expect_domain(f, Domain::Interval)?;
    if !(tol > 0.0) {
        return Err(BrouwerError::InvalidTolerance(tol));
    }
    let g = |x: f64| -> Result<f64, BrouwerError> { Ok(f.eval(&[x])?[0] - x) };
    let done = |x: f64, gx: f64, brackets| OneDimFixedPoint {
        x,
        residual: gx.abs(),
        brackets,
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut brackets = vec![(lo, hi)];
    let g0 = g(lo)?;
    if g0.abs() <= tol {
        return Ok(done(lo, g0, brackets));
    }
    let g1 = g(hi)?;
    if g1.abs() <= tol {
        return Ok(done(hi, g1, brackets));
    }
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            return Err(BrouwerError::NotConverged { lo, hi });
        }
        let gm = g(mid)?;
        if gm.abs() <= tol {
            return Ok(done(mid, gm, brackets));
        }
        if gm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        brackets.push((lo, hi));
    }
}

/// Lattice points `z` of `B_k` where `f` moves `z/k` by more than `eps`
/// east, west, north or south.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringSets {
    pub k: usize,
    pub eps: f64,
    pub hplus: BTreeSet<Coord>,
    pub hminus: BTreeSet<Coord>,
    pub vplus: BTreeSet<Coord>,
    pub vminus: BTreeSet<Coord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCounts {
    pub hplus: usize,
    pub hminus: usize,
    pub vplus: usize,
    pub vminus: usize,
    pub uncovered: usize,
}

/// The lattice point `z/k`.
pub fn sample_point(z: Coord, k: usize) -> [f64; 2] {
    [z.z1 as f64 / k as f64, z.z2 as f64 / k as f64]
}

fn lattice(k: usize) -> impl Iterator<Item = Coord> {
    (1..=k).flat_map(move |z2| (1..=k).map(move |z1| Coord::new(z1, z2)))
}

impl CoveringSets {
    pub fn is_covered(&self, z: Coord) -> bool {
        self.hplus.contains(&z) || self.hminus.contains(&z) || self.vplus.contains(&z) || self.vminus.contains(&z)
    }

    /// Uncovered lattice points in scan order (`z2` major).
    pub fn uncovered(&self) -> impl Iterator<Item = Coord> + '_ {
        lattice(self.k).filter(|&z| !self.is_covered(z))
    }

    pub fn counts(&self) -> CoveringCounts {
        CoveringCounts {
            hplus: self.hplus.len(),
            hminus: self.hminus.len(),
            vplus: self.vplus.len(),
            vminus: self.vminus.len(),
            uncovered: self.uncovered().count(),
        }
    }
}

pub fn covering_sets(f: &MapSpec, k: usize, eps: f64) -> Result<CoveringSets, BrouwerError> {
    scan(f, k, eps).map(|(cs, _)| cs)
}

/// Covering sets plus the uncovered point of least residual.
fn scan(f: &MapSpec, k: usize, eps: f64) -> Result<(CoveringSets, Option<(f64, Coord)>), BrouwerError> {
    expect_domain(f, Domain::Square)?;
    if k == 0 {
        return Err(BrouwerError::InvalidLattice);
    }
    if !(eps > 0.0) {
        return Err(BrouwerError::InvalidTolerance(eps));
    }
    let mut cs = CoveringSets {
        k,
        eps,
        hplus: BTreeSet::new(),
        hminus: BTreeSet::new(),
        vplus: BTreeSet::new(),
        vminus: BTreeSet::new(),
    };
    let mut best: Option<(f64, Coord)> = None;
    for z in lattice(k) {
        let p = sample_point(z, k);
        let fp = f.eval(&p)?;
        let (dx, dy) = (fp[0] - p[0], fp[1] - p[1]);
        let mut covered = false;
        for (hit, set) in [
            (dx > eps, &mut cs.hplus),
            (-dx > eps, &mut cs.hminus),
            (dy > eps, &mut cs.vplus),
            (-dy > eps, &mut cs.vminus),
        ] {
            if hit {
                set.insert(z);
                covered = true;
            }
        }
        let r = dx.abs().max(dy.abs());
        if !covered && best.is_none_or(|(b, _)| r < b) {
            best = Some((r, z));
        }
    }
    Ok((cs, best))
}

/// Which pair of opposite sets touched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// The first adjacent pair with one end in `H⁺` and the other in `H⁻` (or
/// the same for `V⁺`/`V⁻`), in scan order.
pub fn find_contiguity(cs: &CoveringSets) -> Option<(Axis, Coord, Coord)> {
    let pairs = [
        (Axis::Horizontal, &cs.hplus, &cs.hminus),
        (Axis::Vertical, &cs.vplus, &cs.vminus),
    ];
    for (axis, plus, minus) in pairs {
        for &z in plus {
            for d in NEIGHBOR_OFFSETS {
                if let Some(w) = z.offset(d, cs.k) {
                    if minus.contains(&w) {
                        return Some((axis, z, w));
                    }
                }
            }
        }
    }
    None
}

/// True when neither `H⁺`/`H⁻` nor `V⁺`/`V⁻` contain an adjacent pair.
pub fn check_noncontiguity(cs: &CoveringSets) -> bool {
    find_contiguity(cs).is_none()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexFixedPoint {
    pub point: [f64; 2],
    pub coord: Coord,
    pub k: usize,
    pub residual: f64,
    pub counts: CoveringCounts,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexSolveOptions {
    /// Lipschitz constant of `f` in the max norm, if known.
    pub lipschitz: Option<f64>,
    pub max_k: usize,
}

impl Default for HexSolveOptions {
    fn default() -> Self {
        HexSolveOptions {
            lipschitz: None,
            max_k: DEFAULT_MAX_LATTICE,
        }
    }
}

/// Lattice side for a map with Lipschitz constant `l`: `ceil(1/δ) + 1` with
/// `δ = min(eps / l, eps)`.
pub fn lattice_for_modulus(eps: f64, l: f64) -> f64 {
    let delta = if l > 0.0 { (eps / l).min(eps) } else { eps };
    (1.0 / delta).ceil() + 1.0
}

/// An `eps`-approximate fixed point of `f` on the unit square, read off the
/// lattice points left uncovered by the four covering sets.
///
/// With a Lipschitz bound the lattice side comes from [`lattice_for_modulus`];
/// otherwise it doubles from 8. Among the uncovered points the one with the
/// smallest residual is returned, ties going to the first in scan order.
pub fn fixed_point_2d_hex(f: &MapSpec, eps: f64, opts: HexSolveOptions) -> Result<HexFixedPoint, BrouwerError> {
    expect_domain(f, Domain::Square)?;
    if !(eps > 0.0) {
        return Err(BrouwerError::InvalidTolerance(eps));
    }
    let mut k = match opts.lipschitz {
        Some(l) if !(l >= 0.0 && l.is_finite()) => return Err(BrouwerError::InvalidModulus(l)),
        Some(l) => {
            let k = lattice_for_modulus(eps, l);
            if k > opts.max_k as f64 {
                return Err(BrouwerError::ResourceLimit {
                    k: k.min(usize::MAX as f64) as usize,
                    cap: opts.max_k,
                });
            }
            k as usize
        }
        None => 8,
    };
    loop {
        if k > opts.max_k {
            return Err(BrouwerError::ResourceLimit { k, cap: opts.max_k });
        }
        let (cs, best) = scan(f, k, eps)?;
        if let Some((residual, coord)) = best {
            return Ok(HexFixedPoint {
                point: sample_point(coord, k),
                coord,
                k,
                residual,
                counts: cs.counts(),
            });
        }
        k *= 2;
    }
}

/// A unit step `±e¹` or `±e²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    East,
    West,
    North,
    South,
}

impl Step {
    pub fn delta(self) -> (i64, i64) {
        match self {
            Step::East => (1, 0),
            Step::West => (-1, 0),
            Step::North => (0, 1),
            Step::South => (0, -1),
        }
    }
}

/// The step map of a drawn board: cells of `H` joined to `W` step east, the
/// rest of `H` west, cells of `V` joined to `S` step north, the rest of `V`
/// south.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementMap {
    pub k: usize,
    pub steps: BTreeMap<Coord, Step>,
}

impl DisplacementMap {
    pub fn image(&self, z: Coord) -> Option<Coord> {
        self.steps.get(&z).and_then(|s| z.offset(s.delta(), self.k))
    }

    pub fn cells_with(&self, step: Step) -> BTreeSet<Coord> {
        self.steps.iter().filter(|(_, &s)| s == step).map(|(&z, _)| z).collect()
    }
}

/// Builds the displacement map of a full coloring with no winning chain.
///
/// Since every full board has a winner, this always ends in
/// [`BrouwerError::WinningPathExists`] for full boards. With `partial` set,
/// empty cells are treated as blocked and left out of the map.
pub fn displacement_map(board: &Board, partial: bool) -> Result<DisplacementMap, BrouwerError> {
    if !partial && !board.is_full() {
        return Err(HexError::BoardNotFull.into());
    }
    for player in [Player::H, Player::V] {
        if let Some(path) = board.winning_path(player) {
            return Err(BrouwerError::WinningPathExists { player, path });
        }
    }
    let k = board.k();
    let west = board.connected_to_edge(Player::H, Edge::W);
    let south = board.connected_to_edge(Player::V, Edge::S);
    let mut steps = BTreeMap::new();
    for z in board.coords() {
        let i = board.index(z);
        let step = match board.get(z)? {
            Cell::Empty => continue,
            Cell::H if west[i] => Step::East,
            Cell::H => Step::West,
            Cell::V if south[i] => Step::North,
            Cell::V => Step::South,
        };
        if z.offset(step.delta(), k).is_none() {
            return Err(BrouwerError::OutOfBoundsDisplacement { at: z });
        }
        steps.insert(z, step);
    }
    Ok(DisplacementMap { k, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::parse;

    fn interval(src: &str) -> MapSpec {
        parse(src, Domain::Interval).unwrap()
    }

    fn square(src: &str) -> MapSpec {
        parse(src, Domain::Square).unwrap()
    }

    #[test]
    fn bisection_examples() {
        let r = fixed_point_1d(&interval("x"), 1e-6).unwrap();
        assert_eq!((r.x, r.residual, r.brackets.len()), (0.0, 0.0, 1));

        let r = fixed_point_1d(&interval("1 - x"), 1e-6).unwrap();
        assert!((r.x - 0.5).abs() <= 1e-6);

        let r = fixed_point_1d(&interval("(x + x * x) / 2"), 1e-6).unwrap();
        assert!(r.residual <= 1e-6);
        assert!(r.x == 0.0 || r.x == 1.0);

        let r = fixed_point_1d(&interval("cos(x)"), 1e-9).unwrap();
        assert!((r.x - 0.739_085_133_215_160_6).abs() < 1e-8);
        for (lo, hi) in r.brackets {
            assert!(lo.cos() - lo >= 0.0 && hi.cos() - hi <= 0.0);
        }
    }

    #[test]
    fn bisection_errors() {
        assert!(matches!(
            fixed_point_1d(&interval("x + 0.5"), 1e-6),
            Err(BrouwerError::Map(EvalError::MapRange { .. }))
        ));
        assert_eq!(fixed_point_1d(&interval("x"), 0.0), Err(BrouwerError::InvalidTolerance(0.0)));
        assert!(matches!(fixed_point_1d(&square("x; y"), 1e-3), Err(BrouwerError::WrongDomain { .. })));
        // a jump across the diagonal: no approximate fixed point at 1e-3
        let jump = interval("0.8 - 0.6 * clamp01((x - 0.5) * 1e300)");
        assert!(matches!(fixed_point_1d(&jump, 1e-3), Err(BrouwerError::NotConverged { .. })));
    }

    #[test]
    fn covering_examples() {
        let cs = covering_sets(&square("x; y"), 7, 0.01).unwrap();
        assert_eq!(cs.counts().uncovered, 49);

        let cs = covering_sets(&square("1; 1"), 10, 0.1).unwrap();
        let expected: BTreeSet<Coord> = lattice(10).filter(|z| z.z1 <= 8).collect();
        assert_eq!(cs.hplus, expected);
        assert!(cs.hminus.is_empty());

        let cs = covering_sets(&square("x; y / 2"), 10, 0.1).unwrap();
        let expected: BTreeSet<Coord> = lattice(10).filter(|z| z.z2 >= 3).collect();
        assert_eq!(cs.vminus, expected);
        assert!(cs.vplus.is_empty() && cs.hplus.is_empty() && cs.hminus.is_empty());
    }

    #[test]
    fn contiguity_negative_control() {
        let mut cs = covering_sets(&square("x; y"), 4, 0.1).unwrap();
        assert!(check_noncontiguity(&cs));
        cs.hplus.insert(Coord::new(2, 2));
        cs.hminus.insert(Coord::new(3, 3));
        assert_eq!(
            find_contiguity(&cs),
            Some((Axis::Horizontal, Coord::new(2, 2), Coord::new(3, 3)))
        );
        // (2,3) and (3,2) are not adjacent on this lattice
        cs.hminus.clear();
        cs.vplus.insert(Coord::new(2, 3));
        cs.vminus.insert(Coord::new(3, 2));
        assert!(check_noncontiguity(&cs));
    }

    #[test]
    fn hex_fixed_point_examples() {
        let r = fixed_point_2d_hex(&square("x; y"), 1e-2, HexSolveOptions::default()).unwrap();
        assert_eq!((r.k, r.residual, r.coord), (8, 0.0, Coord::new(1, 1)));

        let r = fixed_point_2d_hex(&square("1 - x; 1 - y"), 1e-2, HexSolveOptions::default()).unwrap();
        assert!(r.residual <= 1e-2);
        assert!((r.point[0] - 0.5).abs() <= 1e-2 && (r.point[1] - 0.5).abs() <= 1e-2);

        let f = square("(x + 0.5) / 2; (y + 0.25) / 2");
        let opts = HexSolveOptions {
            lipschitz: Some(0.5),
            ..Default::default()
        };
        let r = fixed_point_2d_hex(&f, 1e-3, opts).unwrap();
        assert_eq!(r.k, 1001);
        assert!(r.residual <= 1e-3);
        assert!((r.point[0] - 0.5).abs() <= 1e-3 && (r.point[1] - 0.25).abs() <= 1e-3);
    }

    #[test]
    fn hex_fixed_point_errors() {
        let f = square("(x + 0.5) / 2; (y + 0.25) / 2");
        let tight = HexSolveOptions {
            lipschitz: Some(0.5),
            max_k: 64,
        };
        assert!(matches!(fixed_point_2d_hex(&f, 1e-3, tight), Err(BrouwerError::ResourceLimit { .. })));
        let bad = HexSolveOptions {
            lipschitz: Some(-1.0),
            ..Default::default()
        };
        assert_eq!(fixed_point_2d_hex(&f, 1e-3, bad), Err(BrouwerError::InvalidModulus(-1.0)));
        assert!(matches!(
            fixed_point_2d_hex(&interval("x"), 1e-3, HexSolveOptions::default()),
            Err(BrouwerError::WrongDomain { .. })
        ));
    }

    #[test]
    fn modulus_lattice() {
        assert_eq!(lattice_for_modulus(0.01, 0.5), 101.0);
        assert_eq!(lattice_for_modulus(0.01, 2.0), 201.0);
        assert_eq!(lattice_for_modulus(0.1, 0.0), 11.0);
    }

    #[test]
    fn displacement_single_cell() {
        let b = Board::parse_text("k=1\nH\n").unwrap();
        assert_eq!(
            displacement_map(&b, false),
            Err(BrouwerError::WinningPathExists {
                player: Player::H,
                path: vec![Coord::new(1, 1)]
            })
        );
        assert!(matches!(
            displacement_map(&Board::new(2), false),
            Err(BrouwerError::Board(HexError::BoardNotFull))
        ));
    }

    #[test]
    fn displacement_partial_mode() {
        // H on the west column, V on the south-east cell, the rest blocked.
        let b = Board::parse_text("k=3\nH..\nH..\nH.V\n").unwrap();
        let d = displacement_map(&b, true).unwrap();
        assert_eq!(d.cells_with(Step::East).len(), 3);
        assert_eq!(d.steps.get(&Coord::new(3, 1)), Some(&Step::North));
        assert_eq!(d.image(Coord::new(1, 2)), Some(Coord::new(2, 2)));
        assert_eq!(d.image(Coord::new(2, 2)), None);
    }
}
