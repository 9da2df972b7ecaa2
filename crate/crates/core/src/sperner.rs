//! Simplicial subdivisions of the standard simplex, proper labelings,
//! completely labeled cells, and fixed points found through them.
//!
//! The subdivision is the Kuhn (Freudenthal) triangulation of the dilated
//! simplex `n * Δ_m`. A lattice vertex `v` (nonnegative integers summing to
//! `n`) is mapped to tail sums `s_j = v_j + ... + v_m`, `j = 1..m`, which range
//! over the staircase region `n >= s_1 >= ... >= s_m >= 0`. That region is a
//! union of Kuhn simplices `b, b + e_π(1), ..., b + e_π(1) + ... + e_π(m)`, and
//! those are the cells. There are `C(n + m, m)` vertices and `n^m` cells, and
//! the mesh in barycentric max-norm is `1 / n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::funcspec::{Domain, EvalError, MapSpec};

/// Tolerance for barycentric coordinates given as floats.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpernerError {
    #[error("invalid simplex point {0:?}: coordinates must be nonnegative and sum to 1")]
    InvalidPoint(Vec<f64>),
    #[error("dimension m={m} and resolution n={n} must both be at least 1")]
    InvalidSize { m: usize, n: usize },
    #[error("subdivision with {vertices} vertices and {cells} cells exceeds the configured limits")]
    ResourceLimit { vertices: u128, cells: u128 },
    #[error("vertex {0} has no label")]
    MissingLabel(usize),
    #[error("label {label} at vertex {vertex} is not in the vertex's support")]
    ImproperLabeling { vertex: usize, label: usize },
    #[error("map is defined on {found}, expected the {expected}-simplex")]
    WrongDomain { expected: usize, found: Domain },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("contraction constant must lie in [0, 1), got {0}")]
    InvalidContraction(f64),
    #[error(transparent)]
    Map(#[from] EvalError),
}

/// A point of the standard simplex in barycentric coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    lambdas: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(lambdas: Vec<f64>) -> Result<SimplexPoint, SpernerError> {
        let sum: f64 = lambdas.iter().sum();
        if lambdas.is_empty() || lambdas.iter().any(|&l| !(l >= 0.0)) || (sum - 1.0).abs() > SUPPORT_TOL {
            return Err(SpernerError::InvalidPoint(lambdas));
        }
        Ok(SimplexPoint { lambdas })
    }

    pub fn barycenter(m: usize) -> SimplexPoint {
        SimplexPoint {
            lambdas: vec![1.0 / (m + 1) as f64; m + 1],
        }
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len() - 1
    }
}

/// Indices with a strictly positive coordinate (above [`SUPPORT_TOL`]).
pub fn support(p: &SimplexPoint) -> BTreeSet<usize> {
    p.lambdas
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > SUPPORT_TOL)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdivisionLimits {
    pub max_vertices: u128,
    pub max_cells: u128,
}

impl Default for SubdivisionLimits {
    fn default() -> Self {
        SubdivisionLimits {
            max_vertices: 4_000_000,
            max_cells: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    m: usize,
    n: usize,
    /// Integer lattice coordinates; the barycentric point is `v / n`.
    vertices: Vec<Vec<u32>>,
    /// Each cell lists its `m + 1` vertex ids along the Kuhn path.
    cells: Vec<Vec<usize>>,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Tail-sum coordinates back to lattice coordinates.
fn lattice_from_tail_sums(s: &[u32], n: u32) -> Vec<u32> {
    let m = s.len();
    let mut v = Vec::with_capacity(m + 1);
    v.push(n - s[0]);
    for j in 0..m {
        let next = if j + 1 < m { s[j + 1] } else { 0 };
        v.push(s[j] - next);
    }
    v
}

fn in_staircase(s: &[u32], n: u32) -> bool {
    s[0] <= n && s.windows(2).all(|w| w[0] >= w[1])
}

pub fn subdivide(m: usize, n: usize) -> Result<Subdivision, SpernerError> {
    subdivide_with_limits(m, n, SubdivisionLimits::default())
}

pub fn subdivide_with_limits(m: usize, n: usize, limits: SubdivisionLimits) -> Result<Subdivision, SpernerError> {
    if m == 0 || n == 0 {
        return Err(SpernerError::InvalidSize { m, n });
    }
    let vertex_count = binomial((n + m) as u128, m as u128);
    let cell_count = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if vertex_count > limits.max_vertices || cell_count > limits.max_cells {
        return Err(SpernerError::ResourceLimit {
            vertices: vertex_count,
            cells: cell_count,
        });
    }
    let n32 = n as u32;

    // Vertices in lexicographic order of their tail sums.
    let mut vertices = Vec::with_capacity(vertex_count as usize);
    let mut index: HashMap<Vec<u32>, usize> = HashMap::with_capacity(vertex_count as usize);
    let mut s = vec![0u32; m];
    loop {
        if in_staircase(&s, n32) {
            index.insert(s.clone(), vertices.len());
            vertices.push(lattice_from_tail_sums(&s, n32));
        }
        // odometer over [0, n]^m
        let mut j = m;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if s[j] < n32 {
                s[j] += 1;
                s[j + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            if j == 0 {
                j = usize::MAX;
                break;
            }
        }
        if j == usize::MAX {
            break;
        }
    }

    let perms = permutations(m);
    let mut cells = Vec::with_capacity(cell_count as usize);
    let mut base = vec![0u32; m];
    'bases: loop {
        for perm in &perms {
            let mut w = base.clone();
            let mut ids = Vec::with_capacity(m + 1);
            let mut ok = true;
            for step in 0..=m {
                if step > 0 {
                    w[perm[step - 1]] += 1;
                }
                match index.get(&w) {
                    Some(&id) => ids.push(id),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                cells.push(ids);
            }
        }
        let mut j = m;
        while j > 0 {
            j -= 1;
            if base[j] + 1 < n32 {
                base[j] += 1;
                base[j + 1..].iter_mut().for_each(|x| *x = 0);
                continue 'bases;
            }
        }
        break;
    }
    debug_assert_eq!(vertices.len() as u128, vertex_count);
    debug_assert_eq!(cells.len() as u128, cell_count);
    Ok(Subdivision { m, n, vertices, cells })
}

impl Subdivision {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn lattice(&self, id: usize) -> &[u32] {
        &self.vertices[id]
    }

    pub fn cell(&self, id: usize) -> &[usize] {
        &self.cells[id]
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn point(&self, id: usize) -> SimplexPoint {
        let n = self.n as f64;
        SimplexPoint {
            lambdas: self.vertices[id].iter().map(|&v| v as f64 / n).collect(),
        }
    }

    /// Exact support of a lattice vertex.
    pub fn vertex_support(&self, id: usize) -> BTreeSet<usize> {
        self.vertices[id]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn barycenter(&self, cell: usize) -> SimplexPoint {
        let ids = &self.cells[cell];
        let scale = (self.n * ids.len()) as f64;
        let lambdas = (0..=self.m)
            .map(|i| ids.iter().map(|&v| self.vertices[v][i] as f64).sum::<f64>() / scale)
            .collect();
        SimplexPoint { lambdas }
    }

    /// Largest barycentric max-norm distance between two vertices of a cell.
    pub fn mesh(&self) -> f64 {
        let mut widest = 0u32;
        for cell in &self.cells {
            for (i, &a) in cell.iter().enumerate() {
                for &b in &cell[i + 1..] {
                    let d = self.vertices[a]
                        .iter()
                        .zip(&self.vertices[b])
                        .map(|(x, y)| x.abs_diff(*y))
                        .max()
                        .unwrap_or(0);
                    widest = widest.max(d);
                }
            }
        }
        widest as f64 / self.n as f64
    }

    /// Debug dump: `v <id> <v0..vm>` lines, then `c <id> <vid0..vidm>` lines.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, v) in self.vertices.iter().enumerate() {
            let _ = write!(out, "v {id}");
            for x in v {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
        for (id, c) in self.cells.iter().enumerate() {
            let _ = write!(out, "c {id}");
            for x in c {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
        out
    }
}

/// Vertex labels, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    labels: Vec<Option<usize>>,
}

impl Labeling {
    pub fn new(labels: Vec<Option<usize>>) -> Labeling {
        Labeling { labels }
    }

    pub fn from_labels(labels: Vec<usize>) -> Labeling {
        Labeling {
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    pub fn get(&self, vertex: usize) -> Option<usize> {
        self.labels.get(vertex).copied().flatten()
    }

    fn label(&self, vertex: usize) -> Result<usize, SpernerError> {
        self.get(vertex).ok_or(SpernerError::MissingLabel(vertex))
    }
}

fn first_improper(sub: &Subdivision, lab: &Labeling) -> Result<Option<(usize, usize)>, SpernerError> {
    for v in 0..sub.vertex_count() {
        let l = lab.label(v)?;
        if l >= sub.vertices[v].len() || sub.vertices[v][l] == 0 {
            return Ok(Some((v, l)));
        }
    }
    Ok(None)
}

/// Whether every vertex's label lies in its support.
pub fn check_proper(sub: &Subdivision, lab: &Labeling) -> Result<bool, SpernerError> {
    Ok(first_improper(sub, lab)?.is_none())
}

/// Ids of all cells whose vertex labels are exactly `{0, ..., m}`.
pub fn completely_labeled(sub: &Subdivision, lab: &Labeling) -> Result<Vec<usize>, SpernerError> {
    if let Some((vertex, label)) = first_improper(sub, lab)? {
        return Err(SpernerError::ImproperLabeling { vertex, label });
    }
    let full = (1u64 << (sub.m + 1)) - 1;
    let found: Vec<usize> = sub
        .cells
        .iter()
        .enumerate()
        .filter(|(_, cell)| cell.iter().fold(0u64, |acc, &v| acc | 1 << lab.labels[v].unwrap()) == full)
        .map(|(id, _)| id)
        .collect();
    debug_assert!(found.len() % 2 == 1, "a proper labeling has an odd number of complete cells");
    Ok(found)
}

fn check_simplex_map(f: &MapSpec, m: usize) -> Result<(), SpernerError> {
    match f.domain() {
        Domain::Simplex(d) if d == m => Ok(()),
        other => Err(SpernerError::WrongDomain { expected: m, found: other }),
    }
}

/// The least index `i` in the support of `v` with `f_i(v) <= v_i`.
pub fn brouwer_label(f: &MapSpec, v: &SimplexPoint) -> Result<usize, SpernerError> {
    check_simplex_map(f, v.dim())?;
    let fv = f.eval(v.lambdas())?;
    let chi = support(v);
    if let Some(&i) = chi.iter().find(|&&i| fv[i] <= v.lambdas[i]) {
        return Ok(i);
    }
    // Only reachable through rounding: the sum of f(v) exceeds 1 by less than
    // the range tolerance. Take the coordinate with the smallest excess.
    let i = chi
        .into_iter()
        .min_by(|&a, &b| (fv[a] - v.lambdas[a]).total_cmp(&(fv[b] - v.lambdas[b])))
        .expect("support of a simplex point is nonempty");
    Ok(i)
}

/// Labels every vertex of `sub` with [`brouwer_label`].
pub fn brouwer_labeling(f: &MapSpec, sub: &Subdivision) -> Result<Labeling, SpernerError> {
    check_simplex_map(f, sub.m)?;
    let labels = (0..sub.vertex_count())
        .map(|v| brouwer_label(f, &sub.point(v)).map(Some))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Labeling { labels })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpernerFixedPoint {
    pub point: SimplexPoint,
    pub residual: f64,
    /// Resolution of the subdivision the point came from.
    pub n: usize,
    /// Vertex ids of the completely labeled cell whose barycenter was returned.
    pub cell: Vec<usize>,
    /// Number of completely labeled cells at that resolution.
    pub completely_labeled: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpernerOptions {
    /// Max-norm contraction constant `c < 1` of `f`, if known. The residual
    /// target becomes `eps * (1 - c)`, which puts the returned point within
    /// `eps` of the unique fixed point.
    pub contraction: Option<f64>,
    pub limits: SubdivisionLimits,
}

/// An approximate fixed point of `f` on the simplex with max-norm residual
/// at most `eps`.
///
/// Resolutions `n = 1, 2, 4, ...` are tried in turn. At each one the vertices
/// get the Brouwer labeling, and among the completely labeled cells the one
/// whose barycenter has the smallest residual is kept. The search stops as
/// soon as that residual is within `eps`.
pub fn fixed_point_sperner(f: &MapSpec, eps: f64) -> Result<SpernerFixedPoint, SpernerError> {
    fixed_point_sperner_with(f, eps, SpernerOptions::default())
}

pub fn fixed_point_sperner_with(f: &MapSpec, eps: f64, opts: SpernerOptions) -> Result<SpernerFixedPoint, SpernerError> {
    let m = match f.domain() {
        Domain::Simplex(m) if m >= 1 => m,
        other => return Err(SpernerError::WrongDomain { expected: 2, found: other }),
    };
    if !(eps > 0.0) {
        return Err(SpernerError::InvalidTolerance(eps));
    }
    let target = match opts.contraction {
        Some(c) if (0.0..1.0).contains(&c) => eps * (1.0 - c),
        Some(c) => return Err(SpernerError::InvalidContraction(c)),
        None => eps,
    };
    let limits = opts.limits;
    let mut n = 1;
    loop {
        let sub = subdivide_with_limits(m, n, limits)?;
        let lab = brouwer_labeling(f, &sub)?;
        let cells = completely_labeled(&sub, &lab)?;
        let mut best: Option<(f64, usize)> = None;
        for &c in &cells {
            let r = f.residual(sub.barycenter(c).lambdas())?;
            if best.is_none_or(|(b, _)| r < b) {
                best = Some((r, c));
            }
        }
        if let Some((residual, c)) = best {
            if residual <= target {
                return Ok(SpernerFixedPoint {
                    point: sub.barycenter(c),
                    residual,
                    n,
                    cell: sub.cell(c).to_vec(),
                    completely_labeled: cells.len(),
                });
            }
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspec::parse;

    fn pt(v: &[f64]) -> SimplexPoint {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(support(&pt(&[1.0, 0.0, 0.0])), BTreeSet::from([0]));
        let third = 1.0 / 3.0;
        assert_eq!(support(&pt(&[third, third, third])), BTreeSet::from([0, 1, 2]));
        assert_eq!(support(&pt(&[0.5, 0.5, 0.0])), BTreeSet::from([0, 1]));
        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![1.5, -0.5]).is_err());
        assert!(SimplexPoint::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn subdivision_sizes() {
        let s = subdivide(1, 4).unwrap();
        assert_eq!((s.vertex_count(), s.cell_count()), (5, 4));
        let s = subdivide(2, 2).unwrap();
        assert_eq!((s.vertex_count(), s.cell_count()), (6, 4));
        let s = subdivide(2, 8).unwrap();
        assert_eq!((s.vertex_count(), s.cell_count()), (45, 64));
        let s = subdivide(3, 3).unwrap();
        assert_eq!((s.vertex_count(), s.cell_count()), (20, 27));
        assert!(matches!(subdivide(0, 3), Err(SpernerError::InvalidSize { .. })));
        assert!(matches!(subdivide(2, 10_000), Err(SpernerError::ResourceLimit { .. })));
    }

    #[test]
    fn two_by_two_triangle_by_hand() {
        // Lattice points of 2Δ_2: three corners, three edge midpoints.
        let s = subdivide(2, 2).unwrap();
        let mut cells: Vec<Vec<Vec<u32>>> = s
            .cells()
            .iter()
            .map(|c| {
                let mut vs: Vec<Vec<u32>> = c.iter().map(|&v| s.lattice(v).to_vec()).collect();
                vs.sort();
                vs
            })
            .collect();
        cells.sort();
        let v = |a: u32, b: u32, c: u32| vec![a, b, c];
        let mut expected = vec![
            vec![v(0, 0, 2), v(0, 1, 1), v(1, 0, 1)],
            vec![v(0, 1, 1), v(0, 2, 0), v(1, 1, 0)],
            vec![v(0, 1, 1), v(1, 0, 1), v(1, 1, 0)],
            vec![v(1, 0, 1), v(1, 1, 0), v(2, 0, 0)],
        ];
        expected.sort();
        assert_eq!(cells, expected);
    }

    #[test]
    fn mesh_is_one_over_n() {
        for (m, n) in [(1, 5), (2, 4), (2, 7), (3, 4)] {
            assert_eq!(subdivide(m, n).unwrap().mesh(), 1.0 / n as f64);
        }
    }

    #[test]
    fn one_dimensional_alternations() {
        let s = subdivide(1, 4).unwrap();
        assert_eq!(s.lattice(0), &[4, 0]);
        assert_eq!(s.lattice(4), &[0, 4]);
        let lab = Labeling::from_labels(vec![0, 0, 1, 0, 1]);
        assert!(check_proper(&s, &lab).unwrap());
        let cells = completely_labeled(&s, &lab).unwrap();
        assert_eq!(cells.len(), 3);
        let pairs: Vec<Vec<usize>> = cells.iter().map(|&c| s.cell(c).to_vec()).collect();
        assert_eq!(pairs, vec![vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn single_cell() {
        let s = subdivide(2, 1).unwrap();
        let labels: Vec<usize> = (0..3)
            .map(|v| s.lattice(v).iter().position(|&x| x == 1).unwrap())
            .collect();
        let lab = Labeling::from_labels(labels);
        assert_eq!(completely_labeled(&s, &lab).unwrap(), vec![0]);
    }

    #[test]
    fn properness_errors() {
        let s = subdivide(2, 1).unwrap();
        let e1 = (0..3).find(|&v| s.lattice(v) == [0, 1, 0]).unwrap();
        let mut labels: Vec<Option<usize>> = (0..3)
            .map(|v| s.lattice(v).iter().position(|&x| x == 1))
            .collect();
        assert_eq!(labels[e1], Some(1));
        assert!(check_proper(&s, &Labeling::new(labels.clone())).unwrap());
        labels[e1] = Some(0);
        assert!(!check_proper(&s, &Labeling::new(labels.clone())).unwrap());
        assert_eq!(
            completely_labeled(&s, &Labeling::new(labels.clone())),
            Err(SpernerError::ImproperLabeling { vertex: e1, label: 0 })
        );
        labels[e1] = None;
        assert_eq!(check_proper(&s, &Labeling::new(labels)), Err(SpernerError::MissingLabel(e1)));
        assert_eq!(
            check_proper(&s, &Labeling::from_labels(vec![0, 1])),
            Err(SpernerError::MissingLabel(2))
        );
    }

    #[test]
    fn brouwer_label_examples() {
        let id = parse("l0; l1; l2", Domain::Simplex(2)).unwrap();
        assert_eq!(brouwer_label(&id, &pt(&[0.0, 0.25, 0.75])).unwrap(), 1);
        assert_eq!(brouwer_label(&id, &pt(&[0.0, 0.0, 1.0])).unwrap(), 2);
        let c = parse("1/3; 1/3; 1/3", Domain::Simplex(2)).unwrap();
        assert_eq!(brouwer_label(&c, &pt(&[1.0, 0.0, 0.0])).unwrap(), 0);
        let square = parse("x; y", Domain::Square).unwrap();
        assert!(matches!(
            brouwer_label(&square, &pt(&[1.0, 0.0, 0.0])),
            Err(SpernerError::WrongDomain { .. })
        ));
        let bad = parse("l0 + 0.5; l1; l2", Domain::Simplex(2)).unwrap();
        assert!(matches!(
            brouwer_label(&bad, &pt(&[0.5, 0.5, 0.0])),
            Err(SpernerError::Map(EvalError::MapRange { .. }))
        ));
    }

    #[test]
    fn dump_format() {
        let s = subdivide(1, 2).unwrap();
        assert_eq!(s.dump(), "v 0 2 0\nv 1 1 1\nv 2 0 2\nc 0 0 1\nc 1 1 2\n");
    }

    #[test]
    fn fixed_point_examples() {
        let id = parse("l0; l1; l2", Domain::Simplex(2)).unwrap();
        let r = fixed_point_sperner(&id, 1e-6).unwrap();
        assert_eq!(r.residual, 0.0);

        let c = parse("0.2; 0.3; 0.5", Domain::Simplex(2)).unwrap();
        let r = fixed_point_sperner(&c, 1e-2).unwrap();
        let dist = r.point.lambdas().iter().zip([0.2, 0.3, 0.5]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dist <= 1e-2, "{r:?}");

        let rot = parse("l2; l0; l1", Domain::Simplex(2)).unwrap();
        let r = fixed_point_sperner(&rot, 1e-2).unwrap();
        assert!(r.residual <= 1e-2);
        assert!(r.point.lambdas().iter().all(|l| (l - 1.0 / 3.0).abs() <= 1e-2), "{r:?}");
        assert_eq!(r.completely_labeled % 2, 1);

        assert!(matches!(fixed_point_sperner(&rot, 0.0), Err(SpernerError::InvalidTolerance(_))));
        let tiny = SubdivisionLimits { max_vertices: 100, max_cells: 100 };
        let opts = SpernerOptions {
            limits: tiny,
            ..Default::default()
        };
        assert!(matches!(
            fixed_point_sperner_with(&c, 1e-9, opts),
            Err(SpernerError::ResourceLimit { .. })
        ));
        let opts = SpernerOptions {
            contraction: Some(1.0),
            ..Default::default()
        };
        assert_eq!(fixed_point_sperner_with(&c, 1e-2, opts), Err(SpernerError::InvalidContraction(1.0)));
    }

    #[test]
    fn contraction_hint_bounds_distance() {
        let f = parse("(l0 + 0.2) / 2; (l1 + 0.3) / 2; (l2 + 0.5) / 2", Domain::Simplex(2)).unwrap();
        let opts = SpernerOptions {
            contraction: Some(0.5),
            ..Default::default()
        };
        let r = fixed_point_sperner_with(&f, 1e-2, opts).unwrap();
        assert!(r.residual <= 5e-3);
        let dist = r.point.lambdas().iter().zip([0.2, 0.3, 0.5]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dist <= 1e-2, "{r:?}");
    }
}
