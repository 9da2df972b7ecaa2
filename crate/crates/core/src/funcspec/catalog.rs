//! Built-in test maps with known fixed points.
//!
//! Names take optional numeric parameters: `const(0.3,0.7)`,
//! `contraction(0.5,0.25)`, `const1d(0.4)`.

use thiserror::Error;

use super::{Domain, MapSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog map named `{0}`")]
    NotFound(String),
    #[error("bad parameters for `{name}`: {message}")]
    BadParameters { name: String, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints {
    /// Every point of the domain is fixed.
    Everywhere,
    /// The complete, finite set of fixed points.
    Points(Vec<Vec<f64>>),
}

impl FixedPoints {
    /// Max-norm distance from `p` to the nearest fixed point.
    pub fn distance(&self, p: &[f64]) -> f64 {
        match self {
            FixedPoints::Everywhere => 0.0,
            FixedPoints::Points(pts) => pts
                .iter()
                .map(|q| q.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub domain: Domain,
    pub source: String,
    pub fixed_points: FixedPoints,
    /// A Lipschitz constant in the max norm.
    pub lipschitz: f64,
    /// Whether the map is a contraction (Lipschitz constant below one).
    pub contraction: bool,
    pub description: &'static str,
}

impl CatalogEntry {
    pub fn map(&self) -> MapSpec {
        MapSpec::parse(&self.source, self.domain).expect("catalog sources parse")
    }
}

fn entry(
    name: &str,
    domain: Domain,
    source: String,
    fixed_points: FixedPoints,
    lipschitz: f64,
    description: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        domain,
        source,
        fixed_points,
        lipschitz,
        contraction: lipschitz < 1.0,
        description,
    }
}

fn constant(c1: f64, c2: f64) -> CatalogEntry {
    entry(
        &format!("const({c1},{c2})"),
        Domain::Square,
        format!("{c1}; {c2}"),
        FixedPoints::Points(vec![vec![c1, c2]]),
        0.0,
        "constant map; the constant is the only fixed point",
    )
}

fn contraction(a: f64, b: f64) -> CatalogEntry {
    entry(
        &format!("contraction({a},{b})"),
        Domain::Square,
        format!("(x + {a}) / 2; (y + {b}) / 2"),
        FixedPoints::Points(vec![vec![a, b]]),
        0.5,
        "halves the distance to (a, b)",
    )
}

fn constant_1d(c: f64) -> CatalogEntry {
    entry(
        &format!("const1d({c})"),
        Domain::Interval,
        format!("{c}"),
        FixedPoints::Points(vec![vec![c]]),
        0.0,
        "constant map on [0,1]",
    )
}

/// The named catalog, with parametric families at default parameters.
pub fn catalog() -> Vec<CatalogEntry> {
    let third = 1.0 / 3.0;
    vec![
        entry(
            "identity",
            Domain::Square,
            "x; y".into(),
            FixedPoints::Everywhere,
            1.0,
            "every point is fixed",
        ),
        constant(0.3, 0.7),
        entry(
            "rotation180",
            Domain::Square,
            "1 - x; 1 - y".into(),
            FixedPoints::Points(vec![vec![0.5, 0.5]]),
            1.0,
            "half turn about the centre",
        ),
        contraction(0.5, 0.25),
        entry(
            "shear-clamped",
            Domain::Square,
            "clamp01(x + 0.5 * y - 0.25); 0.5 * y + 0.2".into(),
            FixedPoints::Points(vec![vec![0.0, 0.4]]),
            1.5,
            "sheared drift towards x = 0, clamped to the square",
        ),
        entry(
            "identity1d",
            Domain::Interval,
            "x".into(),
            FixedPoints::Everywhere,
            1.0,
            "every point is fixed",
        ),
        constant_1d(0.4),
        entry(
            "flip1d",
            Domain::Interval,
            "1 - x".into(),
            FixedPoints::Points(vec![vec![0.5]]),
            1.0,
            "reflection about 1/2",
        ),
        entry(
            "half-square",
            Domain::Interval,
            "(x + x * x) / 2".into(),
            FixedPoints::Points(vec![vec![0.0], vec![1.0]]),
            1.5,
            "average of x and x^2",
        ),
        entry(
            "logistic",
            Domain::Interval,
            "3 * x * (1 - x)".into(),
            FixedPoints::Points(vec![vec![0.0], vec![2.0 / 3.0]]),
            3.0,
            "logistic map with rate 3",
        ),
        entry(
            "cosine",
            Domain::Interval,
            "cos(x)".into(),
            FixedPoints::Points(vec![vec![0.739_085_133_215_160_6]]),
            1.0_f64.sin(),
            "cos on [0,1]; fixed point is the Dottie number",
        ),
        entry(
            "contraction1d",
            Domain::Interval,
            "(x + 0.3) / 2".into(),
            FixedPoints::Points(vec![vec![0.3]]),
            0.5,
            "halves the distance to 0.3",
        ),
        entry(
            "simplex-identity",
            Domain::Simplex(2),
            "l0; l1; l2".into(),
            FixedPoints::Everywhere,
            1.0,
            "every point is fixed",
        ),
        entry(
            "simplex-const",
            Domain::Simplex(2),
            "0.2; 0.3; 0.5".into(),
            FixedPoints::Points(vec![vec![0.2, 0.3, 0.5]]),
            0.0,
            "constant map on the triangle",
        ),
        entry(
            "simplex-rotation",
            Domain::Simplex(2),
            "l2; l0; l1".into(),
            FixedPoints::Points(vec![vec![third, third, third]]),
            1.0,
            "cyclic rotation of barycentric coordinates",
        ),
        entry(
            "simplex-contraction",
            Domain::Simplex(2),
            "(l0 + 0.2) / 2; (l1 + 0.3) / 2; (l2 + 0.5) / 2".into(),
            FixedPoints::Points(vec![vec![0.2, 0.3, 0.5]]),
            0.5,
            "halves the distance to (0.2, 0.3, 0.5)",
        ),
        entry(
            "simplex1-flip",
            Domain::Simplex(1),
            "l1; l0".into(),
            FixedPoints::Points(vec![vec![0.5, 0.5]]),
            1.0,
            "swap of the two barycentric coordinates",
        ),
        entry(
            "simplex1-contraction",
            Domain::Simplex(1),
            "(l0 + 0.7) / 2; (l1 + 0.3) / 2".into(),
            FixedPoints::Points(vec![vec![0.7, 0.3]]),
            0.5,
            "the map (x + 0.3) / 2 written on the 1-simplex, x = l1",
        ),
    ]
}

fn params(name: &str, args: &str, count: usize) -> Result<Vec<f64>, CatalogError> {
    let bad = |message: String| CatalogError::BadParameters {
        name: name.to_string(),
        message,
    };
    let vals = args
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| bad(format!("`{}`: {e}", s.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.len() != count {
        return Err(bad(format!("expected {count} parameter(s), got {}", vals.len())));
    }
    if let Some(v) = vals.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(bad(format!("parameter {v} outside [0,1]")));
    }
    Ok(vals)
}

/// Finds a catalog map by name, instantiating parametric families.
pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some((family, rest)) = name.split_once('(') {
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| CatalogError::NotFound(name.to_string()))?;
        return match family.trim() {
            "const" => params(name, args, 2).map(|v| constant(v[0], v[1])),
            "contraction" => params(name, args, 2).map(|v| contraction(v[0], v[1])),
            "const1d" => params(name, args, 1).map(|v| constant_1d(v[0])),
            _ => Err(CatalogError::NotFound(name.to_string())),
        };
    }
    let alias = match name {
        "const" => "const(0.3,0.7)",
        "contraction" => "contraction(0.5,0.25)",
        "const1d" => "const1d(0.4)",
        other => other,
    };
    catalog()
        .into_iter()
        .find(|e| e.name == alias)
        .ok_or_else(|| CatalogError::NotFound(name.to_string()))
}
