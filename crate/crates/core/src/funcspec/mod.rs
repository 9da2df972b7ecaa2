//! A small expression language for the continuous maps fed to the solvers.
//!
//! ```text
//! map     := expr (';' expr)*
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func    := min | max | abs | sin | cos | sqrt | clamp01
//! ```
//!
//! Variables are `x` on `[0,1]`, `x, y` on the unit square and `l0..lm` on the
//! standard simplex. Evaluation checks the result against the codomain (the
//! domain itself) with tolerance [`RANGE_TOL`] and clamps values within the
//! tolerance back onto it.

mod catalog;
mod parser;

use std::fmt;

use thiserror::Error;

pub use catalog::{catalog, lookup, CatalogEntry, CatalogError, FixedPoints};
pub use parser::{BinOp, Expr, Func};

/// Codomain tolerance for evaluated points.
pub const RANGE_TOL: f64 = 1e-9;
/// Denominators smaller than this in magnitude are rejected.
pub const DIVISION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `[0, 1]`, variable `x`.
    Interval,
    /// The unit square, variables `x, y`.
    Square,
    /// The standard simplex of dimension `m`, variables `l0..lm`.
    Simplex(usize),
}

impl Domain {
    /// Dimension of points in the domain, which is also the number of
    /// coordinate expressions a map needs.
    pub fn output_dim(self) -> usize {
        match self {
            Domain::Interval => 1,
            Domain::Square => 2,
            Domain::Simplex(m) => m + 1,
        }
    }

    pub fn variable_name(self, i: usize) -> String {
        match self {
            Domain::Interval | Domain::Square => ["x", "y"][i].to_string(),
            Domain::Simplex(_) => format!("l{i}"),
        }
    }

    pub fn variable_names(self) -> Vec<String> {
        (0..self.output_dim()).map(|i| self.variable_name(i)).collect()
    }

    fn variable_index(self, name: &str) -> Option<usize> {
        (0..self.output_dim()).find(|&i| self.variable_name(i) == name)
    }

    fn contains(self, p: &[f64], tol: f64) -> bool {
        let in_unit = p.iter().all(|&v| v >= -tol && v <= 1.0 + tol);
        match self {
            Domain::Interval | Domain::Square => in_unit,
            Domain::Simplex(_) => in_unit && (p.iter().sum::<f64>() - 1.0).abs() <= tol,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Interval => f.write_str("[0,1]"),
            Domain::Square => f.write_str("the unit square"),
            Domain::Simplex(m) => write!(f, "the {m}-simplex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("arity error: {message}")]
    Arity { message: String },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. } => Some(*offset),
            ParseError::Arity { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("expected a point of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {point:?} lies outside {domain}")]
    OutsideDomain { point: Vec<f64>, domain: Domain },
    #[error("division by a value of magnitude below 1e-12 ({0:e})")]
    DivisionByZero(f64),
    #[error("square root of negative value {0}")]
    NegativeSqrt(f64),
    #[error("map value {value:?} at {point:?} leaves {domain}")]
    MapRange { point: Vec<f64>, value: Vec<f64>, domain: Domain },
}

/// A parsed map from a domain into itself.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec {
    domain: Domain,
    exprs: Vec<Expr>,
    source: String,
}

impl MapSpec {
    pub fn parse(src: &str, domain: Domain) -> Result<MapSpec, ParseError> {
        let exprs = parser::parse_exprs(src, domain)?;
        Ok(MapSpec {
            domain,
            exprs,
            source: src.to_string(),
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn exprs(&self) -> &[Expr] {
        &self.exprs
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Evaluates every coordinate, checks the result lies in the codomain and
    /// clamps away rounding excursions below [`RANGE_TOL`].
    pub fn eval(&self, p: &[f64]) -> Result<Vec<f64>, EvalError> {
        let dim = self.domain.output_dim();
        if p.len() != dim {
            return Err(EvalError::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if !self.domain.contains(p, RANGE_TOL) {
            return Err(EvalError::OutsideDomain {
                point: p.to_vec(),
                domain: self.domain,
            });
        }
        let mut out = self
            .exprs
            .iter()
            .map(|e| eval_expr(e, p))
            .collect::<Result<Vec<f64>, _>>()?;
        if out.iter().any(|v| !v.is_finite()) || !self.domain.contains(&out, RANGE_TOL) {
            return Err(EvalError::MapRange {
                point: p.to_vec(),
                value: out,
                domain: self.domain,
            });
        }
        for v in &mut out {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(out)
    }

    /// Max-norm residual `|f(p) - p|`.
    pub fn residual(&self, p: &[f64]) -> Result<f64, EvalError> {
        let fp = self.eval(p)?;
        Ok(fp.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

impl fmt::Display for MapSpec {
    /// Canonical, fully parenthesised form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.exprs.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", parser::Printer { expr: e, domain: self.domain })?;
        }
        Ok(())
    }
}

pub fn parse(src: &str, domain: Domain) -> Result<MapSpec, ParseError> {
    MapSpec::parse(src, domain)
}

fn eval_expr(e: &Expr, p: &[f64]) -> Result<f64, EvalError> {
    Ok(match e {
        Expr::Num(v) => *v,
        Expr::Var(i) => p[*i],
        Expr::Neg(a) => -eval_expr(a, p)?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval_expr(a, p)?, eval_expr(b, p)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b.abs() < DIVISION_TOL {
                        return Err(EvalError::DivisionByZero(b));
                    }
                    a / b
                }
            }
        }
        Expr::Call(func, args) => {
            let vals = args.iter().map(|a| eval_expr(a, p)).collect::<Result<Vec<_>, _>>()?;
            match func {
                Func::Min => vals.iter().copied().fold(f64::INFINITY, f64::min),
                Func::Max => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                Func::Abs => vals[0].abs(),
                Func::Sin => vals[0].sin(),
                Func::Cos => vals[0].cos(),
                Func::Sqrt => {
                    if vals[0] < 0.0 {
                        return Err(EvalError::NegativeSqrt(vals[0]));
                    }
                    vals[0].sqrt()
                }
                Func::Clamp01 => vals[0].clamp(0.0, 1.0),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rotation_parses() {
        let f = parse("1 - x; 1 - y", Domain::Square).unwrap();
        assert_eq!(f.exprs().len(), 2);
        assert_eq!(f.eval(&[0.5, 0.5]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(f.eval(&[0.25, 1.0]).unwrap(), vec![0.75, 0.0]);
    }

    #[test]
    fn dangling_operator_reports_offset() {
        match parse("x*", Domain::Interval) {
            Err(ParseError::Syntax { offset, expected, .. }) => {
                assert_eq!(offset, 2);
                assert!(expected.contains(&"number".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("(x + 1", Domain::Interval).unwrap_err().offset(), Some(6));
        assert_eq!(parse("x $ 1", Domain::Interval).unwrap_err().offset(), Some(2));
        assert_eq!(parse("foo(x)", Domain::Interval).unwrap_err().offset(), Some(0));
        assert_eq!(parse("abs(x, x)", Domain::Interval).unwrap_err().offset(), Some(5));
        assert_eq!(parse("min(x)", Domain::Interval).unwrap_err().offset(), Some(5));
        assert_eq!(parse("x x", Domain::Interval).unwrap_err().offset(), Some(2));
        assert_eq!(parse("1e999", Domain::Interval).unwrap_err().offset(), Some(0));
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(parse("x", Domain::Square), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("y", Domain::Interval), Err(ParseError::Arity { .. })));
        assert!(matches!(parse("l3; l0; l1", Domain::Simplex(2)), Err(ParseError::Arity { .. })));
        assert!(parse("l2; l0; l1", Domain::Simplex(2)).is_ok());
    }

    #[test]
    fn clamp_example() {
        let f = parse("clamp01(x + 0.2); y", Domain::Square).unwrap();
        assert_eq!(f.eval(&[0.9, 0.4]).unwrap(), vec![1.0, 0.4]);
    }

    #[test]
    fn eval_examples() {
        let id = parse("x; y", Domain::Square).unwrap();
        assert_eq!(id.eval(&[0.3, 0.7]).unwrap(), vec![0.3, 0.7]);
        let c = parse("(x+0.5)/2; (y+0.25)/2", Domain::Square).unwrap();
        assert_eq!(c.eval(&[0.0, 0.0]).unwrap(), vec![0.25, 0.125]);
        let f = parse("min(x, 0.5, 0.2) + max(-x, 0) * 3 + abs(-0.1)", Domain::Interval).unwrap();
        assert!((f.eval(&[0.4]).unwrap()[0] - 0.3).abs() < 1e-15);
        let f = parse("sqrt(x) * cos(0) + sin(0)", Domain::Interval).unwrap();
        assert_eq!(f.eval(&[0.25]).unwrap(), vec![0.5]);
        let f = parse("2.5e-1 + .5 * x", Domain::Interval).unwrap();
        assert_eq!(f.eval(&[0.5]).unwrap(), vec![0.5]);
        let f = parse("--x", Domain::Interval).unwrap();
        assert_eq!(f.eval(&[0.5]).unwrap(), vec![0.5]);
    }

    #[test]
    fn evaluation_errors() {
        let f = parse("x / (x - 0.5)", Domain::Interval).unwrap();
        assert!(matches!(f.eval(&[0.5]), Err(EvalError::DivisionByZero(_))));
        let f = parse("sqrt(x - 1)", Domain::Interval).unwrap();
        assert!(matches!(f.eval(&[0.5]), Err(EvalError::NegativeSqrt(_))));
        let f = parse("x + 0.5", Domain::Interval).unwrap();
        assert!(matches!(f.eval(&[0.75]), Err(EvalError::MapRange { .. })));
        assert!(f.eval(&[0.5 - 1e-10]).is_ok());
        let f = parse("x + 1e-10", Domain::Interval).unwrap();
        assert_eq!(f.eval(&[1.0]).unwrap(), vec![1.0]);
        assert!(matches!(f.eval(&[1.5]), Err(EvalError::OutsideDomain { .. })));
        assert!(matches!(f.eval(&[0.5, 0.5]), Err(EvalError::DimensionMismatch { .. })));
        let s = parse("l0; l0; l2", Domain::Simplex(2)).unwrap();
        assert!(matches!(s.eval(&[0.6, 0.4, 0.0]), Err(EvalError::MapRange { .. })));
    }

    fn arb_expr(vars: usize) -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(Expr::Num),
            (0..vars).prop_map(Expr::Var),
        ];
        leaf.prop_recursive(4, 32, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
                (inner.clone(), inner.clone(), 0..4usize).prop_map(|(a, b, op)| {
                    let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div][op];
                    Expr::Bin(op, Box::new(a), Box::new(b))
                }),
                (inner.clone(), 2..7usize).prop_map(|(a, f)| Expr::Call(Func::ALL[f], vec![a])),
                (inner.clone(), inner, 0..2usize).prop_map(|(a, b, f)| Expr::Call(Func::ALL[f], vec![a, b])),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(e1 in arb_expr(2), e2 in arb_expr(2)) {
            let spec = MapSpec { domain: Domain::Square, exprs: vec![e1, e2], source: String::new() };
            let printed = spec.to_string();
            let reparsed = parse(&printed, Domain::Square).unwrap();
            prop_assert_eq!(reparsed.exprs(), spec.exprs());
            prop_assert_eq!(reparsed.to_string(), printed);
        }

        #[test]
        fn eval_is_deterministic(x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
            let f = parse("clamp01(x * y + sin(x) / 3); abs(cos(y) - x) / 2", Domain::Square).unwrap();
            prop_assert_eq!(f.eval(&[x, y]), f.eval(&[x, y]));
        }
    }
}
