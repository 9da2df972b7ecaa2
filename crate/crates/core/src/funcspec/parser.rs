use std::fmt;

use super::{Domain, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Min,
    Max,
    Abs,
    Sin,
    Cos,
    Sqrt,
    Clamp01,
}

impl Func {
    pub const ALL: [Func; 7] = [Func::Min, Func::Max, Func::Abs, Func::Sin, Func::Cos, Func::Sqrt, Func::Clamp01];

    pub fn name(self) -> &'static str {
        match self {
            Func::Min => "min",
            Func::Max => "max",
            Func::Abs => "abs",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Clamp01 => "clamp01",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    /// `min` and `max` take two or more arguments, the rest exactly one.
    fn variadic(self) -> bool {
        matches!(self, Func::Min | Func::Max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Index into the domain's variables.
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Printing is fully parenthesised so that re-parsing yields the same tree.
pub struct Printer<'a> {
    pub expr: &'a Expr,
    pub domain: Domain,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e| Printer { expr: e, domain: self.domain };
        match self.expr {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(i) => f.write_str(&self.domain.variable_name(*i)),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Bin(op, a, b) => write!(f, "({} {} {})", sub(a), op.symbol(), sub(b)),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", sub(a))?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number `{v}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["number", "variable", "function", "`(`", "`-`"];

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(|| ParseError::Syntax {
                    offset: start,
                    found: format!("malformed number `{text}`"),
                    expected: vec!["number".into()],
                })?;
                out.push((start, Tok::Num(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start,
                    found: format!("character `{ch}`"),
                    expected: OPERAND.iter().map(|s| s.to_string()).collect(),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    domain: Domain,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn map(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut exprs = vec![self.expr()?];
        loop {
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                    exprs.push(self.expr()?);
                }
                Tok::Eof => return Ok(exprs),
                _ => return Err(self.error(&["`+`", "`-`", "`*`", "`/`", "`;`", "end of input"])),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LParen {
                    let func = Func::from_name(&name).ok_or_else(|| ParseError::Syntax {
                        offset,
                        found: format!("unknown function `{name}`"),
                        expected: Func::ALL.iter().map(|f| format!("`{}`", f.name())).collect(),
                    })?;
                    self.bump();
                    self.call(func)
                } else {
                    self.domain
                        .variable_index(&name)
                        .map(Expr::Var)
                        .ok_or_else(|| ParseError::Arity {
                            message: format!(
                                "variable `{name}` at offset {offset} is not defined on {} (variables: {})",
                                self.domain,
                                self.domain.variable_names().join(", ")
                            ),
                        })
                }
            }
            _ => Err(self.error(OPERAND)),
        }
    }

    fn call(&mut self, func: Func) -> Result<Expr, ParseError> {
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            if !func.variadic() {
                return Err(self.error(&["`)`"]));
            }
            self.bump();
            args.push(self.expr()?);
        }
        if func.variadic() && args.len() < 2 {
            return Err(self.error(&["`,`"]));
        }
        let expected: &[&str] = if func.variadic() { &["`,`", "`)`"] } else { &["`)`"] };
        if *self.peek() != Tok::RParen {
            return Err(self.error(expected));
        }
        self.bump();
        Ok(Expr::Call(func, args))
    }
}

/// Parses `;`-separated coordinate expressions over `domain`'s variables.
pub fn parse_exprs(src: &str, domain: Domain) -> Result<Vec<Expr>, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, domain };
    let exprs = p.map()?;
    if exprs.len() != domain.output_dim() {
        return Err(ParseError::Arity {
            message: format!(
                "{} needs {} coordinate expression(s), found {}",
                domain,
                domain.output_dim(),
                exprs.len()
            ),
        });
    }
    Ok(exprs)
}
