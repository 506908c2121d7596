//! Expression grammar: scalar literals, generator tokens (`E1`, `F1`, `K{2}`,
//! `K'{2}`, `e1`, `f1`, `t{2}`, `t'{2}`), module vectors `v{2}` / `v{2}[0]`,
//! operators `^ * / + -`, the tensor `(x) @ (y)` (also spelled with a literal
//! tensor sign), and the call forms `pair(a, b)`, `delta(x)`, `S(x)`,
//! `act(u; x)`, `P(x)`, `rho(x)`.

use num_bigint::BigInt;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    /// `E1`, `e1` with the raising letter index.
    Raise(usize),
    /// `F1`, `f1` with the lowering letter index.
    Lower(usize),
    /// `K{..}` / `t{..}` torus exponent, `primed` for `K'` / `t'`.
    Torus { coords: Vec<i64>, primed: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenCase {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CallKind {
    Pair,
    Delta,
    Antipode,
    Act,
    Project,
    Rho,
}

impl CallKind {
    fn name(&self) -> &'static str {
        match self {
            CallKind::Pair => "pair",
            CallKind::Delta => "delta",
            CallKind::Antipode => "S",
            CallKind::Act => "act",
            CallKind::Project => "P",
            CallKind::Rho => "rho",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    QVar,
    Gen { kind: GenKind, case: GenCase },
    VecRef { coords: Vec<i64>, index: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow { base: Box<Expr>, num: i64, den: u32 },
    Tensor(Box<Expr>, Box<Expr>),
    Call(CallKind, Vec<Expr>),
}

/// A parse-tree node with its source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub line: usize,
    pub col: usize,
}

impl Expr {
    fn new(kind: ExprKind, line: usize, col: usize) -> Expr {
        Expr { kind, line, col }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Gen { kind: GenKind, case: GenCase },
    VecRef { coords: Vec<i64>, index: usize },
    Call(CallKind),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
    Comma,
    Semi,
    TensorOp,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Lexer<'a> {
        Lexer {
            chars: s.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&d) = self.chars.peek() {
            if d.is_ascii_digit() {
                s.push(d);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let mut neg = false;
        if self.chars.peek() == Some(&'-') {
            self.bump();
            neg = true;
        }
        let d = self.digits();
        if d.is_empty() {
            return Err(self.err("expected an integer"));
        }
        let v: i64 = d.parse().map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn braced_coords(&mut self) -> Result<Vec<i64>, ParseError> {
        if self.chars.peek() != Some(&'{') {
            return Err(self.err("expected '{'"));
        }
        self.bump();
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            out.push(self.signed_int()?);
            self.skip_ws();
            match self.chars.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.err("expected ',' or '}'")),
            }
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else {
                return Ok(out);
            };
            let tok = match c {
                '0'..='9' => {
                    let d = self.digits();
                    Tok::Int(d.parse().unwrap())
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                '@' => {
                    self.bump();
                    Tok::TensorOp
                }
                '\u{2297}' => {
                    // the tensor sign
                    self.bump();
                    Tok::TensorOp
                }
                'q' => {
                    self.bump();
                    Tok::Q
                }
                'E' | 'F' | 'e' | 'f' => {
                    self.bump();
                    let case = if c.is_uppercase() {
                        GenCase::Upper
                    } else {
                        GenCase::Lower
                    };
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err(format!("expected an index after '{c}'")));
                    }
                    let idx: usize = d.parse().map_err(|_| self.err("index out of range"))?;
                    if idx == 0 {
                        return Err(self.err("generator indices start at 1"));
                    }
                    let kind = if c == 'E' || c == 'e' {
                        GenKind::Raise(idx - 1)
                    } else {
                        GenKind::Lower(idx - 1)
                    };
                    Tok::Gen { kind, case }
                }
                'K' | 't' => {
                    self.bump();
                    let case = if c == 'K' { GenCase::Upper } else { GenCase::Lower };
                    let primed = if self.chars.peek() == Some(&'\'') {
                        self.bump();
                        true
                    } else {
                        false
                    };
                    let coords = self.braced_coords()?;
                    Tok::Gen {
                        kind: GenKind::Torus { coords, primed },
                        case,
                    }
                }
                'v' => {
                    self.bump();
                    let coords = self.braced_coords()?;
                    let mut index = 0usize;
                    if self.chars.peek() == Some(&'[') {
                        self.bump();
                        let d = self.digits();
                        index = d.parse().map_err(|_| self.err("bad vector index"))?;
                        if self.chars.peek() != Some(&']') {
                            return Err(self.err("expected ']'"));
                        }
                        self.bump();
                    }
                    Tok::VecRef { coords, index }
                }
                'p' | 'd' | 'a' | 'S' | 'P' | 'r' => {
                    let mut word = String::new();
                    while matches!(self.chars.peek(), Some(ch) if ch.is_ascii_alphanumeric()) {
                        word.push(*self.chars.peek().unwrap());
                        self.bump();
                    }
                    let call = match word.as_str() {
                        "pair" => CallKind::Pair,
                        "delta" => CallKind::Delta,
                        "S" => CallKind::Antipode,
                        "act" => CallKind::Act,
                        "P" => CallKind::Project,
                        "rho" => CallKind::Rho,
                        other => return Err(self.err(format!("unknown name '{other}'"))),
                    };
                    Tok::Call(call)
                }
                other => return Err(self.err(format!("unexpected character '{other}'"))),
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<(Tok, usize, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    // sum := tensor (('+'|'-') tensor)*
    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.tensor()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    let (l, c) = self.here();
                    self.pos += 1;
                    let rhs = self.tensor()?;
                    acc = Expr::new(ExprKind::Add(Box::new(acc), Box::new(rhs)), l, c);
                }
                Some(Tok::Minus) => {
                    let (l, c) = self.here();
                    self.pos += 1;
                    let rhs = self.tensor()?;
                    acc = Expr::new(ExprKind::Sub(Box::new(acc), Box::new(rhs)), l, c);
                }
                _ => return Ok(acc),
            }
        }
    }

    // tensor := product ('@' product)*
    fn tensor(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Tok::TensorOp) {
            let (l, c) = self.here();
            self.pos += 1;
            let rhs = self.product()?;
            acc = Expr::new(ExprKind::Tensor(Box::new(acc), Box::new(rhs)), l, c);
        }
        Ok(acc)
    }

    // product := unary (('*'|'/') unary)*
    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let (l, c) = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = Expr::new(ExprKind::Mul(Box::new(acc), Box::new(rhs)), l, c);
                }
                Some(Tok::Slash) => {
                    let (l, c) = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = Expr::new(ExprKind::Div(Box::new(acc), Box::new(rhs)), l, c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            let (l, c) = self.here();
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), l, c));
        }
        self.power()
    }

    // power := atom ('^' exponent)?
    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            let (l, c) = self.here();
            self.pos += 1;
            let (num, den) = self.exponent()?;
            return Ok(Expr::new(
                ExprKind::Pow {
                    base: Box::new(base),
                    num,
                    den,
                },
                l,
                c,
            ));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<(i64, u32), ParseError> {
        let mut sign = 1i64;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -1;
        }
        match self.bump() {
            Some((Tok::Int(n), ..)) => {
                let v: i64 = n
                    .to_string()
                    .parse()
                    .map_err(|_| self.err("exponent out of range"))?;
                Ok((sign * v, 1))
            }
            Some((Tok::LParen, ..)) => {
                let mut inner = sign;
                if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    inner = -inner;
                }
                let a = match self.bump() {
                    Some((Tok::Int(n), ..)) => n
                        .to_string()
                        .parse::<i64>()
                        .map_err(|_| self.err("exponent out of range"))?,
                    _ => return Err(self.err("expected an integer exponent")),
                };
                self.expect(Tok::Slash, "'/'")?;
                let b = match self.bump() {
                    Some((Tok::Int(n), ..)) => n
                        .to_string()
                        .parse::<u32>()
                        .map_err(|_| self.err("exponent denominator out of range"))?,
                    _ => return Err(self.err("expected an integer denominator")),
                };
                self.expect(Tok::RParen, "')'")?;
                if b == 0 {
                    return Err(self.err("exponent denominator must be positive"));
                }
                Ok((inner * a, b))
            }
            _ => Err(self.err("expected an exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (line, col) = self.here();
        match self.bump() {
            Some((Tok::Int(n), ..)) => Ok(Expr::new(ExprKind::Int(n), line, col)),
            Some((Tok::Q, ..)) => Ok(Expr::new(ExprKind::QVar, line, col)),
            Some((Tok::Gen { kind, case }, ..)) => {
                Ok(Expr::new(ExprKind::Gen { kind, case }, line, col))
            }
            Some((Tok::VecRef { coords, index }, ..)) => {
                Ok(Expr::new(ExprKind::VecRef { coords, index }, line, col))
            }
            Some((Tok::LParen, ..)) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some((Tok::Call(kind), ..)) => {
                self.expect(Tok::LParen, "'(' after call name")?;
                let mut args = vec![self.sum()?];
                loop {
                    match self.peek() {
                        Some(Tok::Comma) | Some(Tok::Semi) => {
                            self.pos += 1;
                            args.push(self.sum()?);
                        }
                        Some(Tok::RParen) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.err("expected ',', ';' or ')'")),
                    }
                }
                let expected = match kind {
                    CallKind::Pair | CallKind::Act => 2,
                    _ => 1,
                };
                if args.len() != expected {
                    return Err(self.err(format!(
                        "{} takes {} argument(s), found {}",
                        kind.name(),
                        expected,
                        args.len()
                    )));
                }
                Ok(Expr::new(ExprKind::Call(kind, args), line, col))
            }
            _ => Err(self.err("expected a number, generator, 'q', call or '('")),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let toks = Lexer::new(input).tokens()?;
    if toks.is_empty() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: "empty expression".to_string(),
        });
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

// precedence levels for printing with minimal parentheses
fn prec(e: &ExprKind) -> u8 {
    match e {
        ExprKind::Add(..) | ExprKind::Sub(..) => 1,
        ExprKind::Tensor(..) => 2,
        ExprKind::Mul(..) | ExprKind::Div(..) => 3,
        ExprKind::Neg(..) => 4,
        ExprKind::Pow { .. } => 5,
        _ => 6,
    }
}

fn fmt_child(f: &mut fmt::Formatter<'_>, child: &Expr, min: u8) -> fmt::Result {
    if prec(&child.kind) < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::QVar => write!(f, "q"),
            ExprKind::Gen { kind, case } => match kind {
                GenKind::Raise(i) => {
                    let name = if *case == GenCase::Upper { "E" } else { "e" };
                    write!(f, "{name}{}", i + 1)
                }
                GenKind::Lower(i) => {
                    let name = if *case == GenCase::Upper { "F" } else { "f" };
                    write!(f, "{name}{}", i + 1)
                }
                GenKind::Torus { coords, primed } => {
                    let name = if *case == GenCase::Upper { "K" } else { "t" };
                    let prime = if *primed { "'" } else { "" };
                    let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                    write!(f, "{name}{prime}{{{}}}", cs.join(","))
                }
            },
            ExprKind::VecRef { coords, index } => {
                let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                write!(f, "v{{{}}}[{index}]", cs.join(","))
            }
            ExprKind::Neg(x) => {
                write!(f, "-")?;
                fmt_child(f, x, 4)
            }
            ExprKind::Add(a, b) => {
                fmt_child(f, a, 1)?;
                write!(f, " + ")?;
                fmt_child(f, b, 2)
            }
            ExprKind::Sub(a, b) => {
                fmt_child(f, a, 1)?;
                write!(f, " - ")?;
                fmt_child(f, b, 2)
            }
            ExprKind::Mul(a, b) => {
                fmt_child(f, a, 3)?;
                write!(f, "*")?;
                fmt_child(f, b, 4)
            }
            ExprKind::Div(a, b) => {
                fmt_child(f, a, 3)?;
                write!(f, "/")?;
                fmt_child(f, b, 4)
            }
            ExprKind::Pow { base, num, den } => {
                fmt_child(f, base, 6)?;
                if *den == 1 {
                    write!(f, "^{num}")
                } else {
                    write!(f, "^({num}/{den})")
                }
            }
            ExprKind::Tensor(a, b) => {
                fmt_child(f, a, 3)?;
                write!(f, " @ ")?;
                fmt_child(f, b, 3)
            }
            ExprKind::Call(kind, args) => {
                write!(f, "{}(", kind.name())?;
                let sep = if *kind == CallKind::Act { "; " } else { ", " };
                let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{})", parts.join(sep))
            }
        }
    }
}

/// Structural equality ignoring source positions.
#[cfg(test)]
pub fn tree_eq(a: &Expr, b: &Expr) -> bool {
    use ExprKind::*;
    match (&a.kind, &b.kind) {
        (Int(x), Int(y)) => x == y,
        (QVar, QVar) => true,
        (Gen { kind: k1, case: c1 }, Gen { kind: k2, case: c2 }) => k1 == k2 && c1 == c2,
        (
            VecRef {
                coords: a1,
                index: i1,
            },
            VecRef {
                coords: a2,
                index: i2,
            },
        ) => a1 == a2 && i1 == i2,
        (Neg(x), Neg(y)) => tree_eq(x, y),
        (Add(x1, y1), Add(x2, y2))
        | (Sub(x1, y1), Sub(x2, y2))
        | (Mul(x1, y1), Mul(x2, y2))
        | (Div(x1, y1), Div(x2, y2))
        | (Tensor(x1, y1), Tensor(x2, y2)) => tree_eq(x1, x2) && tree_eq(y1, y2),
        (
            Pow {
                base: b1,
                num: n1,
                den: d1,
            },
            Pow {
                base: b2,
                num: n2,
                den: d2,
            },
        ) => n1 == n2 && d1 == d2 && tree_eq(b1, b2),
        (Call(k1, a1), Call(k2, a2)) => {
            k1 == k2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(x, y)| tree_eq(x, y))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_basics() {
        for s in [
            "E1*F1 - F1*E1",
            "pair(e1^2, f1^2)",
            "delta(f1^2)",
            "S(e1)",
            "act(E1; t{1})",
            "K'{2}*E1 - q^2*E1*K'{2}",
            "(f1) @ (e1) + 1 @ e1^2",
            "q^(1/2) + q^(-1/2)",
            "P(f1*v{2}[0])",
            "rho(f1*f1*v{2})",
        ] {
            let ast = parse_expr(s).unwrap();
            let printed = ast.to_string();
            let back = parse_expr(&printed).unwrap();
            assert!(tree_eq(&ast, &back), "{s} -> {printed}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("E1 * # f1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 6));
        assert!(parse_expr("pair(e1)").is_err());
        assert!(parse_expr("E0").is_err());
        assert!(parse_expr("K{").is_err());
        assert!(parse_expr("").is_err());
    }

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_tree(rng: &mut StdRng, depth: usize) -> Expr {
        let leaf = |rng: &mut StdRng| -> Expr {
            let kind = match rng.random_range(0..5) {
                0 => ExprKind::Int(BigInt::from(rng.random_range(0..40i64))),
                1 => ExprKind::QVar,
                2 => ExprKind::Gen {
                    kind: GenKind::Raise(rng.random_range(0..2)),
                    case: if rng.random_bool(0.5) {
                        GenCase::Upper
                    } else {
                        GenCase::Lower
                    },
                },
                3 => ExprKind::Gen {
                    kind: GenKind::Torus {
                        coords: vec![rng.random_range(-3..=3), rng.random_range(-3..=3)],
                        primed: rng.random_bool(0.5),
                    },
                    case: if rng.random_bool(0.5) {
                        GenCase::Upper
                    } else {
                        GenCase::Lower
                    },
                },
                _ => ExprKind::VecRef {
                    coords: vec![rng.random_range(-3..=3)],
                    index: rng.random_range(0..3),
                },
            };
            Expr::new(kind, 1, 1)
        };
        if depth == 0 || rng.random_bool(0.3) {
            return leaf(rng);
        }
        let a = Box::new(random_tree(rng, depth - 1));
        let b = Box::new(random_tree(rng, depth - 1));
        let kind = match rng.random_range(0..9) {
            0 => ExprKind::Add(a, b),
            1 => ExprKind::Sub(a, b),
            2 => ExprKind::Mul(a, b),
            3 => ExprKind::Div(a, b),
            4 => ExprKind::Tensor(a, b),
            5 => ExprKind::Neg(a),
            6 => ExprKind::Pow {
                base: a,
                num: rng.random_range(-6..=6),
                den: if rng.random_bool(0.8) { 1 } else { 2 },
            },
            7 => ExprKind::Call(CallKind::Act, vec![*a, *b]),
            _ => {
                let kind = match rng.random_range(0..5) {
                    0 => CallKind::Pair,
                    1 => CallKind::Delta,
                    2 => CallKind::Antipode,
                    3 => CallKind::Project,
                    _ => CallKind::Rho,
                };
                if kind == CallKind::Pair {
                    ExprKind::Call(kind, vec![*a, *b])
                } else {
                    ExprKind::Call(kind, vec![*a])
                }
            }
        };
        Expr::new(kind, 1, 1)
    }

    #[test]
    fn round_trip_on_generated_corpus() {
        let mut rng = StdRng::seed_from_u64(2024);
        for case in 0..200 {
            let tree = random_tree(&mut rng, 4);
            let printed = tree.to_string();
            let reparsed = parse_expr(&printed)
                .unwrap_or_else(|e| panic!("case {case}: `{printed}`: {e}"));
            assert!(
                tree_eq(&tree, &reparsed),
                "case {case}: `{printed}` reparses differently"
            );
        }
    }
}
