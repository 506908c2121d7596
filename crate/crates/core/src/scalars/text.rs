//! Text grammar for scalars: integers, `q`, `^` with integer or `(a/b)`
//! exponents, `*`, `/`, `+`, `-` and parentheses. Printing emits the same
//! grammar with exponents in descending order.

use super::{IntPoly, QRat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ScalarParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Q,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ScalarParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
                continue;
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Int(s.parse().unwrap()),
                    line: tline,
                    col: tcol,
                });
                continue;
            }
            'q' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::Q,
                    line: tline,
                    col: tcol,
                });
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ScalarParseError {
                    line,
                    col,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push(Spanned {
            tok,
            line: tline,
            col: tcol,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err(&self, msg: impl Into<String>) -> ScalarParseError {
        let (line, col) = self.here();
        ScalarParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ScalarParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn sum(&mut self) -> Result<QRat, ScalarParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<QRat, ScalarParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc
                        .div(&rhs)
                        .map_err(|_| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QRat, ScalarParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<QRat, ScalarParseError> {
        let base = match self.bump() {
            Some(Tok::Int(n)) => QRat::from_bigint(n),
            Some(Tok::Q) => QRat::q(),
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                inner
            }
            _ => return Err(self.err("expected a number, 'q' or '('")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let (num, den) = self.exponent()?;
            if den == 1 {
                return base.pow(num).map_err(|_| self.err("zero to a negative power"));
            }
            // fractional exponents only make sense on the formal variable
            if base == QRat::q() {
                return Ok(QRat::q_frac_pow(num, den));
            }
            return Err(self.err("fractional exponent is only allowed on q"));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<(i64, u32), ScalarParseError> {
        // integer, possibly signed, or a parenthesized fraction (a/b)
        let mut sign = 1i64;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            sign = -1;
        }
        match self.bump() {
            Some(Tok::Int(n)) => {
                let v: i64 = to_i64(&n).ok_or_else(|| self.err("exponent too large"))?;
                Ok((sign * v, 1))
            }
            Some(Tok::LParen) => {
                let mut inner_sign = sign;
                if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    inner_sign = -inner_sign;
                }
                let a = match self.bump() {
                    Some(Tok::Int(n)) => {
                        to_i64(&n).ok_or_else(|| self.err("exponent too large"))?
                    }
                    _ => return Err(self.err("expected integer in exponent")),
                };
                self.expect(Tok::Slash, "'/' in fractional exponent")?;
                let b = match self.bump() {
                    Some(Tok::Int(n)) => {
                        to_i64(&n).ok_or_else(|| self.err("exponent too large"))?
                    }
                    _ => return Err(self.err("expected integer in exponent")),
                };
                self.expect(Tok::RParen, "')'")?;
                if b <= 0 {
                    return Err(self.err("exponent denominator must be positive"));
                }
                Ok((inner_sign * a, b as u32))
            }
            _ => Err(self.err("expected exponent")),
        }
    }
}

fn to_i64(n: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    n.to_i64()
}

pub fn parse_scalar(input: &str) -> Result<QRat, ScalarParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct Term {
    coeff: BigInt,
    // exponent of q as a reduced fraction
    exp_num: i64,
    exp_den: i64,
}

fn poly_terms(p: &IntPoly, d: u32, shift: i64) -> Vec<Term> {
    let mut terms: Vec<Term> = p
        .terms()
        .map(|(i, c)| {
            let raw = i as i64 - shift;
            let g = raw.gcd(&(d as i64)).max(1);
            Term {
                coeff: c.clone(),
                exp_num: raw / g,
                exp_den: d as i64 / g,
            }
        })
        .collect();
    terms.sort_by(|a, b| (b.exp_num * a.exp_den).cmp(&(a.exp_num * b.exp_den)));
    terms
}

fn write_terms(out: &mut String, terms: &[Term]) {
    for (k, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = t.coeff.magnitude();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let qpart = if t.exp_num == 0 {
            None
        } else if t.exp_den == 1 {
            if t.exp_num == 1 {
                Some("q".to_string())
            } else {
                Some(format!("q^{}", t.exp_num))
            }
        } else {
            Some(format!("q^({}/{})", t.exp_num, t.exp_den))
        };
        match qpart {
            None => out.push_str(&mag.to_string()),
            Some(qp) => {
                if mag.is_one() {
                    out.push_str(&qp);
                } else {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&qp);
                }
            }
        }
    }
}

fn render_side(p: &IntPoly, d: u32, shift: i64) -> (String, usize) {
    let terms = poly_terms(p, d, shift);
    let mut s = String::new();
    write_terms(&mut s, &terms);
    (s, terms.len())
}

/// Deterministic rendering; `parse_scalar` recovers the value exactly.
pub(super) fn render(v: &QRat) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let den = v.denominator();
    if den.is_single_term() {
        let k = den.degree().unwrap() as i64;
        let c = den.leading();
        let (num_s, n_terms) = render_side(v.numerator(), v.exponent_den(), k);
        if c.is_one() {
            return num_s;
        }
        if n_terms > 1 {
            return format!("({num_s})/{c}");
        }
        return format!("{num_s}/{c}");
    }
    let (num_s, num_terms) = render_side(v.numerator(), v.exponent_den(), 0);
    let (den_s, den_terms) = render_side(den, v.exponent_den(), 0);
    let num_part = if num_terms > 1 {
        format!("({num_s})")
    } else {
        num_s
    };
    let den_part = if den_terms > 1 {
        format!("({den_s})")
    } else {
        den_s
    };
    format!("{num_part}/{den_part}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q_int;

    #[test]
    fn parse_simple_forms() {
        assert_eq!(
            parse_scalar("1 - q^-2").unwrap(),
            &QRat::one() - &QRat::q_pow(-2)
        );
        assert_eq!(
            parse_scalar("q^(1/2) + q^(-1/2)").unwrap(),
            &QRat::q_frac_pow(1, 2) + &QRat::q_frac_pow(-1, 2)
        );
        assert_eq!(parse_scalar("(q - q^-1)^2").unwrap(), {
            let d = &QRat::q() - &QRat::q_pow(-1);
            &d * &d
        });
    }

    #[test]
    fn render_descending() {
        assert_eq!(q_int(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(QRat::q_frac_pow(-1, 2).to_string(), "q^(-1/2)");
        let inv = (&QRat::q_pow(-1) - &QRat::q()).inv().unwrap();
        assert_eq!(inv.to_string(), "-q/(q^2 - 1)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_scalar("q + #").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(parse_scalar("q^").is_err());
        assert!(parse_scalar("(q").is_err());
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let samples = [
            QRat::zero(),
            QRat::one(),
            QRat::from_int(-7),
            q_int(5),
            (&QRat::q_pow(-1) - &QRat::q()).inv().unwrap(),
            QRat::from_ratio(3.into(), 4.into()).unwrap(),
            &q_int(3) * &QRat::from_ratio(1.into(), 3.into()).unwrap(),
            QRat::q_frac_pow(-5, 6),
            (&q_int(2) + &QRat::q_frac_pow(1, 2))
                .div(&(&q_int(4) - &QRat::from_int(1)))
                .unwrap(),
        ];
        for v in &samples {
            let s = v.to_string();
            let back = parse_scalar(&s).unwrap();
            assert_eq!(&back, v, "round trip of {s}");
        }
    }
}
