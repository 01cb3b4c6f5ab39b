//! Parsers for ring elements, field constants, rational maps and points.
//!
//! Everything the tool prints parses back to an equal value.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use lattes_core::{Error as CoreError, KNum, Point, QuadInt, RatFunc, RingId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character `{0}` at offset {1}")]
    BadChar(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("`{0}` is not available in the {1} ring")]
    WrongRing(String, RingId),
    #[error("`x` is not allowed here")]
    Variable,
    #[error("{0} is not an element of the ring")]
    NotIntegral(String),
    #[error("exponent must be a small non-negative integer")]
    Exponent,
    #[error("expected `inf` or `x,y`")]
    Point,
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    /// `sqrt(-d)` or the alias `sqrt-3`
    Sqrt(u32),
    Op(char),
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(w) => f.write_str(w),
            Tok::Sqrt(d) => write!(f, "sqrt(-{d})"),
            Tok::Op(c) => write!(f, "{c}"),
        }
    }
}

fn lex(s: &str) -> Result<Vec<Tok>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "sqrt" {
                let rest: String = chars[i..].iter().collect();
                let (d, used) = [(1, "(-1)"), (3, "(-3)"), (3, "-3")]
                    .into_iter()
                    .find(|(_, form)| rest.starts_with(form))
                    .ok_or_else(|| ParseError::Unexpected("sqrt".into()))?;
                i += used.len();
                out.push(Tok::Sqrt(d));
            } else {
                out.push(Tok::Ident(word));
            }
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(ParseError::BadChar(c, i));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Atom(String),
    Sqrt(u32),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ParseError::Eof)?;
        self.pos += 1;
        Ok(t)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.next()? {
            Tok::Int(n) => Ok(Expr::Pow(
                Box::new(base),
                n.to_u32().filter(|&e| e <= 4096).ok_or(ParseError::Exponent)?,
            )),
            _ => Err(ParseError::Exponent),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next()? {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Ident(w) => Ok(Expr::Atom(w)),
            Tok::Sqrt(d) => Ok(Expr::Sqrt(d)),
            Tok::Op('(') => {
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(match self.peek() {
                        None => ParseError::Eof,
                        Some(t) => ParseError::Unexpected(t.to_string()),
                    });
                }
                Ok(e)
            }
            Tok::Op(c) => Err(ParseError::Unexpected(c.to_string())),
        }
    }
}

fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.sum()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(ParseError::Unexpected(t.to_string())),
    }
}

fn quad_atom(ring: RingId, name: &str) -> Result<QuadInt, ParseError> {
    match (ring, name) {
        (RingId::Gaussian, "i") | (RingId::Eisenstein, "w") => Ok(QuadInt::theta(ring)),
        _ => Err(ParseError::WrongRing(name.to_string(), ring)),
    }
}

fn eval_quad(ring: RingId, e: &Expr) -> Result<QuadInt, ParseError> {
    Ok(match e {
        Expr::Int(n) => QuadInt::from_int(ring, n.clone()),
        Expr::Atom(a) if a == "x" => return Err(ParseError::Variable),
        Expr::Atom(a) => quad_atom(ring, a)?,
        Expr::Sqrt(1) if ring == RingId::Gaussian => QuadInt::theta(ring),
        Expr::Sqrt(3) if ring == RingId::Eisenstein => QuadInt::sqrt_minus_three(),
        Expr::Sqrt(d) => return Err(ParseError::WrongRing(format!("sqrt(-{d})"), ring)),
        Expr::Neg(a) => -eval_quad(ring, a)?,
        Expr::Pow(a, k) => eval_quad(ring, a)?.pow(*k),
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval_quad(ring, a)?, eval_quad(ring, b)?);
            match op {
                '+' => &a + &b,
                '-' => &a - &b,
                '*' => &a * &b,
                _ => a
                    .try_div(&b)?
                    .ok_or_else(|| ParseError::NotIntegral(format!("({a})/({b})")))?,
            }
        }
    })
}

fn eval_rf(ring: RingId, e: &Expr) -> Result<RatFunc, ParseError> {
    Ok(match e {
        Expr::Int(n) => RatFunc::constant(KNum::from_int(ring, n.clone())),
        Expr::Atom(a) if a == "x" => RatFunc::identity(ring),
        Expr::Atom(a) => RatFunc::constant(KNum::embed(&quad_atom(ring, a)?)),
        Expr::Sqrt(d) if *d == ring.d() => RatFunc::constant(KNum::sqrt_minus_d(ring)),
        Expr::Sqrt(d) => return Err(ParseError::WrongRing(format!("sqrt(-{d})"), ring)),
        Expr::Neg(a) => eval_rf(ring, a)?.neg(),
        Expr::Pow(a, k) => eval_rf(ring, a)?.pow(i64::from(*k))?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval_rf(ring, a)?, eval_rf(ring, b)?);
            match op {
                '+' => a.add(&b),
                '-' => a.sub(&b),
                '*' => a.mul(&b),
                _ => a.div(&b)?,
            }
        }
    })
}

/// `2+1*i`, `-3`, `sqrt-3`, `(1+2*w)*w`, ...
pub fn parse_quadint(ring: RingId, s: &str) -> Result<QuadInt, ParseError> {
    eval_quad(ring, &parse_expr(s)?)
}

/// A rational function of `x` over K, e.g. `(x^2 - 1)/(4*x)`.
pub fn parse_ratfunc(ring: RingId, s: &str) -> Result<RatFunc, ParseError> {
    eval_rf(ring, &parse_expr(s)?)
}

/// An element of K, e.g. `1/2 - 3/2*sqrt(-3)`.
pub fn parse_knum(ring: RingId, s: &str) -> Result<KNum, ParseError> {
    let f = parse_ratfunc(ring, s)?;
    f.as_constant().ok_or(ParseError::Variable)
}

/// `inf` or `x,y`.
pub fn parse_point(ring: RingId, s: &str) -> Result<Point, ParseError> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(Point::Infinity);
    }
    let (x, y) = t.split_once(',').ok_or(ParseError::Point)?;
    Ok(Point::affine(parse_knum(ring, x)?, parse_knum(ring, y)?))
}
