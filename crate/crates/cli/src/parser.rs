//! Recursive-descent parser for the calculator expression language.
//!
//! Grammar (whitespace insignificant between tokens):
//!
//! ```text
//! expr  := sum | "v(" sum ")" | "d(" sum "," sum ")" ;
//! sum   := prod { "+" prod } ;
//! prod  := unary { "*" unary } ;
//! unary := "-" unary | atom ;
//! atom  := INT | "(" sum ")" ;
//! ```
//!
//! `v(...)` and `d(...)` are the valuation and distance queries; they return
//! metric answers rather than streams, which is why the grammar only admits
//! them at the top level. There is no binary minus — subtraction is spelled
//! `a + -b`.

use std::fmt;

use num_bigint::BigInt;

/// Abstract syntax of one calculator expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    IntLit(BigInt),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Val(Box<Expr>),
    Dist(Box<Expr>, Box<Expr>),
}

// constructor helpers, not operator impls: trees are built, not evaluated here
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::IntLit(BigInt::from(v))
    }

    pub fn add(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Add(Box::new(lhs), Box::new(rhs))
    }

    pub fn mul(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(inner: Expr) -> Expr {
        Expr::Neg(Box::new(inner))
    }

    pub fn val(inner: Expr) -> Expr {
        Expr::Val(Box::new(inner))
    }

    pub fn dist(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Dist(Box::new(lhs), Box::new(rhs))
    }
}

/// Canonical text form: compound nodes fully parenthesized, so printing and
/// reparsing is the identity on syntax trees.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::IntLit(v) => write!(f, "{v}"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Neg(a) => write!(f, "-{a}"),
            Expr::Val(a) => write!(f, "v({a})"),
            Expr::Dist(a, b) => write!(f, "d({a}, {b})"),
        }
    }
}

/// Syntax error: where it happened and what would have been legal there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source at which parsing failed.
    pub offset: usize,
    /// The tokens that would have been accepted at that offset.
    pub expected: Vec<&'static str>,
    /// What was actually found (a character, or "end of input").
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    p.skip_ws();
    // A leading `v` or `d` can only open a query, so commit to it; queries
    // are top-level only because atoms never admit letters.
    let (expr, after): (Expr, &[&'static str]) = match p.peek() {
        Some(b'v') => {
            p.pos += 1;
            p.expect(b'(', "\"(\"")?;
            let inner = p.sum()?;
            p.expect(b')', "\")\"")?;
            (Expr::Val(Box::new(inner)), &["end of input"])
        }
        Some(b'd') => {
            p.pos += 1;
            p.expect(b'(', "\"(\"")?;
            let lhs = p.sum()?;
            p.expect(b',', "\",\"")?;
            let rhs = p.sum()?;
            p.expect(b')', "\")\"")?;
            (Expr::Dist(Box::new(lhs), Box::new(rhs)), &["end of input"])
        }
        _ => (p.sum()?, &["\"+\"", "\"*\"", "end of input"]),
    };
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(after.to_vec()));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{:?}", c as char),
            None => "end of input".to_string(),
        };
        ParseError { offset: self.pos, expected, found }
    }

    fn expect(&mut self, token: u8, name: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(token) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn eat(&mut self, token: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.prod()?;
        while self.eat(b'+') {
            let rhs = self.prod()?;
            acc = Expr::Add(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            let rhs = self.unary()?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("digit run is ascii");
                Ok(Expr::IntLit(text.parse().expect("digit run parses")))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')', "\")\"")?;
                Ok(inner)
            }
            _ => Err(self.error(vec!["an integer", "\"(\"", "\"-\""])),
        }
    }
}
