//! Expression language for symmetric-function identities.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' nat)*
//! primary := int ['/' int] | atom | '(' expr ')'
//! atom    := ('p' | 'h' | 'e' | 'm') '[' nat (',' nat)* ']' '(' alphabet ')'
//! alphabet:= 'X' | 'X/(1-t*X)'
//! ```
//!
//! Whitespace is insignificant. An equation is two expressions joined by `==`.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};

use crate::arith::{format_rational, BiSeries, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::symfunc::{transformed_basis_series, transformed_monomial_series, Basis, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `X`
    Plain,
    /// `X/(1-t*X)`
    Transformed,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Plain => f.write_str("X"),
            Alphabet::Transformed => f.write_str("X/(1-t*X)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Atom {
        basis: Basis,
        partition: Partition,
        alphabet: Alphabet,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn atom(basis: Basis, partition: Partition, alphabet: Alphabet) -> Expr {
        Expr::Atom {
            basis,
            partition,
            alphabet,
        }
    }

    /// Total degree in the alphabet; numbers have degree 0.
    pub fn degree(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Atom { partition, .. } => partition.weight(),
            Expr::Neg(a) => a.degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree().max(b.degree()),
            Expr::Mul(a, b) => a.degree() + b.degree(),
            Expr::Pow(a, n) => a.degree() * *n as usize,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(c) if c.is_negative() => 0,
            Expr::Num(_) | Expr::Atom { .. } => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(c) => write!(f, "{}", format_rational(c)),
            Expr::Atom {
                basis,
                partition,
                alphabet,
            } => write!(f, "{basis}{partition}({alphabet})"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                b.fmt_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.fmt_at(f, 4)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    EqEq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_alphabetic() {
            while i < chars.len() && chars[i].is_alphabetic() {
                i += 1;
            }
            Tok::Word(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '=' if chars.get(i) == Some(&'=') => {
                    i += 1;
                    Tok::EqEq
                }
                _ => return Err(parse_error(tl, tc, format!("unexpected character `{c}`"))),
            }
        };
        column += i - start;
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        parse_error(t.line, t.column, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek().tok)))
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        match &self.peek().tok {
            Tok::Word(w) if w == word => {
                self.next();
                Ok(())
            }
            other => Err(self.error_here(format!("expected `{word}`, found {other}"))),
        }
    }

    fn expect_int(&mut self) -> Result<(BigInt, Token)> {
        match self.peek().tok.clone() {
            Tok::Int(n) => Ok((n, self.next())),
            other => Err(self.error_here(format!("expected a number, found {other}"))),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<u32> {
        let (n, tok) = self.expect_int()?;
        u32::try_from(&n).map_err(|_| parse_error(tok.line, tok.column, format!("{what} `{n}` is too large")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek().tok {
            Tok::End => Ok(()),
            ref other => Err(self.error_here(format!("unexpected {other}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut acc = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.next();
            let n = self.small_int("exponent")?;
            acc = Expr::Pow(Box::new(acc), n);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Expr> {
        let here = self.peek().clone();
        match here.tok {
            Tok::Int(n) => {
                self.next();
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let (d, dtok) = self.expect_int()?;
                    if d.is_zero() {
                        return Err(parse_error(dtok.line, dtok.column, "zero denominator"));
                    }
                    Ok(Expr::Num(Rational::new(n, d)))
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Word(w) => {
                let mut chars = w.chars();
                let basis = match (chars.next(), chars.next()) {
                    (Some(c), None) => Basis::from_letter(c),
                    _ => None,
                };
                let basis = basis.ok_or_else(|| {
                    parse_error(here.line, here.column, format!("unknown basis letter `{w}`"))
                })?;
                self.next();
                self.atom(basis)
            }
            other => Err(self.error_here(format!("unexpected {other}"))),
        }
    }

    fn atom(&mut self, basis: Basis) -> Result<Expr> {
        let open = self.expect(Tok::LBracket)?;
        let mut parts = vec![self.small_int("part")? as usize];
        while self.peek().tok == Tok::Comma {
            self.next();
            parts.push(self.small_int("part")? as usize);
        }
        self.expect(Tok::RBracket)?;
        let partition = Partition::new(parts).map_err(|e| {
            let message = match e {
                Error::InvalidPartition(m) => format!("malformed partition: {m}"),
                other => other.to_string(),
            };
            parse_error(open.line, open.column, message)
        })?;
        self.expect(Tok::LParen)?;
        self.expect_word("X")?;
        let alphabet = if self.peek().tok == Tok::Slash {
            self.next();
            self.expect(Tok::LParen)?;
            let (one, tok) = self.expect_int()?;
            if !one.is_one() {
                return Err(parse_error(tok.line, tok.column, "expected `1` in `X/(1-t*X)`"));
            }
            self.expect(Tok::Minus)?;
            self.expect_word("t")?;
            self.expect(Tok::Star)?;
            self.expect_word("X")?;
            self.expect(Tok::RParen)?;
            Alphabet::Transformed
        } else {
            Alphabet::Plain
        };
        self.expect(Tok::RParen)?;
        Ok(Expr::atom(basis, partition, alphabet))
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `lhs == rhs`.
pub fn parse_equation(text: &str) -> Result<(Expr, Expr)> {
    let mut p = Parser::new(text)?;
    let lhs = p.expr()?;
    p.expect(Tok::EqEq)?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok((lhs, rhs))
}

/// Evaluates in `nvars` concrete variables as a series in `t` through
/// `t_order`. Requires `nvars >= expr.degree()`.
pub fn eval(expr: &Expr, nvars: usize, t_order: usize) -> Result<BiSeries> {
    let needed = expr.degree();
    if nvars < needed {
        return Err(Error::InsufficientVariables { needed, got: nvars });
    }
    Evaluator {
        oracle: Oracle::new(nvars),
        t_order,
    }
    .eval(expr)
}

struct Evaluator {
    oracle: Oracle,
    t_order: usize,
}

impl Evaluator {
    fn nvars(&self) -> usize {
        self.oracle.nvars()
    }

    fn eval(&mut self, expr: &Expr) -> Result<BiSeries> {
        let (n, d) = (self.nvars(), self.t_order);
        match expr {
            Expr::Num(c) => Ok(BiSeries::constant(MultiPoly::rational(n, c.clone()), d, 0)),
            Expr::Atom {
                basis,
                partition,
                alphabet: Alphabet::Plain,
            } => Ok(BiSeries::constant(self.oracle.basis_element(*basis, partition), d, 0)),
            Expr::Atom {
                basis: Basis::Monomial,
                partition,
                alphabet: Alphabet::Transformed,
            } => transformed_monomial_series(partition, n, d),
            Expr::Atom {
                basis,
                partition,
                alphabet: Alphabet::Transformed,
            } => {
                let mut acc = BiSeries::one(n, d, 0);
                for &k in partition.parts() {
                    acc = acc.mul(&transformed_basis_series(*basis, k, n, d)?)?;
                }
                Ok(acc)
            }
            Expr::Neg(a) => Ok(self.eval(a)?.neg()),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Pow(a, e) => Ok(self.eval(a)?.pow(*e)),
        }
    }
}
