//! Parser for the law text format.
//!
//! ```text
//! law     := 'dim' INT (';' bracket)* ';'?
//! bracket := '[' INT ',' INT ']' '=' ['-'] term (('+'|'-') term)*
//! term    := INT ('*' coef)?              -- basis index, then its coefficient
//! coef    := unary (('*'|'/') unary)*
//! unary   := '-' unary | atom
//! atom    := NUMBER | IDENT | 'sqrt' '(' expr ')' | '(' expr ')'
//! expr    := coef (('+'|'-') coef)*
//! ```
//!
//! `#` starts a comment running to the end of the line.
//! Integers and `p/q` stay exact. A decimal literal or an irrational square
//! root turns the whole law into a float law. Identifiers are parameters and
//! are substituted at parse time.

use super::{AnyLaw, LawError, LieLaw};
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at byte {pos} near `{token}`: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub token: String,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Dec(f64),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
    text: String,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && b.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let mut dec = false;
            if i < b.len() && b[i] == b'.' {
                dec = true;
                i += 1;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    dec = true;
                    i = j;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text = &src[start..i];
            let tok = if dec {
                Tok::Dec(text.parse().map_err(|_| perr(start, text, "bad number"))?)
            } else {
                Tok::Int(BigInt::from_str(text).map_err(|_| perr(start, text, "bad integer"))?)
            };
            out.push(Token { tok, pos: start, text: text.to_string() });
        } else if c.is_alphabetic() || c == '_' {
            while i < b.len() {
                let ch = src[i..].chars().next().unwrap();
                if ch.is_alphanumeric() || ch == '_' {
                    i += ch.len_utf8();
                } else {
                    break;
                }
            }
            let text = &src[start..i];
            out.push(Token { tok: Tok::Ident(text.to_string()), pos: start, text: text.to_string() });
        } else if "[],=;*/+-()".contains(c) {
            i += 1;
            out.push(Token { tok: Tok::Sym(c), pos: start, text: c.to_string() });
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(perr(start, &ch.to_string(), "unexpected character"));
        }
    }
    Ok(out)
}

fn perr(pos: usize, token: &str, msg: &str) -> ParseError {
    ParseError { pos, token: token.to_string(), msg: msg.to_string() }
}

#[derive(Clone, Debug)]
enum Val {
    Q(Rational),
    F(f64),
}

impl Val {
    fn f(&self) -> f64 {
        match self {
            Val::Q(q) => ToPrimitive::to_f64(q).unwrap_or(f64::NAN),
            Val::F(x) => *x,
        }
    }
    fn is_zero(&self) -> bool {
        match self {
            Val::Q(q) => q.is_zero(),
            Val::F(x) => *x == 0.0,
        }
    }
    fn bin(self, o: Val, op: char) -> Val {
        match (self, o) {
            (Val::Q(a), Val::Q(b)) => Val::Q(match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                _ => a / b,
            }),
            (a, b) => {
                let (x, y) = (a.f(), b.f());
                Val::F(match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ => x / y,
                })
            }
        }
    }
    fn neg(self) -> Val {
        match self {
            Val::Q(q) => Val::Q(-q),
            Val::F(x) => Val::F(-x),
        }
    }
}

fn exact_sqrt(q: &Rational) -> Option<Rational> {
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

struct Parser<'a> {
    toks: Vec<Token>,
    at: usize,
    end: usize,
    params: &'a BTreeMap<String, Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.pos)
    }
    fn err(&self, msg: &str) -> ParseError {
        let token = self.toks.get(self.at).map_or("<end>".to_string(), |t| t.text.clone());
        perr(self.pos(), &token, msg)
    }
    fn sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }
    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(&Tok::Sym(c));
        if hit {
            self.at += 1;
        }
        hit
    }
    fn index(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.to_usize().ok_or_else(|| self.err("index too large"))?;
                self.at += 1;
                Ok(v)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut v = self.coef()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            v = v.bin(self.coef()?, c);
        }
        Ok(v)
    }

    fn coef(&mut self) -> Result<Val, ParseError> {
        let mut v = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let pos = self.at;
            let r = self.unary()?;
            if c == '/' && r.is_zero() {
                self.at = pos;
                return Err(self.err("division by zero"));
            }
            v = v.bin(r, c);
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<Val, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Val::Q(Rational::from_integer(v)))
            }
            Some(Tok::Dec(x)) => {
                self.at += 1;
                Ok(Val::F(x))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.expr()?;
                self.sym(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.at += 1;
                self.sym('(')?;
                let at = self.at;
                let v = self.expr()?;
                self.sym(')')?;
                match v {
                    Val::Q(q) if q.is_negative() => {
                        self.at = at;
                        Err(self.err("square root of a negative number"))
                    }
                    Val::Q(q) => Ok(exact_sqrt(&q).map_or_else(|| Val::F(ToPrimitive::to_f64(&q).unwrap_or(f64::NAN).sqrt()), Val::Q)),
                    Val::F(x) if x < 0.0 => {
                        self.at = at;
                        Err(self.err("square root of a negative number"))
                    }
                    Val::F(x) => Ok(Val::F(x.sqrt())),
                }
            }
            Some(Tok::Ident(name)) => match self.params.get(&name) {
                Some(q) => {
                    self.at += 1;
                    Ok(Val::Q(q.clone()))
                }
                None => Err(self.err("unknown parameter")),
            },
            _ => Err(self.err("expected a coefficient")),
        }
    }

    fn law(&mut self) -> Result<(usize, Vec<(usize, (usize, usize, usize), Val)>), ParseError> {
        match self.peek() {
            Some(Tok::Ident(k)) if k == "dim" => self.at += 1,
            _ => return Err(self.err("expected `dim`")),
        }
        let n = self.index()?;
        let mut terms = Vec::new();
        loop {
            if self.at == self.toks.len() {
                break;
            }
            self.sym(';')?;
            if self.at == self.toks.len() {
                break;
            }
            let bpos = self.pos();
            self.sym('[')?;
            let i = self.index()?;
            self.sym(',')?;
            let j = self.index()?;
            self.sym(']')?;
            self.sym('=')?;
            let mut neg = self.eat('-');
            loop {
                let k = self.index()?;
                let mut c = Val::Q(<Rational as Scalar>::one());
                if self.eat('*') {
                    c = self.coef()?;
                }
                if neg {
                    c = c.neg();
                }
                terms.push((bpos, (i, j, k), c));
                match self.peek() {
                    Some(Tok::Sym('+')) => {
                        self.at += 1;
                        neg = false;
                    }
                    Some(Tok::Sym('-')) => {
                        self.at += 1;
                        neg = true;
                    }
                    _ => break,
                }
            }
        }
        Ok((n, terms))
    }
}

/// Parses a law with no parameters.
pub fn parse_law(text: &str) -> Result<AnyLaw, ParseError> {
    parse_law_with(text, &BTreeMap::new())
}

/// Parses a law, substituting the given parameter values.
pub fn parse_law_with(text: &str, params: &BTreeMap<String, Rational>) -> Result<AnyLaw, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), params };
    let (n, terms) = p.law()?;
    let float = terms.iter().any(|(_, _, v)| matches!(v, Val::F(_)));
    let mut idx = Vec::with_capacity(terms.len());
    for (pos, (i, j, k), v) in terms {
        let tok = format!("[{i},{j}]");
        if i == 0 || j == 0 || k == 0 || i > n || j > n || k > n {
            return Err(perr(pos, &tok, &LawError::IndexOutOfRange(i, j, k, n).to_string()));
        }
        if i >= j {
            return Err(perr(pos, &tok, &LawError::BadOrder(i, j).to_string()));
        }
        if v.is_zero() {
            return Err(perr(pos, &tok, &LawError::ZeroCoefficient(i, j, k).to_string()));
        }
        idx.push((pos, tok, (i - 1, j - 1, k - 1), v));
    }
    let wrap = |e: LawError, idx: &[(usize, String, (usize, usize, usize), Val)]| match e {
        LawError::Duplicate(i, j, k) => {
            let (pos, tok, ..) = idx.iter().rev().find(|t| t.2 == (i, j, k)).expect("duplicate term is present");
            perr(*pos, tok, &format!("duplicate bracket term [{},{}]->{}", i + 1, j + 1, k + 1))
        }
        e => perr(0, "", &e.to_string()),
    };
    if float {
        let entries: Vec<_> = idx.iter().map(|(_, _, t, v)| (*t, v.f())).collect();
        LieLaw::new(n, entries).map(AnyLaw::Float).map_err(|e| wrap(e, &idx))
    } else {
        let entries: Vec<_> = idx
            .iter()
            .map(|(_, _, t, v)| match v {
                Val::Q(q) => (*t, q.clone()),
                Val::F(_) => unreachable!(),
            })
            .collect();
        LieLaw::new(n, entries).map(AnyLaw::Exact).map_err(|e| wrap(e, &idx))
    }
}
