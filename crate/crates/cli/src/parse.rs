//! Ring and ideal expressions.
//!
//! ```text
//! ring   := IDENT '[' IDENT (',' IDENT)* ']'
//! ideal  := term (',' term)*
//! term   := factor ('*' factor)* | '1'
//! factor := IDENT ('^' UINT)?
//! ```
//!
//! Whitespace is ignored everywhere. The coefficient token in front of the
//! ring's bracket is accepted and otherwise ignored.

use std::fmt;

use reesval_core::{ExponentVector, MonomialIdeal, RingContext};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownVariable(String),
    ZeroExponent,
    EmptyIdeal,
    Syntax(String),
    InvalidRing(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Self::ZeroExponent => write!(f, "exponent 0 is not allowed"),
            Self::EmptyIdeal => write!(f, "empty ideal expression"),
            Self::Syntax(msg) => write!(f, "syntax error: {msg}"),
            Self::InvalidRing(msg) => write!(f, "invalid ring: {msg}"),
        }
    }
}

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl ParseError {
    fn new(kind: ParseErrorKind, position: usize) -> Self {
        Self { kind, position }
    }

    fn syntax(msg: impl Into<String>, position: usize) -> Self {
        Self::new(ParseErrorKind::Syntax(msg.into()), position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Uint(u32),
    Comma,
    Star,
    Caret,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Uint(n) => write!(f, "`{n}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Open => f.write_str("`[`"),
            Tok::Close => f.write_str("`]`"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
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
            b',' => Tok::Comma,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'[' => Tok::Open,
            b']' => Tok::Close,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse::<u32>()
                    .map_err(|_| ParseError::syntax("integer too large", start))?;
                out.push((Tok::Uint(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(
                    format!("unexpected character `{ch}`"),
                    start,
                ));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Self {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.bump() {
            Some((t, _)) if t == want => Ok(()),
            Some((t, p)) => Err(ParseError::syntax(format!("expected {want}, found {t}"), p)),
            None => Err(ParseError::syntax(
                format!("expected {want}, found end of input"),
                self.end,
            )),
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        match self.bump() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((t, p)) => Err(ParseError::syntax(format!("expected a name, found {t}"), p)),
            None => Err(ParseError::syntax(
                "expected a name, found end of input",
                self.end,
            )),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((t, p)) => Err(ParseError::syntax(format!("unexpected {t}"), *p)),
        }
    }

    fn term(&mut self, ring: &RingContext) -> Result<ExponentVector, ParseError> {
        let mut exps = vec![0u32; ring.dim()];
        if let Some(Tok::Uint(1)) = self.peek() {
            self.bump();
            return Ok(ExponentVector::new(exps));
        }
        loop {
            let (name, at) = self.ident()?;
            let i = ring
                .index_of(&name)
                .ok_or_else(|| ParseError::new(ParseErrorKind::UnknownVariable(name), at))?;
            let mut e = 1;
            if let Some(Tok::Caret) = self.peek() {
                self.bump();
                match self.bump() {
                    Some((Tok::Uint(0), p)) => {
                        return Err(ParseError::new(ParseErrorKind::ZeroExponent, p))
                    }
                    Some((Tok::Uint(n), _)) => e = n,
                    Some((t, p)) => {
                        return Err(ParseError::syntax(
                            format!("expected an exponent, found {t}"),
                            p,
                        ))
                    }
                    None => {
                        return Err(ParseError::syntax(
                            "expected an exponent, found end of input",
                            self.end,
                        ))
                    }
                }
            }
            exps[i] = exps[i]
                .checked_add(e)
                .ok_or_else(|| ParseError::syntax("exponent too large", at))?;
            if let Some(Tok::Star) = self.peek() {
                self.bump();
            } else {
                return Ok(ExponentVector::new(exps));
            }
        }
    }
}

/// Parse `Coef[v1, ..., vd]`.
pub fn parse_ring(text: &str) -> Result<RingContext, ParseError> {
    let mut p = Parser::new(text)?;
    if p.peek().is_none() {
        return Err(ParseError::new(
            ParseErrorKind::InvalidRing("empty ring".into()),
            0,
        ));
    }
    p.ident()?;
    let open_at = p.offset();
    p.expect(Tok::Open)?;
    let mut names = vec![p.ident()?.0];
    while let Some(Tok::Comma) = p.peek() {
        p.bump();
        names.push(p.ident()?.0);
    }
    p.expect(Tok::Close)?;
    p.finish()?;
    RingContext::new(names)
        .map_err(|e| ParseError::new(ParseErrorKind::InvalidRing(e.to_string()), open_at))
}

/// Parse a comma-separated list of monomials into a normalized ideal.
pub fn parse_ideal(text: &str, ring: &RingContext) -> Result<MonomialIdeal, ParseError> {
    let mut p = Parser::new(text)?;
    if p.peek().is_none() {
        return Err(ParseError::new(ParseErrorKind::EmptyIdeal, 0));
    }
    let mut gens = vec![p.term(ring)?];
    while let Some(Tok::Comma) = p.peek() {
        p.bump();
        gens.push(p.term(ring)?);
    }
    p.finish()?;
    Ok(MonomialIdeal::new(ring.clone(), gens).expect("parser builds vectors of ring length"))
}

/// Parse a single monomial, e.g. `x*y^2` or `1`.
pub fn parse_monomial(text: &str, ring: &RingContext) -> Result<ExponentVector, ParseError> {
    let mut p = Parser::new(text)?;
    if p.peek().is_none() {
        return Err(ParseError::syntax("empty monomial", 0));
    }
    let m = p.term(ring)?;
    p.finish()?;
    Ok(m)
}

/// Render a monomial with explicit `*` and `^`; the unit monomial is `1`.
pub fn render_monomial(m: &ExponentVector, ring: &RingContext) -> String {
    let parts: Vec<String> = m
        .coords()
        .iter()
        .zip(ring.names())
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| {
            if e == 1 {
                name.clone()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Generators in canonical order, comma separated. The zero ideal renders as `0`.
pub fn render_ideal(j: &MonomialIdeal) -> String {
    if j.is_zero() {
        return "0".to_string();
    }
    j.generators()
        .iter()
        .map(|g| render_monomial(g, j.ring()))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_ring(ring: &RingContext) -> String {
    format!("Q[{}]", ring.names().join(","))
}
