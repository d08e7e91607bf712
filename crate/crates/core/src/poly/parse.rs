//! Tokenizer and recursive-descent parser for polynomial expressions.
//!
//! Grammar: integers, variables, `+ - * / ^`, parentheses. Division is only
//! allowed by a nonzero constant, which is how rational coefficients like
//! `1/2*z0` are written. `#` starts a comment running to the end of the line.

use thiserror::Error;

use super::{Monomial, PolyRing, Polynomial};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self { line, col, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l, col) = (lineno + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Int(chars[start..i].iter().collect()), line: l, col });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric()
                        || chars[i] == '_'
                        || chars[i] == '-' && is_keyword_dash(&chars[start..i]))
                {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l, col });
            } else if "+-*/^(),".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line: l, col });
                i += 1;
            } else {
                return Err(ParseError::new(l, col, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

// `expected-degree` is the only identifier containing a dash.
fn is_keyword_dash(prefix: &[char]) -> bool {
    prefix.iter().collect::<String>() == "expected"
}

/// A cursor over tokens shared by the polynomial and form-file parsers.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token], text: &str) -> Self {
        let lines = text.lines().count().max(1);
        let last_len = text.lines().last().map_or(0, |l| l.chars().count());
        Self { toks, pos: 0, end: (lines, last_len + 1) }
    }

    pub fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    pub fn peek_tok(&self) -> Option<&'a Tok> {
        self.peek().map(|t| &t.tok)
    }

    pub fn bump(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(t.line, t.col, message),
            None => ParseError::new(self.end.0, self.end.1, message),
        }
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.peek_tok() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

pub(crate) struct ExprParser<'r> {
    pub ring: PolyRing,
    pub names: &'r [String],
}

impl ExprParser<'_> {
    fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn expr<C: Field>(&self, cur: &mut Cursor<'_>) -> Result<Polynomial<C>, ParseError> {
        let mut acc = if cur.eat_sym('-') {
            -self.term(cur)?
        } else {
            cur.eat_sym('+');
            self.term(cur)?
        };
        loop {
            if cur.eat_sym('+') {
                acc = &acc + &self.term(cur)?;
            } else if cur.eat_sym('-') {
                acc = &acc - &self.term(cur)?;
            } else {
                return Ok(acc);
            }
        }
    }

    pub fn term<C: Field>(&self, cur: &mut Cursor<'_>) -> Result<Polynomial<C>, ParseError> {
        let mut acc = self.factor(cur)?;
        loop {
            if cur.eat_sym('*') {
                acc = &acc * &self.factor(cur)?;
            } else if cur.peek_tok() == Some(&Tok::Sym('/')) {
                let here = cur.error_here("division by a non-constant or zero");
                cur.bump();
                let d: Polynomial<C> = self.factor(cur)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(here);
                }
                let c = d.leading_coefficient().expect("nonzero").inv();
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<C: Field>(&self, cur: &mut Cursor<'_>) -> Result<Polynomial<C>, ParseError> {
        let base = self.atom(cur)?;
        if cur.eat_sym('^') {
            match cur.bump() {
                Some(Token { tok: Tok::Int(s), line, col }) => {
                    let e: u32 = s.parse().map_err(|_| ParseError::new(*line, *col, "exponent too large"))?;
                    if e > 64 {
                        return Err(ParseError::new(*line, *col, "exponent too large"));
                    }
                    Ok(base.pow(e))
                }
                _ => Err(cur.error_here("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<C: Field>(&self, cur: &mut Cursor<'_>) -> Result<Polynomial<C>, ParseError> {
        let err = cur.error_here("expected a number, variable or '('");
        match cur.bump() {
            Some(Token { tok: Tok::Int(s), line, col }) => {
                let c = C::parse_literal(s).ok_or_else(|| ParseError::new(*line, *col, "bad number"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Token { tok: Tok::Ident(name), line, col }) => match self.var_index(name) {
                Some(i) => Ok(Polynomial::monomial(self.ring, Monomial::var(i), C::one())),
                None => Err(ParseError::new(*line, *col, format!("unknown variable '{name}'"))),
            },
            Some(Token { tok: Tok::Sym('('), .. }) => {
                let inner = self.expr(cur)?;
                if !cur.eat_sym(')') {
                    return Err(cur.error_here("expected ')'"));
                }
                Ok(inner)
            }
            _ => Err(err),
        }
    }
}

/// Parse a polynomial written with the ring's default names `z0, z1, …`.
pub fn parse_polynomial<C: Field>(ring: PolyRing, text: &str) -> Result<Polynomial<C>, ParseError> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks, text);
    let names = ring.var_names();
    let parser = ExprParser { ring, names: &names };
    let p = parser.expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error_here("trailing input"));
    }
    Ok(p)
}
