//! Text syntax for polynomials over F_3 and the canonical printer.
//!
//! Grammar (whitespace and newlines are insignificant, `\cdot` means `*`):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' (digits | '{' digits '}')]
//! atom   := digits | ident | macro '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! A run of identifier characters is split greedily into the longest
//! known names (variables and macros), so `ab1` reads as `a*b1` when both
//! are registered. Trailing digits that match no name are a coefficient.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::mpoly::{mono_exp, MPoly};
use super::VarRegistry;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnknownVariable(String),
    MalformedExponent,
    UnexpectedToken(String),
    UnexpectedEnd,
    ArgCount { name: String, expected: usize, found: usize },
    Macro(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::EmptyInput => write!(f, "empty input"),
            ParseErrorKind::UnknownVariable(s) => write!(f, "unknown variable {s:?}"),
            ParseErrorKind::MalformedExponent => write!(f, "malformed exponent"),
            ParseErrorKind::UnexpectedToken(s) => write!(f, "unexpected {s:?}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::ArgCount { name, expected, found } => {
                write!(f, "{name} takes {expected} argument(s), got {found}")
            }
            ParseErrorKind::Macro(s) => write!(f, "{s}"),
        }
    }
}

/// A named polynomial that may be referenced from other text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroDef {
    pub vars: Vec<String>,
    pub poly: MPoly,
}

/// Source of macro definitions. A bare macro name is expanded with its
/// variables matched by name; `name(e1, ..)` substitutes positionally.
pub trait MacroResolver {
    fn contains(&self, name: &str) -> bool;
    fn expand(&self, name: &str) -> Result<MacroDef, String>;
}

pub struct NoMacros;

impl MacroResolver for NoMacros {
    fn contains(&self, _: &str) -> bool {
        false
    }
    fn expand(&self, name: &str) -> Result<MacroDef, String> {
        Err(format!("no macro named {name}"))
    }
}

impl MacroResolver for HashMap<String, MacroDef> {
    fn contains(&self, name: &str) -> bool {
        self.contains_key(name)
    }
    fn expand(&self, name: &str) -> Result<MacroDef, String> {
        self.get(name).cloned().ok_or_else(|| format!("no macro named {name}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    // no whitespace between this token and the previous one
    glued: bool,
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let mut glued = false;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            glued = false;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            glued = false;
            continue;
        }
        let (start_line, start_col) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        let (tok, len) = if let Some(t) = single {
            (t, 1)
        } else if c.is_ascii_digit() {
            let n = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
            (Tok::Num(chars[i..i + n].iter().collect()), n)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let n = chars[i..].iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').count();
            (Tok::Ident(chars[i..i + n].iter().collect()), n)
        } else if c == '\\' {
            let n = 1 + chars[i + 1..].iter().take_while(|c| c.is_ascii_alphabetic()).count();
            let cmd: String = chars[i..i + n].iter().collect();
            if cmd != "\\cdot" {
                return Err(err(line, col, ParseErrorKind::UnexpectedToken(cmd)));
            }
            (Tok::Star, n)
        } else {
            return Err(err(line, col, ParseErrorKind::UnexpectedToken(c.to_string())));
        };
        out.push(Token { tok, line: start_line, col: start_col, glued });
        glued = true;
        i += len;
        col += len;
    }
    Ok(out)
}

/// Parse tree, kept so that a top-level product can be reported factor
/// by factor.
#[derive(Debug, Clone)]
enum Node {
    Leaf(MPoly),
    Sum(Vec<(bool, Node)>),
    Prod(Vec<Node>),
    Pow(Box<Node>, u32),
}

impl Node {
    fn eval(&self, nvars: usize) -> MPoly {
        match self {
            Node::Leaf(p) => p.clone(),
            Node::Sum(items) => items.iter().fold(MPoly::zero(nvars), |acc, (neg, n)| {
                let v = n.eval(nvars);
                if *neg {
                    acc.sub(&v)
                } else {
                    acc.add(&v)
                }
            }),
            Node::Prod(items) => items.iter().fold(MPoly::one(nvars), |acc, n| {
                if acc.is_zero() {
                    acc
                } else {
                    acc.mul(&n.eval(nvars))
                }
            }),
            Node::Pow(b, e) => b.eval(nvars).pow(*e),
        }
    }

    fn collect_factors(&self, nvars: usize, out: &mut Vec<(MPoly, u32)>) {
        match self {
            Node::Sum(items) if items.len() == 1 => {
                if items[0].0 {
                    out.push((MPoly::constant(nvars, -1), 1));
                }
                items[0].1.collect_factors(nvars, out);
            }
            Node::Prod(items) => {
                for n in items {
                    n.collect_factors(nvars, out);
                }
            }
            Node::Pow(b, e) => out.push((b.eval(nvars), *e)),
            n => out.push((n.eval(nvars), 1)),
        }
    }
}

struct Parser<'a, M: MacroResolver + ?Sized> {
    toks: Vec<Token>,
    pos: usize,
    reg: &'a VarRegistry,
    macros: &'a M,
    end: (usize, usize),
}

impl<'a, M: MacroResolver + ?Sized> Parser<'a, M> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.eof())?;
        self.pos += 1;
        Ok(t)
    }

    fn eof(&self) -> ParseError {
        err(self.end.0, self.end.1, ParseErrorKind::UnexpectedEnd)
    }

    fn unexpected(t: &Token) -> ParseError {
        let s = match &t.tok {
            Tok::Num(s) | Tok::Ident(s) => s.clone(),
            other => format!("{other:?}"),
        };
        err(t.line, t.col, ParseErrorKind::UnexpectedToken(s))
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let t = self.next()?;
        if t.tok == want {
            Ok(())
        } else {
            Err(Self::unexpected(&t))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut items = Vec::new();
        let mut neg = false;
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            items.push((neg, self.term()?));
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Node::Sum(items))
    }

    fn starts_factor(t: &Tok) -> bool {
        matches!(t, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut factors = Vec::new();
        self.factor(&mut factors)?;
        loop {
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Star) => {
                    self.pos += 1;
                    self.factor(&mut factors)?;
                }
                Some(t) if Self::starts_factor(t) => self.factor(&mut factors)?,
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Node::Prod(factors) })
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if !matches!(self.peek().map(|t| &t.tok), Some(Tok::Caret)) {
            return Ok(None);
        }
        let caret = self.next()?;
        let bad = err(caret.line, caret.col, ParseErrorKind::MalformedExponent);
        let t = self.next().map_err(|_| bad.clone())?;
        let digits = match t.tok {
            Tok::Num(s) => s,
            Tok::LBrace => {
                let inner = self.next().map_err(|_| bad.clone())?;
                let Tok::Num(s) = inner.tok else { return Err(bad) };
                let close = self.next().map_err(|_| bad.clone())?;
                if close.tok != Tok::RBrace {
                    return Err(bad);
                }
                s
            }
            _ => return Err(bad),
        };
        digits.parse::<u32>().map(Some).map_err(|_| bad)
    }

    /// Pushes one or more factors (several when an identifier run splits).
    fn factor(&mut self, out: &mut Vec<Node>) -> Result<(), ParseError> {
        let t = self.next()?;
        let mut last = match &t.tok {
            Tok::Num(s) => Node::Leaf(MPoly::constant(self.reg.len(), digits_mod3(s))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                inner
            }
            Tok::Ident(s) => {
                let mut pieces = self.split_ident(s, t.line, t.col)?;
                let (name, col) = pieces.pop().unwrap();
                for (p, c) in pieces {
                    out.push(self.atom_name(&p, t.line, c, false)?);
                }
                let call = self.peek().is_some_and(|n| n.glued && n.tok == Tok::LParen)
                    && self.macros.contains(&name)
                    && self.reg.index(&name).is_none();
                self.atom_name(&name, t.line, col, call)?
            }
            _ => return Err(Self::unexpected(&t)),
        };
        if let Some(e) = self.exponent()? {
            last = Node::Pow(Box::new(last), e);
        }
        out.push(last);
        Ok(())
    }

    /// Splits an identifier run into known names; unmatched trailing
    /// digits become a numeric piece.
    fn split_ident(&self, s: &str, line: usize, col: usize) -> Result<Vec<(String, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut rest = s;
        let mut c = col;
        while !rest.is_empty() {
            let known = (1..=rest.len())
                .rev()
                .find(|&n| self.reg.index(&rest[..n]).is_some() || self.macros.contains(&rest[..n]));
            let n = match known {
                Some(n) => n,
                None if rest.bytes().all(|b| b.is_ascii_digit()) => rest.len(),
                None => {
                    return Err(err(line, c, ParseErrorKind::UnknownVariable(rest.to_string())));
                }
            };
            out.push((rest[..n].to_string(), c));
            rest = &rest[n..];
            c += n;
        }
        Ok(out)
    }

    fn atom_name(&mut self, name: &str, line: usize, col: usize, call: bool) -> Result<Node, ParseError> {
        let nv = self.reg.len();
        if name.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(Node::Leaf(MPoly::constant(nv, digits_mod3(name))));
        }
        if !call {
            if let Some(i) = self.reg.index(name) {
                return Ok(Node::Leaf(MPoly::var(nv, i)));
            }
        }
        let def = self
            .macros
            .expand(name)
            .map_err(|m| err(line, col, ParseErrorKind::Macro(m)))?;
        let images: Vec<MPoly> = if call {
            self.expect(Tok::LParen)?;
            let mut args = vec![self.expr()?.eval(nv)];
            while matches!(self.peek().map(|t| &t.tok), Some(Tok::Comma)) {
                self.pos += 1;
                args.push(self.expr()?.eval(nv));
            }
            self.expect(Tok::RParen)?;
            if args.len() != def.vars.len() {
                return Err(err(
                    line,
                    col,
                    ParseErrorKind::ArgCount { name: name.to_string(), expected: def.vars.len(), found: args.len() },
                ));
            }
            args
        } else {
            def.vars
                .iter()
                .map(|v| {
                    self.reg.poly(v).map_err(|_| {
                        err(line, col, ParseErrorKind::Macro(format!("{name} uses {v}, which is not in scope")))
                    })
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Node::Leaf(def.poly.compose(&images)))
    }
}

fn digits_mod3(s: &str) -> i64 {
    s.bytes().fold(0, |acc, b| (acc * 10 + (b - b'0') as i64) % 3)
}

fn parse_tree<M: MacroResolver + ?Sized>(text: &str, reg: &VarRegistry, macros: &M) -> Result<Node, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(err(1, 1, ParseErrorKind::EmptyInput));
    }
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1)
    };
    let mut p = Parser { toks, pos: 0, reg, macros, end };
    let node = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Parser::<M>::unexpected(t));
    }
    Ok(node)
}

pub fn parse(text: &str, reg: &VarRegistry) -> Result<MPoly, ParseError> {
    parse_with(text, reg, &NoMacros)
}

pub fn parse_with<M: MacroResolver + ?Sized>(text: &str, reg: &VarRegistry, macros: &M) -> Result<MPoly, ParseError> {
    Ok(parse_tree(text, reg, macros)?.eval(reg.len()))
}

/// The top-level factors of a product as written, with their exponents.
/// A leading minus sign becomes a factor `-1`; a sum is a single factor.
pub fn parse_factors_with<M: MacroResolver + ?Sized>(
    text: &str,
    reg: &VarRegistry,
    macros: &M,
) -> Result<Vec<(MPoly, u32)>, ParseError> {
    let mut out = Vec::new();
    parse_tree(text, reg, macros)?.collect_factors(reg.len(), &mut out);
    Ok(out)
}

/// Canonical text: terms in descending graded-lex order, coefficient 2
/// shown as a minus sign, `*` between variables.
pub fn print(p: &MPoly, reg: &VarRegistry) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, &(m, c)) in p.terms().iter().enumerate() {
        match (i, c) {
            (0, 2) => s.push('-'),
            (0, _) => {}
            (_, 2) => s.push_str(" - "),
            _ => s.push_str(" + "),
        }
        let mut parts = Vec::new();
        for v in 0..p.nvars() {
            match mono_exp(m, v) {
                0 => {}
                1 => parts.push(reg.name(v).to_string()),
                e => parts.push(format!("{}^{e}", reg.name(v))),
            }
        }
        if parts.is_empty() {
            s.push('1');
        } else {
            s.push_str(&parts.join("*"));
        }
    }
    s
}
