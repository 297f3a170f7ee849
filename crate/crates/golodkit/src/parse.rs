//! Parsing and rendering of ideal descriptions.
//!
//! Two input formats are accepted and autodetected: a small text grammar
//!
//! ```text
//! ring <ident>+ ;
//! ideal <term> (, <term>)* ;
//! ```
//!
//! with `<term> = <factor> ('*' <factor>)*` and `<factor> = <ident> ('^' <uint>)?`,
//! and a JSON object `{"vars": [...], "generators": [[e11,...,e1m], ...]}`
//! listing exponent rows. Input starting with `{` (after whitespace) is
//! treated as JSON.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::PolyRing;

/// Parses either input format into an ideal.
pub fn parse_ideal(input: &str) -> Result<MonomialIdeal> {
    if input.trim_start().starts_with('{') {
        parse_ideal_json(input)
    } else {
        parse_ideal_text(input)
    }
}

/// Renders an ideal in the text grammar. Round-trips through
/// [`parse_ideal`].
pub fn render_ideal(ideal: &MonomialIdeal) -> String {
    let ring = ideal.ring();
    let vars = ring.var_names().join(" ");
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .map(|g| g.render(ring))
        .collect();
    format!("ring {vars};\nideal {};\n", gens.join(", "))
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    vars: Vec<String>,
    generators: Vec<Vec<u32>>,
}

/// Renders an ideal as the JSON exponent-row format.
pub fn render_ideal_json(ideal: &MonomialIdeal) -> String {
    let doc = IdealJson {
        vars: ideal.ring().var_names().to_vec(),
        generators: ideal
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("ideal serializes")
}

fn parse_ideal_json(input: &str) -> Result<MonomialIdeal> {
    let doc: IdealJson = serde_json::from_str(input)?;
    if doc.vars.is_empty() {
        return Err(Error::Invalid("JSON ideal has no variables".into()));
    }
    let mut seen = HashSet::new();
    for v in &doc.vars {
        if !seen.insert(v.clone()) {
            return Err(Error::Invalid(format!("duplicate variable {v}")));
        }
    }
    let ring = PolyRing::new(doc.vars);
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (i, row) in doc.generators.iter().enumerate() {
        if row.len() != ring.nvars() {
            return Err(Error::Invalid(format!(
                "generator {} has {} exponents, expected {}",
                i + 1,
                row.len(),
                ring.nvars()
            )));
        }
        gens.push(ring.monomial(row.clone()));
    }
    MonomialIdeal::new(ring, gens)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Uint(u32),
    Semi,
    Comma,
    Star,
    Caret,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Lexer<'a> {
        Lexer {
            chars: input.chars().peekable(),
            line: 1,
            col: 1,
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

    /// Next token with the position where it starts.
    fn next_tok(&mut self) -> Result<Option<(Tok, usize, usize)>> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(&c) = self.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let c = match self.chars.peek() {
            None => return Ok(None),
            Some(&c) => c,
        };
        let tok = match c {
            ';' => {
                self.bump();
                Tok::Semi
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '*' => {
                self.bump();
                Tok::Star
            }
            '^' => {
                self.bump();
                Tok::Caret
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let n = s.parse::<u32>().map_err(|_| Error::Parse {
                    line,
                    col,
                    msg: format!("integer {s} out of range"),
                })?;
                Tok::Uint(n)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        Ok(Some((tok, line, col)))
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(input: &str) -> Result<Parser> {
        let mut lex = Lexer::new(input);
        let mut toks = Vec::new();
        while let Some(t) = lex.next_tok()? {
            toks.push(t);
        }
        Ok(Parser {
            toks,
            pos: 0,
            end: (lex.line, lex.col),
        })
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.bump();
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {what}, found {t:?}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.bump();
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected keyword `{kw}`, found {t:?}"))),
            None => Err(self.err(format!("expected keyword `{kw}`, found end of input"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            Some(t) => Err(self.err(format!("expected {what}, found {t:?}"))),
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }
}

fn parse_ideal_text(input: &str) -> Result<MonomialIdeal> {
    let mut p = Parser::new(input)?;

    p.keyword("ring")?;
    let mut vars = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Ident(_)) => vars.push(p.ident("variable name")?),
            Some(Tok::Semi) => break,
            _ => return Err(p.err("expected variable name or `;`")),
        }
    }
    p.expect(Tok::Semi, "`;`")?;
    if vars.is_empty() {
        return Err(p.err("ring declares no variables"));
    }
    {
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.clone()) {
                return Err(p.err(format!("duplicate variable {v}")));
            }
        }
    }
    let ring = PolyRing::new(vars);

    p.keyword("ideal")?;
    let mut gens = Vec::new();
    loop {
        gens.push(parse_term(&mut p, &ring)?);
        match p.peek() {
            Some(Tok::Comma) => {
                p.bump();
            }
            Some(Tok::Semi) => break,
            _ => return Err(p.err("expected `,` or `;` after term")),
        }
    }
    p.expect(Tok::Semi, "`;`")?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after ideal"));
    }

    MonomialIdeal::new(ring, gens)
}

fn parse_term(p: &mut Parser, ring: &Arc<PolyRing>) -> Result<crate::monomial::Monomial> {
    let mut exps = vec![0u64; ring.nvars()];
    loop {
        let (line, col) = p.here();
        let name = p.ident("variable name")?;
        let idx = ring.var_index(&name).ok_or_else(|| Error::Parse {
            line,
            col,
            msg: format!("unknown variable {name}"),
        })?;
        let e = if p.peek() == Some(&Tok::Caret) {
            p.bump();
            match p.bump() {
                Some(Tok::Uint(n)) => n,
                _ => return Err(p.err("expected exponent after `^`")),
            }
        } else {
            1
        };
        exps[idx] += u64::from(e);
        if exps[idx] > u64::from(u32::MAX) {
            return Err(p.err(format!("exponent overflow on {name}")));
        }
        if p.peek() == Some(&Tok::Star) {
            p.bump();
        } else {
            break;
        }
    }
    Ok(ring.monomial(exps.into_iter().map(|e| e as u32).collect()))
}
