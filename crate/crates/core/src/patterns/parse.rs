//! Parser for the pattern row grammar:
//!
//! ```text
//! row   := label ":" seq [ "minus" "{" seq "}" ] [ "where" "nonempty" "(" name ("|" name)* ")" ]
//! seq   := token+
//! token := "*" [name] | "?" | "n" | "(n-" INT ")" | INT | "{" seq ("|" seq)+ "}"
//! name  := single uppercase letter
//! ```

use std::collections::HashSet;

use thiserror::Error;

use super::ast::{Family, PatternRow, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("star name {0} used more than once")]
    DuplicateStar(char),
    #[error("empty alternation branch at byte {pos}")]
    EmptyBranch { pos: usize },
    #[error("constraint names unknown star {0}")]
    UnknownStar(char),
    #[error("label {0:?} does not name a known family (L1…, L2…, T…)")]
    UnknownFamily(String),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<PatternError>,
    },
    #[error("duplicate row label {0:?}")]
    DuplicateLabel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lex {
    Star(Option<char>),
    Any,
    N,
    Rel(u32),
    Int(u32),
    LBrace,
    RBrace,
    Pipe,
    LParen,
    RParen,
    Name(char),
    Minus,
    Where,
    Nonempty,
}

fn syntax(pos: usize, msg: impl Into<String>) -> PatternError {
    PatternError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str, base: usize) -> Result<Vec<(usize, Lex)>, PatternError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = base + i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'*' => {
                let named = bytes.get(i + 1).filter(|b| b.is_ascii_uppercase()).copied();
                let ends = bytes.get(i + 2).map_or(true, |b| !b.is_ascii_alphanumeric());
                match named {
                    Some(name) if ends => {
                        out.push((pos, Lex::Star(Some(name as char))));
                        i += 2;
                    }
                    Some(_) => return Err(syntax(pos + 1, "star names are single uppercase letters")),
                    None => {
                        out.push((pos, Lex::Star(None)));
                        i += 1;
                    }
                }
            }
            b'?' => {
                out.push((pos, Lex::Any));
                i += 1;
            }
            b'{' => {
                out.push((pos, Lex::LBrace));
                i += 1;
            }
            b'}' => {
                out.push((pos, Lex::RBrace));
                i += 1;
            }
            b'|' => {
                out.push((pos, Lex::Pipe));
                i += 1;
            }
            b')' => {
                out.push((pos, Lex::RParen));
                i += 1;
            }
            b'(' => {
                let close = text[i..].find(')').map(|j| i + j);
                let inner: Option<String> = close.map(|j| {
                    text[i + 1..j].chars().filter(|c| !c.is_whitespace()).collect()
                });
                match inner.as_deref().and_then(|s| s.strip_prefix("n-")) {
                    Some(k) => {
                        let k: u32 = k
                            .parse()
                            .map_err(|_| syntax(pos, format!("bad relative value ({})", inner.as_deref().unwrap())))?;
                        out.push((pos, Lex::Rel(k)));
                        i = close.unwrap() + 1;
                    }
                    None => {
                        out.push((pos, Lex::LParen));
                        i += 1;
                    }
                }
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: u32 = text[start..i]
                    .parse()
                    .map_err(|_| syntax(pos, "integer out of range"))?;
                if v == 0 {
                    return Err(syntax(pos, "values are positive"));
                }
                out.push((pos, Lex::Int(v)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let ident = &text[start..i];
                let lexeme = match ident {
                    "n" => Lex::N,
                    "minus" => Lex::Minus,
                    "where" => Lex::Where,
                    "nonempty" => Lex::Nonempty,
                    s if s.len() == 1 && c.is_ascii_uppercase() => Lex::Name(c as char),
                    s => return Err(syntax(pos, format!("unexpected word {s:?}"))),
                };
                out.push((pos, lexeme));
            }
            _ => return Err(syntax(pos, format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Lex)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Lex> {
        self.toks.get(self.at).map(|(_, l)| l)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn expect(&mut self, want: Lex, what: &str) -> Result<(), PatternError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn seq(&mut self) -> Result<Vec<Token>, PatternError> {
        let mut out = Vec::new();
        loop {
            let tok = match self.peek() {
                Some(Lex::Star(name)) => Token::Star(*name),
                Some(Lex::Any) => Token::AnyOne,
                Some(Lex::N) => Token::Rel(0),
                Some(Lex::Rel(k)) => Token::Rel(*k),
                Some(Lex::Int(v)) => Token::Abs(*v),
                Some(Lex::LBrace) => {
                    self.at += 1;
                    out.push(self.alternation()?);
                    continue;
                }
                _ => break,
            };
            self.at += 1;
            out.push(tok);
        }
        Ok(out)
    }

    fn alternation(&mut self) -> Result<Token, PatternError> {
        let mut branches = Vec::new();
        loop {
            let pos = self.pos();
            let branch = self.seq()?;
            if branch.is_empty() {
                return Err(PatternError::EmptyBranch { pos });
            }
            branches.push(branch);
            match self.peek() {
                Some(Lex::Pipe) => self.at += 1,
                Some(Lex::RBrace) => {
                    self.at += 1;
                    break;
                }
                _ => return Err(syntax(self.pos(), "expected '|' or '}'")),
            }
        }
        if branches.len() < 2 {
            return Err(syntax(self.pos(), "alternation needs at least two branches"));
        }
        Ok(Token::Alt(branches))
    }

    fn nonempty(&mut self) -> Result<Vec<char>, PatternError> {
        self.expect(Lex::Nonempty, "'nonempty'")?;
        self.expect(Lex::LParen, "'('")?;
        let mut names = Vec::new();
        loop {
            match self.peek() {
                Some(Lex::Name(c)) => {
                    names.push(*c);
                    self.at += 1;
                }
                _ => return Err(syntax(self.pos(), "expected a star name")),
            }
            match self.peek() {
                Some(Lex::Pipe) => self.at += 1,
                Some(Lex::RParen) => {
                    self.at += 1;
                    return Ok(names);
                }
                _ => return Err(syntax(self.pos(), "expected '|' or ')'")),
            }
        }
    }
}

fn collect_star_names(tokens: &[Token], names: &mut Vec<char>) {
    for t in tokens {
        match t {
            Token::Star(Some(c)) => names.push(*c),
            Token::Alt(branches) => branches.iter().for_each(|b| collect_star_names(b, names)),
            _ => {}
        }
    }
}

fn check_unique_names(tokens: &[Token]) -> Result<Vec<char>, PatternError> {
    let mut names = Vec::new();
    collect_star_names(tokens, &mut names);
    let mut seen = HashSet::new();
    for &c in &names {
        if !seen.insert(c) {
            return Err(PatternError::DuplicateStar(c));
        }
    }
    Ok(names)
}

/// Parses one row, `label: seq [minus {seq}] [where nonempty(A|B)]`.
pub fn parse_pattern(text: &str) -> Result<PatternRow, PatternError> {
    let colon = text.find(':').ok_or_else(|| syntax(0, "expected 'label:'"))?;
    let label = text[..colon].trim();
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
        return Err(syntax(0, format!("bad label {label:?}")));
    }
    let family = Family::from_label(label).ok_or_else(|| PatternError::UnknownFamily(label.to_string()))?;
    let mut p = Parser { toks: lex(&text[colon + 1..], colon + 1)?, at: 0, end: text.len() };

    let tokens = p.seq()?;
    if tokens.is_empty() {
        return Err(syntax(p.pos(), "expected at least one token"));
    }
    let mut exclusion = None;
    if p.peek() == Some(&Lex::Minus) {
        p.at += 1;
        p.expect(Lex::LBrace, "'{'")?;
        let pos = p.pos();
        let ex = p.seq()?;
        if ex.is_empty() {
            return Err(PatternError::EmptyBranch { pos });
        }
        p.expect(Lex::RBrace, "'}'")?;
        check_unique_names(&ex)?;
        exclusion = Some(ex);
    }
    let mut nonempty = None;
    if p.peek() == Some(&Lex::Where) {
        p.at += 1;
        nonempty = Some(p.nonempty()?);
    }
    if p.peek().is_some() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }

    let names = check_unique_names(&tokens)?;
    if let Some(required) = &nonempty {
        if let Some(&c) = required.iter().find(|c| !names.contains(c)) {
            return Err(PatternError::UnknownStar(c));
        }
    }
    Ok(PatternRow { label: label.to_string(), tokens, exclusion, nonempty, family })
}
