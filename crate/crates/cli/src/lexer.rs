//! Tokens shared by the spec format and the machine report format.

use std::fmt;

use crate::error::{CliError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(usize),
    Str(String),
    Sym(&'static str),
    Newline,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Newline => write!(f, "end of line"),
        }
    }
}

const SYMBOLS: [&str; 10] = ["->", "{", "}", ":", ";", ",", "<", "=", "|", "."];

pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        let start = i;
        if c == '\n' {
            out.push((Tok::Newline, pos));
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| CliError::syntax(pos, format!("integer `{s}` is too large")))?;
            out.push((Tok::Int(n), pos));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() {
                let d = chars[i];
                let joins = d == '-' && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric());
                if d.is_alphanumeric() || d == '_' || joins {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(CliError::syntax(pos, "unterminated string")),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some('n') => s.push('\n'),
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            _ => return Err(CliError::syntax(pos, "bad escape in string")),
                        }
                        i += 2;
                    }
                    Some(&d) => {
                        s.push(d);
                        i += 1;
                    }
                }
            }
            out.push((Tok::Str(s), pos));
        } else {
            let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = SYMBOLS
                .iter()
                .find(|s| rest.starts_with(*s))
                .ok_or_else(|| CliError::syntax(pos, format!("unexpected character `{c}`")))?;
            out.push((Tok::Sym(sym), pos));
            i += sym.len();
        }
        col += i - start;
    }
    Ok(out)
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, CliError> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Self {
            toks,
            at: 0,
            end: Pos { line: lines, col: last + 1 },
        })
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    pub fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.at += 1;
        }
    }

    pub fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> CliError {
        match self.peek() {
            Some(t) => CliError::syntax(self.pos(), format!("expected {wanted}, found {t}")),
            None => CliError::syntax(self.pos(), format!("expected {wanted}, found end of input")),
        }
    }

    pub fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, sym: &str) -> Result<(), CliError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{sym}`")))
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), CliError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                Ok((s, self.next().unwrap().1))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    pub fn keyword(&mut self, kw: &str) -> Result<Pos, CliError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => Ok(self.next().unwrap().1),
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    pub fn int(&mut self) -> Result<usize, CliError> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    pub fn string(&mut self) -> Result<String, CliError> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("a string")),
        }
    }

    /// End of a statement: `;`, a line break, or a closing brace (left in place).
    pub fn end_statement(&mut self) -> Result<(), CliError> {
        match self.peek() {
            Some(Tok::Sym(";")) | Some(Tok::Newline) => {
                self.at += 1;
                Ok(())
            }
            Some(Tok::Sym("}")) => Ok(()),
            _ => Err(self.unexpected("end of statement")),
        }
    }

    /// Integers up to the end of the statement.
    pub fn ints(&mut self) -> Result<Vec<usize>, CliError> {
        let mut out = Vec::new();
        while let Some(Tok::Int(n)) = self.peek() {
            out.push(*n);
            self.at += 1;
            self.eat(",");
        }
        Ok(out)
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_newlines();
        self.peek().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_symbols() {
        let toks = lex("arrow f: 0 -> 1;\n  addition-mod 2 # note\n\"a\\\"b\"").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.0.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("arrow".into()),
                Tok::Ident("f".into()),
                Tok::Sym(":"),
                Tok::Int(0),
                Tok::Sym("->"),
                Tok::Int(1),
                Tok::Sym(";"),
                Tok::Newline,
                Tok::Ident("addition-mod".into()),
                Tok::Int(2),
                Tok::Newline,
                Tok::Str("a\"b".into()),
            ]
        );
        assert_eq!(toks[8].1, Pos { line: 2, col: 3 });
        assert_eq!(toks[11].1, Pos { line: 3, col: 1 });
    }

    #[test]
    fn bad_character() {
        let err = lex("category A {\n  objects: 2 @\n}").unwrap_err();
        assert_eq!(err.to_string(), "2:14: syntax error: unexpected character `@`");
    }

    #[test]
    fn quoting_round_trips() {
        for s in ["plain", "with \"quotes\"", "back\\slash", "two\nlines", "y0 ⊛ y1"] {
            let toks = lex(&quote(s)).unwrap();
            assert_eq!(toks[0].0, Tok::Str(s.to_string()));
        }
    }
}
