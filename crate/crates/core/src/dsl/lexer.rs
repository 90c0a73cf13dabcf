//! Tokens of the script language.

use std::fmt;

use super::{Diagnostic, Span, Stage};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Names, keywords and variables; may contain `-` when not followed by `>`.
    Ident(String),
    Int(u64),
    Str(String),
    Semi,
    Eq,
    Colon,
    Comma,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Slash,
    Star,
    Plus,
    Caret,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            other => write!(f, "`{}`", other.text()),
        }
    }
}

impl Tok {
    /// Source text of punctuation tokens.
    pub fn text(&self) -> &'static str {
        match self {
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Arrow => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Slash => "/",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Caret => "^",
            Tok::Ident(_) => "name",
            Tok::Int(_) => "integer",
            Tok::Str(_) => "string",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: (usize, usize, usize)) -> Span {
        Span {
            start: start.0,
            end: self.pos,
            line: start.1,
            col: start.2,
        }
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        src,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let start = (cur.pos, cur.line, cur.col);
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let tok = if ident_start(c) {
            let mut s = String::new();
            while let Some(c) = cur.peek() {
                let dash = c == '-' && cur.peek2().is_some_and(|d| d != '>' && ident_continue(d));
                if !(ident_continue(c) || dash) {
                    break;
                }
                s.push(c);
                cur.bump();
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                s.push(c);
                cur.bump();
            }
            let n = s.parse::<u64>().map_err(|_| Diagnostic {
                stage: Stage::Lex,
                message: format!("integer literal `{s}` is too large"),
                span: cur.span_from(start),
                expected: Vec::new(),
            })?;
            Tok::Int(n)
        } else if c == '"' {
            cur.bump();
            let mut s = String::new();
            loop {
                match cur.bump() {
                    Some('"') => break,
                    Some('\\') => match cur.bump() {
                        Some(e @ ('"' | '\\')) => s.push(e),
                        Some('n') => s.push('\n'),
                        _ => {
                            return Err(Diagnostic {
                                stage: Stage::Lex,
                                message: "invalid escape in string literal".into(),
                                span: cur.span_from(start),
                                expected: Vec::new(),
                            })
                        }
                    },
                    Some(c) => s.push(c),
                    None => {
                        return Err(Diagnostic {
                            stage: Stage::Lex,
                            message: "unterminated string literal".into(),
                            span: cur.span_from(start),
                            expected: Vec::new(),
                        })
                    }
                }
            }
            Tok::Str(s)
        } else {
            cur.bump();
            match c {
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '/' => Tok::Slash,
                '*' => Tok::Star,
                '+' => Tok::Plus,
                '^' => Tok::Caret,
                '-' if cur.peek() == Some('>') => {
                    cur.bump();
                    Tok::Arrow
                }
                _ => {
                    return Err(Diagnostic {
                        stage: Stage::Lex,
                        message: format!("unexpected character {c:?}"),
                        span: cur.span_from(start),
                        expected: Vec::new(),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            span: cur.span_from(start),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn arrows_and_dashed_names() {
        assert_eq!(
            toks("f: A->B gauss-sufficient"),
            vec![
                Tok::Ident("f".into()),
                Tok::Colon,
                Tok::Ident("A".into()),
                Tok::Arrow,
                Tok::Ident("B".into()),
                Tok::Ident("gauss-sufficient".into()),
            ]
        );
    }

    #[test]
    fn spans_track_lines() {
        let t = lex("ring A\n  = Z/4;").unwrap();
        assert_eq!((t[2].span.line, t[2].span.col), (2, 3));
        assert_eq!(t[5].span.start, 13);
    }

    #[test]
    fn lexical_errors() {
        assert!(lex("ring A = Z/4 @").is_err());
        assert!(lex("\"open").is_err());
        assert!(lex("99999999999999999999999").is_err());
    }
}
