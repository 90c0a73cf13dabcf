//! The script language: lexing, parsing, resolution, execution and DOT
//! export.

use std::fmt;

use serde::Serialize;

pub mod ast;
pub mod dot;
pub mod exec;
pub mod lexer;
pub mod parser;

pub use ast::Script;
pub use exec::{run_script, CheckOutcome, Outcome, RunOptions};
pub use parser::parse;

/// Byte range plus the 1-based line and column of its start.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl Span {
    /// Smallest span covering `self` and `other`; `self` must start first.
    pub fn to(self, other: Span) -> Span {
        Span {
            end: other.end.max(self.end),
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Lex,
    Parse,
    Resolve,
    Runtime,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Lex => "lex",
            Stage::Parse => "parse",
            Stage::Resolve => "resolve",
            Stage::Runtime => "runtime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub stage: Stage,
    pub message: String,
    pub span: Span,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} error: {}",
            self.span.line, self.span.col, self.stage, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Diagnostic {}

impl Diagnostic {
    /// Source line with a caret marker under the span.
    pub fn render(&self, src: &str) -> String {
        let line = src
            .split('\n')
            .nth(self.span.line.saturating_sub(1))
            .unwrap_or("");
        let width = src
            .get(self.span.start..self.span.end)
            .map_or(1, |s| s.chars().count().max(1));
        format!(
            "{self}\n  | {line}\n  | {}{}",
            " ".repeat(self.span.col.saturating_sub(1)),
            "^".repeat(width)
        )
    }
}
