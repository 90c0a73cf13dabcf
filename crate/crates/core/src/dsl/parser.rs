//! Recursive-descent parser.
//!
//! ```text
//! script  := stmt*
//! stmt    := "ring" NAME "=" rexpr ";"
//!          | "hom" NAME ":" NAME "->" NAME "=" ("canonical" | "id" | "images" "[" ints "]") ";"
//!          | "ideal" NAME "=" "span" "(" NAME "," "[" ints "]" ")" ";"
//!          | "biamalg" NAME "=" "(" NAME "," NAME "," NAME "," NAME "," NAME ")" ";"
//!          | "check" NAME prop ";"
//!          | "export" "spec" NAME "dot" STRING ";"
//! rexpr   := product ("/" NAME)*
//! product := postfix ("*" postfix)*
//! postfix := atom ("[" VAR "]" "/" "(" poly ")")*
//! atom    := "Z" "/" INT | "GF" "(" INT ")" | NAME | "(" rexpr ")"
//! poly    := term ("+" term)*
//! term    := INT ["*" VAR ["^" INT]] | VAR ["^" INT]
//! prop    := gaussian | prufer | local | spec | fiber | "localize" "(" NAME ")"
//!          | star | doublestar | blackstar | "thm" "(" NAME (":" clause)* ")"
//! clause  := part ("/" part)*,  part := NAME | INT
//! ```

use super::ast::{HomExpr, Ident, Poly, Prop, RExpr, Script, Stmt, StmtKind, Term};
use super::lexer::{lex, Tok, Token};
use super::{Diagnostic, Span, Stage};

/// Words that cannot name a declared object.
pub const RESERVED: [&str; 8] = [
    "ring", "hom", "ideal", "biamalg", "check", "export", "Z", "GF",
];

const MAX_DEPTH: usize = 64;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Tokens that would have been accepted at the current position.
    expected: Vec<String>,
    depth: usize,
    eof: Span,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.eof, |t| t.span)
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        self.expected.clear();
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn error(&self, message: impl Into<String>) -> Diagnostic {
        let mut expected = self.expected.clone();
        expected.dedup();
        let found = match self.toks.get(self.pos) {
            Some(t) => format!("found {}", t.tok),
            None => "found end of input".into(),
        };
        let message = message.into();
        Diagnostic {
            stage: Stage::Parse,
            message: if message.is_empty() {
                found
            } else {
                format!("{message}, {found}")
            },
            span: self.span(),
            expected,
        }
    }

    fn fail<T>(&self) -> PResult<T> {
        Err(self.error(""))
    }

    /// Consumes `tok` if it is next.
    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.bump();
            true
        } else {
            self.expected.push(format!("`{}`", tok.text()));
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> PResult<Span> {
        if self.eat(tok) {
            Ok(self.prev_span())
        } else {
            self.fail()
        }
    }

    /// Consumes the keyword `kw` if it is next.
    fn eat_kw(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.bump();
            true
        } else {
            self.expected.push(format!("`{kw}`"));
            false
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.eat_kw(kw) {
            Ok(())
        } else {
            self.fail()
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        if let Some(Tok::Ident(_)) = self.peek() {
            let t = self.bump();
            let Tok::Ident(name) = t.tok else {
                unreachable!()
            };
            Ok(Ident { name, span: t.span })
        } else {
            self.expected.push(what.into());
            self.fail()
        }
    }

    /// A name being declared; reserved words are refused.
    fn decl_name(&mut self) -> PResult<Ident> {
        let id = self.ident("name")?;
        if RESERVED.contains(&id.name.as_str()) {
            return Err(Diagnostic {
                stage: Stage::Parse,
                message: format!("`{}` is reserved and cannot be declared", id.name),
                span: id.span,
                expected: vec!["name".into()],
            });
        }
        Ok(id)
    }

    fn int(&mut self) -> PResult<u64> {
        if let Some(Tok::Int(n)) = self.peek() {
            let n = *n;
            self.bump();
            Ok(n)
        } else {
            self.expected.push("integer".into());
            self.fail()
        }
    }

    /// `[` ints `]`, possibly empty.
    fn int_list(&mut self) -> PResult<Vec<u64>> {
        self.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(&Tok::RBracket) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    fn script(&mut self) -> PResult<Script> {
        let mut stmts = Vec::new();
        while self.pos < self.toks.len() {
            stmts.push(self.stmt()?);
        }
        Ok(Script { stmts })
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let start = self.span();
        let kind = if self.eat_kw("ring") {
            let name = self.decl_name()?;
            self.expect(&Tok::Eq)?;
            let expr = self.rexpr()?;
            StmtKind::Ring { name, expr }
        } else if self.eat_kw("hom") {
            let name = self.decl_name()?;
            self.expect(&Tok::Colon)?;
            let from = self.ident("ring name")?;
            self.expect(&Tok::Arrow)?;
            let to = self.ident("ring name")?;
            self.expect(&Tok::Eq)?;
            let spec = if self.eat_kw("canonical") {
                HomExpr::Canonical
            } else if self.eat_kw("id") {
                HomExpr::Identity
            } else if self.eat_kw("images") {
                HomExpr::Images(self.int_list()?)
            } else {
                return self.fail();
            };
            StmtKind::Hom {
                name,
                from,
                to,
                spec,
            }
        } else if self.eat_kw("ideal") {
            let name = self.decl_name()?;
            self.expect(&Tok::Eq)?;
            self.expect_kw("span")?;
            self.expect(&Tok::LParen)?;
            let ring = self.ident("ring name")?;
            self.expect(&Tok::Comma)?;
            let gens = self.int_list()?;
            self.expect(&Tok::RParen)?;
            StmtKind::Ideal { name, ring, gens }
        } else if self.eat_kw("biamalg") {
            let name = self.decl_name()?;
            self.expect(&Tok::Eq)?;
            self.expect(&Tok::LParen)?;
            let a = self.ident("ring name")?;
            self.expect(&Tok::Comma)?;
            let f = self.ident("hom name")?;
            self.expect(&Tok::Comma)?;
            let g = self.ident("hom name")?;
            self.expect(&Tok::Comma)?;
            let b = self.ident("ideal name")?;
            self.expect(&Tok::Comma)?;
            let c = self.ident("ideal name")?;
            self.expect(&Tok::RParen)?;
            StmtKind::Biamalg {
                name,
                a,
                f,
                g,
                b,
                c,
            }
        } else if self.eat_kw("check") {
            let target = self.ident("name")?;
            let prop = self.prop()?;
            StmtKind::Check { target, prop }
        } else if self.eat_kw("export") {
            self.expect_kw("spec")?;
            let target = self.ident("name")?;
            self.expect_kw("dot")?;
            let path = match self.peek() {
                Some(Tok::Str(s)) => {
                    let s = s.clone();
                    self.bump();
                    s
                }
                _ => {
                    self.expected.push("string".into());
                    return self.fail();
                }
            };
            StmtKind::ExportSpec { target, path }
        } else {
            return self.fail();
        };
        self.expect(&Tok::Semi)?;
        Ok(Stmt {
            kind,
            span: start.to(self.prev_span()),
        })
    }

    fn prop(&mut self) -> PResult<Prop> {
        const SIMPLE: [(&str, Prop); 8] = [
            ("gaussian", Prop::Gaussian),
            ("prufer", Prop::Prufer),
            ("local", Prop::Local),
            ("spec", Prop::Spec),
            ("fiber", Prop::Fiber),
            ("star", Prop::Star),
            ("doublestar", Prop::DoubleStar),
            ("blackstar", Prop::BlackStar),
        ];
        for (kw, p) in SIMPLE {
            if self.eat_kw(kw) {
                return Ok(p);
            }
        }
        if self.eat_kw("localize") {
            self.expect(&Tok::LParen)?;
            let p = self.ident("ideal name")?;
            self.expect(&Tok::RParen)?;
            return Ok(Prop::Localize(p));
        }
        if self.eat_kw("thm") {
            let start = self.prev_span();
            self.expect(&Tok::LParen)?;
            let id = self.ident("theorem id")?.name;
            let mut clauses = Vec::new();
            while self.eat(&Tok::Colon) {
                let mut clause = self.clause_part()?;
                while self.eat(&Tok::Slash) {
                    clause.push('/');
                    clause.push_str(&self.clause_part()?);
                }
                clauses.push(clause);
            }
            self.expect(&Tok::RParen)?;
            return Ok(Prop::Thm {
                id,
                clauses,
                span: start.to(self.prev_span()),
            });
        }
        self.fail()
    }

    fn clause_part(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            Some(Tok::Int(n)) => {
                let n = *n;
                self.bump();
                Ok(n.to_string())
            }
            _ => {
                self.expected.push("clause name".into());
                self.fail()
            }
        }
    }

    fn rexpr(&mut self) -> PResult<RExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("ring expression nested too deeply"));
        }
        let mut e = self.product()?;
        while self.eat(&Tok::Slash) {
            let ideal = self.ident("ideal name")?;
            e = RExpr::Quotient(Box::new(e), ideal);
        }
        self.depth -= 1;
        Ok(e)
    }

    fn product(&mut self) -> PResult<RExpr> {
        let mut e = self.postfix()?;
        while self.eat(&Tok::Star) {
            let r = self.postfix()?;
            e = RExpr::Product(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn postfix(&mut self) -> PResult<RExpr> {
        let mut e = self.atom()?;
        while self.eat(&Tok::LBracket) {
            let var = self.ident("variable")?;
            self.expect(&Tok::RBracket)?;
            self.expect(&Tok::Slash)?;
            let open = self.expect(&Tok::LParen)?;
            let terms = self.poly()?;
            let close = self.expect(&Tok::RParen)?;
            e = RExpr::Poly {
                base: Box::new(e),
                var,
                poly: Poly {
                    terms,
                    span: open.to(close),
                },
            };
        }
        Ok(e)
    }

    fn atom(&mut self) -> PResult<RExpr> {
        let start = self.span();
        if self.eat_kw("Z") {
            self.expect(&Tok::Slash)?;
            let n = self.int()?;
            return Ok(RExpr::Zmod(n, start.to(self.prev_span())));
        }
        if self.eat_kw("GF") {
            self.expect(&Tok::LParen)?;
            let q = self.int()?;
            self.expect(&Tok::RParen)?;
            return Ok(RExpr::Galois(q, start.to(self.prev_span())));
        }
        if self.eat(&Tok::LParen) {
            let e = self.rexpr()?;
            self.expect(&Tok::RParen)?;
            return Ok(e);
        }
        Ok(RExpr::Name(self.ident("ring name")?))
    }

    fn poly(&mut self) -> PResult<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while self.eat(&Tok::Plus) {
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> PResult<Term> {
        if let Some(Tok::Int(c)) = self.peek() {
            let c = *c;
            self.bump();
            if self.eat(&Tok::Star) {
                let var = self.power()?;
                return Ok(Term {
                    coeff: Some(c),
                    var: Some(var),
                });
            }
            return Ok(Term {
                coeff: Some(c),
                var: None,
            });
        }
        self.expected.push("integer".into());
        let var = self.power()?;
        Ok(Term {
            coeff: None,
            var: Some(var),
        })
    }

    fn power(&mut self) -> PResult<(Ident, u64)> {
        let v = self.ident("variable")?;
        let e = if self.eat(&Tok::Caret) {
            self.int()?
        } else {
            1
        };
        Ok((v, e))
    }
}

pub fn parse(src: &str) -> Result<Script, Diagnostic> {
    let toks = lex(src)?;
    let lines = src.split('\n').count();
    let last_col = src.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        expected: Vec::new(),
        depth: 0,
        eof: Span {
            start: src.len(),
            end: src.len(),
            line: lines,
            col: last_col,
        },
    };
    p.script()
}
