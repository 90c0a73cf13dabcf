//! Syntax tree and pretty-printer. Printing then parsing yields a tree that
//! prints identically.

use std::fmt;

use super::Span;

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub enum StmtKind {
    Ring {
        name: Ident,
        expr: RExpr,
    },
    Hom {
        name: Ident,
        from: Ident,
        to: Ident,
        spec: HomExpr,
    },
    Ideal {
        name: Ident,
        ring: Ident,
        gens: Vec<u64>,
    },
    Biamalg {
        name: Ident,
        a: Ident,
        f: Ident,
        g: Ident,
        b: Ident,
        c: Ident,
    },
    Check {
        target: Ident,
        prop: Prop,
    },
    ExportSpec {
        target: Ident,
        path: String,
    },
}

#[derive(Clone, Debug)]
pub enum HomExpr {
    Canonical,
    Identity,
    Images(Vec<u64>),
}

#[derive(Clone, Debug)]
pub enum RExpr {
    Zmod(u64, Span),
    Galois(u64, Span),
    Name(Ident),
    Product(Box<RExpr>, Box<RExpr>),
    Quotient(Box<RExpr>, Ident),
    Poly {
        base: Box<RExpr>,
        var: Ident,
        poly: Poly,
    },
}

impl RExpr {
    pub fn span(&self) -> Span {
        match self {
            RExpr::Zmod(_, s) | RExpr::Galois(_, s) => *s,
            RExpr::Name(i) => i.span,
            RExpr::Product(l, r) => l.span().to(r.span()),
            RExpr::Quotient(b, i) => b.span().to(i.span),
            RExpr::Poly { base, poly, .. } => base.span().to(poly.span),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    pub terms: Vec<Term>,
    pub span: Span,
}

/// `c`, `x`, `x^e`, `c*x` or `c*x^e`; the coefficient is a base-ring code.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Option<u64>,
    pub var: Option<(Ident, u64)>,
}

#[derive(Clone, Debug)]
pub enum Prop {
    Gaussian,
    Prufer,
    Local,
    Spec,
    Fiber,
    Localize(Ident),
    Star,
    DoubleStar,
    BlackStar,
    Thm {
        id: String,
        clauses: Vec<String>,
        span: Span,
    },
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Gaussian => f.write_str("gaussian"),
            Prop::Prufer => f.write_str("prufer"),
            Prop::Local => f.write_str("local"),
            Prop::Spec => f.write_str("spec"),
            Prop::Fiber => f.write_str("fiber"),
            Prop::Localize(p) => write!(f, "localize({})", p.name),
            Prop::Star => f.write_str("star"),
            Prop::DoubleStar => f.write_str("doublestar"),
            Prop::BlackStar => f.write_str("blackstar"),
            Prop::Thm { id, clauses, .. } => {
                write!(f, "thm({id}")?;
                for c in clauses {
                    write!(f, ":{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Binding strength, loosest first.
fn level(e: &RExpr) -> u8 {
    match e {
        RExpr::Quotient(..) => 0,
        RExpr::Product(..) => 1,
        RExpr::Poly { .. } => 2,
        _ => 3,
    }
}

struct Paren<'a>(&'a RExpr, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for RExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RExpr::Zmod(n, _) => write!(f, "Z/{n}"),
            RExpr::Galois(q, _) => write!(f, "GF({q})"),
            RExpr::Name(i) => f.write_str(&i.name),
            // Left-associative: the right operand needs parentheses at its own level.
            RExpr::Product(l, r) => write!(
                f,
                "{} * {}",
                Paren(l, level(l) < 1),
                Paren(r, level(r) <= 1)
            ),
            RExpr::Quotient(b, i) => write!(f, "{b}/{}", i.name),
            RExpr::Poly { base, var, poly } => {
                write!(f, "{}[{}]/({poly})", Paren(base, level(base) < 2), var.name)
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (&t.coeff, &t.var) {
                (Some(c), None) => write!(f, "{c}")?,
                (c, Some((v, e))) => {
                    if let Some(c) = c {
                        write!(f, "{c}*")?;
                    }
                    f.write_str(&v.name)?;
                    if *e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
                (None, None) => f.write_str("0")?,
            }
        }
        Ok(())
    }
}

fn list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StmtKind::Ring { name, expr } => write!(f, "ring {} = {expr};", name.name),
            StmtKind::Hom {
                name,
                from,
                to,
                spec,
            } => {
                let spec = match spec {
                    HomExpr::Canonical => "canonical".to_string(),
                    HomExpr::Identity => "id".to_string(),
                    HomExpr::Images(t) => format!("images[{}]", list(t)),
                };
                write!(
                    f,
                    "hom {}: {} -> {} = {spec};",
                    name.name, from.name, to.name
                )
            }
            StmtKind::Ideal { name, ring, gens } => {
                write!(
                    f,
                    "ideal {} = span({}, [{}]);",
                    name.name,
                    ring.name,
                    list(gens)
                )
            }
            StmtKind::Biamalg {
                name,
                a,
                f: hf,
                g,
                b,
                c,
            } => write!(
                f,
                "biamalg {} = ({}, {}, {}, {}, {});",
                name.name, a.name, hf.name, g.name, b.name, c.name
            ),
            StmtKind::Check { target, prop } => write!(f, "check {} {prop};", target.name),
            StmtKind::ExportSpec { target, path } => {
                write!(f, "export spec {} dot {};", target.name, quote(path))
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
