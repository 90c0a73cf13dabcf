//! Name resolution and execution of scripts.
//!
//! Resolution runs over the whole script before anything executes, so a
//! script with an undeclared name produces no output besides the
//! diagnostic. Execution stops at the first runtime error.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::rc::Rc;
use std::sync::Arc;

use serde::Serialize;

use super::ast::{HomExpr, Ident, Poly, Prop, RExpr, Script, Stmt, StmtKind};
use super::dot::{instance_dot, ring_dot};
use super::{Diagnostic, Span, Stage};
use crate::biamalg::BiAmalgInstance;
use crate::classify::theorems::{
    evaluate_instance, evaluate_ring, theorem, Ablation, Evaluation, InstanceFacts, RingFacts,
    Scope,
};
use crate::classify::{PropertyVerdict, Witness};
use crate::error::Error;
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::par::Exec;
use crate::ring::{Code, Ring};
use crate::spectra::{assemble_spec, ring_spec, verify_localization_iso, verify_spec_theorem};

/// Exit status when every check holds.
pub const EXIT_OK: i32 = 0;
/// Exit status when some check fails.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for lexical, parse, resolution and runtime errors.
pub const EXIT_INVALID: i32 = 2;

/// Largest exponent accepted in a modulus.
const MAX_EXPONENT: u64 = 64;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub exec: Exec,
    /// Write `export spec` files; when false they are only collected.
    pub write_exports: bool,
    /// Directory that relative export paths are resolved against.
    pub base_dir: Option<PathBuf>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            exec: Exec::Sequential,
            write_exports: true,
            base_dir: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub target: String,
    pub property: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub details: Vec<String>,
    pub notes: Vec<&'static str>,
    /// Declarations so far followed by this check.
    pub replay: String,
    pub span: Span,
}

#[derive(Clone, Debug, Serialize)]
pub struct Export {
    pub target: String,
    pub path: String,
    pub dot: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub checks: Vec<CheckOutcome>,
    pub exports: Vec<Export>,
    pub error: Option<Diagnostic>,
}

#[derive(Serialize)]
struct JsonFailure<'a> {
    replay: &'a str,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonResult<'a> {
    theorem: &'a str,
    target: &'a str,
    instances: usize,
    holds: bool,
    failures: Vec<JsonFailure<'a>>,
    degeneracy_notes: BTreeMap<&'static str, usize>,
}

#[derive(Serialize)]
struct JsonCaps {
    max_order: usize,
}

#[derive(Serialize)]
struct JsonMeta {
    caps: JsonCaps,
    seed: Option<u64>,
    version: &'static str,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    meta: JsonMeta,
    results: Vec<JsonResult<'a>>,
    error: Option<&'a Diagnostic>,
    exit_code: i32,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            EXIT_INVALID
        } else if self.checks.iter().all(|c| c.holds) {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    fn failed(diag: Diagnostic) -> Self {
        Outcome {
            error: Some(diag),
            ..Outcome::default()
        }
    }

    /// Human-readable check results, one block per check.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", c.target, c.property, c.holds));
            for d in &c.details {
                out.push_str(&format!("  {d}\n"));
            }
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
            for n in &c.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        for e in &self.exports {
            out.push_str(&format!("exported spec of {} to {}\n", e.target, e.path));
        }
        out
    }

    /// The harness report schema with one result per check.
    pub fn to_json(&self) -> String {
        let results = self
            .checks
            .iter()
            .map(|c| {
                let mut notes = BTreeMap::new();
                for n in &c.notes {
                    *notes.entry(*n).or_insert(0) += 1;
                }
                JsonResult {
                    theorem: &c.property,
                    target: &c.target,
                    instances: 1,
                    holds: c.holds,
                    failures: if c.holds {
                        Vec::new()
                    } else {
                        vec![JsonFailure {
                            replay: &c.replay,
                            witness: c.witness.as_deref(),
                        }]
                    },
                    degeneracy_notes: notes,
                }
            })
            .collect();
        serde_json::to_string_pretty(&JsonReport {
            meta: JsonMeta {
                caps: JsonCaps {
                    max_order: crate::ring::max_order(),
                },
                seed: None,
                version: env!("CARGO_PKG_VERSION"),
            },
            results,
            error: self.error.as_ref(),
            exit_code: self.exit_code(),
        })
        .expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Hom,
    Ideal,
    Biamalg,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Hom => "hom",
            Kind::Ideal => "ideal",
            Kind::Biamalg => "biamalg",
        }
    }
}

fn resolve_error(span: Span, message: String, expected: &[Kind]) -> Diagnostic {
    Diagnostic {
        stage: Stage::Resolve,
        message,
        span,
        expected: expected
            .iter()
            .map(|k| format!("{} name", k.noun()))
            .collect(),
    }
}

struct Resolver {
    kinds: HashMap<String, Kind>,
}

impl Resolver {
    fn lookup(&self, id: &Ident, want: &[Kind]) -> Result<Kind, Diagnostic> {
        match self.kinds.get(&id.name) {
            None => Err(resolve_error(
                id.span,
                format!("`{}` is not declared", id.name),
                want,
            )),
            Some(k) if !want.contains(k) => Err(resolve_error(
                id.span,
                format!("`{}` is a {}", id.name, k.noun()),
                want,
            )),
            Some(k) => Ok(*k),
        }
    }

    fn declare(&mut self, id: &Ident, kind: Kind) -> Result<(), Diagnostic> {
        if self.kinds.contains_key(&id.name) {
            return Err(resolve_error(
                id.span,
                format!("`{}` is already declared", id.name),
                &[],
            ));
        }
        self.kinds.insert(id.name.clone(), kind);
        Ok(())
    }

    fn rexpr(&self, e: &RExpr) -> Result<(), Diagnostic> {
        match e {
            RExpr::Zmod(..) | RExpr::Galois(..) => Ok(()),
            RExpr::Name(id) => self.lookup(id, &[Kind::Ring]).map(drop),
            RExpr::Product(l, r) => {
                self.rexpr(l)?;
                self.rexpr(r)
            }
            RExpr::Quotient(b, i) => {
                self.rexpr(b)?;
                self.lookup(i, &[Kind::Ideal]).map(drop)
            }
            RExpr::Poly { base, var, poly } => {
                self.rexpr(base)?;
                for t in &poly.terms {
                    if let Some((v, _)) = &t.var {
                        if v.name != var.name {
                            return Err(Diagnostic {
                                stage: Stage::Resolve,
                                message: format!(
                                    "variable `{}` in a modulus over `{}`",
                                    v.name, var.name
                                ),
                                span: v.span,
                                expected: vec![format!("`{}`", var.name)],
                            });
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn prop(&self, target: Kind, prop: &Prop, span: Span) -> Result<(), Diagnostic> {
        let instance_only = matches!(
            prop,
            Prop::Fiber | Prop::Localize(_) | Prop::Star | Prop::DoubleStar | Prop::BlackStar
        );
        if instance_only && target != Kind::Biamalg {
            return Err(resolve_error(
                span,
                format!("`{prop}` applies to a biamalg, not a ring"),
                &[Kind::Biamalg],
            ));
        }
        match prop {
            Prop::Localize(p) => self.lookup(p, &[Kind::Ideal]).map(drop),
            Prop::Thm { id, clauses, span } => {
                let thm = theorem(id).map_err(|e| resolve_error(*span, e.to_string(), &[]))?;
                let refs: Vec<&str> = clauses.iter().map(String::as_str).collect();
                Ablation::new(thm, &refs).map_err(|e| resolve_error(*span, e.to_string(), &[]))?;
                if thm.scope == Scope::Instance && target != Kind::Biamalg {
                    return Err(resolve_error(
                        *span,
                        format!("`{id}` is a statement about biamalgs"),
                        &[Kind::Biamalg],
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), Diagnostic> {
        match &s.kind {
            StmtKind::Ring { name, expr } => {
                self.rexpr(expr)?;
                self.declare(name, Kind::Ring)
            }
            StmtKind::Hom { name, from, to, .. } => {
                self.lookup(from, &[Kind::Ring])?;
                self.lookup(to, &[Kind::Ring])?;
                self.declare(name, Kind::Hom)
            }
            StmtKind::Ideal { name, ring, .. } => {
                self.lookup(ring, &[Kind::Ring])?;
                self.declare(name, Kind::Ideal)
            }
            StmtKind::Biamalg {
                name,
                a,
                f,
                g,
                b,
                c,
            } => {
                self.lookup(a, &[Kind::Ring])?;
                self.lookup(f, &[Kind::Hom])?;
                self.lookup(g, &[Kind::Hom])?;
                self.lookup(b, &[Kind::Ideal])?;
                self.lookup(c, &[Kind::Ideal])?;
                self.declare(name, Kind::Biamalg)
            }
            StmtKind::Check { target, prop } => {
                let k = self.lookup(target, &[Kind::Ring, Kind::Biamalg])?;
                self.prop(k, prop, s.span)
            }
            StmtKind::ExportSpec { target, .. } => {
                self.lookup(target, &[Kind::Ring, Kind::Biamalg]).map(drop)
            }
        }
    }
}

/// Checks declaration order, uniqueness and kinds.
pub fn resolve(script: &Script) -> Result<(), Diagnostic> {
    let mut r = Resolver {
        kinds: HashMap::new(),
    };
    script.stmts.iter().try_for_each(|s| r.stmt(s))
}

enum Value {
    Ring(Ring),
    Hom(RingHom),
    Ideal(Ideal),
    Biamalg(Rc<InstanceFacts>),
}

struct Executor<'a> {
    opts: &'a RunOptions,
    env: HashMap<String, Value>,
    /// Structurally equal ring expressions evaluate to the same ring.
    interned: HashMap<String, Ring>,
    facts: HashMap<u64, Arc<RingFacts>>,
    decls: Vec<String>,
    out: Outcome,
}

fn runtime(span: Span, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        stage: Stage::Runtime,
        message: message.into(),
        span,
        expected: Vec::new(),
    }
}

fn code(x: u64, span: Span) -> Result<Code, Diagnostic> {
    Code::try_from(x).map_err(|_| runtime(span, format!("element code {x} is out of range")))
}

fn codes(xs: &[u64], span: Span) -> Result<Vec<Code>, Diagnostic> {
    xs.iter().map(|&x| code(x, span)).collect()
}

fn describe(e: &Evaluation) -> String {
    let show = |cs: &[crate::classify::theorems::ClauseValue]| {
        cs.iter()
            .map(|c| {
                let v = match (c.dropped, c.holds) {
                    (true, _) => "dropped",
                    (_, Some(true)) => "true",
                    (_, Some(false)) => "false",
                    (_, None) => "-",
                };
                format!("{}={v}", c.name)
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    if let Some(case) = &e.case {
        s.push_str(&format!("[{case}] "));
    }
    if !e.hypotheses.is_empty() {
        s.push_str(&format!("hypotheses: {}; ", show(&e.hypotheses)));
    }
    s.push_str(&format!("conclusions: {}", show(&e.conclusions)));
    s
}

impl Executor<'_> {
    fn ring_facts(&mut self, ring: &Ring) -> Arc<RingFacts> {
        self.facts
            .entry(ring.id())
            .or_insert_with(|| RingFacts::with_exec(ring, self.opts.exec))
            .clone()
    }

    fn ring(&self, id: &Ident) -> &Ring {
        match &self.env[&id.name] {
            Value::Ring(r) => r,
            _ => unreachable!("resolved as a ring"),
        }
    }

    fn ideal(&self, id: &Ident) -> &Ideal {
        match &self.env[&id.name] {
            Value::Ideal(i) => i,
            _ => unreachable!("resolved as an ideal"),
        }
    }

    fn hom(&self, id: &Ident) -> &RingHom {
        match &self.env[&id.name] {
            Value::Hom(h) => h,
            _ => unreachable!("resolved as a hom"),
        }
    }

    fn modulus(&self, base: &Ring, poly: &Poly) -> Result<Vec<Code>, Diagnostic> {
        let mut coeffs: Vec<Code> = Vec::new();
        for t in &poly.terms {
            let c = match t.coeff {
                Some(c) => {
                    let c = code(c, poly.span)?;
                    base.check_code(c)
                        .map_err(|e| runtime(poly.span, e.to_string()))?;
                    c
                }
                None => base.one(),
            };
            let e = t.var.as_ref().map_or(0, |(_, e)| *e);
            if e > MAX_EXPONENT {
                return Err(runtime(poly.span, format!("exponent {e} is too large")));
            }
            let e = e as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, base.zero());
            }
            coeffs[e] = base.add(coeffs[e], c);
        }
        Ok(coeffs)
    }

    /// Evaluates `e` and returns the ring with its structural key.
    fn rexpr(&mut self, e: &RExpr) -> Result<(Ring, String), Diagnostic> {
        let span = e.span();
        let fail = |x: Error| runtime(span, x.to_string());
        let (key, build): (String, Box<dyn FnOnce() -> crate::error::Result<Ring>>) = match e {
            RExpr::Zmod(n, _) => {
                let n = u32::try_from(*n).map_err(|_| runtime(span, "modulus too large"))?;
                (format!("Z/{n}"), Box::new(move || Ring::zmod(n)))
            }
            RExpr::Galois(q, _) => {
                let q = u32::try_from(*q).map_err(|_| runtime(span, "field order too large"))?;
                (format!("GF({q})"), Box::new(move || Ring::galois(q)))
            }
            RExpr::Name(id) => {
                let r = self.ring(id).clone();
                return Ok((r.clone(), format!("#{}", r.id())));
            }
            RExpr::Product(l, r) => {
                let (l, lk) = self.rexpr(l)?;
                let (r, rk) = self.rexpr(r)?;
                (
                    format!("({lk}*{rk})"),
                    Box::new(move || Ring::product(&l, &r)),
                )
            }
            RExpr::Quotient(b, i) => {
                let (b, bk) = self.rexpr(b)?;
                let ideal = self.ideal(i).clone();
                if ideal.ring() != &b {
                    return Err(runtime(
                        i.span,
                        format!("ideal `{}` does not belong to this ring", i.name),
                    ));
                }
                (
                    format!("({bk}/{:?})", ideal.elements()),
                    Box::new(move || Ring::quotient(&ideal)),
                )
            }
            RExpr::Poly { base, var, poly } => {
                let (b, bk) = self.rexpr(base)?;
                let m = self.modulus(&b, poly)?;
                let v = var.name.clone();
                (
                    format!("({bk}[{v}]/{m:?})"),
                    Box::new(move || Ring::poly_quot(&b, &v, &m)),
                )
            }
        };
        if let Some(r) = self.interned.get(&key) {
            return Ok((r.clone(), format!("#{}", r.id())));
        }
        let r = build().map_err(fail)?;
        self.interned.insert(key, r.clone());
        Ok((r.clone(), format!("#{}", r.id())))
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), Diagnostic> {
        let fail = |e: Error| runtime(s.span, e.to_string());
        match &s.kind {
            StmtKind::Ring { name, expr } => {
                let (r, _) = self.rexpr(expr)?;
                self.env.insert(name.name.clone(), Value::Ring(r));
            }
            StmtKind::Hom {
                name,
                from,
                to,
                spec,
            } => {
                let (d, c) = (self.ring(from).clone(), self.ring(to).clone());
                let h = match spec {
                    HomExpr::Canonical => RingHom::canonical(&d, &c),
                    HomExpr::Identity if d == c => Ok(RingHom::identity(&d)),
                    HomExpr::Identity => {
                        return Err(runtime(
                            s.span,
                            format!(
                                "`id` needs equal domain and codomain, got `{}` and `{}`",
                                from.name, to.name
                            ),
                        ))
                    }
                    HomExpr::Images(t) => RingHom::from_table(&d, &c, codes(t, s.span)?),
                }
                .map_err(fail)?;
                self.env.insert(name.name.clone(), Value::Hom(h));
            }
            StmtKind::Ideal { name, ring, gens } => {
                let r = self.ring(ring).clone();
                let i = Ideal::try_span(&r, &codes(gens, s.span)?).map_err(fail)?;
                self.env.insert(name.name.clone(), Value::Ideal(i));
            }
            StmtKind::Biamalg {
                name,
                a,
                f,
                g,
                b,
                c,
            } => {
                let (f, g) = (self.hom(f).clone(), self.hom(g).clone());
                if f.domain() != self.ring(a) || g.domain() != self.ring(a) {
                    return Err(runtime(
                        s.span,
                        format!("both homs must have domain `{}`", a.name),
                    ));
                }
                let (bi, ci) = (self.ideal(b).clone(), self.ideal(c).clone());
                if bi.ring() != f.codomain() || ci.ring() != g.codomain() {
                    return Err(runtime(
                        s.span,
                        "each ideal must live in the codomain of its hom",
                    ));
                }
                let inst = BiAmalgInstance::new(&f, &g, &bi, &ci).map_err(fail)?;
                let (fa, fb, fc) = (
                    self.ring_facts(&inst.a),
                    self.ring_facts(&inst.b),
                    self.ring_facts(&inst.c),
                );
                let facts = InstanceFacts::with_rings(inst, fa, fb, fc);
                self.env
                    .insert(name.name.clone(), Value::Biamalg(Rc::new(facts)));
            }
            StmtKind::Check { target, prop } => {
                let outcome = self.check(target, prop, s)?;
                self.out.checks.push(outcome);
                return Ok(());
            }
            StmtKind::ExportSpec { target, path } => {
                let dot = match &self.env[&target.name] {
                    Value::Ring(r) => ring_dot(&target.name, r),
                    Value::Biamalg(f) => instance_dot(&target.name, &f.inst).map_err(fail)?,
                    _ => unreachable!("resolved as ring or biamalg"),
                };
                if self.opts.write_exports {
                    let full = match &self.opts.base_dir {
                        Some(d) => d.join(path),
                        None => PathBuf::from(path),
                    };
                    std::fs::write(&full, &dot).map_err(|e| {
                        runtime(s.span, format!("cannot write {}: {e}", full.display()))
                    })?;
                }
                self.out.exports.push(Export {
                    target: target.name.clone(),
                    path: path.clone(),
                    dot,
                });
                return Ok(());
            }
        }
        self.decls.push(s.to_string());
        Ok(())
    }

    fn check(&mut self, target: &Ident, prop: &Prop, s: &Stmt) -> Result<CheckOutcome, Diagnostic> {
        let fail = |e: Error| runtime(s.span, e.to_string());
        let (ring, inst) = match &self.env[&target.name] {
            Value::Ring(r) => (r.clone(), None),
            Value::Biamalg(f) => (f.inst.r.clone(), Some(f.clone())),
            _ => unreachable!("resolved as ring or biamalg"),
        };
        let ring_facts = match &inst {
            Some(f) => f.r.clone(),
            None => self.ring_facts(&ring),
        };
        let mut details = Vec::new();
        let mut notes = Vec::new();
        let verdict = |v: &PropertyVerdict, notes: &mut Vec<&'static str>| {
            notes.extend(v.notes.iter().copied());
            (v.holds, v.witness.as_ref().map(Witness::to_string))
        };
        let (holds, witness) = match prop {
            Prop::Gaussian => verdict(ring_facts.gaussian(), &mut notes),
            Prop::Prufer => verdict(ring_facts.prufer(), &mut notes),
            Prop::Local => (ring_facts.local(), None),
            Prop::Spec => match &inst {
                None => {
                    for p in ring_spec(&ring) {
                        details.push(format!("prime {}", p.display()));
                    }
                    (true, None)
                }
                Some(f) => {
                    let report = assemble_spec(&f.inst).map_err(fail)?;
                    let thm = verify_spec_theorem(&f.inst).map_err(fail)?;
                    for p in &report.primes {
                        details.push(format!(
                            "prime {} ({} of {})",
                            p.ideal.display(),
                            p.provenance.tag(),
                            p.source.display()
                        ));
                    }
                    (report.ok() && thm.ok(), None)
                }
            },
            Prop::Fiber => {
                let f = inst
                    .as_ref()
                    .expect("resolved as a biamalg")
                    .fiber()
                    .clone();
                details.push(format!(
                    "set-equal={} commutes={} size={}/{}",
                    f.set_equal, f.diagram_commutes, f.r_order, f.expected_order
                ));
                (f.ok(), None)
            }
            Prop::Localize(p) => {
                let f = inst.as_ref().expect("resolved as a biamalg");
                let prime = self.ideal(p);
                if prime.ring() != &f.inst.a {
                    return Err(runtime(
                        p.span,
                        format!("`{}` is not an ideal of A", p.name),
                    ));
                }
                let r = verify_localization_iso(&f.inst, prime).map_err(fail)?;
                details.push(format!(
                    "identity={} iso={} orders={}/{}",
                    r.identity_holds, r.iso, r.left_order, r.right_order
                ));
                (r.ok(), None)
            }
            Prop::Star | Prop::DoubleStar | Prop::BlackStar => {
                let c = inst.as_ref().expect("resolved as a biamalg").conditions();
                let v = match prop {
                    Prop::Star => &c.star,
                    Prop::DoubleStar => &c.double_star,
                    _ => &c.black_star,
                };
                verdict(v, &mut notes)
            }
            Prop::Thm { id, clauses, .. } => {
                let thm = theorem(id).map_err(fail)?;
                let refs: Vec<&str> = clauses.iter().map(String::as_str).collect();
                let ab = Ablation::new(thm, &refs).map_err(fail)?;
                let evals = match (&inst, thm.scope) {
                    (Some(f), Scope::Instance) => evaluate_instance(thm, &ab, f),
                    (_, Scope::Ring) => evaluate_ring(thm, &ab, &ring_facts),
                    (None, Scope::Instance) => unreachable!("resolved as a biamalg"),
                }
                .map_err(fail)?;
                if let Some(n) = thm.note {
                    notes.push(n);
                }
                let applicable = evals.iter().filter(|e| e.hypotheses_hold()).count();
                let violated: Vec<&Evaluation> = evals.iter().filter(|e| e.violated()).collect();
                if evals.len() == 1 {
                    details.push(describe(&evals[0]));
                } else {
                    details.push(format!(
                        "{} cases, {applicable} with hypotheses holding, {} violated",
                        evals.len(),
                        violated.len()
                    ));
                    details.extend(violated.iter().take(4).map(|e| describe(e)));
                }
                if applicable == 0 {
                    details.push("hypotheses fail, so the statement holds vacuously".into());
                }
                let witness = violated
                    .iter()
                    .find_map(|e| e.witness.as_ref())
                    .map(Witness::to_string);
                (violated.is_empty(), witness)
            }
        };
        let mut replay = self.decls.join("\n");
        if !replay.is_empty() {
            replay.push('\n');
        }
        replay.push_str(&s.to_string());
        replay.push('\n');
        Ok(CheckOutcome {
            target: target.name.clone(),
            property: prop.to_string(),
            holds,
            witness,
            details,
            notes,
            replay,
            span: s.span,
        })
    }
}

/// Executes a resolved script.
pub fn execute(script: &Script, opts: &RunOptions) -> Outcome {
    if let Err(d) = resolve(script) {
        return Outcome::failed(d);
    }
    let mut ex = Executor {
        opts,
        env: HashMap::new(),
        interned: HashMap::new(),
        facts: HashMap::new(),
        decls: Vec::new(),
        out: Outcome::default(),
    };
    for s in &script.stmts {
        if let Err(d) = ex.stmt(s) {
            ex.out.error = Some(d);
            break;
        }
    }
    ex.out
}

/// Parses, resolves and executes `src`.
pub fn run_script(src: &str, opts: &RunOptions) -> Outcome {
    match super::parse(src) {
        Ok(script) => execute(&script, opts),
        Err(d) => Outcome::failed(d),
    }
}

/// Code table of a ring: one `code  element` line per element.
pub fn code_table(ring: &Ring) -> String {
    let width = ring.order().saturating_sub(1).to_string().len();
    ring.elements()
        .map(|x| format!("{x:>width$}  {}\n", ring.format_elem(x)))
        .collect()
}

/// Evaluates a standalone ring expression.
pub fn eval_ring_expr(expr: &str) -> Result<Ring, Diagnostic> {
    let src = format!("ring R = {expr};");
    let script = super::parse(&src)?;
    resolve(&script)?;
    let opts = RunOptions::default();
    let mut ex = Executor {
        opts: &opts,
        env: HashMap::new(),
        interned: HashMap::new(),
        facts: HashMap::new(),
        decls: Vec::new(),
        out: Outcome::default(),
    };
    ex.stmt(&script.stmts[0])?;
    Ok(ex
        .ring(&Ident {
            name: "R".into(),
            span: Span::default(),
        })
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX56: &str = "ring A = Z/8; ring B = Z/4; hom f: A -> B = canonical; \
                        ideal b = span(B,[2]); biamalg R = (A, f, f, b, b); check R gaussian;";

    fn quiet() -> RunOptions {
        RunOptions {
            write_exports: false,
            ..RunOptions::default()
        }
    }

    #[test]
    fn example_is_gaussian() {
        let out = run_script(EX56, &quiet());
        assert_eq!(out.exit_code(), EXIT_OK, "{:?}", out.error);
        assert!(out.text().contains("gaussian: true"));
    }

    #[test]
    fn duplication_z16_fails_gaussian_but_passes_necessary() {
        let src = "ring A = Z/16; hom i: A -> A = id; ideal b = span(A, [4]); \
                   biamalg R = (A, i, i, b, b); check R thm(gauss-necessary); check R gaussian;";
        let out = run_script(src, &quiet());
        assert!(out.error.is_none(), "{:?}", out.error);
        assert!(out.checks[0].holds);
        assert!(!out.checks[1].holds);
        assert!(out.checks[1].witness.is_some());
        assert_eq!(out.exit_code(), EXIT_CHECK_FAILED);
        let replay = run_script(&out.checks[1].replay, &quiet());
        assert!(!replay.checks[0].holds);
        assert_eq!(replay.checks[0].witness, out.checks[1].witness);
    }

    #[test]
    fn incompatible_ideals_report_a_witness() {
        let src =
            "ring A = Z/4; hom i: A -> A = id; ideal b = span(A, [2]); ideal z = span(A, []); \
                   biamalg R = (A, i, i, b, z);";
        let out = run_script(src, &quiet());
        assert_eq!(out.exit_code(), EXIT_INVALID);
        let e = out.error.unwrap();
        assert_eq!(e.stage, Stage::Runtime);
        assert!(e.message.contains("witness a = 2"), "{}", e.message);
    }

    #[test]
    fn resolution_errors() {
        let out = run_script("check X local;", &quiet());
        assert_eq!(out.error.as_ref().unwrap().stage, Stage::Resolve);
        assert_eq!(out.exit_code(), EXIT_INVALID);
        for src in [
            "ring A = Z/4; ring A = Z/2;",
            "ring A = Z/4; check A fiber;",
            "ring A = Z/4; check A thm(size-identity);",
            "ring A = Z/4; check A thm(no-such);",
            "ring A = Z/4; check A thm(degeneracy:bogus);",
            "ring A = Z/4[x]/(y^2);",
            "ring A = Z/4; ideal I = span(A, [2]); hom h: I -> A = id;",
        ] {
            let out = run_script(src, &quiet());
            assert_eq!(
                out.error.as_ref().map(|e| e.stage),
                Some(Stage::Resolve),
                "{src}"
            );
        }
    }

    #[test]
    fn structurally_equal_rings_coincide() {
        let src = "ring A = Z/4; ideal I = span(A, [2]); ring B = Z/4/I; \
                   hom p: A -> B = canonical; check B local;";
        let out = run_script(src, &quiet());
        assert_eq!(out.exit_code(), EXIT_OK, "{:?}", out.error);
    }

    #[test]
    fn ring_checks_and_tables() {
        let out = run_script(
            "ring F = Z/2[x]/(x^2 + x + 1); check F gaussian; check F spec;",
            &quiet(),
        );
        assert_eq!(out.exit_code(), EXIT_OK);
        let r = eval_ring_expr("Z/2[x]/(x^2)").unwrap();
        assert_eq!(code_table(&r), "0  0\n1  1\n2  x\n3  x+1\n");
        assert!(eval_ring_expr("Z/4 Z/6").is_err());
        assert!(eval_ring_expr("Z/0").is_err());
    }
}
