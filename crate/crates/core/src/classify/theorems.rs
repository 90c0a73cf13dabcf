//! Registry of the checkable statements about bi-amalgamations and finite
//! rings.
//!
//! Each theorem names its hypothesis and conclusion clauses. An evaluation
//! computes the hypotheses in order, stopping at the first false one, and
//! computes the conclusions only when every hypothesis holds. An ablation
//! drops named clauses; an evaluation is a violation when every remaining
//! hypothesis holds and some remaining conclusion fails.
//!
//! Facts shared between theorems (Gaussian verdicts, lattices, localized
//! data) are computed lazily and cached on [`RingFacts`] and
//! [`InstanceFacts`].

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::conditions::{
    condition_checks, is_total_fractions, lemma_idquad_with, regular_transfer_through,
    total_quotient_and_torsion, zero_divisor_dichotomy, ConditionReport,
};
use super::gauss::{gauss_definitional, is_gaussian_with};
use super::poly::DEFAULT_DEGREE_BOUND;
use super::prufer::is_prufer;
use super::{PropertyVerdict, Witness, NOTE_UNFALSIFIABLE};
use crate::biamalg::{BiAmalgInstance, FiberProductReport};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, enumerate_spec, Ideal};
use crate::par::Exec;
use crate::ring::{Code, Ring};
use crate::spectra::{
    assemble_spec, induced_localized_data, local_criterion, verify_localization_iso,
    verify_spec_theorem, LocalizedData,
};

/// Largest |R| for which the localization isomorphism is checked.
pub const LOCALIZATION_ISO_MAX_ORDER: usize = 64;
/// Largest ring order for the definitional Gaussian cross-check.
pub const GAUSS_ORACLE_MAX_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Evaluated on bi-amalgamation instances.
    Instance,
    /// Evaluated on rings.
    Ring,
}

#[derive(Debug)]
pub struct Theorem {
    pub id: &'static str,
    pub scope: Scope,
    pub statement: &'static str,
    pub hypotheses: &'static [&'static str],
    pub conclusions: &'static [&'static str],
    pub note: Option<&'static str>,
}

impl Theorem {
    pub fn has_clause(&self, name: &str) -> bool {
        self.hypotheses.contains(&name) || self.conclusions.contains(&name)
    }
}

macro_rules! thm {
    ($id:literal, $scope:ident, $stmt:literal, [$($h:literal),*], [$($c:literal),*]) => {
        thm!($id, $scope, $stmt, [$($h),*], [$($c),*], None)
    };
    ($id:literal, $scope:ident, $stmt:literal, [$($h:literal),*], [$($c:literal),*], $note:expr) => {
        Theorem {
            id: $id,
            scope: Scope::$scope,
            statement: $stmt,
            hypotheses: &[$($h),*],
            conclusions: &[$($c),*],
            note: $note,
        }
    };
}

pub static THEOREMS: &[Theorem] = &[
    thm!("size-identity", Instance, "|R| = |A/i0| |b| |c|", [], ["size"]),
    thm!(
        "fiber-product",
        Instance,
        "R is the preimage under pi of i_fg(A/i0), and the square commutes",
        [],
        ["set-equal", "commutes"]
    ),
    thm!(
        "canonical-maps",
        Instance,
        "p is onto with kernel b x c; iota and i_fg are injective; pi is onto",
        [],
        ["p-surjective", "ker-p", "iota-injective", "i-fg-injective", "pi-surjective"]
    ),
    thm!(
        "ideal-monotonicity",
        Instance,
        "for ideals a1, a2 containing i0, a1 bowtie within a2 bowtie implies a1 within a2",
        ["bowtie-contained"],
        ["contained"]
    ),
    thm!(
        "bowtie-sharp-ideals",
        Instance,
        "bowtie and sharp sets are ideals of R with the expected size and containments",
        [],
        ["bowtie-ideal", "contains-bxc", "bowtie-size", "sum-invariance", "sharp-contraction"]
    ),
    thm!(
        "spec-assembly",
        Instance,
        "Spec R is the disjoint union of the bowtie primes over V(i0) and the sharp primes off V(b), V(c)",
        [],
        [
            "matches",
            "partition",
            "bowtie-is-v-bxc",
            "count",
            "bowtie-bijection",
            "bowtie-order",
            "sharp-bijection",
            "maximality"
        ],
        Some("finite spectra are discrete: every prime is maximal")
    ),
    thm!(
        "local-criterion",
        Instance,
        "R is local iff A/i0 is local, b within Jac(B) and c within Jac(C)",
        [],
        ["forward", "backward"]
    ),
    thm!(
        "localization-iso",
        Instance,
        "R localized at p bowtie is the bi-amalgamation of the localized data, and f_p^-1(bB_S) = g_p^-1(cC_T) = i0A_p",
        [],
        ["identity", "iso"]
    ),
    thm!(
        "module-generators",
        Instance,
        "(1,1), (b_i,0), (0,c_j) generate R over A/k; (x_i,0), (0,y_j) generate B x C over R",
        [],
        ["r-generated", "bc-generated"]
    ),
    thm!(
        "prufer-descent",
        Instance,
        "(*) and R Prufer imply A/i0 Prufer",
        ["star", "R-prufer"],
        ["A/i0-prufer"],
        Some(super::NOTE_PRUFER)
    ),
    thm!(
        "prufer-descent-general",
        Instance,
        "R Prufer and regular transfer through A/a imply A/a Prufer in each of the three cases",
        ["case", "regular-transfer", "R-prufer"],
        ["A/a-prufer"],
        Some(super::NOTE_PRUFER)
    ),
    thm!(
        "b-scaling-regular",
        Instance,
        "(**) and R Prufer imply bB_S = f_m(r/1) bB_S and the C analog for regular r",
        ["doublestar", "R-prufer"],
        ["b-scaling", "c-scaling"],
        Some(super::NOTE_REGULAR_UNITS)
    ),
    thm!(
        "prufer-final-1",
        Instance,
        "(*) and R Prufer imply A/i0 Prufer and the scaling identities for r regular mod i0",
        ["star", "R-prufer"],
        ["A/i0-prufer", "b-scaling", "c-scaling"],
        Some(super::NOTE_PRUFER)
    ),
    thm!(
        "prufer-regular",
        Instance,
        "for regular b and c: R Prufer iff B, C Prufer and b = B",
        ["b-regular", "c-regular"],
        ["forward", "backward"],
        Some(super::NOTE_REGULAR_UNITS)
    ),
    thm!(
        "total-fractions",
        Instance,
        "A/k total fractions, b, c in the Jacobson radicals and torsion imply R total fractions",
        ["A/k-total-fractions", "b-in-jac", "c-in-jac", "b-torsion", "c-torsion"],
        ["R-total-fractions"],
        Some(super::NOTE_TOTAL_FRACTIONS)
    ),
    thm!(
        "zero-divisor-dichotomy",
        Instance,
        "a zero-divisor of R falls under case 1 or case 2, and case 2 forces a zero-divisor",
        [],
        ["certified", "case-2-sound"]
    ),
    thm!(
        "star-example",
        Instance,
        "B, C local total quotient rings with maximal ideals b, c imply the black-star condition",
        ["b-local-maximal", "c-local-maximal"],
        ["blackstar"]
    ),
    thm!(
        "prufer-final-2",
        Instance,
        "R local with the black-star condition, A/i0 Prufer and b = f(r)b, c = g(r)c imply R Prufer",
        ["local", "blackstar", "A/i0-prufer", "b-scaling", "c-scaling"],
        ["R-prufer"],
        Some(NOTE_UNFALSIFIABLE)
    ),
    thm!(
        "gauss-necessary",
        Instance,
        "R Gaussian local implies (1) A/i0, f(A)+b, g(A)+c Gaussian local, (2) b^2 != 0 => c^2 = 0, (3) b^2 = 0 and f onto => f(a)b within f(a^2)B",
        ["gaussian-local"],
        ["1", "2", "3"]
    ),
    thm!(
        "gauss-sufficient",
        Instance,
        "f, g onto, (1) A Gaussian local, (2) b^2 = c^2 = 0, (3) f(a)b = f(a^2)b and g(a)c = g(a^2)c imply R Gaussian local",
        ["surjective", "1", "2", "3"],
        ["gaussian-local"]
    ),
    thm!(
        "idquad-lemma",
        Ring,
        "in a Gaussian local ring, a^2 = 0 for all a in I iff I^2 = 0",
        ["gaussian-local"],
        ["equivalence"]
    ),
    thm!("gauss-implies-prufer", Ring, "Gaussian rings are Prufer", ["gaussian"], ["prufer"]),
    thm!(
        "gauss-quotient",
        Ring,
        "quotients of Gaussian rings are Gaussian",
        ["gaussian"],
        ["quotients"]
    ),
    thm!(
        "degeneracy",
        Ring,
        "finite rings are Prufer total rings of fractions whose regular elements are units",
        [],
        ["prufer", "total-fractions", "reg-units"]
    ),
    thm!(
        "gauss-oracle",
        Ring,
        "the local pair test agrees with the definitional content check in degree 3",
        [],
        ["agree"]
    ),
];

pub fn theorem(id: &str) -> Result<&'static Theorem> {
    THEOREMS
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| Error::UnknownTheorem(id.into()))
}

/// Clauses dropped from a theorem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ablation {
    dropped: Vec<String>,
}

impl Ablation {
    pub fn none() -> Self {
        Ablation::default()
    }

    pub fn new(thm: &Theorem, clauses: &[&str]) -> Result<Self> {
        for &c in clauses {
            if !thm.has_clause(c) {
                return Err(Error::UnknownClause {
                    theorem: thm.id.into(),
                    clause: c.into(),
                });
            }
        }
        Ok(Ablation {
            dropped: clauses.iter().map(|c| c.to_string()).collect(),
        })
    }

    /// Parses `ID` or `ID:clause[:clause...]`.
    pub fn parse(spec: &str) -> Result<(&'static Theorem, Ablation)> {
        let mut parts = spec.split(':');
        let thm = theorem(parts.next().unwrap_or_default())?;
        let clauses: Vec<&str> = parts.collect();
        Ok((thm, Ablation::new(thm, &clauses)?))
    }

    pub fn drops(&self, clause: &str) -> bool {
        self.dropped.iter().any(|c| c == clause)
    }

    pub fn clauses(&self) -> &[String] {
        &self.dropped
    }

    pub fn is_empty(&self) -> bool {
        self.dropped.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseValue {
    pub name: &'static str,
    /// `None` when dropped or not reached.
    pub holds: Option<bool>,
    pub dropped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    /// Sub-case label, for theorems quantified over ideals or primes.
    pub case: Option<String>,
    pub hypotheses: Vec<ClauseValue>,
    pub conclusions: Vec<ClauseValue>,
    pub witness: Option<Witness>,
}

impl Evaluation {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses
            .iter()
            .all(|h| h.dropped || h.holds == Some(true))
    }

    pub fn violated(&self) -> bool {
        self.hypotheses_hold() && self.conclusions.iter().any(|c| c.holds == Some(false))
    }
}

/// A clause value with an optional witness for its failure.
pub struct Outcome {
    holds: bool,
    witness: Option<Witness>,
}

impl From<bool> for Outcome {
    fn from(holds: bool) -> Self {
        Outcome {
            holds,
            witness: None,
        }
    }
}

impl From<(bool, Option<Witness>)> for Outcome {
    fn from((holds, witness): (bool, Option<Witness>)) -> Self {
        Outcome { holds, witness }
    }
}

impl From<PropertyVerdict> for Outcome {
    fn from(v: PropertyVerdict) -> Self {
        Outcome {
            holds: v.holds,
            witness: v.witness,
        }
    }
}

impl From<&PropertyVerdict> for Outcome {
    fn from(v: &PropertyVerdict) -> Self {
        Outcome {
            holds: v.holds,
            witness: v.witness.clone(),
        }
    }
}

struct Builder<'a> {
    ablation: &'a Ablation,
    eval: Evaluation,
    open: bool,
}

impl<'a> Builder<'a> {
    fn new(ablation: &'a Ablation) -> Self {
        Builder {
            ablation,
            eval: Evaluation {
                case: None,
                hypotheses: Vec::new(),
                conclusions: Vec::new(),
                witness: None,
            },
            open: true,
        }
    }

    fn case(mut self, label: String) -> Self {
        self.eval.case = Some(label);
        self
    }

    fn hyp<O: Into<Outcome>>(mut self, name: &'static str, f: impl FnOnce() -> O) -> Self {
        let dropped = self.ablation.drops(name);
        let holds = (!dropped && self.open).then(|| f().into().holds);
        if holds == Some(false) {
            self.open = false;
        }
        self.eval.hypotheses.push(ClauseValue {
            name,
            holds,
            dropped,
        });
        self
    }

    fn conc<O: Into<Outcome>>(mut self, name: &'static str, f: impl FnOnce() -> O) -> Self {
        let dropped = self.ablation.drops(name);
        let outcome = (!dropped && self.open).then(|| f().into());
        let holds = outcome.as_ref().map(|o| o.holds);
        if let Some(Outcome {
            holds: false,
            witness,
        }) = outcome
        {
            if self.eval.witness.is_none() {
                self.eval.witness = witness;
            }
        }
        self.eval.conclusions.push(ClauseValue {
            name,
            holds,
            dropped,
        });
        self
    }

    fn done(self) -> Evaluation {
        self.eval
    }
}

/// Lazily computed facts about one ring.
pub struct RingFacts {
    pub ring: Ring,
    exec: Exec,
    ideals: OnceLock<Vec<Ideal>>,
    quotients: OnceLock<Vec<Arc<RingFacts>>>,
    local: OnceLock<bool>,
    gaussian: OnceLock<PropertyVerdict>,
    prufer: OnceLock<PropertyVerdict>,
}

impl RingFacts {
    pub fn new(ring: &Ring) -> Arc<Self> {
        Self::with_exec(ring, Exec::Sequential)
    }

    pub fn with_exec(ring: &Ring, exec: Exec) -> Arc<Self> {
        Arc::new(RingFacts {
            ring: ring.clone(),
            exec,
            ideals: OnceLock::new(),
            quotients: OnceLock::new(),
            local: OnceLock::new(),
            gaussian: OnceLock::new(),
            prufer: OnceLock::new(),
        })
    }

    pub fn ideals(&self) -> &[Ideal] {
        self.ideals.get_or_init(|| all_ideals(&self.ring))
    }

    /// Facts for R/I, aligned with [`Self::ideals`].
    pub fn quotients(&self) -> &[Arc<RingFacts>] {
        self.quotients.get_or_init(|| {
            self.ideals()
                .iter()
                .map(|i| {
                    let q = Ring::quotient(i).expect("quotient of a catalog ring");
                    RingFacts::with_exec(&q, self.exec)
                })
                .collect()
        })
    }

    pub fn local(&self) -> bool {
        *self.local.get_or_init(|| self.ring.is_local())
    }

    pub fn gaussian(&self) -> &PropertyVerdict {
        self.gaussian
            .get_or_init(|| is_gaussian_with(&self.ring, self.exec))
    }

    pub fn gaussian_local(&self) -> bool {
        self.local() && self.gaussian().holds
    }

    pub fn prufer(&self) -> &PropertyVerdict {
        self.prufer.get_or_init(|| is_prufer(&self.ring))
    }
}

/// Lazily computed facts about one instance.
pub struct InstanceFacts {
    pub inst: BiAmalgInstance,
    pub a: Arc<RingFacts>,
    pub b: Arc<RingFacts>,
    pub c: Arc<RingFacts>,
    pub r: Arc<RingFacts>,
    pub a_mod_i0: Arc<RingFacts>,
    conditions: OnceLock<ConditionReport>,
    fiber: OnceLock<FiberProductReport>,
    localized: OnceLock<Vec<(Ideal, Result<LocalizedData>)>>,
}

impl InstanceFacts {
    pub fn new(inst: BiAmalgInstance) -> Self {
        let (a, b, c) = (
            RingFacts::new(&inst.a),
            RingFacts::new(&inst.b),
            RingFacts::new(&inst.c),
        );
        Self::with_rings(inst, a, b, c)
    }

    /// Shares the facts of A, B and C with other instances.
    pub fn with_rings(
        inst: BiAmalgInstance,
        a: Arc<RingFacts>,
        b: Arc<RingFacts>,
        c: Arc<RingFacts>,
    ) -> Self {
        InstanceFacts {
            r: RingFacts::new(&inst.r),
            a_mod_i0: RingFacts::new(&inst.a_mod_i0),
            inst,
            a,
            b,
            c,
            conditions: OnceLock::new(),
            fiber: OnceLock::new(),
            localized: OnceLock::new(),
        }
    }

    pub fn conditions(&self) -> &ConditionReport {
        self.conditions.get_or_init(|| condition_checks(&self.inst))
    }

    pub fn fiber(&self) -> &FiberProductReport {
        self.fiber.get_or_init(|| self.inst.verify_fiber_product())
    }

    /// Localized data at each maximal ideal of A containing 𝔦₀.
    pub fn localized(&self) -> &[(Ideal, Result<LocalizedData>)] {
        self.localized.get_or_init(|| {
            enumerate_spec(&self.inst.a)
                .into_iter()
                .filter(|m| self.inst.i0.is_subset(m))
                .map(|m| {
                    let data = induced_localized_data(&self.inst, &m);
                    (m, data)
                })
                .collect()
        })
    }
}

fn gens(ideal: &Ideal) -> String {
    ideal.display()
}

/// {u·x : x ∈ ideal}.
fn scaled(ring: &Ring, u: Code, ideal: &Ideal) -> BitSet {
    BitSet::from_iter_with_len(ring.order(), ideal.iter().map(|x| ring.mul(u, x) as usize))
}

/// The scaling identity bB_S = f_m(r/1) bB_S (or its C analog) for every
/// `r` in `scalars` and every maximal m ⊇ i0.
fn localized_scaling(facts: &InstanceFacts, scalars: &[Code], b_side: bool) -> Outcome {
    for (m, data) in facts.localized() {
        let data = match data {
            Ok(d) => d,
            Err(e) => return (false, Some(Witness::Text(e.to_string()))).into(),
        };
        let (ring, h, ext) = if b_side {
            (&data.b_s.ring, &data.f_p, &data.b_ext)
        } else {
            (&data.c_t.ring, &data.g_p, &data.c_ext)
        };
        for &r in scalars {
            let u = h.apply(data.a_p.map.apply(r));
            if &scaled(ring, u, ext) != ext.set() {
                let text = format!("r = {r} at the maximal ideal {}", gens(m));
                return (false, Some(Witness::Text(text))).into();
            }
        }
    }
    true.into()
}

fn regular_mod_i0(inst: &BiAmalgInstance) -> Vec<Code> {
    let (_, _, coset_of) = inst.a_mod_i0.quotient_parts().expect("quotient ring");
    inst.a
        .elements()
        .filter(|&a| inst.a_mod_i0.is_regular(coset_of[a as usize]))
        .collect()
}

fn square_zero(ideal: &Ideal) -> bool {
    ideal.power(2).is_zero()
}

/// Gaussian local verdict for the subring h(A) + ideal of `ring`.
fn image_plus_ideal_gaussian_local(
    ring: &Ring,
    h: &crate::hom::RingHom,
    ideal: &Ideal,
    exec: Exec,
) -> bool {
    let image = h.image();
    let mut set = BitSet::new(ring.order());
    for x in image.iter() {
        for y in ideal.iter() {
            set.insert(ring.add(x as Code, y) as usize);
        }
    }
    let elems: Vec<Code> = set.iter().map(|x| x as Code).collect();
    let sub = Ring::subring(ring, &elems).expect("h(A) + ideal is a subring");
    sub.is_local() && is_gaussian_with(&sub, exec).holds
}

pub fn evaluate_instance(
    thm: &Theorem,
    ablation: &Ablation,
    facts: &InstanceFacts,
) -> Result<Vec<Evaluation>> {
    if thm.scope != Scope::Instance {
        return Err(Error::Malformed(format!(
            "`{}` is a ring-level theorem",
            thm.id
        )));
    }
    let inst = &facts.inst;
    let exec = facts.r.exec;
    let one = |b: Builder| vec![b.done()];
    let base = || Builder::new(ablation);
    let out = match thm.id {
        "size-identity" => one(base().conc("size", || facts.fiber().size_identity)),
        "fiber-product" => one(base()
            .conc("set-equal", || facts.fiber().set_equal)
            .conc("commutes", || facts.fiber().diagram_commutes)),
        "canonical-maps" => {
            let rep = inst.canonical_maps();
            one(base()
                .conc("p-surjective", || rep.p_surjective)
                .conc("ker-p", || rep.ker_p_is_bxc)
                .conc("iota-injective", || rep.iota_injective)
                .conc("i-fg-injective", || rep.i_fg_injective)
                .conc("pi-surjective", || rep.pi_surjective))
        }
        "ideal-monotonicity" => {
            let over: Vec<(&Ideal, Ideal)> = facts
                .a
                .ideals()
                .iter()
                .filter(|i| inst.i0.is_subset(i))
                .map(|i| Ok((i, inst.ideal_bowtie(i)?)))
                .collect::<Result<_>>()?;
            let mut out = Vec::new();
            for (a1, b1) in &over {
                for (a2, b2) in &over {
                    out.push(
                        base()
                            .case(format!("a1 = {}, a2 = {}", gens(a1), gens(a2)))
                            .hyp("bowtie-contained", || b1.is_subset(b2))
                            .conc("contained", || a1.is_subset(a2))
                            .done(),
                    );
                }
            }
            out
        }
        "bowtie-sharp-ideals" => vec![bowtie_sharp(facts, base())],
        "spec-assembly" => {
            let spec = assemble_spec(inst);
            let thm_rep = verify_spec_theorem(inst);
            match (spec, thm_rep) {
                (Ok(s), Ok(t)) => one(base()
                    .conc("matches", || s.matches)
                    .conc("partition", || s.partition)
                    .conc("bowtie-is-v-bxc", || s.bowtie_is_v_bxc)
                    .conc("count", || s.count_identity)
                    .conc("bowtie-bijection", || t.bowtie_bijection)
                    .conc("bowtie-order", || t.bowtie_order)
                    .conc("sharp-bijection", || t.sharp_bijection)
                    .conc("maximality", || t.maximality)),
                (Err(e), _) | (_, Err(e)) => {
                    let w = Some(Witness::Text(e.to_string()));
                    one(base().conc("matches", || (false, w)))
                }
            }
        }
        "local-criterion" => {
            let lc = local_criterion(inst);
            one(base()
                .conc("forward", || !lc.criterion || lc.direct)
                .conc("backward", || !lc.direct || lc.criterion))
        }
        "localization-iso" => {
            if inst.r.order() > LOCALIZATION_ISO_MAX_ORDER {
                return Ok(Vec::new());
            }
            enumerate_spec(&inst.a)
                .into_iter()
                .filter(|p| inst.i0.is_subset(p))
                .map(|p| {
                    let rep = verify_localization_iso(inst, &p);
                    let err = |e: &Error| Some(Witness::Text(e.to_string()));
                    let b = base().case(format!("p = {}", gens(&p)));
                    match rep {
                        Ok(rep) => b
                            .conc("identity", || rep.identity_holds)
                            .conc("iso", || rep.iso)
                            .done(),
                        Err(e) => b.conc("identity", || (false, err(&e))).done(),
                    }
                })
                .collect()
        }
        "module-generators" => {
            let mg = inst.module_generators();
            one(base()
                .conc("r-generated", || mg.r_generated)
                .conc("bc-generated", || mg.bc_generated))
        }
        "prufer-descent" => one(base()
            .hyp("star", || &facts.conditions().star)
            .hyp("R-prufer", || facts.r.prufer())
            .conc("A/i0-prufer", || facts.a_mod_i0.prufer())),
        "prufer-descent-general" => {
            let kernel = inst.g.kernel();
            let g_image = inst.g.image();
            let mut out = Vec::new();
            for (ideal, quot) in facts.a.ideals().iter().zip(facts.a.quotients()) {
                let cases = [
                    inst.i0.is_subset(ideal),
                    inst.g.is_surjective() && kernel.is_subset(ideal),
                    inst.ci.set().is_subset(&g_image) && kernel.is_subset(ideal),
                ];
                for (k, holds) in cases.into_iter().enumerate() {
                    out.push(
                        base()
                            .case(format!("a = {}, case {}", gens(ideal), k + 1))
                            .hyp("case", || holds)
                            .hyp("regular-transfer", || {
                                let (_, _, coset_of) =
                                    quot.ring.quotient_parts().expect("quotient ring");
                                regular_transfer_through(inst, &quot.ring, coset_of)
                            })
                            .hyp("R-prufer", || facts.r.prufer())
                            .conc("A/a-prufer", || quot.prufer())
                            .done(),
                    );
                }
            }
            out
        }
        "b-scaling-regular" => {
            let regular: Vec<Code> = inst
                .a
                .elements()
                .filter(|&a| inst.a.is_regular(a))
                .collect();
            one(base()
                .hyp("doublestar", || &facts.conditions().double_star)
                .hyp("R-prufer", || facts.r.prufer())
                .conc("b-scaling", || localized_scaling(facts, &regular, true))
                .conc("c-scaling", || localized_scaling(facts, &regular, false)))
        }
        "prufer-final-1" => {
            let scalars = regular_mod_i0(inst);
            one(base()
                .hyp("star", || &facts.conditions().star)
                .hyp("R-prufer", || facts.r.prufer())
                .conc("A/i0-prufer", || facts.a_mod_i0.prufer())
                .conc("b-scaling", || localized_scaling(facts, &scalars, true))
                .conc("c-scaling", || localized_scaling(facts, &scalars, false)))
        }
        "prufer-regular" => {
            let has_regular = |ring: &Ring, i: &Ideal| i.iter().any(|x| ring.is_regular(x));
            let rhs = || facts.b.prufer().holds && facts.c.prufer().holds && inst.bi.is_unit();
            one(base()
                .hyp("b-regular", || has_regular(&inst.b, &inst.bi))
                .hyp("c-regular", || has_regular(&inst.c, &inst.ci))
                .conc("forward", || !facts.r.prufer().holds || rhs())
                .conc("backward", || !rhs() || facts.r.prufer().holds))
        }
        "total-fractions" => {
            let t = total_quotient_and_torsion(inst);
            one(base()
                .hyp("A/k-total-fractions", || t.a_mod_k_total_fractions)
                .hyp("b-in-jac", || t.b_in_jac)
                .hyp("c-in-jac", || t.c_in_jac)
                .hyp("b-torsion", || t.b_torsion)
                .hyp("c-torsion", || t.c_torsion)
                .conc("R-total-fractions", || &t.total_fractions))
        }
        "zero-divisor-dichotomy" => {
            let all: Vec<_> = inst
                .r
                .elements()
                .map(|r| (r, zero_divisor_dichotomy(inst, r).expect("valid code")))
                .collect();
            let first = |pred: &dyn Fn(&super::Dichotomy) -> bool| -> Outcome {
                match all.iter().find(|(_, d)| !pred(d)) {
                    None => true.into(),
                    Some((r, _)) => (false, Some(Witness::Element(*r))).into(),
                }
            };
            one(base()
                .conc("certified", || first(&|d| d.certified()))
                .conc("case-2-sound", || {
                    first(&|d| d.case2.is_none() || d.is_zero_divisor)
                }))
        }
        "star-example" => {
            let local_max = |rf: &RingFacts, i: &Ideal| {
                rf.local()
                    && is_total_fractions(&rf.ring).holds
                    && rf.ring.maximal_ideals().first() == Some(i)
            };
            one(base()
                .hyp("b-local-maximal", || local_max(&facts.b, &inst.bi))
                .hyp("c-local-maximal", || local_max(&facts.c, &inst.ci))
                .conc("blackstar", || &facts.conditions().black_star))
        }
        "prufer-final-2" => {
            let scalars = regular_mod_i0(inst);
            let scaling = |ring: &Ring, h: &crate::hom::RingHom, ideal: &Ideal| -> Outcome {
                match scalars
                    .iter()
                    .find(|&&r| &scaled(ring, h.apply(r), ideal) != ideal.set())
                {
                    None => true.into(),
                    Some(&r) => (false, Some(Witness::Element(r))).into(),
                }
            };
            one(base()
                .hyp("local", || facts.r.local())
                .hyp("blackstar", || &facts.conditions().black_star)
                .hyp("A/i0-prufer", || facts.a_mod_i0.prufer())
                .hyp("b-scaling", || scaling(&inst.b, &inst.f, &inst.bi))
                .hyp("c-scaling", || scaling(&inst.c, &inst.g, &inst.ci))
                .conc("R-prufer", || facts.r.prufer()))
        }
        "gauss-necessary" => {
            let b_sq_zero = square_zero(&inst.bi);
            one(base()
                .hyp("gaussian-local", || facts.r.gaussian_local())
                .conc("1", || {
                    facts.a_mod_i0.gaussian_local()
                        && image_plus_ideal_gaussian_local(&inst.b, &inst.f, &inst.bi, exec)
                        && image_plus_ideal_gaussian_local(&inst.c, &inst.g, &inst.ci, exec)
                })
                .conc("2", || b_sq_zero || square_zero(&inst.ci))
                .conc("3", || -> Outcome {
                    if !(b_sq_zero && inst.f.is_surjective()) {
                        return true.into();
                    }
                    let bad = inst.a.elements().find(|&a| {
                        let fa = inst.f.apply(a);
                        let fa2 = inst.f.apply(inst.a.mul(a, a));
                        let target = Ideal::span(&inst.b, &[fa2]);
                        !inst.bi.iter().all(|x| target.contains(inst.b.mul(fa, x)))
                    });
                    (bad.is_none(), bad.map(Witness::Element)).into()
                }))
        }
        "gauss-sufficient" => one(base()
            .hyp("surjective", || {
                inst.f.is_surjective() && inst.g.is_surjective()
            })
            .hyp("1", || facts.a.gaussian_local())
            .hyp("2", || square_zero(&inst.bi) && square_zero(&inst.ci))
            .hyp("3", || {
                first_scaling_failure(inst, &inst.b, &inst.f, &inst.bi).is_none()
                    && first_scaling_failure(inst, &inst.c, &inst.g, &inst.ci).is_none()
            })
            .conc("gaussian-local", || -> Outcome {
                let v = facts.r.gaussian();
                (facts.r.local() && v.holds, v.witness.clone()).into()
            })),
        other => return Err(Error::UnknownTheorem(other.into())),
    };
    Ok(out)
}

/// First a ∈ A with h(a)·ideal ≠ h(a²)·ideal.
pub fn first_scaling_failure(
    inst: &BiAmalgInstance,
    ring: &Ring,
    h: &crate::hom::RingHom,
    ideal: &Ideal,
) -> Option<Code> {
    inst.a.elements().find(|&a| {
        let lhs = scaled(ring, h.apply(a), ideal);
        let rhs = scaled(ring, h.apply(inst.a.mul(a, a)), ideal);
        lhs != rhs
    })
}

fn bowtie_sharp(facts: &InstanceFacts, b: Builder) -> Evaluation {
    let inst = &facts.inst;
    let bowties: Vec<(&Ideal, Result<Ideal>)> = facts
        .a
        .ideals()
        .iter()
        .map(|i| (i, inst.ideal_bowtie(i)))
        .collect();
    let text = |s: String| Some(Witness::Text(s));
    let first_err = bowties.iter().find_map(|(i, r)| {
        r.as_ref()
            .err()
            .map(|e| (i, matches!(e, Error::Internal(_))))
    });
    // |𝔞⋈| = |(𝔞+𝔦₀)/𝔦₀|·|𝔟|·|𝔠|, cross-multiplied by |𝔦₀|.
    let scale = inst.bi.len() * inst.ci.len();
    b.conc("bowtie-ideal", || match first_err {
        Some((i, false)) => (
            false,
            text(format!("bowtie of {} is not an ideal", gens(i))),
        ),
        _ => (true, None),
    })
    .conc("contains-bxc", || match first_err {
        Some((i, true)) => (false, text(format!("bowtie of {} misses b x c", gens(i)))),
        _ => (true, None),
    })
    .conc("bowtie-size", || {
        let bad = bowties.iter().find(|(i, r)| {
            let sum = i.sum(&inst.i0).expect("same ring");
            r.as_ref()
                .is_ok_and(|r| r.len() * inst.i0.len() != sum.len() * scale)
        });
        (
            bad.is_none(),
            bad.and_then(|(i, _)| text(format!("size of the bowtie of {}", gens(i)))),
        )
    })
    .conc("sum-invariance", || {
        let bad = bowties.iter().find(|(i, r)| {
            let sum = i.sum(&inst.i0).expect("same ring");
            match (r, inst.ideal_bowtie(&sum)) {
                (Ok(x), Ok(y)) => *x != y,
                _ => false,
            }
        });
        (
            bad.is_none(),
            bad.and_then(|(i, _)| text(format!("bowtie of {} vs its sum with i0", gens(i)))),
        )
    })
    .conc("sharp-contraction", || {
        let b_bad = facts.b.ideals().iter().find(|j| inst.sharp_b(j).is_err());
        let c_bad = facts.c.ideals().iter().find(|j| inst.sharp_c(j).is_err());
        match (b_bad, c_bad) {
            (None, None) => (true, None),
            (Some(j), _) => (false, text(format!("sharp of {} in B", gens(j)))),
            (_, Some(j)) => (false, text(format!("sharp of {} in C", gens(j)))),
        }
    })
    .done()
}

pub fn evaluate_ring(
    thm: &Theorem,
    ablation: &Ablation,
    facts: &RingFacts,
) -> Result<Vec<Evaluation>> {
    if thm.scope != Scope::Ring {
        return Err(Error::Malformed(format!(
            "`{}` is an instance-level theorem",
            thm.id
        )));
    }
    let ring = &facts.ring;
    let base = || Builder::new(ablation);
    let out = match thm.id {
        "idquad-lemma" => {
            if !facts.local() {
                return Ok(Vec::new());
            }
            vec![base()
                .hyp("gaussian-local", || facts.gaussian_local())
                .conc("equivalence", || -> Outcome {
                    let gaussian = facts.gaussian().holds;
                    let bad = facts.ideals().iter().find(|i| {
                        !lemma_idquad_with(i, gaussian)
                            .expect("local ring")
                            .equivalence_holds
                    });
                    (
                        bad.is_none(),
                        bad.map(|i| Witness::Ideal(i.generators().to_vec())),
                    )
                        .into()
                })
                .done()]
        }
        "gauss-implies-prufer" => vec![base()
            .hyp("gaussian", || facts.gaussian())
            .conc("prufer", || facts.prufer())
            .done()],
        "gauss-quotient" => vec![base()
            .hyp("gaussian", || facts.gaussian())
            .conc("quotients", || -> Outcome {
                let bad = facts
                    .ideals()
                    .iter()
                    .zip(facts.quotients())
                    .find(|(_, q)| !q.gaussian().holds);
                (
                    bad.is_none(),
                    bad.map(|(i, _)| Witness::Ideal(i.generators().to_vec())),
                )
                    .into()
            })
            .done()],
        "degeneracy" => vec![base()
            .conc("prufer", || facts.prufer())
            .conc("total-fractions", || is_total_fractions(ring))
            .conc("reg-units", || -> Outcome {
                let bad = ring
                    .elements()
                    .find(|&x| ring.is_regular(x) != ring.is_unit(x));
                (bad.is_none(), bad.map(Witness::Element)).into()
            })
            .done()],
        "gauss-oracle" => {
            if !facts.local() || ring.order() > GAUSS_ORACLE_MAX_ORDER {
                return Ok(Vec::new());
            }
            let Some(def) = gauss_definitional(ring, DEFAULT_DEGREE_BOUND, facts.exec) else {
                return Ok(Vec::new());
            };
            vec![base()
                .conc("agree", || -> Outcome {
                    let ht = facts.gaussian();
                    let w = if def.holds {
                        ht.witness.clone()
                    } else {
                        def.witness.clone()
                    };
                    (ht.holds == def.holds, w).into()
                })
                .done()]
        }
        other => return Err(Error::UnknownTheorem(other.into())),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biamalg::duplication;
    use crate::hom::RingHom;

    fn example_56(p: u32) -> BiAmalgInstance {
        let a = Ring::zmod(p * p * p).unwrap();
        let b = Ring::zmod(p * p).unwrap();
        let f = RingHom::canonical(&a, &b).unwrap();
        let bi = Ideal::span(&b, &[p]);
        BiAmalgInstance::new(&f, &f, &bi, &bi).unwrap()
    }

    fn dup16() -> BiAmalgInstance {
        let z16 = Ring::zmod(16).unwrap();
        duplication(&Ideal::span(&z16, &[4])).unwrap()
    }

    fn violations(id: &str, clauses: &[&str], facts: &InstanceFacts) -> usize {
        let thm = theorem(id).unwrap();
        let abl = Ablation::new(thm, clauses).unwrap();
        evaluate_instance(thm, &abl, facts)
            .unwrap()
            .iter()
            .filter(|e| e.violated())
            .count()
    }

    #[test]
    fn registry_ids_are_unique_and_clauses_distinct() {
        for (i, t) in THEOREMS.iter().enumerate() {
            assert!(THEOREMS[i + 1..].iter().all(|u| u.id != t.id));
            for h in t.hypotheses {
                assert!(!t.conclusions.contains(h), "{}: {h}", t.id);
            }
        }
        assert!(theorem("no-such").is_err());
        assert!(Ablation::parse("gauss-sufficient:9").is_err());
        let (t, a) = Ablation::parse("gauss-sufficient:3").unwrap();
        assert_eq!(t.id, "gauss-sufficient");
        assert!(a.drops("3"));
    }

    #[test]
    fn every_instance_theorem_holds_on_examples() {
        for inst in [example_56(2), dup16()] {
            let facts = InstanceFacts::new(inst);
            for t in THEOREMS.iter().filter(|t| t.scope == Scope::Instance) {
                assert_eq!(violations(t.id, &[], &facts), 0, "{}", t.id);
            }
        }
    }

    #[test]
    fn example_56_meets_sufficient_hypotheses() {
        let facts = InstanceFacts::new(example_56(2));
        let thm = theorem("gauss-sufficient").unwrap();
        let ev = &evaluate_instance(thm, &Ablation::none(), &facts).unwrap()[0];
        assert!(ev.hypotheses.iter().all(|h| h.holds == Some(true)));
        assert_eq!(ev.conclusions[0].holds, Some(true));
    }

    #[test]
    fn dropping_scaling_clause_exposes_duplication() {
        let facts = InstanceFacts::new(dup16());
        assert_eq!(violations("gauss-sufficient", &[], &facts), 0);
        assert_eq!(violations("gauss-sufficient", &["3"], &facts), 1);
        let thm = theorem("gauss-necessary").unwrap();
        let ev = &evaluate_instance(
            thm,
            &Ablation::new(thm, &["gaussian-local"]).unwrap(),
            &facts,
        )
        .unwrap()[0];
        assert!(ev.conclusions.iter().all(|c| c.holds == Some(true)));
    }

    #[test]
    fn ring_theorems_on_negative_control() {
        let f2 = Ring::zmod(2).unwrap();
        let fx = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let fxy = Ring::poly_quot(&fx, "y", &[0, 0, 1]).unwrap();
        let facts = RingFacts::new(&fxy);
        for t in THEOREMS.iter().filter(|t| t.scope == Scope::Ring) {
            let evs = evaluate_ring(t, &Ablation::none(), &facts).unwrap();
            assert!(evs.iter().all(|e| !e.violated()), "{}", t.id);
        }
        let t = theorem("idquad-lemma").unwrap();
        let abl = Ablation::new(t, &["gaussian-local"]).unwrap();
        assert!(evaluate_ring(t, &abl, &facts).unwrap()[0].violated());
    }
}
