//! Running theorem selections over a catalog, and the counterexample search.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::catalog::{Caps, Catalog};
use super::replay::{instance_script, ring_script, thm_property};
use crate::classify::theorems::{
    evaluate_instance, evaluate_ring, Ablation, Evaluation, Scope, Theorem, THEOREMS,
};
use crate::classify::Witness;
use crate::par::Exec;

/// Failures kept per theorem; the violation count is always exact.
pub const MAX_REPORTED_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub subject: String,
    pub case: Option<String>,
    pub order: usize,
    pub replay: String,
    pub witness: Option<Witness>,
    /// Conclusion clauses that failed.
    pub failed: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremResult {
    pub theorem: &'static str,
    pub ablation: Vec<String>,
    /// Subjects (instances or rings) with at least one evaluation.
    pub instances: usize,
    pub evaluations: usize,
    /// Evaluations whose remaining hypotheses all hold.
    pub applicable: usize,
    pub violations: usize,
    pub failures: Vec<Failure>,
    pub degeneracy_notes: BTreeMap<&'static str, usize>,
    /// Evaluation errors, which count as failures of the run.
    pub errors: Vec<String>,
}

impl TheoremResult {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.errors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub caps: Caps,
    pub seed: u64,
    pub version: &'static str,
    pub rings: usize,
    pub catalog_instances: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub meta: Meta,
    pub results: Vec<TheoremResult>,
    pub timing: Timing,
}

#[derive(Serialize)]
struct Deterministic<'a> {
    meta: &'a Meta,
    results: &'a [TheoremResult],
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(TheoremResult::passed)
    }

    pub fn result(&self, theorem: &str) -> Option<&TheoremResult> {
        self.results.iter().find(|r| r.theorem == theorem)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without timing; byte-identical for equal inputs.
    pub fn deterministic_json(&self) -> String {
        serde_json::to_string_pretty(&Deterministic {
            meta: &self.meta,
            results: &self.results,
        })
        .expect("report serializes")
    }
}

/// Every registered theorem without ablation.
pub fn full_selection() -> Vec<(&'static Theorem, Ablation)> {
    THEOREMS.iter().map(|t| (t, Ablation::none())).collect()
}

fn failed_clauses(e: &Evaluation) -> Vec<&'static str> {
    e.conclusions
        .iter()
        .filter(|c| c.holds == Some(false))
        .map(|c| c.name)
        .collect()
}

/// Per-subject summary of one theorem's evaluations.
#[derive(Default)]
struct Tally {
    evaluations: usize,
    applicable: usize,
    violated: Vec<Evaluation>,
    error: Option<String>,
}

fn tally(result: crate::error::Result<Vec<Evaluation>>) -> Tally {
    match result {
        Ok(evals) => Tally {
            evaluations: evals.len(),
            applicable: evals.iter().filter(|e| e.hypotheses_hold()).count(),
            violated: evals.into_iter().filter(Evaluation::violated).collect(),
            error: None,
        },
        Err(e) => Tally {
            error: Some(e.to_string()),
            ..Tally::default()
        },
    }
}

fn replay(catalog: &Catalog, scope: Scope, subject: usize, property: &str) -> String {
    let script = match scope {
        Scope::Instance => {
            let (f, g, bi, ci) = catalog.parts(&catalog.instances[subject]);
            instance_script(f, g, bi, ci, property)
        }
        Scope::Ring => ring_script(&catalog.rings[subject].ring, property),
    };
    script.unwrap_or_else(|e| format!("# no replay: {e}\n"))
}

fn subject_label(catalog: &Catalog, scope: Scope, subject: usize) -> (String, usize) {
    match scope {
        Scope::Instance => (
            catalog.instance_label(subject),
            catalog.instances[subject].order,
        ),
        Scope::Ring => {
            let r = &catalog.rings[subject];
            (r.label.clone(), r.ring.order())
        }
    }
}

fn evaluate_subject(
    catalog: &Catalog,
    scope: Scope,
    subject: usize,
    selection: &[(&'static Theorem, Ablation)],
) -> Vec<Option<Tally>> {
    match scope {
        Scope::Instance => {
            let facts = match catalog.facts(subject) {
                Ok(f) => f,
                Err(e) => {
                    return selection
                        .iter()
                        .map(|(t, _)| {
                            (t.scope == Scope::Instance).then(|| Tally {
                                error: Some(format!("instance {subject}: {e}")),
                                ..Tally::default()
                            })
                        })
                        .collect()
                }
            };
            selection
                .iter()
                .map(|(t, ab)| {
                    (t.scope == Scope::Instance).then(|| tally(evaluate_instance(t, ab, &facts)))
                })
                .collect()
        }
        Scope::Ring => {
            let facts = &catalog.rings[subject].facts;
            selection
                .iter()
                .map(|(t, ab)| (t.scope == Scope::Ring).then(|| tally(evaluate_ring(t, ab, facts))))
                .collect()
        }
    }
}

/// Runs `selection` over every catalog instance and ring, in parallel over
/// subjects; results are merged in subject order.
pub fn run_suite(
    catalog: &Catalog,
    selection: &[(&'static Theorem, Ablation)],
    exec: Exec,
) -> SuiteReport {
    let start = Instant::now();
    let mut results: Vec<TheoremResult> = selection
        .iter()
        .map(|(t, ab)| TheoremResult {
            theorem: t.id,
            ablation: ab.clauses().to_vec(),
            instances: 0,
            evaluations: 0,
            applicable: 0,
            violations: 0,
            failures: Vec::new(),
            degeneracy_notes: BTreeMap::new(),
            errors: Vec::new(),
        })
        .collect();
    for scope in [Scope::Instance, Scope::Ring] {
        if !selection.iter().any(|(t, _)| t.scope == scope) {
            continue;
        }
        let n = match scope {
            Scope::Instance => catalog.instances.len(),
            Scope::Ring => catalog.rings.len(),
        };
        let per_subject = exec.map(n, |s| evaluate_subject(catalog, scope, s, selection));
        for (subject, tallies) in per_subject.into_iter().enumerate() {
            for (k, t) in tallies.into_iter().enumerate() {
                let Some(t) = t else { continue };
                let (thm, ab) = &selection[k];
                let res = &mut results[k];
                if let Some(e) = t.error {
                    res.errors.push(e);
                    continue;
                }
                if t.evaluations > 0 {
                    res.instances += 1;
                }
                res.evaluations += t.evaluations;
                res.applicable += t.applicable;
                res.violations += t.violated.len();
                if let Some(note) = thm.note {
                    *res.degeneracy_notes.entry(note).or_default() += t.evaluations;
                }
                for e in t.violated {
                    if res.failures.len() >= MAX_REPORTED_FAILURES {
                        break;
                    }
                    let (label, order) = subject_label(catalog, scope, subject);
                    res.failures.push(Failure {
                        subject: label,
                        order,
                        replay: replay(catalog, scope, subject, &thm_property(thm, ab)),
                        failed: failed_clauses(&e),
                        case: e.case,
                        witness: e.witness,
                    });
                }
            }
        }
    }
    SuiteReport {
        meta: Meta {
            caps: catalog.caps,
            seed: catalog.seed,
            version: env!("CARGO_PKG_VERSION"),
            rings: catalog.rings.len(),
            catalog_instances: catalog.instances.len(),
        },
        results,
        timing: Timing {
            total_ms: start.elapsed().as_millis(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum SearchOutcome {
    /// The violator of smallest order, ties broken by catalog index.
    Found(Failure),
    /// Every subject was checked without a violation.
    Exhausted { searched: usize },
}

/// Searches the catalog in ascending subject order for a violation of the
/// ablated theorem.
pub fn counterexample_search(
    catalog: &Catalog,
    thm: &'static Theorem,
    ablation: &Ablation,
    exec: Exec,
) -> SearchOutcome {
    let scope = thm.scope;
    let mut order: Vec<(usize, usize)> = match scope {
        Scope::Instance => catalog
            .instances
            .iter()
            .enumerate()
            .map(|(i, s)| (s.order, i))
            .collect(),
        Scope::Ring => catalog
            .rings
            .iter()
            .enumerate()
            .map(|(i, r)| (r.ring.order(), i))
            .collect(),
    };
    order.sort_unstable();
    let selection = [(thm, ablation.clone())];
    let found = exec.find_first(order.len(), |k| {
        let subject = order[k].1;
        let mut tallies = evaluate_subject(catalog, scope, subject, &selection);
        let t = tallies.pop().flatten()?;
        let e = t.violated.into_iter().next()?;
        let (label, order) = subject_label(catalog, scope, subject);
        Some(Failure {
            subject: label,
            order,
            replay: replay(catalog, scope, subject, &thm_property(thm, ablation)),
            failed: failed_clauses(&e),
            case: e.case,
            witness: e.witness,
        })
    });
    match found {
        Some(f) => SearchOutcome::Found(f),
        None => SearchOutcome::Exhausted {
            searched: order.len(),
        },
    }
}
