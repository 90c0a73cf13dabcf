//! Acceptance criteria 1 to 15, run sequentially with their time limits.
//! Prints one line per criterion and exits nonzero if any fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use biamalg::classify::theorems::{
    evaluate_instance, first_scaling_failure, theorem, Ablation, InstanceFacts, Scope,
};
use biamalg::classify::{gauss_definitional, is_gaussian, is_prufer, is_total_fractions, Witness};
use biamalg::dsl::{parse, run_script, RunOptions};
use biamalg::harness::{
    counterexample_search, full_selection, generate_catalog, run_suite, Caps, Catalog,
    SearchOutcome,
};
use biamalg::{BiAmalgInstance, Code, Exec, Ideal, Ring, RingHom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog() -> Catalog {
    generate_catalog(Caps::default(), 0).expect("default catalog")
}

/// Runs the named theorems over `cat` and requires zero violations and errors.
fn suite_clean(cat: &Catalog, ids: &[&str]) -> Check {
    let selection: Vec<_> = ids
        .iter()
        .map(|id| (theorem(id).unwrap(), Ablation::none()))
        .collect();
    let report = run_suite(cat, &selection, Exec::default());
    let mut parts = Vec::new();
    for r in &report.results {
        ensure(r.errors.is_empty(), || {
            format!("{}: errors {:?}", r.theorem, r.errors)
        })?;
        ensure(r.violations == 0, || {
            format!(
                "{}: {} violations, first: {:?}",
                r.theorem,
                r.violations,
                r.failures.first().map(|f| &f.replay)
            )
        })?;
        ensure(r.applicable > 0, || {
            format!("{}: never applicable", r.theorem)
        })?;
        parts.push(format!(
            "{} {} subjects/{} applicable",
            r.theorem, r.instances, r.applicable
        ));
    }
    Ok(parts.join("; "))
}

fn modn_instance(n: u32, m: u32, gen: Code) -> BiAmalgInstance {
    let a = Ring::zmod(n).unwrap();
    let b = Ring::zmod(m).unwrap();
    let f = RingHom::canonical(&a, &b).unwrap();
    let bi = Ideal::span(&b, &[gen]);
    BiAmalgInstance::new(&f, &f, &bi, &bi).unwrap()
}

fn c1_size_identity() -> Check {
    let cat = catalog();
    for idx in 0..cat.instances.len() {
        let inst = cat.instance(idx).map_err(|e| e.to_string())?;
        // Elements enumerated straight from the definition.
        let mut pairs = HashSet::new();
        for a in inst.a.elements() {
            for s in inst.bi.iter() {
                for t in inst.ci.iter() {
                    pairs.insert((
                        inst.b.add(inst.f.apply(a), s),
                        inst.c.add(inst.g.apply(a), t),
                    ));
                }
            }
        }
        let a_mod_i0 = inst.a.order() / inst.i0.len();
        let expected = a_mod_i0 * inst.bi.len() * inst.ci.len();
        ensure(
            pairs.len() == expected && inst.r.order() == expected,
            || {
                format!(
                    "{}: |R| = {} (enumerated {}), expected {expected}",
                    cat.instance_label(idx),
                    inst.r.order(),
                    pairs.len()
                )
            },
        )?;
    }
    suite_clean(&cat, &["size-identity"]).map(|s| format!("{} instances; {s}", cat.instances.len()))
}

fn c2_fiber_product() -> Check {
    let cat = catalog();
    for idx in 0..cat.instances.len() {
        let inst = cat.instance(idx).map_err(|e| e.to_string())?;
        // π⁻¹(i_fg(A/𝔦₀)): pairs congruent to (f(a), g(a)) for one a.
        let mut pullback = 0usize;
        for x in inst.b.elements() {
            for y in inst.c.elements() {
                let hit = inst.a.elements().any(|a| {
                    inst.bi.contains(inst.b.sub(x, inst.f.apply(a)))
                        && inst.ci.contains(inst.c.sub(y, inst.g.apply(a)))
                });
                if hit {
                    pullback += 1;
                    ensure(inst.r_code(x, y).is_some(), || {
                        format!("{}: ({x},{y}) missing from R", cat.instance_label(idx))
                    })?;
                }
            }
        }
        ensure(pullback == inst.r.order(), || {
            format!("{}: pullback size {pullback}", cat.instance_label(idx))
        })?;
    }
    suite_clean(&cat, &["fiber-product"])
}

fn c3_spec() -> Check {
    suite_clean(&catalog(), &["spec-assembly"])
}

fn c4_local() -> Check {
    suite_clean(&catalog(), &["local-criterion"])
}

fn c5_monotonicity() -> Check {
    let mut cat = catalog();
    let orders: Vec<usize> = cat.rings.iter().map(|r| r.ring.order()).collect();
    cat.instances.retain(|s| orders[s.a] <= 12);
    suite_clean(&cat, &["ideal-monotonicity"])
}

fn c6_localization() -> Check {
    let mut cat = catalog();
    cat.instances.retain(|s| s.order <= 64);
    suite_clean(&cat, &["localization-iso"])
}

fn c7_example(p: u32) -> Check {
    let inst = modn_instance(p * p * p, p * p, p);
    let facts = InstanceFacts::new(inst);
    let thm = theorem("gauss-sufficient").unwrap();
    let evals = evaluate_instance(thm, &Ablation::none(), &facts).map_err(|e| e.to_string())?;
    let e = &evals[0];
    for h in &e.hypotheses {
        ensure(h.holds == Some(true), || format!("clause {} fails", h.name))?;
    }
    let r = &facts.inst.r;
    ensure(is_gaussian(r).holds, || "R is not Gaussian".into())?;
    ensure(r.is_local(), || "R is not local".into())?;
    let oracle = gauss_definitional(r, 3, Exec::default()).ok_or("oracle out of range")?;
    ensure(oracle.holds, || {
        format!("definitional oracle disagrees: {:?}", oracle.witness)
    })?;
    Ok(format!(
        "p={p}: |R|={}, clauses surjective,1,2,3 hold, Gaussian and local",
        r.order()
    ))
}

/// Failing pair for the local pair test, decided with ideal arithmetic.
fn pair_fails(r: &Ring, x: Code, y: Code) -> bool {
    let i = Ideal::span(r, &[x, y]);
    let sq = i.product(&i).unwrap();
    let px = Ideal::span(r, &[r.mul(x, x)]);
    let py = Ideal::span(r, &[r.mul(y, y)]);
    let zero = r.zero();
    if sq != px && sq != py {
        return true;
    }
    let xy = r.mul(x, y) == zero;
    (sq == px && xy && r.mul(y, y) != zero) || (sq == py && xy && r.mul(x, x) != zero)
}

fn c8_converse() -> Check {
    let z16 = Ring::zmod(16).unwrap();
    let id = RingHom::identity(&z16);
    let b = Ideal::span(&z16, &[4]);
    let inst = BiAmalgInstance::new(&id, &id, &b, &b).unwrap();
    let facts = InstanceFacts::new(inst);
    let thm = theorem("gauss-necessary").unwrap();
    let ab = Ablation::new(thm, &["gaussian-local"]).unwrap();
    let e = &evaluate_instance(thm, &ab, &facts).map_err(|e| e.to_string())?[0];
    for c in &e.conclusions {
        ensure(c.holds == Some(true), || {
            format!("conclusion {} fails", c.name)
        })?;
    }
    let r = &facts.inst.r;
    let v = is_gaussian(r);
    ensure(!v.holds, || "R is Gaussian".into())?;
    let (x, y) = match v.witness {
        Some(Witness::Pair(x, y)) => (x, y),
        other => return Err(format!("unexpected witness {other:?}")),
    };
    ensure(pair_fails(r, x, y), || {
        format!("pair ({x},{y}) does not fail")
    })?;

    // f(a)𝔟 against f(a²)𝔟, with f the identity of Z/16.
    let scaled = |a: Code| -> Vec<Code> {
        let mut s: Vec<Code> = b.iter().map(|t| z16.mul(a, t)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let first = z16.elements().find(|&a| scaled(a) != scaled(z16.mul(a, a)));
    ensure(first == Some(2), || {
        format!("first scaling failure {first:?}")
    })?;
    let lib = first_scaling_failure(&facts.inst, &z16, &id, &b);
    ensure(lib == first, || format!("library reports {lib:?}"))?;
    let (lhs, rhs) = (scaled(2), scaled(4));
    ensure(lhs != rhs, || "f(2)b = f(4)b".into())?;
    Ok(format!(
        "conclusions 1-3 hold; not Gaussian, witness pair ({x},{y}) in R; f(2)b = {lhs:?} != f(4)b = {rhs:?}"
    ))
}

fn c9_oracle() -> Check {
    let cat = catalog();
    let mut compared = 0;
    for r in &cat.rings {
        let ring = &r.ring;
        if ring.order() > 64 || !ring.is_local() {
            continue;
        }
        let ht = is_gaussian(ring).holds;
        let def = gauss_definitional(ring, 3, Exec::default())
            .ok_or_else(|| format!("{}: oracle out of range", r.label))?;
        ensure(ht == def.holds, || {
            format!(
                "{}: pair test {ht}, oracle {} ({:?})",
                r.label, def.holds, def.witness
            )
        })?;
        compared += 1;
    }
    ensure(compared >= 20, || format!("only {compared} local rings"))?;
    Ok(format!("{compared} local rings agree"))
}

/// (𝔞² = 0, a² = 0 for all a ∈ 𝔞), from products of elements.
fn idquad(r: &Ring, i: &Ideal) -> (bool, bool) {
    let elems = i.elements();
    let ideal_sq = elems
        .iter()
        .all(|&a| elems.iter().all(|&b| r.mul(a, b) == r.zero()));
    let elementwise = elems.iter().all(|&a| r.mul(a, a) == r.zero());
    (ideal_sq, elementwise)
}

fn c10_idquad() -> Check {
    let cat = catalog();
    let mut rings = 0;
    let mut ideals = 0;
    for r in &cat.rings {
        if !(r.facts.local() && r.facts.gaussian().holds) {
            continue;
        }
        rings += 1;
        for i in r.facts.ideals() {
            let (sq, el) = idquad(&r.ring, i);
            ensure(sq == el, || format!("{}: ideal {}", r.label, i.display()))?;
            ideals += 1;
        }
    }
    let f2 = Ring::zmod(2).unwrap();
    let fx = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
    let s = Ring::poly_quot(&fx, "y", &[0, 0, 1]).unwrap();
    // x = 2, y = 4 in the tower encoding.
    let m = Ideal::span(&s, &[2, 4]);
    let (sq, el) = idquad(&s, &m);
    ensure(el && !sq, || "negative control satisfies the lemma".into())?;
    ensure(!is_gaussian(&s).holds, || {
        "negative control is Gaussian".into()
    })?;
    Ok(format!(
        "{ideals} ideals of {rings} local Gaussian rings; F2[x,y]/(x^2,y^2) fails at (x,y)"
    ))
}

fn c11_prufer_quotients() -> Check {
    suite_clean(&catalog(), &["gauss-implies-prufer", "gauss-quotient"])
}

fn c12_degeneracy() -> Check {
    let cat = catalog();
    for r in &cat.rings {
        let ring = &r.ring;
        ensure(is_prufer(ring).holds, || format!("{} not Prufer", r.label))?;
        ensure(is_total_fractions(ring).holds, || {
            format!("{} not total", r.label)
        })?;
        for x in ring.elements() {
            let regular = ring
                .elements()
                .all(|y| y == ring.zero() || ring.mul(x, y) != ring.zero());
            let unit = ring.elements().any(|y| ring.mul(x, y) == ring.one());
            ensure(regular == unit, || format!("{}: element {x}", r.label))?;
        }
    }
    suite_clean(&cat, &["degeneracy"]).map(|s| format!("{} rings; {s}", cat.rings.len()))
}

fn c13_ablation() -> Check {
    let cat = catalog();
    let thm = theorem("gauss-sufficient").unwrap();
    let ab = Ablation::new(thm, &["3"]).unwrap();
    let found = match counterexample_search(&cat, thm, &ab, Exec::default()) {
        SearchOutcome::Found(f) => f,
        SearchOutcome::Exhausted { searched } => {
            return Err(format!("clause 3 dropped: exhausted {searched}"))
        }
    };
    let replay = run_script(
        &found.replay,
        &RunOptions {
            write_exports: false,
            ..RunOptions::default()
        },
    );
    ensure(
        replay.error.is_none() && replay.checks.len() == 1 && !replay.checks[0].holds,
        || format!("replay does not reproduce: {replay:?}"),
    )?;
    match counterexample_search(&cat, thm, &Ablation::none(), Exec::default()) {
        SearchOutcome::Exhausted { searched } => Ok(format!(
            "clause 3 dropped: {} (order {}); unablated: exhausted {searched}",
            found.subject, found.order
        )),
        SearchOutcome::Found(f) => Err(format!("unablated counterexample {}", f.subject)),
    }
}

fn c14_full() -> Check {
    let start = Instant::now();
    let report = run_suite(&catalog(), &full_selection(), Exec::default());
    let elapsed = start.elapsed();
    for r in &report.results {
        ensure(r.passed(), || {
            format!("{}: {} violations {:?}", r.theorem, r.violations, r.errors)
        })?;
    }
    ensure(elapsed < Duration::from_secs(120), || {
        format!("{elapsed:?}")
    })?;
    let again = run_suite(&catalog(), &full_selection(), Exec::Sequential);
    ensure(
        report.deterministic_json() == again.deterministic_json(),
        || "reports differ between runs".into(),
    )?;
    let rings = report
        .results
        .iter()
        .filter(|r| theorem(r.theorem).unwrap().scope == Scope::Ring)
        .count();
    Ok(format!(
        "{} theorems ({rings} ring-level) clean in {:.1} s; JSON identical across runs",
        report.results.len(),
        elapsed.as_secs_f64()
    ))
}

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "bam"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

/// Parses `src`; when it parses, printing must be a fixpoint.
fn roundtrip(src: &str) -> Result<bool, String> {
    let Ok(ast) = parse(src) else {
        return Ok(false);
    };
    let printed = ast.to_string();
    let again = parse(&printed).map_err(|d| format!("reparse failed: {d}\n{printed}"))?;
    ensure(again.to_string() == printed, || {
        format!("not a fixpoint:\n{printed}")
    })?;
    Ok(true)
}

fn mutate(rng: &mut ChaCha8Rng, src: &[u8]) -> Vec<u8> {
    let mut v = src.to_vec();
    for _ in 0..rng.gen_range(1..=4) {
        let at = rng.gen_range(0..=v.len());
        match rng.gen_range(0..5) {
            0 if at < v.len() => v[at] = rng.gen(),
            1 => v.insert(at, rng.gen()),
            2 if at < v.len() => {
                v.remove(at);
            }
            3 => {
                let end = rng.gen_range(at..=v.len().min(at + 16));
                let chunk = v[at..end].to_vec();
                let to = rng.gen_range(0..=v.len());
                v.splice(to..to, chunk);
            }
            _ => {
                let punct = b";=:,()[]/*+^-> \"#";
                v.insert(at, punct[rng.gen_range(0..punct.len())]);
            }
        }
    }
    v
}

fn c15_parser() -> Check {
    let corpus = corpus();
    ensure(corpus.len() >= 20, || {
        format!("corpus has {} scripts", corpus.len())
    })?;
    for (name, src) in &corpus {
        ensure(roundtrip(src)?, || format!("{name} does not parse"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut parsed = 0;
    for k in 0..100_000 {
        let (name, src) = &corpus[k % corpus.len()];
        let bytes = mutate(&mut rng, src.as_bytes());
        let text = String::from_utf8_lossy(&bytes);
        let ok = catch_unwind(AssertUnwindSafe(|| roundtrip(&text)))
            .map_err(|_| format!("panic on a mutant of {name}: {text:?}"))??;
        parsed += usize::from(ok);
    }
    Ok(format!(
        "{} scripts round-trip; 100000 mutants without a panic ({parsed} still parse)",
        corpus.len()
    ))
}

fn main() {
    // Silence the default hook: fuzz panics are reported as failures.
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Check>)> = vec![
        ("1 size identity", 10, Box::new(c1_size_identity)),
        ("2 fiber product", 10, Box::new(c2_fiber_product)),
        ("3 spectrum theorem", 30, Box::new(c3_spec)),
        ("4 local criterion", 10, Box::new(c4_local)),
        ("5 ideal monotonicity", 30, Box::new(c5_monotonicity)),
        ("6 localization iso", 60, Box::new(c6_localization)),
        ("7 example p=2", 1, Box::new(|| c7_example(2))),
        ("7 example p=3", 1, Box::new(|| c7_example(3))),
        ("8 converse failure", 5, Box::new(c8_converse)),
        ("9 Gaussian oracle agreement", 120, Box::new(c9_oracle)),
        ("10 square-zero lemma", 30, Box::new(c10_idquad)),
        (
            "11 Prufer and quotients",
            30,
            Box::new(c11_prufer_quotients),
        ),
        ("12 degeneracy", 10, Box::new(c12_degeneracy)),
        ("13 ablation", 60, Box::new(c13_ablation)),
        ("14 full harness", 240, Box::new(c14_full)),
        ("15 parser robustness", 60, Box::new(c15_parser)),
    ];
    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let result = result.and_then(|msg| {
            if secs < *limit as f64 {
                Ok(msg)
            } else {
                Err(format!("took {secs:.2} s, limit {limit} s"))
            }
        });
        match result {
            Ok(msg) => println!("criterion {name}: PASS ({secs:.2} s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({secs:.2} s) {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
