//! Property tests for the structural invariants, each against an oracle
//! computed here from definitions.

use std::collections::BTreeSet;

use biamalg::classify::is_gaussian_with;
use biamalg::dsl::parse;
use biamalg::harness::{generate_catalog, Caps};
use biamalg::ideal::{enumerate_spec, primes_containing};
use biamalg::localize::{localize_finite, MultiplicativeSet};
use biamalg::spectra::assemble_spec;
use biamalg::{BiAmalgInstance, Code, Exec, Ideal, Ring, RingHom};
use proptest::prelude::*;

#[derive(Clone, Debug)]
enum Shape {
    Zmod(u32),
    Galois(u32),
    /// Z/p[x]/(x^k) as a chain ring.
    Truncated(u32, usize),
    /// Z/p[x]/(x^2 + x) style splitting modulus.
    Split(u32),
    Product(Box<Shape>, Box<Shape>),
}

fn build(s: &Shape) -> Ring {
    match s {
        Shape::Zmod(n) => Ring::zmod(*n).unwrap(),
        Shape::Galois(q) => Ring::galois(*q).unwrap(),
        Shape::Truncated(p, k) => {
            let mut m = vec![0; k + 1];
            m[*k] = 1;
            Ring::poly_quot(&Ring::zmod(*p).unwrap(), "x", &m).unwrap()
        }
        Shape::Split(p) => Ring::poly_quot(&Ring::zmod(*p).unwrap(), "x", &[0, 1, 1]).unwrap(),
        Shape::Product(l, r) => Ring::product(&build(l), &build(r)).unwrap(),
    }
}

fn leaf() -> impl Strategy<Value = Shape> {
    prop_oneof![
        (2u32..=16).prop_map(Shape::Zmod),
        prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]).prop_map(Shape::Galois),
        (prop::sample::select(vec![2u32, 3]), 2usize..=3).prop_map(|(p, k)| Shape::Truncated(p, k)),
        prop::sample::select(vec![2u32, 3]).prop_map(Shape::Split),
    ]
}

/// Rings of order at most 64.
fn ring() -> impl Strategy<Value = Ring> {
    prop_oneof![
        3 => leaf(),
        1 => (leaf(), leaf()).prop_map(|(l, r)| Shape::Product(Box::new(l), Box::new(r))),
    ]
    .prop_filter_map("order cap", |s| {
        let r = build(&s);
        (r.order() <= 64).then_some(r)
    })
}

fn ring_and_gens() -> impl Strategy<Value = (Ring, Vec<Code>, Vec<Code>)> {
    ring().prop_flat_map(|r| {
        let n = r.order() as Code;
        (
            Just(r),
            prop::collection::vec(0..n, 0..3),
            prop::collection::vec(0..n, 0..3),
        )
    })
}

/// Every ideal, as sums of principal ideals.
fn all_ideals(r: &Ring) -> BTreeSet<Vec<Code>> {
    let principal: Vec<Ideal> = r.elements().map(|x| Ideal::span(r, &[x])).collect();
    let mut seen: BTreeSet<Vec<Code>> = BTreeSet::new();
    let mut frontier = vec![Ideal::zero(r)];
    seen.insert(Ideal::zero(r).elements());
    while let Some(i) = frontier.pop() {
        for p in &principal {
            let s = i.sum(p).unwrap();
            if seen.insert(s.elements()) {
                frontier.push(s);
            }
        }
    }
    seen
}

fn is_prime_set(r: &Ring, set: &[Code]) -> bool {
    let has = |x: Code| set.binary_search(&x).is_ok();
    set.len() < r.order()
        && r.elements()
            .all(|a| r.elements().all(|b| !has(r.mul(a, b)) || has(a) || has(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_hold(r in ring()) {
        prop_assert!(r.verify_axioms().is_ok());
    }

    #[test]
    fn regular_elements_are_units(r in ring()) {
        let regular = r.regular_set();
        for x in r.elements() {
            let unit = r.elements().any(|y| r.mul(x, y) == r.one());
            prop_assert_eq!(unit, r.units().contains(x as usize));
            prop_assert_eq!(unit, regular.contains(x as usize));
        }
    }

    #[test]
    fn nilradical_within_jacobson(r in ring()) {
        prop_assert!(r.nilradical().is_subset(&r.jacobson()));
    }

    #[test]
    fn quotient_order((r, g, _) in ring_and_gens()) {
        let i = Ideal::span(&r, &g);
        let q = Ring::quotient(&i).unwrap();
        prop_assert_eq!(q.order() * i.len(), r.order());
    }

    #[test]
    fn vanishing_sets_are_monotone((r, g, h) in ring_and_gens()) {
        let spec = enumerate_spec(&r);
        let i = Ideal::span(&r, &g);
        let j = i.sum(&Ideal::span(&r, &h)).unwrap();
        let vi = primes_containing(&spec, &i);
        for p in primes_containing(&spec, &j) {
            prop_assert!(vi.contains(&p));
        }
    }

    #[test]
    fn radical_is_intersection_of_primes((r, g, _) in ring_and_gens()) {
        let i = Ideal::span(&r, &g);
        let spec = enumerate_spec(&r);
        let mut meet: BTreeSet<Code> = r.elements().collect();
        for p in primes_containing(&spec, &i) {
            meet.retain(|x| p.contains(*x));
        }
        prop_assert_eq!(i.radical().elements(), meet.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn colon_and_annihilator((r, g, _) in ring_and_gens()) {
        let i = Ideal::span(&r, &g);
        prop_assert_eq!(i.colon(&Ideal::unit(&r)).unwrap(), i);
        prop_assert!(Ideal::unit(&r).annihilator().is_zero());
    }

    #[test]
    fn spectrum_matches_brute_force(r in ring()) {
        let brute: BTreeSet<Vec<Code>> = all_ideals(&r)
            .into_iter()
            .filter(|s| is_prime_set(&r, s))
            .collect();
        let spec: BTreeSet<Vec<Code>> = enumerate_spec(&r).iter().map(Ideal::elements).collect();
        prop_assert_eq!(spec, brute);
    }

    #[test]
    fn localizing_at_units_is_an_isomorphism(r in ring()) {
        let loc = localize_finite(&MultiplicativeSet::units(&r)).unwrap();
        prop_assert!(loc.map.is_bijective());
    }

    #[test]
    fn local_ring_at_its_maximal_ideal(r in ring()) {
        prop_assume!(r.is_local());
        let m = &r.maximal_ideals()[0];
        let loc = localize_finite(&MultiplicativeSet::complement_of(m).unwrap()).unwrap();
        prop_assert!(loc.map.is_bijective());
    }

    #[test]
    fn hom_tables_are_verified(
        (a, b, t) in (ring(), ring()).prop_flat_map(|(a, b)| {
            let n = b.order() as Code;
            let len = a.order();
            (Just(a), Just(b), prop::collection::vec(0..n, len))
        })
    ) {
        let is_hom = t[a.one() as usize] == b.one()
            && a.elements().all(|x| a.elements().all(|y| {
                t[a.add(x, y) as usize] == b.add(t[x as usize], t[y as usize])
                    && t[a.mul(x, y) as usize] == b.mul(t[x as usize], t[y as usize])
            }));
        prop_assert_eq!(RingHom::from_table(&a, &b, t).is_ok(), is_hom);
    }

    #[test]
    fn gaussian_verdict_is_strategy_independent(r in ring()) {
        prop_assert_eq!(
            is_gaussian_with(&r, Exec::Sequential),
            is_gaussian_with(&r, Exec::Parallel)
        );
    }
}

/// Z/n → Z/m canonically on the f side, with either the same map or the
/// identity of A on the g side.
fn instance() -> impl Strategy<Value = BiAmalgInstance> {
    (
        2u32..=16,
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
        any::<bool>(),
    )
        .prop_map(|(n, mi, gi, same)| {
            let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0 && *d > 1).collect();
            let m = *mi.get(&divisors);
            let a = Ring::zmod(n).unwrap();
            let b = Ring::zmod(m).unwrap();
            let f = RingHom::canonical(&a, &b).unwrap();
            let bi = Ideal::span(&b, &[gi.index(m as usize) as Code]);
            if same {
                BiAmalgInstance::new(&f, &f, &bi, &bi).unwrap()
            } else {
                let id = RingHom::identity(&a);
                let i0 = bi.contract(&f).unwrap();
                BiAmalgInstance::new(&f, &id, &bi, &i0).unwrap()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn size_identity(inst in instance()) {
        let a_mod = inst.a.order() / inst.i0.len();
        prop_assert_eq!(inst.r.order(), a_mod * inst.bi.len() * inst.ci.len());
    }

    #[test]
    fn bowtie_depends_on_sum_with_i0(inst in instance(), g in 0u32..16) {
        let g = g % inst.a.order() as Code;
        let i = Ideal::span(&inst.a, &[g]);
        let s = i.sum(&inst.i0).unwrap();
        prop_assert_eq!(inst.ideal_bowtie(&i).unwrap(), inst.ideal_bowtie(&s).unwrap());
    }

    #[test]
    fn sharp_is_a_contraction(inst in instance()) {
        for q in enumerate_spec(&inst.b) {
            if inst.bi.is_subset(&q) {
                continue;
            }
            let direct: Vec<Code> = inst
                .r
                .elements()
                .filter(|&z| q.contains(inst.coords(z).0))
                .collect();
            prop_assert_eq!(inst.sharp_b(&q).unwrap().elements(), direct);
        }
    }

    #[test]
    fn spectrum_count(inst in instance()) {
        let outside = |r: &Ring, i: &Ideal| {
            enumerate_spec(r).iter().filter(|p| !i.is_subset(p)).count()
        };
        let v_i0 = primes_containing(&enumerate_spec(&inst.a), &inst.i0).len();
        let expected = v_i0 + outside(&inst.b, &inst.bi) + outside(&inst.c, &inst.ci);
        prop_assert_eq!(enumerate_spec(&inst.r).len(), expected);
        prop_assert!(assemble_spec(&inst).unwrap().ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn catalog_is_deterministic(seed in any::<u64>()) {
        let caps = Caps { random_instances: 8, ..Caps::default() };
        let a = generate_catalog(caps, seed).unwrap();
        let b = generate_catalog(caps, seed).unwrap();
        prop_assert_eq!(a.fingerprint(), b.fingerprint());
    }
}

fn name() -> impl Strategy<Value = String> {
    "[a-y][a-z0-9_]{0,3}".prop_filter("reserved", |s| {
        !["ring", "hom", "ideal", "check", "export", "id", "images"].contains(&s.as_str())
    })
}

fn rexpr() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (2u32..40).prop_map(|n| format!("Z/{n}")),
        (2u32..40).prop_map(|q| format!("GF({q})")),
        name(),
    ];
    atom.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| format!("({l}) * ({r})")),
            (inner.clone(), name()).prop_map(|(b, i)| format!("{b} / {i}")),
            (inner.clone(), 1u32..4, 0u32..5)
                .prop_map(|(b, e, c)| format!("({b})[t]/(t^{e} + {c}*t + {c})")),
            inner.prop_map(|e| format!("({e})")),
        ]
    })
}

fn prop_text() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec![
            "gaussian",
            "prufer",
            "local",
            "spec",
            "fiber",
            "star",
            "doublestar",
            "blackstar"
        ])
        .prop_map(String::from),
        name().prop_map(|n| format!("localize({n})")),
        (name(), prop::collection::vec(name(), 0..3)).prop_map(|(id, cs)| format!(
            "thm({id}{})",
            cs.iter().map(|c| format!(":{c}")).collect::<String>()
        )),
    ]
}

fn stmt() -> impl Strategy<Value = String> {
    let ints = prop::collection::vec(0u32..100, 0..4)
        .prop_map(|v| v.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    prop_oneof![
        (name(), rexpr()).prop_map(|(n, e)| format!("ring {n} = {e};")),
        (
            name(),
            name(),
            name(),
            prop_oneof![
                Just("canonical".to_string()),
                Just("id".to_string()),
                ints.clone().prop_map(|l| format!("images[{l}]"))
            ]
        )
            .prop_map(|(n, a, b, s)| format!("hom {n}: {a} -> {b} = {s};")),
        (name(), name(), ints).prop_map(|(n, r, l)| format!("ideal {n} = span({r}, [{l}]);")),
        prop::collection::vec(name(), 6).prop_map(|v| format!(
            "biamalg {} = ({}, {}, {}, {}, {});",
            v[0], v[1], v[2], v[3], v[4], v[5]
        )),
        (name(), prop_text()).prop_map(|(n, p)| format!("check {n} {p};")),
        (name(), "[a-z/._ \"\\\\]{0,8}").prop_map(|(n, p)| {
            format!(
                "export spec {n} dot \"{}\";",
                p.replace('\\', "\\\\").replace('"', "\\\"")
            )
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_fixpoint(stmts in prop::collection::vec(stmt(), 1..8)) {
        let src = stmts.join("\n");
        let ast = parse(&src).map_err(|d| TestCaseError::fail(format!("{d}\n{src}")))?;
        let printed = ast.to_string();
        let again = parse(&printed).map_err(|d| TestCaseError::fail(format!("{d}\n{printed}")))?;
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn diagnostics_carry_spans(src in "[ -~\n]{0,60}") {
        if let Err(d) = parse(&src) {
            prop_assert!(d.span.start <= d.span.end && d.span.end <= src.len());
            prop_assert!(d.span.line >= 1 && d.span.col >= 1);
        }
    }
}
