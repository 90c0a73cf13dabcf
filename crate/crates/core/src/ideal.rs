//! Ideals of a finite ring, stored as fully enumerated bit sets.

use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ring::{Code, Ring};

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Code>,
    elems: BitSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elems == other.elems
    }
}

impl Eq for Ideal {}

impl std::hash::Hash for Ideal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.elems.hash(state);
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by sorted element list; only meaningful within one ring.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elems.cmp(&other.elems)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// `{r * x : r in R}`.
pub fn principal_set(ring: &Ring, x: Code) -> BitSet {
    let mut s = BitSet::new(ring.order());
    match ring.mul_row(x) {
        Some(row) => row.iter().for_each(|&y| {
            s.insert(y as usize);
        }),
        None => ring.elements().for_each(|r| {
            s.insert(ring.mul(r, x) as usize);
        }),
    }
    s
}

/// `I + J` for additive subgroups, by adjoining whole cosets of `I`.
pub fn sum_sets(ring: &Ring, i: &BitSet, j: &BitSet) -> BitSet {
    let i_elems: Vec<Code> = i.iter().map(|x| x as Code).collect();
    let mut out = i.clone();
    for y in j.iter() {
        if out.contains(y) {
            continue;
        }
        for &a in &i_elems {
            out.insert(ring.add(a, y as Code) as usize);
        }
    }
    out
}

/// Greedy generating set: scan codes in order, keep those outside the span
/// of the ones kept so far. Each kept generator at least doubles the span.
fn greedy_generators(ring: &Ring, set: &BitSet) -> Vec<Code> {
    let mut gens = Vec::new();
    let mut span = BitSet::from_iter_with_len(ring.order(), [0]);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x as Code);
            span = sum_sets(ring, &span, &principal_set(ring, x as Code));
        }
    }
    gens
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
    Colon,
    Annihilator,
    Power(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transfer {
    Contract,
    Extend,
}

/// Regularity of an ideal of a finite ring: regular elements are units, so
/// a regular ideal is the unit ideal.
pub const REGULAR_IS_UNIT_NOTE: &str =
    "finite ring: regular elements are units, so regular ideal <=> unit ideal";

#[derive(Clone, Debug)]
pub struct IdealPredicates {
    pub is_proper: bool,
    pub is_prime: bool,
    pub is_maximal: bool,
    pub is_regular: bool,
    pub regular_note: &'static str,
    pub radical: Ideal,
}

impl Ideal {
    pub fn span(ring: &Ring, gens: &[Code]) -> Ideal {
        let mut elems = BitSet::from_iter_with_len(ring.order(), [0]);
        for &g in gens {
            debug_assert!((g as usize) < ring.order());
            if !elems.contains(g as usize) {
                elems = sum_sets(ring, &elems, &principal_set(ring, g));
            }
        }
        Ideal {
            ring: ring.clone(),
            gens: gens.to_vec(),
            elems,
        }
    }

    pub fn try_span(ring: &Ring, gens: &[Code]) -> Result<Ideal> {
        for &g in gens {
            ring.check_code(g)?;
        }
        Ok(Ideal::span(ring, gens))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::span(ring, &[])
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::span(ring, &[ring.one()])
    }

    /// Checked construction from an element set.
    pub fn from_set(ring: &Ring, set: BitSet) -> Result<Ideal> {
        if set.capacity() != ring.order() {
            return Err(Error::RingMismatch);
        }
        if !set.contains(0) {
            return Err(Error::Malformed("ideal must contain 0".into()));
        }
        let members: Vec<Code> = set.iter().map(|x| x as Code).collect();
        for &a in &members {
            for &b in &members {
                if !set.contains(ring.add(a, b) as usize) {
                    return Err(Error::Malformed("set not closed under addition".into()));
                }
            }
            for r in ring.elements() {
                if !set.contains(ring.mul(r, a) as usize) {
                    return Err(Error::Malformed("set not closed under scaling".into()));
                }
            }
        }
        Ok(Ideal::from_ideal_set(ring, set))
    }

    /// For sets already known to be ideals.
    pub(crate) fn from_ideal_set(ring: &Ring, set: BitSet) -> Ideal {
        let gens = greedy_generators(ring, &set);
        Ideal {
            ring: ring.clone(),
            gens,
            elems: set,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Code] {
        &self.gens
    }

    pub fn set(&self) -> &BitSet {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = Code> + '_ {
        self.elems.iter().map(|x| x as Code)
    }

    pub fn elements(&self) -> Vec<Code> {
        self.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.elems.count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Code) -> bool {
        self.elems.contains(x as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.elems.is_subset(&other.elems)
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(Ideal::from_ideal_set(
            &self.ring,
            sum_sets(&self.ring, &self.elems, &other.elems),
        ))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let r = &self.ring;
        let gens: Vec<Code> = self
            .gens
            .iter()
            .flat_map(|&a| other.gens.iter().map(move |&b| r.mul(a, b)))
            .collect();
        let span = Ideal::span(r, &gens);
        Ok(Ideal::from_ideal_set(r, span.elems))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut s = self.elems.clone();
        s.intersect_with(&other.elems);
        Ok(Ideal::from_ideal_set(&self.ring, s))
    }

    /// `(self : other) = {x : x * other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let r = &self.ring;
        let mut s = BitSet::new(r.order());
        for x in r.elements() {
            if other.gens.iter().all(|&g| self.contains(r.mul(x, g))) {
                s.insert(x as usize);
            }
        }
        Ok(Ideal::from_ideal_set(r, s))
    }

    pub fn annihilator(&self) -> Ideal {
        Ideal::zero(&self.ring)
            .colon(self)
            .expect("same ring by construction")
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn apply(op: IdealOp, i: &Ideal, j: Option<&Ideal>) -> Result<Ideal> {
        let need = || j.ok_or_else(|| Error::Malformed(format!("{op:?} needs two ideals")));
        match op {
            IdealOp::Sum => i.sum(need()?),
            IdealOp::Product => i.product(need()?),
            IdealOp::Intersect => i.intersect(need()?),
            IdealOp::Colon => i.colon(need()?),
            IdealOp::Annihilator => Ok(i.annihilator()),
            IdealOp::Power(k) => Ok(i.power(k)),
        }
    }

    /// `{a : h(a) ∈ self}` for an ideal of `h`'s codomain.
    pub fn contract(&self, h: &RingHom) -> Result<Ideal> {
        if h.codomain() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let dom = h.domain();
        let mut s = BitSet::new(dom.order());
        for a in dom.elements() {
            if self.contains(h.apply(a)) {
                s.insert(a as usize);
            }
        }
        Ok(Ideal::from_ideal_set(dom, s))
    }

    /// The ideal generated by `h(self)` in the codomain.
    pub fn extend(&self, h: &RingHom) -> Result<Ideal> {
        if h.domain() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Code> = self.gens.iter().map(|&g| h.apply(g)).collect();
        let span = Ideal::span(h.codomain(), &images);
        Ok(Ideal::from_ideal_set(h.codomain(), span.elems))
    }

    pub fn transfer(kind: Transfer, h: &RingHom, i: &Ideal) -> Result<Ideal> {
        match kind {
            Transfer::Contract => i.contract(h),
            Transfer::Extend => i.extend(h),
        }
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let r = &self.ring;
        let outside: Vec<Code> = r.elements().filter(|&x| !self.contains(x)).collect();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !self.contains(r.mul(a, b))))
    }

    /// R/I is a field: every element outside I is invertible modulo I.
    pub fn is_maximal(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let r = &self.ring;
        r.elements().filter(|&x| !self.contains(x)).all(|x| {
            r.elements()
                .any(|y| self.contains(r.sub(r.mul(x, y), r.one())))
        })
    }

    /// Contains a regular element; see [`REGULAR_IS_UNIT_NOTE`].
    pub fn is_regular(&self) -> bool {
        self.iter().any(|x| self.ring.is_regular(x))
    }

    pub fn radical(&self) -> Ideal {
        let r = &self.ring;
        let n = r.order() as u64;
        let mut s = BitSet::new(r.order());
        for x in r.elements() {
            let mut p = x;
            let mut hit = self.contains(p);
            let mut k = 1;
            while !hit && k < n {
                p = r.mul(p, x);
                hit = self.contains(p);
                k += 1;
            }
            if hit {
                s.insert(x as usize);
            }
        }
        Ideal::from_ideal_set(r, s)
    }

    pub fn predicates(&self) -> IdealPredicates {
        let is_prime = self.is_prime();
        let is_maximal = self.is_maximal();
        debug_assert_eq!(is_prime, is_maximal, "finite rings: prime <=> maximal");
        IdealPredicates {
            is_proper: self.is_proper(),
            is_prime,
            is_maximal,
            is_regular: self.is_regular(),
            regular_note: REGULAR_IS_UNIT_NOTE,
            radical: self.radical(),
        }
    }

    pub fn quotient_ring(&self) -> Result<Ring> {
        Ring::quotient(self)
    }

    /// `(g1, g2, ...)` using the ring's element formatting.
    pub fn display(&self) -> String {
        let gens: Vec<String> = if self.gens.is_empty() {
            vec!["0".into()]
        } else {
            self.gens
                .iter()
                .map(|&g| self.ring.format_elem(g))
                .collect()
        };
        format!("({})", gens.join(","))
    }
}

/// The prime spectrum, sorted by element list.
///
/// Primes of a finite ring are maximal and correspond to the primitive
/// idempotents e of R/J (J the Jacobson radical); the prime attached to e is
/// the kernel of `x ↦ x·e` modulo J.
pub fn enumerate_spec(ring: &Ring) -> Vec<Ideal> {
    let n = ring.order();
    let jac = ring.jacobson();
    let mut rep_of = vec![Code::MAX; n];
    let mut reps = Vec::new();
    for x in ring.elements() {
        if rep_of[x as usize] != Code::MAX {
            continue;
        }
        reps.push(x);
        for j in jac.iter() {
            rep_of[ring.add(x, j) as usize] = x;
        }
    }
    let reduce = |x: Code| rep_of[x as usize];
    let idempotents: Vec<Code> = reps
        .iter()
        .copied()
        .filter(|&e| !jac.contains(e) && reduce(ring.mul(e, e)) == e)
        .collect();
    let primitive = idempotents.iter().copied().filter(|&e| {
        !idempotents
            .iter()
            .any(|&f| f != e && reduce(ring.mul(f, e)) == f)
    });
    let mut primes: Vec<Ideal> = primitive
        .map(|e| {
            let mut s = BitSet::new(n);
            for x in ring.elements() {
                if jac.contains(ring.mul(x, e)) {
                    s.insert(x as usize);
                }
            }
            Ideal::from_ideal_set(ring, s)
        })
        .collect();
    primes.sort();
    primes.dedup();
    primes
}

/// `V(I)`: the members of `spec` containing `ideal`.
pub fn primes_containing(spec: &[Ideal], ideal: &Ideal) -> Vec<Ideal> {
    spec.iter()
        .filter(|p| ideal.is_subset(p))
        .cloned()
        .collect()
}

/// Every ideal of the ring, by closing principal ideals under sums.
pub fn all_ideals(ring: &Ring) -> Vec<Ideal> {
    let lattice = crate::lattice::IdealLattice::new(ring);
    lattice
        .ideals()
        .iter()
        .map(|s| Ideal::from_ideal_set(ring, s.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Naive closure: add r·g for all r, then pairwise sums, to a fixpoint.
    fn closure_oracle(ring: &Ring, gens: &[Code]) -> Vec<Code> {
        let mut set: HashSet<Code> = HashSet::from([0]);
        set.extend(gens.iter().copied());
        loop {
            let mut next = set.clone();
            for &a in &set {
                for r in ring.elements() {
                    next.insert(ring.mul(r, a));
                }
                for &b in &set {
                    next.insert(ring.add(a, b));
                }
            }
            if next.len() == set.len() {
                let mut v: Vec<Code> = set.into_iter().collect();
                v.sort_unstable();
                return v;
            }
            set = next;
        }
    }

    #[test]
    fn span_examples() {
        let z12 = Ring::zmod(12).unwrap();
        assert_eq!(Ideal::span(&z12, &[8]).elements(), vec![0, 4, 8]);
        assert_eq!(closure_oracle(&z12, &[8]), vec![0, 4, 8]);
        assert_eq!(Ideal::span(&z12, &[]).elements(), vec![0]);
        assert_eq!(Ideal::span(&z12, &[5]).len(), 12);
    }

    #[test]
    fn span_matches_closure_oracle() {
        let f2 = Ring::zmod(2).unwrap();
        let a = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let b = Ring::poly_quot(&a, "y", &[0, 0, 1]).unwrap();
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(
                    Ideal::span(&b, &[x, y]).elements(),
                    closure_oracle(&b, &[x, y])
                );
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let z12 = Ring::zmod(12).unwrap();
        let i4 = Ideal::span(&z12, &[4]);
        let i6 = Ideal::span(&z12, &[6]);
        assert_eq!(i4.sum(&i6).unwrap().elements(), vec![0, 2, 4, 6, 8, 10]);
        // scan oracle for {x : 6x ≡ 0 (mod 12)}
        let scan: Vec<Code> = (0..12).filter(|x| 6 * x % 12 == 0).collect();
        assert_eq!(i6.annihilator().elements(), scan);
        assert_eq!(scan, vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(
            Ideal::apply(IdealOp::Intersect, &i4, Some(&i6))
                .unwrap()
                .elements(),
            vec![0]
        );
        assert_eq!(i6.power(2).elements(), vec![0]);
        assert_eq!(i6.colon(&Ideal::unit(&z12)).unwrap(), i6);
        assert!(Ideal::unit(&z12).annihilator().is_zero());
    }

    #[test]
    fn square_of_maximal_ideal_in_f2xy() {
        let f2 = Ring::zmod(2).unwrap();
        let a = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let b = Ring::poly_quot(&a, "y", &[0, 0, 1]).unwrap();
        let (x, y) = (2, 4);
        let xy = b.mul(x, y);
        assert_eq!(xy, 8);
        let m = Ideal::span(&b, &[x, y]);
        let sq = m.power(2);
        assert_eq!(sq.len(), 2);
        assert_eq!(sq, Ideal::span(&b, &[xy]));
        assert_eq!(
            closure_oracle(&b, &[b.mul(x, x), xy, b.mul(y, y)]),
            vec![0, 8]
        );
    }

    #[test]
    fn predicates_in_z12() {
        let z12 = Ring::zmod(12).unwrap();
        let p2 = Ideal::span(&z12, &[2]).predicates();
        assert!(p2.is_prime && p2.is_maximal && p2.is_proper && !p2.is_regular);
        let i4 = Ideal::span(&z12, &[4]);
        assert!(!i4.is_prime());
        let radical_scan: Vec<Code> = (0..12u32)
            .filter(|&x| (1..=12).any(|k| z12.pow(x, k).is_multiple_of(4)))
            .collect();
        assert_eq!(i4.radical().elements(), radical_scan);
        assert_eq!(i4.radical(), Ideal::span(&z12, &[2]));
        assert!(Ideal::unit(&z12).is_regular());
    }

    #[test]
    fn spec_examples() {
        let z12 = Ring::zmod(12).unwrap();
        let spec = enumerate_spec(&z12);
        assert_eq!(spec, vec![Ideal::span(&z12, &[2]), Ideal::span(&z12, &[3])]);

        let f2 = Ring::zmod(2).unwrap();
        let d = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        assert_eq!(enumerate_spec(&d), vec![Ideal::span(&d, &[2])]);

        let (r1, r2) = (Ring::zmod(6).unwrap(), Ring::zmod(10).unwrap());
        let p = Ring::product(&r1, &r2).unwrap();
        let spec = enumerate_spec(&p);
        assert_eq!(spec.len(), 4);
        let expected = [
            Ideal::span(&p, &[p.pair(2, 0), p.pair(0, 1)]),
            Ideal::span(&p, &[p.pair(3, 0), p.pair(0, 1)]),
            Ideal::span(&p, &[p.pair(1, 0), p.pair(0, 2)]),
            Ideal::span(&p, &[p.pair(1, 0), p.pair(0, 5)]),
        ];
        for e in &expected {
            assert!(e.is_prime());
            assert!(spec.contains(e));
        }
        assert!(enumerate_spec(&Ring::zmod(1).unwrap()).is_empty());
    }

    #[test]
    fn transfer_examples() {
        let z12 = Ring::zmod(12).unwrap();
        let z6 = Ring::zmod(6).unwrap();
        let h = RingHom::canonical(&z12, &z6).unwrap();
        let two = Ideal::span(&z6, &[2]);
        assert_eq!(two.contract(&h).unwrap(), Ideal::span(&z12, &[2]));
        let four = Ideal::span(&z12, &[4]);
        assert_eq!(
            Ideal::transfer(Transfer::Extend, &h, &four).unwrap(),
            Ideal::span(&z6, &[2])
        );
        let id = RingHom::identity(&z12);
        assert!(Ideal::zero(&z12).contract(&id).unwrap().is_zero());
        assert_eq!(two.extend(&h), Err(Error::RingMismatch));
    }

    #[test]
    fn from_set_rejects_non_ideals() {
        let z12 = Ring::zmod(12).unwrap();
        assert!(Ideal::from_set(&z12, BitSet::from_iter_with_len(12, [0, 4])).is_err());
        assert!(Ideal::from_set(&z12, BitSet::from_iter_with_len(12, [0, 4, 8])).is_ok());
    }
}
