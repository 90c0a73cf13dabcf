//! Finite commutative rings with a canonical integer encoding of elements.
//!
//! Every ring has elements `0..order`, the zero element is always code 0.
//! Arithmetic goes through cached operation tables when the order is at most
//! [`TABLE_CAP`], and through the structural recipe otherwise.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;

pub type Code = u32;

pub const DEFAULT_MAX_ORDER: usize = 4096;
pub const TABLE_CAP: usize = 4096;

const NO_CODE: Code = Code::MAX;

fn max_order_cell() -> &'static AtomicUsize {
    static CELL: OnceLock<AtomicUsize> = OnceLock::new();
    CELL.get_or_init(|| {
        let cap = std::env::var("BIAMALG_MAX_ORDER")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_MAX_ORDER);
        AtomicUsize::new(cap)
    })
}

/// Largest ring order any constructor accepts. Initialized from
/// `BIAMALG_MAX_ORDER` when set.
pub fn max_order() -> usize {
    max_order_cell().load(Ordering::Relaxed)
}

pub fn set_max_order(cap: usize) {
    max_order_cell().store(cap.max(1), Ordering::Relaxed);
}

/// The structural recipe a ring was built from.
#[derive(Clone)]
pub enum RingDescriptor {
    Zmod(u32),
    Galois {
        p: u32,
        k: u32,
    },
    PolyQuot {
        base: Ring,
        var: String,
        /// Monic modulus, constant term first, given as base-ring codes.
        modulus: Vec<Code>,
    },
    Product(Ring, Ring),
    Quotient {
        parent: Ring,
        ideal: Ideal,
    },
    Subring {
        parent: Ring,
        elements: Vec<Code>,
    },
}

enum Repr {
    Zmod(u32),
    Poly {
        base: Ring,
        modulus: Vec<Code>,
        degree: usize,
    },
    Product {
        left: Ring,
        right: Ring,
    },
    Quotient {
        parent: Ring,
        reps: Vec<Code>,
        coset_of: Vec<Code>,
    },
    Subring {
        parent: Ring,
        elements: Vec<Code>,
        index: Vec<Code>,
    },
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// Element-level scans shared by the invariant computations.
pub(crate) struct Scans {
    pub units: BitSet,
    pub zero_divisors: BitSet,
    pub nilpotents: BitSet,
    pub inverse: Vec<Code>,
}

struct RingInner {
    id: u64,
    descriptor: RingDescriptor,
    order: usize,
    one: Code,
    repr: Repr,
    tables: Option<Tables>,
    scans: OnceLock<Scans>,
}

/// An immutable finite commutative ring. Cloning is cheap (shared handle);
/// two handles denote the same ring only if they come from the same
/// construction.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

fn next_id() -> u64 {
    static NEXT: AtomicU64 = AtomicU64::new(1);
    NEXT.fetch_add(1, Ordering::Relaxed)
}

fn check_cap(order: usize) -> Result<()> {
    let cap = max_order();
    if order > cap {
        Err(Error::OrderCap { order, cap })
    } else {
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Some((p, k))` when `q = p^k` with `p` prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

// Dense polynomial helpers over Z/p, used only to find the
// irreducible moduli for GF(p^k).
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = (1..p).find(|x| x * b[db] % p == 1).expect("unit lead");
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn irreducible_mod_p(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        // every monic divisor candidate of degree d
        for low in 0..p.pow(d as u32) {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                cand.push(x % p);
                x /= p;
            }
            cand.push(1);
            if poly_rem_mod_p(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `k` over Z/p, in the
/// order of the code of its lower coefficients.
pub(crate) fn first_irreducible(p: u32, k: u32) -> Vec<u32> {
    for low in 0..p.pow(k) {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut x = low;
        for _ in 0..k {
            poly.push(x % p);
            x /= p;
        }
        poly.push(1);
        if irreducible_mod_p(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Ring {
    pub fn construct(descriptor: RingDescriptor) -> Result<Ring> {
        match descriptor {
            RingDescriptor::Zmod(n) => Ring::zmod(n),
            RingDescriptor::Galois { p, k } => {
                let q = p
                    .checked_pow(k)
                    .ok_or_else(|| Error::Malformed("GF order overflows".into()))?;
                if !is_prime(p) {
                    return Err(Error::Malformed(format!("GF({q}): {p} is not prime")));
                }
                Ring::galois(q)
            }
            RingDescriptor::PolyQuot { base, var, modulus } => {
                Ring::poly_quot(&base, &var, &modulus)
            }
            RingDescriptor::Product(a, b) => Ring::product(&a, &b),
            RingDescriptor::Quotient { parent, ideal } => {
                if ideal.ring() != &parent {
                    return Err(Error::RingMismatch);
                }
                Ring::quotient(&ideal)
            }
            RingDescriptor::Subring { parent, elements } => Ring::subring(&parent, &elements),
        }
    }

    pub fn zmod(n: u32) -> Result<Ring> {
        if n == 0 {
            return Err(Error::Malformed("Z/0 is infinite".into()));
        }
        check_cap(n as usize)?;
        Ring::finish(RingDescriptor::Zmod(n), Repr::Zmod(n), n as usize)
    }

    /// GF(q) for a prime power `q`; for `q = p^k`, `k >= 2`, this is
    /// Z/p[t]/(m) with `m` the first monic irreducible of degree `k`.
    pub fn galois(q: u32) -> Result<Ring> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::Malformed(format!("GF({q}): not a prime power")))?;
        check_cap(q as usize)?;
        if k == 1 {
            return Ring::finish(RingDescriptor::Galois { p, k }, Repr::Zmod(p), p as usize);
        }
        let base = Ring::zmod(p)?;
        let modulus = first_irreducible(p, k);
        Ring::finish(
            RingDescriptor::Galois { p, k },
            Repr::Poly {
                base,
                modulus,
                degree: k as usize,
            },
            q as usize,
        )
    }

    pub fn poly_quot(base: &Ring, var: &str, modulus: &[Code]) -> Result<Ring> {
        let mut modulus: Vec<Code> = modulus.to_vec();
        while modulus.len() > 1 && modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::Malformed("modulus must have degree >= 1".into()));
        }
        for &c in &modulus {
            base.check_code(c)?;
        }
        let lead = *modulus.last().unwrap();
        if lead != base.one() {
            return Err(Error::NonMonic(base.format_elem(lead)));
        }
        let degree = modulus.len() - 1;
        let order = (base.order() as u128).pow(degree as u32);
        if order > max_order() as u128 {
            return Err(Error::OrderCap {
                order: order.min(usize::MAX as u128) as usize,
                cap: max_order(),
            });
        }
        Ring::finish(
            RingDescriptor::PolyQuot {
                base: base.clone(),
                var: var.to_string(),
                modulus: modulus.clone(),
            },
            Repr::Poly {
                base: base.clone(),
                modulus,
                degree,
            },
            order as usize,
        )
    }

    pub fn product(left: &Ring, right: &Ring) -> Result<Ring> {
        let order = left
            .order()
            .checked_mul(right.order())
            .ok_or(Error::OrderCap {
                order: usize::MAX,
                cap: max_order(),
            })?;
        check_cap(order)?;
        Ring::finish(
            RingDescriptor::Product(left.clone(), right.clone()),
            Repr::Product {
                left: left.clone(),
                right: right.clone(),
            },
            order,
        )
    }

    /// R/I, with each coset represented by its minimum code; quotient codes
    /// follow the order of those representatives.
    pub fn quotient(ideal: &Ideal) -> Result<Ring> {
        let parent = ideal.ring().clone();
        let n = parent.order();
        let mut coset_of = vec![NO_CODE; n];
        let mut reps = Vec::new();
        for x in 0..n as Code {
            if coset_of[x as usize] != NO_CODE {
                continue;
            }
            let c = reps.len() as Code;
            reps.push(x);
            for i in ideal.iter() {
                coset_of[parent.add(x, i) as usize] = c;
            }
        }
        let order = reps.len();
        Ring::finish(
            RingDescriptor::Quotient {
                parent: parent.clone(),
                ideal: ideal.clone(),
            },
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            },
            order,
        )
    }

    /// The subring on `elements` (any order, duplicates ignored); fails when
    /// the set is not closed or misses 0 or 1.
    pub fn subring(parent: &Ring, elements: &[Code]) -> Result<Ring> {
        let mut elems: Vec<Code> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        for &e in &elems {
            parent.check_code(e)?;
        }
        let mut index = vec![NO_CODE; parent.order()];
        for (i, &e) in elems.iter().enumerate() {
            index[e as usize] = i as Code;
        }
        if index[0] == NO_CODE || index[parent.one() as usize] == NO_CODE {
            return Err(Error::Malformed("subring must contain 0 and 1".into()));
        }
        for &a in &elems {
            if index[parent.neg(a) as usize] == NO_CODE {
                return Err(Error::Malformed("subring not closed under negation".into()));
            }
            for &b in &elems {
                if index[parent.add(a, b) as usize] == NO_CODE
                    || index[parent.mul(a, b) as usize] == NO_CODE
                {
                    return Err(Error::Malformed("subring not closed under + and *".into()));
                }
            }
        }
        let order = elems.len();
        Ring::finish(
            RingDescriptor::Subring {
                parent: parent.clone(),
                elements: elems.clone(),
            },
            Repr::Subring {
                parent: parent.clone(),
                elements: elems,
                index,
            },
            order,
        )
    }

    fn finish(descriptor: RingDescriptor, repr: Repr, order: usize) -> Result<Ring> {
        check_cap(order)?;
        let one = match &repr {
            Repr::Zmod(n) => 1 % n,
            Repr::Poly { base, .. } => base.one(),
            Repr::Product { left, right } => left.one() * right.order() as Code + right.one(),
            Repr::Quotient {
                parent, coset_of, ..
            } => coset_of[parent.one() as usize],
            Repr::Subring { parent, index, .. } => index[parent.one() as usize],
        };
        let mut inner = RingInner {
            id: next_id(),
            descriptor,
            order,
            one,
            repr,
            tables: None,
            scans: OnceLock::new(),
        };
        if order <= TABLE_CAP {
            let n = order;
            let mut add = vec![0u16; n * n];
            let mut mul = vec![0u16; n * n];
            let mut neg = vec![0u16; n];
            for a in 0..n {
                neg[a] = inner.repr_neg(a as Code) as u16;
                for b in 0..n {
                    add[a * n + b] = inner.repr_add(a as Code, b as Code) as u16;
                    mul[a * n + b] = inner.repr_mul(a as Code, b as Code) as u16;
                }
            }
            inner.tables = Some(Tables { add, mul, neg });
        }
        let ring = Ring(Arc::new(inner));
        ring.check_identities()?;
        Ok(ring)
    }

    fn check_identities(&self) -> Result<()> {
        let (zero, one) = (self.zero(), self.one());
        if self.order() > 1 && zero == one {
            return Err(Error::Internal("0 = 1 in a nonzero ring".into()));
        }
        for x in self.elements() {
            if self.add(x, zero) != x || self.mul(x, one) != x {
                return Err(Error::Internal(format!(
                    "identity law fails at {}",
                    self.format_elem(x)
                )));
            }
            if self.add(x, self.neg(x)) != zero {
                return Err(Error::Internal("additive inverse fails".into()));
            }
        }
        Ok(())
    }

    /// Exhaustive verification of the commutative ring axioms, O(order^3).
    pub fn verify_axioms(&self) -> Result<()> {
        self.check_identities()?;
        let els: Vec<Code> = self.elements().collect();
        for &a in &els {
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Internal(format!("commutativity fails at ({a},{b})")));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return Err(Error::Internal(format!(
                            "associativity/distributivity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.descriptor
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn zero(&self) -> Code {
        0
    }

    pub fn one(&self) -> Code {
        self.0.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Code> {
        0..self.order() as Code
    }

    pub fn check_code(&self, code: Code) -> Result<()> {
        if (code as usize) < self.order() {
            Ok(())
        } else {
            Err(Error::CodeOutOfRange {
                code,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        match &self.0.tables {
            Some(t) => t.add[a as usize * self.0.order + b as usize] as Code,
            None => self.0.repr_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        match &self.0.tables {
            Some(t) => t.mul[a as usize * self.0.order + b as usize] as Code,
            None => self.0.repr_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Code) -> Code {
        match &self.0.tables {
            Some(t) => t.neg[a as usize] as Code,
            None => self.0.repr_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Code, mut e: u64) -> Code {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k * 1`, the image of the integer `k` (possibly negative).
    pub fn from_int(&self, k: i64) -> Code {
        let n = self.char_() as i64;
        let m = k.rem_euclid(n.max(1));
        let mut acc = self.zero();
        let mut base = self.one();
        let mut e = m as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            e >>= 1;
        }
        acc
    }

    /// Additive order of 1.
    pub fn char_(&self) -> u64 {
        let mut x = self.one();
        let mut k = 1u64;
        while x != self.zero() {
            x = self.add(x, self.one());
            k += 1;
        }
        k
    }

    pub fn mul_row(&self, a: Code) -> Option<&[u16]> {
        self.0.tables.as_ref().map(|t| {
            let n = self.0.order;
            &t.mul[a as usize * n..(a as usize + 1) * n]
        })
    }

    /// Components of a product ring.
    pub fn factors(&self) -> Option<(&Ring, &Ring)> {
        match &self.0.repr {
            Repr::Product { left, right } => Some((left, right)),
            _ => None,
        }
    }

    pub fn pair(&self, x: Code, y: Code) -> Code {
        let (_, right) = self.factors().expect("pair on a non-product ring");
        x * right.order() as Code + y
    }

    pub fn split(&self, z: Code) -> (Code, Code) {
        let (_, right) = self.factors().expect("split on a non-product ring");
        let m = right.order() as Code;
        (z / m, z % m)
    }

    /// For a quotient ring: the parent and the projection table.
    pub fn quotient_parts(&self) -> Option<(&Ring, &[Code], &[Code])> {
        match &self.0.repr {
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            } => Some((parent, reps, coset_of)),
            _ => None,
        }
    }

    /// For a subring: the parent and the sorted parent codes of the elements.
    pub fn subring_parts(&self) -> Option<(&Ring, &[Code])> {
        match &self.0.repr {
            Repr::Subring {
                parent, elements, ..
            } => Some((parent, elements)),
            _ => None,
        }
    }

    /// Index of a parent code inside this subring.
    pub fn subring_index(&self, parent_code: Code) -> Option<Code> {
        match &self.0.repr {
            Repr::Subring { index, .. } => index
                .get(parent_code as usize)
                .copied()
                .filter(|&c| c != NO_CODE),
            _ => None,
        }
    }

    pub fn element(&self, code: Code) -> Result<Element> {
        self.check_code(code)?;
        Ok(Element {
            ring: self.clone(),
            code,
        })
    }

    pub(crate) fn scans(&self) -> &Scans {
        self.0.scans.get_or_init(|| {
            let n = self.order();
            let mut units = BitSet::new(n);
            let mut zero_divisors = BitSet::new(n);
            let mut nilpotents = BitSet::new(n);
            let mut inverse = vec![NO_CODE; n];
            for x in self.elements() {
                for y in self.elements() {
                    let p = self.mul(x, y);
                    if p == self.one() && inverse[x as usize] == NO_CODE {
                        inverse[x as usize] = y;
                        units.insert(x as usize);
                    }
                    if p == self.zero() && y != self.zero() {
                        zero_divisors.insert(x as usize);
                    }
                }
                if self.pow(x, n as u64) == self.zero() {
                    nilpotents.insert(x as usize);
                }
            }
            Scans {
                units,
                zero_divisors,
                nilpotents,
                inverse,
            }
        })
    }

    pub fn is_unit(&self, x: Code) -> bool {
        self.scans().units.contains(x as usize)
    }

    pub fn is_zero_divisor(&self, x: Code) -> bool {
        self.scans().zero_divisors.contains(x as usize)
    }

    /// Not a zero-divisor.
    pub fn is_regular(&self, x: Code) -> bool {
        !self.is_zero_divisor(x)
    }

    pub fn is_nilpotent(&self, x: Code) -> bool {
        self.scans().nilpotents.contains(x as usize)
    }

    pub fn inverse(&self, x: Code) -> Option<Code> {
        let inv = self.scans().inverse[x as usize];
        (inv != NO_CODE).then_some(inv)
    }

    pub fn units(&self) -> &BitSet {
        &self.scans().units
    }

    pub fn regular_set(&self) -> BitSet {
        self.scans().zero_divisors.complement()
    }

    pub fn classify(&self, x: Code) -> ElementClass {
        ElementClass {
            unit: self.is_unit(x),
            zero_divisor: self.is_zero_divisor(x),
            nilpotent: self.is_nilpotent(x),
            regular: self.is_regular(x),
        }
    }

    pub fn idempotents(&self) -> Vec<Code> {
        self.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Every element is a unit (and the ring is nonzero).
    pub fn is_field(&self) -> bool {
        self.order() > 1 && self.units().count() == self.order() - 1
    }

    pub fn jacobson(&self) -> Ideal {
        let n = self.order();
        let mut set = BitSet::new(n);
        for x in self.elements() {
            let all = self
                .elements()
                .all(|r| self.is_unit(self.add(self.one(), self.mul(x, r))));
            if all {
                set.insert(x as usize);
            }
        }
        Ideal::from_set(self, set).expect("Jacobson radical is an ideal")
    }

    pub fn nilradical(&self) -> Ideal {
        Ideal::from_set(self, self.scans().nilpotents.clone()).expect("nilradical is an ideal")
    }

    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        crate::ideal::enumerate_spec(self)
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideals().len() == 1
    }

    pub fn invariants(&self) -> RingInvariants {
        let units: Vec<Code> = self.units().iter().map(|x| x as Code).collect();
        let regular: Vec<Code> = self.regular_set().iter().map(|x| x as Code).collect();
        let maximal_ideals = self.maximal_ideals();
        let is_local = maximal_ideals.len() == 1;
        RingInvariants {
            regular_equals_units: units == regular,
            units,
            regular,
            nilradical: self.nilradical(),
            jacobson: self.jacobson(),
            idempotents: self.idempotents(),
            is_field: self.is_field(),
            is_local,
            maximal_ideal: if is_local {
                maximal_ideals.first().cloned()
            } else {
                None
            },
            maximal_ideals,
        }
    }

    pub fn format_elem(&self, code: Code) -> String {
        match &self.0.repr {
            Repr::Zmod(_) => code.to_string(),
            Repr::Poly { base, degree, .. } => {
                let var = match &self.0.descriptor {
                    RingDescriptor::PolyQuot { var, .. } => var.as_str(),
                    _ => "t",
                };
                let digits = self.0.decode_poly(code, base, *degree);
                let mut terms = Vec::new();
                for (i, &c) in digits.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => var.to_string(),
                        _ => format!("{var}^{i}"),
                    };
                    let coef = base.format_elem(c);
                    let coef = if coef.contains(['+', ',', '-']) {
                        format!("({coef})")
                    } else {
                        coef
                    };
                    terms.push(match (i, c == base.one()) {
                        (0, _) => coef,
                        (_, true) => mono,
                        _ => format!("{coef}{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Repr::Product { left, right } => {
                let (a, b) = self.split(code);
                format!("({},{})", left.format_elem(a), right.format_elem(b))
            }
            Repr::Quotient { parent, reps, .. } => {
                format!("[{}]", parent.format_elem(reps[code as usize]))
            }
            Repr::Subring {
                parent, elements, ..
            } => parent.format_elem(elements[code as usize]),
        }
    }
}

impl RingInner {
    fn decode_poly(&self, code: Code, base: &Ring, degree: usize) -> Vec<Code> {
        let m = base.order() as Code;
        let mut x = code;
        (0..degree)
            .map(|_| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    }

    fn encode_poly(digits: &[Code], base: &Ring) -> Code {
        let m = base.order() as Code;
        digits.iter().rev().fold(0, |acc, &d| acc * m + d)
    }

    fn repr_add(&self, a: Code, b: Code) -> Code {
        match &self.repr {
            Repr::Zmod(n) => ((a as u64 + b as u64) % *n as u64) as Code,
            Repr::Poly { base, degree, .. } => {
                let da = self.decode_poly(a, base, *degree);
                let db = self.decode_poly(b, base, *degree);
                let sum: Vec<Code> = da.iter().zip(&db).map(|(&x, &y)| base.add(x, y)).collect();
                Self::encode_poly(&sum, base)
            }
            Repr::Product { left, right } => {
                let m = right.order() as Code;
                left.add(a / m, b / m) * m + right.add(a % m, b % m)
            }
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.add(reps[a as usize], reps[b as usize]) as usize],
            Repr::Subring {
                parent,
                elements,
                index,
            } => index[parent.add(elements[a as usize], elements[b as usize]) as usize],
        }
    }

    fn repr_mul(&self, a: Code, b: Code) -> Code {
        match &self.repr {
            Repr::Zmod(n) => ((a as u64 * b as u64) % *n as u64) as Code,
            Repr::Poly {
                base,
                modulus,
                degree,
            } => {
                let d = *degree;
                let da = self.decode_poly(a, base, d);
                let db = self.decode_poly(b, base, d);
                let mut prod = vec![0 as Code; 2 * d - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                    }
                }
                // x^d = -(m_0 + ... + m_{d-1} x^{d-1})
                for k in (d..2 * d - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    for (i, &mi) in modulus.iter().take(d).enumerate() {
                        prod[k - d + i] = base.sub(prod[k - d + i], base.mul(c, mi));
                    }
                    prod[k] = 0;
                }
                Self::encode_poly(&prod[..d], base)
            }
            Repr::Product { left, right } => {
                let m = right.order() as Code;
                left.mul(a / m, b / m) * m + right.mul(a % m, b % m)
            }
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul(reps[a as usize], reps[b as usize]) as usize],
            Repr::Subring {
                parent,
                elements,
                index,
            } => index[parent.mul(elements[a as usize], elements[b as usize]) as usize],
        }
    }

    fn repr_neg(&self, a: Code) -> Code {
        match &self.repr {
            Repr::Zmod(n) => (*n - a % *n) % *n,
            Repr::Poly { base, degree, .. } => {
                let da = self.decode_poly(a, base, *degree);
                let neg: Vec<Code> = da.iter().map(|&x| base.neg(x)).collect();
                Self::encode_poly(&neg, base)
            }
            Repr::Product { left, right } => {
                let m = right.order() as Code;
                left.neg(a / m) * m + right.neg(a % m)
            }
            Repr::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.neg(reps[a as usize]) as usize],
            Repr::Subring {
                parent,
                elements,
                index,
            } => index[parent.neg(elements[a as usize]) as usize],
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zmod(n) => write!(f, "Z/{n}"),
            RingDescriptor::Galois { p, k } => write!(f, "GF({})", p.pow(*k)),
            RingDescriptor::PolyQuot { base, var, modulus } => {
                let terms: Vec<String> = modulus
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| {
                        let coef = base.format_elem(c);
                        match i {
                            0 => coef,
                            1 if c == base.one() => var.clone(),
                            1 => format!("{coef}{var}"),
                            _ if c == base.one() => format!("{var}^{i}"),
                            _ => format!("{coef}{var}^{i}"),
                        }
                    })
                    .collect();
                write!(f, "({})[{var}]/({})", base, terms.join("+"))
            }
            RingDescriptor::Product(a, b) => write!(f, "({a} * {b})"),
            RingDescriptor::Quotient { parent, ideal } => {
                let gens: Vec<String> = ideal
                    .generators()
                    .iter()
                    .map(|&g| parent.format_elem(g))
                    .collect();
                write!(f, "{parent}/({})", gens.join(","))
            }
            RingDescriptor::Subring { parent, elements } => {
                write!(f, "{parent}|sub[{}]", elements.len())
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, order {})", self.descriptor(), self.order())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementClass {
    pub unit: bool,
    pub zero_divisor: bool,
    pub nilpotent: bool,
    pub regular: bool,
}

#[derive(Clone, Debug)]
pub struct RingInvariants {
    pub units: Vec<Code>,
    pub regular: Vec<Code>,
    /// Cross-check of two independent scans; always true for finite rings.
    pub regular_equals_units: bool,
    pub nilradical: Ideal,
    pub jacobson: Ideal,
    pub idempotents: Vec<Code>,
    pub maximal_ideals: Vec<Ideal>,
    pub is_local: bool,
    pub is_field: bool,
    pub maximal_ideal: Option<Ideal>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Sub,
    Pow,
}

/// A ring element carrying its ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    ring: Ring,
    code: Code,
}

impl Element {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn code(&self) -> Code {
        self.code
    }

    fn same_ring(&self, other: &Element) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn with(&self, code: Code) -> Element {
        Element {
            ring: self.ring.clone(),
            code,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.add(self.code, other.code)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.mul(self.code, other.code)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.sub(self.code, other.code)))
    }

    pub fn neg(&self) -> Element {
        self.with(self.ring.neg(self.code))
    }

    pub fn pow(&self, e: u64) -> Element {
        self.with(self.ring.pow(self.code, e))
    }

    /// Uniform entry point: binary ops need `y`, `Pow` reads the exponent
    /// from `y`'s code.
    pub fn apply(op: ArithOp, x: &Element, y: Option<&Element>) -> Result<Element> {
        let need = || y.ok_or_else(|| Error::Malformed(format!("{op:?} needs two operands")));
        match op {
            ArithOp::Add => x.add(need()?),
            ArithOp::Mul => x.mul(need()?),
            ArithOp::Sub => x.sub(need()?),
            ArithOp::Neg => Ok(x.neg()),
            ArithOp::Pow => Ok(x.pow(need()?.code as u64)),
        }
    }

    pub fn classify(&self) -> ElementClass {
        self.ring.classify(self.code)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_elem(self.code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2x_mod_x2() -> Ring {
        let f2 = Ring::zmod(2).unwrap();
        Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap()
    }

    #[test]
    fn zmod_basics() {
        let r = Ring::zmod(12).unwrap();
        assert_eq!((r.order(), r.zero(), r.one()), (12, 0, 1));
        assert_eq!(r.mul(4, 6), 0);
        assert_eq!(r.pow(5, 2), 1);
        assert_eq!(r.neg(5), 7);
    }

    #[test]
    fn gf4_is_a_field_with_t_squared_t_plus_one() {
        let f2 = Ring::zmod(2).unwrap();
        let gf4 = Ring::poly_quot(&f2, "t", &[1, 1, 1]).unwrap();
        assert_eq!(gf4.order(), 4);
        assert!(gf4.is_field());
        let t = 2;
        assert_eq!(gf4.mul(t, t), 3);
        assert_eq!(gf4.format_elem(3), "t+1");
        let g = Ring::galois(4).unwrap();
        assert_eq!(g.mul(2, 2), 3);
    }

    #[test]
    fn galois_fields_are_fields() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25, 27] {
            let r = Ring::galois(q).unwrap();
            assert_eq!(r.order(), q as usize);
            assert!(r.is_field(), "GF({q})");
        }
        assert!(Ring::galois(6).is_err());
        assert_eq!(first_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn non_monic_modulus_rejected() {
        let z4 = Ring::zmod(4).unwrap();
        assert!(matches!(
            Ring::poly_quot(&z4, "x", &[1, 0, 2]),
            Err(Error::NonMonic(_))
        ));
    }

    #[test]
    fn order_cap_enforced() {
        let z64 = Ring::zmod(64).unwrap();
        assert!(matches!(
            Ring::poly_quot(&z64, "x", &[0, 0, 0, 1]),
            Err(Error::OrderCap { .. })
        ));
        assert!(Ring::zmod(5000).is_err());
    }

    #[test]
    fn quotient_of_z12_by_six_is_z6() {
        let r = Ring::zmod(12).unwrap();
        let i = Ideal::span(&r, &[6]);
        let q = Ring::quotient(&i).unwrap();
        assert_eq!(q.order(), 6);
        let z6 = Ring::zmod(6).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.add(a, b), z6.add(a, b));
                assert_eq!(q.mul(a, b), z6.mul(a, b));
            }
        }
    }

    #[test]
    fn classification() {
        let r = Ring::zmod(12).unwrap();
        let c5 = r.classify(5);
        assert!(c5.unit && c5.regular && !c5.zero_divisor);
        let c6 = r.classify(6);
        assert!(c6.zero_divisor && c6.nilpotent && !c6.regular);
        let d = f2x_mod_x2();
        let cx = d.classify(2);
        assert!(cx.zero_divisor && cx.nilpotent && !cx.regular);
        assert!(r.classify(0).zero_divisor);
    }

    #[test]
    fn invariants_of_z12() {
        let r = Ring::zmod(12).unwrap();
        let inv = r.invariants();
        assert_eq!(inv.units, vec![1, 5, 7, 11]);
        assert_eq!(inv.nilradical.elements(), vec![0, 6]);
        assert_eq!(inv.jacobson.elements(), vec![0, 6]);
        assert_eq!(inv.idempotents, vec![0, 1, 4, 9]);
        assert!(!inv.is_local);
        assert!(inv.regular_equals_units);
    }

    #[test]
    fn z8_is_local_and_gf4_is_a_field() {
        let inv = Ring::zmod(8).unwrap().invariants();
        assert!(inv.is_local);
        assert_eq!(inv.maximal_ideal.unwrap().elements(), vec![0, 2, 4, 6]);
        let gf4 = Ring::galois(4).unwrap().invariants();
        assert!(gf4.is_field && gf4.is_local);
        assert_eq!(gf4.jacobson.elements(), vec![0]);
    }

    #[test]
    fn axioms_hold_for_composite_constructions() {
        let d = f2x_mod_x2();
        let p = Ring::product(&Ring::zmod(3).unwrap(), &d).unwrap();
        p.verify_axioms().unwrap();
        let z4 = Ring::zmod(4).unwrap();
        let gr = Ring::poly_quot(&z4, "x", &[1, 1, 1]).unwrap();
        gr.verify_axioms().unwrap();
        assert!(gr.is_local());
    }

    #[test]
    fn element_ops_reject_mixed_rings() {
        let a = Ring::zmod(4).unwrap();
        let b = Ring::zmod(4).unwrap();
        let x = a.element(1).unwrap();
        let y = b.element(1).unwrap();
        assert_eq!(x.add(&y), Err(Error::RingMismatch));
        let two = a.element(2).unwrap();
        assert_eq!(
            Element::apply(ArithOp::Pow, &two, Some(&two))
                .unwrap()
                .code(),
            0
        );
        assert!(a.element(4).is_err());
    }

    #[test]
    fn subring_requires_closure() {
        let z12 = Ring::zmod(12).unwrap();
        assert!(Ring::subring(&z12, &[0, 1, 2]).is_err());
        let p = Ring::product(&Ring::zmod(2).unwrap(), &Ring::zmod(2).unwrap()).unwrap();
        let diag = Ring::subring(&p, &[0, 3]).unwrap();
        assert_eq!(diag.order(), 2);
        assert_eq!(diag.one(), 1);
    }

    #[test]
    fn zero_ring_is_permitted() {
        let z1 = Ring::zmod(1).unwrap();
        assert!(z1.is_zero_ring());
        assert!(!z1.is_local());
        assert!(z1.is_unit(0));
    }
}
