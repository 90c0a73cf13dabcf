//! Localization of finite rings.
//!
//! For a finite ring every element of S⁻¹R is already of the form x/1, so
//! S⁻¹R is the quotient R/K by the saturation kernel
//! K = {x : sx = 0 for some s in S}. Elements of S become units there.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::ring::{Code, Ring};

#[derive(Clone, Debug)]
pub struct MultiplicativeSet {
    ring: Ring,
    elems: BitSet,
    /// Whether the stored set was already multiplicatively closed before
    /// closure was taken.
    was_closed: bool,
}

impl MultiplicativeSet {
    /// Multiplicative closure of `{1} ∪ elems`.
    pub fn new(ring: &Ring, elems: &[Code]) -> Result<Self> {
        let mut set = BitSet::new(ring.order());
        for &x in elems {
            ring.check_code(x)?;
            set.insert(x as usize);
        }
        Ok(Self::from_set(ring, set))
    }

    pub fn from_set(ring: &Ring, mut set: BitSet) -> Self {
        let had_one = set.contains(ring.one() as usize);
        set.insert(ring.one() as usize);
        let mut was_closed = had_one;
        let mut list: Vec<Code> = set.iter().map(|x| x as Code).collect();
        let mut cursor = 0;
        while cursor < list.len() {
            let x = list[cursor];
            let mut j = 0;
            while j <= cursor {
                let p = ring.mul(x, list[j]);
                if set.insert(p as usize) {
                    list.push(p);
                    was_closed = false;
                }
                j += 1;
            }
            cursor += 1;
        }
        MultiplicativeSet {
            ring: ring.clone(),
            elems: set,
            was_closed,
        }
    }

    /// `R ∖ 𝔭` for a prime 𝔭.
    pub fn complement_of(prime: &Ideal) -> Result<Self> {
        if !prime.is_prime() {
            return Err(Error::NotPrime);
        }
        Ok(Self::from_set(prime.ring(), prime.set().complement()))
    }

    pub fn units(ring: &Ring) -> Self {
        Self::from_set(ring, ring.units().clone())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn set(&self) -> &BitSet {
        &self.elems
    }

    pub fn contains(&self, x: Code) -> bool {
        self.elems.contains(x as usize)
    }

    pub fn was_closed(&self) -> bool {
        self.was_closed
    }

    pub fn iter(&self) -> impl Iterator<Item = Code> + '_ {
        self.elems.iter().map(|x| x as Code)
    }
}

#[derive(Clone, Debug)]
pub struct Localization {
    /// S⁻¹R; equal to R itself when the saturation kernel is zero.
    pub ring: Ring,
    /// The localization map R → S⁻¹R (surjective).
    pub map: RingHom,
    pub kernel: Ideal,
}

impl Localization {
    /// Some preimage of `y` under the localization map (the smallest code).
    pub fn lift(&self, y: Code) -> Code {
        self.map
            .table()
            .iter()
            .position(|&v| v == y)
            .expect("localization map is surjective") as Code
    }
}

pub fn saturation_kernel(s: &MultiplicativeSet) -> Ideal {
    let r = s.ring();
    let mut k = BitSet::new(r.order());
    for x in r.elements() {
        if s.iter().any(|t| r.mul(t, x) == r.zero()) {
            k.insert(x as usize);
        }
    }
    Ideal::from_set(r, k).expect("saturation kernel of a multiplicative set is an ideal")
}

pub fn localize_finite(s: &MultiplicativeSet) -> Result<Localization> {
    let r = s.ring();
    let kernel = saturation_kernel(s);
    let (ring, map) = if kernel.is_zero() {
        (r.clone(), RingHom::identity(r))
    } else {
        let q = Ring::quotient(&kernel)?;
        let map = RingHom::canonical(r, &q)?;
        (q, map)
    };
    for t in s.iter() {
        if !ring.is_unit(map.apply(t)) {
            return Err(Error::Internal(format!(
                "{} does not become a unit after localizing",
                r.format_elem(t)
            )));
        }
    }
    Ok(Localization { ring, map, kernel })
}

/// Whether `h: R → T` factors through the localization: h inverts S, and
/// then h kills the saturation kernel and `h = h' ∘ λ` for a homomorphism h'.
/// Homs that do not invert S are reported as vacuously fine.
pub fn factors_through(loc: &Localization, s: &MultiplicativeSet, h: &RingHom) -> bool {
    let t = h.codomain();
    if !s.iter().all(|x| t.is_unit(h.apply(x))) {
        return true;
    }
    if !loc.kernel.iter().all(|x| h.apply(x) == t.zero()) {
        return false;
    }
    let mut table = vec![Code::MAX; loc.ring.order()];
    for x in h.domain().elements() {
        let slot = &mut table[loc.map.apply(x) as usize];
        if *slot == Code::MAX {
            *slot = h.apply(x);
        } else if *slot != h.apply(x) {
            return false;
        }
    }
    RingHom::from_table(&loc.ring, t, table).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: the saturation kernel by direct search over
    /// products s·x, with S given explicitly.
    fn kernel_oracle(n: u32, s: &[u32]) -> Vec<u32> {
        (0..n)
            .filter(|&x| s.iter().any(|&t| (t * x) % n == 0))
            .collect()
    }

    #[test]
    fn z12_at_complement_of_2() {
        let z12 = Ring::zmod(12).unwrap();
        let s = MultiplicativeSet::complement_of(&Ideal::span(&z12, &[2])).unwrap();
        let loc = localize_finite(&s).unwrap();
        assert_eq!(loc.ring.order(), 4);
        assert_eq!(loc.kernel.elements(), vec![0, 4, 8]);
        assert_eq!(kernel_oracle(12, &[1, 3, 5, 7, 9, 11]), vec![0, 4, 8]);
    }

    #[test]
    fn z12_at_complement_of_3() {
        let z12 = Ring::zmod(12).unwrap();
        let s = MultiplicativeSet::complement_of(&Ideal::span(&z12, &[3])).unwrap();
        let loc = localize_finite(&s).unwrap();
        assert_eq!(loc.ring.order(), 3);
        assert!(loc.ring.is_field());
    }

    #[test]
    fn trivial_set_gives_identity() {
        let r = Ring::zmod(10).unwrap();
        let s = MultiplicativeSet::new(&r, &[]).unwrap();
        let loc = localize_finite(&s).unwrap();
        assert_eq!(loc.ring, r);
        assert_eq!(loc.map, RingHom::identity(&r));
    }

    #[test]
    fn closure_is_taken() {
        let r = Ring::zmod(15).unwrap();
        let s = MultiplicativeSet::new(&r, &[2]).unwrap();
        assert!(!s.was_closed());
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn units_and_local_rings_localize_isomorphically() {
        for r in [Ring::zmod(12).unwrap(), Ring::zmod(8).unwrap()] {
            let loc = localize_finite(&MultiplicativeSet::units(&r)).unwrap();
            assert!(loc.map.is_bijective());
        }
        let z9 = Ring::zmod(9).unwrap();
        let m = z9.maximal_ideals().remove(0);
        let loc = localize_finite(&MultiplicativeSet::complement_of(&m).unwrap()).unwrap();
        assert!(loc.map.is_bijective());
    }

    #[test]
    fn universal_property_on_small_targets() {
        let z12 = Ring::zmod(12).unwrap();
        let s = MultiplicativeSet::complement_of(&Ideal::span(&z12, &[2])).unwrap();
        let loc = localize_finite(&s).unwrap();
        for n in 1..=12 {
            let t = Ring::zmod(n).unwrap();
            for h in RingHom::enumerate(&z12, &t) {
                assert!(factors_through(&loc, &s, &h), "Z/12 -> Z/{n}");
            }
        }
    }
}
