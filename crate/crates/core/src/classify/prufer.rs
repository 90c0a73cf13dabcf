//! Prüfer rings, invertible ideals and the regular total order property.
//!
//! Over a finite ring every regular element is a unit and the total ring of
//! fractions is the ring itself, so all three checks degenerate. They are
//! still carried out literally and every verdict records the degeneracy.

use super::{PropertyVerdict, Witness, NOTE_INVERTIBLE, NOTE_PRUFER, NOTE_REGULAR_UNITS};
use crate::bitset::BitSet;
use crate::ideal::Ideal;
use crate::lattice::IdealLattice;
use crate::localize::{localize_finite, MultiplicativeSet};
use crate::ring::{Code, Ring};

/// Generator bound for the finitely generated ideals enumerated by
/// [`is_prufer`].
pub const PRUFER_GENERATORS: usize = 3;

#[derive(Clone, Debug)]
pub struct Invertibility {
    pub verdict: PropertyVerdict,
    /// A submodule F with I·F = R, when one exists.
    pub inverse: Option<Ideal>,
}

fn set_has_regular(ring: &Ring, set: &BitSet) -> bool {
    set.iter().any(|x| ring.is_regular(x as Code))
}

/// Searches the cyclic submodules F = (q) of Q = R for I·F = R.
pub fn is_invertible(ideal: &Ideal) -> Invertibility {
    let ring = ideal.ring();
    let gens = ideal.generators();
    let found = ring.elements().find(|&q| {
        let prods: Vec<Code> = gens.iter().map(|&x| ring.mul(x, q)).collect();
        Ideal::span(ring, &prods).is_unit()
    });
    let verdict = PropertyVerdict::new("invertible", found.is_some()).with_note(NOTE_INVERTIBLE);
    match found {
        Some(q) => Invertibility {
            verdict,
            inverse: Some(Ideal::span(ring, &[q])),
        },
        None => Invertibility {
            verdict: verdict.with_witness(Witness::Ideal(gens.to_vec())),
            inverse: None,
        },
    }
}

/// Every regular ideal with at most three generators is invertible.
pub fn is_prufer(ring: &Ring) -> PropertyVerdict {
    is_prufer_with(ring, &IdealLattice::new(ring))
}

pub fn is_prufer_with(ring: &Ring, lat: &IdealLattice) -> PropertyVerdict {
    let verdict = PropertyVerdict::new("prufer", true)
        .with_note(NOTE_PRUFER)
        .with_note(NOTE_REGULAR_UNITS);
    for id in lat.generated_by_at_most(PRUFER_GENERATORS) {
        let set = lat.set(id);
        if !set_has_regular(ring, set) {
            continue;
        }
        let ideal = Ideal::from_set(ring, set.clone()).expect("lattice sets are ideals");
        if !is_invertible(&ideal).verdict.holds {
            let mut v = verdict.with_witness(Witness::Ideal(ideal.generators().to_vec()));
            v.holds = false;
            return v;
        }
    }
    verdict
}

/// Whether the extensions to R_𝔪 of any two ideals (at most two generators
/// each, one of them regular) are comparable.
pub fn regular_total_order(ring: &Ring, maximal: &Ideal) -> PropertyVerdict {
    let verdict = PropertyVerdict::new("regular-total-order", true).with_note(NOTE_REGULAR_UNITS);
    let s = match MultiplicativeSet::complement_of(maximal) {
        Ok(s) if maximal.is_maximal() => s,
        _ => {
            let mut v = verdict.with_witness(Witness::Ideal(maximal.generators().to_vec()));
            v.holds = false;
            return v;
        }
    };
    let loc = localize_finite(&s).expect("finite localization");
    let lat = IdealLattice::new(ring);
    let ids = lat.generated_by_at_most(2);
    let extend = |set: &BitSet| {
        BitSet::from_iter_with_len(
            loc.ring.order(),
            set.iter().map(|x| loc.map.apply(x as Code) as usize),
        )
    };
    let ext: Vec<BitSet> = ids.iter().map(|&id| extend(lat.set(id))).collect();
    let regular: Vec<bool> = ids
        .iter()
        .map(|&id| set_has_regular(ring, lat.set(id)))
        .collect();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if !(regular[i] || regular[j]) {
                continue;
            }
            if !ext[i].is_subset(&ext[j]) && !ext[j].is_subset(&ext[i]) {
                let mut v = verdict.with_witness(Witness::Text(format!(
                    "ideals {:?} and {:?} are incomparable after localizing",
                    lat.set(ids[i]).iter().collect::<Vec<_>>(),
                    lat.set(ids[j]).iter().collect::<Vec<_>>(),
                )));
                v.holds = false;
                return v;
            }
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_gaussian;

    #[test]
    fn invertibility_examples() {
        let z4 = Ring::zmod(4).unwrap();
        let inv = is_invertible(&Ideal::unit(&z4));
        assert!(inv.verdict.holds);
        assert!(inv.inverse.unwrap().is_unit());
        assert!(!is_invertible(&Ideal::span(&z4, &[2])).verdict.holds);
        let z12 = Ring::zmod(12).unwrap();
        assert!(!is_invertible(&Ideal::span(&z12, &[6])).verdict.holds);
        assert!(is_invertible(&Ideal::span(&z12, &[5])).verdict.holds);
    }

    #[test]
    fn finite_rings_are_prufer() {
        let f2 = Ring::zmod(2).unwrap();
        let fx = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let fxy = Ring::poly_quot(&fx, "y", &[0, 0, 1]).unwrap();
        for r in [
            Ring::zmod(12).unwrap(),
            Ring::galois(8).unwrap(),
            fxy.clone(),
        ] {
            let v = is_prufer(&r);
            assert!(v.holds, "{r}");
            assert!(v.notes.contains(&NOTE_PRUFER));
        }
        assert!(!is_gaussian(&fxy).holds);
    }

    #[test]
    fn regular_total_order_at_maximals() {
        for r in [
            Ring::zmod(12).unwrap(),
            Ring::zmod(8).unwrap(),
            Ring::galois(9).unwrap(),
        ] {
            for m in r.maximal_ideals() {
                assert!(regular_total_order(&r, &m).holds);
            }
        }
        let z12 = Ring::zmod(12).unwrap();
        assert!(!regular_total_order(&z12, &Ideal::span(&z12, &[6])).holds);
    }
}
