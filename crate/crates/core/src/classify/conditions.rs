//! Regularity conditions on a bi-amalgamation, the zero-divisor dichotomy,
//! the square-zero lemma and the total-ring-of-fractions criterion.

use serde::Serialize;

use super::{is_gaussian, PropertyVerdict, Witness, NOTE_REGULAR_UNITS, NOTE_TOTAL_FRACTIONS};
use crate::biamalg::BiAmalgInstance;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Code, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// f(π⁻¹(Reg(A/𝔦₀))) ⊆ Reg(B) and the same for g.
    pub star: PropertyVerdict,
    /// f(Reg(A)) ⊆ Reg(B) and g(Reg(A)) ⊆ Reg(C).
    pub double_star: PropertyVerdict,
    /// Every element over a zero-divisor of A/𝔦₀ is a zero-divisor of R.
    pub black_star: PropertyVerdict,
    /// B and C local with maximal ideals 𝔟 and 𝔠 (a sufficient criterion
    /// for the black-star condition).
    pub black_star_fast_path: bool,
    pub b_in_jac: bool,
    pub c_in_jac: bool,
}

/// First `a` in `domain` with `f(a) ∉ Reg(B)` or `g(a) ∉ Reg(C)`.
fn regular_transfer_witness(
    inst: &BiAmalgInstance,
    domain: impl Iterator<Item = Code>,
) -> Option<Code> {
    domain
        .into_iter()
        .find(|&a| !inst.b.is_regular(inst.f.apply(a)) || !inst.c.is_regular(inst.g.apply(a)))
}

fn verdict(name: &str, witness: Option<Code>) -> PropertyVerdict {
    let v = PropertyVerdict::new(name, witness.is_none());
    match witness {
        Some(a) => v.with_witness(Witness::Element(a)),
        None => v,
    }
}

/// Whether f(π⁻¹(Reg(A/𝔞))) ⊆ Reg(B) and g(π⁻¹(Reg(A/𝔞))) ⊆ Reg(C), where
/// `a_mod` is A/𝔞 and `coset_of` the projection table.
pub fn regular_transfer_through(inst: &BiAmalgInstance, a_mod: &Ring, coset_of: &[Code]) -> bool {
    let domain = inst
        .a
        .elements()
        .filter(|&a| a_mod.is_regular(coset_of[a as usize]));
    regular_transfer_witness(inst, domain).is_none()
}

/// Whether B is local with maximal ideal `ideal`.
fn is_local_with_maximal(ring: &Ring, ideal: &Ideal) -> bool {
    ring.is_local() && ring.maximal_ideals().first() == Some(ideal)
}

pub fn condition_checks(inst: &BiAmalgInstance) -> ConditionReport {
    let (_, _, coset_of) = inst.a_mod_i0.quotient_parts().expect("quotient ring");
    let star_domain = inst
        .a
        .elements()
        .filter(|&a| inst.a_mod_i0.is_regular(coset_of[a as usize]));
    let star =
        verdict("star", regular_transfer_witness(inst, star_domain)).with_note(NOTE_REGULAR_UNITS);
    let regular_a = inst.a.elements().filter(|&a| inst.a.is_regular(a));
    let double_star = verdict("doublestar", regular_transfer_witness(inst, regular_a))
        .with_note(NOTE_REGULAR_UNITS);

    let fast = is_local_with_maximal(&inst.b, &inst.bi) && is_local_with_maximal(&inst.c, &inst.ci);
    let scan = inst
        .r
        .elements()
        .find(|&r| inst.a_mod_i0.is_zero_divisor(inst.p.apply(r)) && !inst.r.is_zero_divisor(r));
    let mut black_star = verdict("blackstar", scan);
    if fast {
        black_star = black_star.with_note("local total quotient rings with maximal ideals b and c");
    }
    let (jb, jc) = (inst.b.jacobson(), inst.c.jacobson());
    ConditionReport {
        star,
        double_star,
        black_star,
        black_star_fast_path: fast,
        b_in_jac: inst.bi.is_subset(&jb),
        c_in_jac: inst.ci.is_subset(&jc),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dichotomy {
    pub is_zero_divisor: bool,
    /// a + 𝔦₀ is a zero-divisor of A/𝔦₀.
    pub case1: bool,
    /// A nonzero (b′, c′) ∈ 𝔟×𝔠 with b′(f(a)+b) = 0 and c′(g(a)+c) = 0.
    pub case2: Option<(Code, Code)>,
}

impl Dichotomy {
    /// A zero-divisor falls under at least one case.
    pub fn certified(&self) -> bool {
        !self.is_zero_divisor || self.case1 || self.case2.is_some()
    }
}

/// Both cases for the element `r` of R, given as its code in R.
pub fn zero_divisor_dichotomy(inst: &BiAmalgInstance, r: Code) -> Result<Dichotomy> {
    inst.r.check_code(r)?;
    let (x, y) = inst.coords(r);
    let case2 = inst.ci.iter().find_map(|c2| {
        inst.bi
            .iter()
            .filter(|&b2| (b2, c2) != (0, 0))
            .find(|&b2| inst.b.mul(b2, x) == 0 && inst.c.mul(c2, y) == 0)
            .map(|b2| (b2, c2))
    });
    Ok(Dichotomy {
        is_zero_divisor: inst.r.is_zero_divisor(r),
        case1: inst.a_mod_i0.is_zero_divisor(inst.p.apply(r)),
        case2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdQuadReport {
    pub gaussian: bool,
    /// 𝔞² = 0.
    pub ideal_square_zero: bool,
    /// a² = 0 for every a ∈ 𝔞.
    pub elementwise_squares_zero: bool,
    pub equivalence_holds: bool,
}

impl IdQuadReport {
    /// The equivalence is only claimed for Gaussian rings.
    pub fn consistent(&self) -> bool {
        !self.gaussian || self.equivalence_holds
    }
}

pub fn lemma_idquad_check(ideal: &Ideal) -> Result<IdQuadReport> {
    lemma_idquad_with(ideal, is_gaussian(ideal.ring()).holds)
}

/// As [`lemma_idquad_check`] with the Gaussian verdict supplied.
pub fn lemma_idquad_with(ideal: &Ideal, gaussian: bool) -> Result<IdQuadReport> {
    let ring = ideal.ring();
    if !ring.is_local() {
        return Err(Error::NotLocal);
    }
    let ideal_square_zero = ideal.power(2).is_zero();
    let elementwise_squares_zero = ideal.iter().all(|a| ring.mul(a, a) == 0);
    Ok(IdQuadReport {
        gaussian,
        ideal_square_zero,
        elementwise_squares_zero,
        equivalence_holds: ideal_square_zero == elementwise_squares_zero,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    /// Every non-unit of R is a zero-divisor.
    pub total_fractions: PropertyVerdict,
    pub a_mod_k_total_fractions: bool,
    pub b_torsion: bool,
    pub c_torsion: bool,
    pub b_in_jac: bool,
    pub c_in_jac: bool,
}

pub fn is_total_fractions(ring: &Ring) -> PropertyVerdict {
    let bad = ring
        .elements()
        .find(|&x| !ring.is_unit(x) && !ring.is_zero_divisor(x));
    verdict("total-fractions", bad).with_note(NOTE_TOTAL_FRACTIONS)
}

/// Every element of `ideal` is killed by h(r) for some r with r + 𝔨
/// regular in A/𝔨.
fn is_torsion(inst: &BiAmalgInstance, h: &crate::hom::RingHom, ideal: &Ideal) -> bool {
    let (_, _, coset_of) = inst.a_mod_k.quotient_parts().expect("quotient ring");
    let scalars: Vec<Code> = inst
        .a
        .elements()
        .filter(|&a| inst.a_mod_k.is_regular(coset_of[a as usize]))
        .map(|a| h.apply(a))
        .collect();
    let m = h.codomain();
    ideal
        .iter()
        .all(|x| scalars.iter().any(|&s| m.mul(s, x) == 0))
}

pub fn total_quotient_and_torsion(inst: &BiAmalgInstance) -> TorsionReport {
    TorsionReport {
        total_fractions: is_total_fractions(&inst.r),
        a_mod_k_total_fractions: is_total_fractions(&inst.a_mod_k).holds,
        b_torsion: is_torsion(inst, &inst.f, &inst.bi),
        c_torsion: is_torsion(inst, &inst.g, &inst.ci),
        b_in_jac: inst.bi.is_subset(&inst.b.jacobson()),
        c_in_jac: inst.ci.is_subset(&inst.c.jacobson()),
    }
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

    #[test]
    fn example_conditions() {
        let inst = example_56(2);
        let rep = condition_checks(&inst);
        assert!(rep.star.holds && rep.double_star.holds && rep.black_star.holds);
        assert!(rep.black_star_fast_path);
        assert!(rep.b_in_jac && rep.c_in_jac);
    }

    #[test]
    fn duplication_double_star() {
        let z6 = Ring::zmod(6).unwrap();
        let inst = duplication(&Ideal::span(&z6, &[2])).unwrap();
        assert!(condition_checks(&inst).double_star.holds);
    }

    #[test]
    fn projection_instance_star() {
        let a = Ring::zmod(12).unwrap();
        let i0 = Ideal::span(&a, &[3]);
        let q = Ring::quotient(&i0).unwrap();
        let f = RingHom::canonical(&a, &q).unwrap();
        let zero = Ideal::zero(&q);
        let inst = BiAmalgInstance::new(&f, &f, &zero, &zero).unwrap();
        assert_eq!(inst.i0, i0);
        assert!(condition_checks(&inst).star.holds);
    }

    #[test]
    fn dichotomy_examples() {
        let inst = example_56(2);
        let r = inst.r_code(0, 2).unwrap();
        let d = zero_divisor_dichotomy(&inst, r).unwrap();
        assert!(d.is_zero_divisor);
        assert_eq!(d.case2, Some((2, 0)));
        let one = zero_divisor_dichotomy(&inst, inst.r_code(1, 1).unwrap()).unwrap();
        assert!(!one.is_zero_divisor && !one.case1 && one.case2.is_none());
        let two = zero_divisor_dichotomy(&inst, inst.r_code(2, 2).unwrap()).unwrap();
        assert!(two.is_zero_divisor && two.case1);
    }

    /// Oracle: a zero-divisor of R by explicit pair search.
    fn zd_oracle(inst: &BiAmalgInstance, r: Code) -> bool {
        inst.r.elements().any(|s| s != 0 && inst.r.mul(r, s) == 0)
    }

    #[test]
    fn dichotomy_is_certified_everywhere() {
        let inst = example_56(2);
        for r in inst.r.elements() {
            let d = zero_divisor_dichotomy(&inst, r).unwrap();
            assert_eq!(d.is_zero_divisor, zd_oracle(&inst, r));
            assert!(d.certified());
            if d.case2.is_some() {
                assert!(d.is_zero_divisor);
            }
        }
    }

    #[test]
    fn idquad_examples() {
        let z4 = Ring::zmod(4).unwrap();
        let rep = lemma_idquad_check(&Ideal::span(&z4, &[2])).unwrap();
        assert!(rep.ideal_square_zero && rep.elementwise_squares_zero && rep.consistent());
        let f2 = Ring::zmod(2).unwrap();
        let fx = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let fxy = Ring::poly_quot(&fx, "y", &[0, 0, 1]).unwrap();
        let rep = lemma_idquad_check(&Ideal::span(&fxy, &[2, 4])).unwrap();
        assert!(!rep.gaussian);
        assert!(rep.elementwise_squares_zero && !rep.ideal_square_zero);
        assert!(!rep.equivalence_holds);
        let z6 = Ring::zmod(6).unwrap();
        assert!(lemma_idquad_check(&Ideal::span(&z6, &[2])).is_err());
    }

    #[test]
    fn torsion_examples() {
        let inst = example_56(2);
        let rep = total_quotient_and_torsion(&inst);
        assert!(rep.total_fractions.holds);
        assert!(!rep.b_torsion);
        let z4 = Ring::zmod(4).unwrap();
        let zero = duplication(&Ideal::zero(&z4)).unwrap();
        assert!(total_quotient_and_torsion(&zero).b_torsion);
    }
}
