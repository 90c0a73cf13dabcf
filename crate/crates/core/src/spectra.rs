//! The prime spectrum of a bi-amalgamation, assembled from the spectra of
//! A, B and C, and the localization isomorphism at primes of bowtie type.
//!
//! Every prime of a finite ring is maximal, so both sides of each
//! homeomorphism are discrete; the checks reduce to tagged bijections plus
//! maximality flags.

use serde::Serialize;

use crate::biamalg::BiAmalgInstance;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::{enumerate_spec, primes_containing, Ideal};
use crate::localize::{localize_finite, Localization, MultiplicativeSet};
use crate::ring::{Code, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Provenance {
    Bowtie,
    SharpB,
    SharpC,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Bowtie => "bowtie",
            Provenance::SharpB => "sharp-B",
            Provenance::SharpC => "sharp-C",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TaggedPrime {
    pub ideal: Ideal,
    pub provenance: Provenance,
    /// The prime of A, B or C it comes from.
    pub source: Ideal,
    pub maximal: bool,
}

#[derive(Clone, Debug)]
pub struct SpecReport {
    pub primes: Vec<TaggedPrime>,
    pub direct: Vec<Ideal>,
    /// Candidate list equals the direct enumeration as a set of ideals.
    pub matches: bool,
    /// No prime is produced twice (the three families are disjoint).
    pub partition: bool,
    /// Bowtie-type primes are exactly the primes containing 𝔟×𝔠.
    pub bowtie_is_v_bxc: bool,
    /// |Spec R| = |V(𝔦₀)| + |Spec B ∖ V(𝔟)| + |Spec C ∖ V(𝔠)|.
    pub count_identity: bool,
}

impl SpecReport {
    pub fn ok(&self) -> bool {
        self.matches && self.partition && self.bowtie_is_v_bxc && self.count_identity
    }
}

pub fn assemble_spec(inst: &BiAmalgInstance) -> Result<SpecReport> {
    let spec_a = enumerate_spec(&inst.a);
    let spec_b = enumerate_spec(&inst.b);
    let spec_c = enumerate_spec(&inst.c);
    let mut primes = Vec::new();
    for p in primes_containing(&spec_a, &inst.i0) {
        let ideal = inst.ideal_bowtie(&p)?;
        primes.push(TaggedPrime {
            maximal: ideal.is_maximal(),
            ideal,
            provenance: Provenance::Bowtie,
            source: p,
        });
    }
    for q in spec_b.iter().filter(|q| !inst.bi.is_subset(q)) {
        let ideal = inst.sharp_b(q)?;
        primes.push(TaggedPrime {
            maximal: ideal.is_maximal(),
            ideal,
            provenance: Provenance::SharpB,
            source: q.clone(),
        });
    }
    for q in spec_c.iter().filter(|q| !inst.ci.is_subset(q)) {
        let ideal = inst.sharp_c(q)?;
        primes.push(TaggedPrime {
            maximal: ideal.is_maximal(),
            ideal,
            provenance: Provenance::SharpC,
            source: q.clone(),
        });
    }
    let direct = enumerate_spec(&inst.r);
    let mut candidate: Vec<Ideal> = primes.iter().map(|t| t.ideal.clone()).collect();
    candidate.sort();
    let before = candidate.len();
    candidate.dedup();
    let partition = candidate.len() == before;
    let matches = candidate == direct;
    let mut v_bxc = primes_containing(&direct, &inst.bxc);
    v_bxc.sort();
    let mut bowties: Vec<Ideal> = primes
        .iter()
        .filter(|t| t.provenance == Provenance::Bowtie)
        .map(|t| t.ideal.clone())
        .collect();
    bowties.sort();
    let count_identity = direct.len()
        == primes_containing(&spec_a, &inst.i0).len()
            + spec_b.iter().filter(|q| !inst.bi.is_subset(q)).count()
            + spec_c.iter().filter(|q| !inst.ci.is_subset(q)).count();
    Ok(SpecReport {
        primes,
        direct,
        matches,
        partition,
        bowtie_is_v_bxc: bowties == v_bxc,
        count_identity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecTheoremReport {
    /// 𝔭 ↦ 𝔭⋈(𝔟,𝔠) is a bijection V(𝔦₀) → V(𝔟×𝔠).
    pub bowtie_bijection: bool,
    /// ... preserving and reflecting inclusion.
    pub bowtie_order: bool,
    /// The sharp maps are bijections onto Spec R ∖ V(𝔟×𝔠).
    pub sharp_bijection: bool,
    /// Maximality is preserved and reflected.
    pub maximality: bool,
}

impl SpecTheoremReport {
    pub fn ok(&self) -> bool {
        self.bowtie_bijection && self.bowtie_order && self.sharp_bijection && self.maximality
    }
}

pub fn verify_spec_theorem(inst: &BiAmalgInstance) -> Result<SpecTheoremReport> {
    let report = assemble_spec(inst)?;
    let direct = &report.direct;
    let v_bxc = primes_containing(direct, &inst.bxc);
    let of = |prov: Provenance| -> Vec<&TaggedPrime> {
        report
            .primes
            .iter()
            .filter(|t| t.provenance == prov)
            .collect()
    };
    let bowtie = of(Provenance::Bowtie);
    let injective = |ts: &[&TaggedPrime]| {
        ts.iter()
            .enumerate()
            .all(|(i, s)| ts[i + 1..].iter().all(|t| t.ideal != s.ideal))
    };
    let bowtie_bijection = injective(&bowtie)
        && bowtie.len() == v_bxc.len()
        && bowtie.iter().all(|t| v_bxc.contains(&t.ideal));
    let bowtie_order = bowtie.iter().all(|s| {
        bowtie
            .iter()
            .all(|t| s.source.is_subset(&t.source) == s.ideal.is_subset(&t.ideal))
    });
    let mut sharp: Vec<&TaggedPrime> = of(Provenance::SharpB);
    sharp.extend(of(Provenance::SharpC));
    let off: Vec<&Ideal> = direct.iter().filter(|p| !v_bxc.contains(p)).collect();
    let sharp_bijection = injective(&sharp)
        && sharp.len() == off.len()
        && sharp.iter().all(|t| off.contains(&&t.ideal));
    let maximality = report
        .primes
        .iter()
        .all(|t| t.source.is_maximal() == t.maximal);
    Ok(SpecTheoremReport {
        bowtie_bijection,
        bowtie_order,
        sharp_bijection,
        maximality,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCriterion {
    pub a_mod_i0_local: bool,
    pub b_in_jac: bool,
    pub c_in_jac: bool,
    pub criterion: bool,
    pub direct: bool,
    pub agree: bool,
}

pub fn local_criterion(inst: &BiAmalgInstance) -> LocalCriterion {
    let a_mod_i0_local = inst.a_mod_i0.is_local();
    let b_in_jac = inst.bi.is_subset(&inst.b.jacobson());
    let c_in_jac = inst.ci.is_subset(&inst.c.jacobson());
    let criterion = a_mod_i0_local && b_in_jac && c_in_jac;
    let direct = inst.r.is_local();
    LocalCriterion {
        a_mod_i0_local,
        b_in_jac,
        c_in_jac,
        criterion,
        direct,
        agree: criterion == direct,
    }
}

/// The data induced at a prime 𝔭 ⊇ 𝔦₀ of A.
#[derive(Clone, Debug)]
pub struct LocalizedData {
    pub s: MultiplicativeSet,
    pub t: MultiplicativeSet,
    pub a_p: Localization,
    pub b_s: Localization,
    pub c_t: Localization,
    pub f_p: RingHom,
    pub g_p: RingHom,
    /// 𝔟B_{S_𝔭}.
    pub b_ext: Ideal,
    /// 𝔠C_{T_𝔭}.
    pub c_ext: Ideal,
    /// 𝔦₀A_𝔭.
    pub i0_ext: Ideal,
    /// f_𝔭⁻¹(𝔟B_S) = g_𝔭⁻¹(𝔠C_T) = 𝔦₀A_𝔭.
    pub identity_holds: bool,
}

/// `h_𝔭` with `h_𝔭 ∘ λ_A = λ_B ∘ h`; λ_A is surjective for finite rings.
fn induced_map(h: &RingHom, from: &Localization, to: &Localization) -> Result<RingHom> {
    let mut table = vec![Code::MAX; from.ring.order()];
    for x in h.domain().elements() {
        let y = to.map.apply(h.apply(x));
        let slot = &mut table[from.map.apply(x) as usize];
        if *slot == Code::MAX {
            *slot = y;
        } else if *slot != y {
            return Err(Error::NotAHomomorphism(
                "the induced map on localizations is not well defined".into(),
            ));
        }
    }
    RingHom::from_table(&from.ring, &to.ring, table)
}

/// `{h(a) + x : a ∉ 𝔭, x ∈ ideal}`.
fn shifted_image(h: &RingHom, prime: &Ideal, ideal: &Ideal) -> Vec<Code> {
    let ring = h.codomain();
    let mut out: Vec<Code> = h
        .domain()
        .elements()
        .filter(|&a| !prime.contains(a))
        .flat_map(|a| ideal.iter().map(move |x| ring.add(h.apply(a), x)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn induced_localized_data(inst: &BiAmalgInstance, prime: &Ideal) -> Result<LocalizedData> {
    if prime.ring() != &inst.a {
        return Err(Error::RingMismatch);
    }
    if !prime.is_prime() {
        return Err(Error::NotPrime);
    }
    if !inst.i0.is_subset(prime) {
        return Err(Error::PrimeMissesI0);
    }
    let s = MultiplicativeSet::new(&inst.b, &shifted_image(&inst.f, prime, &inst.bi))?;
    let t = MultiplicativeSet::new(&inst.c, &shifted_image(&inst.g, prime, &inst.ci))?;
    let a_p = localize_finite(&MultiplicativeSet::complement_of(prime)?)?;
    let b_s = localize_finite(&s)?;
    let c_t = localize_finite(&t)?;
    let f_p = induced_map(&inst.f, &a_p, &b_s)?;
    let g_p = induced_map(&inst.g, &a_p, &c_t)?;
    let b_ext = inst.bi.extend(&b_s.map)?;
    let c_ext = inst.ci.extend(&c_t.map)?;
    let i0_ext = inst.i0.extend(&a_p.map)?;
    let identity_holds = b_ext.contract(&f_p)? == i0_ext && c_ext.contract(&g_p)? == i0_ext;
    Ok(LocalizedData {
        s,
        t,
        a_p,
        b_s,
        c_t,
        f_p,
        g_p,
        b_ext,
        c_ext,
        i0_ext,
        identity_holds,
    })
}

#[derive(Clone, Debug)]
pub struct LocalizationIsoReport {
    pub identity_holds: bool,
    pub left_order: usize,
    pub right_order: usize,
    /// The canonical map R_{𝔭⋈} → A_𝔭⋈(𝔟B_S, 𝔠C_T) is a bijective
    /// homomorphism.
    pub iso: bool,
    pub map: Option<RingHom>,
}

impl LocalizationIsoReport {
    pub fn ok(&self) -> bool {
        self.identity_holds && self.iso
    }
}

pub fn verify_localization_iso(
    inst: &BiAmalgInstance,
    prime: &Ideal,
) -> Result<LocalizationIsoReport> {
    let data = induced_localized_data(inst, prime)?;
    let big_p = inst.ideal_bowtie(prime)?;
    let left = localize_finite(&MultiplicativeSet::complement_of(&big_p)?)?;
    let right = BiAmalgInstance::new(&data.f_p, &data.g_p, &data.b_ext, &data.c_ext)?;
    let mut table = vec![Code::MAX; left.ring.order()];
    let mut well_defined = true;
    for z in inst.r.elements() {
        let (x, y) = inst.coords(z);
        let image = right.r_code(data.b_s.map.apply(x), data.c_t.map.apply(y));
        let Some(image) = image else {
            well_defined = false;
            break;
        };
        let slot = &mut table[left.map.apply(z) as usize];
        if *slot == Code::MAX {
            *slot = image;
        } else if *slot != image {
            well_defined = false;
            break;
        }
    }
    let map = if well_defined {
        RingHom::from_table(&left.ring, &right.r, table).ok()
    } else {
        None
    };
    Ok(LocalizationIsoReport {
        identity_holds: data.identity_holds,
        left_order: left.ring.order(),
        right_order: right.r.order(),
        iso: map.as_ref().is_some_and(RingHom::is_bijective),
        map,
    })
}

/// Spectrum of a plain ring, for presentation.
pub fn ring_spec(ring: &Ring) -> Vec<Ideal> {
    enumerate_spec(ring)
}
