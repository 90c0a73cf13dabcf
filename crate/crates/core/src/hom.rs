//! Ring homomorphisms stored as image tables, verified at construction.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Code, Ring, RingDescriptor};

#[derive(Clone)]
pub struct RingHom {
    domain: Ring,
    codomain: Ring,
    table: Arc<Vec<Code>>,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

impl Eq for RingHom {}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.domain, self.codomain, self.table)
    }
}

#[derive(Clone, Debug)]
pub enum HomSpec {
    Canonical,
    Identity,
    ImageTable(Vec<Code>),
    /// Images of a generating set; the rest follows by additivity and
    /// multiplicativity.
    GeneratorImages(Vec<(Code, Code)>),
}

#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Ideal,
    pub image: BitSet,
}

impl RingHom {
    pub fn build(domain: &Ring, codomain: &Ring, spec: HomSpec) -> Result<RingHom> {
        match spec {
            HomSpec::Canonical => RingHom::canonical(domain, codomain),
            HomSpec::Identity => {
                if domain != codomain {
                    return Err(Error::NotAHomomorphism(
                        "identity needs equal domain and codomain".into(),
                    ));
                }
                Ok(RingHom::identity(domain))
            }
            HomSpec::ImageTable(table) => RingHom::from_table(domain, codomain, table),
            HomSpec::GeneratorImages(pairs) => {
                RingHom::from_generator_images(domain, codomain, &pairs)
            }
        }
    }

    pub fn identity(ring: &Ring) -> RingHom {
        RingHom {
            domain: ring.clone(),
            codomain: ring.clone(),
            table: Arc::new(ring.elements().collect()),
        }
    }

    /// Exhaustively verified construction from a full image table.
    pub fn from_table(domain: &Ring, codomain: &Ring, table: Vec<Code>) -> Result<RingHom> {
        verify_table(domain, codomain, &table)?;
        Ok(RingHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table: Arc::new(table),
        })
    }

    /// The structurally obvious map, when there is one: identity, projection
    /// onto a quotient, `k ↦ k·1` out of Z/n, inclusion of a subring, maps
    /// induced through quotients and polynomial quotients, and pairs into
    /// products.
    pub fn canonical(domain: &Ring, codomain: &Ring) -> Result<RingHom> {
        let table = canonical_table(domain, codomain).ok_or_else(|| Error::NoCanonicalMap {
            from: domain.to_string(),
            to: codomain.to_string(),
        })?;
        RingHom::from_table(domain, codomain, table)
    }

    pub fn from_generator_images(
        domain: &Ring,
        codomain: &Ring,
        pairs: &[(Code, Code)],
    ) -> Result<RingHom> {
        let table = propagate_images(domain, codomain, pairs)?;
        RingHom::from_table(domain, codomain, table)
    }

    pub fn domain(&self) -> &Ring {
        &self.domain
    }

    pub fn codomain(&self) -> &Ring {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, x: Code) -> Code {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[Code] {
        &self.table
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.codomain != other.domain {
            return Err(Error::RingMismatch);
        }
        Ok(RingHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            table: Arc::new(self.table.iter().map(|&x| other.apply(x)).collect()),
        })
    }

    pub fn kernel(&self) -> Ideal {
        Ideal::zero(&self.codomain)
            .contract(self)
            .expect("codomain matches")
    }

    pub fn image(&self) -> BitSet {
        BitSet::from_iter_with_len(
            self.codomain.order(),
            self.table.iter().map(|&x| x as usize),
        )
    }

    pub fn kernel_image(&self) -> KernelImage {
        KernelImage {
            kernel: self.kernel(),
            image: self.image(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.image().count() == self.domain.order()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count() == self.codomain.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// All homomorphisms `domain → codomain`, found by trying every
    /// assignment of images to a ring-generating set of the domain.
    pub fn enumerate(domain: &Ring, codomain: &Ring) -> Vec<RingHom> {
        let gens = ring_generators(domain);
        let m = codomain.order() as u64;
        let total = m.pow(gens.len() as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut rest = idx;
            let pairs: Vec<(Code, Code)> = gens
                .iter()
                .map(|&g| {
                    let img = (rest % m) as Code;
                    rest /= m;
                    (g, img)
                })
                .collect();
            if let Ok(h) = RingHom::from_generator_images(domain, codomain, &pairs) {
                out.push(h);
            }
        }
        out
    }
}

fn verify_table(domain: &Ring, codomain: &Ring, table: &[Code]) -> Result<()> {
    if table.len() != domain.order() {
        return Err(Error::NotAHomomorphism(format!(
            "image table has {} entries, domain has {} elements",
            table.len(),
            domain.order()
        )));
    }
    for &c in table {
        codomain.check_code(c)?;
    }
    if table[0] != codomain.zero() {
        return Err(Error::NotAHomomorphism("0 is not mapped to 0".into()));
    }
    if table[domain.one() as usize] != codomain.one() {
        return Err(Error::NotAHomomorphism("1 is not mapped to 1".into()));
    }
    for a in domain.elements() {
        for b in domain.elements() {
            let (ha, hb) = (table[a as usize], table[b as usize]);
            if table[domain.add(a, b) as usize] != codomain.add(ha, hb) {
                return Err(Error::NotAHomomorphism(format!(
                    "additivity fails: h({a}+{b}) != h({a})+h({b})"
                )));
            }
            if table[domain.mul(a, b) as usize] != codomain.mul(ha, hb) {
                return Err(Error::NotAHomomorphism(format!(
                    "multiplicativity fails: h({a}*{b}) != h({a})*h({b})"
                )));
            }
        }
    }
    Ok(())
}

fn canonical_table(domain: &Ring, codomain: &Ring) -> Option<Vec<Code>> {
    if domain == codomain {
        return Some(domain.elements().collect());
    }
    if let Some((parent, _, coset_of)) = codomain.quotient_parts() {
        if parent == domain {
            return Some(coset_of.to_vec());
        }
    }
    if let Some((parent, elems)) = domain.subring_parts() {
        if parent == codomain {
            return Some(elems.to_vec());
        }
    }
    match domain.descriptor() {
        RingDescriptor::Zmod(_) | RingDescriptor::Galois { k: 1, .. } => {
            return Some(
                domain
                    .elements()
                    .map(|x| codomain.from_int(x as i64))
                    .collect(),
            );
        }
        RingDescriptor::Quotient { parent, .. } => {
            if let Some(up) = canonical_table(parent, codomain) {
                let (_, reps, _) = domain.quotient_parts()?;
                return Some(reps.iter().map(|&r| up[r as usize]).collect());
            }
        }
        RingDescriptor::PolyQuot { base, modulus, .. } => {
            if let RingDescriptor::PolyQuot {
                base: cbase,
                modulus: cmod,
                ..
            } = codomain.descriptor()
            {
                let base_map = canonical_table(base, cbase)?;
                let image_mod: Vec<Code> = modulus.iter().map(|&c| base_map[c as usize]).collect();
                if image_mod.len() == cmod.len() {
                    let var = cbase.order() as Code;
                    return Some(poly_image(
                        domain,
                        base,
                        codomain,
                        &base_map,
                        var,
                        modulus.len() - 1,
                    ));
                }
            }
        }
        _ => {}
    }
    if let Some((left, right)) = codomain.factors() {
        let l = canonical_table(domain, left)?;
        let r = canonical_table(domain, right)?;
        return Some(
            l.iter()
                .zip(&r)
                .map(|(&a, &b)| codomain.pair(a, b))
                .collect(),
        );
    }
    None
}

/// Image of every element of `base[x]/(m)` under the map that applies
/// `base_map` to coefficients (landing in constants of `codomain`) and sends
/// `x` to `var`.
fn poly_image(
    domain: &Ring,
    base: &Ring,
    codomain: &Ring,
    base_map: &[Code],
    var: Code,
    degree: usize,
) -> Vec<Code> {
    let m = base.order() as Code;
    domain
        .elements()
        .map(|code| {
            let mut rest = code;
            let mut acc = codomain.zero();
            let mut power = codomain.one();
            for _ in 0..degree {
                let digit = rest % m;
                rest /= m;
                let c = base_map[digit as usize];
                acc = codomain.add(acc, codomain.mul(c, power));
                power = codomain.mul(power, var);
            }
            acc
        })
        .collect()
}

fn propagate_images(domain: &Ring, codomain: &Ring, pairs: &[(Code, Code)]) -> Result<Vec<Code>> {
    const UNSET: Code = Code::MAX;
    let n = domain.order();
    let mut table = vec![UNSET; n];
    let mut known: Vec<Code> = Vec::new();
    let assign = |table: &mut Vec<Code>, known: &mut Vec<Code>, x: Code, y: Code| {
        let slot = &mut table[x as usize];
        if *slot == UNSET {
            *slot = y;
            known.push(x);
            Ok(())
        } else if *slot == y {
            Ok(())
        } else {
            Err(Error::NotAHomomorphism(format!(
                "generator images are inconsistent at {}",
                domain.format_elem(x)
            )))
        }
    };
    assign(&mut table, &mut known, domain.zero(), codomain.zero())?;
    assign(&mut table, &mut known, domain.one(), codomain.one())?;
    for &(x, y) in pairs {
        domain.check_code(x)?;
        codomain.check_code(y)?;
        assign(&mut table, &mut known, x, y)?;
    }
    let mut cursor = 0;
    while cursor < known.len() {
        let x = known[cursor];
        let hx = table[x as usize];
        let mut j = 0;
        while j <= cursor {
            let y = known[j];
            let hy = table[y as usize];
            assign(
                &mut table,
                &mut known,
                domain.add(x, y),
                codomain.add(hx, hy),
            )?;
            assign(
                &mut table,
                &mut known,
                domain.mul(x, y),
                codomain.mul(hx, hy),
            )?;
            j += 1;
        }
        cursor += 1;
    }
    if known.len() != n {
        return Err(Error::NotAHomomorphism(
            "the given elements do not generate the domain".into(),
        ));
    }
    Ok(table)
}

/// Closure of `{0, 1} ∪ extra` under + and ·.
pub fn generated_subring(ring: &Ring, extra: &[Code]) -> BitSet {
    let mut set = BitSet::new(ring.order());
    let mut list = Vec::new();
    for x in [ring.zero(), ring.one()]
        .into_iter()
        .chain(extra.iter().copied())
    {
        if set.insert(x as usize) {
            list.push(x);
        }
    }
    let mut cursor = 0;
    while cursor < list.len() {
        let x = list[cursor];
        let mut j = 0;
        while j <= cursor {
            let y = list[j];
            for z in [ring.add(x, y), ring.mul(x, y)] {
                if set.insert(z as usize) {
                    list.push(z);
                }
            }
            j += 1;
        }
        cursor += 1;
    }
    set
}

/// A small ring-generating set (over the prime subring), chosen greedily.
pub fn ring_generators(ring: &Ring) -> Vec<Code> {
    let mut gens = Vec::new();
    let mut span = generated_subring(ring, &[]);
    for x in ring.elements() {
        if !span.contains(x as usize) {
            gens.push(x);
            span = generated_subring(ring, &gens);
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_projection_z8_to_z4() {
        let (z8, z4) = (Ring::zmod(8).unwrap(), Ring::zmod(4).unwrap());
        let h = RingHom::build(&z8, &z4, HomSpec::Canonical).unwrap();
        assert_eq!(h.table(), &[0, 1, 2, 3, 0, 1, 2, 3]);
        assert!(h.is_surjective());
    }

    #[test]
    fn z2_to_z4_one_to_one_rejected() {
        let (z2, z4) = (Ring::zmod(2).unwrap(), Ring::zmod(4).unwrap());
        assert!(matches!(
            RingHom::build(&z2, &z4, HomSpec::ImageTable(vec![0, 1])),
            Err(Error::NotAHomomorphism(_))
        ));
        assert!(RingHom::canonical(&z2, &z4).is_err());
    }

    #[test]
    fn identity_on_gf4() {
        let gf4 = Ring::galois(4).unwrap();
        let id = RingHom::build(&gf4, &gf4, HomSpec::Identity).unwrap();
        assert!(id.kernel().is_zero());
        assert!(id.is_bijective());
    }

    #[test]
    fn kernel_and_image_examples() {
        let (z12, z6) = (Ring::zmod(12).unwrap(), Ring::zmod(6).unwrap());
        let h = RingHom::canonical(&z12, &z6).unwrap();
        assert_eq!(h.kernel(), Ideal::span(&z12, &[6]));
        let (z4, z2) = (Ring::zmod(4).unwrap(), Ring::zmod(2).unwrap());
        let ki = RingHom::canonical(&z4, &z2).unwrap().kernel_image();
        assert_eq!(ki.image.count(), 2);
        assert_eq!(ki.kernel, Ideal::span(&z4, &[2]));
    }

    #[test]
    fn canonical_through_quotients_and_polynomials() {
        let z8 = Ring::zmod(8).unwrap();
        let q = Ring::quotient(&Ideal::span(&z8, &[4])).unwrap();
        let z4 = Ring::zmod(4).unwrap();
        let h = RingHom::canonical(&q, &z4).unwrap();
        assert!(h.is_bijective());

        let a = Ring::poly_quot(&z8, "x", &[0, 0, 1]).unwrap();
        let b = Ring::poly_quot(&z4, "x", &[0, 0, 1]).unwrap();
        let p = RingHom::canonical(&a, &b).unwrap();
        assert!(p.is_surjective());
        assert_eq!(p.apply(8), 4); // x ↦ x
    }

    #[test]
    fn generator_images_and_enumeration() {
        let f2 = Ring::zmod(2).unwrap();
        let d = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        // x ↦ 0 gives the residue map F2[x]/(x^2) → F2
        let h = RingHom::from_generator_images(&d, &f2, &[(2, 0)]).unwrap();
        assert_eq!(h.table(), &[0, 1, 0, 1]);
        assert!(RingHom::from_generator_images(&d, &f2, &[(2, 1)]).is_err());
        // endomorphisms of F2[x]/(x^2): x ↦ 0 or x ↦ x
        assert_eq!(RingHom::enumerate(&d, &d).len(), 2);
        // Z/6 → Z/2 × Z/3 is the unique map
        let p = Ring::product(&f2, &Ring::zmod(3).unwrap()).unwrap();
        let homs = RingHom::enumerate(&Ring::zmod(6).unwrap(), &p);
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_bijective());
        // GF(4) has two automorphisms
        let gf4 = Ring::galois(4).unwrap();
        assert_eq!(RingHom::enumerate(&gf4, &gf4).len(), 2);
    }
}
