//! The deterministic catalog of rings, homomorphisms and bi-amalgamation
//! instances swept by the suite.
//!
//! Rings come in two tiers. Instance-tier rings serve as A, B and C;
//! ring-tier rings are only subjects of ring-level theorems. Instances are
//! stored as indices and materialized on demand.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::biamalg::BiAmalgInstance;
use crate::bitset::BitSet;
use crate::classify::theorems::{InstanceFacts, RingFacts};
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::ring::Ring;

/// Order of the largest mandatory instance.
pub const MANDATORY_ORDER: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// N₁: largest A, B, C of an enumerated instance.
    pub max_ring: usize,
    /// N₃: largest |R|.
    pub max_instance: usize,
    /// N₂: largest ring-tier ring (chain rings, polynomial towers, products).
    pub max_poly: usize,
    /// Attempts of the seeded random extension.
    pub random_instances: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ring: 16,
            max_instance: 128,
            max_poly: 64,
            random_instances: 32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingRole {
    /// Used as A, B and C of enumerated instances.
    Instance,
    /// Subject of ring-level theorems only.
    RingOnly,
}

pub struct CatalogRing {
    pub label: String,
    pub ring: Ring,
    pub facts: Arc<RingFacts>,
    pub role: RingRole,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    /// Set for the named instances.
    pub label: Option<String>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// Indices into [`Catalog::homs`].
    pub f: usize,
    pub g: usize,
    /// Indices into the ideal lists of B and C.
    pub bi: usize,
    pub ci: usize,
    pub order: usize,
}

pub struct Catalog {
    pub caps: Caps,
    pub seed: u64,
    pub rings: Vec<CatalogRing>,
    pub homs: Vec<RingHom>,
    pub instances: Vec<InstanceSpec>,
}

impl Catalog {
    pub fn ideal(&self, ring: usize, idx: usize) -> &Ideal {
        &self.rings[ring].facts.ideals()[idx]
    }

    pub fn parts(&self, spec: &InstanceSpec) -> (&RingHom, &RingHom, &Ideal, &Ideal) {
        (
            &self.homs[spec.f],
            &self.homs[spec.g],
            self.ideal(spec.b, spec.bi),
            self.ideal(spec.c, spec.ci),
        )
    }

    pub fn instance(&self, idx: usize) -> Result<BiAmalgInstance> {
        let (f, g, bi, ci) = self.parts(&self.instances[idx]);
        BiAmalgInstance::new(f, g, bi, ci)
    }

    /// The instance with the catalog facts of A, B and C attached.
    pub fn facts(&self, idx: usize) -> Result<InstanceFacts> {
        let spec = &self.instances[idx];
        let inst = self.instance(idx)?;
        Ok(InstanceFacts::with_rings(
            inst,
            self.rings[spec.a].facts.clone(),
            self.rings[spec.b].facts.clone(),
            self.rings[spec.c].facts.clone(),
        ))
    }

    pub fn instance_label(&self, idx: usize) -> String {
        let s = &self.instances[idx];
        if let Some(l) = &s.label {
            return l.clone();
        }
        format!(
            "{} -> {} along {}, {} -> {} along {}",
            self.rings[s.a].label,
            self.rings[s.b].label,
            self.ideal(s.b, s.bi).display(),
            self.rings[s.a].label,
            self.rings[s.c].label,
            self.ideal(s.c, s.ci).display(),
        )
    }

    pub fn named(&self, label: &str) -> Option<usize> {
        self.instances
            .iter()
            .position(|s| s.label.as_deref() == Some(label))
    }

    /// One line per ring and instance; equal for equal (caps, seed).
    pub fn fingerprint(&self) -> String {
        let mut out = String::new();
        for r in &self.rings {
            out.push_str(&format!(
                "ring {} {:?} {}\n",
                r.label,
                r.role,
                r.ring.order()
            ));
        }
        for h in &self.homs {
            out.push_str(&format!("hom {:?}\n", h.table()));
        }
        for s in &self.instances {
            out.push_str(&format!(
                "inst {:?} {} {} {} {} {} {} {} {}\n",
                s.label, s.a, s.b, s.c, s.f, s.g, s.bi, s.ci, s.order
            ));
        }
        out
    }
}

/// Names of the mandatory instances, in catalog order.
pub const NAMED: [&str; 7] = [
    "example-5.6-p2",
    "example-5.6-p3",
    "duplication-z16-(4)",
    "amalgamation-z32-z16-(4)",
    "amalgamation-z32-z16-(4)-swapped",
    "projection-z12-(3)",
    "duplication-z6-(2)",
];

struct Builder {
    rings: Vec<CatalogRing>,
    by_label: HashMap<String, usize>,
    homs: Vec<RingHom>,
    hom_ids: HashMap<(usize, usize, Vec<u32>), usize>,
}

impl Builder {
    fn add(&mut self, label: String, ring: Ring, role: RingRole) -> usize {
        if let Some(&i) = self.by_label.get(&label) {
            return i;
        }
        let i = self.rings.len();
        self.by_label.insert(label.clone(), i);
        self.rings.push(CatalogRing {
            label,
            facts: RingFacts::new(&ring),
            ring,
            role,
        });
        i
    }

    fn ring(&mut self, ring: Ring, role: RingRole) -> usize {
        self.add(ring.to_string(), ring, role)
    }

    fn hom(&mut self, a: usize, b: usize, h: RingHom) -> usize {
        let key = (a, b, h.table().to_vec());
        if let Some(&i) = self.hom_ids.get(&key) {
            return i;
        }
        let i = self.homs.len();
        self.homs.push(h);
        self.hom_ids.insert(key, i);
        i
    }

    fn ideal_index(&self, ring: usize, ideal: &Ideal) -> Result<usize> {
        self.rings[ring]
            .facts
            .ideals()
            .iter()
            .position(|i| i.set() == ideal.set())
            .ok_or_else(|| Error::Internal("ideal missing from the lattice".into()))
    }
}

fn prime_powers(max: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5, 7, 11, 13] {
        let mut k = 1;
        while (p as usize).pow(k) <= max {
            out.push((p, k));
            k += 1;
        }
    }
    out
}

fn rings(caps: &Caps) -> Result<Builder> {
    use RingRole::*;
    let mut b = Builder {
        rings: Vec::new(),
        by_label: HashMap::new(),
        homs: Vec::new(),
        hom_ids: HashMap::new(),
    };
    let n1 = caps.max_ring;
    let n2 = caps.max_poly.max(n1);
    for n in 2..=n1 as u32 {
        b.ring(Ring::zmod(n)?, Instance);
    }
    for (p, k) in prime_powers(n1) {
        if k > 1 {
            b.ring(Ring::galois(p.pow(k))?, Instance);
        }
    }
    for (p, k) in prime_powers(n2) {
        if (p as usize).pow(k) > n1 && k > 1 {
            b.ring(Ring::zmod(p.pow(k))?, RingOnly);
        }
    }
    let f2 = Ring::zmod(2)?;
    let f3 = Ring::zmod(3)?;
    let z4 = Ring::zmod(4)?;
    let role = |order: usize, instance: bool| {
        if instance && order <= n1 {
            Instance
        } else {
            RingOnly
        }
    };
    // Truncated polynomial rings and their bivariate towers.
    for (base, p) in [(&f2, 2usize), (&f3, 3)] {
        let mut deg = 2;
        while p.pow(deg as u32) <= n2 {
            let mut modulus = vec![0; deg + 1];
            modulus[deg] = 1;
            let r = Ring::poly_quot(base, "x", &modulus)?;
            b.ring(r.clone(), role(r.order(), deg <= 3));
            deg += 1;
        }
    }
    let fx2 = Ring::poly_quot(&f2, "x", &[0, 0, 1])?;
    let fx2x = Ring::poly_quot(&f2, "x", &[0, 1, 1])?;
    b.ring(fx2x, role(4, true));
    if 16 <= n2 {
        let fxy = Ring::poly_quot(&fx2, "y", &[0, 0, 1])?;
        b.ring(fxy.clone(), RingOnly);
        // (x, y)³ = 0 with xy = 0: F₂[x,y]/(x², xy, y²).
        let xy = fxy.mul(2, 4);
        b.ring(Ring::quotient(&Ideal::span(&fxy, &[xy]))?, RingOnly);
        let z4x = Ring::poly_quot(&z4, "x", &[0, 0, 1])?;
        b.ring(z4x, RingOnly);
        b.ring(Ring::poly_quot(&z4, "x", &[1, 1, 1])?, RingOnly);
        b.ring(Ring::poly_quot(&z4, "x", &[2, 0, 1])?, RingOnly);
        if 64 <= n2 {
            let fx3 = Ring::poly_quot(&f2, "x", &[0, 0, 0, 1])?;
            b.ring(Ring::poly_quot(&fx3, "y", &[0, 0, 1])?, RingOnly);
        }
    }
    // Products.
    let g4 = Ring::galois(4)?;
    let mut pairs = vec![(&f2, &f2), (&f2, &f3), (&f3, &f3), (&f2, &z4), (&f2, &g4)];
    pairs.push((&z4, &z4));
    for (l, r) in pairs {
        let p = Ring::product(l, r)?;
        let small = p.order() <= 8;
        if p.order() <= n2 {
            b.ring(p.clone(), role(p.order(), small));
        }
    }
    if 8 <= n2 {
        let f2f2 = Ring::product(&f2, &f2)?;
        b.ring(Ring::product(&f2f2, &f2)?, RingOnly);
    }
    Ok(b)
}

struct Leg {
    ring: usize,
    hom: usize,
    ideal: usize,
    size: usize,
    preimage: BitSet,
}

fn legs(b: &mut Builder, a: usize, targets: &[usize]) -> Vec<Leg> {
    let mut out = Vec::new();
    let a_ring = b.rings[a].ring.clone();
    for &t in targets {
        let t_ring = b.rings[t].ring.clone();
        for h in RingHom::enumerate(&a_ring, &t_ring) {
            let hid = b.hom(a, t, h.clone());
            for (ii, ideal) in b.rings[t].facts.ideals().iter().enumerate() {
                let mut pre = BitSet::new(a_ring.order());
                for x in a_ring.elements() {
                    if ideal.contains(h.apply(x)) {
                        pre.insert(x as usize);
                    }
                }
                out.push(Leg {
                    ring: t,
                    hom: hid,
                    ideal: ii,
                    size: ideal.len(),
                    preimage: pre,
                });
            }
        }
    }
    out
}

fn named(b: &mut Builder) -> Result<Vec<InstanceSpec>> {
    let mut out = Vec::new();
    let mut push = |b: &mut Builder,
                    label: &str,
                    (a, bb, c): (usize, usize, usize),
                    f: RingHom,
                    g: RingHom,
                    bi: &Ideal,
                    ci: &Ideal|
     -> Result<()> {
        let inst = BiAmalgInstance::new(&f, &g, bi, ci)?;
        let spec = InstanceSpec {
            label: Some(label.into()),
            a,
            b: bb,
            c,
            f: b.hom(a, bb, f),
            g: b.hom(a, c, g),
            bi: b.ideal_index(bb, bi)?,
            ci: b.ideal_index(c, ci)?,
            order: inst.r.order(),
        };
        out.push(spec);
        Ok(())
    };
    for (p, label) in [(2u32, NAMED[0]), (3, NAMED[1])] {
        let a = b.ring(Ring::zmod(p.pow(3))?, RingRole::RingOnly);
        let t = b.ring(Ring::zmod(p * p)?, RingRole::RingOnly);
        let (ar, tr) = (b.rings[a].ring.clone(), b.rings[t].ring.clone());
        let f = RingHom::canonical(&ar, &tr)?;
        let ideal = Ideal::span(&tr, &[tr.from_int(p as i64)]);
        push(b, label, (a, t, t), f.clone(), f, &ideal, &ideal)?;
    }
    let z16 = b.ring(Ring::zmod(16)?, RingRole::RingOnly);
    let z16r = b.rings[z16].ring.clone();
    let id16 = RingHom::identity(&z16r);
    let four = Ideal::span(&z16r, &[4]);
    push(
        b,
        NAMED[2],
        (z16, z16, z16),
        id16.clone(),
        id16.clone(),
        &four,
        &four,
    )?;
    let z32 = b.ring(Ring::zmod(32)?, RingRole::RingOnly);
    let z32r = b.rings[z32].ring.clone();
    let f = RingHom::canonical(&z32r, &z16r)?;
    let id32 = RingHom::identity(&z32r);
    let i0 = four.contract(&f)?;
    push(
        b,
        NAMED[3],
        (z32, z16, z32),
        f.clone(),
        id32.clone(),
        &four,
        &i0,
    )?;
    push(b, NAMED[4], (z32, z32, z16), id32, f, &i0, &four)?;
    let z12 = b.ring(Ring::zmod(12)?, RingRole::RingOnly);
    let z12r = b.rings[z12].ring.clone();
    let q = Ring::quotient(&Ideal::span(&z12r, &[3]))?;
    let q = b.add("Z/12/(3)".into(), q, RingRole::RingOnly);
    let qr = b.rings[q].ring.clone();
    let proj = RingHom::canonical(&z12r, &qr)?;
    let zero = Ideal::zero(&qr);
    push(b, NAMED[5], (z12, q, q), proj.clone(), proj, &zero, &zero)?;
    let z6 = b.ring(Ring::zmod(6)?, RingRole::RingOnly);
    let z6r = b.rings[z6].ring.clone();
    let id6 = RingHom::identity(&z6r);
    let two = Ideal::span(&z6r, &[2]);
    push(b, NAMED[6], (z6, z6, z6), id6.clone(), id6, &two, &two)?;
    Ok(out)
}

fn divisors(n: u32) -> Vec<u32> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Seeded instances A = Z/n with N₁ < n ≤ 2N₁ and canonical maps to
/// quotients Z/d.
fn random_extension(b: &mut Builder, caps: &Caps, seed: u64) -> Result<Vec<InstanceSpec>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let lo = caps.max_ring as u32 + 1;
    let hi = 2 * caps.max_ring as u32;
    for _ in 0..caps.random_instances {
        let n = rng.gen_range(lo..=hi);
        let divs = divisors(n);
        let (&db, &dc) = (
            divs.choose(&mut rng).expect("n > 1"),
            divs.choose(&mut rng).expect("n > 1"),
        );
        let a = b.ring(Ring::zmod(n)?, RingRole::RingOnly);
        let bb = b.ring(Ring::zmod(db)?, RingRole::RingOnly);
        let c = b.ring(Ring::zmod(dc)?, RingRole::RingOnly);
        let (ar, br, cr) = (
            b.rings[a].ring.clone(),
            b.rings[bb].ring.clone(),
            b.rings[c].ring.clone(),
        );
        let f = RingHom::canonical(&ar, &br)?;
        let g = RingHom::canonical(&ar, &cr)?;
        let b_ideals = b.rings[bb].facts.ideals().len();
        let bi_idx = rng.gen_range(0..b_ideals);
        let bi = b.rings[bb].facts.ideals()[bi_idx].clone();
        let i0 = bi.contract(&f)?;
        let matches: Vec<usize> = b.rings[c]
            .facts
            .ideals()
            .iter()
            .enumerate()
            .filter(|(_, ci)| {
                ci.contract(&g)
                    .map(|j| j.set() == i0.set())
                    .unwrap_or(false)
            })
            .map(|(i, _)| i)
            .collect();
        let Some(&ci_idx) = matches.choose(&mut rng) else {
            continue;
        };
        let ci = b.rings[c].facts.ideals()[ci_idx].clone();
        let order = n as usize / i0.len() * bi.len() * ci.len();
        if order > caps.max_instance {
            continue;
        }
        out.push(InstanceSpec {
            label: None,
            a,
            b: bb,
            c,
            f: b.hom(a, bb, f),
            g: b.hom(a, c, g),
            bi: bi_idx,
            ci: ci_idx,
            order,
        });
    }
    Ok(out)
}

/// Builds the catalog; deterministic in (caps, seed).
pub fn generate_catalog(caps: Caps, seed: u64) -> Result<Catalog> {
    if caps.max_ring == 0 || caps.max_instance == 0 || caps.max_poly == 0 {
        return Err(Error::Malformed("caps must be positive".into()));
    }
    if caps.max_instance < MANDATORY_ORDER {
        return Err(Error::Malformed(format!(
            "max-instance {} is below {MANDATORY_ORDER}, the order of the largest mandatory instance",
            caps.max_instance
        )));
    }
    let mut b = rings(&caps)?;
    let tier: Vec<usize> = (0..b.rings.len())
        .filter(|&i| b.rings[i].role == RingRole::Instance)
        .collect();
    let mut instances = named(&mut b)?;
    for &a in &tier {
        let order_a = b.rings[a].ring.order();
        let legs = legs(&mut b, a, &tier);
        for (x, lx) in legs.iter().enumerate() {
            let quotient = order_a / lx.preimage.count();
            for ly in &legs[x..] {
                if ly.preimage != lx.preimage {
                    continue;
                }
                let order = quotient * lx.size * ly.size;
                if order > caps.max_instance {
                    continue;
                }
                instances.push(InstanceSpec {
                    label: None,
                    a,
                    b: lx.ring,
                    c: ly.ring,
                    f: lx.hom,
                    g: ly.hom,
                    bi: lx.ideal,
                    ci: ly.ideal,
                    order,
                });
            }
        }
    }
    instances.extend(random_extension(&mut b, &caps, seed)?);
    Ok(Catalog {
        caps,
        seed,
        rings: b.rings,
        homs: b.homs,
        instances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_instances_and_orders() {
        let cat = generate_catalog(Caps::default(), 0).unwrap();
        let orders: Vec<usize> = NAMED
            .iter()
            .map(|l| cat.instances[cat.named(l).unwrap()].order)
            .collect();
        assert_eq!(orders, vec![8, 27, 64, 128, 128, 3, 18]);
        for l in NAMED {
            let i = cat.named(l).unwrap();
            assert_eq!(cat.instance(i).unwrap().r.order(), cat.instances[i].order);
        }
    }

    #[test]
    fn small_caps_are_rejected() {
        let caps = Caps {
            max_instance: 64,
            ..Caps::default()
        };
        assert!(generate_catalog(caps, 0).is_err());
    }
}
