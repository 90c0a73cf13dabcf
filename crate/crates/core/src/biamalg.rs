//! Bi-amalgamated algebras `R = {(f(a)+b, g(a)+c)} ⊆ B×C`.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::{sum_sets, Ideal};
use crate::ring::{Code, Ring};

/// A validated bi-amalgamation together with its derived ideals and
/// canonical maps. Immutable after construction.
#[derive(Clone)]
pub struct BiAmalgInstance {
    pub a: Ring,
    pub b: Ring,
    pub c: Ring,
    pub f: RingHom,
    pub g: RingHom,
    /// The ideal 𝔟 of B.
    pub bi: Ideal,
    /// The ideal 𝔠 of C.
    pub ci: Ideal,
    /// f⁻¹(𝔟) = g⁻¹(𝔠).
    pub i0: Ideal,
    /// Ker f ∩ Ker g.
    pub k: Ideal,
    pub bc: Ring,
    /// R as a subring of `bc`.
    pub r: Ring,
    pub a_mod_i0: Ring,
    pub a_mod_k: Ring,
    pub b_mod: Ring,
    pub c_mod: Ring,
    /// B/𝔟 × C/𝔠.
    pub target: Ring,
    /// R → A/𝔦₀.
    pub p: RingHom,
    /// A/𝔨 → R.
    pub iota: RingHom,
    /// A/𝔦₀ → B/𝔟 × C/𝔠.
    pub i_fg: RingHom,
    /// B×C → B/𝔟 × C/𝔠.
    pub pi: RingHom,
    /// R ⊆ B×C.
    pub incl: RingHom,
    pub proj_b: RingHom,
    pub proj_c: RingHom,
    /// 𝔟×𝔠 as an ideal of R.
    pub bxc: Ideal,
}

impl std::fmt::Debug for BiAmalgInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}⋈({} -> {}, {} -> {}; {}, {}) of order {}",
            self.a,
            self.a,
            self.b,
            self.a,
            self.c,
            self.bi.display(),
            self.ci.display(),
            self.r.order()
        )
    }
}

/// Smallest `a` in the symmetric difference of f⁻¹(𝔟) and g⁻¹(𝔠).
pub fn compatibility_witness(f: &RingHom, g: &RingHom, bi: &Ideal, ci: &Ideal) -> Option<Code> {
    f.domain()
        .elements()
        .find(|&a| bi.contains(f.apply(a)) != ci.contains(g.apply(a)))
}

impl BiAmalgInstance {
    pub fn new(f: &RingHom, g: &RingHom, bi: &Ideal, ci: &Ideal) -> Result<Self> {
        let a = f.domain().clone();
        if g.domain() != &a {
            return Err(Error::RingMismatch);
        }
        let (b, c) = (f.codomain().clone(), g.codomain().clone());
        if bi.ring() != &b || ci.ring() != &c {
            return Err(Error::RingMismatch);
        }
        if let Some(w) = compatibility_witness(f, g, bi, ci) {
            return Err(Error::Incompatible {
                witness: w,
                in_b: bi.contains(f.apply(w)),
                in_c: ci.contains(g.apply(w)),
            });
        }
        let i0 = bi.contract(f)?;
        let k = f.kernel().intersect(&g.kernel())?;

        let bc = Ring::product(&b, &c)?;
        let mut members = BitSet::new(bc.order());
        for x in a.elements() {
            let (fx, gx) = (f.apply(x), g.apply(x));
            for s in bi.iter() {
                let first = b.add(fx, s);
                for t in ci.iter() {
                    members.insert(bc.pair(first, c.add(gx, t)) as usize);
                }
            }
        }
        let elems: Vec<Code> = members.iter().map(|x| x as Code).collect();
        let r = Ring::subring(&bc, &elems)?;

        let a_mod_i0 = Ring::quotient(&i0)?;
        let a_mod_k = Ring::quotient(&k)?;
        let b_mod = Ring::quotient(bi)?;
        let c_mod = Ring::quotient(ci)?;
        let target = Ring::product(&b_mod, &c_mod)?;
        let to_i0 = RingHom::canonical(&a, &a_mod_i0)?;
        let to_bm = RingHom::canonical(&b, &b_mod)?;
        let to_cm = RingHom::canonical(&c, &c_mod)?;

        let r_code = |x: Code, y: Code| r.subring_index(bc.pair(x, y)).expect("member of R");

        let mut p_table = vec![Code::MAX; r.order()];
        for x in a.elements() {
            let (fx, gx) = (f.apply(x), g.apply(x));
            let cls = to_i0.apply(x);
            for s in bi.iter() {
                for t in ci.iter() {
                    let slot = &mut p_table[r_code(b.add(fx, s), c.add(gx, t)) as usize];
                    if *slot == Code::MAX {
                        *slot = cls;
                    } else if *slot != cls {
                        return Err(Error::Internal("p is not well defined".into()));
                    }
                }
            }
        }
        let p = RingHom::from_table(&r, &a_mod_i0, p_table)?;

        let (_, k_reps, _) = a_mod_k.quotient_parts().expect("quotient ring");
        let iota_table = k_reps
            .iter()
            .map(|&x| r_code(f.apply(x), g.apply(x)))
            .collect();
        let iota = RingHom::from_table(&a_mod_k, &r, iota_table)?;

        let (_, i0_reps, _) = a_mod_i0.quotient_parts().expect("quotient ring");
        let i_fg_table = i0_reps
            .iter()
            .map(|&x| target.pair(to_bm.apply(f.apply(x)), to_cm.apply(g.apply(x))))
            .collect();
        let i_fg = RingHom::from_table(&a_mod_i0, &target, i_fg_table)?;

        let pi_table = bc
            .elements()
            .map(|z| {
                let (x, y) = bc.split(z);
                target.pair(to_bm.apply(x), to_cm.apply(y))
            })
            .collect();
        let pi = RingHom::from_table(&bc, &target, pi_table)?;

        let incl = RingHom::canonical(&r, &bc)?;
        let proj_b = RingHom::from_table(
            &r,
            &b,
            incl.table().iter().map(|&z| bc.split(z).0).collect(),
        )?;
        let proj_c = RingHom::from_table(
            &r,
            &c,
            incl.table().iter().map(|&z| bc.split(z).1).collect(),
        )?;

        let mut bxc_set = BitSet::new(r.order());
        for s in bi.iter() {
            for t in ci.iter() {
                bxc_set.insert(r_code(s, t) as usize);
            }
        }
        let bxc = Ideal::from_set(&r, bxc_set)?;

        Ok(BiAmalgInstance {
            a,
            b,
            c,
            f: f.clone(),
            g: g.clone(),
            bi: bi.clone(),
            ci: ci.clone(),
            i0,
            k,
            bc,
            r,
            a_mod_i0,
            a_mod_k,
            b_mod,
            c_mod,
            target,
            p,
            iota,
            i_fg,
            pi,
            incl,
            proj_b,
            proj_c,
            bxc,
        })
    }

    /// Code in R of the pair (x, y) of B×C, if it lies in R.
    pub fn r_code(&self, x: Code, y: Code) -> Option<Code> {
        self.r.subring_index(self.bc.pair(x, y))
    }

    /// The pair (x, y) ∈ B×C of an element of R.
    pub fn coords(&self, r: Code) -> (Code, Code) {
        self.bc.split(self.incl.apply(r))
    }

    /// Code in R of (f(a)+b, g(a)+c).
    pub fn element(&self, a: Code, b: Code, c: Code) -> Code {
        let x = self.b.add(self.f.apply(a), b);
        let y = self.c.add(self.g.apply(a), c);
        self.r_code(x, y).expect("(f(a)+b, g(a)+c) lies in R")
    }

    /// Some `a ∈ A` with `r = (f(a)+b, g(a)+c)` for suitable b, c.
    pub fn lift_a(&self, r: Code) -> Code {
        let (_, reps, _) = self.a_mod_i0.quotient_parts().expect("quotient ring");
        reps[self.p.apply(r) as usize]
    }

    /// 𝔞⋈(𝔟,𝔠) = {(f(p)+b, g(p)+c) : p ∈ 𝔞, b ∈ 𝔟, c ∈ 𝔠}.
    pub fn ideal_bowtie(&self, ideal_a: &Ideal) -> Result<Ideal> {
        if ideal_a.ring() != &self.a {
            return Err(Error::RingMismatch);
        }
        let mut set = BitSet::new(self.r.order());
        for x in ideal_a.iter() {
            for s in self.bi.iter() {
                for t in self.ci.iter() {
                    set.insert(self.element(x, s, t) as usize);
                }
            }
        }
        let ideal = Ideal::from_set(&self.r, set)?;
        if !self.bxc.is_subset(&ideal) {
            return Err(Error::Internal("bowtie ideal misses b x c".into()));
        }
        Ok(ideal)
    }

    /// 𝔧^{♯B} = {r ∈ R : first coordinate in 𝔧}, cross-checked against the
    /// contraction of 𝔧×C along R ⊆ B×C.
    pub fn sharp_b(&self, j: &Ideal) -> Result<Ideal> {
        if j.ring() != &self.b {
            return Err(Error::RingMismatch);
        }
        self.sharp(
            |x, _| j.contains(x),
            |bc_code| j.contains(self.bc.split(bc_code).0),
        )
    }

    /// 𝔧′^{♯C}, the C-side analog of [`Self::sharp_b`].
    pub fn sharp_c(&self, j: &Ideal) -> Result<Ideal> {
        if j.ring() != &self.c {
            return Err(Error::RingMismatch);
        }
        self.sharp(
            |_, y| j.contains(y),
            |bc_code| j.contains(self.bc.split(bc_code).1),
        )
    }

    fn sharp(
        &self,
        keep: impl Fn(Code, Code) -> bool,
        in_product_ideal: impl Fn(Code) -> bool,
    ) -> Result<Ideal> {
        let mut direct = BitSet::new(self.r.order());
        for x in self.a.elements() {
            for s in self.bi.iter() {
                for t in self.ci.iter() {
                    let first = self.b.add(self.f.apply(x), s);
                    let second = self.c.add(self.g.apply(x), t);
                    if keep(first, second) {
                        direct.insert(self.r_code(first, second).expect("in R") as usize);
                    }
                }
            }
        }
        let direct = Ideal::from_set(&self.r, direct)?;
        let product_ideal = Ideal::from_set(
            &self.bc,
            BitSet::from_iter_with_len(
                self.bc.order(),
                self.bc
                    .elements()
                    .filter(|&z| in_product_ideal(z))
                    .map(|z| z as usize),
            ),
        )?;
        let contracted = product_ideal.contract(&self.incl)?;
        if contracted != direct {
            return Err(Error::Internal(
                "sharp ideal differs from the contraction".into(),
            ));
        }
        Ok(direct)
    }

    pub fn canonical_maps(&self) -> CanonicalMapsReport {
        let ker_p = self.p.kernel();
        CanonicalMapsReport {
            p_surjective: self.p.is_surjective(),
            ker_p_is_bxc: ker_p == self.bxc,
            ker_p_size: ker_p.len(),
            iota_injective: self.iota.is_injective(),
            i_fg_injective: self.i_fg.is_injective(),
            pi_surjective: self.pi.is_surjective(),
        }
    }

    pub fn verify_fiber_product(&self) -> FiberProductReport {
        let image = self.i_fg.image();
        let pullback: Vec<Code> = self
            .bc
            .elements()
            .filter(|&z| image.contains(self.pi.apply(z) as usize))
            .collect();
        let members: Vec<Code> = self.incl.table().to_vec();
        let set_equal = pullback == members;
        let diagram_commutes = self
            .r
            .elements()
            .all(|x| self.pi.apply(self.incl.apply(x)) == self.i_fg.apply(self.p.apply(x)));
        let expected = self.a_mod_i0.order() * self.bi.len() * self.ci.len();
        FiberProductReport {
            set_equal,
            diagram_commutes,
            r_order: self.r.order(),
            expected_order: expected,
            size_identity: self.r.order() == expected,
        }
    }

    /// Generating sets from the finiteness remarks, verified by closure.
    pub fn module_generators(&self) -> ModuleGenerators {
        let b_gens = module_basis(&self.b, &self.f, &self.bi.set().clone());
        let c_gens = module_basis(&self.c, &self.g, &self.ci.set().clone());
        let mut r_gens = vec![self.r.one()];
        r_gens.extend(
            b_gens
                .iter()
                .map(|&x| self.r_code(x, 0).expect("(b,0) in R")),
        );
        r_gens.extend(
            c_gens
                .iter()
                .map(|&y| self.r_code(0, y).expect("(0,c) in R")),
        );
        let scalars: Vec<Code> = self.iota.table().to_vec();
        let span = module_span(&self.r, &scalars, &r_gens);
        let r_generated = span.count() == self.r.order();

        let full_b = BitSet::full(self.b.order());
        let full_c = BitSet::full(self.c.order());
        let x_gens = module_basis(&self.b, &self.f, &full_b);
        let y_gens = module_basis(&self.c, &self.g, &full_c);
        let mut bc_gens: Vec<Code> = x_gens.iter().map(|&x| self.bc.pair(x, 0)).collect();
        bc_gens.extend(y_gens.iter().map(|&y| self.bc.pair(0, y)));
        let bc_span = module_span(&self.bc, self.incl.table(), &bc_gens);
        ModuleGenerators {
            r_over_a_mod_k: r_gens,
            r_generated,
            bc_over_r: bc_gens,
            bc_generated: bc_span.count() == self.bc.order(),
        }
    }
}

/// Greedy generators of the A-submodule `set` of M (A acting through h).
fn module_basis(m: &Ring, h: &RingHom, set: &BitSet) -> Vec<Code> {
    let scalars: Vec<Code> = h.table().to_vec();
    let mut gens = Vec::new();
    let mut span = BitSet::from_iter_with_len(m.order(), [0]);
    for x in set.iter() {
        if !span.contains(x) {
            gens.push(x as Code);
            span = module_span(m, &scalars, &gens);
        }
    }
    gens
}

/// Additive closure of `{s·g : s ∈ scalars, g ∈ gens}` inside `m`.
/// `scalars` must be an additive subgroup closed under multiplication.
fn module_span(m: &Ring, scalars: &[Code], gens: &[Code]) -> BitSet {
    let mut span = BitSet::from_iter_with_len(m.order(), [0]);
    for &g in gens {
        let multiples =
            BitSet::from_iter_with_len(m.order(), scalars.iter().map(|&s| m.mul(s, g) as usize));
        span = sum_sets(m, &span, &multiples);
    }
    span
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMapsReport {
    pub p_surjective: bool,
    pub ker_p_is_bxc: bool,
    pub ker_p_size: usize,
    pub iota_injective: bool,
    pub i_fg_injective: bool,
    pub pi_surjective: bool,
}

impl CanonicalMapsReport {
    pub fn ok(&self) -> bool {
        self.p_surjective
            && self.ker_p_is_bxc
            && self.iota_injective
            && self.i_fg_injective
            && self.pi_surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProductReport {
    pub set_equal: bool,
    pub diagram_commutes: bool,
    pub r_order: usize,
    pub expected_order: usize,
    pub size_identity: bool,
}

impl FiberProductReport {
    pub fn ok(&self) -> bool {
        self.set_equal && self.diagram_commutes && self.size_identity
    }
}

#[derive(Clone, Debug)]
pub struct ModuleGenerators {
    /// {(1,1), (bᵢ,0), (0,cⱼ)} as codes of R.
    pub r_over_a_mod_k: Vec<Code>,
    pub r_generated: bool,
    /// {(xᵢ,0), (0,yⱼ)} as codes of B×C.
    pub bc_over_r: Vec<Code>,
    pub bc_generated: bool,
}

/// The amalgamation `A⋈^f 𝔟` in both coordinate orders.
#[derive(Clone, Debug)]
pub struct Amalgamation {
    /// A⋈^{f,Id}(𝔟, 𝔦₀), a subring of B×A.
    pub instance: BiAmalgInstance,
    /// A⋈^{Id,f}(𝔦₀, 𝔟), a subring of A×B.
    pub swapped: BiAmalgInstance,
    /// {(a, f(a)+b)} ⊆ A×B, the classical amalgamation.
    pub classical: Ring,
    /// instance.r → classical, (x, y) ↦ (y, x).
    pub swap: RingHom,
    /// The swapped instance has exactly the classical element set.
    pub swapped_matches_classical: bool,
}

pub fn amalgamation_special(f: &RingHom, bi: &Ideal) -> Result<Amalgamation> {
    let a = f.domain().clone();
    let b = f.codomain().clone();
    let id = RingHom::identity(&a);
    let i0 = bi.contract(f)?;
    let instance = BiAmalgInstance::new(f, &id, bi, &i0)?;
    let swapped = BiAmalgInstance::new(&id, f, &i0, bi)?;

    let ab = Ring::product(&a, &b)?;
    let mut members = BitSet::new(ab.order());
    for x in a.elements() {
        for s in bi.iter() {
            members.insert(ab.pair(x, b.add(f.apply(x), s)) as usize);
        }
    }
    let elems: Vec<Code> = members.iter().map(|x| x as Code).collect();
    let classical = Ring::subring(&ab, &elems)?;

    let swap_table = instance
        .r
        .elements()
        .map(|z| {
            let (x, y) = instance.coords(z);
            classical
                .subring_index(ab.pair(y, x))
                .ok_or_else(|| Error::Internal("swap leaves the classical amalgamation".into()))
        })
        .collect::<Result<Vec<Code>>>()?;
    let swap = RingHom::from_table(&instance.r, &classical, swap_table)?;
    if !swap.is_bijective() {
        return Err(Error::Internal("coordinate swap is not bijective".into()));
    }
    let swapped_elems: Vec<Code> = swapped
        .r
        .elements()
        .map(|z| {
            let (x, y) = swapped.coords(z);
            ab.pair(x, y)
        })
        .collect();
    let mut sorted = swapped_elems;
    sorted.sort_unstable();
    Ok(Amalgamation {
        swapped_matches_classical: sorted == elems,
        instance,
        swapped,
        classical,
        swap,
    })
}

/// The duplication A⋈𝔞 = A⋈^{Id,Id}(𝔞, 𝔞).
pub fn duplication(ideal: &Ideal) -> Result<BiAmalgInstance> {
    let id = RingHom::identity(ideal.ring());
    BiAmalgInstance::new(&id, &id, ideal, ideal)
}
