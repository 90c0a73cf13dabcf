//! DSL scripts that rebuild a ring or instance and rerun a check.
//!
//! Rings are rebuilt from their descriptors, so element codes in the script
//! coincide with the codes of the original objects.

use crate::classify::theorems::{Ablation, Theorem};
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::ring::{Ring, RingDescriptor};

/// Accumulates declarations; names are fresh per script.
#[derive(Default)]
pub struct ScriptWriter {
    lines: Vec<String>,
    counter: usize,
    rings: Vec<(u64, String)>,
}

impl ScriptWriter {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }

    pub fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    /// Declares `ring` (and any rings it depends on) and returns its name.
    /// Repeated requests for the same ring reuse the first declaration.
    pub fn ring(&mut self, ring: &Ring) -> Result<String> {
        if let Some((_, name)) = self.rings.iter().find(|(id, _)| *id == ring.id()) {
            return Ok(name.clone());
        }
        let expr = self.ring_expr(ring)?;
        let name = self.fresh("R");
        self.lines.push(format!("ring {name} = {expr};"));
        self.rings.push((ring.id(), name.clone()));
        Ok(name)
    }

    /// An inline expression for `ring`, declaring helpers as needed.
    fn ring_expr(&mut self, ring: &Ring) -> Result<String> {
        Ok(match ring.descriptor() {
            RingDescriptor::Zmod(n) => format!("Z/{n}"),
            RingDescriptor::Galois { p, k } => format!("GF({})", p.pow(*k)),
            RingDescriptor::PolyQuot { base, var, modulus } => {
                let base_expr = match base.descriptor() {
                    RingDescriptor::Zmod(_)
                    | RingDescriptor::Galois { .. }
                    | RingDescriptor::PolyQuot { .. } => self.ring_expr(base)?,
                    _ => self.ring(base)?,
                };
                format!("{base_expr}[{var}]/({})", poly_text(base, var, modulus))
            }
            RingDescriptor::Product(l, r) => {
                format!("({} * {})", self.ring_expr(l)?, self.ring_expr(r)?)
            }
            RingDescriptor::Quotient { parent, ideal } => {
                let p = self.ring(parent)?;
                let i = self.ideal_named(ideal, &p);
                format!("{p}/{i}")
            }
            RingDescriptor::Subring { .. } => {
                return Err(Error::Malformed(
                    "subrings have no script representation".into(),
                ))
            }
        })
    }

    fn ideal_named(&mut self, ideal: &Ideal, ring_name: &str) -> String {
        let name = self.fresh("I");
        let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
        self.lines.push(format!(
            "ideal {name} = span({ring_name}, [{}]);",
            gens.join(", ")
        ));
        name
    }

    pub fn ideal(&mut self, ideal: &Ideal) -> Result<String> {
        let r = self.ring(ideal.ring())?;
        Ok(self.ideal_named(ideal, &r))
    }

    pub fn hom(&mut self, h: &RingHom) -> Result<String> {
        let d = self.ring(h.domain())?;
        let c = self.ring(h.codomain())?;
        let name = self.fresh("h");
        let table: Vec<String> = h.table().iter().map(|x| x.to_string()).collect();
        self.lines.push(format!(
            "hom {name}: {d} -> {c} = images[{}];",
            table.join(", ")
        ));
        Ok(name)
    }

    pub fn biamalg(&mut self, f: &RingHom, g: &RingHom, bi: &Ideal, ci: &Ideal) -> Result<String> {
        let a = self.ring(f.domain())?;
        let fname = self.hom(f)?;
        let gname = if f == g { fname.clone() } else { self.hom(g)? };
        let bname = self.ideal(bi)?;
        let cname = if bi == ci {
            bname.clone()
        } else {
            self.ideal(ci)?
        };
        let name = self.fresh("X");
        self.lines.push(format!(
            "biamalg {name} = ({a}, {fname}, {gname}, {bname}, {cname});"
        ));
        Ok(name)
    }

    pub fn finish(self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// `thm(ID)` or `thm(ID:c1:c2)`.
pub fn thm_property(thm: &Theorem, ablation: &Ablation) -> String {
    let mut s = thm.id.to_string();
    for c in ablation.clauses() {
        s.push(':');
        s.push_str(c);
    }
    format!("thm({s})")
}

/// Monic polynomial with integer-code coefficients, highest degree first.
pub fn poly_text(base: &Ring, var: &str, coeffs: &[crate::ring::Code]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != base.zero())
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (i, c == base.one()) {
                (0, _) => c.to_string(),
                (_, true) => mono,
                _ => format!("{c}*{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn instance_script(
    f: &RingHom,
    g: &RingHom,
    bi: &Ideal,
    ci: &Ideal,
    property: &str,
) -> Result<String> {
    let mut w = ScriptWriter::new();
    let x = w.biamalg(f, g, bi, ci)?;
    w.push(format!("check {x} {property};"));
    Ok(w.finish())
}

pub fn ring_script(ring: &Ring, property: &str) -> Result<String> {
    let mut w = ScriptWriter::new();
    let r = w.ring(ring)?;
    w.push(format!("check {r} {property};"));
    Ok(w.finish())
}
