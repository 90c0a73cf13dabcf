//! DOT rendering of prime spectra. Primes of a finite ring are maximal, so
//! the specialization order is discrete and every node is isolated.

use std::fmt::Write;

use crate::biamalg::BiAmalgInstance;
use crate::error::Result;
use crate::ring::Ring;
use crate::spectra::{assemble_spec, ring_spec};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn graph_name(name: &str) -> String {
    format!("\"spec {}\"", escape(name))
}

const DISCRETE: &str = "  // finite ring: all primes are maximal, so no specialization edges\n";

pub fn ring_dot(name: &str, ring: &Ring) -> String {
    let mut out = format!("digraph {} {{\n{DISCRETE}", graph_name(name));
    for (k, p) in ring_spec(ring).iter().enumerate() {
        writeln!(out, "  p{k} [label=\"{}\"];", escape(&p.display())).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Primes of R labeled by generators, with their provenance tag and the
/// prime of A, B or C they come from.
pub fn instance_dot(name: &str, inst: &BiAmalgInstance) -> Result<String> {
    let report = assemble_spec(inst)?;
    let mut out = format!("digraph {} {{\n{DISCRETE}", graph_name(name));
    for (k, p) in report.primes.iter().enumerate() {
        let tag = p.provenance.tag();
        writeln!(
            out,
            "  p{k} [label=\"{}\\n{tag} of {}\", provenance=\"{tag}\"];",
            escape(&p.ideal.display()),
            escape(&p.source.display())
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::RingHom;
    use crate::ideal::Ideal;

    fn nodes(dot: &str) -> Vec<&str> {
        dot.lines()
            .filter(|l| l.trim_start().starts_with('p'))
            .collect()
    }

    #[test]
    fn spec_of_z12() {
        let dot = ring_dot("Z12", &Ring::zmod(12).unwrap());
        let n = nodes(&dot);
        assert_eq!(n.len(), 2);
        assert!(n[0].contains("label=\"(2)\"") || n[1].contains("label=\"(2)\""));
        assert!(n.iter().any(|l| l.contains("label=\"(3)\"")));
        assert!(!dot.contains("->"));
        assert!(dot.contains("// finite ring"));
    }

    #[test]
    fn duplication_z6_has_all_three_tags() {
        let z6 = Ring::zmod(6).unwrap();
        let id = RingHom::identity(&z6);
        let i = Ideal::span(&z6, &[2]);
        let inst = BiAmalgInstance::new(&id, &id, &i, &i).unwrap();
        let dot = instance_dot("D", &inst).unwrap();
        let n = nodes(&dot);
        assert_eq!(n.len(), 3);
        for tag in ["bowtie", "sharp-B", "sharp-C"] {
            assert_eq!(
                n.iter()
                    .filter(|l| l.contains(&format!("provenance=\"{tag}\"")))
                    .count(),
                1
            );
        }
    }
}
