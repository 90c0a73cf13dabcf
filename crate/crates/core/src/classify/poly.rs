//! Polynomials over a finite ring and their content ideals.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Code, Ring};

pub const DEFAULT_DEGREE_BOUND: usize = 3;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    /// Constant term first; no trailing zeros.
    coeffs: Vec<Code>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Polynomial {
    pub fn new(ring: &Ring, coeffs: &[Code]) -> Result<Polynomial> {
        for &c in coeffs {
            ring.check_code(c)?;
        }
        Ok(Self::trimmed(ring, coeffs.to_vec()))
    }

    /// Fails when the degree exceeds `bound`.
    pub fn bounded(ring: &Ring, coeffs: &[Code], bound: usize) -> Result<Polynomial> {
        let p = Self::new(ring, coeffs)?;
        match p.degree() {
            Some(d) if d > bound => Err(Error::Malformed(format!(
                "polynomial degree {d} exceeds the bound {bound}"
            ))),
            _ => Ok(p),
        }
    }

    fn trimmed(ring: &Ring, mut coeffs: Vec<Code>) -> Polynomial {
        while coeffs.last() == Some(&ring.zero()) {
            coeffs.pop();
        }
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Code] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Self::trimmed(
            &self.ring,
            mul_coeffs(&self.ring, &self.coeffs, &other.coeffs),
        ))
    }

    pub fn content(&self) -> Ideal {
        content_ideal(self)
    }

    pub fn display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != self.ring.zero())
            .map(|(i, &c)| {
                let c = self.ring.format_elem(c);
                match i {
                    0 => c,
                    1 => format!("({c})T"),
                    _ => format!("({c})T^{i}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

pub(crate) fn mul_coeffs(ring: &Ring, f: &[Code], g: &[Code]) -> Vec<Code> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == ring.zero() {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(a, b));
        }
    }
    out
}

/// The ideal generated by the coefficients.
pub fn content_ideal(p: &Polynomial) -> Ideal {
    Ideal::span(&p.ring, &p.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_examples() {
        let z6 = Ring::zmod(6).unwrap();
        assert!(Polynomial::new(&z6, &[2, 3]).unwrap().content().is_unit());
        assert!(Polynomial::new(&z6, &[0, 0]).unwrap().content().is_zero());
        let f2 = Ring::zmod(2).unwrap();
        let d = Ring::poly_quot(&f2, "x", &[0, 0, 1]).unwrap();
        let p = Polynomial::new(&d, &[2, 2]).unwrap();
        assert_eq!(p.content(), Ideal::span(&d, &[2]));
    }

    #[test]
    fn trimming_and_bounds() {
        let z4 = Ring::zmod(4).unwrap();
        let p = Polynomial::new(&z4, &[1, 2, 0, 0]).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::bounded(&z4, &[0, 0, 0, 0, 1], 3).is_err());
        let q = p.mul(&p).unwrap();
        // (1+2T)^2 = 1 + 4T + 4T^2 = 1 in Z/4
        assert_eq!(q.coeffs(), &[1]);
    }
}
