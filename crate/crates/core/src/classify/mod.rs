//! Gaussian and Prüfer decisions, the regularity conditions on
//! bi-amalgamations, and the theorem registry used by the harness.

mod conditions;
mod gauss;
mod poly;
mod prufer;
pub mod theorems;

use serde::Serialize;

use crate::ring::Code;

pub use conditions::{
    condition_checks, is_total_fractions, lemma_idquad_check, lemma_idquad_with,
    regular_transfer_through, total_quotient_and_torsion, zero_divisor_dichotomy, ConditionReport,
    Dichotomy, IdQuadReport, TorsionReport,
};
pub use gauss::{
    gauss_definitional, gauss_polynomial_oracle, ht_pair_fails, is_gaussian, is_gaussian_with,
    DEFINITIONAL_LIMIT,
};
pub use poly::{content_ideal, Polynomial, DEFAULT_DEGREE_BOUND};
pub use prufer::{
    is_invertible, is_prufer, is_prufer_with, regular_total_order, Invertibility, PRUFER_GENERATORS,
};

/// The only regular elements of a finite ring are units.
pub const NOTE_REGULAR_UNITS: &str = "finite ring: Reg = units";
/// A regular ideal of a finite ring contains a unit, so the Prüfer
/// condition only ever concerns the unit ideal.
pub const NOTE_PRUFER: &str =
    "finite ring: regular ideal <=> unit ideal, so every finite ring is Prufer";
/// The total ring of fractions of a finite ring is the ring itself.
pub const NOTE_INVERTIBLE: &str = "finite ring: Q = R, so invertible <=> unit ideal";
pub const NOTE_TOTAL_FRACTIONS: &str =
    "finite ring: every non-unit is a zero-divisor, so every finite ring is a total ring of fractions";
pub const NOTE_UNFALSIFIABLE: &str =
    "conclusion is Prufer, which no finite ring violates; only the hypotheses are exercised";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    Element(Code),
    Pair(Code, Code),
    /// A pair of ring elements whose images fail in the localization at
    /// the maximal ideal with the given generators.
    LocalizedPair {
        maximal: Vec<Code>,
        x: Code,
        y: Code,
    },
    Ideal(Vec<Code>),
    Polynomials {
        f: Vec<Code>,
        g: Vec<Code>,
    },
    Text(String),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Element(x) => write!(f, "element {x}"),
            Witness::Pair(x, y) => write!(f, "pair ({x}, {y})"),
            Witness::LocalizedPair { maximal, x, y } => {
                write!(f, "pair ({x}, {y}) at the maximal ideal {maximal:?}")
            }
            Witness::Ideal(gens) => write!(f, "ideal {gens:?}"),
            Witness::Polynomials { f: p, g } => write!(f, "f = {p:?}, g = {g:?}"),
            Witness::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub notes: Vec<&'static str>,
}

impl PropertyVerdict {
    pub fn new(property: &str, holds: bool) -> Self {
        PropertyVerdict {
            property: property.into(),
            holds,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: &'static str) -> Self {
        self.notes.push(note);
        self
    }
}
