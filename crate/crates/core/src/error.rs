use thiserror::Error;

use crate::ring::Code;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("modulus is not monic (leading coefficient {0})")]
    NonMonic(String),
    #[error("ring order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("malformed ring descriptor: {0}")]
    Malformed(String),
    #[error("element code {code} is out of range for a ring of order {order}")]
    CodeOutOfRange { code: Code, order: usize },
    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("no canonical map from {from} to {to}")]
    NoCanonicalMap { from: String, to: String },
    #[error(
        "incompatible ideals: f^-1(b) != g^-1(c), witness a = {witness} \
         (f(a) in b: {in_b}, g(a) in c: {in_c})"
    )]
    Incompatible {
        witness: Code,
        in_b: bool,
        in_c: bool,
    },
    #[error("ideal is not prime")]
    NotPrime,
    #[error("prime does not contain i0")]
    PrimeMissesI0,
    #[error("ring is not local")]
    NotLocal,
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("unknown clause `{clause}` for theorem `{theorem}`")]
    UnknownClause { theorem: String, clause: String },
    #[error("invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
