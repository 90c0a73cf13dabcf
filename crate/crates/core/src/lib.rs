//! Finite commutative rings, their ideals and homomorphisms, and
//! bi-amalgamated algebras built from them.

pub mod biamalg;
pub mod bitset;
pub mod classify;
pub mod dsl;
pub mod error;
pub mod harness;
pub mod hom;
pub mod ideal;
pub mod lattice;
pub mod localize;
pub mod par;
pub mod ring;
pub mod spectra;

pub use biamalg::BiAmalgInstance;
pub use error::{Error, Result};
pub use hom::{HomSpec, RingHom};
pub use ideal::Ideal;
pub use par::Exec;
pub use ring::{Code, Ring, RingDescriptor};
