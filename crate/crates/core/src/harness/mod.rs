//! Catalog generation, suite runs, counterexample search and replay
//! scripts.

pub mod catalog;
pub mod replay;
pub mod suite;

pub use catalog::{generate_catalog, Caps, Catalog, CatalogRing, InstanceSpec, RingRole, NAMED};
pub use replay::{instance_script, ring_script, thm_property, ScriptWriter};
pub use suite::{
    counterexample_search, full_selection, run_suite, Failure, SearchOutcome, SuiteReport,
    TheoremResult,
};
