//! Catalog of pairs, deterministic random inputs, the verification suites and
//! their reports.

pub mod catalog;
pub mod documents;
pub mod family;
pub mod random;
pub mod report;
pub mod suites;

pub use catalog::{catalog, find, CatalogEntry};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};
