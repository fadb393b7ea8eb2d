//! Linear orders, their dual compact lines, and increasing retractions.
//!
//! [`order`] presents linear orders by construction, [`duality`] implements the
//! finite duality with compact lines and the projection built from a right
//! inverse, and [`kurepa`] works with the lexicographic orders of finite-support
//! rational vectors on an ordinal, their filtrations and gap fillers.
//! [`oracle`] holds brute-force checkers for the finite statements.

pub mod cli;
pub mod dsl;
pub mod duality;
pub mod kurepa;
pub mod oracle;
pub mod order;
pub mod ordinal;
pub mod rational;
pub mod report;
