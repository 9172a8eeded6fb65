//! Exact certificates for the identities of the nonexistence argument.

pub mod appendix;
pub mod catalog;
pub mod constraints;
pub mod context;
pub mod derivation;
pub mod engine;
pub mod run;
pub mod symbols;
