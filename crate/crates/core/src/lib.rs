//! Turns screenplay text into timed, machine-readable action records.
//!
//! The pipeline segments a screenplay into functional blocks, simplifies the
//! Description sentences into single-action sentences by rewriting their
//! dependency trees, maps verbs and nouns onto a fixed animation knowledge
//! base, fills action records and lays them out on a storyboard timeline.
//! [`evalkit`] scores simplification output against reference annotations.

pub mod arf;
pub mod deptree;
pub mod evalkit;
pub mod lexmap;
pub mod pipeline;
pub mod script;
pub mod simplifier;
