//! Deciding whether a frame, in a given order, is the orbit `{T^n f0}` of a
//! bounded operator, and what that operator looks like.

mod circulant;
mod classify;
mod components;
mod generator;
mod kernel;
mod necessary;
mod search;
mod verdict;

pub use circulant::{circulant_cross_gram_test, gram_shift_test, shift_structure, ShiftStructure, Violation};
pub use classify::{classify_operator, ClassFlags, OperatorClass, NORM_BOUND_SLACK};
pub use components::{
    imprimitivity_obstruction, orthogonality_components, DecompositionReport, Obstruction, ObstructionVerdict,
};
pub use generator::{build_generator, verify_orbit, Generator, OrbitReport};
pub use kernel::{kernel_shift_invariance, KernelCertificate, KernelShiftResult, ShiftDirection};
pub use necessary::{necessary_conditions, NecessaryReport};
pub use search::{ordering_search, ordering_search_with, SearchMode, SearchResult, SearchVerdict, EXHAUSTIVE_CAP};
pub use verdict::{represent, Criterion, RepresentabilityVerdict};

#[cfg(test)]
mod tests;
