//! Finite covers of a surface with free fundamental group inside Γ(2):
//! cyclic words, word matrices, trace spectra and Schreier graphs.

pub mod base;
pub mod floor;
pub mod schreier;
pub mod spectrum;
pub mod words;

pub use floor::class_counts_by_trace;
pub use base::{power_trace, word_matrix, FreeBase, Mat2};
pub use schreier::{schreier_adjacency, schreier_charpoly, schreier_spectrum_compare, SchreierComparison, SchreierMode};
pub use spectrum::{
    compare_spectra, cover_trace_spectrum, coset_cycle_type, spectrum_from_catalog, BaseCatalog, CompareMode,
    Divergence, Homomorphism, SpectrumComparison, SpectrumKind, TraceSpectrum,
};
pub use words::{cyclic_classes, cyclic_classes_of_rank, CyclicClass, FreeWord};
