//! Reidemeister spectra: bounded search, closed forms and decomposition.

pub mod catalog;
pub mod decompose;
pub mod form;
pub mod report;
pub mod search;

pub use decompose::{
    classify, detect_r_infinity, spectrum_by_decomposition, Classification, RInfinityRule,
};
pub use form::{FormError, SpectrumForm};
pub use report::{classification_for, compute_spectrum_report, SpectrumReport};
pub use search::{
    automorphism_matrices, enumerate_automorphisms, fold_automorphisms, search_spectrum, AutMatrix,
    SearchError, SearchOptions, SearchResult, SearchStats,
};
