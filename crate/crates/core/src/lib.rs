//! Reidemeister spectra of 2-step nilpotent quotients of right-angled Artin
//! groups.
//!
//! The pipeline: a [`graph::Graph`] fixes the group ([`nilgroup`]), an
//! integer matrix on the generators fixes an endomorphism ([`morphism`]),
//! and [`spectra`] collects the Reidemeister numbers of automorphisms, by
//! closed form where one is known and by bounded search otherwise.
//! [`oracle`] recounts twisted classes by brute force in finite quotients.

pub mod exactlin;
pub mod graph;
pub mod morphism;
pub mod nilgroup;
pub mod oracle;
pub mod par;
pub mod spectra;

pub use exactlin::{ExtNat, IntMatrix};
pub use graph::Graph;
pub use morphism::{Endo, ReidemeisterResult};
pub use nilgroup::{GroupElement, Presentation};
pub use spectra::{SpectrumForm, SpectrumReport};
