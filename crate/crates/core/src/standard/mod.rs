//! Cuspidal simples, standard and reduced standard modules, and verification suites.

pub mod delta;
pub mod family;
pub mod power;
pub mod verify;

pub use family::{DeltaPath, Family, ReducedStandard};
pub use delta::{central_standard, extend_once, layers_for};
pub use power::{degree_zero_endomorphisms, primitive_idempotents, Endo};
pub use verify::{endomorphism_series, EndRingReport, FreenessReport, HomVanishingReport, PairReport};
