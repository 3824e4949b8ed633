//! The KLR algebra `H_alpha`: normal forms, multiplication, the anti-automorphism and
//! distinguished central elements.

pub mod basis;
pub mod central;
pub mod coset;
pub mod element;
pub mod engine;
pub mod perm;
pub mod polyrep;

pub use element::{KlrElement, Mono, TermJson, Word};
pub use engine::{braid_defect_poly, quadratic_poly, Generator, KlrAlgebra, Poly};
pub use perm::Perm;
pub use central::CentralityCertificate;
pub use coset::{split_parabolic, CosetTerm};
