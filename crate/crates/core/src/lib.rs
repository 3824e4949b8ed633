//! Exact computations with finite type KLR (quiver Hecke) algebras: normal forms, graded
//! modules, cuspidal and standard modules, and their integral forms.

pub mod error;
pub mod algebra;
pub mod linalg;
pub mod modular;
pub mod modules;
pub mod roots;
pub mod standard;

pub use error::{KlrError, Result};
