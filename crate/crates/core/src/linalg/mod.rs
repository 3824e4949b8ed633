//! Exact linear algebra: fields, dense and sparse matrices, integer normal forms
//! and windowed Laurent series.

pub mod dense;
pub mod field;
pub mod integer;
pub mod laurent;
pub mod scalar;
pub mod sparse;

pub use dense::{Matrix, Subspace};
pub use field::{Field, Fp, F2, F3, F5, F7, Q};
pub use integer::{bareiss_rank, hermite_normal_form, smith_normal_form, SnfResult};
pub use laurent::LaurentSeries;
pub use scalar::{Domain, Scalar};
pub use sparse::SparseMatrix;
