//! Integral forms, reduction modulo primes, decomposition and adjustment matrices, and
//! Ext windows over different fields.

pub mod ext;
pub mod lattice;
pub mod matrices;

pub use lattice::{integral_form, ComponentLattice, IntegralLattice};
pub use matrices::{adjustment_matrix, decomposition_matrix, sorted_partitions, AdjustmentReport, LaurentMatrix};
pub use ext::{ext1_stable, ext1_window, torsion_report, torsion_reports, Ext1Degree, Ext1Window, TorsionDegree, TorsionReport};
