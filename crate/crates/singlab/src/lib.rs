//! Exact invariants of isolated hypersurface singularities: Newton polyhedra
//! and Newton numbers, Kouchnirenko non-degeneracy, Milnor numbers by a
//! Newton route and by an independent Macaulay-truncation oracle, and
//! one-parameter deformation analysis (mu-constancy, equimultiplicity,
//! topological-triviality verdict).
//!
//! All arithmetic is exact rational; there is no floating point on any
//! computation path.

// error values carry exact big integers; the fallible paths are cold
#![allow(clippy::result_large_err)]

pub mod error;
pub mod exec;
pub mod family;
pub mod ideal;
pub mod invariants;
pub mod newton;
pub mod poly;

pub use error::{Error, Result};
pub use family::{analyze_family, DeformationFamily, FamilyOptions, FamilyReport};
pub use invariants::{analyze, AnalyzeOptions, InvariantReport};
pub use newton::{newton_complex, newton_number, NewtonComplex};
pub use poly::{parse_poly, Coefficient, ExponentVector, HyperplaneSpec, Polynomial};
