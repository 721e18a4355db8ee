//! Exact rational cohomology of nilpotent and solvable Lie algebras.
//!
//! Starting from structure constants over the rationals, this crate
//! builds the Chevalley-Eilenberg complex on the dual exterior
//! algebra, computes its cohomology ring with explicit representative
//! cocycles, and derives topological invariants of the associated
//! compact quotient manifold: cup-length, Lusternik-Schnirelmann
//! category, cohomological symplecticness with an explicit witness
//! class, and lower bounds on the number of closed orbits of magnetic
//! flows on symplectic nilmanifolds. Every computation is exact; no
//! floating point is used anywhere.

pub mod error;
pub mod linalg;
pub mod poly;
pub mod exterior;
pub mod lie;
pub mod catalog;
pub mod ce_complex;
pub mod cohomology;
pub mod invariants;
pub mod bounds;
pub mod io;

pub use error::{Error, Result};
