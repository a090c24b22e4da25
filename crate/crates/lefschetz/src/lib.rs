//! Exact-rational models of cohomology rings as graded Frobenius algebras,
//! the Lefschetz operators built on them, the Leray splitting of a pencil on
//! the blow-up, and verification suites for the identities relating them.
pub mod absolute;
pub mod blowup;
pub mod bootstrap;
pub mod chern;
pub mod closure;
pub mod fixtures;
pub mod graded;
pub mod hyperplane;
pub mod io;
pub mod leray;
pub mod linalg;
pub mod model;
pub mod relative;
pub mod report;
pub mod section;
pub mod suite;
