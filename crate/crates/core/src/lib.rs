//! Exact computations with sl3 webs and closed sl3 foams.

pub mod coloring;
pub mod enumeration;
pub mod foam;
pub mod gornik;
pub mod homdim;
pub mod qpoly;
pub mod reptheory;
pub mod signs;
pub mod skein;
pub mod web;

pub use qpoly::{quantum_integer, LaurentPoly};
pub use signs::{Sign, SignSequence};
pub use web::{trace_close, Web, WebError};
