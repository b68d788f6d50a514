//! Exact calculus of Lie-algebra-valued differential forms and of
//! non-abelian Čech–de Rham cocycles for gerbes with connection and curving.
//!
//! Every identity is checked as an exact polynomial identity over the
//! rationals; there are no tolerances anywhere.

pub mod crossed;
pub mod cech;
pub mod error;
pub mod format;
pub mod forms;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod report;
pub mod ring;
pub mod simplicial;
pub mod suite;
pub mod weil;

pub use error::{Error, Result};
