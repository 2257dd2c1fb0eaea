//! lcm-lattices and the usual and stepwise lcm-filtrations of monomial
//! ideals, with their applications to graph cut ideals, coherent-system
//! signatures and persistence-based sensitivity analysis.

pub mod error;
pub mod filtration;
pub mod graph;
pub mod guard;
pub mod lattice;
pub mod monomial;
pub mod numfmt;
pub mod persistence;
pub mod reliability;
pub mod simplicial;

pub use error::{Error, Result};
pub use guard::Guards;
pub use monomial::{Monomial, MonomialIdeal};
