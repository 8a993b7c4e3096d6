//! Exact combinatorics for logarithmic degenerations: cone complexes, expansions,
//! tropical curves and maps, rigid types, flattening and plane curve counts.

pub mod error;
pub mod lattice_geom;
pub mod num;

pub use error::{Error, Result};
pub use num::{LatticeVector, Rational};
pub mod canon;
pub mod counting;
pub mod degeneration;
pub mod expansions;
pub mod tropical_curves;
pub mod tropical_maps;
