//! Exact lattice and polyhedral-cone kernel.

pub mod chamber;
pub mod complex;
pub mod cone;
pub mod linalg;
pub mod lp;
pub mod ops;

pub use complex::{product_p1_fan, projective_space_fan, ComplexJson, ConeComplex};
pub use cone::{Cone, ConeJson, HCone};
pub use ops::{common_refinement, is_refinement, quotient_fan, quotient_map, same_support, star_fan};

use crate::error::Result;
use crate::num::LatticeVector;

/// Canonical cone generated by `gens` in a lattice of the given rank.
pub fn cone_from_generators(gens: Vec<LatticeVector>, rank: usize) -> Result<Cone> {
    Cone::from_generators(gens, rank)
}
