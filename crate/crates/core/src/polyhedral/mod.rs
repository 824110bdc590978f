//! Rational polyhedra in `T^r` and finite complexes of them.

pub mod builders;
mod complex;
pub mod fm;
pub mod json;
mod point;
mod polyhedron;
pub mod rat;

pub use complex::{validate_complex, Ambient, FaceComplex, ValidationReport};
pub use point::{sedentarity, Coord, ExtendedPoint};
pub use polyhedron::{Constraint, HPolyhedron};
pub use rat::Rat;

use crate::error::Result;
use crate::linalg::IntegerLattice;

/// All faces of the closure of `sigma` in `T^r`, `sigma` included.
pub fn enumerate_faces(sigma: &HPolyhedron) -> Result<Vec<HPolyhedron>> {
    sigma.enumerate_faces()
}

pub fn relint_contains(sigma: &HPolyhedron, x: &ExtendedPoint) -> Result<bool> {
    sigma.relint_contains(x)
}

pub fn tangent_lattice(sigma: &HPolyhedron) -> Result<IntegerLattice> {
    sigma.tangent_lattice()
}
