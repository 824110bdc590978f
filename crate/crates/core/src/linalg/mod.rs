//! Exact integer linear algebra: normal forms, lattices, homology of free
//! chain complexes.

mod homology;
mod lattice;
mod matrix;
mod normal_form;
mod sparse;

pub use homology::{
    cohomology_of_complex, homology_of_complex, uct_consistent, ChainComplex, Coeff, HomologyGroup,
};
pub use lattice::{kernel_lattice, saturate, IntegerLattice};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, hnf_only, invariant_factors, snf};
pub use sparse::SparseIntMatrix;
