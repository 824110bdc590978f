//! Intersection chain complexes and the groups computed from them.

mod chains;
mod space;

pub use chains::{assemble, build_ic_complex, is_allowable, Chain, ChainSpec, Generator, IChainComplex, Variant};
pub use space::{base_level, check_fan, max_level, Flavor, HomologyResult, Model, Space};
