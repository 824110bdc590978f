use super::sparse::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::int::Int;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coeff {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "Q")]
    Q,
}

impl Coeff {
    pub fn as_str(self) -> &'static str {
        match self {
            Coeff::Z => "Z",
            Coeff::Q => "Q",
        }
    }
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Same group with torsion discarded (tensoring with Q).
    pub fn rationalize(&self) -> Self {
        Self::free(self.free_rank)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Free chain complex; `boundaries[q]` maps degree `q` to degree `q - 1`
/// (`boundaries[0]` has zero rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    /// From `∂_1, ∂_2, ...`; degree dimensions are read off the shapes.
    pub fn from_boundaries(bds: Vec<SparseIntMatrix>) -> Result<Self> {
        if bds.is_empty() {
            return Ok(ChainComplex { dims: Vec::new(), boundaries: Vec::new() });
        }
        let mut dims = vec![bds[0].nrows()];
        for (k, b) in bds.iter().enumerate() {
            if b.nrows() != dims[k] {
                return Err(Error::DimensionMismatch { expected: dims[k], got: b.nrows() });
            }
            dims.push(b.ncols());
        }
        let mut boundaries = vec![SparseIntMatrix::new(0, dims[0])];
        boundaries.extend(bds);
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Fails with `NotAComplex` if some `∂_{q} ∂_{q+1}` is nonzero.
    pub fn check(&self) -> Result<()> {
        for q in 1..self.boundaries.len() {
            let b = &self.boundaries[q];
            if b.nrows() != self.dims[q - 1] || b.ncols() != self.dims[q] {
                return Err(Error::DimensionMismatch { expected: self.dims[q], got: b.ncols() });
            }
            if q + 1 < self.boundaries.len() && !b.mul(&self.boundaries[q + 1]).is_zero() {
                return Err(Error::NotAComplex { degree: q });
            }
        }
        Ok(())
    }

    /// Cochain complex `δ^q = ∂_{q+1}^T`, re-indexed so that it is again a
    /// chain complex: degree `k` here is cochain degree `len - 1 - k`.
    pub fn dual(&self) -> ChainComplex {
        let n = self.dims.len();
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut boundaries = vec![SparseIntMatrix::new(0, dims.first().copied().unwrap_or(0))];
        for k in 1..n {
            // chain degree k here is cochain degree c = n-1-k, and the map
            // goes to c+1, which is δ^c = ∂_{c+1}^T
            let c = n - 1 - k;
            boundaries.push(self.boundaries[c + 1].transpose());
        }
        ChainComplex { dims, boundaries }
    }
}

fn groups_from_divisors(dims: &[usize], divs: &[Vec<Int>], coeff: Coeff) -> Vec<HomologyGroup> {
    let n = dims.len();
    (0..n)
        .map(|q| {
            let out_rank = divs[q].len();
            let in_rank = if q + 1 < n { divs[q + 1].len() } else { 0 };
            let free_rank = dims[q] - out_rank - in_rank;
            let torsion = match coeff {
                Coeff::Q => Vec::new(),
                Coeff::Z if q + 1 < n => divs[q + 1].iter().filter(|d| !d.is_unit()).map(|d| d.abs()).collect(),
                Coeff::Z => Vec::new(),
            };
            HomologyGroup { free_rank, torsion }
        })
        .collect()
}

/// `H_q` for every degree of the complex.
pub fn homology_of_complex(c: &ChainComplex, coeff: Coeff) -> Result<Vec<HomologyGroup>> {
    c.check()?;
    let divs: Vec<Vec<Int>> = c.boundaries.iter().map(|b| b.elementary_divisors()).collect();
    Ok(groups_from_divisors(&c.dims, &divs, coeff))
}

/// `H^q` of `Hom(C, R)`, computed on the transposed matrices.
pub fn cohomology_of_complex(c: &ChainComplex, coeff: Coeff) -> Result<Vec<HomologyGroup>> {
    c.check()?;
    let d = c.dual();
    let mut h = homology_of_complex(&d, coeff)?;
    h.reverse();
    Ok(h)
}

/// Universal coefficients over Z: `H^q ≅ Hom(H_q, Z) ⊕ Ext(H_{q-1}, Z)`.
pub fn uct_consistent(homology: &[HomologyGroup], cohomology: &[HomologyGroup]) -> bool {
    homology.len() == cohomology.len()
        && (0..homology.len()).all(|q| {
            let expected_torsion = if q == 0 { Vec::new() } else { homology[q - 1].torsion.clone() };
            cohomology[q].free_rank == homology[q].free_rank && cohomology[q].torsion == expected_torsion
        })
}
