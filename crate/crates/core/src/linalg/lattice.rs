use super::matrix::IntMatrix;
use super::normal_form::{hnf, hnf_only, invariant_factors};
use crate::int::Int;
use serde::{Deserialize, Serialize};

/// Sublattice of `Z^n`, stored as the nonzero rows of its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerLattice {
    pub ambient_rank: usize,
    #[serde(with = "int_rows")]
    pub basis: Vec<Vec<Int>>,
}

impl IntegerLattice {
    pub fn zero(n: usize) -> Self {
        IntegerLattice { ambient_rank: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        IntegerLattice { ambient_rank: n, basis: IntMatrix::identity(n).to_rows() }
    }

    /// Lattice spanned by the given generators (not saturated).
    pub fn span(n: usize, gens: &[Vec<Int>]) -> Self {
        if gens.is_empty() {
            return Self::zero(n);
        }
        let h = hnf_only(&IntMatrix::from_rows(n, gens));
        let basis = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        IntegerLattice { ambient_rank: n, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_rank, &self.basis)
    }

    fn pivot(row: &[Int]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("zero basis row")
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient_rank, "vector length");
        let mut res = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let c = Self::pivot(b);
            if !b[c].divides(&res[c]) {
                return None;
            }
            let y = res[c].div_exact(&b[c]);
            if !y.is_zero() {
                for (r, x) in res.iter_mut().zip(b) {
                    if !x.is_zero() {
                        *r = r.sub_mul(&y, x);
                    }
                }
            }
            coords.push(y);
        }
        if res.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis.iter().all(|b| other.contains(b))
    }

    /// All invariant factors of the basis matrix are 1.
    pub fn is_saturated(&self) -> bool {
        invariant_factors(&self.basis_matrix()).iter().all(|d| d.is_one())
    }

    /// Combination `sum_i c_i * basis_i`.
    pub fn combine(&self, coeffs: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.ambient_rank];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }
}

/// Integer kernel `{x in Z^cols : m x = 0}`; always saturated.
pub fn kernel_lattice(m: &IntMatrix) -> IntegerLattice {
    let n = m.cols();
    if m.rows() == 0 {
        return IntegerLattice::full(n);
    }
    let (h, u) = hnf(&m.transpose());
    let gens: Vec<Vec<Int>> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(|x| x.is_zero()))
        .map(|i| u.row_vec(i))
        .collect();
    IntegerLattice::span(n, &gens)
}

/// `span_Q(gens) ∩ Z^n`.
pub fn saturate(n: usize, gens: &[Vec<Int>]) -> IntegerLattice {
    let gens: Vec<Vec<Int>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    if gens.is_empty() {
        return IntegerLattice::zero(n);
    }
    let k = kernel_lattice(&IntMatrix::from_rows(n, &gens));
    kernel_lattice(&IntMatrix::from_rows(n, &k.basis))
}

mod int_rows {
    use crate::int::Int;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let v: Vec<Vec<String>> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|r| r.into_iter().map(|x| x.parse::<Int>().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}
