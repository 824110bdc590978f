//! Multi-tangent lattices `F_p(σ)` and the restriction maps between them.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{saturate, IntMatrix, IntegerLattice};
use crate::polyhedral::FaceComplex;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// `F_p(σ)` inside `∧^p Z^{free coords of σ}`; wedge coordinates are indexed
/// by the `p`-subsets of free coordinates in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTangent {
    pub cell: usize,
    pub p: usize,
    pub free_coords: Vec<usize>,
    pub lattice: IntegerLattice,
}

impl MultiTangent {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Labels of the wedge coordinates, e.g. `[0, 2]` for `e0 ∧ e2`.
    pub fn wedge_basis(&self) -> Vec<Vec<usize>> {
        subsets(self.free_coords.len(), self.p)
            .into_iter()
            .map(|s| s.into_iter().map(|i| self.free_coords[i]).collect())
            .collect()
    }
}

/// All `p`-subsets of `0..m`, lexicographic.
pub fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    rec(0, m, p, &mut cur, &mut out);
    out
}

/// Coordinates of `v_1 ∧ ... ∧ v_p` (the `p × p` minors).
pub fn wedge(vectors: &[Vec<Int>], m: usize) -> Vec<Int> {
    let p = vectors.len();
    subsets(m, p)
        .into_iter()
        .map(|s| {
            let rows: Vec<Vec<Int>> = vectors.iter().map(|v| s.iter().map(|&j| v[j].clone()).collect()).collect();
            IntMatrix::from_rows(p, &rows).det()
        })
        .collect()
}

/// `F_p(σ)`: saturated span of `∧^p L(σ')` over cofaces `σ'` of `σ` with the
/// same sedentarity (`σ` included).
pub fn multitangent(c: &FaceComplex, sigma: usize, p: usize) -> Result<MultiTangent> {
    c.check_id(sigma)?;
    let cell = c.cell(sigma)?;
    let free = cell.free_coords();
    let m = free.len();
    let mut gens = Vec::new();
    let cofaces = std::iter::once(sigma).chain(c.cofaces(sigma).iter().copied());
    for s in cofaces {
        if c.sedentarity(s) != cell.sedentarity.as_slice() {
            continue;
        }
        let basis = &c.tangent_lattice(s).basis;
        for pick in subsets(basis.len(), p) {
            let vs: Vec<Vec<Int>> = pick.iter().map(|&i| basis[i].clone()).collect();
            gens.push(wedge(&vs, m));
        }
    }
    let dim = subsets(m, p).len();
    Ok(MultiTangent { cell: sigma, p, free_coords: free, lattice: saturate(dim, &gens) })
}

/// Matrix of `ι: F_p(σ) → F_p(τ)` in the two lattice bases (columns indexed
/// by the basis of `F_p(σ)`).
pub fn restriction(c: &FaceComplex, sigma: usize, tau: usize, p: usize) -> Result<IntMatrix> {
    let from = multitangent(c, sigma, p)?;
    let to = multitangent(c, tau, p)?;
    restriction_between(c, &from, &to)
}

fn restriction_between(c: &FaceComplex, from: &MultiTangent, to: &MultiTangent) -> Result<IntMatrix> {
    let (sigma, tau, p) = (from.cell, to.cell, from.p);
    if !c.is_face(tau, sigma) {
        return Err(Error::NotAFace { face: tau, cell: sigma });
    }
    let src = subsets(from.free_coords.len(), p);
    let dst = subsets(to.free_coords.len(), p);
    // wedge coordinate map induced by dropping coordinates that went to -inf
    let dst_index: HashMap<Vec<usize>, usize> = dst
        .iter()
        .enumerate()
        .map(|(k, s)| (s.iter().map(|&i| to.free_coords[i]).collect::<Vec<_>>(), k))
        .collect();
    let coord_map: Vec<Option<usize>> =
        src.iter().map(|s| dst_index.get(&s.iter().map(|&i| from.free_coords[i]).collect::<Vec<_>>()).copied()).collect();
    let mut out = IntMatrix::zeros(to.rank(), from.rank());
    for (j, b) in from.lattice.basis.iter().enumerate() {
        let mut img = vec![Int::ZERO; dst.len()];
        for (k, x) in b.iter().enumerate() {
            if let Some(t) = coord_map[k] {
                img[t] = x.clone();
            }
        }
        let coords = to.lattice.coordinates(&img).ok_or(Error::ImageNotContained { from: sigma, to: tau, p })?;
        for (i, v) in coords.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Memoized multi-tangents and restrictions of one complex.
#[derive(Debug)]
pub struct CoefficientSystem {
    complex: Arc<FaceComplex>,
    tangents: Mutex<HashMap<(usize, usize), Arc<MultiTangent>>>,
    restrictions: Mutex<HashMap<(usize, usize, usize), Arc<IntMatrix>>>,
}

impl CoefficientSystem {
    pub fn new(complex: Arc<FaceComplex>) -> Self {
        CoefficientSystem { complex, tangents: Mutex::new(HashMap::new()), restrictions: Mutex::new(HashMap::new()) }
    }

    pub fn complex(&self) -> &FaceComplex {
        &self.complex
    }

    pub fn multitangent(&self, sigma: usize, p: usize) -> Result<Arc<MultiTangent>> {
        if let Some(m) = self.tangents.lock().unwrap().get(&(sigma, p)) {
            return Ok(m.clone());
        }
        let m = Arc::new(multitangent(&self.complex, sigma, p)?);
        self.tangents.lock().unwrap().insert((sigma, p), m.clone());
        Ok(m)
    }

    pub fn rank(&self, sigma: usize, p: usize) -> Result<usize> {
        Ok(self.multitangent(sigma, p)?.rank())
    }

    pub fn restriction(&self, sigma: usize, tau: usize, p: usize) -> Result<Arc<IntMatrix>> {
        if let Some(m) = self.restrictions.lock().unwrap().get(&(sigma, tau, p)) {
            return Ok(m.clone());
        }
        let (from, to) = (self.multitangent(sigma, p)?, self.multitangent(tau, p)?);
        let m = Arc::new(restriction_between(&self.complex, &from, &to)?);
        self.restrictions.lock().unwrap().insert((sigma, tau, p), m.clone());
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::builders::u31;

    #[test]
    fn u31_multitangents() {
        let u = u31();
        assert_eq!(multitangent(&u, 0, 1).unwrap().rank(), 2);
        assert_eq!(multitangent(&u, 1, 1).unwrap().rank(), 1);
        assert_eq!(multitangent(&u, 0, 2).unwrap().rank(), 0);
        for s in 0..u.len() {
            assert_eq!(multitangent(&u, s, 0).unwrap().rank(), 1);
        }
        let e1 = (1..4).find(|&i| u.relint_point(i).finite_part()[1] == Default::default()).unwrap();
        let m = restriction(&u, e1, 0, 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[1], &[0]]));
        assert_eq!(restriction(&u, 0, 0, 0).unwrap(), IntMatrix::identity(1));
        assert!(matches!(restriction(&u, 0, 1, 1), Err(Error::NotAFace { .. })));
    }
}
