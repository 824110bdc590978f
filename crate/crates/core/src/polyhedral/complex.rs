use super::point::ExtendedPoint;
use super::polyhedron::HPolyhedron;
use crate::error::{Error, Result};
use crate::linalg::IntegerLattice;
use std::collections::HashMap;

/// Where the cells live. In `R^r` the faces of a cell are its ordinary
/// faces; in `T^r` cells are closures and pick up faces at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Euclidean,
    Tropical,
}

/// Finite polyhedral complex in `R^r` or `T^r` with its face poset.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    ambient: Ambient,
    ambient_dim: usize,
    cells: Vec<HPolyhedron>,
    dims: Vec<usize>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    points: Vec<ExtendedPoint>,
    lattices: Vec<IntegerLattice>,
    missing: Vec<(usize, HPolyhedron)>,
    duplicates: Vec<(usize, usize)>,
}

impl FaceComplex {
    pub fn empty(ambient_dim: usize) -> Self {
        Self::new(ambient_dim, Vec::new()).expect("empty complex")
    }

    /// Cells are kept in the given order (ids are positions). The ambient is
    /// `T^r` if some cell has nonempty sedentarity, `R^r` otherwise.
    pub fn new(ambient_dim: usize, cells: Vec<HPolyhedron>) -> Result<Self> {
        let ambient = if cells.iter().any(|c| !c.sedentarity.is_empty()) { Ambient::Tropical } else { Ambient::Euclidean };
        Self::new_in(ambient, ambient_dim, cells)
    }

    pub fn new_in(ambient: Ambient, ambient_dim: usize, cells: Vec<HPolyhedron>) -> Result<Self> {
        let mut canon = Vec::with_capacity(cells.len());
        for c in &cells {
            if c.ambient_dim != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: c.ambient_dim });
            }
            if ambient == Ambient::Euclidean && !c.sedentarity.is_empty() {
                return Err(Error::Malformed("cell with sedentarity in a Euclidean complex".into()));
            }
            canon.push(c.canonical()?);
        }
        let mut index: HashMap<HPolyhedron, usize> = HashMap::new();
        let mut duplicates = Vec::new();
        for (i, c) in canon.iter().enumerate() {
            if let Some(&j) = index.get(c) {
                duplicates.push((j, i));
            } else {
                index.insert(c.clone(), i);
            }
        }
        let n = canon.len();
        let mut faces = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        let mut missing = Vec::new();
        for (i, c) in canon.iter().enumerate() {
            for f in faces_in(ambient, c)? {
                match index.get(&f) {
                    Some(&j) if j != i => faces[i].push(j),
                    Some(_) => {}
                    None => missing.push((i, f)),
                }
            }
            faces[i].sort_unstable();
            faces[i].dedup();
            for &j in &faces[i] {
                cofaces[j].push(i);
            }
        }
        for cf in cofaces.iter_mut() {
            cf.sort_unstable();
        }
        let dims = canon.iter().map(|c| c.canonical_dim()).collect();
        let points = canon.iter().map(|c| c.relint_point()).collect::<Result<Vec<_>>>()?;
        let lattices = canon.iter().map(|c| c.canonical_tangent_lattice()).collect();
        Ok(FaceComplex { ambient, ambient_dim, cells: canon, dims, faces, cofaces, points, lattices, missing, duplicates })
    }

    /// Closes the given cells of `R^r` under faces and orders cells by
    /// (dimension, sedentarity, relative interior point).
    pub fn from_maximal(ambient_dim: usize, cells: Vec<HPolyhedron>) -> Result<Self> {
        Self::from_maximal_in(Ambient::Euclidean, ambient_dim, cells)
    }

    pub fn from_maximal_in(ambient: Ambient, ambient_dim: usize, cells: Vec<HPolyhedron>) -> Result<Self> {
        let mut all: HashMap<HPolyhedron, ()> = HashMap::new();
        for c in &cells {
            if c.ambient_dim != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: c.ambient_dim });
            }
            for f in faces_in(ambient, c)? {
                all.insert(f, ());
            }
        }
        let mut keyed: Vec<((usize, Vec<usize>, ExtendedPoint), HPolyhedron)> = all
            .into_keys()
            .map(|p| Ok(((p.canonical_dim(), p.sedentarity.clone(), p.relint_point()?), p)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        Self::new_in(ambient, ambient_dim, keyed.into_iter().map(|(_, p)| p).collect())
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[HPolyhedron] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> Result<&HPolyhedron> {
        self.cells.get(id).ok_or(Error::CellNotFound(id))
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.cells.len() {
            Ok(())
        } else {
            Err(Error::CellNotFound(id))
        }
    }

    pub fn dim(&self, id: usize) -> usize {
        self.dims[id]
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn sedentarity(&self, id: usize) -> &[usize] {
        &self.cells[id].sedentarity
    }

    /// Proper faces of a cell.
    pub fn faces(&self, id: usize) -> &[usize] {
        &self.faces[id]
    }

    /// Proper cofaces of a cell.
    pub fn cofaces(&self, id: usize) -> &[usize] {
        &self.cofaces[id]
    }

    /// `tau ⪯ sigma` (reflexive).
    pub fn is_face(&self, tau: usize, sigma: usize) -> bool {
        tau == sigma || self.faces[sigma].binary_search(&tau).is_ok()
    }

    pub fn relint_point(&self, id: usize) -> &ExtendedPoint {
        &self.points[id]
    }

    pub fn tangent_lattice(&self, id: usize) -> &IntegerLattice {
        &self.lattices[id]
    }

    pub fn find_cell(&self, p: &HPolyhedron) -> Option<usize> {
        let c = p.canonical().ok()?;
        self.cells.iter().position(|x| *x == c)
    }

    /// The cell whose relative interior contains `x`.
    pub fn locate(&self, x: &ExtendedPoint) -> Option<usize> {
        if x.ambient_dim() != self.ambient_dim {
            return None;
        }
        self.cells.iter().position(|c| c.canonical_relint_contains(x))
    }

    pub fn is_bounded(&self, id: usize) -> bool {
        self.cells[id].is_bounded()
    }

    /// Cells with no proper coface.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cofaces[i].is_empty()).collect()
    }

    /// Components of the support (cells linked by the face relation).
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components_within(&all)
    }

    /// Components of the subgraph on `ids` where cells are adjacent when one
    /// is a face of the other.
    pub fn components_within(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (k, &i) in ids.iter().enumerate() {
            for f in &self.faces[i] {
                if let Some(&l) = pos.get(f) {
                    let (a, b) = (find(&mut parent, k), find(&mut parent, l));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for k in 0..ids.len() {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(ids[k]);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().map(|mut g| {
            g.sort_unstable();
            g
        }).collect();
        out.sort();
        out
    }

    /// Faces missing from the cell list and duplicate cells, as found at
    /// construction.
    pub(crate) fn construction_defects(&self) -> (&[(usize, HPolyhedron)], &[(usize, usize)]) {
        (&self.missing, &self.duplicates)
    }
}

fn faces_in(ambient: Ambient, c: &HPolyhedron) -> Result<Vec<HPolyhedron>> {
    match ambient {
        Ambient::Euclidean => c.faces_same_sedentarity(),
        Ambient::Tropical => c.enumerate_faces(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

/// Checks closure under faces, pairwise intersections, and that sampled
/// relative interior points lie in exactly one cell.
pub fn validate_complex(c: &FaceComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let (missing, dups) = c.construction_defects();
    for (i, f) in missing {
        violations.push(format!(
            "cell {i}: face of dimension {} (sedentarity {:?}) is not a cell",
            f.canonical_dim(),
            f.sedentarity
        ));
    }
    for (i, j) in dups {
        violations.push(format!("cells {i} and {j} coincide"));
    }
    let r = c.ambient_dim();
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (c.cell(i).unwrap(), c.cell(j).unwrap());
            let mut base = a.sedentarity.clone();
            base.extend(b.sedentarity.iter().copied());
            base.sort_unstable();
            base.dedup();
            let extra: Vec<usize> = (0..r).filter(|k| !base.contains(k)).collect();
            let masks = if c.ambient() == Ambient::Tropical { 1u32 << extra.len() } else { 1 };
            for mask in 0u32..masks {
                let mut jset = base.clone();
                for (bit, &k) in extra.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        jset.push(k);
                    }
                }
                jset.sort_unstable();
                let (Ok(Some(fa)), Ok(Some(fb))) = (a.face_at(&jset), b.face_at(&jset)) else { continue };
                let inter = fa.intersect(&fb);
                let Ok(inter) = inter.canonical() else { continue };
                match c.cells().iter().position(|x| *x == inter) {
                    Some(k) if c.is_face(k, i) && c.is_face(k, j) => {}
                    _ => violations.push(format!(
                        "cells {i} and {j} meet (sedentarity {jset:?}) in a set that is not a common face"
                    )),
                }
            }
        }
    }
    for i in 0..n {
        let p = c.relint_point(i);
        let hits: Vec<usize> = (0..n).filter(|&j| c.cell(j).unwrap().canonical_relint_contains(p)).collect();
        if hits != vec![i] {
            violations.push(format!("relative interior point of cell {i} lies in the relative interiors of {hits:?}"));
        }
    }
    violations.sort();
    violations.dedup();
    ValidationReport { valid: violations.is_empty(), violations }
}
