use super::fm::{LinSys, Opt};
use super::point::{Coord, ExtendedPoint};
use super::rat::{dot_int, int_to_rat, primitive_scale, rat, rref, Rat};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{kernel_lattice, IntMatrix, IntegerLattice};
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// `⟨normal, x⟩ ≤ offset` (or `=` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: Vec<Int>,
    pub offset: Rat,
}

impl Constraint {
    pub fn new(normal: Vec<Int>, offset: Rat) -> Self {
        Constraint { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: Rat) -> Self {
        Constraint { normal: normal.iter().map(|&x| Int::from(x)).collect(), offset }
    }

    fn rat_normal(&self) -> Vec<Rat> {
        self.normal.iter().map(int_to_rat).collect()
    }
}

/// Closure in `T^r` of a rational polyhedron of `R^r_I`, `I` the sedentarity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPolyhedron {
    pub ambient_dim: usize,
    pub sedentarity: Vec<usize>,
    pub ineqs: Vec<Constraint>,
    pub eqs: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn new(ambient_dim: usize, sedentarity: Vec<usize>, ineqs: Vec<Constraint>, eqs: Vec<Constraint>) -> Result<Self> {
        let mut sed = sedentarity;
        sed.sort_unstable();
        sed.dedup();
        if sed.iter().any(|&i| i >= ambient_dim) {
            return Err(Error::Malformed("sedentarity index out of range".into()));
        }
        for c in ineqs.iter().chain(&eqs) {
            if c.normal.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: c.normal.len() });
            }
            if sed.iter().any(|&i| !c.normal[i].is_zero()) {
                return Err(Error::Malformed("normal has a nonzero entry on a sedentarity coordinate".into()));
            }
        }
        Ok(HPolyhedron { ambient_dim, sedentarity: sed, ineqs, eqs })
    }

    /// All of `R^r_I` (closure in `T^r`).
    pub fn whole(ambient_dim: usize, sedentarity: Vec<usize>) -> Self {
        HPolyhedron { ambient_dim, sedentarity, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn free_coords(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|i| self.sedentarity.binary_search(i).is_err()).collect()
    }

    pub fn free_dim(&self) -> usize {
        self.ambient_dim - self.sedentarity.len()
    }

    pub fn system(&self) -> LinSys {
        let mut s = LinSys::new(self.ambient_dim);
        for c in &self.ineqs {
            s.le(c.rat_normal(), c.offset.clone());
        }
        for c in &self.eqs {
            s.eq(c.rat_normal(), c.offset.clone());
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        !self.system().is_feasible()
    }

    /// Unique representation of the same set: equalities in reduced echelon
    /// form, irredundant inequalities reduced modulo the equalities, all with
    /// primitive integer normals, sorted.
    pub fn canonical(&self) -> Result<HPolyhedron> {
        let sys = self.system();
        if !sys.is_feasible() {
            return Err(Error::EmptyPolyhedron);
        }
        let r = self.ambient_dim;
        let mut eq_rows: Vec<Vec<Rat>> = Vec::new();
        let mut rest: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for c in &self.eqs {
            let mut row = c.rat_normal();
            row.push(c.offset.clone());
            eq_rows.push(row);
        }
        for c in &self.ineqs {
            let a = c.rat_normal();
            let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
            let implicit = matches!(sys.maximize(&neg), Opt::Max(m) if m == -c.offset.clone());
            if implicit {
                let mut row = a;
                row.push(c.offset.clone());
                eq_rows.push(row);
            } else {
                rest.push((a, c.offset.clone()));
            }
        }
        let (ech, pivots) = rref(&eq_rows, r);
        // reduce inequalities modulo the equalities
        let mut reduced: Vec<(Vec<Rat>, Rat)> = Vec::new();
        for (mut a, mut b) in rest {
            for (row, &p) in ech.iter().zip(&pivots) {
                if a[p].is_zero() {
                    continue;
                }
                let f = a[p].clone();
                for j in 0..r {
                    a[j] -= &f * &row[j];
                }
                b -= &f * &row[r];
            }
            if a.iter().all(|x| x.is_zero()) {
                continue;
            }
            let (ints, f) = primitive_scale(&a);
            reduced.push((ints.iter().map(int_to_rat).collect(), b * f));
        }
        reduced.sort();
        // parallel constraints: sorted by offset, so the first is the tightest
        reduced.dedup_by(|x, y| x.0 == y.0);
        let mut eq_sys = LinSys::new(r);
        for row in &ech {
            eq_sys.eq(row[..r].to_vec(), row[r].clone());
        }
        let mut keep = vec![true; reduced.len()];
        for k in 0..reduced.len() {
            let mut s = eq_sys.clone();
            for (j, (a, b)) in reduced.iter().enumerate() {
                if j != k && keep[j] {
                    s.le(a.clone(), b.clone());
                }
            }
            match s.maximize(&reduced[k].0) {
                Opt::Max(m) if m <= reduced[k].1 => keep[k] = false,
                _ => {}
            }
        }
        let ineqs: Vec<Constraint> = reduced
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|((a, b), _)| Constraint { normal: a.iter().map(|x| Int::from(x.to_integer())).collect(), offset: b })
            .collect();
        let eqs: Vec<Constraint> = ech
            .iter()
            .map(|row| {
                let (ints, f) = primitive_scale(&row[..r]);
                Constraint { normal: ints, offset: &row[r] * f }
            })
            .collect();
        let mut out = HPolyhedron { ambient_dim: r, sedentarity: self.sedentarity.clone(), ineqs, eqs };
        out.ineqs.sort();
        Ok(out)
    }

    /// Dimension of the relative interior.
    pub fn dim(&self) -> Result<usize> {
        let c = self.canonical()?;
        Ok(c.free_dim() - c.eqs.len())
    }

    /// Dimension, assuming `self` is canonical.
    pub fn canonical_dim(&self) -> usize {
        self.free_dim() - self.eqs.len()
    }

    /// A rational point in the relative interior.
    pub fn relint_point(&self) -> Result<ExtendedPoint> {
        let c = self.canonical()?;
        let r = c.ambient_dim;
        let x = if c.ineqs.is_empty() {
            c.system().find_point().ok_or(Error::EmptyPolyhedron)?
        } else {
            let mut s = LinSys::new(r + 1);
            for e in &c.eqs {
                let mut a = e.rat_normal();
                a.push(Rat::zero());
                s.eq(a, e.offset.clone());
            }
            for ineq in &c.ineqs {
                let mut a = ineq.rat_normal();
                a.push(Rat::one());
                s.le(a, ineq.offset.clone());
            }
            let mut t = vec![Rat::zero(); r];
            t.push(Rat::one());
            s.le(t.clone(), Rat::one());
            let tmax = match s.maximize(&t) {
                Opt::Max(m) => m,
                _ => return Err(Error::EmptyPolyhedron),
            };
            s.eq(t, tmax / rat(2));
            let mut x = s.find_point().ok_or(Error::EmptyPolyhedron)?;
            x.pop();
            x
        };
        Ok(self.to_extended(x))
    }

    fn to_extended(&self, x: Vec<Rat>) -> ExtendedPoint {
        ExtendedPoint {
            coords: x
                .into_iter()
                .enumerate()
                .map(|(i, v)| if self.sedentarity.contains(&i) { Coord::Bottom } else { Coord::Finite(v) })
                .collect(),
        }
    }

    /// Membership in the relative interior.
    pub fn relint_contains(&self, x: &ExtendedPoint) -> Result<bool> {
        if x.ambient_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: x.ambient_dim() });
        }
        if x.sedentarity() != self.sedentarity {
            return Ok(false);
        }
        Ok(self.canonical()?.canonical_relint_contains(x))
    }

    /// Relative interior membership, assuming `self` is canonical and `x` has
    /// the right ambient dimension.
    pub fn canonical_relint_contains(&self, x: &ExtendedPoint) -> bool {
        if x.sedentarity() != self.sedentarity {
            return false;
        }
        let v = x.finite_part();
        self.eqs.iter().all(|e| dot_int(&e.normal, &v) == e.offset)
            && self.ineqs.iter().all(|i| dot_int(&i.normal, &v) < i.offset)
    }

    /// Membership in the closure in `T^r`.
    pub fn closure_contains(&self, x: &ExtendedPoint) -> Result<bool> {
        if x.ambient_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: x.ambient_dim() });
        }
        let j = x.sedentarity();
        let Some(face) = self.face_at(&j)? else { return Ok(false) };
        let v = x.finite_part();
        Ok(face.system().satisfied_by(&v))
    }

    /// Whether the closure of `self` meets `R^r_J`.
    pub fn reaches(&self, j: &[usize]) -> bool {
        if !self.sedentarity.iter().all(|i| j.contains(i)) {
            return false;
        }
        let r = self.ambient_dim;
        let mut s = LinSys::new(r);
        for c in &self.ineqs {
            s.le(c.rat_normal(), Rat::zero());
        }
        for c in &self.eqs {
            s.eq(c.rat_normal(), Rat::zero());
        }
        for k in self.free_coords() {
            let mut a = vec![Rat::zero(); r];
            a[k] = Rat::one();
            if j.contains(&k) {
                s.le(a, -Rat::one());
            } else {
                s.eq(a, Rat::zero());
            }
        }
        s.is_feasible() && !self.is_empty()
    }

    /// `closure(self) ∩ R^r_J` as a canonical polyhedron of sedentarity `J`.
    pub fn face_at(&self, j: &[usize]) -> Result<Option<HPolyhedron>> {
        let mut j: Vec<usize> = j.to_vec();
        j.sort_unstable();
        if j == self.sedentarity {
            return Ok(Some(self.canonical()?));
        }
        if !self.reaches(&j) {
            return Ok(None);
        }
        let mut s = self.system();
        s.simplify();
        for &k in &j {
            if !self.sedentarity.contains(&k) {
                s = s.eliminate(k);
            }
        }
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for row in &s.rows {
            let (ints, f) = primitive_scale(&row.a);
            let c = Constraint { normal: ints, offset: &row.b * f };
            if row.eq {
                eqs.push(c);
            } else {
                ineqs.push(c);
            }
        }
        let p = HPolyhedron { ambient_dim: self.ambient_dim, sedentarity: j, ineqs, eqs };
        Ok(Some(p.canonical()?))
    }

    /// `self ⊆ closure(other)`.
    pub fn subset_of(&self, other: &HPolyhedron) -> Result<bool> {
        let Some(f) = other.face_at(&self.sedentarity)? else { return Ok(false) };
        let s = self.system();
        for c in &f.ineqs {
            match s.maximize(&c.rat_normal()) {
                Opt::Max(m) if m <= c.offset => {}
                Opt::Infeasible => return Err(Error::EmptyPolyhedron),
                _ => return Ok(false),
            }
        }
        for c in &f.eqs {
            let a = c.rat_normal();
            let neg: Vec<Rat> = a.iter().map(|x| -x).collect();
            let hi = s.maximize(&a);
            let lo = s.maximize(&neg);
            if hi != Opt::Max(c.offset.clone()) || lo != Opt::Max(-c.offset.clone()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Faces of the same sedentarity, including `self`; canonical.
    pub fn faces_same_sedentarity(&self) -> Result<Vec<HPolyhedron>> {
        let c = self.canonical()?;
        let tight = |t: &BTreeSet<usize>| -> Result<(BTreeSet<usize>, HPolyhedron)> {
            let mut p = c.clone();
            p.ineqs = Vec::new();
            for (k, ineq) in c.ineqs.iter().enumerate() {
                if t.contains(&k) {
                    p.eqs.push(ineq.clone());
                } else {
                    p.ineqs.push(ineq.clone());
                }
            }
            let s = p.system();
            if !s.is_feasible() {
                return Err(Error::EmptyPolyhedron);
            }
            let mut full = t.clone();
            for (k, ineq) in c.ineqs.iter().enumerate() {
                if full.contains(&k) {
                    continue;
                }
                let neg: Vec<Rat> = ineq.rat_normal().iter().map(|x| -x).collect();
                if s.maximize(&neg) == Opt::Max(-ineq.offset.clone()) {
                    full.insert(k);
                }
            }
            Ok((full, p))
        };
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(BTreeSet::new());
        queue.push_back(BTreeSet::new());
        out.push(c.clone());
        while let Some(t) = queue.pop_front() {
            for k in 0..c.ineqs.len() {
                if t.contains(&k) {
                    continue;
                }
                let mut t2 = t.clone();
                t2.insert(k);
                let (full, p) = match tight(&t2) {
                    Ok(x) => x,
                    Err(Error::EmptyPolyhedron) => continue,
                    Err(e) => return Err(e),
                };
                if seen.insert(full.clone()) {
                    out.push(p.canonical()?);
                    queue.push_back(full);
                }
            }
        }
        Ok(out)
    }

    /// All faces of the closure in `T^r`, including `self`; canonical.
    pub fn enumerate_faces(&self) -> Result<Vec<HPolyhedron>> {
        let mut out = self.faces_same_sedentarity()?;
        let free = self.free_coords();
        for mask in 1u32..(1u32 << free.len()) {
            let mut j = self.sedentarity.clone();
            for (b, &k) in free.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    j.push(k);
                }
            }
            j.sort_unstable();
            if let Some(f) = self.face_at(&j)? {
                out.extend(f.faces_same_sedentarity()?);
            }
        }
        Ok(out)
    }

    /// `L_Z(σ)` inside `Z^{free coords}`.
    pub fn tangent_lattice(&self) -> Result<IntegerLattice> {
        let c = self.canonical()?;
        Ok(c.canonical_tangent_lattice())
    }

    /// Tangent lattice, assuming `self` is canonical.
    pub fn canonical_tangent_lattice(&self) -> IntegerLattice {
        let free = self.free_coords();
        let rows: Vec<Vec<Int>> = self.eqs.iter().map(|e| free.iter().map(|&i| e.normal[i].clone()).collect()).collect();
        kernel_lattice(&IntMatrix::from_rows(free.len(), &rows))
    }

    /// Whether the set (within `R^r_I`) is bounded.
    pub fn is_bounded(&self) -> bool {
        let r = self.ambient_dim;
        let mut s = LinSys::new(r);
        for c in &self.ineqs {
            s.le(c.rat_normal(), Rat::zero());
        }
        for c in &self.eqs {
            s.eq(c.rat_normal(), Rat::zero());
        }
        self.free_coords().into_iter().all(|k| {
            let mut a = vec![Rat::zero(); r];
            a[k] = Rat::one();
            let up = s.maximize(&a) == Opt::Max(Rat::zero());
            a[k] = -Rat::one();
            up && s.maximize(&a) == Opt::Max(Rat::zero())
        })
    }

    /// Vertices of a bounded polyhedron.
    pub fn vertices(&self) -> Result<Vec<ExtendedPoint>> {
        let mut out: Vec<ExtendedPoint> = self
            .faces_same_sedentarity()?
            .into_iter()
            .filter(|f| f.canonical_dim() == 0)
            .map(|f| f.relint_point())
            .collect::<Result<_>>()?;
        out.sort();
        Ok(out)
    }

    /// Intersection with another polyhedron of the same sedentarity.
    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        let mut p = self.clone();
        p.ineqs.extend(other.ineqs.iter().cloned());
        p.eqs.extend(other.eqs.iter().cloned());
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::rat::ratio;

    fn c(n: &[i64], b: i64) -> Constraint {
        Constraint::from_i64(n, rat(b))
    }

    fn segment01() -> HPolyhedron {
        HPolyhedron::new(1, vec![], vec![c(&[1], 1), c(&[-1], 0)], vec![]).unwrap()
    }

    #[test]
    fn segment_faces_and_relint() {
        let s = segment01();
        let faces = s.enumerate_faces().unwrap();
        assert_eq!(faces.len(), 3);
        let dims: Vec<usize> = faces.iter().map(|f| f.canonical_dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 0).count(), 2);
        let half = ExtendedPoint::finite(vec![ratio(1, 2)]);
        assert!(s.relint_contains(&half).unwrap());
        assert!(!s.relint_contains(&ExtendedPoint::finite(vec![rat(0)])).unwrap());
        assert!(s.relint_contains(&s.relint_point().unwrap()).unwrap());
    }

    #[test]
    fn ray_faces_and_lattice() {
        let ray = HPolyhedron::new(2, vec![], vec![c(&[-1, 0], 0)], vec![c(&[0, 1], 0)]).unwrap();
        assert_eq!(ray.enumerate_faces().unwrap().len(), 2);
        assert!(ray.relint_contains(&ExtendedPoint::finite(vec![rat(1), rat(0)])).unwrap());
        let diag = HPolyhedron::new(2, vec![], vec![c(&[1, 0], 0)], vec![c(&[1, -1], 0)]).unwrap();
        let l = diag.tangent_lattice().unwrap();
        assert_eq!(l.basis, vec![vec![Int::from(1), Int::from(1)]]);
        let origin = HPolyhedron::new(2, vec![], vec![], vec![c(&[1, 0], 0), c(&[0, 1], 0)]).unwrap();
        assert_eq!(origin.tangent_lattice().unwrap().rank(), 0);
        let quadrant = HPolyhedron::new(2, vec![], vec![c(&[-1, 0], 0), c(&[0, -1], 0)], vec![]).unwrap();
        assert_eq!(quadrant.tangent_lattice().unwrap(), IntegerLattice::full(2));
    }

    #[test]
    fn tropical_line_closure() {
        let t1 = HPolyhedron::whole(1, vec![]);
        let faces = t1.enumerate_faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[1].sedentarity, vec![0]);
        let bottom = ExtendedPoint { coords: vec![Coord::Bottom] };
        assert!(t1.closure_contains(&bottom).unwrap());
        assert!(!segment01().closure_contains(&bottom).unwrap());
    }

    #[test]
    fn canonical_is_unique() {
        let a = HPolyhedron::new(1, vec![], vec![c(&[2], 2), c(&[-1], 0), c(&[1], 5)], vec![]).unwrap();
        assert_eq!(a.canonical().unwrap(), segment01().canonical().unwrap());
        let flat = HPolyhedron::new(2, vec![], vec![c(&[1, 0], 0), c(&[-1, 0], 0), c(&[0, -1], 0)], vec![]).unwrap();
        let can = flat.canonical().unwrap();
        assert_eq!(can.eqs.len(), 1);
        assert_eq!(can.canonical_dim(), 1);
        assert!(!can.is_bounded());
    }
}
