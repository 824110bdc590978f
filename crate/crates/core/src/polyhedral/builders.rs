//! Constructors for the cells that show up in practice.

use super::complex::FaceComplex;
use super::polyhedron::{Constraint, HPolyhedron};
use super::rat::{dot_int, int_to_rat, primitive_scale, rat, Rat};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{kernel_lattice, IntMatrix};

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Equalities cutting out `p + span(dirs)`.
fn affine_eqs(p: &[Rat], dirs: &[Vec<Int>]) -> Vec<Constraint> {
    let r = p.len();
    let k = if dirs.is_empty() { IntMatrix::zeros(0, r) } else { IntMatrix::from_rows(r, dirs) };
    kernel_lattice(&k)
        .basis
        .into_iter()
        .map(|n| {
            let off = dot_int(&n, p);
            Constraint::new(n, off)
        })
        .collect()
}

/// `w·(x - o) ≥ 0`
fn halfspace_ge(w: &[Int], o: &[Rat]) -> Constraint {
    let neg: Vec<Int> = w.iter().map(|x| -x).collect();
    let off = dot_int(&neg, o);
    Constraint::new(neg, off)
}

pub fn point(p: &[Rat]) -> HPolyhedron {
    HPolyhedron { ambient_dim: p.len(), sedentarity: vec![], ineqs: vec![], eqs: affine_eqs(p, &[]) }
}

pub fn segment(a: &[Rat], b: &[Rat]) -> Result<HPolyhedron> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let diff: Vec<Rat> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let (d, _) = primitive_scale(&diff);
    if d.iter().all(|x| x.is_zero()) {
        return Err(Error::Malformed("degenerate segment".into()));
    }
    let neg: Vec<Int> = d.iter().map(|x| -x).collect();
    let ineqs = vec![halfspace_ge(&d, a), halfspace_ge(&neg, b)];
    Ok(HPolyhedron { ambient_dim: a.len(), sedentarity: vec![], ineqs, eqs: affine_eqs(a, &[d]) })
}

pub fn ray(apex: &[Rat], dir: &[i64]) -> HPolyhedron {
    let d = ints(dir);
    HPolyhedron { ambient_dim: apex.len(), sedentarity: vec![], ineqs: vec![halfspace_ge(&d, apex)], eqs: affine_eqs(apex, &[d]) }
}

pub fn line(p: &[Rat], dir: &[i64]) -> HPolyhedron {
    HPolyhedron { ambient_dim: p.len(), sedentarity: vec![], ineqs: vec![], eqs: affine_eqs(p, &[ints(dir)]) }
}

/// Two-dimensional cone `apex + R≥0 d1 + R≥0 d2`.
pub fn cone2(apex: &[Rat], d1: &[i64], d2: &[i64]) -> HPolyhedron {
    let (a, b) = (ints(d1), ints(d2));
    let dd = |x: &[Int], y: &[Int]| x.iter().zip(y).fold(Int::ZERO, |acc, (p, q)| &acc + &(p * q));
    let w1: Vec<Int> = b.iter().zip(&a).map(|(bi, ai)| &(&dd(&a, &a) * bi) - &(&dd(&a, &b) * ai)).collect();
    let w2: Vec<Int> = a.iter().zip(&b).map(|(ai, bi)| &(&dd(&b, &b) * ai) - &(&dd(&a, &b) * bi)).collect();
    let ineqs = vec![halfspace_ge(&w1, apex), halfspace_ge(&w2, apex)];
    HPolyhedron { ambient_dim: apex.len(), sedentarity: vec![], ineqs, eqs: affine_eqs(apex, &[a, b]) }
}

/// Convex polygon in `R^2` from its vertices in cyclic order.
pub fn polygon(vertices: &[[Rat; 2]]) -> Result<HPolyhedron> {
    let m = vertices.len();
    if m < 3 {
        return Err(Error::Malformed("polygon needs at least three vertices".into()));
    }
    let mut ineqs = Vec::new();
    for i in 0..m {
        let (p, q) = (&vertices[i], &vertices[(i + 1) % m]);
        let n = [&q[1] - &p[1], &p[0] - &q[0]];
        let (mut n, _) = primitive_scale(&n);
        let mut off = dot_int(&n, p);
        let other = &vertices[(i + 2) % m];
        if dot_int(&n, other) > off {
            n = n.iter().map(|x| -x).collect();
            off = -off;
        }
        ineqs.push(Constraint::new(n, off));
    }
    Ok(HPolyhedron { ambient_dim: 2, sedentarity: vec![], ineqs, eqs: vec![] })
}

/// Axis-parallel box `[lo_i, hi_i]`.
pub fn boxed(lo: &[Rat], hi: &[Rat]) -> HPolyhedron {
    let r = lo.len();
    let mut ineqs = Vec::new();
    for i in 0..r {
        let mut e = vec![Int::ZERO; r];
        e[i] = Int::ONE;
        ineqs.push(Constraint::new(e.clone(), hi[i].clone()));
        e[i] = Int::from(-1);
        ineqs.push(Constraint::new(e, -&lo[i]));
    }
    HPolyhedron { ambient_dim: r, sedentarity: vec![], ineqs, eqs: vec![] }
}

/// Fan at the origin of `R^r` with the given rays (each ray a cell).
pub fn ray_fan(r: usize, rays: &[Vec<i64>]) -> Result<FaceComplex> {
    let o = vec![Rat::default(); r];
    FaceComplex::from_maximal(r, rays.iter().map(|d| ray(&o, d)).collect())
}

/// The fan in `R^2` with rays `e1`, `e2`, `-e1-e2`.
pub fn u31() -> FaceComplex {
    ray_fan(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]]).expect("fan")
}

/// The segment `[0, 1]` in `R^1`.
pub fn unit_segment() -> FaceComplex {
    FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[1])).expect("segment")]).expect("segment")
}

/// Boundary of the triangle with vertices `(0,0), (1,0), (0,1)`.
pub fn triangle_cycle() -> FaceComplex {
    let v = [rats(&[0, 0]), rats(&[1, 0]), rats(&[0, 1])];
    let edges = (0..3).map(|i| segment(&v[i], &v[(i + 1) % 3]).expect("edge")).collect();
    FaceComplex::from_maximal(2, edges).expect("cycle")
}

/// Complete fan of `R^2` by the four quadrants.
pub fn four_quadrants() -> FaceComplex {
    let o = rats(&[0, 0]);
    let dirs = [[1, 0], [0, 1], [-1, 0], [0, -1]];
    let cones = (0..4).map(|i| cone2(&o, &dirs[i], &dirs[(i + 1) % 4])).collect();
    FaceComplex::from_maximal(2, cones).expect("fan")
}

pub fn int_vec_to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(int_to_rat).collect()
}
