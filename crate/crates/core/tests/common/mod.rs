//! Reference implementations and property checks shared by the test
//! targets.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use tropih::ic::{is_allowable, Flavor, Model, Space, Variant};
use tropih::instance::Instance;
use tropih::linalg::{cohomology_of_complex, homology_of_complex, uct_consistent, Coeff, HomologyGroup};
use tropih::polyhedral::builders::{boxed, point, rats, segment, triangle_cycle, u31, unit_segment};
use tropih::polyhedral::rat::rat;
use tropih::polyhedral::FaceComplex;
use tropih::stratification::{face_filtration, trop_filtration, Perversity, Stratification};
use tropih::suites::{default_corpus, load_suite};
use tropih::triangulate::StratifiedTriangulation;

pub type Check = Result<(), String>;

pub fn corpus() -> Vec<Instance> {
    let dir = default_corpus();
    let mut v = load_suite(&dir, "all").unwrap();
    v.extend(load_suite(&dir, "independence").unwrap());
    v
}

pub fn setup(inst: &Instance) -> (Space, Perversity) {
    let s = inst.space().unwrap();
    let p = inst.perversity_on(&s).unwrap();
    (s, p)
}

pub fn groups_at(space: &Space, model: &Model, perv: Option<&Perversity>, variant: Variant, p: usize, level: usize) -> Vec<HomologyGroup> {
    let ic = space.chain_complex(model, perv, variant, p, level).unwrap();
    homology_of_complex(&ic.complex, Coeff::Z).unwrap()
}

// ---- small exact integer helpers ----

pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

pub fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combos(n - 1, k);
    for mut c in combos(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k×k minors.
pub fn minor_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    let mut g = 0;
    for rs in combos(r, k) {
        for cs in combos(c, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

/// Invariant factors from determinantal divisors.
pub fn brute_invariants(m: &[Vec<i128>]) -> Vec<i128> {
    let n = m.len().min(m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=n {
        let g = minor_gcd(m, k);
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn brute_rank(m: &[Vec<i128>]) -> usize {
    let n = m.len().min(m.first().map_or(0, Vec::len));
    (1..=n).rev().find(|&k| minor_gcd(m, k) != 0).unwrap_or(0)
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let k = b.len();
    a.iter().map(|row| (0..b.first().map_or(0, Vec::len)).map(|j| (0..k).map(|t| row[t] * b[t][j]).sum()).collect()).collect()
}

// ---- allowability and classical intersection homology ----

/// Largest dimension of a face of the simplex lying in the stratum.
fn max_face_dim_in(tri: &StratifiedTriangulation, st: &Stratification, s: &[u32], stratum: usize) -> Option<usize> {
    let n = s.len();
    let mut best = None;
    for mask in 1u32..(1 << n) {
        let face: Vec<u32> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
        let d = face.len() - 1;
        let idx = tri.find(&face).expect("faces are simplices");
        if st.of_cell[tri.carrier(d, idx)] == stratum && best.is_none_or(|b| d > b) {
            best = Some(d);
        }
    }
    best
}

pub fn allowable_by_faces(tri: &StratifiedTriangulation, st: &Stratification, perv: &Perversity, d: usize, i: usize) -> bool {
    let s = &tri.simplices(d)[i];
    st.strata.iter().filter(|x| !x.regular).all(|x| match max_face_dim_in(tri, st, s, x.id) {
        None => true,
        Some(k) => k as i64 <= d as i64 - x.codim as i64 + perv.value(x.id),
    })
}

pub fn check_vertex_allowability(inst: &Instance) -> Check {
    let (space, _) = setup(inst);
    let st = space.stratification();
    let tri = space.triangulation(2).unwrap();
    for m in -2..=2 {
        let perv = Perversity::constant(st, m);
        for d in 0..=tri.max_dim().unwrap_or(0) {
            for i in 0..tri.simplices(d).len() {
                if is_allowable(&tri, st, &perv, d, i) != allowable_by_faces(&tri, st, &perv, d, i) {
                    return Err(format!("{} m={m} simplex {:?}", inst.name, tri.simplices(d)[i]));
                }
            }
        }
    }
    Ok(())
}

type Mat = Vec<Vec<BigRational>>;

fn reduce(m: &mut Mat, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = BigRational::one() / m[r][c].clone();
        let prow: Vec<BigRational> = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    m[i][j] = &m[i][j] - &(&f * &prow[j]);
                }
            }
        }
        m[r] = prow;
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank_q(mut m: Mat) -> usize {
    let n = m.first().map_or(0, Vec::len);
    reduce(&mut m, n).len()
}

/// Basis of `{x : m x = 0}` for an `r × n` matrix.
fn nullspace_q(m: &Mat, n: usize) -> Mat {
    let mut a = m.clone();
    let pivots = reduce(&mut a, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -a[row][f].clone();
            }
            x
        })
        .collect()
}

/// Classical intersection homology ranks over Q on one triangulation, with
/// allowability from face enumeration.
pub fn classical_ih(tri: &StratifiedTriangulation, st: &Stratification, perv: &Perversity, gm: bool) -> Vec<usize> {
    let sigma: BTreeSet<usize> = st.singular_cells();
    let top = tri.max_dim().map_or(0, |d| d + 1);
    let kept = |d: usize, i: usize| gm || !sigma.contains(&tri.carrier(d, i));
    let allowed: Vec<Vec<usize>> = (0..top)
        .map(|d| (0..tri.simplices(d).len()).filter(|&i| kept(d, i) && allowable_by_faces(tri, st, perv, d, i)).collect())
        .collect();
    let boundary = |d: usize, i: usize| -> Vec<(usize, i64)> {
        if d == 0 {
            return vec![];
        }
        let s = &tri.simplices(d)[i];
        (0..s.len())
            .filter_map(|k| {
                let mut f = s.clone();
                f.remove(k);
                let j = tri.find(&f).unwrap();
                kept(d - 1, j).then_some((j, if k % 2 == 0 { 1 } else { -1 }))
            })
            .collect()
    };
    // IC_d: chains on allowable simplices whose boundary avoids the rest
    let ic: Vec<Mat> = (0..top)
        .map(|d| {
            let a = &allowed[d];
            if d == 0 {
                return (0..a.len())
                    .map(|k| (0..a.len()).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect())
                    .collect();
            }
            let bad: Vec<usize> = (0..tri.simplices(d - 1).len()).filter(|&j| kept(d - 1, j) && !allowed[d - 1].contains(&j)).collect();
            let mut m: Mat = vec![vec![BigRational::zero(); a.len()]; bad.len()];
            for (col, &i) in a.iter().enumerate() {
                for (j, sgn) in boundary(d, i) {
                    if let Some(row) = bad.iter().position(|&b| b == j) {
                        m[row][col] += BigRational::from_integer(sgn.into());
                    }
                }
            }
            nullspace_q(&m, a.len())
        })
        .collect();
    let image = |d: usize| -> Mat {
        let prev = &allowed[d - 1];
        ic[d]
            .iter()
            .map(|x| {
                let mut full = vec![BigRational::zero(); tri.simplices(d - 1).len()];
                for (col, &i) in allowed[d].iter().enumerate() {
                    for (j, sgn) in boundary(d, i) {
                        full[j] += &x[col] * BigRational::from_integer(sgn.into());
                    }
                }
                for (j, v) in full.iter().enumerate() {
                    assert!(v.is_zero() || prev.contains(&j), "boundary of an IC chain is allowable");
                }
                prev.iter().map(|&j| full[j].clone()).collect()
            })
            .collect()
    };
    (0..top)
        .map(|d| {
            let dim = ic[d].len();
            let cycles = if d == 0 { dim } else { dim - rank_q(image(d)) };
            let bounds = if d + 1 < top { rank_q(image(d + 1)) } else { 0 };
            cycles - bounds
        })
        .collect()
}

pub const CLASSICAL_NAMES: [&str; 8] =
    ["u31_m+0", "u31_m-1", "quadrant_m+1", "quadrants4_m-1", "segment_zero", "triangle_zero", "tripod_m+0", "square_pair"];

pub fn check_classical(inst: &Instance) -> Check {
    let (space, _) = setup(inst);
    let st = space.stratification();
    let tri = space.triangulation(2).unwrap();
    for m in -1..=1 {
        let perv = Perversity::constant(st, m);
        for (variant, gm) in [(Variant::Gm, true), (Variant::NonGm, false)] {
            let engine: Vec<usize> = groups_at(&space, &Model::whole(), Some(&perv), variant, 0, 2).iter().map(|g| g.free_rank).collect();
            let reference = classical_ih(&tri, st, &perv, gm);
            if engine != reference {
                return Err(format!("{} m={m} {variant:?}: engine {engine:?}, classical {reference:?}", inst.name));
            }
        }
    }
    Ok(())
}

// ---- corpus-wide structural checks ----

pub fn check_boundaries(inst: &Instance) -> Check {
    let (space, perv) = setup(inst);
    for variant in [Variant::Gm, Variant::NonGm] {
        for p in space.p_range() {
            let ic = space.chain_complex(&Model::whole(), Some(&perv), variant, p, 2).map_err(|e| e.to_string())?;
            for cc in [ic.complex.clone(), ic.complex.dual()] {
                let b = &cc.boundaries;
                for q in 1..b.len() {
                    if !b[q - 1].mul(&b[q]).is_zero() {
                        return Err(format!("{}: {variant:?} p={p} q={q}", inst.name));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn check_stability(inst: &Instance) -> Check {
    let (space, perv) = setup(inst);
    for variant in [Variant::Gm, Variant::NonGm] {
        for p in space.p_range() {
            let a = groups_at(&space, &Model::whole(), Some(&perv), variant, p, 2);
            let b = groups_at(&space, &Model::whole(), Some(&perv), variant, p, 3);
            if a != b {
                return Err(format!("{} {variant:?} p={p}: {a:?} vs {b:?}", inst.name));
            }
        }
    }
    Ok(())
}

pub fn check_uct(inst: &Instance) -> Check {
    let (space, perv) = setup(inst);
    for variant in [Variant::Gm, Variant::NonGm] {
        for p in space.p_range() {
            let ic = space.chain_complex(&Model::whole(), Some(&perv), variant, p, 2).unwrap();
            let h = homology_of_complex(&ic.complex, Coeff::Z).unwrap();
            let c = cohomology_of_complex(&ic.complex, Coeff::Z).unwrap();
            if !uct_consistent(&h, &c) {
                return Err(format!("{} {variant:?} p={p}", inst.name));
            }
        }
        space.cohomology(&perv, space.p_range(), variant, Coeff::Z, false).map_err(|e| format!("{}: {e}", inst.name))?;
    }
    Ok(())
}

// ---- hand-built spaces for the remarks, excision and Mayer-Vietoris ----

fn square() -> FaceComplex {
    FaceComplex::from_maximal(2, vec![boxed(&rats(&[0, 0]), &rats(&[1, 1]))]).unwrap()
}

pub fn remark_spaces() -> Vec<(&'static str, Space)> {
    let conical_u31 = Space::new(u31(), trop_filtration(&u31()).unwrap()).unwrap().conical(0).unwrap();
    let tri = triangle_cycle();
    let sq = square();
    let seg = unit_segment();
    vec![
        ("u31", conical_u31),
        ("triangle", Space::new(tri.clone(), face_filtration(&tri)).unwrap()),
        ("square", Space::new(sq.clone(), trop_filtration(&sq).unwrap()).unwrap()),
        ("square_faces", Space::new(sq.clone(), face_filtration(&sq)).unwrap()),
        ("segment", Space::new(seg.clone(), trop_filtration(&seg).unwrap()).unwrap()),
    ]
}

/// Perversity at least the codimension: every chain is allowable.
pub fn check_large_perversity(name: &str, space: &Space) -> Check {
    let perv = Perversity::from_codim(space.stratification(), |c| c as i64);
    for coeff in [Coeff::Q, Coeff::Z] {
        let gm = space.homology(&perv, space.p_range(), Variant::Gm, coeff).map_err(|e| e.to_string())?;
        let trop = space.tropical_homology(space.p_range(), coeff).map_err(|e| e.to_string())?;
        if gm.nonzero() != trop.nonzero() {
            return Err(format!("{name} {coeff:?}"));
        }
    }
    Ok(())
}

/// Perversity at most `codim - 2`.
pub fn check_small_perversity(name: &str, space: &Space) -> Check {
    let st = space.stratification();
    for perv in [Perversity::from_codim(st, |c| c as i64 - 2), Perversity::from_codim(st, |c| c as i64 - 3)] {
        for coeff in [Coeff::Q, Coeff::Z] {
            let gm = space.homology(&perv, space.p_range(), Variant::Gm, coeff).map_err(|e| e.to_string())?;
            let ngm = space.homology(&perv, space.p_range(), Variant::NonGm, coeff).map_err(|e| e.to_string())?;
            if gm.nonzero() != ngm.nonzero() {
                return Err(format!("{name} {coeff:?} {:?}", perv.values));
            }
        }
    }
    Ok(())
}

pub struct Cover {
    pub name: &'static str,
    pub space: Space,
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
}

/// Two disjoint closed sets `A`, `B`; the charts are `X ∖ A` and `X ∖ B`.
pub fn covers() -> Vec<Cover> {
    let find_point = |c: &FaceComplex, p: &[i64]| c.find_cell(&point(&rats(p)).canonical().unwrap()).unwrap();
    let tri = triangle_cycle();
    let (a, b) = (find_point(&tri, &[0, 0]), find_point(&tri, &[1, 0]));
    let tri_space = Space::new(tri.clone(), face_filtration(&tri)).unwrap();

    let sq = square();
    let side = |x: i64| -> BTreeSet<usize> {
        (0..sq.len()).filter(|&i| sq.dim(i) <= 1 && sq.relint_point(i).finite_part()[0] == rat(x)).collect()
    };
    let (left, right) = (side(0), side(1));
    let sq_space = Space::new(sq.clone(), trop_filtration(&sq).unwrap()).unwrap();

    let path = FaceComplex::from_maximal(
        2,
        vec![
            segment(&rats(&[0, 0]), &rats(&[1, 0])).unwrap(),
            segment(&rats(&[1, 0]), &rats(&[1, 1])).unwrap(),
            segment(&rats(&[1, 1]), &rats(&[2, 1])).unwrap(),
        ],
    )
    .unwrap();
    let (pa, pb) = (find_point(&path, &[1, 0]), find_point(&path, &[1, 1]));
    let path_space = Space::new(path.clone(), trop_filtration(&path).unwrap()).unwrap();
    vec![
        Cover { name: "triangle", space: tri_space, a: BTreeSet::from([a]), b: BTreeSet::from([b]) },
        Cover { name: "square", space: sq_space, a: left, b: right },
        Cover { name: "bent_path", space: path_space, a: BTreeSet::from([pa]), b: BTreeSet::from([pb]) },
    ]
}

/// `IH(X, X ∖ A) ≅ IH(X ∖ B, X ∖ (A ∪ B))`.
pub fn check_excision(c: &Cover) -> Check {
    let space = &c.space;
    let ab: BTreeSet<usize> = c.a.union(&c.b).copied().collect();
    for m in [-1, 0, 1] {
        let perv = Perversity::constant(space.stratification(), m);
        for variant in [Variant::Gm, Variant::NonGm] {
            let run = |model: Model| {
                space.stable_groups(&model, Some(&perv), variant, space.p_range(), Coeff::Z, false, Flavor::IhRel).map_err(|e| e.to_string())
            };
            let lhs = run(Model::pair(c.a.clone()))?;
            let rhs = run(Model { deleted: c.b.clone(), relative: Some(ab.clone()), ..Model::default() })?;
            if lhs.nonzero() != rhs.nonzero() {
                return Err(format!("{} m={m} {variant:?}", c.name));
            }
        }
    }
    Ok(())
}

/// Ranks along `… → IH_q(U∩V) → IH_q(U) ⊕ IH_q(V) → IH_q(X) → IH_{q-1}(U∩V) → …`
/// satisfy exactness: alternating sum zero, each term bounded by its
/// neighbours.
pub fn check_mayer_vietoris(c: &Cover) -> Check {
    let space = &c.space;
    let ab: BTreeSet<usize> = c.a.union(&c.b).copied().collect();
    let n = space.formal_dim();
    for m in [-1, 0, 1] {
        let perv = Perversity::constant(space.stratification(), m);
        for variant in [Variant::Gm, Variant::NonGm] {
            let open = |z: &BTreeSet<usize>| space.open_homology(z, &perv, space.p_range(), variant, Coeff::Q).map_err(|e| e.to_string());
            let (x, u, v, uv) = (open(&BTreeSet::new())?, open(&c.a)?, open(&c.b)?, open(&ab)?);
            for p in space.p_range() {
                let mut seq = Vec::new();
                for q in (0..=n).rev() {
                    seq.push(uv.rank(p, q));
                    seq.push(u.rank(p, q) + v.rank(p, q));
                    seq.push(x.rank(p, q));
                }
                seq.reverse();
                let alt: i64 = seq.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
                let bounded = seq.windows(3).all(|w| w[1] <= w[0] + w[2]) && seq[0] <= seq[1] && seq[seq.len() - 1] <= seq[seq.len() - 2];
                if alt != 0 || !bounded {
                    return Err(format!("{} m={m} {variant:?} p={p}: {seq:?}", c.name));
                }
            }
        }
    }
    Ok(())
}
