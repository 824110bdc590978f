//! Assembly of allowable chain complexes on a simplicial model.

use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{hnf, kernel_lattice, ChainComplex, IntMatrix, IntegerLattice, SparseIntMatrix};
use crate::stratification::{Perversity, Stratification};
use crate::triangulate::StratifiedTriangulation;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "GM")]
    Gm,
    #[serde(rename = "NONGM")]
    NonGm,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Gm => "GM",
            Variant::NonGm => "NONGM",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['-', '_'], "").as_str() {
            "GM" => Ok(Variant::Gm),
            "NONGM" => Ok(Variant::NonGm),
            _ => Err(Error::Malformed(format!("unknown variant {s:?}"))),
        }
    }
}

/// A simplex tensored with one basis vector of the multi-tangent of its
/// carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub dim: usize,
    pub simplex: u32,
    pub coeff: u32,
}

/// What to assemble on a given model.
#[derive(Clone, Debug)]
pub struct ChainSpec<'a> {
    pub p: usize,
    /// `None` disables the allowability filter (plain tropical chains).
    pub perversity: Option<&'a Perversity>,
    /// Cells whose simplices are dropped from the generators and from
    /// boundaries (the singular part for non-GM chains, or a closed set for
    /// chains relative to it).
    pub excluded: BTreeSet<usize>,
}

/// Sparse chain: generator index and coefficient.
pub type Chain = Vec<(u32, Int)>;

#[derive(Clone, Debug)]
struct Block {
    /// Surviving generator indices of the block.
    gens: Vec<u32>,
    /// HNF basis over `gens`.
    lattice: IntegerLattice,
    /// Chains of the full complex projecting to the basis rows.
    lifts: Vec<Chain>,
}

/// Allowable chains as a free chain complex.
#[derive(Clone, Debug)]
pub struct IChainComplex {
    pub p: usize,
    pub subdivision_level: usize,
    pub generators: Vec<Vec<Generator>>,
    /// Basis chains per degree (lifts to the full chain module when the
    /// complex is a quotient).
    pub bases: Vec<Vec<Chain>>,
    pub complex: ChainComplex,
}

impl IChainComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.complex.dims.clone()
    }
}

/// Per-vertex threshold: a simplex is allowable iff every vertex at position
/// `i` has `i + need ≤ q`.
fn vertex_need(tri: &StratifiedTriangulation, st: &Stratification, perv: &Perversity) -> Vec<i64> {
    tri.geometry
        .vertex_carrier
        .iter()
        .map(|&c| {
            let s = st.stratum_of(c);
            s.codim as i64 - perv.value(s.id)
        })
        .collect()
}

/// Allowability of one simplex: every face carried by a stratum `S` has
/// dimension at most `q - codim(S) + p̄(S)`.
///
/// Vertex carriers along a simplex increase in the face order, so the face
/// spanned by the first `i + 1` vertices is the largest one whose carrier is
/// the carrier of vertex `i`.
pub fn is_allowable(tri: &StratifiedTriangulation, st: &Stratification, perv: &Perversity, dim: usize, idx: usize) -> bool {
    let s = &tri.simplices(dim)[idx];
    s.iter().enumerate().all(|(i, &v)| {
        let stratum = st.stratum_of(tri.vertex_carrier(v));
        i as i64 <= dim as i64 - stratum.codim as i64 + perv.value(stratum.id)
    })
}

struct Degree {
    gens: Vec<Generator>,
    /// first generator of each simplex (u32::MAX if absent)
    first: Vec<u32>,
    allowable: Vec<bool>,
}

fn degrees(
    tri: &StratifiedTriangulation,
    st: &Stratification,
    coeffs: &CoefficientSystem,
    spec: &ChainSpec<'_>,
) -> Result<Vec<Degree>> {
    let need = spec.perversity.map(|p| vertex_need(tri, st, p));
    let top = tri.max_dim().map_or(0, |d| d + 1);
    let mut out = Vec::with_capacity(top);
    for q in 0..top {
        let simplices = tri.simplices(q);
        let mut gens = Vec::new();
        let mut first = vec![u32::MAX; simplices.len()];
        let mut allowable = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            let c = tri.carrier(q, i);
            if !tri.is_alive(q, i) || spec.excluded.contains(&c) {
                continue;
            }
            let rank = coeffs.rank(c, spec.p)?;
            if rank == 0 {
                continue;
            }
            let ok = need
                .as_ref()
                .is_none_or(|need| s.iter().enumerate().all(|(k, &v)| k as i64 + need[v as usize] <= q as i64));
            first[i] = gens.len() as u32;
            for k in 0..rank {
                gens.push(Generator { dim: q, simplex: i as u32, coeff: k as u32 });
                allowable.push(ok);
            }
        }
        out.push(Degree { gens, first, allowable });
    }
    Ok(out)
}

fn boundary_of(
    tri: &StratifiedTriangulation,
    coeffs: &CoefficientSystem,
    spec: &ChainSpec<'_>,
    lower: &Degree,
    g: Generator,
) -> Result<Chain> {
    let q = g.dim;
    let s = &tri.simplices(q)[g.simplex as usize];
    let tau = tri.carrier(q, g.simplex as usize);
    let mut out: Chain = Vec::new();
    for j in 0..=q {
        let face: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect();
        let fi = tri.find(&face).ok_or_else(|| Error::InvalidComplex("missing face in triangulation".into()))?;
        let ft = tri.carrier(q - 1, fi);
        if spec.excluded.contains(&ft) {
            continue;
        }
        let base = lower.first[fi];
        let sign = if j % 2 == 0 { Int::ONE } else { -Int::ONE };
        if ft == tau {
            out.push((base + g.coeff, sign));
            continue;
        }
        let r = coeffs.restriction(tau, ft, spec.p)?;
        for i in 0..r.rows() {
            let x = r.get(i, g.coeff as usize);
            if !x.is_zero() {
                if base == u32::MAX {
                    return Err(Error::InvalidComplex("face generator missing".into()));
                }
                out.push((base + i as u32, &sign * x));
            }
        }
    }
    Ok(out)
}

fn add_into(acc: &mut HashMap<u32, Int>, chain: &Chain, f: &Int) {
    for (g, x) in chain {
        let e = acc.entry(*g).or_insert(Int::ZERO);
        *e += &(x * f);
    }
}

/// Splits the allowable generators of one degree into blocks spanning the
/// chains with allowable boundary: generators whose boundary avoids
/// non-allowable faces are their own block, the rest are grouped by shared
/// non-allowable faces and get the kernel of that block.
fn blocks_of(deg: &Degree, lower: Option<&Degree>, bd: &HashMap<u32, Chain>) -> Vec<(Vec<u32>, Vec<Vec<Int>>)> {
    let allowable: Vec<u32> = (0..deg.gens.len() as u32).filter(|&g| deg.allowable[g as usize]).collect();
    let bad_rows = |g: u32| -> Vec<u32> {
        match lower {
            None => Vec::new(),
            Some(l) => bd[&g].iter().filter(|(r, _)| !l.allowable[*r as usize]).map(|(r, _)| *r).collect(),
        }
    };
    // union-find over generators sharing a bad row
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let mut r = x;
        while parent[&r] != r {
            r = parent[&r];
        }
        let mut y = x;
        while parent[&y] != r {
            let n = parent[&y];
            parent.insert(y, r);
            y = n;
        }
        r
    }
    let mut owner: HashMap<u32, u32> = HashMap::new();
    let mut out = Vec::new();
    for &g in &allowable {
        let rows = bad_rows(g);
        if rows.is_empty() {
            out.push((vec![g], vec![vec![Int::ONE]]));
            continue;
        }
        parent.insert(g, g);
        for r in rows {
            match owner.get(&r) {
                Some(&h) => {
                    let (a, b) = (find(&mut parent, g), find(&mut parent, h));
                    if a != b {
                        parent.insert(a.max(b), a.min(b));
                    }
                }
                None => {
                    owner.insert(r, g);
                }
            }
        }
    }
    let mut comps: HashMap<u32, Vec<u32>> = HashMap::new();
    let keys: Vec<u32> = parent.keys().copied().collect();
    for g in keys {
        let r = find(&mut parent, g);
        comps.entry(r).or_default().push(g);
    }
    let mut comps: Vec<Vec<u32>> = comps.into_values().collect();
    for c in &mut comps {
        c.sort();
    }
    comps.sort();
    for comp in comps {
        let mut rows: Vec<u32> = comp.iter().flat_map(|&g| bad_rows(g)).collect();
        rows.sort();
        rows.dedup();
        let row_at: HashMap<u32, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = IntMatrix::zeros(rows.len(), comp.len());
        for (j, &g) in comp.iter().enumerate() {
            for (r, x) in &bd[&g] {
                if let Some(&i) = row_at.get(r) {
                    let v = m.get(i, j) + x;
                    m.set(i, j, v);
                }
            }
        }
        let k = kernel_lattice(&m);
        if k.rank() > 0 {
            out.push((comp, k.basis));
        }
    }
    out.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
    out
}

/// Projects a block onto the surviving generators and picks an HNF basis of
/// the image with lifts.
fn quotient_block(gens: &[u32], basis: &[Vec<Int>], kept: &dyn Fn(u32) -> bool) -> Option<Block> {
    let pos: Vec<usize> = (0..gens.len()).filter(|&i| kept(gens[i])).collect();
    if pos.is_empty() {
        return None;
    }
    let kept_gens: Vec<u32> = pos.iter().map(|&i| gens[i]).collect();
    if pos.len() == gens.len() && basis.len() == 1 && basis[0].len() == 1 {
        return Some(Block {
            gens: kept_gens,
            lattice: IntegerLattice { ambient_rank: 1, basis: vec![basis[0].clone()] },
            lifts: vec![vec![(gens[0], basis[0][0].clone())]],
        });
    }
    let proj: Vec<Vec<Int>> = basis.iter().map(|b| pos.iter().map(|&i| b[i].clone()).collect()).collect();
    let (h, u) = hnf(&IntMatrix::from_rows(pos.len(), &proj));
    let mut rows = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..h.rows() {
        if h.row(i).iter().all(|x| x.is_zero()) {
            break;
        }
        rows.push(h.row_vec(i));
        let mut full = vec![Int::ZERO; gens.len()];
        for (j, b) in basis.iter().enumerate() {
            let c = u.get(i, j);
            if c.is_zero() {
                continue;
            }
            for (f, x) in full.iter_mut().zip(b) {
                *f += &(c * x);
            }
        }
        lifts.push(gens.iter().zip(full).filter(|(_, x)| !x.is_zero()).map(|(&g, x)| (g, x)).collect());
    }
    if rows.is_empty() {
        return None;
    }
    Some(Block { gens: kept_gens, lattice: IntegerLattice { ambient_rank: pos.len(), basis: rows }, lifts })
}

/// Builds the complex of allowable chains on `tri`; with `quotient` set to
/// a smaller open model on the same triangulation, builds the quotient by
/// the allowable chains of that model.
pub fn assemble(
    tri: &StratifiedTriangulation,
    st: &Stratification,
    coeffs: &CoefficientSystem,
    spec: &ChainSpec<'_>,
    quotient: Option<&StratifiedTriangulation>,
) -> Result<IChainComplex> {
    if let Some(sub) = quotient {
        let base = tri.deleted.clone().unwrap_or_default();
        let inner = sub.deleted.clone().unwrap_or_default();
        if !Arc::ptr_eq(&tri.geometry, &sub.geometry) || !base.is_subset(&inner) {
            return Err(Error::ModelMismatch("the open subset is not modelled on the same triangulation".into()));
        }
    }
    for c in st.of_cell.iter() {
        if *c == usize::MAX {
            return Err(Error::InconsistentStratification(0));
        }
    }
    let degs = degrees(tri, st, coeffs, spec)?;
    let top = degs.len();
    let mut bds: Vec<HashMap<u32, Chain>> = Vec::with_capacity(top);
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(top);
    for q in 0..top {
        let deg = &degs[q];
        let lower = if q == 0 { None } else { Some(&degs[q - 1]) };
        let mut bd = HashMap::new();
        if let Some(l) = lower {
            for g in 0..deg.gens.len() as u32 {
                if deg.allowable[g as usize] {
                    bd.insert(g, boundary_of(tri, coeffs, spec, l, deg.gens[g as usize])?);
                }
            }
        }
        let raw = blocks_of(deg, lower, &bd);
        let kept = |g: u32| -> bool {
            match quotient {
                None => true,
                Some(sub) => !sub.is_alive(q, deg.gens[g as usize].simplex as usize),
            }
        };
        blocks.push(raw.iter().filter_map(|(gens, basis)| quotient_block(gens, basis, &kept)).collect());
        bds.push(bd);
    }
    // generator -> (block, position)
    let locate: Vec<HashMap<u32, (usize, usize)>> = blocks
        .iter()
        .map(|bl| bl.iter().enumerate().flat_map(|(b, blk)| blk.gens.iter().enumerate().map(move |(i, &g)| (g, (b, i)))).collect())
        .collect();
    let offsets: Vec<Vec<usize>> = blocks
        .iter()
        .map(|bl| {
            let mut acc = 0;
            bl.iter()
                .map(|b| {
                    let o = acc;
                    acc += b.lattice.rank();
                    o
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = blocks.iter().map(|bl| bl.iter().map(|b| b.lattice.rank()).sum()).collect();
    let mut boundaries = vec![SparseIntMatrix::new(0, dims.first().copied().unwrap_or(0))];
    for q in 1..top {
        let mut cols = Vec::with_capacity(dims[q]);
        for blk in &blocks[q] {
            for lift in &blk.lifts {
                let mut acc: HashMap<u32, Int> = HashMap::new();
                for (g, x) in lift {
                    add_into(&mut acc, &bds[q][g], x);
                }
                let mut per_block: HashMap<usize, Vec<Int>> = HashMap::new();
                for (g, x) in acc {
                    if x.is_zero() {
                        continue;
                    }
                    match locate[q - 1].get(&g) {
                        Some(&(b, i)) => {
                            let n = blocks[q - 1][b].gens.len();
                            per_block.entry(b).or_insert_with(|| vec![Int::ZERO; n])[i] = x;
                        }
                        None => {
                            let alive_in_sub = quotient
                                .is_some_and(|sub| sub.is_alive(q - 1, degs[q - 1].gens[g as usize].simplex as usize));
                            if !alive_in_sub {
                                return Err(Error::InvalidComplex("boundary leaves the allowable chains".into()));
                            }
                        }
                    }
                }
                let mut col: Vec<(u32, Int)> = Vec::new();
                for (b, v) in per_block {
                    let coords = blocks[q - 1][b]
                        .lattice
                        .coordinates(&v)
                        .ok_or_else(|| Error::InvalidComplex("boundary not in the chain lattice".into()))?;
                    for (i, c) in coords.into_iter().enumerate() {
                        if !c.is_zero() {
                            col.push(((offsets[q - 1][b] + i) as u32, c));
                        }
                    }
                }
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
        boundaries.push(SparseIntMatrix::from_columns(dims[q - 1], cols));
    }
    let complex = ChainComplex { dims, boundaries };
    complex.check()?;
    Ok(IChainComplex {
        p: spec.p,
        subdivision_level: tri.subdivision_level,
        generators: degs.into_iter().map(|d| d.gens).collect(),
        bases: blocks.into_iter().map(|bl| bl.into_iter().flat_map(|b| b.lifts).collect()).collect(),
        complex,
    })
}

/// Allowable chain complex of the whole model, GM or non-GM.
pub fn build_ic_complex(
    tri: &StratifiedTriangulation,
    st: &Stratification,
    coeffs: &CoefficientSystem,
    perv: &Perversity,
    p: usize,
    variant: Variant,
) -> Result<IChainComplex> {
    let excluded = match variant {
        Variant::Gm => BTreeSet::new(),
        Variant::NonGm => st.singular_cells(),
    };
    assemble(tri, st, coeffs, &ChainSpec { p, perversity: Some(perv), excluded }, None)
}
