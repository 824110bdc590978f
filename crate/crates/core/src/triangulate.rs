//! Simplicial models of complexes: a flag triangulation refining the cells,
//! barycentric subdivision, and open models obtained by deleting a closed
//! subcomplex.
//!
//! Level 1 is the order complex of the (truncated) cell structure, which is
//! already its barycentric subdivision; level `s + 1` subdivides level `s`.
//! Every simplex is a chain, so its carrier is the carrier of its last
//! vertex.

use crate::error::{Error, Result};
use crate::polyhedral::builders::boxed;
use crate::polyhedral::rat::{fmt_rat, Rat};
use crate::polyhedral::{ExtendedPoint, FaceComplex, HPolyhedron};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// How unbounded cells are cut off.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruncationOptions {
    /// Cone vertex of a conical complex; unbounded cells are then cut by the
    /// box of the given radius (default 1) around it.
    pub cone_vertex: Option<usize>,
    /// Explicit radius of the cutting box.
    pub radius: Option<Rat>,
}

/// Shared geometric data of a triangulation.
#[derive(Debug)]
pub struct Geometry {
    pub vertices: Vec<Vec<Rat>>,
    pub vertex_carrier: Vec<usize>,
    /// Simplices by dimension, each a strictly increasing vertex tuple;
    /// each dimension is sorted.
    pub simplices: Vec<Vec<Vec<u32>>>,
    pub carriers: Vec<Vec<usize>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl Geometry {
    fn new(vertices: Vec<Vec<Rat>>, vertex_carrier: Vec<usize>, mut by_dim: Vec<Vec<(Vec<u32>, usize)>>) -> Self {
        while by_dim.last().is_some_and(|d| d.is_empty()) {
            by_dim.pop();
        }
        let mut simplices = Vec::with_capacity(by_dim.len());
        let mut carriers = Vec::with_capacity(by_dim.len());
        let mut index = Vec::with_capacity(by_dim.len());
        for mut list in by_dim {
            list.sort();
            let map: HashMap<Vec<u32>, u32> = list.iter().enumerate().map(|(i, (s, _))| (s.clone(), i as u32)).collect();
            carriers.push(list.iter().map(|x| x.1).collect());
            simplices.push(list.into_iter().map(|x| x.0).collect());
            index.push(map);
        }
        Geometry { vertices, vertex_carrier, simplices, carriers, index }
    }

    pub fn find(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).map(|&i| i as usize)
    }
}

/// Simplicial model with carrier map, possibly with a deleted closed
/// subcomplex (an open-subset model).
#[derive(Clone, Debug)]
pub struct StratifiedTriangulation {
    pub geometry: Arc<Geometry>,
    pub subdivision_level: usize,
    pub deleted: Option<BTreeSet<usize>>,
    alive: Option<Arc<Vec<Vec<bool>>>>,
}

impl StratifiedTriangulation {
    pub fn max_dim(&self) -> Option<usize> {
        self.geometry.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.geometry.simplices.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn carrier(&self, dim: usize, idx: usize) -> usize {
        self.geometry.carriers[dim][idx]
    }

    pub fn vertex_carrier(&self, v: u32) -> usize {
        self.geometry.vertex_carrier[v as usize]
    }

    pub fn find(&self, s: &[u32]) -> Option<usize> {
        self.geometry.find(s)
    }

    pub fn is_alive(&self, dim: usize, idx: usize) -> bool {
        self.alive.as_ref().is_none_or(|a| a[dim][idx])
    }

    /// Simplex counts per dimension, alive simplices only.
    pub fn counts(&self) -> Vec<usize> {
        (0..self.geometry.simplices.len())
            .map(|d| (0..self.geometry.simplices[d].len()).filter(|&i| self.is_alive(d, i)).count())
            .collect()
    }

    pub fn barycenter(&self, dim: usize, idx: usize) -> Vec<Rat> {
        let s = &self.geometry.simplices[dim][idx];
        average(s.iter().map(|&v| &self.geometry.vertices[v as usize]))
    }

    pub fn to_json(&self) -> Value {
        let g = &self.geometry;
        let simplices: serde_json::Map<String, Value> = g
            .simplices
            .iter()
            .enumerate()
            .map(|(d, l)| {
                let alive: Vec<&Vec<u32>> = l.iter().enumerate().filter(|(i, _)| self.is_alive(d, *i)).map(|x| x.1).collect();
                (d.to_string(), json!(alive))
            })
            .collect();
        let carriers: serde_json::Map<String, Value> = g
            .carriers
            .iter()
            .enumerate()
            .map(|(d, l)| {
                let alive: Vec<usize> = l.iter().enumerate().filter(|(i, _)| self.is_alive(d, *i)).map(|x| *x.1).collect();
                (d.to_string(), json!(alive))
            })
            .collect();
        json!({
            "subdivision_level": self.subdivision_level,
            "vertices": g.vertices.iter().map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "simplices": simplices,
            "carriers": carriers,
            "deleted": self.deleted.as_ref().map(|d| d.iter().copied().collect::<Vec<_>>()),
        })
    }
}

fn average<'a>(pts: impl Iterator<Item = &'a Vec<Rat>>) -> Vec<Rat> {
    let mut acc: Vec<Rat> = Vec::new();
    let mut n = 0i64;
    for p in pts {
        if acc.is_empty() {
            acc = p.clone();
        } else {
            for (a, x) in acc.iter_mut().zip(p) {
                *a += x;
            }
        }
        n += 1;
    }
    let n = Rat::from_integer(n.into());
    acc.into_iter().map(|x| x / &n).collect()
}

struct Piece {
    dim: usize,
    verts: Vec<Vec<Rat>>,
    bary: Vec<Rat>,
    carrier: usize,
}

/// Order complex of the cell structure (level 1); unbounded cells are cut by
/// a box.
pub fn stratified_triangulation(c: &FaceComplex, opts: &TruncationOptions) -> Result<StratifiedTriangulation> {
    let r = c.ambient_dim();
    if let Some(i) = (0..c.len()).find(|&i| !c.sedentarity(i).is_empty()) {
        return Err(Error::UnsupportedSedentarity(i));
    }
    let unbounded: Vec<bool> = (0..c.len()).map(|i| !c.is_bounded(i)).collect();
    let cut = if let Some(i) = unbounded.iter().position(|&u| u) {
        let center = match opts.cone_vertex {
            Some(v) => {
                c.check_id(v)?;
                if c.dim(v) != 0 {
                    return Err(Error::NotAFan(format!("cone vertex {v} is not a point")));
                }
                c.relint_point(v).finite_part()
            }
            None if opts.radius.is_some() => vec![Rat::zero(); r],
            None => return Err(Error::UnboundedCellWithoutConeStructure(i)),
        };
        let radius = opts.radius.clone().unwrap_or_else(|| Rat::from_integer(1.into()));
        // all bounded structure must sit strictly inside the box
        for k in 0..c.len() {
            if unbounded[k] {
                continue;
            }
            for v in c.cell(k)?.vertices()? {
                let far = v.finite_part().iter().zip(&center).any(|(x, y)| (x - y).abs() >= radius);
                if far && opts.cone_vertex != Some(k) {
                    return Err(Error::Malformed("truncation radius does not contain all bounded cells".into()));
                }
            }
        }
        let lo: Vec<Rat> = center.iter().map(|x| x - &radius).collect();
        let hi: Vec<Rat> = center.iter().map(|x| x + &radius).collect();
        Some(boxed(&lo, &hi))
    } else {
        None
    };

    // pieces keyed by their vertex sets
    let mut pieces: HashMap<Vec<Vec<Rat>>, Piece> = HashMap::new();
    for k in 0..c.len() {
        if !c.cofaces(k).is_empty() && !unbounded[k] {
            continue; // bounded non-maximal cells appear as faces of maximal ones
        }
        let base = c.cell(k)?;
        let poly: HPolyhedron = match (&cut, unbounded[k]) {
            (Some(b), true) => base.intersect(b),
            _ => base.clone(),
        };
        for f in poly.faces_same_sedentarity()? {
            let mut verts: Vec<Vec<Rat>> = f.vertices()?.iter().map(ExtendedPoint::finite_part).collect();
            verts.sort();
            if pieces.contains_key(&verts) {
                continue;
            }
            let bary = average(verts.iter());
            let carrier = c
                .locate(&ExtendedPoint::finite(bary.clone()))
                .ok_or_else(|| Error::InvalidComplex("piece barycenter lies in no cell".into()))?;
            let cell = c.cell(carrier)?;
            for v in &verts {
                if !cell.closure_contains(&ExtendedPoint::finite(v.clone()))? {
                    return Err(Error::InvalidComplex(format!("piece of cell {k} is not inside its carrier {carrier}")));
                }
            }
            pieces.insert(verts.clone(), Piece { dim: f.canonical_dim(), verts, bary, carrier });
        }
    }
    let mut list: Vec<Piece> = pieces.into_values().collect();
    list.sort_by(|a, b| (a.dim, &a.bary).cmp(&(b.dim, &b.bary)));
    // proper sub-pieces by vertex-set inclusion
    let sets: Vec<BTreeSet<&Vec<Rat>>> = list.iter().map(|p| p.verts.iter().collect()).collect();
    let below: Vec<Vec<usize>> = (0..list.len())
        .map(|i| (0..i).filter(|&j| list[j].dim < list[i].dim && sets[j].is_subset(&sets[i])).collect())
        .collect();
    let mut chains_at: Vec<Vec<Vec<u32>>> = Vec::with_capacity(list.len());
    let max_dim = list.iter().map(|p| p.dim).max();
    let mut by_dim: Vec<Vec<(Vec<u32>, usize)>> = vec![Vec::new(); max_dim.map_or(0, |d| d + 1)];
    for i in 0..list.len() {
        let mut chains = vec![vec![i as u32]];
        for &j in &below[i] {
            for ch in &chains_at[j] {
                let mut x = ch.clone();
                x.push(i as u32);
                chains.push(x);
            }
        }
        for ch in &chains {
            by_dim[ch.len() - 1].push((ch.clone(), list[i].carrier));
        }
        chains_at.push(chains);
    }
    let vertices = list.iter().map(|p| p.bary.clone()).collect();
    let vertex_carrier = list.iter().map(|p| p.carrier).collect();
    Ok(StratifiedTriangulation {
        geometry: Arc::new(Geometry::new(vertices, vertex_carrier, by_dim)),
        subdivision_level: 1,
        deleted: None,
        alive: None,
    })
}

/// Chains of nonempty sub-masks ending at `full`, as mask sequences.
fn chain_templates(d: usize) -> Vec<Vec<u32>> {
    let full = (1u32 << (d + 1)) - 1;
    let mut memo: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
    fn rec(m: u32, memo: &mut HashMap<u32, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
        if let Some(v) = memo.get(&m) {
            return v.clone();
        }
        let mut out = vec![vec![m]];
        let mut sub = (m - 1) & m;
        while sub > 0 {
            for mut ch in rec(sub, memo) {
                ch.push(m);
                out.push(ch);
            }
            sub = (sub - 1) & m;
        }
        memo.insert(m, out.clone());
        out
    }
    rec(full, &mut memo)
}

/// One barycentric subdivision; deleted markers are carried over.
pub fn barycentric_subdivide(t: &StratifiedTriangulation) -> StratifiedTriangulation {
    let g = &t.geometry;
    let dims = g.simplices.len();
    let mut offset = vec![0u32; dims + 1];
    for d in 0..dims {
        offset[d + 1] = offset[d] + g.simplices[d].len() as u32;
    }
    let mut vertices = Vec::with_capacity(offset[dims] as usize);
    let mut vertex_carrier = Vec::with_capacity(offset[dims] as usize);
    for d in 0..dims {
        for (i, s) in g.simplices[d].iter().enumerate() {
            vertices.push(average(s.iter().map(|&v| &g.vertices[v as usize])));
            vertex_carrier.push(g.carriers[d][i]);
        }
    }
    let templates: Vec<Vec<Vec<u32>>> = (0..dims).map(chain_templates).collect();
    let mut by_dim: Vec<Vec<(Vec<u32>, usize)>> = vec![Vec::new(); dims];
    for d in 0..dims {
        for (i, s) in g.simplices[d].iter().enumerate() {
            // new vertex id of every face of s, by mask
            let full = (1usize << (d + 1)) - 1;
            let mut face_id = vec![0u32; full + 1];
            for m in 1..=full {
                let face: Vec<u32> = (0..=d).filter(|b| m & (1 << b) != 0).map(|b| s[b]).collect();
                let fd = face.len() - 1;
                let idx = g.find(&face).expect("faces of simplices are simplices");
                face_id[m] = offset[fd] + idx as u32;
            }
            for ch in &templates[d] {
                let verts: Vec<u32> = ch.iter().map(|&m| face_id[m as usize]).collect();
                by_dim[verts.len() - 1].push((verts, g.carriers[d][i]));
            }
        }
    }
    let geometry = Arc::new(Geometry::new(vertices, vertex_carrier, by_dim));
    let alive = t.deleted.as_ref().map(|z| Arc::new(alive_flags(&geometry, z)));
    StratifiedTriangulation { geometry, subdivision_level: t.subdivision_level + 1, deleted: t.deleted.clone(), alive }
}

fn alive_flags(g: &Geometry, z: &BTreeSet<usize>) -> Vec<Vec<bool>> {
    let vdead: Vec<bool> = g.vertex_carrier.iter().map(|c| z.contains(c)).collect();
    g.simplices.iter().map(|l| l.iter().map(|s| !s.iter().any(|&v| vdead[v as usize])).collect()).collect()
}

/// Model of `X ∖ |Z|`: drops every simplex meeting `|Z|`. `Z` must be a
/// closed subcomplex; deleting twice unions the deleted sets.
pub fn delete_closed(c: &FaceComplex, t: &StratifiedTriangulation, z: &BTreeSet<usize>) -> Result<StratifiedTriangulation> {
    for &i in z {
        c.check_id(i)?;
        if c.faces(i).iter().any(|f| !z.contains(f)) {
            return Err(Error::NotClosed(i));
        }
    }
    let mut all = t.deleted.clone().unwrap_or_default();
    all.extend(z.iter().copied());
    let alive = if all.is_empty() { None } else { Some(Arc::new(alive_flags(&t.geometry, &all))) };
    Ok(StratifiedTriangulation {
        geometry: t.geometry.clone(),
        subdivision_level: t.subdivision_level,
        deleted: if all.is_empty() { None } else { Some(all) },
        alive,
    })
}

/// Level `level` model (at least 1).
pub fn triangulation_at_level(c: &FaceComplex, opts: &TruncationOptions, level: usize) -> Result<StratifiedTriangulation> {
    let mut t = stratified_triangulation(c, opts)?;
    while t.subdivision_level < level.max(1) {
        t = barycentric_subdivide(&t);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::builders::{polygon, rats, u31, unit_segment};
    use crate::polyhedral::rat::rat;

    #[test]
    fn segment_levels() {
        let t = stratified_triangulation(&unit_segment(), &TruncationOptions::default()).unwrap();
        assert_eq!(t.counts(), vec![3, 2]);
        let t2 = barycentric_subdivide(&t);
        assert_eq!(t2.counts(), vec![5, 4]);
    }

    #[test]
    fn square_is_coned() {
        let sq = polygon(&[[rat(0), rat(0)], [rat(1), rat(0)], [rat(1), rat(1)], [rat(0), rat(1)]]).unwrap();
        let c = FaceComplex::from_maximal(2, vec![sq]).unwrap();
        let t = stratified_triangulation(&c, &TruncationOptions::default()).unwrap();
        // vertices, edge midpoints, center; 8 triangles of the order complex
        assert_eq!(t.counts(), vec![9, 16, 8]);
        for d in 0..3 {
            for i in 0..t.simplices(d).len() {
                let b = ExtendedPoint::finite(t.barycenter(d, i));
                assert_eq!(c.locate(&b), Some(t.carrier(d, i)));
            }
        }
    }

    #[test]
    fn u31_truncated() {
        let u = u31();
        let opts = TruncationOptions { cone_vertex: Some(0), radius: None };
        let t = stratified_triangulation(&u, &opts).unwrap();
        assert_eq!(t.counts(), vec![7, 6]);
        assert!(matches!(
            stratified_triangulation(&u, &TruncationOptions::default()),
            Err(Error::UnboundedCellWithoutConeStructure(_))
        ));
        let del = delete_closed(&u, &barycentric_subdivide(&t), &BTreeSet::from([0])).unwrap();
        assert_eq!(del.counts(), vec![12, 9]);
        let _ = rats(&[0]);
    }
}
