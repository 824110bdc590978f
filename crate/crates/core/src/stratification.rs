//! Filtrations by closed subcomplexes, their strata, and perversities.

use crate::error::{Error, Result};
use crate::polyhedral::FaceComplex;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// `X^0 ⊆ X^1 ⊆ ... ⊆ X^n` as sets of cell ids (`X^{-1}` is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filtration {
    pub formal_dim: usize,
    /// `levels[k]` is `X^k`.
    pub levels: Vec<BTreeSet<usize>>,
}

impl Filtration {
    pub fn new(c: &FaceComplex, levels: Vec<BTreeSet<usize>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidFiltration("no levels".into()));
        }
        let f = Filtration { formal_dim: levels.len() - 1, levels };
        f.validate(c)?;
        Ok(f)
    }

    /// Nested, closed under faces, top level is everything.
    pub fn validate(&self, c: &FaceComplex) -> Result<()> {
        if self.levels.len() != self.formal_dim + 1 {
            return Err(Error::InvalidFiltration("level count does not match the formal dimension".into()));
        }
        let all: BTreeSet<usize> = (0..c.len()).collect();
        if self.levels[self.formal_dim] != all {
            return Err(Error::InvalidFiltration("top level must contain every cell".into()));
        }
        for (k, lvl) in self.levels.iter().enumerate() {
            if let Some(&bad) = lvl.iter().find(|&&i| i >= c.len()) {
                return Err(Error::CellNotFound(bad));
            }
            if k > 0 && !self.levels[k - 1].is_subset(lvl) {
                return Err(Error::InvalidFiltration(format!("level {} is not contained in level {k}", k - 1)));
            }
            for &i in lvl {
                if let Some(f) = c.faces(i).iter().find(|f| !lvl.contains(f)) {
                    return Err(Error::InvalidFiltration(format!("level {k} contains cell {i} but not its face {f}")));
                }
            }
        }
        Ok(())
    }

    /// Smallest `k` with the cell in `X^k`.
    pub fn level_of(&self, cell: usize) -> usize {
        self.levels.iter().position(|l| l.contains(&cell)).unwrap_or(self.formal_dim)
    }

    /// The singular part `Σ = X^{n-1}`.
    pub fn singular_cells(&self) -> BTreeSet<usize> {
        if self.formal_dim == 0 {
            BTreeSet::new()
        } else {
            self.levels[self.formal_dim - 1].clone()
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "levels": self.levels.iter().map(|l| l.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>() })
    }
}

/// Connected component of `X^i ∖ X^{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub id: usize,
    pub formal_dim: usize,
    pub cells: Vec<usize>,
    pub regular: bool,
    pub codim: usize,
}

/// A filtration together with its strata and the cell → stratum map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub filtration: Filtration,
    pub strata: Vec<Stratum>,
    pub of_cell: Vec<usize>,
}

impl Stratification {
    pub fn new(c: &FaceComplex, filtration: Filtration) -> Result<Self> {
        filtration.validate(c)?;
        let st = strata(c, &filtration);
        let mut of_cell = vec![usize::MAX; c.len()];
        for s in &st {
            for &i in &s.cells {
                of_cell[i] = s.id;
            }
        }
        Ok(Stratification { filtration, strata: st, of_cell })
    }

    pub fn formal_dim(&self) -> usize {
        self.filtration.formal_dim
    }

    pub fn stratum_of(&self, cell: usize) -> &Stratum {
        &self.strata[self.of_cell[cell]]
    }

    pub fn codim_of_cell(&self, cell: usize) -> usize {
        self.stratum_of(cell).codim
    }

    pub fn singular_cells(&self) -> BTreeSet<usize> {
        self.filtration.singular_cells()
    }
}

/// `X^i` = cells of dimension at most `i`.
pub fn face_filtration(c: &FaceComplex) -> Filtration {
    let n = c.max_dim().unwrap_or(0);
    let levels = (0..=n).map(|k| (0..c.len()).filter(|&i| c.dim(i) <= k).collect()).collect();
    Filtration { formal_dim: n, levels }
}

/// Whether the relative interior of `sigma` has a `d`-dimensional affine
/// neighborhood inside the closed subcomplex `y`.
fn has_affine_neighborhood(c: &FaceComplex, y: &BTreeSet<usize>, sigma: usize, d: usize) -> Result<bool> {
    let star: Vec<usize> =
        std::iter::once(sigma).chain(c.cofaces(sigma).iter().copied()).filter(|i| y.contains(i)).collect();
    let maximal: Vec<usize> =
        star.iter().copied().filter(|&i| !c.cofaces(i).iter().any(|j| y.contains(j))).collect();
    if maximal.iter().any(|&m| c.dim(m) != d) {
        return Ok(false);
    }
    let ds = c.dim(sigma);
    if ds > d {
        return Ok(false);
    }
    let k = d - ds;
    if k == 0 {
        return Ok(maximal == [sigma]);
    }
    let lat = c.tangent_lattice(maximal[0]);
    if maximal.iter().any(|&m| c.tangent_lattice(m) != lat) {
        return Ok(false);
    }
    match k {
        1 => Ok(maximal.len() == 2),
        2 => {
            // link graph: middle cells as nodes, maximal cells as edges; it must be one cycle
            let middle: Vec<usize> = star.iter().copied().filter(|&i| c.dim(i) == ds + 1).collect();
            let mut deg: BTreeMap<usize, usize> = middle.iter().map(|&m| (m, 0)).collect();
            let mut edges = Vec::new();
            for &m in &maximal {
                let ends: Vec<usize> = c.faces(m).iter().copied().filter(|f| deg.contains_key(f)).collect();
                if ends.len() != 2 {
                    return Ok(false);
                }
                for e in &ends {
                    *deg.get_mut(e).unwrap() += 1;
                }
                edges.push((ends[0], ends[1]));
            }
            if middle.is_empty() || deg.values().any(|&v| v != 2) {
                return Ok(false);
            }
            // connectivity of the 2-regular graph
            let mut seen = BTreeSet::new();
            let mut stack = vec![middle[0]];
            while let Some(x) = stack.pop() {
                if !seen.insert(x) {
                    continue;
                }
                for &(a, b) in &edges {
                    if a == x {
                        stack.push(b);
                    } else if b == x {
                        stack.push(a);
                    }
                }
            }
            Ok(seen.len() == middle.len())
        }
        _ => Err(Error::UnsupportedStarDimension { cell: sigma, dim: k }),
    }
}

/// Filtration obtained by repeatedly removing points with an affine
/// neighborhood of the current top dimension.
pub fn trop_filtration(c: &FaceComplex) -> Result<Filtration> {
    if let Some(i) = (0..c.len()).find(|&i| !c.sedentarity(i).is_empty()) {
        return Err(Error::UnsupportedSedentarity(i));
    }
    let n = c.max_dim().unwrap_or(0);
    let mut levels = vec![BTreeSet::new(); n + 1];
    let mut y: BTreeSet<usize> = (0..c.len()).collect();
    for i in (0..=n).rev() {
        levels[i] = y.clone();
        if i == 0 {
            break;
        }
        let mut next = BTreeSet::new();
        for &s in &y {
            if !has_affine_neighborhood(c, &y, s, i)? {
                next.insert(s);
            }
        }
        y = next;
    }
    let f = Filtration { formal_dim: n, levels };
    f.validate(c)?;
    Ok(f)
}

/// `X^n = X`, `X^k = (X ∖ U) ∩ (cells of dim ≤ k)` for `k < n`.
pub fn pair_filtration(c: &FaceComplex, open: &BTreeSet<usize>) -> Result<Filtration> {
    for &u in open {
        c.check_id(u)?;
    }
    for i in 0..c.len() {
        if !open.contains(&i) && c.faces(i).iter().any(|f| open.contains(f)) {
            return Err(Error::ComplementNotClosed(i));
        }
    }
    let n = c.max_dim().unwrap_or(0);
    let mut levels: Vec<BTreeSet<usize>> =
        (0..n).map(|k| (0..c.len()).filter(|&i| !open.contains(&i) && c.dim(i) <= k).collect()).collect();
    levels.push((0..c.len()).collect());
    let f = Filtration { formal_dim: n, levels };
    f.validate(c)?;
    Ok(f)
}

/// Connected components of each slice `X^i ∖ X^{i-1}`, ordered by formal
/// dimension and then smallest cell id.
pub fn strata(c: &FaceComplex, f: &Filtration) -> Vec<Stratum> {
    let n = f.formal_dim;
    let mut out = Vec::new();
    for i in 0..=n {
        let slice: Vec<usize> = (0..c.len()).filter(|&s| f.level_of(s) == i).collect();
        for comp in c.components_within(&slice) {
            out.push(Stratum { id: 0, formal_dim: i, cells: comp, regular: i == n, codim: n - i });
        }
    }
    out.sort_by(|a, b| (a.formal_dim, &a.cells).cmp(&(b.formal_dim, &b.cells)));
    for (k, s) in out.iter_mut().enumerate() {
        s.id = k;
    }
    out
}

/// Integer weight per stratum, zero on regular strata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perversity {
    pub values: Vec<i64>,
}

impl Perversity {
    pub fn zero(st: &Stratification) -> Self {
        Perversity { values: vec![0; st.strata.len()] }
    }

    /// `m` on every singular stratum.
    pub fn constant(st: &Stratification, m: i64) -> Self {
        Perversity { values: st.strata.iter().map(|s| if s.regular { 0 } else { m }).collect() }
    }

    /// `f(codim)` on every singular stratum.
    pub fn from_codim(st: &Stratification, f: impl Fn(usize) -> i64) -> Self {
        Perversity { values: st.strata.iter().map(|s| if s.regular { 0 } else { f(s.codim) }).collect() }
    }

    pub fn value(&self, stratum: usize) -> i64 {
        self.values[stratum]
    }

    pub fn of_cell(&self, st: &Stratification, cell: usize) -> i64 {
        self.values[st.of_cell[cell]]
    }

    pub fn validate(&self, st: &Stratification) -> Result<()> {
        if self.values.len() != st.strata.len() {
            return Err(Error::InvalidPerversity("one value per stratum expected".into()));
        }
        if let Some(s) = st.strata.iter().find(|s| s.regular && self.values[s.id] != 0) {
            return Err(Error::InvalidPerversity(format!("regular stratum {} has nonzero value", s.id)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let m: BTreeMap<String, i64> = self.values.iter().enumerate().map(|(i, v)| (i.to_string(), *v)).collect();
        json!(m)
    }
}

/// `Dp̄(S) = codim(S) - 2 - p̄(S)` on singular strata, 0 on regular ones.
pub fn dual_perversity(st: &Stratification, p: &Perversity) -> Perversity {
    Perversity {
        values: st
            .strata
            .iter()
            .map(|s| if s.regular { 0 } else { s.codim as i64 - 2 - p.values[s.id] })
            .collect(),
    }
}

/// Unresolved perversity from an instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerversitySpec {
    Zero,
    Constant(i64),
    /// Value by codimension `1, 2, ...`; the last entry repeats.
    ByCodim(Vec<i64>),
    /// `codim - 2`.
    Top,
    /// Explicit values keyed by stratum id or by a cell of the stratum.
    Explicit { strata: BTreeMap<usize, i64>, cells: BTreeMap<usize, i64> },
}

impl PerversitySpec {
    pub fn parse(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse_preset(s),
            Value::Object(m) => {
                let (mut strata, mut cells) = (BTreeMap::new(), BTreeMap::new());
                for (k, x) in m {
                    let val = x.as_i64().ok_or_else(|| Error::InvalidPerversity(format!("value for {k:?} is not an integer")))?;
                    if let Some(cell) = k.strip_prefix("cell:") {
                        let id = cell.trim().parse().map_err(|_| Error::InvalidPerversity(format!("bad key {k:?}")))?;
                        cells.insert(id, val);
                    } else {
                        let id = k.trim().parse().map_err(|_| Error::InvalidPerversity(format!("bad key {k:?}")))?;
                        strata.insert(id, val);
                    }
                }
                Ok(PerversitySpec::Explicit { strata, cells })
            }
            _ => Err(Error::InvalidPerversity("expected a preset string or an object".into())),
        }
    }

    pub fn parse_preset(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "zero" {
            return Ok(PerversitySpec::Zero);
        }
        if let Some(m) = s.strip_prefix("constant:") {
            return m.trim().parse().map(PerversitySpec::Constant).map_err(|_| Error::InvalidPerversity(s.into()));
        }
        if let Some(f) = s.strip_prefix("codim:") {
            if f.trim() == "top" {
                return Ok(PerversitySpec::Top);
            }
            let vals = f
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidPerversity(s.into()))?;
            if vals.is_empty() {
                return Err(Error::InvalidPerversity(s.into()));
            }
            return Ok(PerversitySpec::ByCodim(vals));
        }
        Err(Error::InvalidPerversity(format!("unknown preset {s:?}")))
    }

    pub fn resolve(&self, st: &Stratification) -> Result<Perversity> {
        let p = match self {
            PerversitySpec::Zero => Perversity::zero(st),
            PerversitySpec::Constant(m) => Perversity::constant(st, *m),
            PerversitySpec::Top => Perversity::from_codim(st, |c| c as i64 - 2),
            PerversitySpec::ByCodim(v) => Perversity::from_codim(st, |c| v[(c.max(1) - 1).min(v.len() - 1)]),
            PerversitySpec::Explicit { strata, cells } => {
                let mut vals = vec![0; st.strata.len()];
                for (&s, &v) in strata {
                    if s >= vals.len() {
                        return Err(Error::InvalidPerversity(format!("no stratum {s}")));
                    }
                    vals[s] = v;
                }
                for (&c, &v) in cells {
                    if c >= st.of_cell.len() {
                        return Err(Error::CellNotFound(c));
                    }
                    vals[st.of_cell[c]] = v;
                }
                Perversity { values: vals }
            }
        };
        p.validate(st)?;
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        match self {
            PerversitySpec::Zero => json!("zero"),
            PerversitySpec::Constant(m) => json!(format!("constant:{m}")),
            PerversitySpec::Top => json!("codim:top"),
            PerversitySpec::ByCodim(v) => {
                json!(format!("codim:{}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            }
            PerversitySpec::Explicit { strata, cells } => {
                let mut m = serde_json::Map::new();
                for (s, v) in strata {
                    m.insert(s.to_string(), json!(v));
                }
                for (c, v) in cells {
                    m.insert(format!("cell:{c}"), json!(v));
                }
                Value::Object(m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::builders::{line, rats, u31, unit_segment};

    #[test]
    fn segment_and_u31() {
        let s = unit_segment();
        let f = trop_filtration(&s).unwrap();
        assert_eq!(f.levels[0].len(), 2);
        assert_eq!(strata(&s, &f).len(), 3);
        let u = u31();
        let f = trop_filtration(&u).unwrap();
        assert_eq!(f.levels[0], BTreeSet::from([0]));
        assert_eq!(f, face_filtration(&u));
        assert_eq!(strata(&u, &f).len(), 4);
    }

    #[test]
    fn subdivided_line_is_regular() {
        let o = rats(&[0]);
        let c = FaceComplex::from_maximal(
            1,
            vec![crate::polyhedral::builders::ray(&o, &[1]), crate::polyhedral::builders::ray(&o, &[-1])],
        )
        .unwrap();
        let f = trop_filtration(&c).unwrap();
        assert!(f.levels[0].is_empty());
        assert_eq!(strata(&c, &f).len(), 1);
        let _ = line(&o, &[1]);
    }

    #[test]
    fn dual_values() {
        let u = u31();
        let st = Stratification::new(&u, face_filtration(&u)).unwrap();
        let p = Perversity::zero(&st);
        let d = dual_perversity(&st, &p);
        assert_eq!(d.value(0), -1);
        assert_eq!(dual_perversity(&st, &d), p);
    }
}
