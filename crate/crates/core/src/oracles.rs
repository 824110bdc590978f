//! Closed-form predictions for fans and 1-dimensional spaces, and the
//! Poincaré duality check.

use crate::error::{Error, Result};
use crate::ic::{Flavor, HomologyResult, Space, Variant};
use crate::linalg::{Coeff, HomologyGroup, IntegerLattice};
use crate::stratification::{dual_perversity, face_filtration, Perversity};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeFlavor {
    Gm,
    NonGm,
    NonGmBm,
    NonGmCohom,
}

impl ConeFlavor {
    pub const ALL: [ConeFlavor; 4] = [ConeFlavor::Gm, ConeFlavor::NonGm, ConeFlavor::NonGmBm, ConeFlavor::NonGmCohom];

    pub fn as_str(self) -> &'static str {
        match self {
            ConeFlavor::Gm => "GM",
            ConeFlavor::NonGm => "NONGM",
            ConeFlavor::NonGmBm => "NONGM_BM",
            ConeFlavor::NonGmCohom => "NONGM_COHOM",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeCase {
    Vanish,
    VertexMultitangent,
    AllowableSum,
    Punctured,
    ShiftedPunctured,
    ExtTerm,
}

impl ConeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ConeCase::Vanish => "VANISH",
            ConeCase::VertexMultitangent => "VERTEX_MULTITANGENT",
            ConeCase::AllowableSum => "ALLOWABLE_SUM",
            ConeCase::Punctured => "PUNCTURED",
            ConeCase::ShiftedPunctured => "SHIFTED_PUNCTURED",
            ConeCase::ExtTerm => "EXT_TERM",
        }
    }
}

/// Predicted group and the case that produced it, per degree `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePrediction {
    pub flavor: ConeFlavor,
    pub p: usize,
    pub coeff: Coeff,
    pub entries: BTreeMap<usize, (ConeCase, HomologyGroup)>,
}

impl ConePrediction {
    pub fn group(&self, q: usize) -> HomologyGroup {
        self.entries.get(&q).map(|e| e.1.clone()).unwrap_or_default()
    }
}

/// The GM case split; exactly one guard holds for each `q`.
pub fn gm_case(q: i64, n: i64, pv: i64) -> ConeCase {
    let guards = [
        (q >= n - pv - 1 && q != 0, ConeCase::Vanish),
        (q >= n - pv && q == 0, ConeCase::VertexMultitangent),
        (q == n - pv - 1 && q == 0, ConeCase::AllowableSum),
        (q < n - pv - 1, ConeCase::Punctured),
    ];
    let hits: Vec<ConeCase> = guards.iter().filter(|g| g.0).map(|g| g.1).collect();
    assert_eq!(hits.len(), 1, "cone formula guards overlap at q={q}, n={n}, p(v)={pv}");
    hits[0]
}

fn cone_vertex(space: &Space) -> Result<usize> {
    let v = space.cone_vertex().ok_or_else(|| Error::NotAFan("no cone vertex".into()))?;
    let s = space.stratification().stratum_of(v);
    if s.cells != [v] || s.formal_dim != 0 {
        return Err(Error::NotAFan(format!("cone vertex {v} is not a 0-dimensional stratum")));
    }
    Ok(v)
}

/// Rank of the sum of the images of `F_p(σ')` in `F_p({v})` over the cells
/// with `p̄(σ') ≥ codim(σ')`.
pub fn allowable_sum(space: &Space, perv: &Perversity, v: usize, p: usize) -> Result<usize> {
    let st = space.stratification();
    let coeffs = space.coefficients();
    let n = coeffs.rank(v, p)?;
    let mut gens = Vec::new();
    for c in 0..space.complex().len() {
        if perv.of_cell(st, c) < st.codim_of_cell(c) as i64 {
            continue;
        }
        let r = coeffs.restriction(c, v, p)?;
        for j in 0..r.cols() {
            gens.push(r.col_vec(j));
        }
    }
    Ok(IntegerLattice::span(n, &gens).rank())
}

/// Evaluates the cone formula of the given flavor for one `p`, for
/// `q = 0..=n`; the punctured-fan groups come from the engine.
pub fn cone_formula(space: &Space, perv: &Perversity, p: usize, flavor: ConeFlavor, coeff: Coeff) -> Result<ConePrediction> {
    let v = cone_vertex(space)?;
    let n = space.formal_dim() as i64;
    let pv = perv.of_cell(space.stratification(), v);
    let punct = BTreeSet::from([v]);
    let mut entries = BTreeMap::new();
    let mut cache: Option<HomologyResult> = None;
    let mut punctured = |variant: Variant, cohom: bool| -> Result<HomologyResult> {
        if let Some(r) = &cache {
            return Ok(r.clone());
        }
        let r = if cohom {
            space.open_cohomology(&punct, perv, p..=p, variant, coeff)?
        } else {
            space.open_homology(&punct, perv, p..=p, variant, coeff)?
        };
        cache = Some(r.clone());
        Ok(r)
    };
    for q in 0..=n {
        let entry = match flavor {
            ConeFlavor::Gm => match gm_case(q, n, pv) {
                ConeCase::Vanish => (ConeCase::Vanish, HomologyGroup::default()),
                ConeCase::VertexMultitangent => {
                    (ConeCase::VertexMultitangent, HomologyGroup::free(space.coefficients().rank(v, p)?))
                }
                ConeCase::AllowableSum => (ConeCase::AllowableSum, HomologyGroup::free(allowable_sum(space, perv, v, p)?)),
                _ => (ConeCase::Punctured, punctured(Variant::Gm, false)?.get(p, q as usize)),
            },
            ConeFlavor::NonGm => {
                if q >= n - pv - 1 {
                    (ConeCase::Vanish, HomologyGroup::default())
                } else {
                    (ConeCase::Punctured, punctured(Variant::NonGm, false)?.get(p, q as usize))
                }
            }
            ConeFlavor::NonGmBm => {
                if q >= n - pv {
                    let g = if q >= 1 { punctured(Variant::NonGm, false)?.get(p, q as usize - 1) } else { HomologyGroup::default() };
                    (ConeCase::ShiftedPunctured, g)
                } else {
                    (ConeCase::Vanish, HomologyGroup::default())
                }
            }
            ConeFlavor::NonGmCohom => {
                if q > n - pv - 1 {
                    (ConeCase::Vanish, HomologyGroup::default())
                } else if q == n - pv - 1 {
                    // Ext^1(H, Z) is the torsion of H; over a field it vanishes
                    let g = match (coeff, q) {
                        (Coeff::Z, q) if q >= 1 => {
                            let h = space.open_homology(&punct, perv, p..=p, Variant::NonGm, Coeff::Z)?;
                            HomologyGroup { free_rank: 0, torsion: h.get(p, q as usize - 1).torsion }
                        }
                        _ => HomologyGroup::default(),
                    };
                    (ConeCase::ExtTerm, g)
                } else {
                    (ConeCase::Punctured, punctured(Variant::NonGm, true)?.get(p, q as usize))
                }
            }
        };
        entries.insert(q as usize, entry);
    }
    Ok(ConePrediction { flavor, p, coeff, entries })
}

/// The engine's value for the flavor of a cone prediction.
pub fn cone_engine(space: &Space, perv: &Perversity, p: usize, flavor: ConeFlavor, coeff: Coeff) -> Result<HomologyResult> {
    match flavor {
        ConeFlavor::Gm => space.homology(perv, p..=p, Variant::Gm, coeff),
        ConeFlavor::NonGm => space.homology(perv, p..=p, Variant::NonGm, coeff),
        ConeFlavor::NonGmBm => space.bm_homology(perv, p..=p, Variant::NonGm, coeff),
        ConeFlavor::NonGmCohom => space.cohomology(perv, p..=p, Variant::NonGm, coeff, false),
    }
}

/// A disagreement at one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub p: usize,
    pub q: usize,
    pub expected: HomologyGroup,
    pub actual: HomologyGroup,
}

impl Mismatch {
    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "q": self.q, "expected": self.expected.to_string(), "actual": self.actual.to_string() })
    }
}

/// Bidegrees where two tables differ (missing entries count as zero).
pub fn compare(expected: &BTreeMap<(usize, usize), HomologyGroup>, actual: &BTreeMap<(usize, usize), HomologyGroup>) -> Vec<Mismatch> {
    let keys: BTreeSet<(usize, usize)> = expected.keys().chain(actual.keys()).copied().collect();
    keys.into_iter()
        .filter_map(|k| {
            let e = expected.get(&k).cloned().unwrap_or_default();
            let a = actual.get(&k).cloned().unwrap_or_default();
            (e != a).then_some(Mismatch { p: k.0, q: k.1, expected: e, actual: a })
        })
        .collect()
}

/// Engine versus cone formula for one flavor and one `p`.
pub fn check_cone(space: &Space, perv: &Perversity, p: usize, flavor: ConeFlavor, coeff: Coeff) -> Result<Vec<Mismatch>> {
    let pred = cone_formula(space, perv, p, flavor, coeff)?;
    let actual = cone_engine(space, perv, p, flavor, coeff)?;
    let expected: BTreeMap<(usize, usize), HomologyGroup> = pred.entries.iter().map(|(q, e)| ((p, *q), e.1.clone())).collect();
    let actual: BTreeMap<(usize, usize), HomologyGroup> = actual.groups.into_iter().filter(|((pp, _), _)| *pp == p).collect();
    Ok(compare(&expected, &actual))
}

fn check_one_dimensional(space: &Space) -> Result<()> {
    let c = space.complex();
    if space.formal_dim() != 1 || c.is_empty() || c.maximal_cells().iter().any(|&m| c.dim(m) != 1) {
        return Err(Error::NotOneDimensional);
    }
    Ok(())
}

/// Edge strata of a 1-dimensional space split by the perversity at their
/// ends: `a` counts edges with two ends, both of nonnegative perversity; `b`
/// counts edges with no ends or only ends of negative perversity.
pub fn edge_classes(space: &Space, perv: &Perversity) -> Result<(usize, usize)> {
    check_one_dimensional(space)?;
    let c = space.complex();
    let st = space.stratification();
    let (mut a, mut b) = (0, 0);
    for s in st.strata.iter().filter(|s| s.formal_dim == 1) {
        let inside: BTreeSet<usize> = s.cells.iter().copied().collect();
        // ends with multiplicity: faces of edges of the stratum lying outside it
        let mut ends = Vec::new();
        for &e in s.cells.iter().filter(|&&e| c.dim(e) == 1) {
            for &f in c.faces(e) {
                if !inside.contains(&f) {
                    ends.push(perv.of_cell(st, f));
                }
            }
        }
        if ends.len() == 2 && ends.iter().all(|&x| x >= 0) {
            a += 1;
        } else if ends.iter().all(|&x| x < 0) {
            b += 1;
        }
    }
    Ok((a, b))
}

/// Non-GM prediction: `Q^a` at `q = 1` and `Q^b` at `q = 0` for `p = 0, 1`.
pub fn onedim_nongm(space: &Space, perv: &Perversity, coeff: Coeff) -> Result<HomologyResult> {
    let (a, b) = edge_classes(space, perv)?;
    let mut groups = BTreeMap::new();
    for p in space.p_range() {
        for q in 0..=1 {
            let r = match (p, q) {
                (0 | 1, 0) => b,
                (0 | 1, 1) => a,
                _ => 0,
            };
            groups.insert((p, q), HomologyGroup::free(r));
        }
    }
    Ok(HomologyResult { variant: Variant::NonGm, flavor: Flavor::Ih, coeff, subdivision_level: 0, groups })
}

/// GM prediction: tropical homology of `X` minus the vertices of negative
/// perversity.
pub fn onedim_gm(space: &Space, perv: &Perversity, coeff: Coeff) -> Result<HomologyResult> {
    check_one_dimensional(space)?;
    let st = space.stratification();
    let v: BTreeSet<usize> = st
        .strata
        .iter()
        .filter(|s| s.formal_dim == 0 && perv.value(s.id) < 0)
        .flat_map(|s| s.cells.iter().copied())
        .collect();
    let mut r = space.open_tropical_homology(&v, space.p_range(), coeff)?;
    r.variant = Variant::Gm;
    Ok(r)
}

/// Prediction for a compact 1-dimensional pair `(X, U)` with constant
/// perversity `m`: `H(U)` for `m < 0`, `H^BM(U)` otherwise.
pub fn tms_oracle(space: &Space, open: &BTreeSet<usize>, m: i64, coeff: Coeff) -> Result<HomologyResult> {
    let c = space.complex();
    if let Err(e) = check_one_dimensional(space) {
        return Err(Error::BadPair(format!("{e}")));
    }
    if !space.is_compact() {
        return Err(Error::BadPair("X is not compact".into()));
    }
    if let Some(&bad) = open.iter().find(|&&i| i >= c.len()) {
        return Err(Error::BadPair(format!("unknown cell {bad}")));
    }
    let z: BTreeSet<usize> = (0..c.len()).filter(|i| !open.contains(i)).collect();
    if let Some(&i) = z.iter().find(|&&i| c.faces(i).iter().any(|f| !z.contains(f))) {
        return Err(Error::BadPair(format!("U is not open at cell {i}")));
    }
    if let Some(m) = c.maximal_cells().into_iter().find(|m| z.contains(m)) {
        return Err(Error::BadPair(format!("U is not dense: misses cell {m}")));
    }
    if m < 0 {
        space.open_tropical_homology(&z, space.p_range(), coeff)
    } else {
        space.open_tropical_bm_homology(&z, space.p_range(), coeff)
    }
}

/// Whether the filtration is induced by its regular part and the face
/// filtration: `X^k = Σ ∩ X_C^k` below the top.
pub fn condition_c_prime(space: &Space) -> bool {
    let f = &space.stratification().filtration;
    let n = f.formal_dim;
    if n == 0 {
        return true;
    }
    let faces = face_filtration(space.complex());
    let sigma = &f.levels[n - 1];
    (0..n).all(|k| {
        let induced: BTreeSet<usize> = match faces.levels.get(k) {
            Some(l) => l.intersection(sigma).copied().collect(),
            None => sigma.clone(),
        };
        f.levels[k] == induced
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityEntry {
    pub p: usize,
    pub q: usize,
    /// `dim IH^{n-p, n-q}` with `p̄`.
    pub cohomology: usize,
    /// `dim IH^{Dp̄, BM}_{p,q}`.
    pub bm: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub variant: Variant,
    pub entries: Vec<DualityEntry>,
}

impl DualityReport {
    pub fn mismatches(&self) -> Vec<&DualityEntry> {
        self.entries.iter().filter(|e| e.cohomology != e.bm).collect()
    }

    pub fn holds(&self) -> bool {
        self.mismatches().is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "variant": self.variant.as_str(),
            "holds": self.holds(),
            "entries": self.entries.iter().map(|e| json!({
                "p": e.p, "q": e.q, "cohomology": e.cohomology, "bm": e.bm, "equal": e.cohomology == e.bm
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares `dim IH^{n-p,n-q}(X)` with `dim IH^{Dp̄,BM}_{p,q}(X)` for
/// `0 ≤ p, q ≤ n`.
pub fn duality_check(space: &Space, perv: &Perversity, variant: Variant, coeff: Coeff, assert_c: bool) -> Result<DualityReport> {
    if coeff != Coeff::Q {
        return Err(Error::FieldRequired);
    }
    if !assert_c && !condition_c_prime(space) {
        return Err(Error::ConditionCNotAsserted);
    }
    let n = space.formal_dim();
    let mut entries = Vec::new();
    if space.complex().is_empty() {
        return Ok(DualityReport { variant, entries });
    }
    let dual = dual_perversity(space.stratification(), perv);
    let cohom = space.cohomology(perv, 0..=n, variant, coeff, false)?;
    let bm = space.bm_homology(&dual, 0..=n, variant, coeff)?;
    for p in 0..=n {
        for q in 0..=n {
            entries.push(DualityEntry { p, q, cohomology: cohom.rank(n - p, n - q), bm: bm.rank(p, q) });
        }
    }
    Ok(DualityReport { variant, entries })
}
