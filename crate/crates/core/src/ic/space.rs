//! Filtered complexes with a cached simplicial model, and the homology
//! flavors computed on them.

use super::chains::{assemble, ChainSpec, IChainComplex, Variant};
use crate::coefficients::CoefficientSystem;
use crate::error::{Error, Result};
use crate::linalg::{cohomology_of_complex, homology_of_complex, uct_consistent, Coeff, HomologyGroup};
use crate::polyhedral::rat::dot_int;
use crate::polyhedral::FaceComplex;
use crate::stratification::{Filtration, Perversity, Stratification};
use crate::triangulate::{barycentric_subdivide, delete_closed, stratified_triangulation, StratifiedTriangulation, TruncationOptions};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "PLAIN")]
    Plain,
    #[serde(rename = "PLAIN_BM")]
    PlainBm,
    #[serde(rename = "IH")]
    Ih,
    #[serde(rename = "IH_BM")]
    IhBm,
    #[serde(rename = "IH_REL")]
    IhRel,
    #[serde(rename = "COHOM")]
    Cohom,
    #[serde(rename = "COHOM_C")]
    CohomC,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Plain => "PLAIN",
            Flavor::PlainBm => "PLAIN_BM",
            Flavor::Ih => "IH",
            Flavor::IhBm => "IH_BM",
            Flavor::IhRel => "IH_REL",
            Flavor::Cohom => "COHOM",
            Flavor::CohomC => "COHOM_C",
        }
    }
}

/// Groups by bidegree `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub variant: Variant,
    pub flavor: Flavor,
    pub coeff: Coeff,
    pub subdivision_level: usize,
    pub groups: BTreeMap<(usize, usize), HomologyGroup>,
}

impl HomologyResult {
    /// The group at `(p, q)`, zero if not computed.
    pub fn get(&self, p: usize, q: usize) -> HomologyGroup {
        self.groups.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.get(p, q).free_rank
    }

    /// Whether every group vanishes.
    pub fn is_zero(&self) -> bool {
        self.groups.values().all(HomologyGroup::is_zero)
    }

    /// Nonzero groups only.
    pub fn nonzero(&self) -> BTreeMap<(usize, usize), HomologyGroup> {
        self.groups.iter().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (*k, g.clone())).collect()
    }

    /// Same groups, compared up to zero entries.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        self.nonzero() == other.nonzero()
    }

    pub fn to_json(&self) -> Value {
        let groups: serde_json::Map<String, Value> = self
            .groups
            .iter()
            .map(|((p, q), g)| {
                let torsion: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
                (format!("{p},{q}"), json!({ "rank": g.free_rank, "torsion": torsion }))
            })
            .collect();
        json!({
            "variant": self.variant.as_str(),
            "flavor": self.flavor.as_str(),
            "coeff": self.coeff.as_str(),
            "subdivision_level": self.subdivision_level,
            "groups": groups,
        })
    }
}

/// Which chains to build on which model.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    /// The model is the open set `X ∖ |deleted|`.
    pub deleted: BTreeSet<usize>,
    /// Quotient by the chains of `X ∖ |relative|` (which contains `deleted`).
    pub relative: Option<BTreeSet<usize>>,
    /// Chains relative to this closed set: its simplices are dropped.
    pub excluded: BTreeSet<usize>,
}

impl Model {
    pub fn whole() -> Self {
        Model::default()
    }

    pub fn open(deleted: BTreeSet<usize>) -> Self {
        Model { deleted, ..Model::default() }
    }

    pub fn pair(relative: BTreeSet<usize>) -> Self {
        Model { relative: Some(relative), ..Model::default() }
    }
}

fn env_level(name: &str, default: usize) -> usize {
    std::env::var(name).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

/// Base subdivision level: `TIH_SUBDIV_LEVEL`, default and minimum 2.
pub fn base_level() -> usize {
    env_level("TIH_SUBDIV_LEVEL", 2).max(2)
}

/// Highest level used by stabilization retries: `TIH_MAX_SUBDIV`, at least
/// one above the base level.
pub fn max_level() -> usize {
    env_level("TIH_MAX_SUBDIV", base_level() + 2).max(base_level() + 1)
}

/// A filtered complex with its coefficient system and simplicial models.
#[derive(Debug)]
pub struct Space {
    complex: Arc<FaceComplex>,
    strat: Stratification,
    coeffs: CoefficientSystem,
    truncation: TruncationOptions,
    cache: Mutex<BTreeMap<usize, Arc<StratifiedTriangulation>>>,
}

impl Space {
    pub fn new(complex: impl Into<Arc<FaceComplex>>, filtration: Filtration) -> Result<Self> {
        let complex = complex.into();
        let strat = Stratification::new(&complex, filtration)?;
        Ok(Space {
            coeffs: CoefficientSystem::new(complex.clone()),
            complex,
            strat,
            truncation: TruncationOptions::default(),
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    /// Marks the complex as a fan with cone point `vertex`.
    pub fn conical(mut self, vertex: usize) -> Result<Self> {
        check_fan(&self.complex, vertex)?;
        self.truncation.cone_vertex = Some(vertex);
        self.cache.lock().unwrap().clear();
        Ok(self)
    }

    pub fn with_truncation(mut self, opts: TruncationOptions) -> Result<Self> {
        if let Some(v) = opts.cone_vertex {
            check_fan(&self.complex, v)?;
        }
        self.truncation = opts;
        self.cache.lock().unwrap().clear();
        Ok(self)
    }

    pub fn complex(&self) -> &FaceComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<FaceComplex> {
        self.complex.clone()
    }

    pub fn stratification(&self) -> &Stratification {
        &self.strat
    }

    pub fn coefficients(&self) -> &CoefficientSystem {
        &self.coeffs
    }

    pub fn truncation(&self) -> &TruncationOptions {
        &self.truncation
    }

    pub fn cone_vertex(&self) -> Option<usize> {
        self.truncation.cone_vertex
    }

    pub fn formal_dim(&self) -> usize {
        self.strat.formal_dim()
    }

    pub fn is_compact(&self) -> bool {
        (0..self.complex.len()).all(|i| self.complex.is_bounded(i))
    }

    /// Default range of `p`: up to the ambient dimension.
    pub fn p_range(&self) -> RangeInclusive<usize> {
        0..=self.complex.ambient_dim()
    }

    pub fn triangulation(&self, level: usize) -> Result<Arc<StratifiedTriangulation>> {
        let level = level.max(1);
        let mut cache = self.cache.lock().unwrap();
        if let Some(t) = cache.get(&level) {
            return Ok(t.clone());
        }
        let start = cache.range(..level).next_back().map(|(_, t)| t.clone());
        let mut t = match start {
            Some(t) => t,
            None => Arc::new(stratified_triangulation(&self.complex, &self.truncation)?),
        };
        while t.subdivision_level < level {
            t = Arc::new(barycentric_subdivide(&t));
            cache.insert(t.subdivision_level, t.clone());
        }
        cache.insert(level, t.clone());
        Ok(t)
    }

    /// The chain complex for one `p` at one level.
    pub fn chain_complex(
        &self,
        model: &Model,
        perversity: Option<&Perversity>,
        variant: Variant,
        p: usize,
        level: usize,
    ) -> Result<IChainComplex> {
        if let Some(perv) = perversity {
            perv.validate(&self.strat)?;
        }
        let tri = self.triangulation(level)?;
        let open = if model.deleted.is_empty() { (*tri).clone() } else { delete_closed(&self.complex, &tri, &model.deleted)? };
        let sub = match &model.relative {
            Some(rel) => {
                if !model.deleted.is_subset(rel) {
                    return Err(Error::ModelMismatch("the subset does not contain the deleted cells".into()));
                }
                Some(delete_closed(&self.complex, &tri, rel)?)
            }
            None => None,
        };
        let mut excluded = model.excluded.clone();
        if variant == Variant::NonGm {
            excluded.extend(self.strat.singular_cells());
        }
        for &c in &model.excluded {
            self.complex.check_id(c)?;
            if self.complex.faces(c).iter().any(|f| !model.excluded.contains(f)) {
                return Err(Error::NotClosed(c));
            }
        }
        let spec = ChainSpec { p, perversity, excluded };
        assemble(&open, &self.strat, &self.coeffs, &spec, sub.as_ref())
    }

    #[allow(clippy::too_many_arguments)]
    fn groups_at(
        &self,
        model: &Model,
        perversity: Option<&Perversity>,
        variant: Variant,
        p: usize,
        level: usize,
        coeff: Coeff,
        cohomology: bool,
    ) -> Result<Vec<HomologyGroup>> {
        let ic = self.chain_complex(model, perversity, variant, p, level)?;
        let h = homology_of_complex(&ic.complex, Coeff::Z)?;
        let out = if cohomology {
            let c = cohomology_of_complex(&ic.complex, Coeff::Z)?;
            if !uct_consistent(&h, &c) {
                return Err(Error::InvalidComplex("cohomology disagrees with universal coefficients".into()));
            }
            c
        } else {
            h
        };
        Ok(match coeff {
            Coeff::Z => out,
            Coeff::Q => out.iter().map(HomologyGroup::rationalize).collect(),
        })
    }

    /// Computes at the base level and one above; on disagreement moves one
    /// level up, until `max_level`.
    #[allow(clippy::too_many_arguments)]
    pub fn stable_groups(
        &self,
        model: &Model,
        perversity: Option<&Perversity>,
        variant: Variant,
        ps: RangeInclusive<usize>,
        coeff: Coeff,
        cohomology: bool,
        flavor: Flavor,
    ) -> Result<HomologyResult> {
        let mut low = base_level();
        let max = max_level();
        let compute = |level: usize| -> Result<BTreeMap<(usize, usize), HomologyGroup>> {
            let mut m = BTreeMap::new();
            for p in ps.clone() {
                for (q, g) in self.groups_at(model, perversity, variant, p, level, coeff, cohomology)?.into_iter().enumerate() {
                    m.insert((p, q), g);
                }
            }
            Ok(m)
        };
        let mut a = compute(low)?;
        loop {
            let b = compute(low + 1)?;
            let diff = a.keys().chain(b.keys()).find(|k| a.get(k).cloned().unwrap_or_default() != b.get(k).cloned().unwrap_or_default()).copied();
            match diff {
                None => {
                    return Ok(HomologyResult { variant, flavor, coeff, subdivision_level: low, groups: a });
                }
                Some((p, q)) if low + 2 > max => {
                    return Err(Error::StabilizationFailure { low, high: low + 1, p, q });
                }
                Some(_) => {
                    low += 1;
                    a = b;
                }
            }
        }
    }

    /// Intersection homology of `X`.
    pub fn homology(&self, perv: &Perversity, ps: RangeInclusive<usize>, variant: Variant, coeff: Coeff) -> Result<HomologyResult> {
        self.stable_groups(&Model::whole(), Some(perv), variant, ps, coeff, false, Flavor::Ih)
    }

    /// Intersection homology of the open subset `X ∖ |z|`.
    pub fn open_homology(
        &self,
        z: &BTreeSet<usize>,
        perv: &Perversity,
        ps: RangeInclusive<usize>,
        variant: Variant,
        coeff: Coeff,
    ) -> Result<HomologyResult> {
        self.stable_groups(&Model::open(z.clone()), Some(perv), variant, ps, coeff, false, Flavor::Ih)
    }

    /// `IH(X, X ∖ |z|)` as the quotient `IC(X) / IC(X ∖ |z|)`.
    pub fn relative_homology(
        &self,
        z: &BTreeSet<usize>,
        perv: &Perversity,
        ps: RangeInclusive<usize>,
        variant: Variant,
        coeff: Coeff,
    ) -> Result<HomologyResult> {
        self.stable_groups(&Model::pair(z.clone()), Some(perv), variant, ps, coeff, false, Flavor::IhRel)
    }

    fn bm_model(&self) -> Result<Model> {
        if self.is_compact() {
            Ok(Model::whole())
        } else if let Some(v) = self.cone_vertex() {
            Ok(Model::pair(BTreeSet::from([v])))
        } else {
            Err(Error::ConicalStructureRequired)
        }
    }

    /// Borel–Moore intersection homology: absolute homology for compact `X`,
    /// `IH(F, F ∖ {v})` for a fan `F` with cone point `v`.
    pub fn bm_homology(&self, perv: &Perversity, ps: RangeInclusive<usize>, variant: Variant, coeff: Coeff) -> Result<HomologyResult> {
        let model = self.bm_model()?;
        self.stable_groups(&model, Some(perv), variant, ps, coeff, false, Flavor::IhBm)
    }

    /// Intersection cohomology, or its compactly supported version.
    pub fn cohomology(
        &self,
        perv: &Perversity,
        ps: RangeInclusive<usize>,
        variant: Variant,
        coeff: Coeff,
        compact_support: bool,
    ) -> Result<HomologyResult> {
        let (model, flavor) = if compact_support { (self.bm_model()?, Flavor::CohomC) } else { (Model::whole(), Flavor::Cohom) };
        self.stable_groups(&model, Some(perv), variant, ps, coeff, true, flavor)
    }

    /// Intersection cohomology of the open subset `X ∖ |z|`.
    pub fn open_cohomology(
        &self,
        z: &BTreeSet<usize>,
        perv: &Perversity,
        ps: RangeInclusive<usize>,
        variant: Variant,
        coeff: Coeff,
    ) -> Result<HomologyResult> {
        self.stable_groups(&Model::open(z.clone()), Some(perv), variant, ps, coeff, true, Flavor::Cohom)
    }

    /// Tropical homology `H_{p,q}`: GM chains without allowability.
    pub fn tropical_homology(&self, ps: RangeInclusive<usize>, coeff: Coeff) -> Result<HomologyResult> {
        self.stable_groups(&Model::whole(), None, Variant::Gm, ps, coeff, false, Flavor::Plain)
    }

    /// Tropical homology of the open subset `X ∖ |z|`.
    pub fn open_tropical_homology(&self, z: &BTreeSet<usize>, ps: RangeInclusive<usize>, coeff: Coeff) -> Result<HomologyResult> {
        self.stable_groups(&Model::open(z.clone()), None, Variant::Gm, ps, coeff, false, Flavor::Plain)
    }

    /// Borel–Moore tropical homology of `X ∖ |z|` for compact `X`, as
    /// tropical homology of `X` relative to the closed set `|z|`.
    pub fn open_tropical_bm_homology(&self, z: &BTreeSet<usize>, ps: RangeInclusive<usize>, coeff: Coeff) -> Result<HomologyResult> {
        if !self.is_compact() {
            return Err(Error::ConicalStructureRequired);
        }
        let model = Model { excluded: z.clone(), ..Model::default() };
        self.stable_groups(&model, None, Variant::Gm, ps, coeff, false, Flavor::PlainBm)
    }
}

/// Every cell is a cone with apex `v`: it contains `v` and each defining
/// constraint is tight at `v`.
pub fn check_fan(c: &FaceComplex, v: usize) -> Result<()> {
    c.check_id(v)?;
    if c.dim(v) != 0 || !c.sedentarity(v).is_empty() {
        return Err(Error::NotAFan(format!("cell {v} is not a finite point")));
    }
    let apex = c.relint_point(v).finite_part();
    for i in 0..c.len() {
        let cell = c.cell(i)?;
        let tight = cell.ineqs.iter().chain(cell.eqs.iter()).all(|k| dot_int(&k.normal, &apex) == k.offset);
        if !tight || !c.is_face(v, i) {
            return Err(Error::NotAFan(format!("cell {i} is not a cone at cell {v}")));
        }
    }
    Ok(())
}
