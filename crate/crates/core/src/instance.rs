//! Instance files: a complex with its filtration, perversity, flags, an
//! optional query with expected groups, and suite-specific extras.

use crate::error::{Error, Result};
use crate::ic::{HomologyResult, Space, Variant};
use crate::linalg::{Coeff, HomologyGroup};
use crate::polyhedral::json::{complex_from_json, complex_to_json};
use crate::polyhedral::rat::{fmt_rat, parse_rat};
use crate::polyhedral::{FaceComplex, Rat};
use crate::stratification::{face_filtration, pair_filtration, trop_filtration, Filtration, Perversity, PerversitySpec};
use crate::triangulate::TruncationOptions;
use crate::Int;
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationSpec {
    Trop,
    Face,
    Levels(Vec<BTreeSet<usize>>),
    /// Filtration induced by an open subcomplex `U` (its cell ids).
    Pair(BTreeSet<usize>),
}

fn id_set(v: &Value, what: &str) -> Result<BTreeSet<usize>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an array of cell ids")))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Malformed(format!("bad cell id in {what}"))))
        .collect()
}

fn ids_json(s: &BTreeSet<usize>) -> Value {
    json!(s.iter().copied().collect::<Vec<_>>())
}

impl FiltrationSpec {
    pub fn parse(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "trop" => Ok(FiltrationSpec::Trop),
            Value::String(s) if s == "face" => Ok(FiltrationSpec::Face),
            Value::Object(m) if m.contains_key("levels") => {
                let levels = m["levels"]
                    .as_array()
                    .ok_or_else(|| Error::Malformed("levels must be an array".into()))?
                    .iter()
                    .map(|l| id_set(l, "level"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FiltrationSpec::Levels(levels))
            }
            Value::Object(m) if m.contains_key("pair") => Ok(FiltrationSpec::Pair(id_set(&m["pair"], "pair")?)),
            _ => Err(Error::Malformed("filtration must be \"trop\", \"face\", {\"levels\"} or {\"pair\"}".into())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FiltrationSpec::Trop => json!("trop"),
            FiltrationSpec::Face => json!("face"),
            FiltrationSpec::Levels(l) => json!({ "levels": l.iter().map(ids_json).collect::<Vec<_>>() }),
            FiltrationSpec::Pair(u) => json!({ "pair": ids_json(u) }),
        }
    }

    pub fn build(&self, c: &FaceComplex) -> Result<Filtration> {
        match self {
            FiltrationSpec::Trop => trop_filtration(c),
            FiltrationSpec::Face => Ok(face_filtration(c)),
            FiltrationSpec::Levels(l) => Filtration::new(c, l.clone()),
            FiltrationSpec::Pair(u) => pair_filtration(c, u),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub conical: bool,
    pub condition_c_asserted: bool,
    pub truncation_radius: Option<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QueryFlavor {
    Ih,
    Bm,
    Cohom,
    CohomC,
    Plain,
}

impl QueryFlavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ih" => Ok(QueryFlavor::Ih),
            "bm" => Ok(QueryFlavor::Bm),
            "cohom" => Ok(QueryFlavor::Cohom),
            "cohom-c" | "cohom_c" => Ok(QueryFlavor::CohomC),
            "plain" => Ok(QueryFlavor::Plain),
            _ => Err(Error::Malformed(format!("unknown flavor {s:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QueryFlavor::Ih => "ih",
            QueryFlavor::Bm => "bm",
            QueryFlavor::Cohom => "cohom",
            QueryFlavor::CohomC => "cohom-c",
            QueryFlavor::Plain => "plain",
        }
    }
}

/// One computation request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub flavor: QueryFlavor,
    pub variant: Variant,
    pub coeff: Coeff,
    pub p: Option<(usize, usize)>,
    /// `IH(X, X ∖ |rel|)` instead of the absolute groups.
    pub rel: Option<BTreeSet<usize>>,
}

impl Default for Query {
    fn default() -> Self {
        Query { flavor: QueryFlavor::Ih, variant: Variant::NonGm, coeff: Coeff::Q, p: None, rel: None }
    }
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    match s.to_ascii_uppercase().as_str() {
        "Z" => Ok(Coeff::Z),
        "Q" => Ok(Coeff::Q),
        _ => Err(Error::Malformed(format!("unknown coefficients {s:?}"))),
    }
}

/// `"a..b"`, `"a..=b"` or `"a"`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("bad range {s:?}"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..=") {
        Ok((num(a)?, num(b)?))
    } else if let Some((a, b)) = s.split_once("..") {
        let b = num(b)?;
        Ok((num(a)?, b.checked_sub(1).ok_or_else(bad)?))
    } else {
        let a = num(s)?;
        Ok((a, a))
    }
}

impl Query {
    pub fn parse(v: &Value) -> Result<Self> {
        let mut q = Query::default();
        let text = |k: &str| v.get(k).and_then(Value::as_str);
        if let Some(s) = text("flavor") {
            q.flavor = QueryFlavor::parse(s)?;
        }
        if let Some(s) = text("variant") {
            q.variant = Variant::parse(s)?;
        }
        if let Some(s) = text("coeff") {
            q.coeff = parse_coeff(s)?;
        }
        if let Some(s) = text("p") {
            q.p = Some(parse_range(s)?);
        }
        if let Some(r) = v.get("rel") {
            q.rel = Some(id_set(r, "rel")?);
        }
        Ok(q)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("flavor".into(), json!(self.flavor.as_str()));
        m.insert("variant".into(), json!(self.variant.as_str()));
        m.insert("coeff".into(), json!(self.coeff.as_str()));
        if let Some((a, b)) = self.p {
            m.insert("p".into(), json!(format!("{a}..={b}")));
        }
        if let Some(r) = &self.rel {
            m.insert("rel".into(), ids_json(r));
        }
        Value::Object(m)
    }

    /// Runs the query on a space with the given perversity.
    pub fn evaluate(&self, space: &Space, perv: &Perversity) -> Result<HomologyResult> {
        let ps = match self.p {
            Some((a, b)) => a..=b,
            None => space.p_range(),
        };
        if let Some(rel) = &self.rel {
            if self.flavor != QueryFlavor::Ih {
                return Err(Error::Malformed("relative groups are only available for the ih flavor".into()));
            }
            return space.relative_homology(rel, perv, ps, self.variant, self.coeff);
        }
        match self.flavor {
            QueryFlavor::Ih => space.homology(perv, ps, self.variant, self.coeff),
            QueryFlavor::Bm => space.bm_homology(perv, ps, self.variant, self.coeff),
            QueryFlavor::Cohom => space.cohomology(perv, ps, self.variant, self.coeff, false),
            QueryFlavor::CohomC => space.cohomology(perv, ps, self.variant, self.coeff, true),
            QueryFlavor::Plain => space.tropical_homology(ps, self.coeff),
        }
    }
}

/// Duality expectation for the duality suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualitySpec {
    pub variant: Variant,
    pub holds: bool,
    /// Bidegrees `(p, q)` that must be among the disagreements when
    /// `holds` is false.
    pub mismatches: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub suite: Option<String>,
    pub provenance: Option<String>,
    pub description: Option<String>,
    pub complex: FaceComplex,
    pub filtration: FiltrationSpec,
    pub perversity: PerversitySpec,
    pub flags: Flags,
    pub query: Option<Query>,
    pub expected: Option<BTreeMap<(usize, usize), HomologyGroup>>,
    pub duality: Option<DualitySpec>,
    /// The same support with a finer cell structure.
    pub subdivided: Option<FaceComplex>,
    /// Two disjoint closed sets `A`, `B`: the open cover `X ∖ A`, `X ∖ B`.
    pub cover: Option<(BTreeSet<usize>, BTreeSet<usize>)>,
}

fn parse_key(k: &str) -> Result<(usize, usize)> {
    let (a, b) = k.split_once(',').ok_or_else(|| Error::Malformed(format!("bad bidegree {k:?}")))?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Malformed(format!("bad bidegree {k:?}")));
    Ok((n(a)?, n(b)?))
}

/// `{"p,q": {"rank": b, "torsion": ["d", ...]}}`.
pub fn groups_from_json(v: &Value) -> Result<BTreeMap<(usize, usize), HomologyGroup>> {
    let m = v.as_object().ok_or_else(|| Error::Malformed("groups must be an object".into()))?;
    let mut out = BTreeMap::new();
    for (k, g) in m {
        let rank = g.get("rank").and_then(Value::as_u64).ok_or_else(|| Error::Malformed(format!("group {k} needs a rank")))?;
        let torsion = match g.get("torsion") {
            None => Vec::new(),
            Some(t) => t
                .as_array()
                .ok_or_else(|| Error::Malformed("torsion must be an array".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => s.parse::<Int>().map_err(|_| Error::Malformed(format!("bad torsion {s:?}"))),
                    Value::Number(n) => n.as_i64().map(Int::from).ok_or_else(|| Error::Malformed("bad torsion".into())),
                    _ => Err(Error::Malformed("bad torsion".into())),
                })
                .collect::<Result<Vec<_>>>()?,
        };
        out.insert(parse_key(k)?, HomologyGroup { free_rank: rank as usize, torsion });
    }
    Ok(out)
}

pub fn groups_to_json(g: &BTreeMap<(usize, usize), HomologyGroup>) -> Value {
    let m: Map<String, Value> = g
        .iter()
        .map(|((p, q), h)| {
            let t: Vec<String> = h.torsion.iter().map(|d| d.to_string()).collect();
            (format!("{p},{q}"), json!({ "rank": h.free_rank, "torsion": t }))
        })
        .collect();
    Value::Object(m)
}

impl Instance {
    pub fn new(name: &str, complex: FaceComplex, filtration: FiltrationSpec, perversity: PerversitySpec) -> Self {
        Instance {
            name: name.to_string(),
            suite: None,
            provenance: None,
            description: None,
            complex,
            filtration,
            perversity,
            flags: Flags::default(),
            query: None,
            expected: None,
            duality: None,
            subdivided: None,
            cover: None,
        }
    }

    pub fn parse(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Malformed("instance must be an object".into()))?;
        let text = |k: &str| obj.get(k).and_then(Value::as_str).map(str::to_string);
        let complex = complex_from_json(obj.get("complex").ok_or_else(|| Error::Malformed("instance needs a complex".into()))?)?;
        let filtration = FiltrationSpec::parse(obj.get("filtration").unwrap_or(&json!("trop")))?;
        let perversity = PerversitySpec::parse(obj.get("perversity").unwrap_or(&json!("zero")))?;
        let mut flags = Flags::default();
        if let Some(f) = obj.get("flags") {
            flags.conical = f.get("conical").and_then(Value::as_bool).unwrap_or(false);
            flags.condition_c_asserted = f.get("condition_C_asserted").and_then(Value::as_bool).unwrap_or(false);
            flags.truncation_radius = match f.get("truncation_radius") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(parse_rat(s).ok_or_else(|| Error::Malformed(format!("bad radius {s:?}")))?),
                Some(Value::Number(n)) => Some(
                    n.as_i64().map(|x| Rat::from_integer(x.into())).ok_or_else(|| Error::Malformed("bad radius".into()))?,
                ),
                Some(_) => return Err(Error::Malformed("bad truncation_radius".into())),
            };
        }
        let duality = match obj.get("duality") {
            None => None,
            Some(d) => Some(DualitySpec {
                variant: Variant::parse(d.get("variant").and_then(Value::as_str).unwrap_or("NONGM"))?,
                holds: d.get("holds").and_then(Value::as_bool).unwrap_or(true),
                mismatches: match d.get("mismatches") {
                    None => Vec::new(),
                    Some(m) => m
                        .as_array()
                        .ok_or_else(|| Error::Malformed("mismatches must be an array".into()))?
                        .iter()
                        .map(|x| x.as_str().ok_or_else(|| Error::Malformed("mismatch must be \"p,q\"".into())).and_then(parse_key))
                        .collect::<Result<Vec<_>>>()?,
                },
            }),
        };
        let cover = match obj.get("cover") {
            None => None,
            Some(c) => {
                let a = id_set(c.get("a").unwrap_or(&Value::Null), "cover.a")?;
                let b = id_set(c.get("b").unwrap_or(&Value::Null), "cover.b")?;
                Some((a, b))
            }
        };
        Ok(Instance {
            name: text("name").unwrap_or_default(),
            suite: text("suite"),
            provenance: text("provenance"),
            description: text("description"),
            complex,
            filtration,
            perversity,
            flags,
            query: obj.get("query").map(Query::parse).transpose()?,
            expected: obj.get("expected").map(groups_from_json).transpose()?,
            duality,
            subdivided: obj.get("subdivided").map(complex_from_json).transpose()?,
            cover,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        for (k, v) in [("suite", &self.suite), ("provenance", &self.provenance), ("description", &self.description)] {
            if let Some(v) = v {
                m.insert(k.into(), json!(v));
            }
        }
        m.insert("complex".into(), complex_to_json(&self.complex));
        m.insert("filtration".into(), self.filtration.to_json());
        m.insert("perversity".into(), self.perversity.to_json());
        m.insert(
            "flags".into(),
            json!({
                "conical": self.flags.conical,
                "condition_C_asserted": self.flags.condition_c_asserted,
                "truncation_radius": self.flags.truncation_radius.as_ref().map(fmt_rat),
            }),
        );
        if let Some(q) = &self.query {
            m.insert("query".into(), q.to_json());
        }
        if let Some(e) = &self.expected {
            m.insert("expected".into(), groups_to_json(e));
        }
        if let Some(d) = &self.duality {
            let mm: Vec<String> = d.mismatches.iter().map(|(p, q)| format!("{p},{q}")).collect();
            m.insert("duality".into(), json!({ "variant": d.variant.as_str(), "holds": d.holds, "mismatches": mm }));
        }
        if let Some(s) = &self.subdivided {
            m.insert("subdivided".into(), complex_to_json(s));
        }
        if let Some((a, b)) = &self.cover {
            m.insert("cover".into(), json!({ "a": ids_json(a), "b": ids_json(b) }));
        }
        Value::Object(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        let mut inst: Instance = s.parse()?;
        if inst.name.is_empty() {
            inst.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        }
        Ok(inst)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }

    /// The apex of a fan: a point that is a face of every cell.
    pub fn apex(c: &FaceComplex) -> Option<usize> {
        (0..c.len()).find(|&v| c.dim(v) == 0 && (0..c.len()).all(|i| c.is_face(v, i)))
    }

    fn space_of(&self, complex: &FaceComplex) -> Result<Space> {
        let filtration = self.filtration.build(complex)?;
        let mut opts = TruncationOptions { cone_vertex: None, radius: self.flags.truncation_radius.clone() };
        if self.flags.conical {
            opts.cone_vertex = Some(Self::apex(complex).ok_or_else(|| Error::NotAFan("no apex shared by all cells".into()))?);
        }
        Space::new(complex.clone(), filtration)?.with_truncation(opts)
    }

    /// Space of the instance with its filtration and truncation flags.
    pub fn space(&self) -> Result<Space> {
        self.space_of(&self.complex)
    }

    /// Space on the subdivided cell structure, if any.
    pub fn subdivided_space(&self) -> Result<Option<Space>> {
        self.subdivided.as_ref().map(|c| self.space_of(c)).transpose()
    }

    pub fn perversity_on(&self, space: &Space) -> Result<Perversity> {
        self.perversity.resolve(space.stratification())
    }
}

impl std::str::FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
        Self::parse(&v)
    }
}
