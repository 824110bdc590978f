//! Regenerates the instance corpus under `corpus/v1`.
//!
//! ```text
//! cargo run --example generate_corpus [-- <dir>]
//! ```

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use tropih::ic::Variant;
use tropih::instance::{DualitySpec, FiltrationSpec, Instance, Query, QueryFlavor};
use tropih::linalg::HomologyGroup;
use tropih::polyhedral::builders::{boxed, cone2, four_quadrants, line, rats, ray, ray_fan, segment, triangle_cycle, u31};
use tropih::polyhedral::rat::rat;
use tropih::polyhedral::{validate_complex, FaceComplex, HPolyhedron};
use tropih::stratification::{face_filtration, trop_filtration, PerversitySpec};
use tropih::suites::default_corpus;
use tropih::Result;

fn tagged(mut inst: Instance, suite: &str, provenance: &str, description: &str) -> Instance {
    inst.suite = Some(suite.into());
    inst.provenance = Some(provenance.into());
    inst.description = Some(description.into());
    inst
}

fn groups(entries: &[((usize, usize), usize)]) -> BTreeMap<(usize, usize), HomologyGroup> {
    entries.iter().map(|&(k, r)| (k, HomologyGroup::free(r))).collect()
}

fn cone_suite() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for m in -2..=2 {
        let mut inst = Instance::new(&format!("u31_m{m:+}"), u31(), FiltrationSpec::Trop, PerversitySpec::Constant(m));
        inst.flags.conical = true;
        if m == 0 {
            inst.query = Some(Query { flavor: QueryFlavor::Cohom, variant: Variant::Gm, p: Some((0, 0)), ..Query::default() });
            inst.expected = Some(groups(&[((0, 0), 1)]));
        }
        let prov = if m == 0 { "paper" } else { "derived" };
        out.push(tagged(inst, "cone", prov, "three rays e1, e2, -e1-e2 in R^2 with constant perversity at the vertex"));
    }
    for m in -1..=1 {
        let mut inst =
            Instance::new(&format!("line_m{m:+}"), ray_fan(1, &[vec![1], vec![-1]])?, FiltrationSpec::Face, PerversitySpec::Constant(m));
        inst.flags.conical = true;
        out.push(tagged(inst, "cone", "derived", "two-valent fan: the real line with the origin as a stratum"));
    }
    let o = rats(&[0, 0]);
    for m in -1..=1 {
        let quad = FaceComplex::from_maximal(2, vec![cone2(&o, &[1, 0], &[0, 1])])?;
        let mut inst = Instance::new(&format!("quadrant_m{m:+}"), quad, FiltrationSpec::Trop, PerversitySpec::ByCodim(vec![m]));
        inst.flags.conical = true;
        out.push(tagged(inst, "cone", "derived", "closed positive quadrant in R^2"));
    }
    for m in [-1, 0] {
        let mut inst = Instance::new(&format!("quadrants4_m{m:+}"), four_quadrants(), FiltrationSpec::Face, PerversitySpec::Constant(m));
        inst.flags.conical = true;
        out.push(tagged(inst, "cone", "derived", "complete fan of R^2 by the four quadrants with the face filtration"));
    }
    Ok(out)
}

/// Points `(t, t^2)`: no three are collinear, so every vertex of a graph
/// drawn on them is a singular point.
fn parabola(t: i64) -> Vec<tropih::polyhedral::Rat> {
    rats(&[t, t * t])
}

fn onedim_case(rng: &mut ChaCha8Rng, kind: &str) -> Result<Option<(FaceComplex, bool)>> {
    let mut ts: Vec<i64> = (-3..=3).collect();
    ts.shuffle(rng);
    let k = rng.gen_range(2..=5);
    let mut ts: Vec<i64> = ts[..k].to_vec();
    ts.sort();
    let seg = |a: i64, b: i64| segment(&parabola(a), &parabola(b));
    let mut cells: Vec<HPolyhedron> = Vec::new();
    let mut unbounded = false;
    match kind {
        "path" => {
            for w in ts.windows(2) {
                cells.push(seg(w[0], w[1])?);
            }
        }
        "star_tree" => {
            for &t in &ts[1..] {
                cells.push(seg(ts[0], t)?);
            }
        }
        "cycle" => {
            if ts.len() < 3 {
                ts.push(if ts.contains(&3) { -3 } else { 3 });
                ts.sort();
                ts.dedup();
            }
            for w in ts.windows(2) {
                cells.push(seg(w[0], w[1])?);
            }
            cells.push(seg(ts[0], *ts.last().unwrap())?);
        }
        "path_rays" | "cycle_rays" => {
            for w in ts.windows(2) {
                cells.push(seg(w[0], w[1])?);
            }
            if kind == "cycle_rays" && ts.len() >= 3 {
                cells.push(seg(ts[0], *ts.last().unwrap())?);
            }
            for &t in &ts {
                if rng.gen_bool(0.5) {
                    cells.push(ray(&parabola(t), &[0, -1]));
                }
            }
            unbounded = true;
        }
        "rays_only" => {
            for &t in &ts {
                cells.push(ray(&parabola(t), &[0, -1]));
            }
            unbounded = true;
        }
        "path_line" => {
            for w in ts.windows(2) {
                cells.push(seg(w[0], w[1])?);
            }
            cells.push(line(&rats(&[10, 0]), &[0, 1]));
            unbounded = true;
        }
        _ => unreachable!(),
    }
    let c = FaceComplex::from_maximal(2, cells)?;
    if !validate_complex(&c).valid {
        return Ok(None);
    }
    if trop_filtration(&c)? != face_filtration(&c) {
        return Ok(None);
    }
    Ok(Some((c, unbounded)))
}

fn onedim_suite() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let seg = FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[1]))?])?;
    let mut inst = Instance::new("segment_zero", seg.clone(), FiltrationSpec::Trop, PerversitySpec::Zero);
    inst.expected = Some(groups(&[((0, 1), 1), ((1, 1), 1)]));
    out.push(tagged(inst, "onedim", "paper", "unit segment, zero perversity at both ends"));
    let mut inst = Instance::new("segment_minus_one", seg, FiltrationSpec::Trop, PerversitySpec::Constant(-1));
    inst.expected = Some(groups(&[((0, 0), 1), ((1, 0), 1)]));
    out.push(tagged(inst, "onedim", "paper", "unit segment, perversity -1 at both ends"));
    let mut inst = Instance::new("triangle_zero", triangle_cycle(), FiltrationSpec::Face, PerversitySpec::Zero);
    inst.expected = Some(groups(&[((0, 1), 3), ((1, 1), 3)]));
    out.push(tagged(inst, "onedim", "derived", "boundary of a triangle with every vertex a stratum"));
    let mut inst = Instance::new("u31_minus_one", u31(), FiltrationSpec::Trop, PerversitySpec::Constant(-1));
    inst.flags.conical = true;
    out.push(tagged(inst, "onedim", "derived", "three rays at a vertex of perversity -1"));

    let mut rng = ChaCha8Rng::seed_from_u64(0x7d1e);
    let kinds = ["path", "star_tree", "cycle", "path_rays", "cycle_rays", "rays_only", "path_line"];
    let mut made = 0;
    let mut attempt = 0;
    while made < 14 {
        attempt += 1;
        let kind = kinds[made % kinds.len()];
        let Some((c, unbounded)) = onedim_case(&mut rng, kind)? else { continue };
        let mut values = BTreeMap::new();
        for v in (0..c.len()).filter(|&i| c.dim(i) == 0) {
            values.insert(v, rng.gen_range(-2..=2));
        }
        let perv = PerversitySpec::Explicit { strata: BTreeMap::new(), cells: values };
        let mut inst = Instance::new(&format!("random_{made:02}_{kind}"), c, FiltrationSpec::Face, perv);
        if unbounded {
            inst.flags.truncation_radius = Some(rat(30));
        }
        let desc = format!("random graph ({kind}) on points of a parabola, seed attempt {attempt}");
        out.push(tagged(inst, "onedim", "derived", &desc));
        made += 1;
    }
    Ok(out)
}

/// The open set `U` = complement of the singular cells of the trop
/// filtration.
fn smooth_part(c: &FaceComplex) -> Result<BTreeSet<usize>> {
    let f = trop_filtration(c)?;
    let n = f.formal_dim;
    let sing = if n == 0 { BTreeSet::new() } else { f.levels[n - 1].clone() };
    Ok((0..c.len()).filter(|i| !sing.contains(i)).collect())
}

fn pair_complexes() -> Result<Vec<(&'static str, FaceComplex, &'static str)>> {
    let o = rats(&[0, 0]);
    let tripod = FaceComplex::from_maximal(
        2,
        vec![segment(&o, &rats(&[1, 0]))?, segment(&o, &rats(&[0, 1]))?, segment(&o, &rats(&[-1, -1]))?],
    )?;
    let halves = FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[1]))?, segment(&rats(&[1]), &rats(&[2]))?])?;
    Ok(vec![
        ("triangle", triangle_cycle(), "boundary of a triangle, corners removed"),
        ("segment", FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[1]))?])?, "segment, ends removed"),
        ("tripod", tripod, "truncated three-ray star, vertex and leaves removed"),
        ("halves", halves, "segment cut at a smooth midpoint, ends removed"),
    ])
}

fn tms_suite() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, c, desc) in pair_complexes()? {
        let open = smooth_part(&c)?;
        for m in -1..=1 {
            let inst = Instance::new(&format!("{name}_m{m:+}"), c.clone(), FiltrationSpec::Pair(open.clone()), PerversitySpec::Constant(m));
            out.push(tagged(inst, "tms", "paper", desc));
        }
    }
    Ok(out)
}

fn duality_suite() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (variant, holds) in [(Variant::Gm, false), (Variant::NonGm, true)] {
        let mut inst = Instance::new(&format!("u31_{}", variant.as_str().to_lowercase()), u31(), FiltrationSpec::Trop, PerversitySpec::Zero);
        inst.flags.conical = true;
        inst.duality = Some(DualitySpec { variant, holds, mismatches: if holds { vec![] } else { vec![(1, 1)] } });
        let desc = if holds { "three-ray fan, non-GM duality holds" } else { "three-ray fan, GM duality fails" };
        out.push(tagged(inst, "duality", "paper", desc));
    }
    for (name, c, desc) in pair_complexes()?.into_iter().take(3) {
        let open = smooth_part(&c)?;
        let mut inst = Instance::new(&format!("{name}_pair"), c, FiltrationSpec::Pair(open), PerversitySpec::Zero);
        inst.duality = Some(DualitySpec { variant: Variant::NonGm, holds: true, mismatches: vec![] });
        out.push(tagged(inst, "duality", "paper", desc));
    }
    let square = FaceComplex::from_maximal(2, vec![boxed(&rats(&[0, 0]), &rats(&[1, 1]))])?;
    let open = smooth_part(&square)?;
    let mut inst = Instance::new("square_pair", square, FiltrationSpec::Pair(open), PerversitySpec::Zero);
    inst.duality = Some(DualitySpec { variant: Variant::NonGm, holds: true, mismatches: vec![] });
    out.push(tagged(inst, "duality", "derived", "unit square, boundary removed"));
    Ok(out)
}

fn independence_suite() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let q = |variant, flavor| Query { variant, flavor, ..Query::default() };

    let coarse = FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[2]))?])?;
    let fine = FaceComplex::from_maximal(1, vec![segment(&rats(&[0]), &rats(&[1]))?, segment(&rats(&[1]), &rats(&[2]))?])?;
    let mut inst = Instance::new("segment_split", coarse, FiltrationSpec::Trop, PerversitySpec::Zero);
    inst.subdivided = Some(fine);
    inst.query = Some(q(Variant::NonGm, QueryFlavor::Ih));
    out.push(tagged(inst, "independence", "derived", "segment with and without a midpoint vertex"));

    let o = rats(&[0, 0]);
    let dirs: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, -1]];
    let mut fine_cells = Vec::new();
    for d in dirs {
        let mid = rats(&[d[0], d[1]]);
        fine_cells.push(segment(&o, &mid)?);
        fine_cells.push(ray(&mid, &d));
    }
    let mut inst = Instance::new("u31_split", u31(), FiltrationSpec::Trop, PerversitySpec::Zero);
    inst.subdivided = Some(FaceComplex::from_maximal(2, fine_cells)?);
    inst.flags.truncation_radius = Some(rat(4));
    inst.query = Some(q(Variant::Gm, QueryFlavor::Ih));
    out.push(tagged(inst, "independence", "derived", "three-ray fan with a vertex inserted on every ray"));

    let v = [rats(&[0, 0]), rats(&[2, 0]), rats(&[0, 2])];
    let mid = rats(&[1, 0]);
    let coarse = FaceComplex::from_maximal(2, (0..3).map(|i| segment(&v[i], &v[(i + 1) % 3])).collect::<Result<_>>()?)?;
    let fine = FaceComplex::from_maximal(
        2,
        vec![segment(&v[0], &mid)?, segment(&mid, &v[1])?, segment(&v[1], &v[2])?, segment(&v[2], &v[0])?],
    )?;
    let mut inst = Instance::new("triangle_split", coarse, FiltrationSpec::Trop, PerversitySpec::Constant(-1));
    inst.subdivided = Some(fine);
    inst.query = Some(q(Variant::Gm, QueryFlavor::Ih));
    out.push(tagged(inst, "independence", "derived", "triangle boundary with an extra vertex on one edge"));

    let coarse = FaceComplex::from_maximal(2, vec![boxed(&rats(&[0, 0]), &rats(&[2, 2]))])?;
    let mut quarters = Vec::new();
    for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        quarters.push(boxed(&rats(&[x, y]), &rats(&[x + 1, y + 1])));
    }
    let mut inst = Instance::new("square_split", coarse, FiltrationSpec::Trop, PerversitySpec::Zero);
    inst.subdivided = Some(FaceComplex::from_maximal(2, quarters)?);
    inst.query = Some(q(Variant::NonGm, QueryFlavor::Ih));
    out.push(tagged(inst, "independence", "derived", "square cut into four squares"));
    Ok(out)
}

fn write_suite(dir: &Path, suite: &str, instances: &[Instance]) -> std::io::Result<()> {
    let d = dir.join(suite);
    if d.exists() {
        for e in std::fs::read_dir(&d)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == "json") {
                std::fs::remove_file(p)?;
            }
        }
    }
    std::fs::create_dir_all(&d)?;
    for inst in instances {
        std::fs::write(d.join(format!("{}.json", inst.name)), inst.to_pretty())?;
    }
    println!("{suite}: {} instances", instances.len());
    Ok(())
}

fn main() -> std::result::Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(default_corpus);
    write_suite(&dir, "cone", &cone_suite()?)?;
    write_suite(&dir, "onedim", &onedim_suite()?)?;
    write_suite(&dir, "tms", &tms_suite()?)?;
    write_suite(&dir, "duality", &duality_suite()?)?;
    write_suite(&dir, "independence", &independence_suite()?)?;
    Ok(())
}
