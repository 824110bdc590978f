//! Command-line front end: `homology`, `oracle`, `info`, `validate`.

use crate::error::{Error, Result};
use crate::ic::{HomologyResult, Variant};
use crate::instance::{parse_coeff, parse_range, Instance, QueryFlavor};
use crate::linalg::{Coeff, HomologyGroup};
use crate::polyhedral::validate_complex;
use crate::suites::{check_all, default_corpus, load_suite};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "tih", version, about = "Tropical intersection homology of rational polyhedral complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute homology, Borel-Moore homology or cohomology of an instance.
    Homology {
        instance: PathBuf,
        /// Range of p, e.g. `0..=2`, `0..3` or `1`.
        #[arg(long)]
        p: Option<String>,
        /// Range of q shown in the output.
        #[arg(long)]
        q: Option<String>,
        /// gm | nongm
        #[arg(long)]
        variant: Option<String>,
        /// z | q
        #[arg(long)]
        coeff: Option<String>,
        /// ih | bm | cohom | cohom-c | plain
        #[arg(long)]
        flavor: Option<String>,
        /// Cells of a closed set Z: compute IH(X, X \ Z).
        #[arg(long, value_delimiter = ',')]
        rel: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the engine with the closed-form oracles.
    Oracle {
        instance: Option<PathBuf>,
        /// cone | onedim | tms | duality | all
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print cells, strata, perversity values and multi-tangent ranks.
    Info {
        instance: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check an instance file without computing anything.
    Validate { instance: PathBuf },
}

/// Runs the command line with stdout and stderr of the process.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let res = match cli.command {
        Command::Homology { instance, p, q, variant, coeff, flavor, rel, json } => {
            cmd_homology(out, &instance, HomologyArgs { p, q, variant, coeff, flavor, rel, json })
        }
        Command::Oracle { instance, suite, corpus, json } => cmd_oracle(out, instance, suite, corpus, json),
        Command::Info { instance, json } => cmd_info(out, &instance, json),
        Command::Validate { instance } => cmd_validate(out, &instance),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Malformed(format!("write failed: {e}"))
}

struct HomologyArgs {
    p: Option<String>,
    q: Option<String>,
    variant: Option<String>,
    coeff: Option<String>,
    flavor: Option<String>,
    rel: Option<Vec<usize>>,
    json: bool,
}

fn show_group(g: &HomologyGroup, coeff: Coeff) -> String {
    match coeff {
        Coeff::Z => g.to_string(),
        Coeff::Q => match g.free_rank {
            0 => "0".into(),
            1 => "Q".into(),
            r => format!("Q^{r}"),
        },
    }
}

fn cmd_homology(out: &mut dyn Write, path: &std::path::Path, a: HomologyArgs) -> Result<i32> {
    let inst = Instance::load(path)?;
    let mut query = inst.query.clone().unwrap_or_default();
    if let Some(s) = &a.variant {
        query.variant = Variant::parse(s)?;
    }
    if let Some(s) = &a.coeff {
        query.coeff = parse_coeff(s)?;
    }
    if let Some(s) = &a.flavor {
        query.flavor = QueryFlavor::parse(s)?;
    }
    if let Some(s) = &a.p {
        query.p = Some(parse_range(s)?);
    }
    if let Some(r) = a.rel {
        query.rel = Some(r.into_iter().collect::<BTreeSet<_>>());
    }
    let qs = a.q.as_deref().map(parse_range).transpose()?;
    let space = inst.space()?;
    let perv = inst.perversity_on(&space)?;
    let mut result: HomologyResult = query.evaluate(&space, &perv)?;
    if let Some((lo, hi)) = qs {
        result.groups.retain(|(_, q), _| (lo..=hi).contains(q));
    }
    if a.json {
        let v = result.to_json();
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)?;
        return Ok(0);
    }
    writeln!(
        out,
        "# {}  flavor={} variant={} coeff={} level={}",
        inst.name,
        query.flavor.as_str(),
        query.variant.as_str(),
        query.coeff.as_str(),
        result.subdivision_level
    )
    .map_err(io)?;
    writeln!(out, "p  q  group").map_err(io)?;
    for ((p, q), g) in result.nonzero() {
        writeln!(out, "{p}  {q}  {}", show_group(&g, query.coeff)).map_err(io)?;
    }
    Ok(0)
}

fn cmd_oracle(
    out: &mut dyn Write,
    instance: Option<PathBuf>,
    suite: Option<String>,
    corpus: Option<PathBuf>,
    json: bool,
) -> Result<i32> {
    let instances = match (instance, suite) {
        (Some(path), None) => vec![Instance::load(&path)?],
        (None, Some(s)) => load_suite(&corpus.unwrap_or_else(default_corpus), &s)?,
        (None, None) => load_suite(&corpus.unwrap_or_else(default_corpus), "all")?,
        (Some(_), Some(_)) => return Err(Error::Malformed("give an instance or --suite, not both".into())),
    };
    let report = check_all(&instances);
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable")).map_err(io)?;
    } else {
        write!(out, "{}", report.to_text()).map_err(io)?;
    }
    Ok(report.exit_code())
}

fn info_json(inst: &Instance) -> Result<Value> {
    let space = inst.space()?;
    let perv = inst.perversity_on(&space)?;
    let c = space.complex();
    let st = space.stratification();
    let cells: Vec<Value> = (0..c.len())
        .map(|i| {
            let ranks: Result<Vec<usize>> = space.p_range().map(|p| space.coefficients().rank(i, p)).collect();
            Ok(json!({
                "id": i,
                "dim": c.dim(i),
                "sedentarity": c.sedentarity(i),
                "bounded": c.is_bounded(i),
                "faces": c.faces(i),
                "stratum": st.of_cell[i],
                "multitangent_ranks": ranks?,
            }))
        })
        .collect::<Result<_>>()?;
    let strata: Vec<Value> = st
        .strata
        .iter()
        .map(|s| {
            json!({
                "id": s.id,
                "dim": s.formal_dim,
                "codim": s.codim,
                "regular": s.regular,
                "cells": s.cells,
                "perversity": perv.value(s.id),
            })
        })
        .collect();
    Ok(json!({
        "name": inst.name,
        "ambient": if c.ambient() == crate::polyhedral::Ambient::Tropical { "T" } else { "R" },
        "ambient_dim": c.ambient_dim(),
        "formal_dim": space.formal_dim(),
        "compact": space.is_compact(),
        "cone_vertex": space.cone_vertex(),
        "cells": cells,
        "strata": strata,
    }))
}

fn cmd_info(out: &mut dyn Write, path: &std::path::Path, json: bool) -> Result<i32> {
    let inst = Instance::load(path)?;
    let v = info_json(&inst)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)?;
        return Ok(0);
    }
    let list = |x: &Value| x.as_array().map(|a| a.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(",")).unwrap_or_default();
    writeln!(
        out,
        "# {}  ambient={}^{} dim={} compact={}",
        inst.name, v["ambient"].as_str().unwrap_or("R"), v["ambient_dim"], v["formal_dim"], v["compact"]
    )
    .map_err(io)?;
    let cells = v["cells"].as_array().map(Vec::len).unwrap_or(0);
    writeln!(out, "cells: {cells}").map_err(io)?;
    writeln!(out, "id  dim  stratum  faces  F_p ranks (p = 0..)").map_err(io)?;
    for cell in v["cells"].as_array().into_iter().flatten() {
        writeln!(
            out,
            "{}  {}  {}  [{}]  [{}]",
            cell["id"], cell["dim"], cell["stratum"], list(&cell["faces"]), list(&cell["multitangent_ranks"])
        )
        .map_err(io)?;
    }
    let strata = v["strata"].as_array().map(Vec::len).unwrap_or(0);
    writeln!(out, "strata: {strata}").map_err(io)?;
    writeln!(out, "id  dim  codim  regular  perversity  cells").map_err(io)?;
    for s in v["strata"].as_array().into_iter().flatten() {
        writeln!(out, "{}  {}  {}  {}  {}  [{}]", s["id"], s["dim"], s["codim"], s["regular"], s["perversity"], list(&s["cells"]))
            .map_err(io)?;
    }
    Ok(0)
}

fn cmd_validate(out: &mut dyn Write, path: &std::path::Path) -> Result<i32> {
    let inst = Instance::load(path)?;
    let report = validate_complex(&inst.complex);
    if !report.valid {
        for v in &report.violations {
            writeln!(out, "invalid: {v}").map_err(io)?;
        }
        return Ok(2);
    }
    let space = inst.space()?;
    inst.perversity_on(&space)?;
    if let Some(s) = inst.subdivided_space()? {
        inst.perversity_on(&s)?;
    }
    writeln!(out, "ok: {} cells, {} strata", inst.complex.len(), space.stratification().strata.len()).map_err(io)?;
    Ok(0)
}
