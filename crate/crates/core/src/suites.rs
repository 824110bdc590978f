//! Oracle suites over an instance corpus.

use crate::error::{Error, Result};
use crate::ic::{Space, Variant};
use crate::instance::{FiltrationSpec, Instance, Query};
use crate::linalg::Coeff;
use crate::oracles::{check_cone, compare, duality_check, onedim_gm, onedim_nongm, tms_oracle, ConeFlavor, Mismatch};
use crate::stratification::{Perversity, PerversitySpec};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub const SUITES: [&str; 4] = ["cone", "onedim", "tms", "duality"];

/// Outcome of one comparison.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub diffs: Vec<Mismatch>,
    pub note: Option<String>,
    pub error: Option<Error>,
}

impl Check {
    fn diffs(label: String, diffs: Vec<Mismatch>) -> Self {
        Check { label, passed: diffs.is_empty(), diffs, note: None, error: None }
    }

    fn from_result(label: String, r: Result<Check>) -> Self {
        r.unwrap_or_else(|e| Check { label, passed: false, diffs: Vec::new(), note: None, error: Some(e) })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.label,
            "passed": self.passed,
            "diffs": self.diffs.iter().map(Mismatch::to_json).collect::<Vec<_>>(),
            "note": self.note,
            "error": self.error.as_ref().map(|e| e.to_string()),
        })
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub name: String,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.name,
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub instances: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(InstanceReport::passed)
    }

    pub fn check_count(&self) -> usize {
        self.instances.iter().map(|i| i.checks.len()).sum()
    }

    /// 0 when everything passed, 5 on any mismatch, otherwise the exit code
    /// of the first error.
    pub fn exit_code(&self) -> i32 {
        let failed: Vec<&Check> = self.instances.iter().flat_map(|i| &i.checks).filter(|c| !c.passed).collect();
        if failed.is_empty() {
            0
        } else if failed.iter().any(|c| c.error.is_none()) {
            5
        } else {
            failed[0].error.as_ref().map_or(5, Error::exit_code)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "instances": self.instances.iter().map(InstanceReport::to_json).collect::<Vec<_>>(),
        })
    }

    /// One line per check, failures followed by their bidegree diffs.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            for c in &inst.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                out.push_str(&format!("{status}  {}/{}  {}", inst.suite, inst.name, c.label));
                if let Some(n) = &c.note {
                    out.push_str(&format!("  ({n})"));
                }
                out.push('\n');
                if let Some(e) = &c.error {
                    out.push_str(&format!("      error: {e}\n"));
                }
                for d in &c.diffs {
                    out.push_str(&format!("      ({},{}): expected {}, got {}\n", d.p, d.q, d.expected, d.actual));
                }
            }
        }
        let failed = self.instances.iter().flat_map(|i| &i.checks).filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} instances, {} checks, {} failed\n",
            self.instances.len(),
            self.check_count(),
            failed
        ));
        out
    }
}

fn cone_checks(space: &Space, perv: &Perversity) -> Vec<Check> {
    let mut out = Vec::new();
    for flavor in ConeFlavor::ALL {
        for coeff in [Coeff::Q, Coeff::Z] {
            let label = format!("cone {} over {}", flavor.as_str(), coeff.as_str());
            let r = (|| {
                let mut diffs = Vec::new();
                for p in space.p_range() {
                    diffs.extend(check_cone(space, perv, p, flavor, coeff)?);
                }
                Ok(Check::diffs(label.clone(), diffs))
            })();
            out.push(Check::from_result(label, r));
        }
    }
    out
}

fn onedim_checks(space: &Space, perv: &Perversity) -> Vec<Check> {
    let mut out = Vec::new();
    for coeff in [Coeff::Q, Coeff::Z] {
        for variant in [Variant::NonGm, Variant::Gm] {
            let label = format!("onedim {} over {}", variant.as_str(), coeff.as_str());
            let r = (|| {
                let expected = match variant {
                    Variant::NonGm => onedim_nongm(space, perv, coeff)?,
                    Variant::Gm => onedim_gm(space, perv, coeff)?,
                };
                let actual = space.homology(perv, space.p_range(), variant, coeff)?;
                Ok(Check::diffs(label.clone(), compare(&expected.nonzero(), &actual.nonzero())))
            })();
            out.push(Check::from_result(label, r));
        }
    }
    out
}

/// The constant perversity value of a pair instance.
fn constant_value(spec: &PerversitySpec) -> Result<i64> {
    match spec {
        PerversitySpec::Zero => Ok(0),
        PerversitySpec::Constant(m) => Ok(*m),
        _ => Err(Error::BadPair("the perversity of a pair instance must be constant".into())),
    }
}

fn duality_label(variant: Variant) -> String {
    format!("duality {} over Q", variant.as_str())
}

fn tms_checks(inst: &Instance, space: &Space, perv: &Perversity) -> Vec<Check> {
    let mut out = Vec::new();
    for coeff in [Coeff::Q, Coeff::Z] {
        let label = format!("pair oracle over {}", coeff.as_str());
        let r = (|| {
            let FiltrationSpec::Pair(open) = &inst.filtration else {
                return Err(Error::BadPair("pair instances need a pair filtration".into()));
            };
            let m = constant_value(&inst.perversity)?;
            let expected = tms_oracle(space, open, m, coeff)?;
            let actual = space.homology(perv, space.p_range(), Variant::NonGm, coeff)?;
            let mut c = Check::diffs(label.clone(), compare(&expected.nonzero(), &actual.nonzero()));
            c.note = Some(if m < 0 { "H(U)".into() } else { "H^BM(U)".into() });
            Ok(c)
        })();
        out.push(Check::from_result(label, r));
    }
    let label = duality_label(Variant::NonGm);
    let r = duality_check(space, perv, Variant::NonGm, Coeff::Q, inst.flags.condition_c_asserted).map(|rep| Check {
        label: label.clone(),
        passed: rep.holds(),
        diffs: Vec::new(),
        note: (!rep.holds()).then(|| format!("mismatch at {}", bidegrees(&rep.mismatches().iter().map(|e| (e.p, e.q)).collect()))),
        error: None,
    });
    out.push(Check::from_result(label, r));
    out
}

fn bidegrees(v: &BTreeSet<(usize, usize)>) -> String {
    v.iter().map(|(p, q)| format!("({p},{q})")).collect::<Vec<_>>().join(" ")
}

fn duality_checks(inst: &Instance, space: &Space, perv: &Perversity) -> Vec<Check> {
    let Some(spec) = &inst.duality else {
        let label = duality_label(Variant::NonGm);
        let r = duality_check(space, perv, Variant::NonGm, Coeff::Q, inst.flags.condition_c_asserted)
            .map(|rep| Check { label: label.clone(), passed: rep.holds(), diffs: Vec::new(), note: None, error: None });
        return vec![Check::from_result(label, r)];
    };
    let label = duality_label(spec.variant);
    let r = duality_check(space, perv, spec.variant, Coeff::Q, inst.flags.condition_c_asserted).map(|rep| {
        let found: BTreeSet<(usize, usize)> = rep.mismatches().iter().map(|e| (e.p, e.q)).collect();
        let wanted: BTreeSet<(usize, usize)> = spec.mismatches.iter().copied().collect();
        let passed = if spec.holds { found.is_empty() } else { !found.is_empty() && wanted.is_subset(&found) };
        let note = if spec.holds {
            (!found.is_empty()).then(|| format!("unexpected mismatch at {}", bidegrees(&found)))
        } else {
            Some(format!("expected failure, mismatch at {}", bidegrees(&found)))
        };
        Check { label: label.clone(), passed, diffs: Vec::new(), note, error: None }
    });
    vec![Check::from_result(label, r)]
}

fn independence_checks(inst: &Instance, space: &Space, perv: &Perversity) -> Vec<Check> {
    let query = inst.query.clone().unwrap_or_default();
    let label = format!("face-structure independence {} {}", query.flavor.as_str(), query.variant.as_str());
    let r = (|| {
        let fine = inst
            .subdivided_space()?
            .ok_or_else(|| Error::Malformed("independence instances need a subdivided complex".into()))?;
        let fine_perv = inst.perversity_on(&fine)?;
        let coarse = query.evaluate(space, perv)?;
        let fine = query.evaluate(&fine, &fine_perv)?;
        Ok(Check::diffs(label.clone(), compare(&coarse.nonzero(), &fine.nonzero())))
    })();
    vec![Check::from_result(label, r)]
}

fn snapshot_check(inst: &Instance, space: &Space, perv: &Perversity) -> Option<Check> {
    let expected = inst.expected.as_ref()?;
    let query: Query = inst.query.clone().unwrap_or_default();
    let label = format!("snapshot {} {} over {}", query.flavor.as_str(), query.variant.as_str(), query.coeff.as_str());
    let r = query
        .evaluate(space, perv)
        .map(|actual| Check::diffs(label.clone(), compare(&expected.iter().filter(|(_, g)| !g.is_zero()).map(|(k, g)| (*k, g.clone())).collect(), &actual.nonzero())));
    Some(Check::from_result(label, r))
}

/// Runs every check that applies to one instance.
pub fn check_instance(inst: &Instance) -> InstanceReport {
    let suite = inst.suite.clone().unwrap_or_else(|| "instance".into());
    let mut report = InstanceReport { name: inst.name.clone(), suite: suite.clone(), checks: Vec::new() };
    let setup = inst.space().and_then(|s| inst.perversity_on(&s).map(|p| (s, p)));
    let (space, perv) = match setup {
        Ok(x) => x,
        Err(e) => {
            report.checks.push(Check { label: "load".into(), passed: false, diffs: Vec::new(), note: None, error: Some(e) });
            return report;
        }
    };
    match suite.as_str() {
        "cone" => report.checks.extend(cone_checks(&space, &perv)),
        "onedim" => report.checks.extend(onedim_checks(&space, &perv)),
        "tms" => report.checks.extend(tms_checks(inst, &space, &perv)),
        "duality" => report.checks.extend(duality_checks(inst, &space, &perv)),
        "independence" => report.checks.extend(independence_checks(inst, &space, &perv)),
        _ => {}
    }
    report.checks.extend(snapshot_check(inst, &space, &perv));
    report
}

/// Instance files of one suite directory, sorted by file name.
pub fn suite_files(corpus: &Path, suite: &str) -> Result<Vec<PathBuf>> {
    let dir = corpus.join(suite);
    let rd = std::fs::read_dir(&dir).map_err(|e| Error::Malformed(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Loads a suite; `all` means every named suite.
pub fn load_suite(corpus: &Path, suite: &str) -> Result<Vec<Instance>> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) || s == "independence" => vec![s],
        s => return Err(Error::Malformed(format!("unknown suite {s:?}; expected one of cone, onedim, tms, duality, all"))),
    };
    let mut out = Vec::new();
    for name in names {
        for path in suite_files(corpus, name)? {
            let mut inst = Instance::load(&path)?;
            inst.suite.get_or_insert_with(|| name.to_string());
            out.push(inst);
        }
    }
    Ok(out)
}

/// Checks instances on a small pool of worker threads; the report keeps
/// the input order.
pub fn check_all(instances: &[Instance]) -> SuiteReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(instances.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<InstanceReport>>> = Mutex::new(vec![None; instances.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= instances.len() {
                    break;
                }
                let r = check_instance(&instances[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    SuiteReport { instances: results.into_inner().unwrap().into_iter().map(|r| r.expect("every instance checked")).collect() }
}

pub fn run_suite(corpus: &Path, suite: &str) -> Result<SuiteReport> {
    Ok(check_all(&load_suite(corpus, suite)?))
}

/// Corpus shipped with the crate.
pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join("v1")
}
