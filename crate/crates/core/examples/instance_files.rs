//! Loading an instance file, running its query and the oracle checks.
//!
//! ```text
//! cargo run --example instance_files -- corpus/v1/tms/tripod_m+0.json
//! ```

use std::path::PathBuf;
use tropih::instance::Instance;
use tropih::suites::{check_instance, default_corpus};

fn main() -> tropih::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| default_corpus().join("cone/u31_m+0.json"));
    let inst = Instance::load(&path)?;
    println!("{}: {} cells, filtration {}", inst.name, inst.complex.len(), inst.filtration.to_json());
    let space = inst.space()?;
    let perv = inst.perversity_on(&space)?;
    let query = inst.query.clone().unwrap_or_default();
    let result = query.evaluate(&space, &perv)?;
    println!("{}", serde_json::to_string_pretty(&result.to_json()).unwrap());
    print!("{}", tropih::suites::SuiteReport { instances: vec![check_instance(&inst)] }.to_text());
    Ok(())
}
