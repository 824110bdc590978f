//! The fan of three rays `e1, e2, -e1-e2` in R^2: GM intersection
//! cohomology and Borel-Moore homology fail duality, the non-GM groups
//! vanish and satisfy it.

use tropih::ic::{Space, Variant};
use tropih::linalg::Coeff;
use tropih::oracles::duality_check;
use tropih::polyhedral::builders::u31;
use tropih::stratification::{dual_perversity, trop_filtration, Perversity};

fn main() -> tropih::Result<()> {
    let c = u31();
    let space = Space::new(c.clone(), trop_filtration(&c)?)?.conical(0)?;
    let st = space.stratification();
    let perv = Perversity::zero(st);
    let dual = dual_perversity(st, &perv);
    println!("perversity at the vertex: {}, dual: {}", perv.of_cell(st, 0), dual.of_cell(st, 0));

    for variant in [Variant::Gm, Variant::NonGm] {
        let cohom = space.cohomology(&perv, 0..=0, variant, Coeff::Q, false)?;
        let bm = space.bm_homology(&dual, 1..=1, variant, Coeff::Q)?;
        println!("{}:", variant.as_str());
        for q in 0..=1 {
            println!("  dim IH^(0,{q}) = {}   dim IH^(Dp,BM)_(1,{}) = {}", cohom.rank(0, q), 1 - q, bm.rank(1, 1 - q));
        }
        let report = duality_check(&space, &perv, variant, Coeff::Q, false)?;
        let bad: Vec<String> = report.mismatches().iter().map(|e| format!("({},{})", e.p, e.q)).collect();
        if bad.is_empty() {
            println!("  duality holds");
        } else {
            println!("  duality fails at {}", bad.join(" "));
        }
    }
    Ok(())
}
