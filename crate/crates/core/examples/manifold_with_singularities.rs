//! A compact graph with its singular vertices removed: intersection
//! homology for constant perversity `m` is `H(U)` for `m < 0` and
//! `H^BM(U)` for `m >= 0`.

use std::collections::BTreeSet;
use tropih::ic::{Space, Variant};
use tropih::linalg::Coeff;
use tropih::oracles::{duality_check, tms_oracle};
use tropih::polyhedral::builders::triangle_cycle;
use tropih::stratification::{pair_filtration, trop_filtration, Perversity};

fn main() -> tropih::Result<()> {
    let c = triangle_cycle();
    let singular = trop_filtration(&c)?.singular_cells();
    let open: BTreeSet<usize> = (0..c.len()).filter(|i| !singular.contains(i)).collect();
    let space = Space::new(c.clone(), pair_filtration(&c, &open)?)?;
    println!("U = cells {open:?}");
    for m in -1..=1 {
        let perv = Perversity::constant(space.stratification(), m);
        let ih = space.homology(&perv, space.p_range(), Variant::NonGm, Coeff::Z)?;
        let oracle = tms_oracle(&space, &open, m, Coeff::Z)?;
        let duality = duality_check(&space, &perv, Variant::NonGm, Coeff::Q, false)?;
        println!(
            "m = {m:>2}: IH = {}  oracle agrees: {}  duality: {}",
            ih.nonzero().iter().map(|((p, q), g)| format!("({p},{q}): {g}")).collect::<Vec<_>>().join(", "),
            ih.same_groups(&oracle),
            duality.holds()
        );
    }
    Ok(())
}
