//! Full duality table for the unit square with its boundary as the
//! singular set.

use std::collections::BTreeSet;
use tropih::ic::{Space, Variant};
use tropih::linalg::Coeff;
use tropih::oracles::duality_check;
use tropih::polyhedral::builders::{boxed, rats};
use tropih::polyhedral::FaceComplex;
use tropih::stratification::{pair_filtration, Perversity};

fn main() -> tropih::Result<()> {
    let c = FaceComplex::from_maximal(2, vec![boxed(&rats(&[0, 0]), &rats(&[1, 1]))])?;
    let open: BTreeSet<usize> = (0..c.len()).filter(|&i| c.dim(i) == 2).collect();
    let space = Space::new(c.clone(), pair_filtration(&c, &open)?)?;
    let perv = Perversity::zero(space.stratification());
    let report = duality_check(&space, &perv, Variant::NonGm, Coeff::Q, false)?;
    println!(" p q  IH^(n-p,n-q)  IH^(Dp,BM)_(p,q)");
    for e in &report.entries {
        println!("{:>2}{:>2}  {:>12}  {:>16}", e.p, e.q, e.cohomology, e.bm);
    }
    println!("holds: {}", report.holds());
    Ok(())
}
