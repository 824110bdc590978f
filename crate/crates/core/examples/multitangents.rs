//! Multi-tangent lattices `F_p` of every cell and a restriction map.

use tropih::coefficients::{multitangent, restriction};
use tropih::polyhedral::builders::u31;

fn main() -> tropih::Result<()> {
    let c = u31();
    for sigma in 0..c.len() {
        for p in 0..=c.ambient_dim() {
            let f = multitangent(&c, sigma, p)?;
            println!("cell {sigma} (dim {}) F_{p}: rank {} basis {:?}", c.dim(sigma), f.rank(), f.lattice.basis);
        }
    }
    // ι: F_1(ray) → F_1(vertex)
    let r = restriction(&c, 3, 0, 1)?;
    println!("restriction F_1(cell 3) -> F_1(cell 0): {:?}", r.to_rows());
    Ok(())
}
