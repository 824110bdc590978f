//! Closed-form cone predictions next to the engine for a fan with vertex.

use tropih::ic::Space;
use tropih::linalg::Coeff;
use tropih::oracles::{cone_engine, cone_formula, ConeFlavor};
use tropih::polyhedral::builders::four_quadrants;
use tropih::stratification::{face_filtration, Perversity};

fn main() -> tropih::Result<()> {
    let c = four_quadrants();
    let space = Space::new(c.clone(), face_filtration(&c))?.conical(0)?;
    for m in [-1, 0] {
        let perv = Perversity::constant(space.stratification(), m);
        println!("constant perversity {m}");
        for flavor in ConeFlavor::ALL {
            for p in space.p_range() {
                let pred = cone_formula(&space, &perv, p, flavor, Coeff::Z)?;
                let got = cone_engine(&space, &perv, p, flavor, Coeff::Z)?;
                let row: Vec<String> = pred
                    .entries
                    .iter()
                    .map(|(q, (case, g))| {
                        let ok = if got.get(p, *q) == *g { "" } else { " !" };
                        format!("q={q} {} {g}{ok}", case.as_str())
                    })
                    .collect();
                println!("  {:<12} p={p}  {}", flavor.as_str(), row.join(" | "));
            }
        }
    }
    Ok(())
}
