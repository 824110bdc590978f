//! Edge classification for graphs: non-GM groups `Q^a` / `Q^b` and GM
//! groups from the complement of the negative vertices.

use tropih::ic::{HomologyResult, Space, Variant};
use tropih::linalg::Coeff;
use tropih::oracles::{edge_classes, onedim_gm, onedim_nongm};
use tropih::polyhedral::builders::{rats, ray, segment};
use tropih::polyhedral::FaceComplex;
use tropih::stratification::{face_filtration, Perversity};
use tropih::triangulate::TruncationOptions;

fn table(r: &HomologyResult) -> String {
    let parts: Vec<String> = r.nonzero().iter().map(|((p, q), g)| format!("({p},{q}): Q^{}", g.free_rank)).collect();
    parts.join(", ")
}

fn main() -> tropih::Result<()> {
    // a path through (-1,1), (0,0), (2,4) with a ray hanging down from (0,0)
    let pts = [rats(&[-1, 1]), rats(&[0, 0]), rats(&[2, 4])];
    let c = FaceComplex::from_maximal(
        2,
        vec![segment(&pts[0], &pts[1])?, segment(&pts[1], &pts[2])?, ray(&pts[1], &[0, -1])],
    )?;
    let trunc = TruncationOptions { cone_vertex: None, radius: Some(tropih::polyhedral::rat::rat(20)) };
    let space = Space::new(c.clone(), face_filtration(&c))?.with_truncation(trunc)?;
    let st = space.stratification();
    for values in [[0, 0, 0], [-1, 0, 1], [-2, -1, -1]] {
        let mut perv = Perversity::zero(st);
        let vertices: Vec<usize> = (0..c.len()).filter(|&i| c.dim(i) == 0).collect();
        for (&v, &x) in vertices.iter().zip(&values) {
            perv.values[st.of_cell[v]] = x;
        }
        let (a, b) = edge_classes(&space, &perv)?;
        let nongm = space.homology(&perv, space.p_range(), Variant::NonGm, Coeff::Q)?;
        let gm = space.homology(&perv, space.p_range(), Variant::Gm, Coeff::Q)?;
        println!("vertex perversities {values:?}: a = {a}, b = {b}");
        println!("  non-GM {} (formula agrees: {})", table(&nongm), nongm.same_groups(&onedim_nongm(&space, &perv, Coeff::Q)?));
        println!("  GM     {} (formula agrees: {})", table(&gm), gm.same_groups(&onedim_gm(&space, &perv, Coeff::Q)?));
    }
    Ok(())
}
