//! Stratified triangulations: the order complex of a truncated fan and its
//! barycentric subdivisions, with carrier cells.

use std::collections::BTreeSet;
use tropih::polyhedral::builders::u31;
use tropih::triangulate::{barycentric_subdivide, delete_closed, stratified_triangulation, TruncationOptions};

fn main() -> tropih::Result<()> {
    let c = u31();
    let opts = TruncationOptions { cone_vertex: Some(0), radius: None };
    let t = stratified_triangulation(&c, &opts)?;
    println!("level {}: simplices per dimension {:?}", t.subdivision_level, t.counts());
    for (i, s) in t.simplices(1).iter().enumerate() {
        println!("  edge {s:?} carried by cell {}", t.carrier(1, i));
    }
    let t2 = barycentric_subdivide(&t);
    println!("level {}: {:?}", t2.subdivision_level, t2.counts());
    let open = delete_closed(&c, &t2, &BTreeSet::from([0]))?;
    println!("without the vertex: {:?}", open.counts());
    Ok(())
}
