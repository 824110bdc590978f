//! Hermite and Smith normal forms, kernels and saturation.

use tropih::linalg::{hnf, kernel_lattice, saturate, snf, IntMatrix};
use tropih::Int;

fn show(name: &str, m: &IntMatrix) {
    println!("{name}:");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{:>4}", x.to_string())).collect();
        println!("  [{}]", row.join(""));
    }
}

fn main() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    show("M", &m);
    let (h, u) = hnf(&m);
    show("H = U M", &h);
    show("U", &u);
    let (d, _, _) = snf(&m);
    show("D (Smith form)", &d);

    let k = kernel_lattice(&IntMatrix::from_i64(&[&[2, 4, 6]]));
    println!("kernel of [2 4 6]: {:?}", k.basis);
    let gens: Vec<Vec<Int>> = vec![vec![Int::from(2), Int::from(0)], vec![Int::from(0), Int::from(4)]];
    let s = saturate(2, &gens);
    println!("saturation of <(2,0), (0,4)>: {:?}, saturated: {}", s.basis, s.is_saturated());
}
