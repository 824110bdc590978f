//! Normal forms and lattices checked against brute force on small matrices
//! with entries in [-5, 5].

mod common;

use common::{brute_invariants, brute_rank as rank, det, mat_mul as mul, minor_gcd};
use proptest::prelude::*;
use tropih::linalg::{hnf, invariant_factors, kernel_lattice, saturate, snf, IntMatrix};
use tropih::Int;

fn to_i(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap() as i128).collect()).collect()
}

fn from_i(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    let r: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
    IntMatrix::from_rows(cols, &r)
}

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| (prop::collection::vec(prop::collection::vec(-5i64..=5, c), r), Just(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_determinantal_divisors((rows, c) in matrix(4, 4)) {
        let m = from_i(&rows, c);
        let mi = to_i(&m);
        let got: Vec<i128> = invariant_factors(&m).iter().map(|x| x.to_i64().unwrap() as i128).collect();
        prop_assert_eq!(got, brute_invariants(&mi));

        let (d, u, v) = snf(&m);
        prop_assert_eq!(det(&to_i(&u)).abs(), 1);
        prop_assert_eq!(det(&to_i(&v)).abs(), 1);
        prop_assert_eq!(to_i(&d), mul(&mul(&to_i(&u), &mi), &to_i(&v)));
        let di = to_i(&d);
        for i in 0..di.len() {
            for j in 0..di[i].len() {
                if i != j {
                    prop_assert_eq!(di[i][j], 0);
                }
            }
        }
    }

    #[test]
    fn hnf_recomposes((rows, c) in matrix(4, 4)) {
        let m = from_i(&rows, c);
        let (h, u) = hnf(&m);
        let (hi, ui) = (to_i(&h), to_i(&u));
        prop_assert_eq!(det(&ui).abs(), 1);
        prop_assert_eq!(&hi, &mul(&ui, &to_i(&m)));
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for (i, row) in hi.iter().enumerate() {
            match row.iter().position(|&x| x != 0) {
                None => seen_zero = true,
                Some(p) => {
                    prop_assert!(!seen_zero, "zero rows come last");
                    prop_assert!(last_pivot.map_or(true, |l| p > l));
                    prop_assert!(row[p] > 0);
                    for above in &hi[..i] {
                        prop_assert!(above[p] >= 0 && above[p] < row[p]);
                    }
                    last_pivot = Some(p);
                }
            }
        }
    }

    #[test]
    fn kernel_is_saturated_and_complete((rows, c) in matrix(3, 4)) {
        let m = from_i(&rows, c);
        let mi = to_i(&m);
        let k = kernel_lattice(&m);
        let ki: Vec<Vec<i128>> = k.basis.iter().map(|v| v.iter().map(|x| x.to_i64().unwrap() as i128).collect()).collect();
        for v in &ki {
            for row in &mi {
                prop_assert_eq!(row.iter().zip(v).map(|(a, b)| a * b).sum::<i128>(), 0);
            }
        }
        prop_assert_eq!(ki.len(), c - rank(&mi));
        if !ki.is_empty() {
            prop_assert_eq!(minor_gcd(&ki, ki.len()), 1);
        }
        // every small kernel vector lies in the rational span of the basis
        let box_pts = (0..c).fold(vec![vec![]], |acc: Vec<Vec<i128>>, _| {
            acc.into_iter().flat_map(|p| (-2..=2).map(move |x| { let mut q = p.clone(); q.push(x); q })).collect()
        });
        for x in box_pts {
            if mi.iter().all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i128>() == 0) {
                let mut with = ki.clone();
                with.push(x);
                prop_assert_eq!(rank(&with), ki.len());
            }
        }
    }

    #[test]
    fn saturation_is_rational_span_of_gens((rows, c) in matrix(3, 4)) {
        let gens: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        let s = saturate(c, &gens);
        let gi: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let si: Vec<Vec<i128>> = s.basis.iter().map(|v| v.iter().map(|x| x.to_i64().unwrap() as i128).collect()).collect();
        let r = rank(&gi);
        prop_assert_eq!(si.len(), r);
        let mut both = gi.clone();
        both.extend(si.iter().cloned());
        prop_assert_eq!(rank(&both), r);
        if !si.is_empty() {
            prop_assert_eq!(minor_gcd(&si, si.len()), 1);
        }
    }
}
