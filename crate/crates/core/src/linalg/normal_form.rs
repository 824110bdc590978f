use super::matrix::IntMatrix;
use crate::int::Int;

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and `H = U * m`.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows
/// come last.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    hnf_in_place(&mut h, Some(&mut u));
    (h, u)
}

/// HNF without the transform.
pub fn hnf_only(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    hnf_in_place(&mut h, None);
    h
}

fn hnf_in_place(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) {
    let (rows, cols) = (h.rows(), h.cols());
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        // bring the smallest nonzero entry up
        let Some(best) = (pr..rows)
            .filter(|&i| !h.get(i, c).is_zero())
            .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()))
        else {
            continue;
        };
        h.swap_rows(pr, best);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(pr, best);
        }
        for i in pr + 1..rows {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(pr, c).clone();
            let b = h.get(i, c).clone();
            if a.divides(&b) {
                let q = b.div_exact(&a);
                h.row_sub_mul(i, &q, pr);
                if let Some(u) = u.as_deref_mut() {
                    u.row_sub_mul(i, &q, pr);
                }
            } else {
                let (g, s, t) = a.ext_gcd(&b);
                let (ua, ub) = (-&b.div_exact(&g), a.div_exact(&g));
                h.row_combine(pr, i, &s, &t, &ua, &ub);
                if let Some(u) = u.as_deref_mut() {
                    u.row_combine(pr, i, &s, &t, &ua, &ub);
                }
            }
        }
        if h.get(pr, c).is_negative() {
            h.negate_row(pr);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(pr);
            }
        }
        let p = h.get(pr, c).clone();
        for k in 0..pr {
            let q = h.get(k, c).div_floor(&p);
            if !q.is_zero() {
                h.row_sub_mul(k, &q, pr);
                if let Some(u) = u.as_deref_mut() {
                    u.row_sub_mul(k, &q, pr);
                }
            }
        }
        pr += 1;
    }
}

/// Smith normal form: returns `(D, U, V)` with `D = U * m * V`, `U`, `V`
/// unimodular, `D` diagonal with non-negative entries `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    snf_in_place(&mut d, Some((&mut u, &mut v)));
    (d, u, v)
}

/// Nonzero invariant factors of `m`, ascending.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let mut d = m.clone();
    snf_in_place(&mut d, None);
    (0..d.rows().min(d.cols()))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

fn snf_in_place(d: &mut IntMatrix, mut tr: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let (rows, cols) = (d.rows(), d.cols());
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { return };
        d.swap_rows(t, bi);
        d.swap_cols(t, bj);
        if let Some((u, v)) = tr.as_mut() {
            u.swap_rows(t, bi);
            v.swap_cols(t, bj);
        }
        loop {
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let a = d.get(t, t).clone();
                let b = d.get(i, t).clone();
                if a.divides(&b) {
                    let q = b.div_exact(&a);
                    d.row_sub_mul(i, &q, t);
                    if let Some((u, _)) = tr.as_mut() {
                        u.row_sub_mul(i, &q, t);
                    }
                } else {
                    let (g, s, tt) = a.ext_gcd(&b);
                    let (ua, ub) = (-&b.div_exact(&g), a.div_exact(&g));
                    d.row_combine(t, i, &s, &tt, &ua, &ub);
                    if let Some((u, _)) = tr.as_mut() {
                        u.row_combine(t, i, &s, &tt, &ua, &ub);
                    }
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let a = d.get(t, t).clone();
                let b = d.get(t, j).clone();
                if a.divides(&b) {
                    let q = b.div_exact(&a);
                    d.col_sub_mul(j, &q, t);
                    if let Some((_, v)) = tr.as_mut() {
                        v.col_sub_mul(j, &q, t);
                    }
                } else {
                    let (g, s, tt) = a.ext_gcd(&b);
                    let (ua, ub) = (-&b.div_exact(&g), a.div_exact(&g));
                    d.col_combine(t, j, &s, &tt, &ua, &ub);
                    if let Some((_, v)) = tr.as_mut() {
                        v.col_combine(t, j, &s, &tt, &ua, &ub);
                    }
                }
            }
            if (t + 1..rows).any(|i| !d.get(i, t).is_zero()) {
                continue;
            }
            // enforce divisibility of the remaining block
            let p = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(d.get(i, j))));
            match bad {
                Some(i) => {
                    let m1 = Int::from(-1);
                    d.row_sub_mul(t, &m1, i);
                    if let Some((u, _)) = tr.as_mut() {
                        u.row_sub_mul(t, &m1, i);
                    }
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            if let Some((u, _)) = tr.as_mut() {
                u.negate_row(t);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_small() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_trivial() {
        let i = IntMatrix::identity(3);
        assert_eq!(hnf(&i).0, i);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(hnf(&z).0, z);
    }

    #[test]
    fn snf_small() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (d, u, v) = snf(&m);
        assert_eq!(d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(invariant_factors(&IntMatrix::from_i64(&[&[0]])), Vec::<Int>::new());
        assert_eq!(snf(&IntMatrix::identity(2)).0, IntMatrix::identity(2));
    }
}
