use super::matrix::IntMatrix;
use super::normal_form::invariant_factors;
use crate::int::Int;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Column-compressed sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    nrows: usize,
    cols: Vec<Vec<(u32, Int)>>,
}

impl SparseIntMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    /// Builds from a list of columns given as `(row, value)` pairs; duplicate
    /// rows are summed, zeros dropped.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<(u32, Int)>>) -> Self {
        let cols = cols.into_iter().map(normalize).collect();
        SparseIntMatrix { nrows, cols }
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (i as u32, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix { nrows: m.rows(), cols }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.nrows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                m.set(*i as usize, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, Int)] {
        &self.cols[j]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut out = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                out[*i as usize].push((j as u32, x.clone()));
            }
        }
        SparseIntMatrix { nrows: self.cols.len(), cols: out }
    }

    /// `self * v` for a sparse vector `v`.
    pub fn mul_sparse_vec(&self, v: &[(u32, Int)]) -> Vec<(u32, Int)> {
        let mut acc = Vec::new();
        for (j, a) in v {
            for (i, b) in &self.cols[*j as usize] {
                acc.push((*i, a * b));
            }
        }
        normalize(acc)
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols(), other.nrows, "shape mismatch in sparse product");
        let cols = other.cols.iter().map(|c| self.mul_sparse_vec(c)).collect();
        SparseIntMatrix { nrows: self.nrows, cols }
    }

    /// Nonzero invariant factors, ascending. Unit pivots are eliminated
    /// sparsely; whatever is left goes through dense Smith form.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let mut e = Eliminator::new(self);
        e.run();
        let mut out = vec![Int::ONE; e.units];
        out.extend(invariant_factors(&e.remainder()));
        out
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        self.elementary_divisors().len()
    }
}

fn normalize(mut v: Vec<(u32, Int)>) -> Vec<(u32, Int)> {
    v.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Int)> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

struct Eliminator {
    rows: Vec<Vec<(u32, Int)>>,
    row_active: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<usize>,
    col_active: Vec<bool>,
    units: usize,
}

impl Eliminator {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut rows = vec![Vec::new(); m.nrows];
        let mut col_rows = vec![Vec::new(); m.ncols()];
        let mut col_count = vec![0; m.ncols()];
        for (j, col) in m.cols.iter().enumerate() {
            for (i, x) in col {
                rows[*i as usize].push((j as u32, x.clone()));
                col_rows[j].push(*i);
            }
            col_count[j] = col.len();
        }
        Eliminator {
            row_active: vec![true; rows.len()],
            col_active: vec![true; col_rows.len()],
            rows,
            col_rows,
            col_count,
            units: 0,
        }
    }

    fn entry(&self, r: usize, c: u32) -> Option<&Int> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    /// Live rows of column `c`, deduplicated; also compacts the index.
    fn live_rows(&mut self, c: usize) -> Vec<u32> {
        let mut rs = std::mem::take(&mut self.col_rows[c]);
        rs.sort_unstable();
        rs.dedup();
        rs.retain(|&r| self.row_active[r as usize] && self.entry(r as usize, c as u32).is_some());
        self.col_rows[c] = rs.clone();
        rs
    }

    fn run(&mut self) {
        loop {
            let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.col_count.len())
                .filter(|&c| self.col_active[c] && self.col_count[c] > 0)
                .map(|c| Reverse((self.col_count[c], c)))
                .collect();
            let mut progressed = false;
            while let Some(Reverse((cnt, c))) = heap.pop() {
                if !self.col_active[c] || self.col_count[c] != cnt {
                    continue;
                }
                if cnt == 0 {
                    continue;
                }
                let rs = self.live_rows(c);
                let pivot = rs
                    .iter()
                    .filter(|&&r| self.entry(r as usize, c as u32).is_some_and(|x| x.is_unit()))
                    .min_by_key(|&&r| (self.rows[r as usize].len(), r))
                    .copied();
                let Some(pr) = pivot else { continue };
                let touched = self.pivot(pr as usize, c, &rs);
                progressed = true;
                for t in touched {
                    if self.col_active[t] && self.col_count[t] > 0 {
                        heap.push(Reverse((self.col_count[t], t)));
                    }
                }
            }
            if !progressed {
                break;
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize, rs: &[u32]) -> Vec<usize> {
        let prow = std::mem::take(&mut self.rows[pr]);
        self.row_active[pr] = false;
        let u = prow[prow.binary_search_by_key(&(pc as u32), |e| e.0).unwrap()].1.clone();
        let mut touched: Vec<usize> = prow.iter().map(|e| e.0 as usize).collect();
        for &(c, _) in &prow {
            self.col_count[c as usize] -= 1;
        }
        for &r in rs {
            let r = r as usize;
            if r == pr {
                continue;
            }
            let a = self.entry(r, pc as u32).expect("live row").clone();
            let f = &a * &u;
            let old = std::mem::take(&mut self.rows[r]);
            let mut merged = Vec::with_capacity(old.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < prow.len() {
                let take_old = j == prow.len() || (i < old.len() && old[i].0 < prow[j].0);
                let take_new = i == old.len() || (j < prow.len() && prow[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i].clone());
                    i += 1;
                } else if take_new {
                    let c = prow[j].0;
                    merged.push((c, -&(&f * &prow[j].1)));
                    self.col_rows[c as usize].push(r as u32);
                    self.col_count[c as usize] += 1;
                    j += 1;
                } else {
                    let c = old[i].0;
                    let v = old[i].1.sub_mul(&f, &prow[j].1);
                    if v.is_zero() {
                        self.col_count[c as usize] -= 1;
                    } else {
                        merged.push((c, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.rows[r] = merged;
        }
        self.col_active[pc] = false;
        self.units += 1;
        touched.retain(|&c| c != pc);
        touched
    }

    fn remainder(&self) -> IntMatrix {
        let live_rows: Vec<usize> =
            (0..self.rows.len()).filter(|&r| self.row_active[r] && !self.rows[r].is_empty()).collect();
        let mut col_map = vec![usize::MAX; self.col_active.len()];
        let mut ncols = 0;
        for &r in &live_rows {
            for (c, _) in &self.rows[r] {
                let c = *c as usize;
                if col_map[c] == usize::MAX {
                    col_map[c] = ncols;
                    ncols += 1;
                }
            }
        }
        let mut m = IntMatrix::zeros(live_rows.len(), ncols);
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, x) in &self.rows[r] {
                m.set(i, col_map[*c as usize], x.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_match_dense() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = SparseIntMatrix::from_dense(&m);
        assert_eq!(s.elementary_divisors(), invariant_factors(&m));
        assert_eq!(s.elementary_divisors(), vec![Int::from(2), Int::from(6), Int::from(12)]);
    }

    #[test]
    fn unit_elimination_with_fill() {
        let m = IntMatrix::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let s = SparseIntMatrix::from_dense(&m);
        assert_eq!(s.elementary_divisors(), vec![Int::ONE, Int::ONE, Int::from(2)]);
    }
}
