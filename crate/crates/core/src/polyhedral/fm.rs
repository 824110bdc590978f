//! Exact linear feasibility and optimization by Fourier–Motzkin elimination.
//! Systems here have a handful of variables, where this is both simple and
//! fast enough.

use super::rat::{primitive_scale, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub a: Vec<Rat>,
    pub b: Rat,
    pub eq: bool,
}

/// Conjunction of `a·x ≤ b` and `a·x = b` rows.
#[derive(Clone, Debug, Default)]
pub struct LinSys {
    pub nvars: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Opt {
    Infeasible,
    Unbounded,
    Max(Rat),
}

impl LinSys {
    pub fn new(nvars: usize) -> Self {
        LinSys { nvars, rows: Vec::new() }
    }

    pub fn le(&mut self, a: Vec<Rat>, b: Rat) {
        debug_assert_eq!(a.len(), self.nvars);
        self.rows.push(Row { a, b, eq: false });
    }

    pub fn eq(&mut self, a: Vec<Rat>, b: Rat) {
        debug_assert_eq!(a.len(), self.nvars);
        self.rows.push(Row { a, b, eq: true });
    }

    /// Same system with one extra trailing variable (coefficient 0 everywhere).
    pub fn extend_var(&self) -> LinSys {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut a = r.a.clone();
                a.push(Rat::zero());
                Row { a, b: r.b.clone(), eq: r.eq }
            })
            .collect();
        LinSys { nvars: self.nvars + 1, rows }
    }

    /// Removes variable `v` from all rows (its coefficients become 0).
    pub fn eliminate(&self, v: usize) -> LinSys {
        let mut out = LinSys::new(self.nvars);
        if let Some(k) = self.rows.iter().position(|r| r.eq && !r.a[v].is_zero()) {
            let e = &self.rows[k];
            for (i, r) in self.rows.iter().enumerate() {
                if i == k {
                    continue;
                }
                if r.a[v].is_zero() {
                    out.rows.push(r.clone());
                    continue;
                }
                let f = &r.a[v] / &e.a[v];
                let a = r.a.iter().zip(&e.a).map(|(x, y)| x - &f * y).collect();
                out.rows.push(Row { a, b: &r.b - &f * &e.b, eq: r.eq });
            }
        } else {
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for r in &self.rows {
                if r.a[v].is_zero() {
                    out.rows.push(r.clone());
                } else if r.a[v].is_positive() {
                    pos.push(r);
                } else {
                    neg.push(r);
                }
            }
            for p in &pos {
                for n in &neg {
                    let (fp, fn_) = (-&n.a[v], p.a[v].clone());
                    let a = p.a.iter().zip(&n.a).map(|(x, y)| &fp * x + &fn_ * y).collect();
                    out.rows.push(Row { a, b: &fp * &p.b + &fn_ * &n.b, eq: false });
                }
            }
        }
        out.simplify();
        out
    }

    /// Normalizes rows, drops trivially true and duplicate rows, and keeps the
    /// tightest right-hand side among parallel inequalities.
    pub fn simplify(&mut self) {
        let mut rows: Vec<Row> = Vec::with_capacity(self.rows.len());
        let mut contradiction = false;
        for r in self.rows.drain(..) {
            if r.a.iter().all(|x| x.is_zero()) {
                let ok = if r.eq { r.b.is_zero() } else { !r.b.is_negative() };
                if !ok {
                    contradiction = true;
                }
                continue;
            }
            let (ints, f) = primitive_scale(&r.a);
            let mut a: Vec<Rat> = ints.iter().map(super::rat::int_to_rat).collect();
            let mut b = &r.b * &f;
            if r.eq {
                // canonical sign: first nonzero positive
                if a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    a.iter_mut().for_each(|x| *x = -&*x);
                    b = -b;
                }
            }
            rows.push(Row { a, b, eq: r.eq });
        }
        rows.sort_by(|x, y| (x.eq, &x.a).cmp(&(y.eq, &y.a)).then(x.b.cmp(&y.b)));
        let mut kept: Vec<Row> = Vec::with_capacity(rows.len());
        for r in rows {
            if let Some(last) = kept.last() {
                if last.eq == r.eq && last.a == r.a {
                    if r.eq && last.b != r.b {
                        contradiction = true;
                    }
                    continue; // sorted by b, so the first is the tightest
                }
            }
            kept.push(r);
        }
        if contradiction {
            let a = vec![Rat::zero(); self.nvars];
            kept = vec![Row { a, b: -Rat::one(), eq: false }];
        }
        self.rows = kept;
    }

    fn trivially_infeasible(&self) -> bool {
        self.rows.iter().any(|r| r.a.iter().all(|x| x.is_zero()) && r.b.is_negative())
    }

    pub fn is_feasible(&self) -> bool {
        let mut s = self.clone();
        s.simplify();
        for v in 0..self.nvars {
            if s.trivially_infeasible() {
                return false;
            }
            s = s.eliminate(v);
        }
        !s.trivially_infeasible()
    }

    /// `max c·x` over the system.
    pub fn maximize(&self, c: &[Rat]) -> Opt {
        let n = self.nvars;
        let mut s = self.extend_var();
        let mut a: Vec<Rat> = c.iter().map(|x| -x).collect();
        a.push(Rat::one());
        s.eq(a, Rat::zero());
        s.simplify();
        for v in 0..n {
            s = s.eliminate(v);
        }
        if s.trivially_infeasible() {
            return Opt::Infeasible;
        }
        let (lo, hi, fixed) = bounds(&s, n);
        if let Some(f) = fixed {
            let ok = lo.as_ref().is_none_or(|l| *l <= f) && hi.as_ref().is_none_or(|h| f <= *h);
            return if ok { Opt::Max(f) } else { Opt::Infeasible };
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l > h => Opt::Infeasible,
            (_, Some(h)) => Opt::Max(h),
            (_, None) => Opt::Unbounded,
        }
    }

    /// A point of the system, chosen deterministically by back-substitution
    /// (interval midpoints where both bounds exist).
    pub fn find_point(&self) -> Option<Vec<Rat>> {
        let mut stack = Vec::with_capacity(self.nvars + 1);
        let mut s = self.clone();
        s.simplify();
        stack.push(s.clone());
        for v in 0..self.nvars {
            s = s.eliminate(v);
            stack.push(s.clone());
        }
        if s.trivially_infeasible() {
            return None;
        }
        let mut x = vec![Rat::zero(); self.nvars];
        for v in (0..self.nvars).rev() {
            // stack[v] still contains variable v; later ones are fixed
            let sys = &stack[v];
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            let mut fixed: Option<Rat> = None;
            for r in &sys.rows {
                let c = &r.a[v];
                let mut rest = r.b.clone();
                for w in v + 1..self.nvars {
                    if !r.a[w].is_zero() {
                        rest -= &r.a[w] * &x[w];
                    }
                }
                if c.is_zero() {
                    let ok = if r.eq { rest.is_zero() } else { !rest.is_negative() };
                    if !ok {
                        return None;
                    }
                    continue;
                }
                let val = &rest / c;
                if r.eq {
                    fixed = Some(val);
                } else if c.is_positive() {
                    hi = Some(match hi {
                        Some(h) if h < val => h,
                        _ => val,
                    });
                } else {
                    lo = Some(match lo {
                        Some(l) if l > val => l,
                        _ => val,
                    });
                }
            }
            x[v] = match (fixed, lo, hi) {
                (Some(f), _, _) => f,
                (None, Some(l), Some(h)) => {
                    if l > h {
                        return None;
                    }
                    (l + h) / Rat::from_integer(2.into())
                }
                (None, Some(l), None) => l + Rat::one(),
                (None, None, Some(h)) => h - Rat::one(),
                (None, None, None) => Rat::zero(),
            };
        }
        Some(x)
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|r| {
            let v = super::rat::dot(&r.a, x);
            if r.eq {
                v == r.b
            } else {
                v <= r.b
            }
        })
    }
}

fn bounds(s: &LinSys, v: usize) -> (Option<Rat>, Option<Rat>, Option<Rat>) {
    let (mut lo, mut hi, mut fixed): (Option<Rat>, Option<Rat>, Option<Rat>) = (None, None, None);
    for r in &s.rows {
        let c = &r.a[v];
        if c.is_zero() {
            continue;
        }
        let val = &r.b / c;
        if r.eq {
            fixed = Some(val);
        } else if c.is_positive() {
            hi = Some(match hi {
                Some(h) if h < val => h,
                _ => val,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l > val => l,
                _ => val,
            });
        }
    }
    (lo, hi, fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::rat::rat;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn triangle_max_and_point() {
        let mut s = LinSys::new(2);
        s.le(r(&[-1, 0]), rat(0));
        s.le(r(&[0, -1]), rat(0));
        s.le(r(&[1, 1]), rat(1));
        assert_eq!(s.maximize(&r(&[1, 2])), Opt::Max(rat(2)));
        assert_eq!(s.maximize(&r(&[-1, -1])), Opt::Max(rat(0)));
        let p = s.find_point().unwrap();
        assert!(s.satisfied_by(&p));
        s.le(r(&[-1, -1]), rat(-2));
        assert!(!s.is_feasible());
        assert_eq!(s.maximize(&r(&[1, 0])), Opt::Infeasible);
    }

    #[test]
    fn unbounded_and_equalities() {
        let mut s = LinSys::new(2);
        s.eq(r(&[1, -1]), rat(0));
        s.le(r(&[-1, 0]), rat(0));
        assert_eq!(s.maximize(&r(&[1, 0])), Opt::Unbounded);
        assert_eq!(s.maximize(&r(&[-1, 1])), Opt::Max(rat(0)));
        let p = s.find_point().unwrap();
        assert!(s.satisfied_by(&p));
    }
}
