//! Hermite and Smith normal forms over the integers.
//!
//! Both reductions use the same pivot rule: the nonzero entry of smallest
//! absolute value in the active region becomes the pivot (the search stops
//! early at a unit), and the remaining entries of its column (and, for Smith
//! form, its row) are reduced by nearest-integer quotients. Repeating this
//! is the Euclidean algorithm run on a whole column at once, which keeps the
//! intermediate coefficients small.

use super::int::Int;
use super::matrix::IntMatrix;

/// Row Hermite normal form `H = U * A`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    /// Unimodular transform, present when requested.
    pub u: Option<IntMatrix>,
    /// Pivot column of each nonzero row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form with the unimodular transform:
/// `U * A = H`, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let f = hermite(a, true);
    (f.h, f.u.expect("transform tracked"))
}

pub fn hermite(a: &IntMatrix, track: bool) -> HermiteForm {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = track.then(|| IntMatrix::identity(m));
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let mut found = false;
        while let Some(p) = min_abs_in_column(&h, c, r) {
            found = true;
            if p != r {
                h.swap_rows(p, r);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(p, r);
                }
            }
            let pivot = h[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_round(&pivot);
                let negq = -&q;
                h.add_row_multiple(i, r, &negq);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &negq);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            if h[(i, c)].is_zero() {
                continue;
            }
            let q = h[(i, c)].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            let negq = -&q;
            h.add_row_multiple(i, r, &negq);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &negq);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

fn min_abs_in_column(h: &IntMatrix, c: usize, from: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in from..h.rows() {
        let v = &h[(i, c)];
        if v.is_zero() {
            continue;
        }
        if v.is_unit() {
            return Some(i);
        }
        match best {
            Some(b) if h[(b, c)].cmp_abs(v).is_le() => {}
            _ => best = Some(i),
        }
    }
    best
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
    v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Inverse of `v`, maintained alongside it during the reduction.
    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }
}

pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let r = smith(a, true);
    SmithDecomposition {
        u: r.u.expect("tracked"),
        d: r.d,
        v: r.v.expect("tracked"),
        rank: r.rank,
        v_inv: r.v_inv.expect("tracked"),
    }
}

/// Invariant factors only; skips all transform bookkeeping.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    let r = smith(a, false);
    (0..r.rank).map(|i| r.d[(i, i)].clone()).collect()
}

struct SmithRun {
    d: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
    rank: usize,
}

struct Tracker {
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
        if let Some(w) = self.v_inv.as_mut() {
            w.swap_rows(a, b);
        }
    }
    /// row[t] += c * row[s]
    fn add_row(&mut self, t: usize, s: usize, c: &Int) {
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(t, s, c);
        }
    }
    /// col[t] += c * col[s]
    fn add_col(&mut self, t: usize, s: usize, c: &Int) {
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(t, s, c);
        }
        if let Some(w) = self.v_inv.as_mut() {
            w.add_row_multiple(s, t, &-c);
        }
    }
    fn negate_row(&mut self, i: usize) {
        if let Some(u) = self.u.as_mut() {
            u.negate_row(i);
        }
    }
}

fn smith(a: &IntMatrix, track: bool) -> SmithRun {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut tr = Tracker {
        u: track.then(|| IntMatrix::identity(m)),
        v: track.then(|| IntMatrix::identity(n)),
        v_inv: track.then(|| IntMatrix::identity(n)),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_in_block(&d, t) else { break };
        if pi != t {
            d.swap_rows(pi, t);
            tr.swap_rows(pi, t);
        }
        if pj != t {
            d.swap_cols(pj, t);
            tr.swap_cols(pj, t);
        }
        loop {
            // Clear column t and row t by Euclidean steps.
            loop {
                let pivot = d[(t, t)].clone();
                let mut dirty = false;
                for i in t + 1..m {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -d[(i, t)].div_round(&pivot);
                    d.add_row_multiple(i, t, &q);
                    tr.add_row(i, t, &q);
                    dirty |= !d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -d[(t, j)].div_round(&pivot);
                    d.add_col_multiple(j, t, &q);
                    tr.add_col(j, t, &q);
                    dirty |= !d[(t, j)].is_zero();
                }
                if !dirty {
                    break;
                }
                // A remainder smaller than the pivot is left somewhere in
                // row t or column t; move the smallest one into position.
                let mut best: Option<(usize, usize)> = None;
                let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
                    let v = &d[(i, j)];
                    if v.is_zero() {
                        return;
                    }
                    match best {
                        Some((bi, bj)) if d[(*bi, *bj)].cmp_abs(v).is_le() => {}
                        _ => *best = Some((i, j)),
                    }
                };
                for i in t + 1..m {
                    consider(i, t, &mut best);
                }
                for j in t + 1..n {
                    consider(t, j, &mut best);
                }
                let (bi, bj) = best.expect("dirty implies a nonzero remainder");
                if bi != t {
                    d.swap_rows(bi, t);
                    tr.swap_rows(bi, t);
                }
                if bj != t {
                    d.swap_cols(bj, t);
                    tr.swap_cols(bj, t);
                }
            }
            // Divisibility: a unit pivot divides everything.
            let pivot = d[(t, t)].clone();
            if pivot.is_unit() {
                break;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !pivot.divides(&d[(i, j)])));
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &Int::one());
                    tr.add_row(t, i, &Int::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            tr.negate_row(t);
        }
        t += 1;
    }
    SmithRun { d, u: tr.u, v: tr.v, v_inv: tr.v_inv, rank: t }
}

fn min_abs_in_block(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            if v.is_unit() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].cmp_abs(v).is_le() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn hnf_identity() {
        let i = IntMatrix::identity(3);
        let (h, u) = hnf(&i);
        assert_eq!(h, i);
        assert_eq!(u, i);
    }

    #[test]
    fn hnf_zero() {
        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hnf(&z);
        assert!(h.is_zero());
        assert!(u.is_unimodular());
    }

    #[test]
    fn hnf_hand_example() {
        let a = IntMatrix::from_rows(&[[2, 4], [1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, IntMatrix::from_rows(&[[1, 1], [0, 2]]));
        assert_eq!(u.mul(&a), h);
        assert!(u.det().is_unit());
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::diagonal(&ints(&[2, 3]));
        let s = snf(&a);
        assert_eq!(s.invariant_factors(), ints(&[1, 6]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn snf_zero_matrix() {
        let s = snf(&IntMatrix::zeros(3, 2));
        assert_eq!(s.rank, 0);
        assert!(s.d.is_zero());
    }

    #[test]
    fn snf_2468() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = snf(&a);
        assert_eq!(s.invariant_factors(), ints(&[2, 4]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert!(s.v.mul(s.v_inv()).is_identity());
        assert_eq!(invariant_factors(&a), ints(&[2, 4]));
    }
}
