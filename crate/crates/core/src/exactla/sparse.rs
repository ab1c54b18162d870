//! Row-sparse integer matrices.
//!
//! Action matrices of the lattices built from permutation data have a
//! handful of nonzero entries per row, and stay that way under products, so
//! they are stored row by row as sorted `(column, value)` lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::matrix::IntMatrix;
use super::normal_form::invariant_factors;

type Row = Vec<(u32, Int)>;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseMatrix {
    cols: usize,
    rows: Vec<Row>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> SparseMatrix {
        SparseMatrix { cols: n, rows: (0..n).map(|i| vec![(i as u32, Int::one())]).collect() }
    }

    /// The matrix sending basis row `i` to basis row `images[i]`.
    pub fn permutation(images: &[usize]) -> SparseMatrix {
        SparseMatrix { cols: images.len(), rows: images.iter().map(|&j| vec![(j as u32, Int::one())]).collect() }
    }

    /// Rows given as `(column, value)` lists in any order; duplicate
    /// columns are summed and zeros dropped.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Int)>>) -> SparseMatrix {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: Row = Vec::with_capacity(r.len());
                for (j, v) in r {
                    assert!(j < cols, "column {j} out of range");
                    match out.last_mut() {
                        Some((k, acc)) if *k as usize == j => *acc += v,
                        _ => out.push((j as u32, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        SparseMatrix { cols, rows }
    }

    pub fn from_dense(a: &IntMatrix) -> SparseMatrix {
        SparseMatrix {
            cols: a.cols(),
            rows: a
                .row_iter()
                .map(|r| r.iter().enumerate().filter(|e| !e.1.is_zero()).map(|(j, v)| (j as u32, v.clone())).collect())
                .collect(),
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out[(i, *j as usize)] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Int)> {
        self.rows[i].iter().map(|(j, v)| (*j as usize, v))
    }

    pub fn row_nnz(&self, i: usize) -> usize {
        self.rows[i].len()
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        match self.rows[i].binary_search_by_key(&(j as u32), |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn push_row(&mut self, row: Vec<(usize, Int)>) {
        let m = SparseMatrix::from_rows(self.cols, vec![row]);
        self.rows.extend(m.rows);
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.cols
            && self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 as usize == i && r[0].1.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows.len(), "dimension mismatch in product");
        let mut acc = vec![Int::zero(); rhs.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; rhs.cols];
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for (k, a) in r {
                    for (j, b) in &rhs.rows[*k as usize] {
                        let ju = *j as usize;
                        if !mark[ju] {
                            mark[ju] = true;
                            touched.push(*j);
                        }
                        acc[ju].add_mul(a, b);
                    }
                }
                touched.sort_unstable();
                let mut out = Vec::with_capacity(touched.len());
                for &j in &touched {
                    let ju = j as usize;
                    mark[ju] = false;
                    let v = std::mem::take(&mut acc[ju]);
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                touched.clear();
                out
            })
            .collect();
        SparseMatrix { cols: rhs.cols, rows }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rows.len(), "dimension mismatch in vector product");
        let mut out = vec![Int::zero(); self.cols];
        for (a, r) in v.iter().zip(&self.rows) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in r {
                out[*j as usize].add_mul(a, b);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Row> = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j as usize].push((i as u32, v.clone()));
            }
        }
        SparseMatrix { cols: self.rows.len(), rows }
    }

    fn combine(&self, rhs: &SparseMatrix, sign: i64) -> SparseMatrix {
        assert_eq!((self.rows(), self.cols), (rhs.rows(), rhs.cols), "dimension mismatch");
        let s = Int::from(sign);
        let rows = self.rows.iter().zip(&rhs.rows).map(|(a, b)| axpy(a, &s, b)).collect();
        SparseMatrix { cols: self.cols, rows }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, 1)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.combine(rhs, -1)
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> SparseMatrix {
        self.sub(&SparseMatrix::identity(self.cols))
    }

    pub fn neg(&self) -> SparseMatrix {
        SparseMatrix { cols: self.cols, rows: self.rows.iter().map(|r| r.iter().map(|(j, v)| (*j, -v)).collect()).collect() }
    }

    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMatrix { cols: self.cols, rows }
    }

    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows(), other.rows(), "row mismatch in hstack");
        let off = self.cols as u32;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|(j, v)| (j + off, v.clone()))).collect())
            .collect();
        SparseMatrix { cols: self.cols + other.cols, rows }
    }

    pub fn block_diagonal(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        let off = a.cols as u32;
        let mut rows = a.rows.clone();
        rows.extend(b.rows.iter().map(|r| r.iter().map(|(j, v)| (j + off, v.clone())).collect()));
        SparseMatrix { cols: a.cols + b.cols, rows }
    }

    pub fn select_rows(&self, idx: &[usize]) -> SparseMatrix {
        SparseMatrix { cols: self.cols, rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> SparseMatrix {
        let mut map = vec![u32::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            map[j] = k as u32;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: Row =
                    r.iter().filter(|(j, _)| map[*j as usize] != u32::MAX).map(|(j, v)| (map[*j as usize], v.clone())).collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        SparseMatrix { cols: idx.len(), rows }
    }

    pub fn max_abs_entry(&self) -> Int {
        self.rows.iter().flatten().map(|(_, v)| v.abs()).max().unwrap_or_default()
    }

    /// Invariant factors of the row lattice (the nonzero diagonal of the
    /// Smith form), see [`sparse_invariant_factors`].
    pub fn invariant_factors(&self) -> Vec<Int> {
        sparse_invariant_factors(self)
    }
}

/// `a + s * b` on sorted sparse rows.
fn axpy(a: &[(u32, Int)], s: &Int, b: &[(u32, Int)]) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ja = a.get(i).map_or(u32::MAX, |e| e.0);
        let jb = b.get(k).map_or(u32::MAX, |e| e.0);
        if ja < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ja {
            out.push((jb, s * &b[k].1));
            k += 1;
        } else {
            let mut v = a[i].1.clone();
            v.add_mul(s, &b[k].1);
            if !v.is_zero() {
                out.push((ja, v));
            }
            i += 1;
            k += 1;
        }
    }
    out
}

/// Smith invariant factors of a sparse matrix.
///
/// Unit entries are used as pivots first, Markowitz style (shortest row,
/// then least-used column): pivoting on a unit removes one row and one
/// column and contributes an invariant factor 1, with the remaining
/// invariants those of the updated rest. Whatever is left once no unit
/// entry remains goes through the dense Smith form.
pub fn sparse_invariant_factors(a: &SparseMatrix) -> Vec<Int> {
    let ncols = a.cols;
    let mut rows: Vec<Option<Row>> = a.rows.iter().filter(|r| !r.is_empty()).cloned().map(Some).collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r.as_ref().expect("live") {
            col_rows[*j as usize].push(i as u32);
        }
    }
    let mut col_dead = vec![false; ncols];
    let mut units = 0usize;
    let mut has_unit: Vec<bool> = rows.iter().map(|r| r.as_ref().expect("live").iter().any(|e| e.1.is_unit())).collect();

    loop {
        // shortest live row holding a unit
        let mut best: Option<(usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if let Some(r) = r {
                if has_unit[i] && best.is_none_or(|(_, len)| r.len() < len) {
                    best = Some((i, r.len()));
                    if r.len() == 1 {
                        break;
                    }
                }
            }
        }
        let Some((pi, _)) = best else { break };
        let prow = rows[pi].take().expect("live");
        let (pj, pv) = prow
            .iter()
            .filter(|e| e.1.is_unit())
            .min_by_key(|e| col_rows[e.0 as usize].len())
            .map(|e| (e.0, e.1.clone()))
            .expect("unit present");
        units += 1;
        col_dead[pj as usize] = true;
        let users = std::mem::take(&mut col_rows[pj as usize]);
        for l in users {
            let l = l as usize;
            let Some(r) = rows[l].as_ref() else { continue };
            let Ok(pos) = r.binary_search_by_key(&pj, |e| e.0) else { continue };
            // pv is a unit, so -a/pv = -a*pv
            let coef = -(&r[pos].1 * &pv);
            let new = axpy(r, &coef, &prow);
            for (j, _) in &new {
                if r.binary_search_by_key(j, |e| e.0).is_err() {
                    col_rows[*j as usize].push(l as u32);
                }
            }
            has_unit[l] = new.iter().any(|e| e.1.is_unit());
            rows[l] = if new.is_empty() { None } else { Some(new) };
        }
    }

    let live_cols: Vec<usize> = (0..ncols).filter(|&j| !col_dead[j]).collect();
    let rest: Vec<Row> = rows.into_iter().flatten().collect();
    let mut out = vec![Int::one(); units];
    if !rest.is_empty() {
        let m = SparseMatrix { cols: ncols, rows: rest }.select_cols(&live_cols);
        let dense = m.to_dense();
        let dense = drop_zero_columns(&dense);
        out.extend(invariant_factors(&dense));
    }
    out
}

fn drop_zero_columns(a: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> = (0..a.cols()).filter(|&j| (0..a.rows()).any(|i| !a[(i, j)].is_zero())).collect();
    a.select_cols(&keep)
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows() <= 12 && self.cols <= 12 {
            write!(f, "{}", self.to_dense())
        } else {
            write!(f, "SparseMatrix({}x{}, nnz {})", self.rows(), self.cols, self.nnz())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn product_matches_dense() {
        let a = IntMatrix::from_rows(&[[1, 0, 2], [0, -1, 0], [3, 0, 0]]);
        let b = IntMatrix::from_rows(&[[0, 1, 0], [1, 1, 0], [0, 0, -2]]);
        let s = SparseMatrix::from_dense(&a).mul(&SparseMatrix::from_dense(&b));
        assert_eq!(s.to_dense(), a.mul(&b));
        assert_eq!(SparseMatrix::from_dense(&a).transpose().to_dense(), a.transpose());
        assert_eq!(SparseMatrix::from_dense(&a).vec_mul(&ints(&[1, 2, 3])), a.vec_mul(&ints(&[1, 2, 3])));
    }

    #[test]
    fn invariants_match_dense() {
        let cases = [
            IntMatrix::from_rows(&[[2, 4], [6, 8]]),
            IntMatrix::from_rows(&[[2, 0], [0, 3]]),
            IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]),
            IntMatrix::from_rows(&[[0, 0], [0, 0]]),
            IntMatrix::from_rows(&[[1, -1, 0], [0, 1, -1], [-1, 0, 1]]),
            IntMatrix::from_rows(&[[-2, 0, 0], [0, 4, 2], [1, 1, 1], [3, 0, 6]]),
        ];
        for a in &cases {
            let s = SparseMatrix::from_dense(a);
            assert_eq!(sparse_invariant_factors(&s), invariant_factors(a), "{a}");
        }
    }

    #[test]
    fn from_rows_merges() {
        let m = SparseMatrix::from_rows(3, vec![vec![(2, Int::from(1)), (0, Int::from(2)), (2, Int::from(-1))]]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), Int::from(2));
    }
}
