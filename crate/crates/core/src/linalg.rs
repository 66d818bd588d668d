//! Exact linear algebra over ℚ.
//!
//! [`RowReducer`] is the workhorse for the large, very sparse systems that
//! invariance conditions produce: rows are streamed in and kept in echelon
//! form, so memory is bounded by the rank. [`RatMatrix`] is a small dense
//! wrapper for Gram matrices and change-of-basis solves.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// A sparse row: `(column, value)` pairs, sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Rat)>;

fn axpy(row: &[(usize, Rat)], c: &Rat, pivot: &[(usize, Rat)]) -> SparseRow {
    // row − c·pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(c * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental Gaussian elimination on sparse rows.
#[derive(Debug, Clone)]
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots; returns the remainder.
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut start = 0;
        while start < row.len() {
            let (col, lead) = (row[start].0, row[start].1.clone());
            match self.pivots.get(&col) {
                Some(piv) => {
                    let rest = axpy(&row[start..], &lead, piv);
                    row.truncate(start);
                    row.extend(rest);
                }
                None => start += 1,
            }
        }
        row
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, v)| *c < self.cols && !v.is_zero()));
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(col, row);
        true
    }

    /// Adds a dense row, dropping zeros.
    pub fn push_dense(&mut self, row: &[Rat]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.push(sparse)
    }

    /// Whether `row` lies in the span of the rows pushed so far.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Reduced row echelon form, pivots in increasing column order.
    pub fn rref(&self) -> Vec<SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut r = vec![row[0].clone()];
            let mut tail: SparseRow = row[1..].to_vec();
            // eliminate entries in later pivot columns
            let mut start = 0;
            while start < tail.len() {
                let (c, v) = (tail[start].0, tail[start].1.clone());
                match done.get(&c) {
                    Some(piv) => {
                        let rest = axpy(&tail[start..], &v, piv);
                        tail.truncate(start);
                        tail.extend(rest);
                    }
                    None => start += 1,
                }
            }
            r.extend(tail);
            done.insert(col, r);
        }
        done.into_values().collect()
    }

    /// A basis of `{x : Ax = 0}`, one vector per free column, in column order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        let pivot_cols: Vec<usize> = rref.iter().map(|r| r[0].0).collect();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row, &pc) in rref.iter().zip(&pivot_cols) {
                if let Ok(ix) = row.binary_search_by_key(&f, |(c, _)| *c) {
                    v[pc] = -row[ix].1.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// A dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.cols);
        for i in 0..self.rows {
            r.push_dense(self.row(i));
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        self.reducer().nullspace()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Argument("matrix shapes do not chain".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Solves `A x = b`; errors when inconsistent, returns one solution
    /// (free variables set to zero) otherwise.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        if b.len() != self.rows {
            return Err(Error::Argument("right-hand side has the wrong length".into()));
        }
        let mut red = RowReducer::new(self.cols + 1);
        for i in 0..self.rows {
            let mut row = self.row(i).to_vec();
            row.push(b[i].clone());
            red.push_dense(&row);
        }
        let rref = red.rref();
        let mut x = vec![Rat::zero(); self.cols];
        for row in &rref {
            let pc = row[0].0;
            if pc == self.cols {
                return Err(Error::InconsistentBasis("linear system has no solution".into()));
            }
            if let Some((c, v)) = row.last() {
                if *c == self.cols {
                    x[pc] = v.clone();
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.rows != self.cols {
            return Err(Error::Argument("only square matrices are invertible".into()));
        }
        let n = self.rows;
        let mut red = RowReducer::new(2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            red.push_dense(&row);
        }
        let rref = red.rref();
        if rref.len() < n || rref.iter().any(|r| r[0].0 >= n) {
            return Err(Error::InconsistentBasis("matrix is singular".into()));
        }
        let mut out = Self::zeros(n, n);
        for (i, row) in rref.iter().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    out.set(i, c - n, v.clone());
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_nullspace_inverse() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(-1), int(1)]]);

        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.inverse().unwrap(), m(&[&[1, -1], &[-1, 2]]));
        assert!(a.inverse().is_err());
        assert_eq!(b.solve(&[int(3), int(2)]).unwrap(), vec![int(1), int(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(1), int(2)]).is_err());
        assert_eq!(m(&[&[4]]).inverse().unwrap().get(0, 0), &frac(1, 4));
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(entries in prop::collection::vec(-3i64..=3, 12)) {
            let rows: Vec<Vec<Rat>> = entries.chunks(4).map(|c| c.iter().map(|&v| int(v)).collect()).collect();
            let a = RatMatrix::from_rows(rows).unwrap();
            let ns = a.nullspace();
            prop_assert_eq!(ns.len() + a.rank(), 4);
            for v in ns {
                for i in 0..3 {
                    let s: Rat = a.row(i).iter().zip(&v).map(|(x, y)| x * y).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }

        #[test]
        fn inverse_is_two_sided(entries in prop::collection::vec(-4i64..=4, 9)) {
            let rows: Vec<Vec<Rat>> = entries.chunks(3).map(|c| c.iter().map(|&v| int(v)).collect()).collect();
            let a = RatMatrix::from_rows(rows).unwrap();
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
                    prop_assert_eq!(inv.mul(&a).unwrap(), RatMatrix::identity(3));
                }
                Err(_) => prop_assert!(a.rank() < 3),
            }
        }
    }
}
