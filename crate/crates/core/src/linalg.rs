//! Dense Gaussian elimination over a finite field.

use crate::gf::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<Elem>),
    /// Solutions exist but are not unique (rank below the column count).
    Underdetermined,
    Inconsistent,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| field.dot(self.row(i).iter().copied().zip(v.iter().copied()))).collect()
    }

    /// `v^T * self`.
    pub fn vec_mul(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols).map(|j| field.dot((0..self.rows).map(|i| (v[i], self.get(i, j))))).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self, field: &Field) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[fc] = Elem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(m.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`.
    pub fn solve(&self, field: &Field, b: &[Elem]) -> SolveOutcome {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return SolveOutcome::Inconsistent;
        }
        if pivots.len() < self.cols {
            return SolveOutcome::Underdetermined;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, self.cols);
        }
        SolveOutcome::Unique(x)
    }
}
