//! Exact linear algebra over the rationals: reduced row echelon form, rank,
//! kernel bases and linear-system solving. No tolerances anywhere.

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "matrix wants {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form together with the ordered pivot columns.
    /// The number of pivots is the rank.
    pub fn row_echelon(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).recip().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                *m.get_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                        *m.get_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// A basis of the right kernel {v : Mv = 0}, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.row_echelon();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Some x with Mx = b, or None when the system is inconsistent.
    /// Free variables are set to 0 for determinism.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::InvalidParameter(format!(
                "rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = RationalMatrix::zero(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                *aug.get_mut(r, c) = self.get(r, c).clone();
            }
            *aug.get_mut(r, self.cols) = rhs.clone();
        }
        let (rref, pivots) = aug.row_echelon();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
