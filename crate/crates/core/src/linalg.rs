//! Matrices over the rationals and exact linear solving.
//!
//! Gaussian elimination here is exact: a system is reported as having a
//! unique solution, a family of solutions, or no solution at all, with no
//! tolerance anywhere. The pivot rule is "first nonzero entry in column
//! order", which exact arithmetic permits and which makes every result
//! deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::rational::Rational;

/// A dense rows × cols matrix of [`Rational`] entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// Panics unless `entries.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "matrix entries must fill rows x cols"
        );
        RationalMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Exact determinant by pivoted elimination. Panics if not square.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m[(r, col)].is_zero()) {
                Some(p) => p,
                None => return Rational::zero(),
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det = det * &pv;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pv;
                for c in col..n {
                    let delta = &factor * &m[(col, c)];
                    m[(r, c)] = &m[(r, c)] - &delta;
                }
            }
        }
        det
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

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// The exact verdict of Gaussian elimination on a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOutcome {
    /// Full column rank and consistent: the one solution, in unknown order.
    Unique(Vec<Rational>),
    /// Rank-deficient but consistent. `particular` is the solution with
    /// every free variable set to zero.
    Family {
        free_variables: usize,
        particular: Vec<Rational>,
    },
    /// No solution exists.
    Inconsistent,
}

impl LinearOutcome {
    pub fn unique(&self) -> Option<&[Rational]> {
        match self {
            LinearOutcome::Unique(sol) => Some(sol),
            _ => None,
        }
    }
}

/// Solves `m · x = rhs` exactly. Panics unless `rhs.len() == m.rows()`.
pub fn solve_linear(m: &RationalMatrix, rhs: &[Rational]) -> LinearOutcome {
    assert_eq!(
        rhs.len(),
        m.rows(),
        "right-hand side length must match row count"
    );
    let rows = m.rows();
    let cols = m.cols();

    // Augmented working copy, reduced to RREF.
    let mut aug = RationalMatrix::zero(rows, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, cols)] = rhs[r].clone();
    }

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let pivot = match (rank..rows).find(|&r| !aug[(r, col)].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        aug.swap_rows(pivot, rank);
        let pv = aug[(rank, col)].clone();
        for c in col..=cols {
            aug[(rank, c)] = &aug[(rank, c)] / &pv;
        }
        for r in 0..rows {
            if r != rank && !aug[(r, col)].is_zero() {
                let factor = aug[(r, col)].clone();
                for c in col..=cols {
                    let delta = &factor * &aug[(rank, c)];
                    aug[(r, c)] = &aug[(r, c)] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    for r in rank..rows {
        if !aug[(r, cols)].is_zero() {
            return LinearOutcome::Inconsistent;
        }
    }

    let mut solution = vec![Rational::zero(); cols];
    for (row, &col) in pivot_cols.iter().enumerate() {
        solution[col] = aug[(row, cols)].clone();
    }
    if rank == cols {
        LinearOutcome::Unique(solution)
    } else {
        LinearOutcome::Family {
            free_variables: cols - rank,
            particular: solution,
        }
    }
}
