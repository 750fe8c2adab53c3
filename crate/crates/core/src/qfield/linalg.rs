//! Exact Gaussian elimination over Q(√D).

use super::QElem;

/// Dense row-major matrix with a fixed column count.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matrix {
    ncols: usize,
    rows: Vec<Vec<QElem>>,
}

impl Matrix {
    pub fn new(ncols: usize) -> Matrix {
        Matrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<QElem>>) -> Matrix {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix { ncols, rows }
    }

    pub fn push_row(&mut self, row: Vec<QElem>) {
        assert_eq!(row.len(), self.ncols, "row length does not match column count");
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<QElem>] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[QElem]) -> Vec<QElem> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(QElem::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Solution set `particular + span(nullspace_basis)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    /// Absent when the system is inconsistent.
    pub particular: Option<Vec<QElem>>,
    pub nullspace_basis: Vec<Vec<QElem>>,
    pub rank: usize,
}

/// Solves `matrix · x = rhs` exactly by reduction to row echelon form.
///
/// Free variables are set to zero in the particular solution; each
/// nullspace vector has a single 1 among the free coordinates.
pub fn linsolve(matrix: &Matrix, rhs: &[QElem]) -> AffineSolution {
    assert_eq!(rhs.len(), matrix.nrows(), "rhs length does not match row count");
    let n = matrix.ncols;
    let mut rows: Vec<(Vec<QElem>, QElem)> = matrix
        .rows
        .iter()
        .cloned()
        .zip(rhs.iter().cloned())
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].0[col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            let (row, b) = &mut rows[r];
            for x in row.iter_mut().skip(col) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            *b = &*b * &inv;
        }
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, (row, b)) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = &*x - &(&factor * y);
                }
            }
            if !pivot_rhs.is_zero() {
                *b = &*b - &(&factor * &pivot_rhs);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let consistent = rows[r..].iter().all(|(_, b)| b.is_zero());
    let particular = consistent.then(|| {
        let mut x = vec![QElem::zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = rows[i].1.clone();
        }
        x
    });

    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let nullspace_basis = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![QElem::zero(); n];
            v[free] = QElem::one();
            for (i, &c) in pivots.iter().enumerate() {
                let e = &rows[i].0[free];
                if !e.is_zero() {
                    v[c] = -e;
                }
            }
            v
        })
        .collect();

    AffineSolution {
        particular,
        nullspace_basis,
        rank: pivots.len(),
    }
}
