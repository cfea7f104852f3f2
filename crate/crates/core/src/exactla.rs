//! Dense Gauss–Jordan elimination over an exact field.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    /// A zero matrix; `zero` supplies the field (its value is ignored).
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![zero.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, one: &F) -> Self {
        let mut m = Self::zeros(n, n, one);
        for i in 0..n {
            m.set(i, i, one.one_like());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: F) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = row.first().map_or_else(|| v[0].zero_like(), F::zero_like);
                for (a, x) in row.iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add_ref(&a.mul_ref(x));
                    }
                }
                acc
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form and pivot columns. Pivots are the first
    /// nonzero entry found scanning down each column.
    pub fn rref(&self) -> (ExactMatrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).try_inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(row, c).mul_ref(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let pivot_entry = self.get(row, c);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c).sub_ref(&factor.mul_ref(pivot_entry));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One solution of `self · x = rhs` with free variables set to zero, or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Result<Option<Vec<F>>> {
        Ok(self.solve_many(&[rhs.to_vec()])?.pop().unwrap())
    }

    /// Solves against several right-hand sides with a single elimination.
    pub fn solve_many(&self, rhs: &[Vec<F>]) -> Result<Vec<Option<Vec<F>>>> {
        if let Some(bad) = rhs.iter().find(|v| v.len() != self.rows) {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but right-hand side of length {}",
                self.rows,
                bad.len()
            )));
        }
        let Some(sample) = self.entries.first().or_else(|| rhs.iter().flatten().next()) else {
            return Ok(rhs.iter().map(|_| Some(Vec::new())).collect());
        };
        let width = self.cols + rhs.len();
        let mut aug = ExactMatrix::zeros(self.rows, width, sample);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            for (k, v) in rhs.iter().enumerate() {
                aug.set(r, self.cols + k, v[r].clone());
            }
        }
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        Ok((0..rhs.len())
            .map(|k| {
                let col = self.cols + k;
                if (rank..self.rows).any(|r| !aug.get(r, col).is_zero()) {
                    return None;
                }
                let mut x = vec![sample.zero_like(); self.cols];
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = aug.get(r, col).clone();
                }
                Some(x)
            })
            .collect())
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Some(sample) = self.entries.first() else {
            return Vec::new();
        };
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![sample.zero_like(); self.cols];
                v[f] = sample.one_like();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(row, f).neg_ref();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;
    use crate::Rational;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_power(n, k)
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn identity_rref() {
        let id = ExactMatrix::identity(3, &r(1));
        let (m, p) = id.rref();
        assert_eq!(m, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix() {
        let m = ExactMatrix::zeros(2, 3, &r(0));
        let (rr, p) = m.rref();
        assert_eq!(rr, m);
        assert!(p.is_empty());
        assert_eq!(m.nullspace().len(), 3);
    }

    #[test]
    fn rank_one_cyclotomic() {
        // second row is ζ times the first
        let m = ExactMatrix::from_rows(vec![vec![z(3, 1), z(3, 2)], vec![z(3, 2), z(3, 3)]]).unwrap();
        assert_eq!(m.rank(), 1);
        // with ζ⁴ = ζ in the corner the determinant is ζ² − ζ ≠ 0
        let m = ExactMatrix::from_rows(vec![vec![z(3, 1), z(3, 2)], vec![z(3, 2), z(3, 4)]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = ExactMatrix::from_rows(vec![
            vec![z(5, 1), z(5, 2), Cyclotomic::one(5)],
            vec![z(5, 3), z(5, 4), z(5, 2)],
            vec![z(5, 1) + z(5, 3), z(5, 2) + z(5, 4), Cyclotomic::one(5) + z(5, 2)],
        ])
        .unwrap();
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
        assert_eq!(p1.len() + m.nullspace().len(), 3);
        for k in m.nullspace() {
            assert!(m.mul_vec(&k).unwrap().iter().all(Cyclotomic::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(2, &r(1));
        assert_eq!(id.solve(&[r(3), r(4)]).unwrap(), Some(vec![r(3), r(4)]));
        let zero = ExactMatrix::zeros(1, 1, &r(0));
        assert_eq!(zero.solve(&[r(1)]).unwrap(), None);
        let m = ExactMatrix::from_rows(vec![vec![z(4, 1)]]).unwrap();
        let x = m.solve(&[Cyclotomic::one(4)]).unwrap().unwrap();
        assert_eq!(x[0], -z(4, 1));
        assert!(id.solve(&[r(1)]).is_err());
    }

    #[test]
    fn nullspace_single_relation() {
        let m = ExactMatrix::from_rows(vec![vec![Cyclotomic::one(3), z(3, 1)]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![-z(3, 1), Cyclotomic::one(3)]]);
        assert!(ExactMatrix::identity(4, &r(1)).nullspace().is_empty());
    }
}
