//! Dense exact linear algebra over a single field: RREF, rank, determinant,
//! column selection, inner and star products.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{same_field, Fe, Field};

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
    field: Arc<Field>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.token())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fe;
    fn index(&self, (r, c): (usize, usize)) -> &Fe {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Fe {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn new(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        for &e in &data {
            if !field.contains(e) {
                return Err(Error::FieldMismatch(format!(
                    "entry {e} outside {}",
                    field.token()
                )));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            field: Arc::clone(field),
        })
    }

    pub fn from_rows(field: &Arc<Field>, rows: Vec<Vec<Fe>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::LengthMismatch { expected: c, got: 0 });
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Rows given as integer encodings; handy for fixed matrices.
    pub fn from_int_rows(field: &Arc<Field>, rows: &[&[u64]]) -> Result<Matrix> {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.element(x)).collect::<Result<Vec<Fe>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, converted)
    }

    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
            field: Arc::clone(field),
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch("stacking matrices over different fields".into()));
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch("stacking matrices over different fields".into()));
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot adjoin {} rows to {} rows",
                other.rows, self.rows
            )));
        }
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix::new(&self.field, self.rows, self.cols + other.cols, data)
    }

    pub fn append_row(&self, row: &[Fe]) -> Result<Matrix> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: row.len(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(row);
        Matrix::new(&self.field, self.rows + 1, self.cols, data)
    }

    pub fn delete_col(&self, c: usize) -> Result<Matrix> {
        if c >= self.cols {
            return Err(Error::IndexOutOfRange { index: c, len: self.cols });
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols - 1));
        for r in 0..self.rows {
            for (j, &e) in self.row(r).iter().enumerate() {
                if j != c {
                    data.push(e);
                }
            }
        }
        Matrix::new(&self.field, self.rows, self.cols - 1, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Result<Matrix> {
        for &i in idx {
            if i >= self.cols {
                return Err(Error::IndexOutOfRange { index: i, len: self.cols });
            }
        }
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            let row = self.row(r);
            for &i in idx {
                data.push(row[i]);
            }
        }
        Matrix::new(&self.field, self.rows, idx.len(), data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch("multiplying matrices over different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self[(r, i)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out[(r, c)];
                    out[(r, c)] = f.add(cur, f.mul(a, other[(i, c)]));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product M x^T.
    pub fn mul_vec(&self, x: &[Fe]) -> Result<Vec<Fe>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.rows];
        for r in 0..self.rows {
            let row = self.row(r);
            let mut acc = Fe::ZERO;
            for (a, b) in row.iter().zip(x) {
                acc = f.add(acc, f.mul(*a, *b));
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// In-place reduced row echelon form using first-nonzero pivoting in
    /// column order. Returns the pivot columns. RREF is the canonical
    /// representative of the row space, so equality of RREFs is equality of
    /// row spaces.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = Arc::clone(&self.field);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let tmp = self[(r, j)];
                    self[(r, j)] = self[(pr, j)];
                    self[(pr, j)] = tmp;
                }
            }
            let inv = f.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in 0..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let factor = self[(i, c)];
                    for j in 0..self.cols {
                        let sub = f.mul(factor, self[(r, j)]);
                        let cur = self[(i, j)];
                        self[(i, j)] = f.sub(cur, sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Rank via Gaussian elimination with exact pivoting.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by elimination over the field.
    pub fn det(&self) -> Result<Fe> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = Arc::clone(&self.field);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        let mut neg = false;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(f.zero());
            };
            if pr != c {
                for j in 0..n {
                    let tmp = m[(c, j)];
                    m[(c, j)] = m[(pr, j)];
                    m[(pr, j)] = tmp;
                }
                neg = !neg;
            }
            let pivot = m[(c, c)];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let factor = f.mul(m[(i, c)], inv);
                    for j in c..n {
                        let sub = f.mul(factor, m[(c, j)]);
                        let cur = m[(i, j)];
                        m[(i, j)] = f.sub(cur, sub);
                    }
                }
            }
        }
        Ok(if neg { f.neg(det) } else { det })
    }

    /// True iff the selected columns are linearly independent. The index set
    /// must be duplicate-free.
    pub fn cols_independent(&self, idx: &[usize]) -> Result<bool> {
        let mut seen = idx.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadInput("column index set has duplicates".into()));
        }
        let sub = self.select_cols(idx)?;
        Ok(sub.rank() == idx.len())
    }

    /// Rows spanning the kernel {x : M x^T = 0}.
    pub fn kernel_basis(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out[(k, fc)] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                out[(k, pc)] = f.neg(rref[(r, fc)]);
            }
        }
        out
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Ok(None);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(Some(red.select_cols(&idx)?))
    }
}

/// Euclidean inner product of two equal-length vectors.
pub fn inner_product(field: &Field, x: &[Fe], y: &[Fe]) -> Result<Fe> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let mut acc = Fe::ZERO;
    for (&a, &b) in x.iter().zip(y) {
        acc = field.add(acc, field.mul(a, b));
    }
    Ok(acc)
}

/// Coordinatewise (star) product of two equal-length vectors.
pub fn star_product(field: &Field, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.iter().zip(y).map(|(&a, &b)| field.mul(a, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Cofactor-expansion determinant, the independent oracle for `det`.
    fn det_oracle(m: &Matrix) -> Fe {
        let f = m.field().clone();
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        let mut acc = Fe::ZERO;
        for c in 0..n {
            let a = m[(0, c)];
            if a.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
            let minor_rows: Vec<Vec<Fe>> = (1..n)
                .map(|r| sub_cols.iter().map(|&j| m[(r, j)]).collect())
                .collect();
            let minor = Matrix::from_rows(&f, minor_rows).unwrap();
            let term = f.mul(a, det_oracle(&minor));
            acc = if c % 2 == 0 {
                f.add(acc, term)
            } else {
                f.sub(acc, term)
            };
        }
        acc
    }

    fn vandermonde(field: &Arc<Field>, nodes: &[u64], rows: usize) -> Matrix {
        let rows_data: Vec<Vec<Fe>> = (0..rows)
            .map(|i| nodes.iter().map(|&a| field.pow(field.el(a), i as u64)).collect())
            .collect();
        Matrix::from_rows(field, rows_data).unwrap()
    }

    #[test]
    fn det_examples() {
        let f = Field::prime(11).unwrap();
        let m = Matrix::from_int_rows(&f, &[&[1, 1], &[3, 4]]).unwrap();
        assert_eq!(m.det().unwrap(), f.el(1));
        assert_eq!(Matrix::identity(&f, 4).det().unwrap(), f.one());
        let v = Matrix::from_int_rows(&f, &[&[1, 1, 1], &[3, 4, 5], &[9, 5, 3]]).unwrap();
        // (4-3)(5-3)(5-4) = 2, confirmed by the cofactor oracle
        assert_eq!(det_oracle(&v), f.el(2));
        assert_eq!(v.det().unwrap(), f.el(2));
    }

    #[test]
    fn det_rejects_non_square() {
        let f = Field::prime(11).unwrap();
        let m = Matrix::zeros(&f, 2, 3);
        assert!(matches!(m.det(), Err(Error::NonSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn rank_examples() {
        let f = Field::prime(11).unwrap();
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
        let v = vandermonde(&f, &[3, 4, 5, 6], 4);
        assert_eq!(v.rank(), 4);
        assert!(!det_oracle(&v).is_zero());
        // the Example 4 generator has full rank 3
        let g3 = Matrix::from_int_rows(
            &f,
            &[
                &[1, 1, 1, 1, 1, 0],
                &[3, 4, 5, 6, 7, 0],
                &[5, 9, 4, 7, 2, 1],
            ],
        )
        .unwrap();
        assert_eq!(g3.rank(), 3);
    }

    #[test]
    fn rank_transpose_property() {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let data: Vec<Fe> = (0..rows * cols).map(|_| f.el(rng.gen())).collect();
            let m = Matrix::new(&f, rows, cols, data).unwrap();
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let f = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let n = rng.gen_range(1..=6);
            let a = Matrix::new(&f, n, n, (0..n * n).map(|_| f.el(rng.gen())).collect()).unwrap();
            let b = Matrix::new(&f, n, n, (0..n * n).map(|_| f.el(rng.gen())).collect()).unwrap();
            let lhs = a.mul(&b).unwrap().det().unwrap();
            let rhs = f.mul(a.det().unwrap(), b.det().unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cols_independent_matches_det() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(rows..7);
            let m = Matrix::new(&f, rows, cols, (0..rows * cols).map(|_| f.el(rng.gen())).collect())
                .unwrap();
            // pick `rows` distinct columns
            let mut idx: Vec<usize> = (0..cols).collect();
            for i in (1..idx.len()).rev() {
                idx.swap(i, rng.gen_range(0..=i));
            }
            idx.truncate(rows);
            idx.sort_unstable();
            let sel = m.select_cols(&idx).unwrap();
            assert_eq!(
                m.cols_independent(&idx).unwrap(),
                !sel.det().unwrap().is_zero()
            );
        }
    }

    #[test]
    fn cols_independent_rejects_bad_input() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::identity(&f, 3);
        assert!(matches!(
            m.cols_independent(&[0, 5]),
            Err(Error::IndexOutOfRange { index: 5, len: 3 })
        ));
        assert!(m.cols_independent(&[0, 0]).is_err());
        // a zero column is never part of an independent set
        let z = Matrix::zeros(&f, 3, 3);
        assert!(!z.cols_independent(&[0]).unwrap());
    }

    #[test]
    fn inner_and_star_products() {
        let f = Field::prime(11).unwrap();
        let ones = vec![f.one(); 5];
        assert_eq!(inner_product(&f, &ones, &ones).unwrap(), f.el(5));
        let x = vec![f.el(1), f.el(2), f.el(3)];
        let y = vec![f.el(3), f.el(2), f.el(1)];
        // 3 + 4 + 3 = 10 by direct sum
        assert_eq!(inner_product(&f, &x, &y).unwrap(), f.el(10));
        let a = vec![f.el(2), f.el(3)];
        let b = vec![f.el(3), f.el(4)];
        assert_eq!(star_product(&f, &a, &b).unwrap(), vec![f.el(6), f.el(1)]);
        let idv = star_product(&f, &x, &ones[..3].to_vec()).unwrap();
        assert_eq!(idv, x);
        assert!(inner_product(&f, &x, &a).is_err());
    }

    #[test]
    fn rref_is_canonical_for_the_row_space() {
        let f = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(rows..6);
            let m = Matrix::new(&f, rows, cols, (0..rows * cols).map(|_| f.el(rng.gen())).collect())
                .unwrap();
            // random invertible row operation must not change the RREF
            let n = rows;
            let t = loop {
                let cand =
                    Matrix::new(&f, n, n, (0..n * n).map(|_| f.el(rng.gen())).collect()).unwrap();
                if !cand.det().unwrap().is_zero() {
                    break cand;
                }
            };
            let m2 = t.mul(&m).unwrap();
            assert_eq!(m.rref().0, m2.rref().0);
        }
    }

    #[test]
    fn kernel_basis_annihilates() {
        let f = Field::prime(11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(rows..7);
            let m = Matrix::new(&f, rows, cols, (0..rows * cols).map(|_| f.el(rng.gen())).collect())
                .unwrap();
            let kern = m.kernel_basis();
            assert_eq!(kern.rows(), cols - m.rank());
            for r in 0..kern.rows() {
                let prod = m.mul_vec(kern.row(r)).unwrap();
                assert!(prod.iter().all(|e| e.is_zero()));
            }
            assert_eq!(kern.rank(), kern.rows());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let n = rng.gen_range(1..5);
            let m = Matrix::new(&f, n, n, (0..n * n).map(|_| f.el(rng.gen())).collect()).unwrap();
            match m.inverse().unwrap() {
                Some(inv) => {
                    assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&f, n));
                    assert!(!m.det().unwrap().is_zero());
                }
                None => assert!(m.det().unwrap().is_zero()),
            }
        }
    }

    #[test]
    fn cross_field_operations_rejected() {
        let f7 = Field::prime(7).unwrap();
        let f11 = Field::prime(11).unwrap();
        let a = Matrix::identity(&f7, 2);
        let b = Matrix::identity(&f11, 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
        assert!(matches!(a.vstack(&b), Err(Error::FieldMismatch(_))));
        assert!(Matrix::new(&f7, 1, 1, vec![Fe(9)]).is_err());
    }
}
