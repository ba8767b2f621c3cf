//! Dense matrices over an exact field, with reduced row-echelon form as the
//! canonical workhorse. Row-major storage; all entries share one field tag.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Build from row-major entries, checking that every entry lives in
    /// `field`. Mixed-field input is rejected.
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        for s in &data {
            if s.field() != field {
                return Err(Error::FieldMismatch(field, s.field()));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m[(i, i)] = Scalar::one(field);
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch(format!(
                    "row length {} != {}",
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(rows.len(), cols, field, data)
    }

    pub fn from_cols(rows: usize, field: Field, cols: &[Vec<Scalar>]) -> Result<Matrix> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| Scalar::from_int(v, field)))
            .collect();
        Matrix::new(rows.len(), cols, field, data).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimMismatch("vstack column mismatch".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.rows + other.rows, self.cols, self.field, data)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimMismatch("hstack row mismatch".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Matrix::new(self.rows, self.cols + other.cols, self.field, data)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc = &acc + &(&self[(i, j)] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row-echelon form, its rank and the pivot columns.
    /// The input is unchanged; RREF is unique, so equal row spaces yield
    /// identical results.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        m[(i, j)] = &m[(i, j)] - &(&factor * &m[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("inverse of a non-square matrix".into()));
        }
        let aug = self.hstack(&Matrix::identity(self.rows, self.field))?;
        let (r, _, pivots) = aug.rref();
        // invertible iff the pivots are exactly the left-block columns
        if pivots.iter().take(self.rows).any(|&c| c >= self.rows)
            || pivots.len() < self.rows
        {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(self.rows, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.rows {
                inv[(i, j)] = r[(i, self.rows + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Solve self * x = b; None when inconsistent. Returns one particular
    /// solution (free variables set to zero).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let bm = Matrix::new(self.rows, 1, self.field, b.to_vec()).ok()?;
        let aug = self.hstack(&bm).ok()?;
        let (r, _, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the augmented column
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|x| x * s).collect();
        Matrix::new(self.rows, self.cols, self.field, data).unwrap()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimMismatch("matrix add".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(self.rows, self.cols, self.field, data)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows {
            t = &t + &self[(i, i)];
        }
        t
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        assert_eq!(self.field, rhs.field, "matmul field mismatch");
        let mut out = Matrix::zero(self.rows, rhs.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if !rhs[(k, j)].is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(&self[(i, k)] * &rhs[(k, j)]);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3, Field::Q);
        let (r, rank, _) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);

        let z = Matrix::zero(2, 4, Field::Q);
        let (r, rank, _) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        // hand elimination: [[1,2],[2,4]] -> [[1,2],[0,0]], rank 1
        let m = Matrix::from_ints(Field::Q, &[&[1, 2], &[2, 4]]);
        let (r, rank, _) = m.rref();
        assert_eq!(r, Matrix::from_ints(Field::Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_is_a_projector() {
        let m = Matrix::from_ints(Field::Fp(5), &[&[1, 2, 3], &[4, 0, 1], &[0, 2, 4]]);
        let r1 = m.rref().0;
        let r2 = r1.rref().0;
        assert_eq!(r1, r2);
    }

    #[test]
    fn mixed_field_rejected() {
        let data = vec![Scalar::one(Field::Q), Scalar::one(Field::Fp(3))];
        assert!(matches!(
            Matrix::new(1, 2, Field::Q, data),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_ints(Field::Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2, Field::Q));
        let sing = Matrix::from_ints(Field::Q, &[&[1, 2], &[2, 4]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn solve_particular() {
        let m = Matrix::from_ints(Field::Q, &[&[1, 1, 0]]);
        let b = vec![Scalar::from_int(3, Field::Q)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let inconsistent = Matrix::from_ints(Field::Q, &[&[1, 0], &[1, 0]]);
        assert!(inconsistent
            .solve(&[Scalar::from_int(1, Field::Q), Scalar::from_int(2, Field::Q)])
            .is_none());
    }
}
