//! Subspaces in canonical reduced-row-echelon form, so equality of
//! subspaces is equality of representations.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    /// RREF basis, zero rows dropped. Pivot columns strictly increase and
    /// pivots are 1 with zeros elsewhere in their column.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize, field: Field) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Matrix::zero(0, ambient, field),
        }
    }

    pub fn full(ambient: usize, field: Field) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Matrix::identity(ambient, field),
        }
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn from_span(m: &Matrix) -> Subspace {
        let (r, rank, _) = m.rref();
        let mut rows = Vec::with_capacity(rank);
        for i in 0..rank {
            rows.push(r.row(i).to_vec());
        }
        Subspace {
            ambient: m.cols(),
            field: m.field(),
            basis: Matrix::from_rows(m.field(), m.cols(), &rows).unwrap(),
        }
    }

    pub fn from_vectors(ambient: usize, field: Field, vecs: &[Vec<Scalar>]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, ambient, vecs)?;
        Ok(Subspace::from_span(&m))
    }

    /// Solution space of M x = 0.
    pub fn kernel(m: &Matrix) -> Subspace {
        let (r, rank, pivots) = m.rref();
        let n = m.cols();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Scalar::zero(m.field()); n];
            v[fc] = Scalar::one(m.field());
            for (ri, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = -&r[(ri, fc)];
            }
            rows.push(v);
        }
        // the vectors above are already independent; canonicalize anyway
        Subspace::from_vectors(n, m.field(), &rows).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let vm = Matrix::from_rows(self.field, self.ambient, &[v.to_vec()]).unwrap();
        self.basis.vstack(&vm).unwrap().rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.basis.vstack(&other.basis).unwrap().rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_span(&self.basis.vstack(&other.basis)?))
    }

    /// U ∩ V via the duality rowspace(U) = { x : x ⟂ kernel(U) }: stack the
    /// kernel bases of both and take the kernel again.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let cu = Subspace::kernel(&self.basis);
        let cv = Subspace::kernel(&other.basis);
        let stacked = cu.basis.vstack(&cv.basis)?;
        if stacked.rows() == 0 {
            return Ok(Subspace::full(self.ambient, self.field));
        }
        Ok(Subspace::kernel(&stacked))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize, field: Field) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(field); n];
        v[k] = Scalar::one(field);
        v
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(Subspace::kernel(&Matrix::identity(4, Field::Q)).is_zero());
        let k = Subspace::kernel(&Matrix::zero(3, 3, Field::Q));
        assert_eq!(k, Subspace::full(3, Field::Q));
    }

    #[test]
    fn kernel_over_f5() {
        // oracle: enumerate F_5^3 and filter
        let m = Matrix::from_ints(Field::Fp(5), &[&[1, 1, 0]]);
        let k = Subspace::kernel(&m);
        let mut count = 0;
        for a in 0..5i64 {
            for b in 0..5i64 {
                for c in 0..5i64 {
                    let v: Vec<Scalar> = [a, b, c]
                        .iter()
                        .map(|&x| Scalar::from_int(x, Field::Fp(5)))
                        .collect();
                    let in_kernel = m.mul_vec(&v).iter().all(Scalar::is_zero);
                    if in_kernel {
                        count += 1;
                        assert!(k.contains(&v));
                    }
                }
            }
        }
        assert_eq!(count, 25); // 2-dimensional
        assert_eq!(k.dim(), 2);
        let v: Vec<Scalar> = [1, 4, 0]
            .iter()
            .map(|&x| Scalar::from_int(x, Field::Fp(5)))
            .collect();
        assert!(k.contains(&v));
    }

    #[test]
    fn dimension_formula() {
        let m = Matrix::from_ints(Field::Q, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let k = Subspace::kernel(&m);
        assert_eq!(k.dim() + m.rank(), m.cols());
    }

    #[test]
    fn intersect_cases() {
        let f = Field::Q;
        let u = Subspace::from_vectors(3, f, &[e(3, 0, f)]).unwrap();
        let v = Subspace::from_vectors(3, f, &[e(3, 1, f)]).unwrap();
        assert!(u.intersect(&v).unwrap().is_zero());
        assert_eq!(u.intersect(&u).unwrap(), u);

        // span(e1+e2, e3) ∩ span(e1+e2, e1) = span(e1+e2)
        let mut e12 = e(3, 0, f);
        e12[1] = Scalar::one(f);
        let a = Subspace::from_vectors(3, f, &[e12.clone(), e(3, 2, f)]).unwrap();
        let b = Subspace::from_vectors(3, f, &[e12.clone(), e(3, 0, f)]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::from_vectors(3, f, &[e12]).unwrap());
        // dim(U∩V) = dim U + dim V − dim(U+V)
        assert_eq!(
            i.dim(),
            a.dim() + b.dim() - a.sum(&b).unwrap().dim()
        );
    }

    #[test]
    fn ambient_mismatch_is_error() {
        let u = Subspace::full(2, Field::Q);
        let v = Subspace::full(3, Field::Q);
        assert!(u.intersect(&v).is_err());
    }
}
