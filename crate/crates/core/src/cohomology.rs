//! Z², B² and H² of an anticommutative algebra with scalar coefficients,
//! in the Δ_ij coordinate basis, plus radicals and the T_s membership test.
//!
//! For this variety every skew-symmetric bilinear form is a cocycle, so Z²
//! is the full space spanned by the Δ_ij (lexicographic (i, j) order) and
//! B² is spanned by the coboundaries δe_k*.

use crate::algebra::{pair_count, pair_index, pairs, Algebra};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// A scalar-valued alternating bilinear form θ = Σ c_ij Δ_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    n: usize,
    field: Field,
    /// c_ij for 0 <= i < j < n in lexicographic order.
    coeffs: Vec<Scalar>,
}

impl Cocycle {
    pub fn new(n: usize, field: Field, coeffs: Vec<Scalar>) -> Result<Cocycle> {
        if coeffs.len() != pair_count(n) {
            return Err(Error::DimMismatch(format!(
                "cocycle on dim {} needs {} coefficients",
                n,
                pair_count(n)
            )));
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
        }
        Ok(Cocycle { n, field, coeffs })
    }

    pub fn zero(n: usize, field: Field) -> Cocycle {
        Cocycle {
            n,
            field,
            coeffs: vec![Scalar::zero(field); pair_count(n)],
        }
    }

    /// The basis form Δ_ij (0-based, i < j).
    pub fn delta(n: usize, i: usize, j: usize, field: Field) -> Cocycle {
        assert!(i < j && j < n);
        let mut c = Cocycle::zero(n, field);
        c.coeffs[pair_index(n, i, j)] = Scalar::one(field);
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.coeffs[pair_index(self.n, i, j)].clone(),
            Ordering::Equal => Scalar::zero(self.field),
            Ordering::Greater => -&self.coeffs[pair_index(self.n, j, i)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        let mut acc = Scalar::zero(self.field);
        for (i, j) in pairs(self.n) {
            let c = &self.coeffs[pair_index(self.n, i, j)];
            if c.is_zero() {
                continue;
            }
            let w = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            acc = &acc + &(c * &w);
        }
        acc
    }

    /// Alternating coefficient matrix Θ with Θ[i][j] = θ(e_i, e_j).
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.n, self.n, self.field);
        for (i, j) in pairs(self.n) {
            let c = self.coeffs[pair_index(self.n, i, j)].clone();
            m[(j, i)] = -&c;
            m[(i, j)] = c;
        }
        m
    }

    /// Build back from an alternating matrix (upper triangle read off).
    pub fn from_matrix(m: &Matrix) -> Cocycle {
        let n = m.rows();
        let mut c = Cocycle::zero(n, m.field());
        for (i, j) in pairs(n) {
            c.coeffs[pair_index(n, i, j)] = m[(i, j)].clone();
        }
        c
    }

    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.n != other.n {
            return Err(Error::DimMismatch("cocycle add".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cocycle::new(self.n, self.field, coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> Cocycle {
        Cocycle {
            n: self.n,
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// rad(θ) = { x : θ(x, A) = 0 }, the kernel of the coefficient matrix.
    pub fn radical(&self) -> Subspace {
        Subspace::kernel(&self.to_matrix())
    }
}

/// A V-valued form as an s-tuple of scalar cocycles (components against the
/// implicit basis of V, positions 1..s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTuple {
    components: Vec<Cocycle>,
}

impl CocycleTuple {
    pub fn new(components: Vec<Cocycle>) -> Result<CocycleTuple> {
        if let Some(first) = components.first() {
            for c in &components[1..] {
                if c.n() != first.n() {
                    return Err(Error::DimMismatch("tuple component dims differ".into()));
                }
                if c.field() != first.field() {
                    return Err(Error::FieldMismatch(first.field(), c.field()));
                }
            }
        }
        Ok(CocycleTuple { components })
    }

    pub fn s(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Cocycle] {
        &self.components
    }

    /// ∩_i rad(θ_i); the full space for the empty tuple.
    pub fn radical(&self, n: usize, field: Field) -> Subspace {
        let mut rad = Subspace::full(n, field);
        for c in &self.components {
            rad = rad.intersect(&c.radical()).unwrap();
        }
        rad
    }
}

/// All Δ_ij in lexicographic order; the basis of Z².
pub fn delta_basis(n: usize, field: Field) -> Vec<Cocycle> {
    pairs(n).map(|(i, j)| Cocycle::delta(n, i, j, field)).collect()
}

/// δf(x, y) = f([x, y]) in Δ coordinates.
pub fn coboundary(a: &Algebra, f: &[Scalar]) -> Result<Cocycle> {
    if f.len() != a.dim() {
        return Err(Error::DimMismatch("covector length".into()));
    }
    let n = a.dim();
    let mut coeffs = Vec::with_capacity(pair_count(n));
    for (i, j) in pairs(n) {
        let prod = a.bracket_basis(i, j);
        let mut acc = Scalar::zero(a.field());
        for k in 0..n {
            if !prod[k].is_zero() && !f[k].is_zero() {
                acc = &acc + &(&prod[k] * &f[k]);
            }
        }
        coeffs.push(acc);
    }
    Cocycle::new(n, a.field(), coeffs)
}

/// Bases of Z² and B², chosen H² representatives and the projection onto
/// H² coordinates.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    n: usize,
    field: Field,
    z2_dim: usize,
    b2: Subspace,
    reps: Vec<Cocycle>,
    rep_positions: Vec<usize>,
    /// h x z2_dim; kills exactly B² and sends rep t to the unit vector e_t.
    projection: Matrix,
}

impl CohomologySpace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn z2_dim(&self) -> usize {
        self.z2_dim
    }

    pub fn b2_dim(&self) -> usize {
        self.b2.dim()
    }

    pub fn h2_dim(&self) -> usize {
        self.reps.len()
    }

    pub fn b2(&self) -> &Subspace {
        &self.b2
    }

    /// Chosen representatives: the lexicographically earliest Δ_ij
    /// completing B² to Z².
    pub fn reps(&self) -> &[Cocycle] {
        &self.reps
    }

    /// Positions (pair indices) of the representative Δ forms.
    pub fn rep_positions(&self) -> &[usize] {
        &self.rep_positions
    }

    /// H² coordinates of a cocycle's class.
    pub fn project(&self, theta: &Cocycle) -> Result<Vec<Scalar>> {
        if theta.n() != self.n {
            return Err(Error::DimMismatch("cocycle dim".into()));
        }
        if theta.field() != self.field {
            return Err(Error::FieldMismatch(self.field, theta.field()));
        }
        Ok(self.projection.mul_vec(theta.coeffs()))
    }

    /// The representative cocycle with the given H² coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Cocycle {
        assert_eq!(coords.len(), self.h2_dim());
        let mut out = Cocycle::zero(self.n, self.field);
        for (t, c) in coords.iter().enumerate() {
            out = out.add(&self.reps[t].scale(c)).unwrap();
        }
        out
    }

    pub fn class_is_zero(&self, theta: &Cocycle) -> Result<bool> {
        Ok(self.project(theta)?.iter().all(Scalar::is_zero))
    }

    /// Matrix of the coboundary map f ↦ δf, z2_dim x n. Used when solving
    /// for coboundary corrections.
    pub fn coboundary_matrix(a: &Algebra) -> Matrix {
        let n = a.dim();
        let mut m = Matrix::zero(pair_count(n), n, a.field());
        for k in 0..n {
            let mut f = vec![Scalar::zero(a.field()); n];
            f[k] = Scalar::one(a.field());
            let d = coboundary(a, &f).unwrap();
            for (row, c) in d.coeffs().iter().enumerate() {
                m[(row, k)] = c.clone();
            }
        }
        m
    }
}

/// Compute B², pick deterministic H² representatives and assemble the
/// projection.
pub fn h2(a: &Algebra) -> CohomologySpace {
    let n = a.dim();
    let field = a.field();
    let z2_dim = pair_count(n);

    let cobs: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            let mut f = vec![Scalar::zero(field); n];
            f[k] = Scalar::one(field);
            coboundary(a, &f).unwrap().coeffs().to_vec()
        })
        .collect();
    let b2 = if n == 0 {
        Subspace::zero(z2_dim, field)
    } else {
        Subspace::from_vectors(z2_dim, field, &cobs).unwrap()
    };

    // lexicographically earliest unit Δ coordinates completing B² to Z²
    let mut span = b2.basis().clone();
    let mut rep_positions = Vec::new();
    for pos in 0..z2_dim {
        if span.rows() == z2_dim {
            break;
        }
        let mut unit = vec![Scalar::zero(field); z2_dim];
        unit[pos] = Scalar::one(field);
        let cand = span
            .vstack(&Matrix::from_rows(field, z2_dim, &[unit]).unwrap())
            .unwrap();
        if cand.rank() == span.rows() + 1 {
            span = cand;
            rep_positions.push(pos);
        }
    }
    let reps: Vec<Cocycle> = rep_positions
        .iter()
        .map(|&pos| {
            let (i, j) = pairs(n).nth(pos).unwrap();
            Cocycle::delta(n, i, j, field)
        })
        .collect();

    // full basis of Z²: B² rows then representative rows; the projection is
    // read off the inverse.
    let b = b2.dim();
    let h = reps.len();
    debug_assert_eq!(b + h, z2_dim);
    let mut full = Matrix::zero(z2_dim, z2_dim, field);
    for r in 0..b {
        for c in 0..z2_dim {
            full[(r, c)] = b2.basis()[(r, c)].clone();
        }
    }
    for (t, rep) in reps.iter().enumerate() {
        for (c, v) in rep.coeffs().iter().enumerate() {
            full[(b + t, c)] = v.clone();
        }
    }
    let projection = if z2_dim == 0 {
        Matrix::zero(0, 0, field)
    } else {
        let finv = full.inverse().expect("Z² basis is invertible");
        // coords = z · F^{-1}; take the last h of them
        let mut proj = Matrix::zero(h, z2_dim, field);
        for t in 0..h {
            for r in 0..z2_dim {
                proj[(t, r)] = finv[(r, b + t)].clone();
            }
        }
        proj
    };

    CohomologySpace {
        n,
        field,
        z2_dim,
        b2,
        reps,
        rep_positions,
        projection,
    }
}

/// W ∈ T_s(A): the common radical of the components meets Ann(A) trivially
/// and the classes [θ_i] are linearly independent in H².
pub fn in_ts(a: &Algebra, coh: &CohomologySpace, w: &CocycleTuple) -> Result<bool> {
    if w.s() == 0 {
        return Ok(false);
    }
    if let Some(c) = w.components().first() {
        if c.n() != a.dim() {
            return Err(Error::DimMismatch("tuple vs algebra dim".into()));
        }
    }
    let rad = w.radical(a.dim(), a.field());
    let meets = rad.intersect(&a.annihilator())?;
    if !meets.is_zero() {
        return Ok(false);
    }
    let coords: Vec<Vec<Scalar>> = w
        .components()
        .iter()
        .map(|c| coh.project(c))
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(a.field(), coh.h2_dim().max(1), &normalize_rows(coords, coh.h2_dim(), a.field()))?;
    Ok(m.rank() == w.s())
}

fn normalize_rows(rows: Vec<Vec<Scalar>>, width: usize, field: Field) -> Vec<Vec<Scalar>> {
    if width == 0 {
        // no H² at all: pad to width 1 of zeros so rank comes out 0
        rows.into_iter().map(|_| vec![Scalar::zero(field)]).collect()
    } else {
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{table1, Table1Name};
    use crate::scalar::{Field, Scalar};

    #[test]
    fn project_lift_roundtrip() {
        let a = table1(Table1Name::G1, None, Field::Q).unwrap();
        let coh = h2(&a);
        for rep in coh.reps() {
            let coords = coh.project(rep).unwrap();
            let lifted = coh.lift(&coords);
            // same class: difference projects to zero
            let diff_coeffs: Vec<Scalar> = rep
                .coeffs()
                .iter()
                .zip(lifted.coeffs())
                .map(|(a, b)| a - b)
                .collect();
            let diff = Cocycle::new(rep.n(), Field::Q, diff_coeffs).unwrap();
            assert!(coh.class_is_zero(&diff).unwrap());
        }
    }

    #[test]
    fn coboundaries_project_to_zero() {
        let a = table1(Table1Name::G2, None, Field::Q).unwrap();
        let coh = h2(&a);
        for k in 0..a.dim() {
            let mut f = vec![Scalar::zero(Field::Q); a.dim()];
            f[k] = Scalar::from_int(1, Field::Q);
            let cb = coboundary(&a, &f).unwrap();
            assert!(coh.class_is_zero(&cb).unwrap());
        }
    }
}
