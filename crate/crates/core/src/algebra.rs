//! Anticommutative algebras as structure-constant tables. Alternation is
//! structural: only the products [e_i, e_j] with i < j are stored, the rest
//! are derived by negation, and [e_i, e_i] = 0 by construction.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// Index of the pair (i, j), 0 <= i < j < n, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// All pairs (i, j) with i < j in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    name: Option<String>,
    dim: usize,
    field: Field,
    /// table[pair_index(i, j)] = coordinates of [e_i, e_j], for i < j.
    table: Vec<Vec<Scalar>>,
}

impl Algebra {
    pub fn new(dim: usize, field: Field, table: Vec<Vec<Scalar>>) -> Result<Algebra> {
        if table.len() != pair_count(dim) {
            return Err(Error::DimMismatch(format!(
                "expected {} products for dim {}, got {}",
                pair_count(dim),
                dim,
                table.len()
            )));
        }
        for out in &table {
            if out.len() != dim {
                return Err(Error::DimMismatch("product vector length".into()));
            }
            for s in out {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
            }
        }
        Ok(Algebra {
            name: None,
            dim,
            field,
            table,
        })
    }

    pub fn zero_algebra(dim: usize, field: Field) -> Algebra {
        Algebra::new(dim, field, vec![vec![Scalar::zero(field); dim]; pair_count(dim)]).unwrap()
    }

    /// Build from a sparse list of products: (i, j, output coordinates),
    /// 0-based, i < j. Unlisted products are zero.
    pub fn from_products(
        dim: usize,
        field: Field,
        products: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Algebra> {
        let mut table = vec![vec![Scalar::zero(field); dim]; pair_count(dim)];
        for (i, j, out) in products {
            if *i >= *j || *j >= dim {
                return Err(Error::DimMismatch(format!("bad product pair ({}, {})", i, j)));
            }
            for (k, s) in out {
                if *k >= dim {
                    return Err(Error::DimMismatch(format!("bad basis index {}", k)));
                }
                table[pair_index(dim, *i, *j)][*k] = s.clone();
            }
        }
        Algebra::new(dim, field, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn table(&self) -> &[Vec<Scalar>] {
        &self.table
    }

    /// [e_i, e_j] for arbitrary i, j (sign from alternation, zero on the
    /// diagonal).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.table[pair_index(self.dim, i, j)].clone(),
            Ordering::Equal => vec![Scalar::zero(self.field); self.dim],
            Ordering::Greater => self.table[pair_index(self.dim, j, i)]
                .iter()
                .map(|s| -s)
                .collect(),
        }
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimMismatch("bracket operand length".into()));
        }
        for s in x.iter().chain(y) {
            if s.field() != self.field {
                return Err(Error::FieldMismatch(self.field, s.field()));
            }
        }
        let mut out = vec![Scalar::zero(self.field); self.dim];
        for (i, j) in pairs(self.dim) {
            // [x, y] picks up x_i y_j - x_j y_i on the (i, j) product
            let coef = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if coef.is_zero() {
                continue;
            }
            for (k, c) in self.table[pair_index(self.dim, i, j)].iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(&coef * c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of ad_{e_i}: y -> [e_i, y] (columns are images of basis
    /// vectors).
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim, self.field);
        for j in 0..self.dim {
            let col = self.bracket_basis(i, j);
            for k in 0..self.dim {
                m[(k, j)] = col[k].clone();
            }
        }
        m
    }

    /// Matrix of ad_x for an arbitrary vector x.
    pub fn ad_of(&self, x: &[Scalar]) -> Result<Matrix> {
        let mut m = Matrix::zero(self.dim, self.dim, self.field);
        for j in 0..self.dim {
            let mut ej = vec![Scalar::zero(self.field); self.dim];
            ej[j] = Scalar::one(self.field);
            let col = self.bracket(x, &ej)?;
            for k in 0..self.dim {
                m[(k, j)] = col[k].clone();
            }
        }
        Ok(m)
    }

    /// Ann(A) = { x : [x, A] = 0 }, the kernel of the stacked ad-system.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim;
        if n == 0 {
            return Subspace::zero(0, self.field);
        }
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for m in 0..n {
                // coordinate m of [x, e_j] = sum_i x_i [e_i, e_j]_m
                let row: Vec<Scalar> = (0..n).map(|i| self.bracket_basis(i, j)[m].clone()).collect();
                rows.push(row);
            }
        }
        Subspace::kernel(&Matrix::from_rows(self.field, n, &rows).unwrap())
    }

    /// span{ [u, v] : u in U, v in V } for subspace bases U, V.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                vecs.push(self.bracket(&a, &b).unwrap());
            }
        }
        if vecs.is_empty() {
            return Subspace::zero(self.dim, self.field);
        }
        Subspace::from_vectors(self.dim, self.field, &vecs).unwrap()
    }

    /// Dims of the derived series (A², [A²,A²], …) and the lower central
    /// series (A², [A,A²], …), each recorded until stabilization.
    pub fn series_dims(&self) -> (Vec<usize>, Vec<usize>) {
        let full = Subspace::full(self.dim, self.field);
        let square = self.product_space(&full, &full);

        let mut derived = vec![square.dim()];
        let mut cur = square.clone();
        while cur.dim() > 0 {
            let next = self.product_space(&cur, &cur);
            if next.dim() == cur.dim() {
                break;
            }
            derived.push(next.dim());
            cur = next;
        }

        let mut lower = vec![square.dim()];
        let mut cur = square;
        while cur.dim() > 0 {
            let next = self.product_space(&full, &cur);
            if next.dim() == cur.dim() {
                break;
            }
            lower.push(next.dim());
            cur = next;
        }
        (derived, lower)
    }

    /// Basis of the derivation space { D : D[x,y] = [Dx,y] + [x,Dy] } as a
    /// kernel, unknowns d_{kl} (D e_l = sum_k d_{kl} e_k) in lexicographic
    /// (k, l) order.
    pub fn derivation_space(&self) -> Subspace {
        let n = self.dim;
        if n == 0 {
            return Subspace::zero(0, self.field);
        }
        let unknowns = n * n;
        let mut rows = Vec::new();
        for (i, j) in pairs(n) {
            let cij = self.table[pair_index(n, i, j)].clone();
            for m in 0..n {
                let mut row = vec![Scalar::zero(self.field); unknowns];
                // LHS: D([e_i,e_j])_m = sum_l c_ij^l d_{ml}
                for l in 0..n {
                    if !cij[l].is_zero() {
                        row[m * n + l] = &row[m * n + l] + &cij[l];
                    }
                }
                // RHS: sum_k d_{ki} [e_k,e_j]_m + sum_k d_{kj} [e_i,e_k]_m
                for k in 0..n {
                    let a = self.bracket_basis(k, j)[m].clone();
                    if !a.is_zero() {
                        row[k * n + i] = &row[k * n + i] - &a;
                    }
                    let b = self.bracket_basis(i, k)[m].clone();
                    if !b.is_zero() {
                        row[k * n + j] = &row[k * n + j] - &b;
                    }
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Subspace::full(unknowns, self.field);
        }
        Subspace::kernel(&Matrix::from_rows(self.field, unknowns, &rows).unwrap())
    }

    pub fn derivation_dim(&self) -> usize {
        self.derivation_space().dim()
    }

    /// Conjugated algebra with bracket [x,y]' = P^{-1}[Px, Py]; isomorphic
    /// to self by construction (P maps the new basis to the old one).
    pub fn change_of_basis(&self, p: &Matrix) -> Result<Algebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimMismatch("change of basis size".into()));
        }
        let pinv = p.inverse()?;
        let mut table = Vec::with_capacity(pair_count(self.dim));
        for (i, j) in pairs(self.dim) {
            let prod = self.bracket(&p.col(i), &p.col(j))?;
            table.push(pinv.mul_vec(&prod));
        }
        Algebra::new(self.dim, self.field, table)
    }

    /// Quotient by the annihilator, realized on the deterministic
    /// complement spanned by the standard basis vectors at the non-pivot
    /// columns of the RREF basis of Ann(A). Returns the quotient, the
    /// projection matrix (quotient coords from ambient coords) and the
    /// complement.
    pub fn quotient_by_annihilator(&self) -> Result<(Algebra, Matrix, Subspace)> {
        let ann = self.annihilator();
        if ann.is_zero() {
            return Err(Error::ZeroAnnihilator);
        }
        let n = self.dim;
        let ann_basis = ann.basis();
        // pivot columns of the RREF basis: first nonzero entry of each row
        let mut pivot_cols = Vec::with_capacity(ann.dim());
        for r in 0..ann.dim() {
            let c = (0..n).find(|&c| !ann_basis[(r, c)].is_zero()).unwrap();
            pivot_cols.push(c);
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let q = free.len();

        // projection along Ann onto the complement, in complement coords
        let mut proj = Matrix::zero(q, n, self.field);
        for (row, &f) in free.iter().enumerate() {
            proj[(row, f)] = Scalar::one(self.field);
            for (t, &pcol) in pivot_cols.iter().enumerate() {
                proj[(row, pcol)] = -&ann_basis[(t, f)];
            }
        }

        let mut table = Vec::with_capacity(pair_count(q));
        for (a, b) in pairs(q) {
            let prod = self.bracket_basis(free[a], free[b]);
            table.push(proj.mul_vec(&prod));
        }
        let aq = Algebra::new(q, self.field, table)?;

        let complement = Subspace::from_vectors(
            n,
            self.field,
            &free
                .iter()
                .map(|&f| {
                    let mut v = vec![Scalar::zero(self.field); n];
                    v[f] = Scalar::one(self.field);
                    v
                })
                .collect::<Vec<_>>(),
        )?;
        Ok((aq, proj, complement))
    }

    /// A ⊕ k central generators.
    pub fn direct_sum_trivial(&self, k: usize) -> Algebra {
        let n = self.dim + k;
        let mut table = vec![vec![Scalar::zero(self.field); n]; pair_count(n)];
        for (i, j) in pairs(self.dim) {
            let src = &self.table[pair_index(self.dim, i, j)];
            let dst = &mut table[pair_index(n, i, j)];
            dst[..self.dim].clone_from_slice(src);
        }
        let mut out = Algebra::new(n, self.field, table).unwrap();
        out.name = self.name.clone();
        out
    }

    /// Reduce rational (or Gaussian) structure constants mod p.
    pub fn reduce_mod(&self, p: u64, sqrt_m1: Option<u64>) -> Result<Algebra> {
        let table = self
            .table
            .iter()
            .map(|out| {
                out.iter()
                    .map(|s| s.reduce_mod(p, sqrt_m1))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut a = Algebra::new(self.dim, Field::Fp(p), table)?;
        a.name = self.name.clone();
        Ok(a)
    }

    /// Embed Q structure constants into Q(i).
    pub fn to_qi(&self) -> Result<Algebra> {
        let table = self
            .table
            .iter()
            .map(|out| out.iter().map(|s| s.to_qi()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut a = Algebra::new(self.dim, Field::Qi, table)?;
        a.name = self.name.clone();
        Ok(a)
    }

    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(self.field); self.dim];
        v[k] = Scalar::one(self.field);
        v
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let (derived, lower_central) = self.series_dims();
        let mut ad_ranks: Vec<usize> = (0..self.dim).map(|i| self.ad_matrix(i).rank()).collect();
        ad_ranks.sort_unstable();
        Fingerprint {
            dim: self.dim,
            ann_dim: self.annihilator().dim(),
            derived,
            lower_central,
            der_dim: self.derivation_dim(),
            trace_form: self.trace_form_class(),
            ad_ranks,
        }
    }

    /// The trace covector t with t_k = tr(ad_{e_k}) and the Gram matrix
    /// Q_{kl} = tr(ad_{e_k} ad_{e_l}).
    pub fn trace_forms(&self) -> (Vec<Scalar>, Matrix) {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad_matrix(i)).collect();
        let t: Vec<Scalar> = ads.iter().map(Matrix::trace).collect();
        let mut q = Matrix::zero(self.dim, self.dim, self.field);
        for k in 0..self.dim {
            for l in k..self.dim {
                let tr = (&ads[k] * &ads[l]).trace();
                q[(k, l)] = tr.clone();
                q[(l, k)] = tr;
            }
        }
        (t, q)
    }

    /// Relation between the rank-one form tr(ad_x)^2 and the trace form
    /// tr(ad_x^2). Both transform by the same congruence under isomorphism,
    /// so the class below is an isomorphism invariant, stable under field
    /// extension.
    pub fn trace_form_class(&self) -> TraceFormClass {
        let (t, q) = self.trace_forms();
        // Gram matrix of tr(ad_x)^2 is the outer product t t^T
        let mut gt = Matrix::zero(self.dim, self.dim, self.field);
        for k in 0..self.dim {
            for l in 0..self.dim {
                gt[(k, l)] = &t[k] * &t[l];
            }
        }
        if gt.is_zero() {
            return TraceFormClass::SquareZero { q_rank: q.rank() };
        }
        // find a nonzero reference entry of gt
        let (rk, rl) = pairs(self.dim)
            .chain((0..self.dim).map(|k| (k, k)))
            .find(|&(k, l)| !gt[(k, l)].is_zero())
            .map(|(k, l)| (k, l))
            .unwrap();
        let c = q[(rk, rl)].try_div(&gt[(rk, rl)]).unwrap();
        let proportional = (0..self.dim).all(|k| {
            (0..self.dim).all(|l| q[(k, l)] == &c * &gt[(k, l)])
        });
        if proportional {
            TraceFormClass::Proportional(c)
        } else {
            TraceFormClass::NotProportional { q_rank: q.rank() }
        }
    }
}

/// Invariant relation between tr(ad_x)^2 and tr(ad_x^2) as quadratic forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceFormClass {
    /// tr(ad_x) vanishes identically; carries the rank of tr(ad_x^2).
    SquareZero { q_rank: usize },
    /// tr(ad_x^2) = c * tr(ad_x)^2 identically.
    Proportional(Scalar),
    /// The two forms are independent; carries the rank of tr(ad_x^2).
    NotProportional { q_rank: usize },
}

impl TraceFormClass {
    /// Compare across possibly different (but compatible) base fields by
    /// embedding Q into Q(i).
    pub fn invariant_eq(&self, other: &TraceFormClass) -> bool {
        use TraceFormClass::*;
        match (self, other) {
            (Proportional(a), Proportional(b)) => {
                if a.field() == b.field() {
                    a == b
                } else {
                    match (a.to_qi(), b.to_qi()) {
                        (Ok(x), Ok(y)) => x == y,
                        _ => false,
                    }
                }
            }
            (a, b) => a == b,
        }
    }
}

/// Isomorphism-invariant summary of an algebra. All entries except
/// `ad_ranks` are matrix ranks over the ground field, hence stable under
/// field extension; `ad_ranks` is basis-dependent and advisory only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub ann_dim: usize,
    pub derived: Vec<usize>,
    pub lower_central: Vec<usize>,
    pub der_dim: usize,
    pub trace_form: TraceFormClass,
    pub ad_ranks: Vec<usize>,
}

impl Fingerprint {
    /// Equality on the extension-stable entries only.
    pub fn stable_eq(&self, other: &Fingerprint) -> bool {
        self.stable_difference(other).is_none()
    }

    /// Compact one-line rendering for reports.
    pub fn summary(&self) -> String {
        format!(
            "dim={} ann={} derived={:?} lower_central={:?} der={} trace_form={:?} ad_ranks={:?}",
            self.dim,
            self.ann_dim,
            self.derived,
            self.lower_central,
            self.der_dim,
            self.trace_form,
            self.ad_ranks
        )
    }

    /// First extension-stable entry that differs, by name, with both values.
    pub fn stable_difference(&self, other: &Fingerprint) -> Option<(String, String, String)> {
        if self.dim != other.dim {
            return Some(("dim".into(), self.dim.to_string(), other.dim.to_string()));
        }
        if self.ann_dim != other.ann_dim {
            return Some((
                "dim Ann".into(),
                self.ann_dim.to_string(),
                other.ann_dim.to_string(),
            ));
        }
        if self.derived != other.derived {
            return Some((
                "derived series dims".into(),
                format!("{:?}", self.derived),
                format!("{:?}", other.derived),
            ));
        }
        if self.lower_central != other.lower_central {
            return Some((
                "lower central dims".into(),
                format!("{:?}", self.lower_central),
                format!("{:?}", other.lower_central),
            ));
        }
        if self.der_dim != other.der_dim {
            return Some((
                "dim Der".into(),
                self.der_dim.to_string(),
                other.der_dim.to_string(),
            ));
        }
        if !self.trace_form.invariant_eq(&other.trace_form) {
            return Some((
                "trace-form class".into(),
                format!("{:?}", self.trace_form),
                format!("{:?}", other.trace_form),
            ));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{table1, Table1Name};
    use crate::scalar::{Field, Scalar};

    fn int_matrix(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v, field)).collect())
            .collect();
        Matrix::from_rows(field, cols, &data).unwrap()
    }

    #[test]
    fn pairs_are_lex_ordered() {
        let got: Vec<_> = pairs(4).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn fingerprint_is_basis_independent() {
        let field = Field::Q;
        let alpha = Scalar::from_int(2, field);
        let a = table1(Table1Name::G3, Some(&alpha), field).unwrap();
        let p = int_matrix(field, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        assert!(p.inverse().is_ok());
        let b = a.change_of_basis(&p).unwrap();
        // ad_ranks is basis-dependent and advisory; the stable entries
        // are the ones distinguish() may cite
        assert!(a.fingerprint().stable_eq(&b.fingerprint()));
    }

    #[test]
    fn table1_annihilator_dims() {
        for (name, ann) in Table1Name::ALL.into_iter().zip([3, 1, 0, 0, 0, 0, 0, 0]) {
            let alpha = name
                .is_parametric()
                .then(|| Scalar::from_int(2, Field::Q));
            let a = table1(name, alpha.as_ref(), Field::Q).unwrap();
            assert_eq!(a.annihilator().dim(), ann, "{:?}", name);
        }
    }
}
