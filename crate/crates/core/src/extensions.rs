//! Central extensions: building A_θ from a cocycle tuple, the annihilator
//! formula, the decomposition of an algebra with nonzero annihilator back
//! into a base + cocycle pair, and lifting base isomorphisms to extension
//! isomorphisms.

use crate::algebra::{pairs, Algebra};
use crate::cohomology::{h2, Cocycle, CocycleTuple, CohomologySpace};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// A central extension A_θ of `base` by an s-dimensional space, with the
/// cocycle tuple that produced it. Basis order: the n base vectors first,
/// then the s central ones.
#[derive(Debug, Clone)]
pub struct Extension {
    pub base: Algebra,
    pub theta: CocycleTuple,
    pub total: Algebra,
}

/// [x + v, y + w] = [x, y] + Σ_t θ_t(x, y) f_t on A ⊕ V.
pub fn central_extension(base: &Algebra, theta: &CocycleTuple, name: &str) -> Result<Extension> {
    let n = base.dim();
    let s = theta.s();
    if s == 0 {
        return Err(Error::Parameter("empty cocycle tuple".into()));
    }
    for c in theta.components() {
        if c.n() != n || c.field() != base.field() {
            return Err(Error::DimMismatch("cocycle does not match base".into()));
        }
    }
    let m = n + s;
    let field = base.field();
    let zero = Scalar::zero(field);
    let mut table = Vec::new();
    for (i, j) in pairs(m) {
        let mut out = vec![zero.clone(); m];
        if j < n {
            let prod = base.bracket_basis(i, j);
            for k in 0..n {
                out[k] = prod[k].clone();
            }
            for (t, c) in theta.components().iter().enumerate() {
                out[n + t] = c.coeff(i, j);
            }
        }
        // pairs touching the adjoined central part multiply to zero
        table.push(out);
    }
    let total = Algebra::new(m, field, table)?.with_name(name);
    Ok(Extension {
        base: base.clone(),
        theta: theta.clone(),
        total,
    })
}

/// Ann(A_θ) = (rad θ ∩ Ann A) ⊕ V, checked as an exact subspace identity
/// inside the extension.
pub fn check_ann_formula(ext: &Extension) -> Result<bool> {
    let n = ext.base.dim();
    let s = ext.theta.s();
    let m = n + s;
    let field = ext.total.field();

    let core = ext.theta.radical(n, field).intersect(&ext.base.annihilator())?;
    // embed core into the extension and adjoin V
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..core.dim() {
        let mut v = vec![Scalar::zero(field); m];
        for c in 0..n {
            v[c] = core.basis()[(r, c)].clone();
        }
        vecs.push(v);
    }
    for t in 0..s {
        let mut v = vec![Scalar::zero(field); m];
        v[n + t] = Scalar::one(field);
        vecs.push(v);
    }
    let expected = Subspace::from_vectors(m, field, &vecs)?;
    let actual = ext.total.annihilator();
    Ok(expected == actual)
}

/// True when Ann(A) contains a direct complement of A² ∩ Ann(A) inside
/// Ann(A) that is nonzero, i.e. Ann(A) is not contained in A². Extensions
/// with such a component split off a trivial summand.
pub fn has_annihilator_component(a: &Algebra) -> Result<bool> {
    let ann = a.annihilator();
    let full = Subspace::full(a.dim(), a.field());
    let sq = a.product_space(&full, &full);
    let inter = ann.intersect(&sq)?;
    Ok(inter.dim() < ann.dim())
}

/// An algebra with nonzero annihilator, rewritten as a central extension:
/// base A/Ann(A), cocycle tuple, and the change of basis that exhibits the
/// split (annihilator vectors moved last).
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub base: Algebra,
    pub theta: CocycleTuple,
    /// reorder[new] as columns: A in the permuted basis = change_of_basis(reorder)
    pub reorder: Matrix,
    pub ann_dim: usize,
}

/// Rewrite A with Ann(A) ≠ 0 as a central extension of A/Ann(A).
///
/// Deterministic basis choice: the annihilator in RREF supplies the last
/// `s` vectors; the standard vectors at the non-pivot columns of that RREF
/// supply the complement, in index order.
pub fn decompose(a: &Algebra) -> Result<Decomposition> {
    let m = a.dim();
    let field = a.field();
    let ann = a.annihilator();
    let s = ann.dim();
    if s == 0 {
        return Err(Error::ZeroAnnihilator);
    }
    let n = m - s;

    let pivot_cols: Vec<usize> = (0..s)
        .map(|r| {
            (0..m)
                .find(|&c| !ann.basis()[(r, c)].is_zero())
                .expect("RREF row has a pivot")
        })
        .collect();
    let free_cols: Vec<usize> = (0..m).filter(|c| !pivot_cols.contains(c)).collect();
    debug_assert_eq!(free_cols.len(), n);

    // columns of the change of basis: complement vectors, then ann basis
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for &c in &free_cols {
        let mut v = vec![Scalar::zero(field); m];
        v[c] = Scalar::one(field);
        cols.push(v);
    }
    for r in 0..s {
        cols.push((0..m).map(|c| ann.basis()[(r, c)].clone()).collect());
    }
    let reorder = Matrix::from_cols(m, field, &cols)?;
    let permuted = a.change_of_basis(&reorder)?;

    // base: the first n coordinates of products among the first n vectors
    let mut base_table = Vec::new();
    let mut theta_comps = vec![Vec::new(); s];
    for (i, j) in pairs(n) {
        let prod = permuted.bracket_basis(i, j);
        base_table.push(prod[..n].to_vec());
        for t in 0..s {
            theta_comps[t].push(prod[n + t].clone());
        }
    }
    // sanity: products with the trailing block vanish
    for (i, j) in pairs(m) {
        if j >= n {
            let prod = permuted.bracket_basis(i, j);
            if prod.iter().any(|x| !x.is_zero()) {
                return Err(Error::NoLift(
                    "annihilator block fails to act trivially".into(),
                ));
            }
        }
    }

    let base = Algebra::new(n, field, base_table)?
        .with_name(format!("{}/ann", a.name().unwrap_or("A")));
    let theta = CocycleTuple::new(
        theta_comps
            .into_iter()
            .map(|coeffs| Cocycle::new(n, field, coeffs))
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok(Decomposition {
        base,
        theta,
        reorder,
        ann_dim: s,
    })
}

/// Lift a base automorphism/isomorphism to the extensions.
///
/// Given φ: A → A with (φθ₂)_t ≡ Σ_u C_tu θ₁_u mod B² for an invertible C,
/// produce Ψ = [[φ, 0], [f, C]] with Ψ an isomorphism A_{θ₁} → A_{θ₂};
/// the correction row block f solves δf_t = (φθ₂)_t − Σ_u C_tu θ₁_u.
pub fn lift_iso(
    ext1: &Extension,
    ext2: &Extension,
    phi: &Matrix,
    c: &Matrix,
) -> Result<Matrix> {
    let n = ext1.base.dim();
    let s = ext1.theta.s();
    if ext2.base.dim() != n || ext2.theta.s() != s {
        return Err(Error::DimMismatch("extension shapes differ".into()));
    }
    let field = ext1.base.field();
    if !c.is_invertible() {
        return Err(Error::NotInvertible("central block must be invertible".into()));
    }

    let cb = CohomologySpace::coboundary_matrix(&ext1.base); // z2 x n, columns δe_k*
    let mut f_rows: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..s {
        let pulled = crate::aut::act_on_cocycle(phi, &ext2.theta.components()[t]);
        let mut rhs = pulled.coeffs().to_vec();
        for u in 0..s {
            let cu = c[(t, u)].clone();
            for (pos, val) in ext1.theta.components()[u].coeffs().iter().enumerate() {
                rhs[pos] = rhs[pos].clone() - cu.clone() * val.clone();
            }
        }
        let f_t = cb
            .solve(&rhs)
            .ok_or_else(|| Error::NoLift(format!("component {} is not a coboundary", t)))?;
        f_rows.push(f_t);
    }

    let m = n + s;
    let mut psi = Matrix::zero(m, m, field);
    for i in 0..n {
        for j in 0..n {
            psi[(i, j)] = phi[(i, j)].clone();
        }
    }
    for t in 0..s {
        for k in 0..n {
            psi[(n + t, k)] = f_rows[t][k].clone();
        }
        for u in 0..s {
            psi[(n + t, n + u)] = c[(t, u)].clone();
        }
    }
    // always post-verify: the construction is only as good as its inputs
    if !crate::iso::verify_iso(&ext1.total, &ext2.total, &psi)? {
        return Err(Error::NoLift("lifted map failed verification".into()));
    }
    Ok(psi)
}

/// H² projection of a decomposition's cocycle tuple; useful for orbit
/// comparisons against a reference extension of the same base.
pub fn class_coords(coh: &CohomologySpace, theta: &CocycleTuple) -> Result<Vec<Vec<Scalar>>> {
    theta
        .components()
        .iter()
        .map(|c| coh.project(c))
        .collect()
}

/// Cohomology of the base of a decomposition.
pub fn base_cohomology(dec: &Decomposition) -> CohomologySpace {
    h2(&dec.base)
}
