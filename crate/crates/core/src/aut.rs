//! Automorphism groups over finite fields, their action on cocycles and on
//! H² classes, Grassmannian enumeration and orbit partitioning — the first
//! two steps of the classification procedure.

use std::collections::HashMap;

use crate::algebra::{pair_count, pairs, Algebra};
use crate::cohomology::{h2, Cocycle, CocycleTuple, CohomologySpace, in_ts};
use crate::error::{Error, Result};
use crate::fp::{
    self, encode_rows, grassmannian, rref_rows, search_bracket_maps, FpAlgebra, FpMat, FpVec,
    NMAX,
};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// Exhaustive automorphism list of an algebra over a finite field.
#[derive(Debug, Clone)]
pub struct AutSet {
    field: Field,
    elements: Vec<Matrix>,
    order: u64,
}

impl AutSet {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

const AUT_DIM_CAP: usize = 4;
const AUT_NODE_BUDGET: u64 = 200_000_000;

/// All bracket-preserving invertible matrices, by backtracking over images
/// of basis vectors with bracket-consistency pruning. Guarded to finite
/// fields and n <= 4.
pub fn automorphisms(a: &Algebra) -> Result<AutSet> {
    if !a.field().is_finite() {
        return Err(Error::FiniteFieldRequired("automorphisms", a.field()));
    }
    if a.dim() > AUT_DIM_CAP {
        return Err(Error::DimMismatch(format!(
            "automorphism enumeration is guarded to n <= {}",
            AUT_DIM_CAP
        )));
    }
    let mut elements = Vec::new();
    for_each_automorphism(a, |m| {
        elements.push(m.clone());
        true
    })?;
    Ok(AutSet {
        field: a.field(),
        order: elements.len() as u64,
        elements,
    })
}

/// Stream every automorphism without retaining the list; the callback
/// returns false to stop. Usable beyond the AutSet size guard (the large
/// abelian groups are streamed, never stored).
pub fn for_each_automorphism(
    a: &Algebra,
    mut f: impl FnMut(&Matrix) -> bool,
) -> Result<()> {
    let fa = FpAlgebra::from_algebra(a)?;
    let (n, p) = (fa.n, fa.p);
    search_bracket_maps(&fa, &fa, AUT_NODE_BUDGET, &mut |m: &FpMat| {
        f(&fp::to_matrix(m, n, p))
    })?;
    Ok(())
}

/// φθ(x, y) = θ(φx, φy): coefficient matrix transformed as φᵀ Θ φ.
pub fn act_on_cocycle(phi: &Matrix, theta: &Cocycle) -> Cocycle {
    let m = theta.to_matrix();
    let t = &(&phi.transpose() * &m) * phi;
    Cocycle::from_matrix(&t)
}

/// Action on H² coordinates: act on the lifted representative, reproject.
/// Well-defined because B² is stable under the automorphism action; `phi`
/// is checked to be an automorphism.
pub fn act_on_class(
    a: &Algebra,
    coh: &CohomologySpace,
    phi: &Matrix,
    coords: &[Scalar],
) -> Result<Vec<Scalar>> {
    if !is_automorphism(a, phi)? {
        return Err(Error::NotAutomorphism);
    }
    let theta = coh.lift(coords);
    coh.project(&act_on_cocycle(phi, &theta))
}

pub fn is_automorphism(a: &Algebra, phi: &Matrix) -> Result<bool> {
    if phi.rows() != a.dim() || phi.cols() != a.dim() {
        return Err(Error::DimMismatch("automorphism candidate size".into()));
    }
    if !phi.is_invertible() {
        return Ok(false);
    }
    for (i, j) in pairs(a.dim()) {
        let lhs = phi.mul_vec(&a.bracket_basis(i, j));
        let rhs = a.bracket(&phi.col(i), &phi.col(j))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One Aut-orbit on T_s: canonical representative (lexicographically
/// minimal RREF coordinate matrix), all member points, and for each member
/// a witness automorphism carrying the representative onto it.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub rep: Subspace,
    pub members: Vec<Subspace>,
    /// witnesses[k] maps rep to members[k] under the class action.
    pub witnesses: Vec<Matrix>,
}

/// Result of orbit partitioning: T_s size, Grassmannian size and orbits in
/// canonical (lex-min representative) order.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    pub grassmannian_size: u128,
    pub ts_size: usize,
    pub aut_order: u64,
    pub orbits: Vec<Orbit>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // merge toward the smaller index so canonical reps stay minimal
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Enumerate all s-subspaces of H²(A) over F_p, filter by T_s membership
/// and partition into Aut(A)-orbits. Exhaustive over the automorphism
/// group (streamed, not stored).
pub fn orbit_reps(a: &Algebra, coh: &CohomologySpace, s: usize) -> Result<OrbitPartition> {
    let Field::Fp(p) = a.field() else {
        return Err(Error::FiniteFieldRequired("orbit enumeration", a.field()));
    };
    let h = coh.h2_dim();
    let fa = FpAlgebra::from_algebra(a)?;
    let n = fa.n;

    if s == 0 || s > h {
        return Ok(OrbitPartition {
            grassmannian_size: 0,
            ts_size: 0,
            aut_order: 0,
            orbits: Vec::new(),
        });
    }

    // canonical point list, lexicographic
    let points = grassmannian(h, s, p);
    let grassmannian_size = points.len() as u128;
    debug_assert_eq!(
        grassmannian_size,
        fp::gaussian_binomial(h as u64, s as u64, p)
    );
    let index: HashMap<u64, usize> = points
        .iter()
        .enumerate()
        .map(|(k, rows)| (encode_rows(rows, h, p), k))
        .collect();

    // T_s filter through the generic cohomology layer
    let in_ts_flags: Vec<bool> = points
        .iter()
        .map(|rows| {
            let tuple = tuple_from_rows(coh, rows, s);
            in_ts(a, coh, &tuple)
        })
        .collect::<Result<Vec<_>>>()?;
    let ts_size = in_ts_flags.iter().filter(|&&b| b).count();

    // compact projection (h x z2) and representative matrices for the
    // per-automorphism class action
    let z2 = pair_count(n);
    let proj = compact_projection(coh, h, z2)?;
    let rep_mats: Vec<FpMat> = coh
        .reps()
        .iter()
        .map(|c| compact_alternating(c, n))
        .collect();

    let mut uf = UnionFind::new(points.len());
    // spanning forest of the orbit graph: (k, t, phi) with action(phi, k) = t,
    // recorded only when the edge merges two components
    let mut edges: Vec<(usize, usize, FpMat)> = Vec::new();
    let mut aut_order = 0u64;

    search_bracket_maps(&fa, &fa, AUT_NODE_BUDGET, &mut |phi: &FpMat| {
        aut_order += 1;
        let action = class_action_matrix(phi, &rep_mats, &proj, n, h, z2, p);
        for (k, rows) in points.iter().enumerate() {
            if !in_ts_flags[k] {
                continue;
            }
            let target = apply_action(&action, rows, s, h, p);
            let t = index[&encode_rows(&target, h, p)];
            debug_assert!(in_ts_flags[t], "T_s must be stable under the action");
            if t != k && uf.union(k, t) {
                edges.push((k, t, *phi));
            }
        }
        true
    })?;

    // group members per root, canonical order
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..points.len() {
        if in_ts_flags[k] {
            let r = uf.find(k);
            groups.entry(r).or_default().push(k);
        }
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();

    // adjacency over the spanning forest, traversable in both directions
    let mut adj: Vec<Vec<(usize, FpMat)>> = vec![Vec::new(); points.len()];
    for (k, t, phi) in &edges {
        adj[*k].push((*t, *phi));
        adj[*t].push((*k, fp_inverse(phi, n, p)?));
    }

    let field = Field::Fp(p);
    let mut orbits = Vec::with_capacity(roots.len());
    for root in roots {
        let mut members = groups.remove(&root).unwrap();
        members.sort_unstable();
        let rep_idx = members[0];
        // BFS from the representative; witness[v] maps rep to v, so a step
        // along (u, v, phi) composes as witness[u] * phi (right action:
        // act(M1 M2, P) = act(M2, act(M1, P)))
        let mut witness_of: HashMap<usize, FpMat> = HashMap::new();
        let mut id = [[0u64; NMAX]; NMAX];
        for i in 0..n {
            id[i][i] = 1;
        }
        witness_of.insert(rep_idx, id);
        let mut queue = std::collections::VecDeque::from([rep_idx]);
        while let Some(u) = queue.pop_front() {
            let wu = witness_of[&u];
            for (v, phi) in &adj[u] {
                if !witness_of.contains_key(v) {
                    witness_of.insert(*v, matmul(&wu, phi, n, p));
                    queue.push_back(*v);
                }
            }
        }

        let mut witnesses = Vec::with_capacity(members.len());
        let mut member_spaces = Vec::with_capacity(members.len());
        for &m in &members {
            let w = witness_of.get(&m).ok_or_else(|| {
                Error::NoLift(format!("missing orbit witness for point {}", m))
            })?;
            witnesses.push(fp::to_matrix(w, n, p));
            member_spaces.push(subspace_from_rows(&points[m], s, h, field));
        }
        orbits.push(Orbit {
            rep: subspace_from_rows(&points[rep_idx], s, h, field),
            members: member_spaces,
            witnesses,
        });
    }
    Ok(OrbitPartition {
        grassmannian_size,
        ts_size,
        aut_order,
        orbits,
    })
}

/// Lift the rows of an H²-coordinate matrix to a cocycle tuple.
pub fn tuple_from_rows(coh: &CohomologySpace, rows: &[FpVec], s: usize) -> CocycleTuple {
    let field = coh.field();
    let comps: Vec<Cocycle> = (0..s)
        .map(|r| {
            let coords: Vec<Scalar> = (0..coh.h2_dim())
                .map(|c| match field {
                    Field::Fp(p) => Scalar::Fp { val: rows[r][c], p },
                    _ => unreachable!("orbit machinery is finite-field only"),
                })
                .collect();
            coh.lift(&coords)
        })
        .collect();
    CocycleTuple::new(comps).unwrap()
}

pub fn subspace_from_rows(rows: &[FpVec], s: usize, h: usize, field: Field) -> Subspace {
    let Field::Fp(p) = field else { unreachable!() };
    let vecs: Vec<Vec<Scalar>> = rows[..s]
        .iter()
        .map(|row| {
            (0..h)
                .map(|c| Scalar::Fp { val: row[c], p })
                .collect()
        })
        .collect();
    Subspace::from_vectors(h, field, &vecs).unwrap()
}

/// Recover the h x z2 projection matrix entrywise by projecting unit Δs.
fn compact_projection(coh: &CohomologySpace, h: usize, z2: usize) -> Result<Vec<Vec<u64>>> {
    let mut out = vec![vec![0u64; z2]; h];
    for r in 0..z2 {
        let unit = unit_cocycle(coh, r);
        let coords = coh.project(&unit)?;
        for t in 0..h {
            out[t][r] = coords[t].as_fp().unwrap().0;
        }
    }
    Ok(out)
}

fn unit_cocycle(coh: &CohomologySpace, pos: usize) -> Cocycle {
    let n = coh.n();
    let (i, j) = pairs(n).nth(pos).unwrap();
    Cocycle::delta(n, i, j, coh.field())
}

fn compact_alternating(c: &Cocycle, n: usize) -> FpMat {
    let m = c.to_matrix();
    let mut out = [[0u64; NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = m[(i, j)].as_fp().unwrap().0;
        }
    }
    out
}

/// h x h matrix of the linear action of one automorphism on H²
/// coordinates (columns = images of the representative classes).
fn class_action_matrix(
    phi: &FpMat,
    rep_mats: &[FpMat],
    proj: &[Vec<u64>],
    n: usize,
    h: usize,
    z2: usize,
    p: u64,
) -> Vec<FpVec> {
    let mut action = vec![[0u64; NMAX]; h];
    for (t, theta) in rep_mats.iter().enumerate() {
        // phi^T theta phi
        let mut tmp = [[0u64; NMAX]; NMAX];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + phi[k][i] * theta[k][j]) % p;
                }
                tmp[i][j] = acc;
            }
        }
        let mut res = [[0u64; NMAX]; NMAX];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + tmp[i][k] * phi[k][j]) % p;
                }
                res[i][j] = acc;
            }
        }
        // flatten upper triangle to Δ coordinates, project to H²
        let mut flat = vec![0u64; z2];
        for (pos, (i, j)) in pairs(n).enumerate() {
            flat[pos] = res[i][j];
        }
        for row in 0..h {
            let mut acc = 0u64;
            for c in 0..z2 {
                acc = (acc + proj[row][c] * flat[c]) % p;
            }
            action[row][t] = acc;
        }
    }
    action
}

/// Apply the class action to a subspace point (rows of H² coordinates) and
/// canonicalize.
fn apply_action(action: &[FpVec], rows: &[FpVec], s: usize, h: usize, p: u64) -> Vec<FpVec> {
    let mut out = vec![[0u64; NMAX]; s];
    for r in 0..s {
        for i in 0..h {
            let mut acc = 0u64;
            for j in 0..h {
                acc = (acc + action[i][j] * rows[r][j]) % p;
            }
            out[r][i] = acc;
        }
    }
    let rank = rref_rows(&mut out, h, p);
    debug_assert_eq!(rank, s, "class action must be invertible");
    out
}

/// Invert an n x n matrix over F_p by Gauss-Jordan on [M | I].
fn fp_inverse(m: &FpMat, n: usize, p: u64) -> Result<FpMat> {
    let mut aug = [[0u64; 2 * NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            aug[i][j] = m[i][j] % p;
        }
        aug[i][n + i] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0).ok_or_else(|| {
            Error::NotInvertible("singular matrix in orbit witness inversion".into())
        })?;
        aug.swap(col, pivot);
        let inv = fp::inv_mod(aug[col][col], p).expect("pivot invertible");
        for j in 0..2 * n {
            aug[col][j] = aug[col][j] * inv % p;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let f = aug[r][col];
                for j in 0..2 * n {
                    aug[r][j] = (aug[r][j] + (p - f) * aug[col][j]) % p;
                }
            }
        }
    }
    let mut out = [[0u64; NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = aug[i][n + j];
        }
    }
    Ok(out)
}

fn matmul(a: &FpMat, b: &FpMat, n: usize, p: u64) -> FpMat {
    let mut out = [[0u64; NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc = (acc + a[i][k] * b[k][j]) % p;
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Convenience wrapper: cohomology plus orbit partition for one (A, s).
pub fn orbits_for(a: &Algebra, s: usize) -> Result<(CohomologySpace, OrbitPartition)> {
    let coh = h2(a);
    let part = orbit_reps(a, &coh, s)?;
    Ok((coh, part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{table1, Table1Name};
    use crate::cohomology::h2;
    use crate::scalar::{Field, Scalar};

    #[test]
    fn identity_is_an_automorphism_and_shear_is_not() {
        let field = Field::Fp(3);
        let a = table1(Table1Name::G1, None, field).unwrap();
        let id = Matrix::identity(3, field);
        assert!(is_automorphism(&a, &id).unwrap());
        let mut swap = Matrix::zero(3, 3, field);
        swap[(0, 1)] = Scalar::from_int(1, field);
        swap[(1, 0)] = Scalar::from_int(1, field);
        swap[(2, 2)] = Scalar::from_int(1, field);
        assert!(!is_automorphism(&a, &swap).unwrap());
    }

    #[test]
    fn cocycle_action_composes_as_right_action() {
        let field = Field::Fp(5);
        let a = table1(Table1Name::G2, None, field).unwrap();
        let auts = automorphisms(&a).unwrap();
        let theta = crate::cohomology::Cocycle::delta(3, 0, 1, field);
        let phi = &auts.elements()[1];
        let psi = &auts.elements()[2];
        let composed = act_on_cocycle(&(phi * psi), &theta);
        let stepwise = act_on_cocycle(psi, &act_on_cocycle(phi, &theta));
        assert_eq!(composed.coeffs(), stepwise.coeffs());
    }

    #[test]
    fn orbit_sizes_partition_ts() {
        let field = Field::Fp(3);
        let a = table1(Table1Name::G3, Some(&Scalar::zero(field)), field).unwrap();
        let coh = h2(&a);
        let part = orbit_reps(&a, &coh, 1).unwrap();
        let total: usize = part.orbits.iter().map(|o| o.members.len()).sum();
        assert_eq!(total, part.ts_size);
        for orbit in &part.orbits {
            // orbit sizes divide the automorphism group order
            assert_eq!(part.aut_order % orbit.members.len() as u64, 0);
        }
    }
}
