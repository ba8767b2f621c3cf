//! Compact prime-field kernels for the hot paths: bracket-preserving
//! matrix search (isomorphisms / automorphisms) and small RREF over F_p,
//! all on fixed-size u64 arrays.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// Hard cap on the dimension handled by the compact kernels.
pub const NMAX: usize = 6;

pub type FpVec = [u64; NMAX];
pub type FpMat = [FpVec; NMAX];

#[inline]
fn mulp(a: u64, b: u64, p: u64) -> u64 {
    a * b % p // residues < p <= small primes; no overflow for p < 2^31
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Fermat; p is prime and small
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulp(acc, base, p);
        }
        base = mulp(base, base, p);
        e >>= 1;
    }
    Some(acc)
}

/// Structure constants in dense signed form: c[i][j][k] for all i, j.
#[derive(Debug, Clone)]
pub struct FpAlgebra {
    pub n: usize,
    pub p: u64,
    pub c: Vec<Vec<FpVec>>,
}

impl FpAlgebra {
    pub fn from_algebra(a: &Algebra) -> Result<FpAlgebra> {
        let Field::Fp(p) = a.field() else {
            return Err(Error::FiniteFieldRequired("compact kernel", a.field()));
        };
        let n = a.dim();
        if n > NMAX {
            return Err(Error::DimMismatch(format!("dim {} exceeds kernel cap {}", n, NMAX)));
        }
        let mut c = vec![vec![[0u64; NMAX]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let out = a.bracket_basis(i, j);
                for k in 0..n {
                    c[i][j][k] = out[k].as_fp().unwrap().0;
                }
            }
        }
        Ok(FpAlgebra { n, p, c })
    }

    /// [x, y] for coordinate vectors.
    pub fn bracket(&self, x: &FpVec, y: &FpVec) -> FpVec {
        let p = self.p;
        let mut out = [0u64; NMAX];
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if y[j] == 0 || i == j {
                    continue;
                }
                let w = mulp(x[i], y[j], p);
                let cij = &self.c[i][j];
                for k in 0..self.n {
                    if cij[k] != 0 {
                        out[k] = (out[k] + mulp(w, cij[k], p)) % p;
                    }
                }
            }
        }
        out
    }
}

/// Row-echelon tracker for linear independence of up to NMAX vectors.
#[derive(Debug, Clone, Copy)]
struct Echelon {
    rows: FpMat,
    pivots: [usize; NMAX],
    nrows: usize,
}

impl Echelon {
    fn new() -> Echelon {
        Echelon {
            rows: [[0; NMAX]; NMAX],
            pivots: [0; NMAX],
            nrows: 0,
        }
    }

    /// Insert a vector; false when it is dependent on the current rows.
    fn insert(&mut self, v: &FpVec, n: usize, p: u64) -> bool {
        let mut v = *v;
        for r in 0..self.nrows {
            let c = self.pivots[r];
            if v[c] != 0 {
                let f = v[c];
                for k in 0..n {
                    v[k] = (v[k] + p - mulp(f, self.rows[r][k], p)) % p;
                }
            }
        }
        let Some(c) = (0..n).find(|&k| v[k] != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], p).unwrap();
        for k in 0..n {
            v[k] = mulp(v[k], inv, p);
        }
        self.rows[self.nrows] = v;
        self.pivots[self.nrows] = c;
        self.nrows += 1;
        true
    }
}

#[derive(Debug, Clone, Copy)]
struct SearchState {
    cols: FpMat,
    assigned: [bool; NMAX],
    nassigned: usize,
    echelon: Echelon,
    checked: u32, // bitmask over pair indices
}

pub struct SearchResult {
    /// true when the whole space was traversed (exhaustive verdicts are
    /// only valid when this is set).
    pub completed: bool,
    pub witnesses_found: u64,
    pub nodes: u64,
}

/// Backtracking search for invertible P with P[x,y]_A = [Px,Py]_B, i.e.
/// columns of P are images of A's basis vectors in B. Columns are assigned
/// in index order with forced-column propagation: a product [e_i,e_j]
/// supported on a single not-yet-assigned basis vector determines that
/// column. `on_witness` returns false to stop the traversal early.
pub fn search_bracket_maps(
    a: &FpAlgebra,
    b: &FpAlgebra,
    node_budget: u64,
    on_witness: &mut dyn FnMut(&FpMat) -> bool,
) -> Result<SearchResult> {
    if a.n != b.n || a.p != b.p {
        return Err(Error::DimMismatch("search requires equal dim and prime".into()));
    }
    let mut ctx = Ctx {
        a,
        b,
        budget: node_budget,
        nodes: 0,
        witnesses: 0,
        stopped: false,
        on_witness,
    };
    let state = SearchState {
        cols: [[0; NMAX]; NMAX],
        assigned: [false; NMAX],
        nassigned: 0,
        echelon: Echelon::new(),
        checked: 0,
    };
    let completed = ctx.descend(&state)?;
    Ok(SearchResult {
        completed: completed && !ctx.stopped,
        witnesses_found: ctx.witnesses,
        nodes: ctx.nodes,
    })
}

struct Ctx<'x> {
    a: &'x FpAlgebra,
    b: &'x FpAlgebra,
    budget: u64,
    nodes: u64,
    witnesses: u64,
    stopped: bool,
    on_witness: &'x mut dyn FnMut(&FpMat) -> bool,
}

impl Ctx<'_> {
    fn pair_bit(&self, i: usize, j: usize) -> u32 {
        1 << (i * NMAX + j)
    }

    /// Re-examine all pairs; check fully-determined ones, force columns
    /// determined by a single missing product component. Returns false on
    /// contradiction.
    fn propagate(&self, st: &mut SearchState) -> bool {
        let n = self.a.n;
        let p = self.a.p;
        loop {
            let mut progress = false;
            for i in 0..n {
                for j in i + 1..n {
                    if st.checked & self.pair_bit(i, j) != 0 {
                        continue;
                    }
                    if !st.assigned[i] || !st.assigned[j] {
                        continue;
                    }
                    let cij = &self.a.c[i][j];
                    let mut unknown = None;
                    let mut nunknown = 0;
                    for k in 0..n {
                        if cij[k] != 0 && !st.assigned[k] {
                            unknown = Some(k);
                            nunknown += 1;
                        }
                    }
                    if nunknown > 1 {
                        continue;
                    }
                    let w = self.b.bracket(&st.cols[i], &st.cols[j]);
                    let mut s = [0u64; NMAX];
                    for k in 0..n {
                        if cij[k] != 0 && st.assigned[k] {
                            for m in 0..n {
                                s[m] = (s[m] + mulp(cij[k], st.cols[k][m], p)) % p;
                            }
                        }
                    }
                    match unknown {
                        None => {
                            if w[..n] != s[..n] {
                                return false;
                            }
                        }
                        Some(k) => {
                            let inv = inv_mod(cij[k], p).unwrap();
                            let mut col = [0u64; NMAX];
                            for m in 0..n {
                                col[m] = mulp((w[m] + p - s[m]) % p, inv, p);
                            }
                            if !st.echelon.insert(&col, n, p) {
                                return false;
                            }
                            st.cols[k] = col;
                            st.assigned[k] = true;
                            st.nassigned += 1;
                        }
                    }
                    st.checked |= self.pair_bit(i, j);
                    progress = true;
                }
            }
            if !progress {
                return true;
            }
        }
    }

    /// Returns Ok(true) when the subtree was fully traversed.
    fn descend(&mut self, st: &SearchState) -> Result<bool> {
        let n = self.a.n;
        let p = self.a.p;
        if st.nassigned == n {
            self.witnesses += 1;
            let mut mat = [[0; NMAX]; NMAX];
            for j in 0..n {
                for m in 0..n {
                    mat[m][j] = st.cols[j][m];
                }
            }
            if !(self.on_witness)(&mat) {
                self.stopped = true;
            }
            return Ok(true);
        }
        let next = (0..n).find(|&j| !st.assigned[j]).unwrap();
        // odometer over candidate image vectors, ascending
        let mut cand = [0u64; NMAX];
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(format!(
                    "{} search nodes",
                    self.budget
                )));
            }
            let mut child = *st;
            if child.echelon.insert(&cand, n, p) {
                child.cols[next] = cand;
                child.assigned[next] = true;
                child.nassigned += 1;
                if self.propagate(&mut child) {
                    self.descend(&child)?;
                    if self.stopped {
                        return Ok(false);
                    }
                }
            }
            // advance odometer
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(true);
                }
                cand[k] += 1;
                if cand[k] < p {
                    break;
                }
                cand[k] = 0;
                k += 1;
            }
        }
    }
}

/// Convert a compact matrix to a generic one over F_p.
pub fn to_matrix(m: &FpMat, n: usize, p: u64) -> Matrix {
    let mut out = Matrix::zero(n, n, Field::Fp(p));
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = Scalar::Fp { val: m[i][j], p };
        }
    }
    out
}

pub fn from_matrix(m: &Matrix) -> Result<(FpMat, usize, u64)> {
    let Field::Fp(p) = m.field() else {
        return Err(Error::FiniteFieldRequired("compact kernel", m.field()));
    };
    let n = m.rows();
    if n > NMAX || m.cols() != n {
        return Err(Error::DimMismatch("compact matrix size".into()));
    }
    let mut out = [[0u64; NMAX]; NMAX];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = m[(i, j)].as_fp().unwrap().0;
        }
    }
    Ok((out, n, p))
}

/// In-place RREF of `rows` (nrows x width) over F_p; returns the rank.
pub fn rref_rows(rows: &mut [FpVec], width: usize, p: u64) -> usize {
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p).unwrap();
        for k in 0..width {
            rows[r][k] = mulp(rows[r][k], inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..width {
                    rows[i][k] = (rows[i][k] + p - mulp(f, rows[r][k], p)) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// All s-dimensional subspaces of F_p^h as canonical RREF row matrices, in
/// lexicographic order of their flattened representation.
pub fn grassmannian(h: usize, s: usize, p: u64) -> Vec<Vec<FpVec>> {
    if s > h {
        return Vec::new();
    }
    let mut out = Vec::new();
    // choose pivot columns p_0 < p_1 < ... < p_{s-1}
    let mut pivots: Vec<usize> = (0..s).collect();
    loop {
        // free positions: (row r, col c) with c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|r| {
                let pivots = pivots.clone();
                (pivots[r] + 1..h)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for idx in 0..total {
            let mut rows = vec![[0u64; NMAX]; s];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            let mut rem = idx;
            for &(r, c) in &free {
                rows[r][c] = (rem % p as u128) as u64;
                rem /= p as u128;
            }
            out.push(rows);
        }
        // next pivot combination
        let mut k = s;
        loop {
            if k == 0 {
                out.sort_by_key(|rows| encode_rows(rows, h, p));
                return out;
            }
            k -= 1;
            if pivots[k] < h - (s - k) {
                pivots[k] += 1;
                for t in k + 1..s {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Stable integer key for a canonical row matrix.
pub fn encode_rows(rows: &[FpVec], width: usize, p: u64) -> u64 {
    let mut key = 0u64;
    for row in rows {
        for &v in &row[..width] {
            key = key * p + v;
        }
    }
    key
}

/// Gaussian binomial [h choose s]_p.
pub fn gaussian_binomial(h: u64, s: u64, p: u64) -> u128 {
    if s > h {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 0..s {
        num *= (p as u128).pow((h - k) as u32) - 1;
        den *= (p as u128).pow((k + 1) as u32) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmannian_counts_match_gaussian_binomial() {
        for (h, s, p) in [(3, 1, 3), (3, 2, 3), (3, 1, 5), (3, 2, 5), (2, 1, 3), (3, 3, 5)] {
            let g = grassmannian(h, s, p);
            assert_eq!(g.len() as u128, gaussian_binomial(h as u64, s as u64, p));
            // all distinct and canonical
            let mut keys: Vec<u64> = g.iter().map(|r| encode_rows(r, h, p)).collect();
            keys.dedup();
            assert_eq!(keys.len(), g.len());
            for rows in &g {
                let mut copy = rows.clone();
                let rank = rref_rows(&mut copy, h, p);
                assert_eq!(rank, s);
                assert_eq!(&copy, rows, "not canonical");
            }
        }
    }

    #[test]
    fn inv_mod_small() {
        for p in [3u64, 5, 7] {
            for a in 1..p {
                let i = inv_mod(a, p).unwrap();
                assert_eq!(a * i % p, 1);
            }
        }
        assert!(inv_mod(0, 5).is_none());
    }
}
