//! Lifting base automorphisms to extension isomorphisms: two cocycle
//! tuples in the same Aut-orbit give isomorphic extensions, with the
//! witness assembled from the orbit data.

use extclass_core::aut::{act_on_cocycle, orbit_reps, tuple_from_rows};
use extclass_core::catalog::{table1, Table1Name};
use extclass_core::cohomology::{h2, CohomologySpace};
use extclass_core::extensions::{central_extension, lift_iso, Extension};
use extclass_core::iso::verify_iso;
use extclass_core::matrix::Matrix;
use extclass_core::scalar::{Field, Scalar};
use extclass_core::subspace::Subspace;

fn tuple_of(coh: &CohomologySpace, space: &Subspace) -> extclass_core::cohomology::CocycleTuple {
    let rows: Vec<[u64; extclass_core::fp::NMAX]> = (0..space.dim())
        .map(|r| {
            let mut row = [0u64; extclass_core::fp::NMAX];
            for c in 0..coh.h2_dim() {
                row[c] = space.basis()[(r, c)].as_fp().unwrap().0;
            }
            row
        })
        .collect();
    tuple_from_rows(coh, &rows, space.dim())
}

/// Solve C with coords(phi . theta_rep_t) = sum_u C[t][u] * member-row_u.
fn mixing_matrix(
    coh: &CohomologySpace,
    phi: &Matrix,
    rep: &Extension,
    member_space: &Subspace,
) -> Matrix {
    let field = coh.field();
    let s = rep.theta.s();
    let basis_t = {
        // member coordinate rows as columns, for solving
        let rows: Vec<Vec<Scalar>> = (0..member_space.dim())
            .map(|r| {
                (0..coh.h2_dim())
                    .map(|c| member_space.basis()[(r, c)].clone())
                    .collect()
            })
            .collect();
        Matrix::from_cols(coh.h2_dim(), field, &rows).unwrap()
    };
    let mut c = Matrix::zero(s, s, field);
    for t in 0..s {
        let moved = act_on_cocycle(phi, &rep.theta.components()[t]);
        let coords = coh.project(&moved).unwrap();
        let sol = basis_t.solve(&coords).expect("same orbit point");
        for u in 0..s {
            c[(t, u)] = sol[u].clone();
        }
    }
    c
}

#[test]
fn same_orbit_members_give_isomorphic_extensions() {
    for (name, alpha, s) in [
        (Table1Name::G1, None, 1usize),
        (Table1Name::G3, Some(0i64), 1),
        (Table1Name::N, None, 2),
    ] {
        let field = Field::Fp(3);
        let base = table1(
            name,
            alpha.map(|v| Scalar::from_int(v, field)).as_ref(),
            field,
        )
        .unwrap();
        let coh = h2(&base);
        let part = orbit_reps(&base, &coh, s).unwrap();
        for orbit in &part.orbits {
            let rep_ext =
                central_extension(&base, &tuple_of(&coh, &orbit.rep), "rep").unwrap();
            for (member, phi) in orbit.members.iter().zip(&orbit.witnesses).take(4) {
                let member_ext =
                    central_extension(&base, &tuple_of(&coh, member), "member").unwrap();
                // phi carries the rep point onto the member point, so it
                // pulls the rep tuple into the member tuple's span
                let c = mixing_matrix(&coh, phi, &rep_ext, member);
                let psi = lift_iso(&member_ext, &rep_ext, phi, &c).unwrap();
                assert!(verify_iso(&member_ext.total, &rep_ext.total, &psi).unwrap());
            }
        }
    }
}
