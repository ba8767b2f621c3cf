//! Second cohomology of the 3-dimensional catalog algebras.

use extclass_core::algebra::pair_index;
use extclass_core::catalog::{table1, Table1Name};
use extclass_core::cohomology::{coboundary, h2};
use extclass_core::scalar::{Field, Scalar};

fn dim_h2(name: Table1Name, alpha: Option<i64>) -> usize {
    let a = table1(
        name,
        alpha.map(|v| Scalar::from_int(v, Field::Q)).as_ref(),
        Field::Q,
    )
    .unwrap();
    h2(&a).h2_dim()
}

#[test]
fn h2_dims_over_q() {
    assert_eq!(dim_h2(Table1Name::N, None), 3);
    assert_eq!(dim_h2(Table1Name::G1, None), 2);
    assert_eq!(dim_h2(Table1Name::G2, None), 1);
    assert_eq!(dim_h2(Table1Name::G3, Some(2)), 1);
    assert_eq!(dim_h2(Table1Name::G3, Some(0)), 2);
    assert_eq!(dim_h2(Table1Name::G4, None), 0);
    assert_eq!(dim_h2(Table1Name::A1, Some(2)), 0);
    assert_eq!(dim_h2(Table1Name::A1, Some(0)), 1);
    assert_eq!(dim_h2(Table1Name::A2, None), 1);
    assert_eq!(dim_h2(Table1Name::A3, None), 0);
}

#[test]
fn h2_dims_stable_under_reduction_mod_3() {
    for (name, alpha) in [
        (Table1Name::N, None),
        (Table1Name::G1, None),
        (Table1Name::G2, None),
        (Table1Name::G3, Some(2)),
        (Table1Name::G3, Some(0)),
        (Table1Name::G4, None),
        (Table1Name::A1, Some(0)),
        (Table1Name::A2, None),
        (Table1Name::A3, None),
    ] {
        let q = table1(
            name,
            alpha.map(|v: i64| Scalar::from_int(v, Field::Q)).as_ref(),
            Field::Q,
        )
        .unwrap();
        let f3 = q.reduce_mod(3, None).unwrap();
        assert_eq!(h2(&q).h2_dim(), h2(&f3).h2_dim(), "{:?}", name);
    }
}

/// The chosen representatives for the nilpotent algebra are the unit forms
/// Δ12, Δ13, Δ23 themselves (B² = 0 there).
#[test]
fn nilpotent_reps_are_units() {
    let n = table1(Table1Name::N, None, Field::Q).unwrap();
    let coh = h2(&n);
    assert_eq!(coh.b2_dim(), 0);
    assert_eq!(coh.rep_positions(), &[0, 1, 2]);
}

/// δf(x, y) = f([x, y]) lands in B² and projects to zero.
#[test]
fn coboundaries_project_to_zero() {
    let g2 = table1(Table1Name::G2, None, Field::Q).unwrap();
    let coh = h2(&g2);
    for k in 0..3 {
        let mut f = vec![Scalar::zero(Field::Q); 3];
        f[k] = Scalar::one(Field::Q);
        let d = coboundary(&g2, &f).unwrap();
        assert!(coh.class_is_zero(&d).unwrap());
    }
}

/// For 𝔤₂ ([e1,e3] = e1, [e2,e3] = e2): δe1* = Δ13, δe2* = Δ23, δe3* = 0,
/// so H² is spanned by the class of Δ12.
#[test]
fn g2_coboundary_identities() {
    let g2 = table1(Table1Name::G2, None, Field::Q).unwrap();
    let one = Scalar::one(Field::Q);
    let zero = Scalar::zero(Field::Q);

    let e1 = vec![one.clone(), zero.clone(), zero.clone()];
    let d1 = coboundary(&g2, &e1).unwrap();
    assert_eq!(d1.coeffs()[pair_index(3, 0, 2)], one);
    assert_eq!(d1.coeffs()[pair_index(3, 0, 1)], zero);
    assert_eq!(d1.coeffs()[pair_index(3, 1, 2)], zero);

    let e3 = vec![zero.clone(), zero.clone(), one.clone()];
    let d3 = coboundary(&g2, &e3).unwrap();
    assert!(d3.is_zero());

    let coh = h2(&g2);
    assert_eq!(coh.rep_positions(), &[pair_index(3, 0, 1)]);
}
