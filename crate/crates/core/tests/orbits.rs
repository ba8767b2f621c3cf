//! Aut-orbit counts on T_s over small finite fields, plus witness checks.

use extclass_core::aut::{act_on_class, automorphisms, orbit_reps};
use extclass_core::catalog::{table1, Table1Name};
use extclass_core::cohomology::h2;
use extclass_core::scalar::{Field, Scalar};

fn count_orbits(name: Table1Name, alpha: Option<i64>, p: u64, s: usize) -> usize {
    let field = Field::Fp(p);
    let a = table1(
        name,
        alpha.map(|v| Scalar::from_int(v, field)).as_ref(),
        field,
    )
    .unwrap();
    let coh = h2(&a);
    orbit_reps(&a, &coh, s).unwrap().orbits.len()
}

#[test]
fn orbit_counts_f3() {
    assert_eq!(count_orbits(Table1Name::N, None, 3, 1), 0);
    assert_eq!(count_orbits(Table1Name::N, None, 3, 2), 1);
    assert_eq!(count_orbits(Table1Name::N, None, 3, 3), 1);
    assert_eq!(count_orbits(Table1Name::G1, None, 3, 1), 1);
    assert_eq!(count_orbits(Table1Name::G1, None, 3, 2), 1);
    assert_eq!(count_orbits(Table1Name::G2, None, 3, 1), 1);
    assert_eq!(count_orbits(Table1Name::G3, Some(2), 3, 1), 1);
    assert_eq!(count_orbits(Table1Name::G3, Some(0), 3, 1), 2);
    assert_eq!(count_orbits(Table1Name::G3, Some(0), 3, 2), 1);
    assert_eq!(count_orbits(Table1Name::A1, Some(0), 3, 1), 1);
    assert_eq!(count_orbits(Table1Name::A2, None, 3, 1), 1);
}

#[test]
fn orbit_counts_f5() {
    assert_eq!(count_orbits(Table1Name::N, None, 5, 1), 0);
    assert_eq!(count_orbits(Table1Name::N, None, 5, 2), 1);
    assert_eq!(count_orbits(Table1Name::N, None, 5, 3), 1);
    assert_eq!(count_orbits(Table1Name::G1, None, 5, 1), 1);
    assert_eq!(count_orbits(Table1Name::G1, None, 5, 2), 1);
    assert_eq!(count_orbits(Table1Name::G2, None, 5, 1), 1);
    assert_eq!(count_orbits(Table1Name::G3, Some(2), 5, 1), 1);
    assert_eq!(count_orbits(Table1Name::G3, Some(0), 5, 1), 2);
    assert_eq!(count_orbits(Table1Name::G3, Some(0), 5, 2), 1);
    assert_eq!(count_orbits(Table1Name::A1, Some(0), 5, 1), 1);
    assert_eq!(count_orbits(Table1Name::A2, None, 5, 1), 1);
}

/// Every recorded witness really maps the orbit representative onto the
/// member it is attached to.
#[test]
fn orbit_witnesses_verify() {
    let field = Field::Fp(3);
    for (name, alpha, s) in [
        (Table1Name::N, None, 2usize),
        (Table1Name::G1, None, 1),
        (Table1Name::G3, Some(0i64), 1),
    ] {
        let a = table1(
            name,
            alpha.map(|v| Scalar::from_int(v, field)).as_ref(),
            field,
        )
        .unwrap();
        let coh = h2(&a);
        let part = orbit_reps(&a, &coh, s).unwrap();
        for orbit in &part.orbits {
            for (member, phi) in orbit.members.iter().zip(&orbit.witnesses) {
                // push every basis class of the rep through phi; the span
                // must equal the member subspace
                let imgs: Vec<Vec<Scalar>> = (0..orbit.rep.dim())
                    .map(|r| {
                        let coords: Vec<Scalar> = (0..coh.h2_dim())
                            .map(|c| orbit.rep.basis()[(r, c)].clone())
                            .collect();
                        act_on_class(&a, &coh, phi, &coords).unwrap()
                    })
                    .collect();
                let span = extclass_core::subspace::Subspace::from_vectors(
                    coh.h2_dim(),
                    field,
                    &imgs,
                )
                .unwrap();
                assert_eq!(&span, member);
            }
        }
    }
}

/// |Aut| for the small catalog algebras over F_3 and F_5.
#[test]
fn aut_orders() {
    for p in [3u64, 5] {
        let field = Field::Fp(p);
        // 𝔤₃ at α = 0: order p²(p−1)²
        let g30 = table1(Table1Name::G3, Some(&Scalar::zero(field)), field).unwrap();
        assert_eq!(
            automorphisms(&g30).unwrap().order(),
            p * p * (p - 1) * (p - 1)
        );
        // zero algebra: all of GL(3, p)
        let n = table1(Table1Name::N, None, field).unwrap();
        let gl3 = (p.pow(3) - 1) * (p.pow(3) - p) * (p.pow(3) - p * p);
        assert_eq!(automorphisms(&n).unwrap().order(), gl3);
    }
}
