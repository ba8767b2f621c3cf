use criterion::{criterion_group, criterion_main, Criterion};
use extclass_core::algebra::Algebra;
use extclass_core::aut::orbit_reps;
use extclass_core::catalog::{table1, Table1Name};
use extclass_core::cohomology::h2;
use extclass_core::iso::{iso_search, IsoSearch};
use extclass_core::scalar::Field;

fn bench_h2(c: &mut Criterion) {
    let n = table1(Table1Name::N, None, Field::Q).unwrap();
    c.bench_function("h2_nilpotent_q", |b| b.iter(|| h2(&n)));
}

fn bench_orbits(c: &mut Criterion) {
    let f5 = Field::Fp(5);
    let n = table1(Table1Name::N, None, f5).unwrap();
    let coh = h2(&n);
    c.bench_function("orbits_nilpotent_f5_s2", |b| {
        b.iter(|| orbit_reps(&n, &coh, 2).unwrap())
    });
}

fn relabel(a: &Algebra) -> Algebra {
    // reverse the basis order
    let m = a.dim();
    let field = a.field();
    let mut cols = Vec::new();
    for k in (0..m).rev() {
        let mut v = vec![extclass_core::scalar::Scalar::zero(field); m];
        v[k] = extclass_core::scalar::Scalar::one(field);
        cols.push(v);
    }
    let p = extclass_core::matrix::Matrix::from_cols(m, field, &cols).unwrap();
    a.change_of_basis(&p).unwrap()
}

fn bench_iso_search(c: &mut Criterion) {
    let f3 = Field::Fp(3);
    let g2 = table1(Table1Name::G2, None, f3).unwrap();
    let g2r = relabel(&g2);
    c.bench_function("iso_search_g2_relabeled_f3", |b| {
        b.iter(|| match iso_search(&g2, &g2r, 1_000_000).unwrap() {
            IsoSearch::Witness(_) => (),
            _ => panic!("expected witness"),
        })
    });
}

criterion_group!(benches, bench_h2, bench_orbits, bench_iso_search);
criterion_main!(benches);
