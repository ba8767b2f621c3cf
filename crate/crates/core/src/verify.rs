//! The full verification suite: nine checks covering cohomology
//! dimensions, coboundary identities, the annihilator formula, orbit
//! counts, the classification reconstruction, pairwise distinctness, the
//! parameter inversion, the decomposition round trip, and automorphism
//! group shapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{pair_count, pair_index, Algebra};
use crate::aut::{automorphisms, orbit_reps};
use crate::catalog::{
    main_theorem, main_theorem_base, main_theorem_count, main_theorem_is_parametric, table1,
    Table1Name,
};
use crate::classify::classify;
use crate::cohomology::{coboundary, h2, Cocycle, CocycleTuple};
use crate::error::Result;
use crate::extensions::{central_extension, check_ann_formula, decompose};
use crate::iso::{
    distinguish_with_budget, iso_search, verify_iso, IsoSearch, Verdict, DEFAULT_ISO_BUDGET,
};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CheckResult {
    fn new(id: &'static str, name: &'static str) -> CheckResult {
        CheckResult {
            id,
            name,
            passed: true,
            details: Vec::new(),
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        self.details.push(format!("FAIL: {}", msg.into()));
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }
}

pub const CHECK_IDS: [&str; 9] = [
    "cohomology-dims",
    "coboundary-identities",
    "annihilator-formula",
    "orbit-counts",
    "classification",
    "pairwise-distinctness",
    "parameter-inversion",
    "decompose-roundtrip",
    "aut-shapes",
];

/// Run the suite, optionally restricted to ids containing `only`.
pub fn run_suite(only: Option<&str>, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let want = |id: &str| only.map_or(true, |o| id.contains(o));
    if want("cohomology-dims") {
        out.push(check_cohomology_dims()?);
    }
    if want("coboundary-identities") {
        out.push(check_coboundary_identities()?);
    }
    if want("annihilator-formula") {
        out.push(check_ann_formula_random(seed)?);
    }
    if want("orbit-counts") {
        out.push(check_orbit_counts()?);
    }
    if want("classification") {
        out.push(check_classification()?);
    }
    if want("pairwise-distinctness") {
        out.push(check_pairwise_distinctness()?);
    }
    if want("parameter-inversion") {
        out.push(check_parameter_inversion()?);
    }
    if want("decompose-roundtrip") {
        out.push(check_decompose_roundtrip()?);
    }
    if want("aut-shapes") {
        out.push(check_aut_shapes()?);
    }
    Ok(out)
}

fn check_cohomology_dims() -> Result<CheckResult> {
    let mut r = CheckResult::new("cohomology-dims", "dim H² for the 3-dimensional bases");
    let q = Field::Q;
    let mut expect = |alg: Algebra, want: usize, label: &str| {
        let got = h2(&alg).h2_dim();
        if got == want {
            r.note(format!("{}: dim H² = {}", label, got));
        } else {
            r.fail(format!("{}: dim H² = {}, expected {}", label, got, want));
        }
    };
    expect(table1(Table1Name::N, None, q)?, 3, "N");
    expect(table1(Table1Name::G1, None, q)?, 2, "g1");
    expect(table1(Table1Name::G2, None, q)?, 1, "g2");
    for alpha in [
        Scalar::from_int(1, q),
        Scalar::from_int(2, q),
        Scalar::from_ratio(1, 2, q),
        Scalar::from_int(-1, q),
    ] {
        expect(
            table1(Table1Name::G3, Some(&alpha), q)?,
            1,
            &format!("g3({})", alpha),
        );
    }
    expect(
        table1(Table1Name::G3, Some(&Scalar::i()), Field::Qi)?,
        1,
        "g3(i)",
    );
    expect(table1(Table1Name::G3, Some(&Scalar::zero(q)), q)?, 2, "g3(0)");
    expect(table1(Table1Name::G4, None, q)?, 0, "g4");
    expect(
        table1(Table1Name::A1, Some(&Scalar::from_int(2, q)), q)?,
        0,
        "A1(2)",
    );
    expect(
        table1(Table1Name::A1, Some(&Scalar::zero(q)), q)?,
        1,
        "A1(0)",
    );
    expect(table1(Table1Name::A2, None, q)?, 1, "A2");
    expect(table1(Table1Name::A3, None, q)?, 0, "A3");
    Ok(r)
}

/// The unit skew forms on a 3-dim space, in the order (θ₁, θ₂, θ₃) =
/// (Δ23, Δ13, Δ12).
fn theta_coeffs(n: usize, t: usize, field: Field) -> Vec<Scalar> {
    let (i, j) = match t {
        1 => (1, 2),
        2 => (0, 2),
        3 => (0, 1),
        _ => unreachable!(),
    };
    let mut v = vec![Scalar::zero(field); pair_count(n)];
    v[pair_index(n, i, j)] = Scalar::one(field);
    v
}

fn check_coboundary_identities() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "coboundary-identities",
        "coboundaries of the dual basis against the unit forms",
    );
    let q = Field::Q;
    let theta = |t: usize| theta_coeffs(3, t, q);
    let add = |a: Vec<Scalar>, b: Vec<Scalar>| -> Vec<Scalar> {
        a.into_iter().zip(b).map(|(x, y)| x + y).collect()
    };
    let scale = |c: i64, v: Vec<Scalar>| -> Vec<Scalar> {
        v.into_iter()
            .map(|x| Scalar::from_int(c, q) * x)
            .collect()
    };

    // (algebra, dual index k, expected coefficients)
    let alpha = 7i64;
    let cases: Vec<(Algebra, usize, Vec<Scalar>, &str)> = vec![
        (table1(Table1Name::G1, None, q)?, 0, theta(1), "g1: de1* = t1"),
        (table1(Table1Name::G2, None, q)?, 0, theta(2), "g2: de1* = t2"),
        (table1(Table1Name::G2, None, q)?, 1, theta(1), "g2: de2* = t1"),
        (
            table1(Table1Name::G3, Some(&Scalar::from_int(alpha, q)), q)?,
            0,
            theta(2),
            "g3: de1* = t2",
        ),
        (
            table1(Table1Name::G3, Some(&Scalar::from_int(alpha, q)), q)?,
            1,
            add(theta(2), scale(alpha, theta(1))),
            "g3: de2* = t2 + a t1",
        ),
        (
            table1(Table1Name::A1, Some(&Scalar::zero(q)), q)?,
            0,
            theta(2),
            "A1(0): de1* = t2",
        ),
        (
            table1(Table1Name::A1, Some(&Scalar::zero(q)), q)?,
            2,
            add(theta(3), theta(2)),
            "A1(0): de3* = t3 + t2",
        ),
        (table1(Table1Name::A2, None, q)?, 0, theta(3), "A2: de1* = t3"),
        (table1(Table1Name::A2, None, q)?, 1, theta(1), "A2: de2* = t1"),
    ];
    for (alg, k, want, label) in cases {
        let mut f = vec![Scalar::zero(q); 3];
        f[k] = Scalar::one(q);
        let got = coboundary(&alg, &f)?;
        if got.coeffs() == &want[..] {
            r.note(format!("{}: exact", label));
        } else {
            r.fail(format!("{}: got {:?}", label, got.coeffs()));
        }
    }
    Ok(r)
}

fn check_ann_formula_random(seed: u64) -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "annihilator-formula",
        "Ann(A_theta) = (Ann A ∩ rad theta) ⊕ V on random extensions",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use Table1Name::*;
    for field in [Field::Q, Field::Fp(3), Field::Fp(5)] {
        for name in [N, G1, G2, G3, G4, A1, A2, A3] {
            let alpha = name.is_parametric().then(|| Scalar::from_int(2, field));
            let base = table1(name, alpha.as_ref(), field)?;
            let mut bad = 0usize;
            for _ in 0..200 {
                let s = rng.gen_range(1..=3);
                let comps = (0..s)
                    .map(|_| {
                        let coeffs = (0..pair_count(3))
                            .map(|_| match field {
                                Field::Fp(p) => Scalar::Fp {
                                    val: rng.gen_range(0..p),
                                    p,
                                },
                                _ => Scalar::from_ratio(
                                    rng.gen_range(-9i64..=9),
                                    rng.gen_range(1i64..=5),
                                    field,
                                ),
                            })
                            .collect();
                        Cocycle::new(3, field, coeffs)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let tuple = CocycleTuple::new(comps)?;
                let ext = central_extension(&base, &tuple, "rnd")?;
                if !check_ann_formula(&ext)? {
                    bad += 1;
                }
            }
            if bad == 0 {
                r.note(format!("{:?} over {}: 200/200 exact", name, field));
            } else {
                r.fail(format!("{:?} over {}: {} failures", name, field, bad));
            }
        }
    }
    Ok(r)
}

fn check_orbit_counts() -> Result<CheckResult> {
    let mut r = CheckResult::new("orbit-counts", "Aut-orbit counts on T_s over F_3 and F_5");
    let expected: [(Table1Name, Option<i64>, usize, usize); 11] = [
        (Table1Name::N, None, 1, 0),
        (Table1Name::N, None, 2, 1),
        (Table1Name::N, None, 3, 1),
        (Table1Name::G1, None, 1, 1),
        (Table1Name::G1, None, 2, 1),
        (Table1Name::G2, None, 1, 1),
        (Table1Name::G3, Some(2), 1, 1),
        (Table1Name::G3, Some(0), 1, 2),
        (Table1Name::G3, Some(0), 2, 1),
        (Table1Name::A1, Some(0), 1, 1),
        (Table1Name::A2, None, 1, 1),
    ];
    for p in [3u64, 5] {
        let field = Field::Fp(p);
        for (name, alpha, s, want) in expected {
            let a = table1(
                name,
                alpha.map(|v| Scalar::from_int(v, field)).as_ref(),
                field,
            )?;
            let got = orbit_reps(&a, &h2(&a), s)?.orbits.len();
            let label = match alpha {
                Some(v) => format!("({:?}({}), s={}) over F_{}", name, v, s, p),
                None => format!("({:?}, s={}) over F_{}", name, s, p),
            };
            if got == want {
                r.note(format!("{}: {} orbit(s)", label, got));
            } else {
                r.fail(format!("{}: {} orbit(s), expected {}", label, got, want));
            }
        }
    }
    Ok(r)
}

fn check_classification() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "classification",
        "reconstruction of the n = 4, 5, 6 lists over F_3",
    );
    for n in [4usize, 5, 6] {
        let report = classify(n, 3)?;
        for pr in &report.produced {
            if !pr.ann_formula_ok || !pr.ann_dim_ok {
                r.fail(format!(
                    "n={}: {}[{}] fails the annihilator checks",
                    n, pr.base_label, pr.orbit_index
                ));
            }
            if pr.has_ann_component {
                r.fail(format!(
                    "n={}: {}[{}] has an annihilator component",
                    n, pr.base_label, pr.orbit_index
                ));
            }
        }
        if report.one_to_one && report.split_rows_ok {
            r.note(format!(
                "n={}: {} extensions, every row covered, splits reproduced",
                n,
                report.produced.len()
            ));
        } else {
            r.fail(format!(
                "n={}: one_to_one={}, split_rows_ok={}",
                n, report.one_to_one, report.split_rows_ok
            ));
        }
    }
    Ok(r)
}

fn check_pairwise_distinctness() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "pairwise-distinctness",
        "the twelve 4-dimensional rows are mutually non-isomorphic",
    );
    let qi = Field::Qi;
    let mut algs = Vec::new();
    for i in 1..=12 {
        let samples: Vec<(Option<Scalar>, String)> = if main_theorem_is_parametric(4, i) {
            let mut v = vec![(Some(Scalar::from_int(2, qi)), "2".to_string())];
            if i != 2 {
                v.insert(0, (Some(Scalar::from_int(0, qi)), "0".to_string()));
            }
            if i == 9 {
                v.push((Some(Scalar::i()), "i".to_string()));
            }
            v
        } else {
            vec![(None, String::new())]
        };
        for (alpha, tag) in samples {
            algs.push((
                format!("A_{{4,{}}}({})", i, tag),
                main_theorem(4, i, alpha.as_ref(), qi)?,
            ));
        }
    }
    let mut pairs_checked = 0usize;
    for x in 0..algs.len() {
        for y in x + 1..algs.len() {
            let v = distinguish_with_budget(&algs[x].1, &algs[y].1, DEFAULT_ISO_BUDGET)?;
            pairs_checked += 1;
            match &v {
                Verdict::IsomorphicWitness(_) => {
                    r.fail(format!("{} vs {}: witness found", algs[x].0, algs[y].0))
                }
                Verdict::DistinctByInvariant { .. } => {}
                Verdict::UndecidedEvidence(_) => {
                    if !v.has_exhausted_none() {
                        r.fail(format!(
                            "{} vs {}: no invariant and no exhaustive search",
                            algs[x].0, algs[y].0
                        ));
                    }
                }
            }
        }
    }
    r.note(format!("{} unordered pairs checked", pairs_checked));
    Ok(r)
}

fn check_parameter_inversion() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "parameter-inversion",
        "alpha and alpha^{-1} give the same algebra",
    );
    let a = table1(Table1Name::G3, Some(&Scalar::from_int(2, Field::Q)), Field::Q)?;
    let b = table1(
        Table1Name::G3,
        Some(&Scalar::from_ratio(1, 2, Field::Q)),
        Field::Q,
    )?;
    match distinguish_with_budget(&a, &b, DEFAULT_ISO_BUDGET)? {
        Verdict::IsomorphicWitness(w) => {
            if verify_iso(&a, &b, &w)? {
                r.note("g3(2) ≅ g3(1/2) over Q: witness verified".to_string());
            } else {
                r.fail("g3(2) vs g3(1/2): witness failed verification");
            }
        }
        other => r.fail(format!("g3(2) vs g3(1/2): {}", other.kind())),
    }

    let f5 = Field::Fp(5);
    let at = |v: u64| main_theorem(4, 9, Some(&Scalar::Fp { val: v, p: 5 }), f5);
    match iso_search(&at(2)?, &at(3)?, DEFAULT_ISO_BUDGET)? {
        IsoSearch::Witness(_) => r.note("A_{4,9}(2) ≅ A_{4,9}(3) over F_5".to_string()),
        other => r.fail(format!("A_{{4,9}}(2) vs (3) over F_5: {:?}", other)),
    }
    match iso_search(&at(2)?, &at(4)?, DEFAULT_ISO_BUDGET)? {
        IsoSearch::Exhausted => {
            r.note("A_{4,9}(2) vs A_{4,9}(4) over F_5: exhaustive, no witness".to_string())
        }
        other => r.fail(format!("A_{{4,9}}(2) vs (4) over F_5: {:?}", other)),
    }
    Ok(r)
}

fn check_decompose_roundtrip() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "decompose-roundtrip",
        "decompose + central_extension reproduces every row with nonzero annihilator",
    );
    // the 3-dim bases with annihilator
    for (name, alpha) in [
        (Table1Name::N, None),
        (Table1Name::G1, None),
        (Table1Name::G3, Some(0i64)),
    ] {
        let a = table1(
            name,
            alpha.map(|v| Scalar::from_int(v, Field::Q)).as_ref(),
            Field::Q,
        )?;
        if a.annihilator().dim() == a.dim() {
            r.note(format!("{:?}: zero algebra, decomposition skipped", name));
            continue;
        }
        let dec = decompose(&a)?;
        let rebuilt = central_extension(&dec.base, &dec.theta, "rt")?;
        if rebuilt.total.table() == a.change_of_basis(&dec.reorder)?.table() {
            r.note(format!("{:?}: exact round trip", name));
        } else {
            r.fail(format!("{:?}: round trip differs", name));
        }
    }
    // every classification row, plus base identification over F_3
    for n in [4usize, 5, 6] {
        for i in 1..=main_theorem_count(n) {
            let alpha = main_theorem_is_parametric(n, i).then(|| Scalar::from_int(2, Field::Q));
            let a = main_theorem(n, i, alpha.as_ref(), Field::Q)?;
            let dec = decompose(&a)?;
            let rebuilt = central_extension(&dec.base, &dec.theta, "rt")?;
            if rebuilt.total.table() != a.change_of_basis(&dec.reorder)?.table() {
                r.fail(format!("A_{{{},{}}}: round trip differs", n, i));
                continue;
            }
            if let Some((bname, balpha)) = main_theorem_base(n, i) {
                let balpha = balpha
                    .map(|v| Scalar::from_int(v, Field::Fp(3)))
                    .or_else(|| {
                        bname
                            .is_parametric()
                            .then(|| Scalar::from_int(2, Field::Fp(3)))
                    });
                let expected = table1(bname, balpha.as_ref(), Field::Fp(3))?;
                let got = dec.base.reduce_mod(3, None)?;
                match iso_search(&got, &expected, DEFAULT_ISO_BUDGET)? {
                    IsoSearch::Witness(_) => {}
                    other => r.fail(format!(
                        "A_{{{},{}}}: quotient vs {:?}: {:?}",
                        n, i, bname, other
                    )),
                }
            }
        }
    }
    if r.passed {
        r.note("all rows reproduced exactly; bases identified".to_string());
    }
    Ok(r)
}

fn check_aut_shapes() -> Result<CheckResult> {
    let mut r = CheckResult::new(
        "aut-shapes",
        "automorphism groups match their parametric descriptions",
    );
    for p in [3u64, 5] {
        let field = Field::Fp(p);
        // g3(0): e1 -> (a21+a22)e1 + a21 e2, e2 -> a22 e2,
        //        e3 -> a13 e1 + a23 e2 + e3, with (a21+a22) a22 != 0
        let g30 = table1(Table1Name::G3, Some(&Scalar::zero(field)), field)?;
        let aut = automorphisms(&g30)?;
        let want_order = p * p * (p - 1) * (p - 1);
        if aut.order() != want_order {
            r.fail(format!(
                "|Aut(g3(0))| over F_{} = {}, expected {}",
                p,
                aut.order(),
                want_order
            ));
        }
        let zero = Scalar::zero(field);
        let one = Scalar::one(field);
        for m in aut.elements() {
            let a21 = m[(1, 0)].clone();
            let a22 = m[(1, 1)].clone();
            let shape_ok = m[(0, 0)] == a21.clone() + a22.clone()
                && m[(2, 0)] == zero
                && m[(0, 1)] == zero
                && m[(2, 1)] == zero
                && m[(2, 2)] == one
                && !(a21.clone() + a22.clone()).is_zero()
                && !a22.is_zero();
            if !shape_ok {
                r.fail(format!("Aut(g3(0)) element off-shape over F_{}", p));
                break;
            }
        }
        r.note(format!(
            "|Aut(g3(0))| over F_{} = {} = p²(p-1)², all elements on-shape",
            p, want_order
        ));

        // g1: e1 -> delta e1 with delta = a22 a33 - a23 a32
        let g1 = table1(Table1Name::G1, None, field)?;
        let aut1 = automorphisms(&g1)?;
        for m in aut1.elements() {
            let delta = m[(1, 1)].clone() * m[(2, 2)].clone()
                - m[(1, 2)].clone() * m[(2, 1)].clone();
            let shape_ok =
                m[(0, 0)] == delta && m[(1, 0)].is_zero() && m[(2, 0)].is_zero() && !delta.is_zero();
            if !shape_ok {
                r.fail(format!("Aut(g1) element off-shape over F_{}", p));
                break;
            }
        }
        r.note(format!(
            "|Aut(g1)| over F_{} = {}, e1 image is the lower-block determinant",
            p,
            aut1.order()
        ));
    }
    Ok(r)
}
