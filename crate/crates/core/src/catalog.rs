//! Embedded exact definitions of the 3-dimensional base algebras and of
//! every classified n-dimensional algebra with (n-3)-dimensional
//! annihilator, plus the parameter normalization for the alpha families.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// The eight 3-dimensional base algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table1Name {
    N,
    G1,
    G2,
    G3,
    G4,
    A1,
    A2,
    A3,
}

impl Table1Name {
    pub const ALL: [Table1Name; 8] = [
        Table1Name::N,
        Table1Name::G1,
        Table1Name::G2,
        Table1Name::G3,
        Table1Name::G4,
        Table1Name::A1,
        Table1Name::A2,
        Table1Name::A3,
    ];

    pub fn is_parametric(&self) -> bool {
        matches!(self, Table1Name::G3 | Table1Name::A1)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Table1Name::N => "N",
            Table1Name::G1 => "g1",
            Table1Name::G2 => "g2",
            Table1Name::G3 => "g3",
            Table1Name::G4 => "g4",
            Table1Name::A1 => "A1",
            Table1Name::A2 => "A2",
            Table1Name::A3 => "A3",
        }
    }
}

impl std::str::FromStr for Table1Name {
    type Err = Error;
    fn from_str(s: &str) -> Result<Table1Name> {
        match s {
            "N" => Ok(Table1Name::N),
            "g1" => Ok(Table1Name::G1),
            "g2" => Ok(Table1Name::G2),
            "g3" => Ok(Table1Name::G3),
            "g4" => Ok(Table1Name::G4),
            "A1" => Ok(Table1Name::A1),
            "A2" => Ok(Table1Name::A2),
            "A3" => Ok(Table1Name::A3),
            other => Err(Error::UnknownEntry(other.to_string())),
        }
    }
}

fn one(field: Field) -> Scalar {
    Scalar::one(field)
}

/// The 3-dimensional algebra for a Table 1 name, over the given field.
/// `alpha` is required exactly for the parametric families.
pub fn table1(name: Table1Name, alpha: Option<&Scalar>, field: Field) -> Result<Algebra> {
    if name.is_parametric() != alpha.is_some() {
        return Err(Error::Parameter(format!(
            "{} {} a parameter",
            name.as_str(),
            if name.is_parametric() {
                "requires"
            } else {
                "does not take"
            }
        )));
    }
    if let Some(a) = alpha {
        if a.field() != field {
            return Err(Error::FieldMismatch(field, a.field()));
        }
    }
    let l = |k: usize| vec![(k, one(field))];
    let alg = match name {
        Table1Name::N => Algebra::zero_algebra(3, field),
        Table1Name::G1 => Algebra::from_products(3, field, &[(1, 2, l(0))])?,
        Table1Name::G2 => Algebra::from_products(3, field, &[(0, 2, l(0)), (1, 2, l(1))])?,
        Table1Name::G3 => {
            let a = alpha.unwrap().clone();
            Algebra::from_products(
                3,
                field,
                &[(0, 2, vec![(0, one(field)), (1, one(field))]), (1, 2, vec![(1, a)])],
            )?
        }
        Table1Name::G4 => Algebra::from_products(
            3,
            field,
            &[(0, 1, l(2)), (0, 2, vec![(1, -one(field))]), (1, 2, l(0))],
        )?,
        Table1Name::A1 => {
            let a = alpha.unwrap().clone();
            Algebra::from_products(
                3,
                field,
                &[
                    (0, 1, l(2)),
                    (0, 2, vec![(0, one(field)), (2, one(field))]),
                    (1, 2, vec![(1, a)]),
                ],
            )?
        }
        Table1Name::A2 => Algebra::from_products(3, field, &[(0, 1, l(0)), (1, 2, l(1))])?,
        Table1Name::A3 => Algebra::from_products(
            3,
            field,
            &[(0, 1, l(2)), (0, 2, l(0)), (1, 2, l(1))],
        )?,
    };
    let label = match alpha {
        Some(a) => format!("{}(alpha={})", name.as_str(), a),
        None => name.as_str().to_string(),
    };
    Ok(alg.with_name(label))
}

/// Base algebra label of a non-split Main Theorem row: which Table 1
/// algebra it extends, and the forced parameter value when that base is a
/// degenerate member of a parametric family.
pub fn main_theorem_base(n: usize, i: usize) -> Option<(Table1Name, Option<i64>)> {
    match (n, i) {
        (4, 7) => Some((Table1Name::G1, None)),
        (4, 8) => Some((Table1Name::G2, None)),
        (4, 9) => Some((Table1Name::G3, None)), // parameter inherited from the row
        (4, 10) => Some((Table1Name::G3, Some(0))),
        (4, 11) => Some((Table1Name::A1, Some(0))),
        (4, 12) => Some((Table1Name::A2, None)),
        (5, 13) => Some((Table1Name::N, None)),
        (5, 14) => Some((Table1Name::G1, None)),
        (5, 15) => Some((Table1Name::G3, Some(0))),
        (6, 16) => Some((Table1Name::N, None)),
        _ => None,
    }
}

/// Number of rows at each dimension of the Main Theorem.
pub fn main_theorem_count(n: usize) -> usize {
    match n {
        3 => 6,
        4 => 12,
        5 => 15,
        _ => 16,
    }
}

/// Whether row (n, i) takes a parameter.
pub fn main_theorem_is_parametric(n: usize, i: usize) -> bool {
    match n {
        3 => i == 2 || i == 4,
        _ => i == 2 || i == 4 || i == 9,
    }
}

/// The algebra A_{n,i}. For n >= 7 this is A_{6,i} padded with central
/// generators. The (n-3)-dimensional-annihilator invariant is asserted at
/// construction.
pub fn main_theorem(n: usize, i: usize, alpha: Option<&Scalar>, field: Field) -> Result<Algebra> {
    if n < 3 || i == 0 || i > main_theorem_count(n) {
        return Err(Error::UnknownEntry(format!("A_{{{},{}}}", n, i)));
    }
    if main_theorem_is_parametric(n, i) != alpha.is_some() {
        return Err(Error::Parameter(format!(
            "A_{{{},{}}} {} a parameter",
            n,
            i,
            if main_theorem_is_parametric(n, i) {
                "requires"
            } else {
                "does not take"
            }
        )));
    }
    let label = match alpha {
        Some(a) => format!("A_{{{},{}}}(alpha={})", n, i, a),
        None => format!("A_{{{},{}}}", n, i),
    };
    let alg = main_theorem_inner(n, i, alpha, field)?.with_name(label);
    assert_eq!(
        alg.annihilator().dim(),
        n - 3,
        "catalog invariant: dim Ann(A_{{{},{}}}) must be {}",
        n,
        i,
        n - 3
    );
    Ok(alg)
}

fn main_theorem_inner(
    n: usize,
    i: usize,
    alpha: Option<&Scalar>,
    field: Field,
) -> Result<Algebra> {
    if n == 3 {
        return match i {
            1 => table1(Table1Name::G2, None, field),
            2 => {
                let a = alpha.unwrap();
                if a.is_zero() {
                    return Err(Error::Parameter("A_{3,2} requires alpha != 0".into()));
                }
                table1(Table1Name::G3, alpha, field)
            }
            3 => table1(Table1Name::G4, None, field),
            4 => table1(Table1Name::A1, alpha, field),
            5 => table1(Table1Name::A2, None, field),
            6 => table1(Table1Name::A3, None, field),
            _ => unreachable!(),
        };
    }
    if n > 6 || i <= main_theorem_count(n - 1) {
        // split rows: pad the lower-dimensional algebra with a central
        // generator
        let lower = main_theorem_inner(n - 1, i, alpha, field)?;
        return Ok(lower.direct_sum_trivial(1));
    }
    let l = |k: usize| vec![(k, one(field))];
    let e12 = vec![(0, one(field)), (1, one(field))];
    match (n, i) {
        (4, 7) => Algebra::from_products(4, field, &[(0, 1, l(3)), (1, 2, l(0))]),
        (4, 8) => Algebra::from_products(4, field, &[(0, 1, l(3)), (0, 2, l(0)), (1, 2, l(1))]),
        (4, 9) => {
            let a = alpha.unwrap().clone();
            Algebra::from_products(
                4,
                field,
                &[(0, 1, l(3)), (0, 2, e12), (1, 2, vec![(1, a)])],
            )
        }
        (4, 10) => Algebra::from_products(4, field, &[(0, 2, e12), (1, 2, l(3))]),
        (4, 11) => Algebra::from_products(
            4,
            field,
            &[
                (0, 1, l(2)),
                (0, 2, vec![(0, one(field)), (2, one(field))]),
                (1, 2, l(3)),
            ],
        ),
        (4, 12) => Algebra::from_products(4, field, &[(0, 1, l(0)), (0, 2, l(3)), (1, 2, l(1))]),
        (5, 13) => Algebra::from_products(5, field, &[(0, 2, l(3)), (1, 2, l(4))]),
        (5, 14) => Algebra::from_products(5, field, &[(0, 1, l(3)), (0, 2, l(4)), (1, 2, l(0))]),
        (5, 15) => Algebra::from_products(5, field, &[(0, 1, l(3)), (0, 2, e12), (1, 2, l(4))]),
        (6, 16) => Algebra::from_products(6, field, &[(0, 1, l(3)), (0, 2, l(4)), (1, 2, l(5))]),
        _ => unreachable!(),
    }
}

/// Representative of the orbit {alpha, alpha^{-1}} in C*_{>1} ∪ {0, 1}:
/// keep 0 and 1; keep when |alpha|² > 1; invert when |alpha|² < 1; on the
/// unit circle keep exactly when im > 0 or alpha = -1. All comparisons
/// exact on |alpha|² = re² + im².
pub fn normalize_alpha(alpha: &Scalar) -> Scalar {
    use std::cmp::Ordering;
    if alpha.is_zero() || alpha.is_one() {
        return alpha.clone();
    }
    match alpha.norm_sq_cmp_one() {
        Ordering::Greater => alpha.clone(),
        Ordering::Less => alpha.inv().expect("nonzero"),
        Ordering::Equal => {
            let (re, im) = alpha.re_im();
            let minus_one = re == -BigRational::one() && im.is_zero();
            if im.is_positive() || minus_one {
                alpha.clone()
            } else {
                alpha.inv().expect("nonzero")
            }
        }
    }
}

/// Exact parameter values used by the verification runs; they hit both
/// branches of the normalization and the alpha = 0 degenerations.
pub fn sample_alphas(field: Field) -> Vec<Scalar> {
    let mut v = vec![
        Scalar::from_int(0, field),
        Scalar::from_int(1, field),
        Scalar::from_int(2, field),
        Scalar::from_ratio(1, 2, field),
        Scalar::from_int(-1, field),
    ];
    if field == Field::Qi {
        v.push(Scalar::i());
    }
    v
}

/// A catalog entry description, for listing and dumping.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub dimension: usize,
    pub parametric: bool,
    pub constraint: Option<String>,
}

/// Every entry: the Table 1 bases and the Main Theorem rows for n = 3..6.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for name in Table1Name::ALL {
        out.push(CatalogEntry {
            name: name.as_str().to_string(),
            dimension: 3,
            parametric: name.is_parametric(),
            constraint: name
                .is_parametric()
                .then(|| "alpha in C*_{>1} ∪ {0, 1}".to_string()),
        });
    }
    for n in 3..=6 {
        for i in 1..=main_theorem_count(n) {
            let parametric = main_theorem_is_parametric(n, i);
            out.push(CatalogEntry {
                name: format!("A_{{{},{}}}", n, i),
                dimension: n,
                parametric,
                constraint: match (n, i, parametric) {
                    (_, _, false) => None,
                    (_, 2, true) => Some("alpha in C*_{>1} ∪ {1}".to_string()),
                    _ => Some("alpha in C*_{>1} ∪ {0, 1}".to_string()),
                },
            });
        }
    }
    out
}

/// Resolve a `catalog:`-style reference ("g1", "A_{4,9}") to an algebra.
pub fn resolve(name: &str, alpha: Option<&Scalar>, field: Field) -> Result<Algebra> {
    if let Some(rest) = name.strip_prefix("A_{").and_then(|s| s.strip_suffix('}')) {
        let (n, i) = rest
            .split_once(',')
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::UnknownEntry(name.to_string()))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| Error::UnknownEntry(name.to_string()))?;
        return main_theorem(n, i, alpha, field);
    }
    let t: Table1Name = name.parse()?;
    table1(t, alpha, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_alpha_is_idempotent_and_pair_constant() {
        for alpha in sample_alphas(Field::Qi) {
            let n = normalize_alpha(&alpha);
            assert_eq!(normalize_alpha(&n), n);
            if !alpha.is_zero() {
                assert_eq!(normalize_alpha(&alpha.inv().unwrap()), n);
            }
        }
    }

    #[test]
    fn main_theorem_row_counts() {
        assert_eq!(main_theorem_count(3), 6);
        assert_eq!(main_theorem_count(4), 12);
        assert_eq!(main_theorem_count(5), 15);
        assert_eq!(main_theorem_count(6), 16);
    }

    #[test]
    fn resolve_accepts_both_namespaces() {
        let g2 = resolve("g2", None, Field::Q).unwrap();
        assert_eq!(g2.dim(), 3);
        let a48 = resolve("A_{4,8}", None, Field::Q).unwrap();
        assert_eq!(a48.dim(), 4);
        assert!(resolve("A_{3,7}", None, Field::Q).is_err());
    }

    #[test]
    fn parametric_rows_reject_missing_alpha() {
        assert!(main_theorem(4, 9, None, Field::Q).is_err());
        assert!(table1(Table1Name::G3, None, Field::Q).is_err());
    }
}
