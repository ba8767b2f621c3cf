//! Exact field elements: arbitrary-precision rationals, Gaussian rationals
//! and odd-prime-field residues. No floating point anywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field an exact value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Rational numbers.
    Q,
    /// Gaussian rationals Q(i).
    Qi,
    /// Prime field F_p.
    Fp(u64),
}

impl Field {
    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Fp(_))
    }

    /// char != 2 is the standing hypothesis; F_2 is allowed but flagged.
    pub fn is_advisory(&self) -> bool {
        matches!(self, Field::Fp(2))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Qi => write!(f, "Q(i)"),
            Field::Fp(p) => write!(f, "F_{}", p),
        }
    }
}

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator (BigRational maintains this); residues in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Qi(BigRational, BigRational),
    Fp { val: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Residue inverse by extended Euclid; None when gcd(a, p) != 1.
fn invmod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Qi(_, _) => Field::Qi,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar::from_int(0, field)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(1, field)
    }

    pub fn from_int(n: i64, field: Field) -> Scalar {
        match field {
            Field::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            Field::Qi => Scalar::Qi(BigRational::from(BigInt::from(n)), BigRational::zero()),
            Field::Fp(p) => Scalar::Fp {
                val: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(num: i64, den: i64, field: Field) -> Scalar {
        assert!(den != 0, "zero denominator");
        match field {
            Field::Q => Scalar::Q(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Field::Qi => Scalar::Qi(
                BigRational::new(BigInt::from(num), BigInt::from(den)),
                BigRational::zero(),
            ),
            Field::Fp(p) => {
                let d = Scalar::from_int(den, Field::Fp(p));
                let n = Scalar::from_int(num, Field::Fp(p));
                n.try_div(&d).expect("denominator not invertible mod p")
            }
        }
    }

    /// i in Q(i).
    pub fn i() -> Scalar {
        Scalar::Qi(BigRational::zero(), BigRational::one())
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Qi(re, im)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Qi(re, im) => re.is_zero() && im.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one(self.field())
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => {
                if r.is_zero() {
                    Err(Error::NotInvertible("0".into()))
                } else {
                    Ok(Scalar::Q(r.recip()))
                }
            }
            Scalar::Qi(re, im) => {
                let norm = re * re + im * im;
                if norm.is_zero() {
                    Err(Error::NotInvertible("0".into()))
                } else {
                    Ok(Scalar::Qi(re / &norm, -(im / &norm)))
                }
            }
            Scalar::Fp { val, p } => invmod(*val, *p)
                .map(|v| Scalar::Fp { val: v, p: *p })
                .ok_or_else(|| Error::NotInvertible(format!("{} mod {}", val, p))),
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.same_field(rhs)?;
        Ok(self * &rhs.inv()?)
    }

    /// Squared modulus |a|^2 for Gaussian rationals; a^2 over Q.
    pub fn norm_sq(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r * r),
            Scalar::Qi(re, im) => Scalar::Qi(re * re + im * im, BigRational::zero()),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: mulmod(*val, *val, *p),
                p: *p,
            },
        }
    }

    /// Embed a Q scalar into Q(i). Identity on Q(i) values.
    pub fn to_qi(&self) -> Result<Scalar> {
        match self {
            Scalar::Q(r) => Ok(Scalar::Qi(r.clone(), BigRational::zero())),
            Scalar::Qi(_, _) => Ok(self.clone()),
            Scalar::Fp { .. } => Err(Error::Parameter(
                "cannot embed a prime-field residue into Q(i)".into(),
            )),
        }
    }

    /// Reduce a rational (or Gaussian-rational) scalar mod p. For Gaussian
    /// values, `sqrt_m1` must satisfy sqrt_m1^2 = -1 mod p. Fails when a
    /// denominator vanishes mod p.
    pub fn reduce_mod(&self, p: u64, sqrt_m1: Option<u64>) -> Result<Scalar> {
        let red = |r: &BigRational| -> Result<u64> {
            let pm = BigInt::from(p);
            let num = ((r.numer() % &pm) + &pm) % &pm;
            let den = ((r.denom() % &pm) + &pm) % &pm;
            let num: u64 = num.try_into().unwrap();
            let den: u64 = den.try_into().unwrap();
            let dinv =
                invmod(den, p).ok_or_else(|| Error::NotInvertible(format!("{} mod {}", den, p)))?;
            Ok(mulmod(num, dinv, p))
        };
        match self {
            Scalar::Q(r) => Ok(Scalar::Fp { val: red(r)?, p }),
            Scalar::Qi(re, im) => {
                if im.is_zero() {
                    return Ok(Scalar::Fp { val: red(re)?, p });
                }
                let s = sqrt_m1.ok_or_else(|| {
                    Error::Parameter(format!("no square root of -1 available mod {}", p))
                })?;
                debug_assert_eq!(mulmod(s, s, p), p - 1);
                let v = (red(re)? + mulmod(red(im)?, s, p)) % p;
                Ok(Scalar::Fp { val: v, p })
            }
            Scalar::Fp { .. } => Err(Error::Parameter("already a prime-field residue".into())),
        }
    }

    pub fn as_fp(&self) -> Option<(u64, u64)> {
        match self {
            Scalar::Fp { val, p } => Some((*val, *p)),
            _ => None,
        }
    }

    /// Exact comparison of |self|^2 against 1, for the parameter
    /// normalization. Only meaningful over Q / Q(i).
    pub fn norm_sq_cmp_one(&self) -> std::cmp::Ordering {
        let n = match self {
            Scalar::Q(r) => r * r,
            Scalar::Qi(re, im) => re * re + im * im,
            Scalar::Fp { .. } => panic!("norm comparison is not defined over a finite field"),
        };
        n.cmp(&BigRational::one())
    }

    /// (re, im) parts over Q or Q(i).
    pub fn re_im(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Q(r) => (r.clone(), BigRational::zero()),
            Scalar::Qi(re, im) => (re.clone(), im.clone()),
            Scalar::Fp { .. } => panic!("re/im parts are not defined over a finite field"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $op b),
                    (Scalar::Qi(ar, ai), Scalar::Qi(br, bi)) => {
                        gaussian_binop!($method, ar, ai, br, bi)
                    }
                    (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) if p == q => {
                        fp_binop!($method, *a, *b, *p)
                    }
                    (a, b) => panic!("field mismatch: {} vs {}", a.field(), b.field()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

macro_rules! gaussian_binop {
    (add, $ar:expr, $ai:expr, $br:expr, $bi:expr) => {
        Scalar::Qi($ar + $br, $ai + $bi)
    };
    (sub, $ar:expr, $ai:expr, $br:expr, $bi:expr) => {
        Scalar::Qi($ar - $br, $ai - $bi)
    };
    (mul, $ar:expr, $ai:expr, $br:expr, $bi:expr) => {
        Scalar::Qi($ar * $br - $ai * $bi, $ar * $bi + $ai * $br)
    };
}

macro_rules! fp_binop {
    (add, $a:expr, $b:expr, $p:expr) => {
        Scalar::Fp { val: ($a + $b) % $p, p: $p }
    };
    (sub, $a:expr, $b:expr, $p:expr) => {
        Scalar::Fp { val: ($a + $p - $b) % $p, p: $p }
    };
    (mul, $a:expr, $b:expr, $p:expr) => {
        Scalar::Fp { val: mulmod($a, $b, $p), p: $p }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Qi(re, im) => Scalar::Qi(-re, -im),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: (p - val) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Qi(re, im) => {
                if im.is_zero() {
                    write!(f, "{}", fmt_rational(re))
                } else if im.is_negative() {
                    write!(f, "{}-{} i", fmt_rational(re), fmt_rational(&-im))
                } else {
                    write!(f, "{}+{} i", fmt_rational(re), fmt_rational(im))
                }
            }
            Scalar::Fp { val, p } => write!(f, "{} mod {}", val, p),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {:?}", num)))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {:?}", den)))?;
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

impl Scalar {
    /// Parse a scalar in the context of a declared field.
    /// Grammar: `-?d+(/d+)?` over Q; `a`, `a(+|-)b i` over Q(i); a bare
    /// residue over F_p.
    pub fn parse(s: &str, field: Field) -> Result<Scalar> {
        let s = s.trim();
        match field {
            Field::Q => Ok(Scalar::Q(parse_rational(s)?)),
            Field::Qi => {
                let body = s.strip_suffix('i').map(str::trim_end);
                match body {
                    None => Ok(Scalar::Qi(parse_rational(s)?, BigRational::zero())),
                    Some(body) => {
                        // split re/im at the last top-level + or - (not the
                        // leading sign, not a sign right after '/')
                        let bytes = body.as_bytes();
                        let mut split = None;
                        for k in (1..bytes.len()).rev() {
                            if (bytes[k] == b'+' || bytes[k] == b'-')
                                && bytes[k - 1] != b'/'
                                && bytes[k - 1] != b'+'
                                && bytes[k - 1] != b'-'
                            {
                                split = Some(k);
                                break;
                            }
                        }
                        match split {
                            Some(k) => {
                                let re = parse_rational(&body[..k])?;
                                let sign = if bytes[k] == b'-' { -1 } else { 1 };
                                let imtxt = body[k + 1..].trim();
                                let im = if imtxt.is_empty() {
                                    BigRational::one()
                                } else {
                                    parse_rational(imtxt)?
                                };
                                Ok(Scalar::Qi(re, im * BigRational::from(BigInt::from(sign))))
                            }
                            None => {
                                // pure imaginary: "i", "-i", "b i"
                                let t = body.trim();
                                let im = if t.is_empty() {
                                    BigRational::one()
                                } else if t == "-" {
                                    -BigRational::one()
                                } else {
                                    parse_rational(t)?
                                };
                                Ok(Scalar::Qi(BigRational::zero(), im))
                            }
                        }
                    }
                }
            }
            Field::Fp(p) => {
                let body = s.strip_suffix(&format!(" mod {}", p)).unwrap_or(s);
                let v: i64 = body
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {:?}", s)))?;
                Ok(Scalar::from_int(v, Field::Fp(p)))
            }
        }
    }

    /// Contextual string form used inside algebra JSON files (the field is
    /// carried by the file, so residues print bare).
    pub fn to_json_string(&self) -> String {
        match self {
            Scalar::Fp { val, .. } => val.to_string(),
            other => other.to_string(),
        }
    }
}
