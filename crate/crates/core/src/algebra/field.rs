use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Descriptor of an exact field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds GF(p), rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if crate::algebra::crt::is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not a prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod { v: (v as i128).rem_euclid(p as i128) as u64, p },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Mod { v: r.to_u64().expect("residue fits"), p }
            }
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime(_) => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                let inv = d.inv().ok_or_else(|| {
                    Error::InvalidInput(format!("denominator of {q} vanishes in {self}"))
                })?;
                Ok(n * inv)
            }
        }
    }

    /// Reduces a scalar of another field into this one.
    pub fn convert(&self, s: &Scalar) -> Result<Scalar> {
        match s {
            Scalar::Rat(q) => self.from_rational(q),
            Scalar::Mod { p, .. } if Field::Prime(*p) == *self => Ok(s.clone()),
            Scalar::Mod { .. } => Err(Error::FieldMismatch),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "rational" || s == "Q" || s == "q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("gf:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime in field '{s}'")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidInput(format!("unknown field '{s}'")))
    }
}

/// An exact field element. Residues always lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { v, p } => Scalar::Mod { v: powmod(*v, p - 2, *p), p: *p },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut r = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Integer value of a rational scalar with unit denominator.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(q) if q.is_integer() => Some(q.numer().clone()),
            _ => None,
        }
    }

    /// Residue of a prime-field scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { v, .. } => Some(*v),
            Scalar::Rat(_) => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_integer())
    }

    /// Small integer value if the scalar is rational, integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// +1/-1 for the units of Z, `None` otherwise.
    pub fn unit_sign(&self) -> Option<i8> {
        match self {
            Scalar::Rat(q) if q.is_one() => Some(1),
            Scalar::Rat(q) if (-q).is_one() => Some(-1),
            Scalar::Mod { v, .. } if *v == 1 => Some(1),
            Scalar::Mod { v, p } if *v == p - 1 => Some(-1),
            _ => None,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(q.abs()),
            Scalar::Mod { .. } => self.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                let s = *a as u128 + *b as u128;
                Scalar::Mod { v: (s % *p as u128) as u64, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                let s = *a as u128 + (*p - *b) as u128;
                Scalar::Mod { v: (s % *p as u128) as u64, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => {
                Scalar::Mod { v: mulmod(*a, *b, *p), p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul, Div div);
