use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, Scalar};
use super::ring::Ring;

/// Integers extended by the two infinities used as degree/order sentinels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

/// Laurent polynomial in one indeterminate with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightPoly {
    field: Field,
    terms: BTreeMap<i64, Scalar>,
}

impl WeightPoly {
    pub fn zero(field: Field) -> WeightPoly {
        WeightPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> WeightPoly {
        WeightPoly::monomial(c, 0)
    }

    pub fn one(field: Field) -> WeightPoly {
        WeightPoly::constant(field.one())
    }

    /// `c·θ^e`.
    pub fn monomial(c: Scalar, e: i64) -> WeightPoly {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        WeightPoly { field, terms }
    }

    /// `θ^e`.
    pub fn theta_pow(field: Field, e: i64) -> WeightPoly {
        WeightPoly::monomial(field.one(), e)
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (i64, Scalar)>) -> WeightPoly {
        let mut p = WeightPoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Highest exponent; `-inf` for the zero polynomial.
    pub fn deg(&self) -> ExtInt {
        self.terms.keys().next_back().map_or(ExtInt::NegInf, |&e| ExtInt::Finite(e))
    }

    /// Lowest exponent; `+inf` for the zero polynomial.
    pub fn ord(&self) -> ExtInt {
        self.terms.keys().next().map_or(ExtInt::PosInf, |&e| ExtInt::Finite(e))
    }

    /// Coefficient at the lowest exponent.
    pub fn lowest_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next()
    }

    pub fn add_term(&mut self, e: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        assert_eq!(c.field(), self.field, "field mismatch");
        let v = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> WeightPoly {
        WeightPoly { field: self.field, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, rhs: &WeightPoly) -> WeightPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> WeightPoly {
        let mut out = WeightPoly::zero(self.field);
        for (e, c) in &self.terms {
            out.add_term(*e, &(c * s));
        }
        out
    }

    /// Multiplies by `θ^k`.
    pub fn shift(&self, k: i64) -> WeightPoly {
        WeightPoly { field: self.field, terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Evaluates at a scalar; negative exponents need a nonzero point.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        let inv = x.inv();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                x.pow(*e as u64)
            } else {
                inv.as_ref().expect("negative exponent at zero").pow(e.unsigned_abs())
            };
            acc = &acc + &(c * &p);
        }
        acc
    }

    pub fn convert(&self, target: Field) -> crate::error::Result<WeightPoly> {
        let mut out = WeightPoly::zero(target);
        for (e, c) in &self.terms {
            out.add_term(*e, &target.convert(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("({c})*t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Ring context for [`WeightPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightPolyRing(pub Field);

impl Ring for WeightPolyRing {
    type Elem = WeightPoly;
    fn zero(&self) -> WeightPoly {
        WeightPoly::zero(self.0)
    }
    fn one(&self) -> WeightPoly {
        WeightPoly::one(self.0)
    }
    fn add(&self, a: &WeightPoly, b: &WeightPoly) -> WeightPoly {
        a.add(b)
    }
    fn mul(&self, a: &WeightPoly, b: &WeightPoly) -> WeightPoly {
        a.mul(b)
    }
    fn neg(&self, a: &WeightPoly) -> WeightPoly {
        a.neg()
    }
    fn is_zero(&self, a: &WeightPoly) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels() {
        let z = WeightPoly::zero(Field::Rational);
        assert_eq!(z.deg(), ExtInt::NegInf);
        assert_eq!(z.ord(), ExtInt::PosInf);
        let p = WeightPoly::from_terms(Field::Rational, [(-2, Field::Rational.from_i64(3)), (5, Field::Rational.one())]);
        assert_eq!(p.deg(), ExtInt::Finite(5));
        assert_eq!(p.ord(), ExtInt::Finite(-2));
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = Field::Prime(5);
        let p = WeightPoly::monomial(f.from_i64(2), 3);
        let q = WeightPoly::monomial(f.from_i64(3), 3);
        assert!(p.add(&q).is_zero());
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn eval_laurent() {
        let q = Field::Rational;
        let p = WeightPoly::from_terms(q, [(-1, q.one()), (2, q.from_i64(2))]);
        assert_eq!(p.eval(&q.from_i64(2)), &q.from_i64(8) + &Scalar::Rat(num_rational::BigRational::new(1.into(), 2.into())));
    }
}
