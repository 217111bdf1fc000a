//! Dense univariate polynomials and the rational function field over a [`Field`].

use super::field::{Field, Scalar};
use super::ring::{FieldOps, Ring};

/// Polynomial with coefficients from lowest to highest degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> UPoly {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> UPoly {
        UPoly::new(c.field(), vec![c])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        UPoly::new(self.field, c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &UPoly) -> UPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::new(self.field, c)
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        UPoly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dl = d.lead().expect("polynomial division by zero").inv().unwrap();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(self.field, q), UPoly::new(self.field, r))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

/// Element of K(θ) kept as a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub num: UPoly,
    pub den: UPoly,
}

impl RatFunc {
    pub fn from_poly(p: UPoly) -> RatFunc {
        let den = UPoly::constant(p.field().one());
        RatFunc { num: p, den }
    }

    fn reduced(num: UPoly, den: UPoly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::from_poly(UPoly::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.divrem(&g).0, den.divrem(&g).0);
        let l = d.lead().unwrap().inv().unwrap();
        n = n.scale(&l);
        d = d.scale(&l);
        RatFunc { num: n, den: d }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }
}

/// Ring and field context for K(θ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatFuncField(pub Field);

impl Ring for RatFuncField {
    type Elem = RatFunc;
    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(UPoly::zero(self.0))
    }
    fn one(&self) -> RatFunc {
        RatFunc::from_poly(UPoly::constant(self.0.one()))
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return RatFunc::reduced(a.num.add(&b.num), a.den.clone());
        }
        RatFunc::reduced(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        RatFunc::reduced(a.num.mul(&b.num), a.den.mul(&b.den))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(), den: a.den.clone() }
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }
}

impl FieldOps for RatFuncField {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.num.is_zero() {
            return None;
        }
        Some(RatFunc::reduced(a.den.clone(), a.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: Field, c: &[i64]) -> UPoly {
        UPoly::new(f, c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let f = Field::Rational;
        let a = p(f, &[-1, 0, 1]);
        let b = p(f, &[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(f, &[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(f, &[-1, 1]).mul(&p(f, &[2, 1]))), p(f, &[-1, 1]));
    }

    #[test]
    fn ratfunc_normalizes() {
        let k = RatFuncField(Field::Prime(7));
        let f = k.0;
        let x = RatFunc::from_poly(p(f, &[0, 1]));
        let xi = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &xi), k.one());
        let s = k.add(&xi, &xi);
        assert_eq!(s.num, p(f, &[2]));
        assert_eq!(s.den, p(f, &[0, 1]));
    }
}
