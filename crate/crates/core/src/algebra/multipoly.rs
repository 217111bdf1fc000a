//! Sparse multivariate polynomials, used for symbolic identity checks in indeterminates z.

use std::collections::BTreeMap;

use super::field::{Field, Scalar};
use super::ring::Ring;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let v = &*old + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = v;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }
}

/// Ring context: a polynomial ring over `field` in `nvars` indeterminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiPolyRing {
    pub field: Field,
    pub nvars: usize,
}

impl MultiPolyRing {
    pub fn new(field: Field, nvars: usize) -> MultiPolyRing {
        MultiPolyRing { field, nvars }
    }

    pub fn constant(&self, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly { terms: BTreeMap::new() };
        p.add_term(vec![0; self.nvars], c);
        p
    }

    pub fn int(&self, v: i64) -> MultiPoly {
        self.constant(self.field.from_i64(v))
    }

    /// The indeterminate with index `i`.
    pub fn var(&self, i: usize) -> MultiPoly {
        self.monomial(self.field.one(), &[i])
    }

    /// `c` times the product of the listed indeterminates (with repetition).
    pub fn monomial(&self, c: Scalar, vars: &[usize]) -> MultiPoly {
        let mut e = vec![0; self.nvars];
        for &v in vars {
            e[v] += 1;
        }
        let mut p = MultiPoly { terms: BTreeMap::new() };
        p.add_term(e, c);
        p
    }

    pub fn scale(&self, p: &MultiPoly, s: &Scalar) -> MultiPoly {
        let mut out = self.zero();
        for (m, c) in &p.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }
}

impl Ring for MultiPolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn one(&self) -> MultiPoly {
        self.constant(self.field.one())
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        MultiPoly { terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.terms.is_empty()
    }
    fn from_i64(&self, v: i64) -> MultiPoly {
        self.int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_sum() {
        let r = MultiPolyRing::new(Field::Rational, 2);
        let s = r.add(&r.var(0), &r.var(1));
        let sq = r.mul(&s, &s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&vec![1, 1]), Some(&Field::Rational.from_i64(2)));
        assert!(r.is_zero(&r.sub(&sq, &sq)));
    }
}
