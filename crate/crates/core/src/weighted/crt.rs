use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::perm::binomial;
use crate::algebra::{crt_reconstruct, elim, first_primes, Field, Scalar};
use crate::error::{Error, Result};
use crate::matroid::{parity_form, resolve_pair_constant, resolve_parity_constant, MatrixPair, MatroidParity};

use super::{count_min_weight_common_bases, theta_pfaffian};

/// An integral instance over ℚ to be counted modulo a sequence of primes.
#[derive(Clone, Copy, Debug)]
pub enum CrtTarget<'a> {
    Pair(&'a MatrixPair),
    Parity(&'a MatroidParity),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtOutcome {
    pub count: BigInt,
    pub constant: BigInt,
    pub min_weight: Option<i64>,
    pub primes: Vec<u64>,
    /// Residues of `c · count`.
    pub residues: Vec<u64>,
    /// Primes dividing the constant, whose residue is forced to zero.
    pub forced_zero: Vec<u64>,
}

/// What one prime contributes before the minimum weight is settled.
enum Local {
    Zero,
    Value(Scalar, Option<i64>),
    /// Weighted parity: the whole polynomial's `(exponent, coefficient)` terms.
    Terms(Vec<(i64, Scalar)>),
}

impl CrtTarget<'_> {
    fn field(&self) -> Field {
        match self {
            CrtTarget::Pair(p) => p.field(),
            CrtTarget::Parity(p) => p.field(),
        }
    }

    fn entries_integral(&self) -> bool {
        match self {
            CrtTarget::Pair(p) => p.a1().is_integral() && p.a2().is_integral(),
            CrtTarget::Parity(p) => p.matrix().is_integral(),
        }
    }

    fn gamma(&self) -> BigInt {
        let m = match self {
            CrtTarget::Pair(p) => [p.a1().max_abs(), p.a2().max_abs()].into_iter().flatten().max(),
            CrtTarget::Parity(p) => p.matrix().max_abs(),
        };
        m.map_or_else(BigInt::zero, |q| q.to_integer())
    }

    /// Ground-set size and base size.
    fn dims(&self) -> (usize, usize) {
        match self {
            CrtTarget::Pair(p) => (p.len(), p.rank()),
            CrtTarget::Parity(p) => (p.len(), p.rank()),
        }
    }

    fn constant(&self) -> Result<Option<Scalar>> {
        match self {
            CrtTarget::Pair(p) => Ok(match p.constant() {
                Some(c) => Some(c.clone()),
                None => resolve_pair_constant(p)?,
            }),
            CrtTarget::Parity(p) => Ok(match p.constant() {
                Some(c) => Some(c.clone()),
                None => resolve_parity_constant(p)?,
            }),
        }
    }

    fn local(&self, p: u64, c: &BigInt, weights: Option<&[i64]>) -> Result<Local> {
        let f = Field::prime(p)?;
        match (self, weights) {
            (CrtTarget::Pair(pair), None) => {
                let q = pair.convert(f)?;
                Ok(Local::Value(q.a1().mul(&q.a2().transpose())?.det()?, None))
            }
            (CrtTarget::Parity(par), None) => {
                let q = par.convert(f)?;
                let form = parity_form(&f, |s| s.clone(), &q, &vec![f.one(); q.len()])?;
                Ok(Local::Value(elim::pfaffian(&f, &form), None))
            }
            (CrtTarget::Pair(pair), Some(w)) => {
                let q = pair.convert(f)?;
                let c = f.from_bigint(c);
                let res = count_min_weight_common_bases(&q, w)?;
                Ok(Local::Value(&res.count * &c, res.min_weight))
            }
            (CrtTarget::Parity(par), Some(w)) => {
                let q = par.convert(f)?;
                let poly = theta_pfaffian(&q, w)?;
                Ok(Local::Terms(poly.terms().map(|(e, c)| (e, c.clone())).collect()))
            }
        }
    }
}

/// Number of primes: `⌈r log₂(nrγ)⌉ + 2`, raised until the prime product reaches `2M + 1`
/// for `M = |c| · C(n, r)`.
pub fn prime_plan(n: usize, r: usize, gamma: &BigInt, c: &BigInt) -> (Vec<u64>, BigInt) {
    let scale = BigInt::from(n as u64) * BigInt::from(r as u64) * gamma;
    let log = if scale <= BigInt::from(1) { 0.0 } else { scale.bits() as f64 - 1.0 + frac_log2(&scale) };
    let k = (r as f64 * log).ceil() as usize + 2;
    let bound = c.abs() * BigInt::from(binomial(n as u64, r as u64));
    let need = BigInt::from(2) * &bound + 1;
    let mut count = k;
    loop {
        let primes = first_primes(count);
        let prod: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
        if prod >= need {
            return (primes, bound);
        }
        count += 1;
    }
}

/// Fractional part of `log₂ x` from its leading bits.
fn frac_log2(x: &BigInt) -> f64 {
    let shift = x.bits().saturating_sub(53);
    let top: BigInt = x >> shift;
    let lead = top.to_string().parse::<f64>().unwrap_or(1.0);
    lead.log2() - (x.bits() - shift - 1) as f64
}

/// `c · N` reconstructed from residues modulo the planned primes, then divided by `c`.
/// With weights, `N` counts the minimum-weight bases.
pub fn count_over_primes(target: CrtTarget<'_>, weights: Option<&[i64]>) -> Result<CrtOutcome> {
    if target.field() != Field::Rational || !target.entries_integral() {
        return Err(Error::InvalidInput("modular counting needs integral entries over the rationals".into()));
    }
    let Some(c) = target.constant()? else {
        return Ok(CrtOutcome {
            count: BigInt::zero(),
            constant: BigInt::zero(),
            min_weight: None,
            primes: Vec::new(),
            residues: Vec::new(),
            forced_zero: Vec::new(),
        });
    };
    let c = c.to_integer().ok_or_else(|| Error::InvalidInput("constant must be an integer".into()))?;
    if c.is_zero() {
        return Err(Error::ConstantUnavailable);
    }
    let (n, r) = target.dims();
    let (primes, bound) = prime_plan(n, r, &target.gamma(), &c);
    let divides = |p: u64| (&c % BigInt::from(p)).is_zero();
    let locals: Vec<Local> = primes
        .par_iter()
        .map(|&p| if divides(p) { Ok(Local::Zero) } else { target.local(p, &c, weights) })
        .collect::<Result<_>>()?;

    // Parity weights: the minimum weight is the lowest exponent seen at any prime not dividing c.
    let zeta_from_terms = locals
        .iter()
        .filter_map(|l| match l {
            Local::Terms(t) => t.iter().map(|(e, _)| *e).min(),
            _ => None,
        })
        .min();
    let mut min_weight: Option<i64> = None;
    let mut residues = Vec::with_capacity(primes.len());
    for (&p, local) in primes.iter().zip(&locals) {
        let f = Field::prime(p)?;
        let v = match local {
            Local::Zero => f.zero(),
            Local::Value(v, w) => {
                if let Some(w) = w {
                    match min_weight {
                        None => min_weight = Some(*w),
                        Some(m) if m != *w => return Err(Error::InconsistentResidues),
                        _ => {}
                    }
                }
                v.clone()
            }
            Local::Terms(t) => {
                min_weight = zeta_from_terms;
                zeta_from_terms
                    .and_then(|z| t.iter().find(|(e, _)| *e == z).map(|(_, c)| c.clone()))
                    .unwrap_or_else(|| f.zero())
            }
        };
        residues.push((p, v));
    }
    if weights.is_some() && min_weight.is_none() {
        // No base anywhere: every residue is zero.
        if residues.iter().any(|(_, v)| !v.is_zero()) {
            return Err(Error::InconsistentResidues);
        }
    }
    let cn = crt_reconstruct(&residues, &bound)?;
    let (count, rem) = cn.div_rem(&c);
    if !rem.is_zero() || count.is_negative() {
        return Err(Error::InconsistentResidues);
    }
    let forced_zero = primes.iter().copied().filter(|&p| divides(p)).collect();
    Ok(CrtOutcome {
        count,
        constant: c,
        min_weight,
        forced_zero,
        residues: residues.iter().map(|(_, v)| v.residue().expect("prime field")).collect(),
        primes,
    })
}
