use crate::algebra::elim;
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

use super::pair::xi_grid;
use super::parity::phi_grid;
use super::{MatrixPair, MatroidParity};

fn phi_j(field: Field, n: usize, j: &[usize]) -> Vec<Scalar> {
    let mut z = vec![field.one(); n];
    for &k in j {
        z[k] = field.zero();
    }
    z
}

fn require_char_zero(field: Field) -> Result<()> {
    match field {
        Field::Rational => Ok(()),
        Field::Prime(_) => Err(Error::PositiveCharacteristic),
    }
}

/// Whether some common base contains `j`, via nonsingularity of `Ξ(φ_J(1))`.
/// Valid for Pfaffian pairs in characteristic zero.
pub fn is_extensible_pair(pair: &MatrixPair, j: &[usize]) -> Result<bool> {
    require_char_zero(pair.field())?;
    is_extensible_pair_unchecked(pair, j)
}

/// The same test without the characteristic guard.
pub fn is_extensible_pair_unchecked(pair: &MatrixPair, j: &[usize]) -> Result<bool> {
    if j.iter().any(|&k| k >= pair.len()) {
        return Err(Error::InvalidInput("column index out of range".into()));
    }
    let f = pair.field();
    let g = xi_grid(&f, |s| s.clone(), pair, &phi_j(f, pair.len(), j))?;
    Ok(!elim::det(&f, &g).is_zero())
}

/// Whether some parity base contains the lines `j`, via nonsingularity of `Φ(φ_J(1))`.
pub fn is_extensible_parity(parity: &MatroidParity, j: &[usize]) -> Result<bool> {
    require_char_zero(parity.field())?;
    is_extensible_parity_unchecked(parity, j)
}

pub fn is_extensible_parity_unchecked(parity: &MatroidParity, j: &[usize]) -> Result<bool> {
    if j.iter().any(|&k| k >= parity.len()) {
        return Err(Error::InvalidInput("line index out of range".into()));
    }
    let f = parity.field();
    let g = phi_grid(&f, |s| s.clone(), parity, &phi_j(f, parity.len(), j))?;
    Ok(!elim::pfaffian(&f, &g).is_zero())
}

/// Greedy scan in column order keeping the chosen set extensible.
fn greedy(n: usize, r: usize, extensible: impl Fn(&[usize]) -> Result<bool>) -> Result<Option<Vec<usize>>> {
    if !extensible(&[])? {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(r);
    for j in 0..n {
        if chosen.len() == r {
            break;
        }
        chosen.push(j);
        if !extensible(&chosen)? {
            chosen.pop();
        }
    }
    Ok((chosen.len() == r).then_some(chosen))
}

/// A common base of a Pfaffian pair; enumeration fallback in positive characteristic.
pub fn find_common_base(pair: &MatrixPair) -> Result<Option<Vec<usize>>> {
    let found = match pair.field() {
        Field::Rational => greedy(pair.len(), pair.rank(), |j| is_extensible_pair_unchecked(pair, j))?,
        Field::Prime(_) => pair.enumerate_bases().into_iter().next().map(|(b, _)| b),
    };
    if let Some(b) = &found {
        if !pair.is_common_base(b) {
            return Err(Error::Internal("greedy result is not a common base".into()));
        }
    }
    Ok(found)
}

/// A parity base of a Pfaffian parity; enumeration fallback in positive characteristic.
pub fn find_parity_base(parity: &MatroidParity) -> Result<Option<Vec<usize>>> {
    let found = match parity.field() {
        Field::Rational => greedy(parity.len(), parity.rank(), |j| is_extensible_parity_unchecked(parity, j))?,
        Field::Prime(_) => parity.enumerate_bases().into_iter().next().map(|(b, _)| b),
    };
    if let Some(b) = &found {
        if !parity.is_parity_base(b) {
            return Err(Error::Internal("greedy result is not a parity base".into()));
        }
    }
    Ok(found)
}
