use crate::algebra::{poly_matrix_pfaffian, WeightPoly, WeightPolyRing};
use crate::error::{Error, Result};
use crate::matroid::{parity_form, phi_grid, resolve_parity_constant, MatroidParity};

use super::WeightedCount;

fn theta_weights(parity: &MatroidParity, w: &[i64]) -> Result<Vec<WeightPoly>> {
    if w.len() != parity.len() {
        return Err(Error::Dimension(format!("{} weights for {} lines", w.len(), parity.len())));
    }
    Ok(w.iter().map(|&x| WeightPoly::theta_pow(parity.field(), x)).collect())
}

/// `pf A Δ(θ^w) Aᵀ`, whose `θ^x` coefficient is `c` times the number of parity bases of weight `x`.
pub fn theta_pfaffian(parity: &MatroidParity, w: &[i64]) -> Result<WeightPoly> {
    let f = parity.field();
    let ring = WeightPolyRing(f);
    let z = theta_weights(parity, w)?;
    let form = parity_form(&ring, |s| WeightPoly::constant(s.clone()), parity, &z)?;
    poly_matrix_pfaffian(f, &form)
}

/// `pf Φ(θ^w)`; its degree is at most `w(L) − ζ`, with equality exactly when a base exists.
pub fn bordered_theta_pfaffian(parity: &MatroidParity, w: &[i64]) -> Result<WeightPoly> {
    let f = parity.field();
    let ring = WeightPolyRing(f);
    let z = theta_weights(parity, w)?;
    let g = phi_grid(&ring, |s| WeightPoly::constant(s.clone()), parity, &z)?;
    poly_matrix_pfaffian(f, &g)
}

/// Minimum weight `ζ = ord pf A Δ(θ^w) Aᵀ` and the count `c⁻¹ · [θ^ζ]`.
pub fn count_min_weight_parity_bases(parity: &MatroidParity, w: &[i64]) -> Result<WeightedCount> {
    let f = parity.field();
    let poly = theta_pfaffian(parity, w)?;
    let (Some(zeta), Some(lead)) = (poly.ord().finite(), poly.lowest_coeff()) else {
        return Ok(WeightedCount::none(f));
    };
    let c = match parity.constant() {
        Some(c) => c.clone(),
        None => resolve_parity_constant(parity)?.ok_or(Error::ConstantUnavailable)?,
    };
    let inv = c.inv().ok_or(Error::ConstantUnavailable)?;
    Ok(WeightedCount { count: lead * &inv, min_weight: Some(zeta), base: None, field: f })
}
