//! Determinants and Pfaffians of matrices with [`WeightPoly`] entries.

use super::elim::{self, Grid};
use super::field::{Field, Scalar};
use super::poly::{ExtInt, WeightPoly};
use super::upoly::{RatFunc, RatFuncField, UPoly};
use crate::error::{Error, Result};

fn check_square(m: &Grid<WeightPoly>) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("polynomial matrix is not square".into()));
    }
    Ok(n)
}

fn check_skew(m: &Grid<WeightPoly>) -> Result<usize> {
    let n = check_square(m)?;
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return Err(Error::NotSkew(i, i));
        }
        for j in i + 1..n {
            if !m[i][j].add(&m[j][i]).is_zero() {
                return Err(Error::NotSkew(i, j));
            }
        }
    }
    Ok(n)
}

/// Smallest shift making every exponent nonnegative.
fn nonneg_shift(m: &Grid<WeightPoly>) -> i64 {
    m.iter()
        .flatten()
        .filter_map(|p| p.ord().finite())
        .min()
        .map_or(0, |lo| (-lo).max(0))
}

fn to_ratfunc(field: Field, p: &WeightPoly, shift: i64) -> RatFunc {
    let Some(hi) = p.deg().finite() else {
        return RatFunc::from_poly(UPoly::zero(field));
    };
    let mut c = vec![field.zero(); (hi + shift + 1) as usize];
    for (e, v) in p.terms() {
        c[(e + shift) as usize] = v.clone();
    }
    RatFunc::from_poly(UPoly::new(field, c))
}

fn from_ratfunc(field: Field, r: &RatFunc, shift: i64) -> Result<WeightPoly> {
    if !r.is_polynomial() {
        return Err(Error::Internal("polynomial determinant left a denominator".into()));
    }
    let inv = r.den.coeffs()[0].inv().expect("monic");
    let terms = r.num.coeffs().iter().enumerate().map(|(e, c)| (e as i64 - shift, c * &inv));
    Ok(WeightPoly::from_terms(field, terms))
}

fn field_of(m: &Grid<WeightPoly>, field: Field) -> Result<Field> {
    if m.iter().flatten().any(|p| p.field() != field) {
        return Err(Error::FieldMismatch);
    }
    Ok(field)
}

/// Pfaffian of a skew polynomial matrix. Over ℚ by evaluation and interpolation, since elimination
/// over rational functions lets coefficients grow; over GF(p) by that elimination.
pub fn poly_matrix_pfaffian(field: Field, m: &Grid<WeightPoly>) -> Result<WeightPoly> {
    if field == Field::Rational {
        if let Some(pf) = poly_matrix_pfaffian_interpolated(field, m)? {
            return Ok(pf);
        }
    }
    poly_matrix_pfaffian_eliminated(field, m)
}

/// Pfaffian by elimination over the rational function field.
pub fn poly_matrix_pfaffian_eliminated(field: Field, m: &Grid<WeightPoly>) -> Result<WeightPoly> {
    let n = check_skew(m)?;
    field_of(m, field)?;
    let s = nonneg_shift(m);
    let k = RatFuncField(field);
    let grid: Grid<RatFunc> = m.iter().map(|r| r.iter().map(|p| to_ratfunc(field, p, s)).collect()).collect();
    let pf = elim::pfaffian(&k, &grid);
    from_ratfunc(field, &pf, s * (n as i64 / 2))
}

/// Determinant of a square polynomial matrix by elimination over the rational function field.
pub fn poly_matrix_det(field: Field, m: &Grid<WeightPoly>) -> Result<WeightPoly> {
    let n = check_square(m)?;
    field_of(m, field)?;
    let s = nonneg_shift(m);
    let k = RatFuncField(field);
    let grid: Grid<RatFunc> = m.iter().map(|r| r.iter().map(|p| to_ratfunc(field, p, s)).collect()).collect();
    let d = elim::det(&k, &grid);
    from_ratfunc(field, &d, s * n as i64)
}

/// Pfaffian by evaluation at `1, 2, …` and interpolation. `None` when the field has
/// too few elements for the degree bound.
pub fn poly_matrix_pfaffian_interpolated(field: Field, m: &Grid<WeightPoly>) -> Result<Option<WeightPoly>> {
    let n = check_skew(m)?;
    field_of(m, field)?;
    let s = nonneg_shift(m);
    // Each pairing takes one entry per row pair, so the degree is at most half the sum of row maxima.
    let row_max: i64 = m
        .iter()
        .map(|r| r.iter().filter_map(|p| p.deg().finite()).max().map_or(0, |d| d + s))
        .sum();
    let bound = (row_max / 2) as u64;
    let points = bound + 1;
    if let Some(q) = field.order() {
        if q <= points {
            return Ok(None);
        }
    }
    let xs: Vec<Scalar> = (1..=points).map(|i| field.from_i64(i as i64)).collect();
    let ys: Vec<Scalar> = xs
        .iter()
        .map(|x| {
            let g: Grid<Scalar> = m
                .iter()
                .map(|r| r.iter().map(|p| p.shift(s).eval(x)).collect())
                .collect();
            elim::pfaffian(&field, &g)
        })
        .collect();
    let coeffs = interpolate(field, &xs, &ys);
    let shift = s * (n as i64 / 2);
    Ok(Some(WeightPoly::from_terms(
        field,
        coeffs.into_iter().enumerate().map(|(e, c)| (e as i64 - shift, c)),
    )))
}

/// Newton interpolation returning monomial coefficients, lowest first.
pub fn interpolate(field: Field, xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - k];
            dd[i] = &num / &den;
        }
    }
    let mut poly = UPoly::zero(field);
    for i in (0..n).rev() {
        let lin = UPoly::new(field, vec![-&xs[i], field.one()]);
        poly = poly.mul(&lin).add(&UPoly::constant(dd[i].clone()));
    }
    let mut c = poly.coeffs().to_vec();
    c.resize(n.max(c.len()), field.zero());
    c
}

/// Exponent span of a polynomial, for diagnostics.
pub fn span(p: &WeightPoly) -> Option<(i64, i64)> {
    match (p.ord(), p.deg()) {
        (ExtInt::Finite(a), ExtInt::Finite(b)) => Some((a, b)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(f: Field, c: i64, e: i64) -> WeightPoly {
        WeightPoly::monomial(f.from_i64(c), e)
    }

    #[test]
    fn monomial_block() {
        let f = Field::Rational;
        let m = vec![vec![WeightPoly::zero(f), mono(f, 1, 2)], vec![mono(f, -1, 2), WeightPoly::zero(f)]];
        assert_eq!(poly_matrix_pfaffian(f, &m).unwrap(), mono(f, 1, 2));
    }

    #[test]
    fn two_line_blocks() {
        let f = Field::Rational;
        let z = WeightPoly::zero(f);
        let m = vec![
            vec![z.clone(), mono(f, 1, 1), z.clone(), z.clone()],
            vec![mono(f, -1, 1), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), mono(f, 1, 3)],
            vec![z.clone(), z.clone(), mono(f, -1, 3), z.clone()],
        ];
        assert_eq!(poly_matrix_pfaffian(f, &m).unwrap(), mono(f, 1, 4));
        assert_eq!(poly_matrix_pfaffian_interpolated(f, &m).unwrap().unwrap(), mono(f, 1, 4));
    }

    #[test]
    fn negative_exponents_and_det() {
        let f = Field::Prime(101);
        let m = vec![vec![mono(f, 2, -1), mono(f, 1, 3)], vec![mono(f, 1, 0), mono(f, 1, 1)]];
        let d = poly_matrix_det(f, &m).unwrap();
        assert_eq!(d, mono(f, 2, 0).sub(&mono(f, 1, 3)));
    }

    #[test]
    fn odd_order_rejected() {
        let f = Field::Rational;
        let m = vec![vec![WeightPoly::zero(f)]];
        assert_eq!(poly_matrix_pfaffian(f, &m), Err(Error::OddOrder(1)));
    }
}
