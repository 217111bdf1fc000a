//! Exact field arithmetic, dense matrices, determinants, Pfaffians and polynomials.

pub mod crt;
pub mod elim;
pub mod field;
pub mod matrix;
pub mod multipoly;
pub mod perm;
pub mod poly;
pub mod polymat;
pub mod ring;
pub mod upoly;

pub use crt::{crt_reconstruct, first_primes, is_prime, primes_up_to};
pub use field::{Field, Scalar};
pub use matrix::{det, pfaffian, schur_complement, Matrix, SkewMatrix};
pub use multipoly::{MultiPoly, MultiPolyRing};
pub use poly::{ExtInt, WeightPoly, WeightPolyRing};
pub use polymat::{poly_matrix_det, poly_matrix_pfaffian, poly_matrix_pfaffian_eliminated, poly_matrix_pfaffian_interpolated};
pub use ring::{FieldOps, Ring};
