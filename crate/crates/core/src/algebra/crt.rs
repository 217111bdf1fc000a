use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{powmod, Scalar};
use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// All primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// The `k` smallest primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut limit = 32usize.max(k * 4);
    loop {
        let ps = primes_up_to(limit);
        if ps.len() >= k {
            return ps[..k].to_vec();
        }
        limit *= 2;
    }
}

/// The unique integer of absolute value at most `bound` matching every residue.
///
/// The modulus product must be at least `2·bound + 1`.
pub fn crt_reconstruct(residues: &[(u64, Scalar)], bound: &BigInt) -> Result<BigInt> {
    if bound.is_negative() {
        return Err(Error::InvalidInput("negative bound".into()));
    }
    let mut modulus = BigInt::one();
    let mut x = BigInt::zero();
    let mut seen = std::collections::HashSet::new();
    for (p, r) in residues {
        let v = match r {
            Scalar::Mod { v, p: q } if q == p => *v,
            _ => return Err(Error::FieldMismatch),
        };
        if !seen.insert(*p) {
            return Err(Error::InvalidInput(format!("prime {p} repeated")));
        }
        let pb = BigInt::from(*p);
        // x' = x + modulus * t with x' ≡ v (mod p).
        let m_mod = modulus.mod_floor(&pb).to_u64().expect("residue fits");
        let x_mod = x.mod_floor(&pb).to_u64().expect("residue fits");
        let inv = Scalar::Mod { v: m_mod, p: *p }.inv().ok_or(Error::InvalidInput(format!("{p} not coprime")))?;
        let diff = &Scalar::Mod { v, p: *p } - &Scalar::Mod { v: x_mod, p: *p };
        let t = (&diff * &inv).residue().unwrap();
        x += &modulus * BigInt::from(t);
        modulus *= pb;
    }
    let need: BigInt = bound * 2 + 1;
    if modulus < need {
        return Err(Error::InsufficientModulus);
    }
    let x = x.mod_floor(&modulus);
    let candidate = if &x > bound { x - &modulus } else { x };
    if candidate.abs() > *bound {
        return Err(Error::InconsistentResidues);
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(list: &[(u64, u64)]) -> Vec<(u64, Scalar)> {
        list.iter().map(|&(p, v)| (p, Scalar::Mod { v, p })).collect()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, primes_up_to(59));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn reconstruction_examples() {
        assert_eq!(crt_reconstruct(&res(&[(3, 1), (5, 1)]), &BigInt::from(1)).unwrap(), BigInt::from(1));
        assert_eq!(crt_reconstruct(&res(&[(3, 2), (5, 3)]), &BigInt::from(7)).unwrap(), BigInt::from(-7));
        assert_eq!(
            crt_reconstruct(&res(&[(2, 0), (3, 0), (5, 0)]), &BigInt::from(10)).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn reconstruction_errors() {
        assert_eq!(crt_reconstruct(&res(&[(3, 1)]), &BigInt::from(5)), Err(Error::InsufficientModulus));
        // 4 mod 15 is not within distance 3 of zero.
        assert_eq!(
            crt_reconstruct(&res(&[(3, 1), (5, 4)]), &BigInt::from(3)),
            Err(Error::InconsistentResidues)
        );
    }
}
