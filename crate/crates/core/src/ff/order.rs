use num_prime::nt_funcs::factorize128;
use num_traits::ToPrimitive;

use super::field::{Fe, Field, FieldExt};
use crate::error::{Error, Result};

/// Prime factorization of `n` as sorted `(prime, exponent)` pairs.
pub fn factor(n: u128) -> Vec<(u128, u32)> {
    if n <= 1 {
        return Vec::new();
    }
    factorize128(n)
        .into_iter()
        .map(|(p, e)| (p, e as u32))
        .collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u128) -> Vec<u128> {
    let mut out = vec![1u128];
    for (p, e) in factor(n) {
        let cur = out.clone();
        let mut pk = 1u128;
        for _ in 0..e {
            pk *= p;
            out.extend(cur.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Least `m >= 1` with `e^m = 1`, found by stripping prime factors of `|F|-1`.
pub fn mult_order(e: &Fe) -> Result<u128> {
    if e.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = e
        .field()
        .size_u128()
        .ok_or(Error::FieldTooLarge)?
        - 1;
    Ok(order_dividing(m, &factor(m), |k| e.pow(k).is_one()))
}

/// Least divisor `d` of `m` with `is_identity(d)`, given that `is_identity(m)`.
pub fn order_dividing<F: Fn(u128) -> bool>(m: u128, fac: &[(u128, u32)], is_identity: F) -> u128 {
    let mut ord = m;
    for &(p, _) in fac {
        while ord % p == 0 && is_identity(ord / p) {
            ord /= p;
        }
    }
    ord
}

/// The primitive element of least integer encoding.
pub fn primitive_element(f: &Field) -> Result<Fe> {
    let m = f.size_u128().ok_or(Error::FieldTooLarge)? - 1;
    let fac = factor(m);
    (1..=m)
        .map(|i| f.from_index(i))
        .find(|g| fac.iter().all(|&(p, _)| !g.pow(m / p).is_one()))
        .ok_or_else(|| Error::Internal("no primitive element".into()))
}

/// Least primitive root modulo a prime `p`.
pub fn primitive_root_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let m = (p - 1) as u128;
    let fac = factor(m);
    (2..p)
        .find(|&g| {
            fac.iter()
                .all(|&(r, _)| super::fp::pow_mod(g, (m / r) as u64, p) != 1)
        })
        .expect("prime has a primitive root")
}

/// `|F|-1` as `u128` when it fits.
pub fn unit_order_u128(f: &Field) -> Result<u128> {
    f.order()
        .to_u128()
        .map(|n| n - 1)
        .ok_or(Error::FieldTooLarge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    #[test]
    fn order_of_one_is_one() {
        let f = build_field(2, 3).unwrap();
        assert_eq!(mult_order(&f.one()).unwrap(), 1);
    }

    #[test]
    fn generator_of_gf8_has_order_seven() {
        let f = build_field(2, 3).unwrap();
        let g = primitive_element(&f).unwrap();
        // exhaust powers
        let mut x = g.clone();
        let mut n = 1;
        while !x.is_one() {
            x = &x * &g;
            n += 1;
        }
        assert_eq!(n, 7);
        assert_eq!(mult_order(&g).unwrap(), 7);
    }

    #[test]
    fn root_of_unity_21_in_gf64() {
        let f = build_field(2, 6).unwrap();
        let g = primitive_element(&f).unwrap();
        let z = g.pow(63 / 21);
        assert_eq!(mult_order(&z).unwrap(), 21);
    }

    #[test]
    fn zero_has_no_order() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(mult_order(&f.zero()).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn divisors_of_91() {
        assert_eq!(divisors(91), vec![1, 7, 13, 91]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_prime(7), 3);
        assert_eq!(primitive_root_prime(13), 2);
    }
}
