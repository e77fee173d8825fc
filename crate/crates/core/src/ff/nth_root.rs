//! n-th roots in finite fields without discrete logarithms in the full group:
//! the coprime part of `n` is inverted directly, and each prime dividing
//! `gcd(n, |F|-1)` is handled by Adleman-Manders-Miller inside its Sylow
//! subgroup.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{embed, Fe, Field, FieldExt};
use super::order::{divisors, factor};
use crate::error::{Error, Result};

/// `lambda` with `lambda^n = c` in the smallest extension `F_(i)` of `c`'s
/// field of degree `i | n`, together with that field.
pub fn nth_root_min_ext(c: &Fe, n: u64) -> Result<(Fe, Field)> {
    let degrees: Vec<usize> = divisors(n as u128).into_iter().map(|d| d as usize).collect();
    nth_root_in_degrees(c, n, &degrees)
}

/// As [`nth_root_min_ext`] but only trying the listed extension degrees.
pub fn nth_root_in_degrees(c: &Fe, n: u64, degrees: &[usize]) -> Result<(Fe, Field)> {
    if c.is_zero() {
        return Err(Error::ZeroBase);
    }
    if n == 0 {
        return Err(Error::Internal("root index must be positive".into()));
    }
    for &i in degrees {
        let ext = super::field::extend(c.field(), i)?;
        let ce = embed(c, &ext)?;
        if is_nth_power(&ce, n) {
            let r = nth_root(&ce, n)?;
            debug_assert_eq!(r.pow(n as u128), ce);
            return Ok((r, ext));
        }
    }
    Err(Error::NotSolvable)
}

/// `c^((Q-1)/gcd(n, Q-1)) = 1`.
pub fn is_nth_power(c: &Fe, n: u64) -> bool {
    let m = c.field().order() - BigUint::one();
    let g = m.gcd(&BigUint::from(n));
    c.pow_big(&(&m / &g)).is_one()
}

/// Some `x` in `c`'s field with `x^n = c`.
pub fn nth_root(c: &Fe, n: u64) -> Result<Fe> {
    if c.is_zero() {
        return Err(Error::ZeroBase);
    }
    if !is_nth_power(c, n) {
        return Err(Error::NotSolvable);
    }
    let m = c.field().order() - BigUint::one();
    let nb = BigUint::from(n);
    let g = m.gcd(&nb);
    // x^n = (x^g)^k with gcd(k, m/g) = 1: invert k on the image subgroup.
    let k = &nb / &g;
    let mg = &m / &g;
    let d = if mg.is_one() {
        c.clone()
    } else {
        let kinv = k
            .modinv(&mg)
            .ok_or_else(|| Error::Internal("k not invertible".into()))?;
        c.pow_big(&kinv)
    };
    let g64: u64 = g.try_into().expect("g divides n");
    root_dividing(&d, g64, &m)
}

/// `x^g = d` for `g | m`, one prime of `g` at a time, choosing among the
/// `r` candidate roots one that is still a `(g/r)`-th power.
fn root_dividing(d: &Fe, g: u64, m: &BigUint) -> Result<Fe> {
    if g == 1 {
        return Ok(d.clone());
    }
    let r = factor(g as u128)[0].0 as u64;
    let rest = g / r;
    let y = amm_root(d, r, m)?;
    if rest == 1 {
        return Ok(y);
    }
    let zeta = root_of_unity(d.field(), r, m);
    let test = m / BigUint::from(rest);
    let mut cand = y;
    for _ in 0..r {
        if cand.pow_big(&test).is_one() {
            return root_dividing(&cand, rest, m);
        }
        cand = &cand * &zeta;
    }
    Err(Error::NotSolvable)
}

/// Least-encoding element that is not an `r`-th power.
fn non_residue(f: &Field, r: u64, m: &BigUint) -> Fe {
    let e = m / BigUint::from(r);
    let mut i: u128 = 2;
    loop {
        let x = f.from_index(i);
        if !x.is_zero() && !x.pow_big(&e).is_one() {
            return x;
        }
        i += 1;
    }
}

/// A primitive `r`-th root of unity (`r` prime, `r | m`).
fn root_of_unity(f: &Field, r: u64, m: &BigUint) -> Fe {
    non_residue(f, r, m).pow_big(&(m / BigUint::from(r)))
}

/// Adleman-Manders-Miller `r`-th root for prime `r | m`, `d` an `r`-th power.
fn amm_root(d: &Fe, r: u64, m: &BigUint) -> Result<Fe> {
    let rb = BigUint::from(r);
    let mut s = 0u32;
    let mut t = m.clone();
    while (&t % &rb).is_zero() {
        t /= &rb;
        s += 1;
    }
    // x0^r = d * w^{-1} with w in the r-Sylow subgroup
    let alpha = if t.is_one() {
        BigUint::zero()
    } else {
        rb.modinv(&t)
            .ok_or_else(|| Error::Internal("r not invertible mod t".into()))?
    };
    let x0 = d.pow_big(&alpha);
    let w = d * &x0.pow(r as u128).inv().ok_or(Error::ZeroBase)?;
    if w.is_one() {
        return Ok(x0);
    }
    // z^r = w inside the cyclic group of order r^s generated by gamma
    let gamma = non_residue(d.field(), r, m).pow_big(&t);
    let l = sylow_log(&gamma, &w, r, s)?;
    let lb = BigUint::from(r).pow(s);
    if !(&l % &rb).is_zero() {
        return Err(Error::NotSolvable);
    }
    let z = gamma.pow_big(&((&l / &rb) % lb));
    Ok(&x0 * &z)
}

/// Discrete log of `w` to base `gamma` of order `r^s` (Pohlig-Hellman).
fn sylow_log(gamma: &Fe, w: &Fe, r: u64, s: u32) -> Result<BigUint> {
    let rb = BigUint::from(r);
    let top = gamma.pow_big(&rb.pow(s - 1));
    let gamma_inv = gamma.inv().ok_or(Error::ZeroBase)?;
    let mut l = BigUint::zero();
    let mut rk = BigUint::one();
    for k in 0..s {
        let h = (w * &gamma_inv.pow_big(&l)).pow_big(&rb.pow(s - 1 - k));
        let mut acc = gamma.field().one();
        let mut digit = None;
        for j in 0..r {
            if acc == h {
                digit = Some(j);
                break;
            }
            acc = &acc * &top;
        }
        let j = digit.ok_or(Error::NotSolvable)?;
        l += &rk * BigUint::from(j);
        rk *= &rb;
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    #[test]
    fn one_is_its_own_root() {
        let f = build_field(2, 3).unwrap();
        let (r, ext) = nth_root_min_ext(&f.one(), 7).unwrap();
        assert!(r.is_one());
        assert_eq!(ext.k(), 3);
    }

    #[test]
    fn seventh_root_in_gf8_tower() {
        let f = build_field(2, 3).unwrap();
        let x = f.from_index(2);
        let c = (&x * &x - &x).pow_i(-4).unwrap();
        let (lam, ext) = nth_root_min_ext(&c, 7).unwrap();
        assert_eq!(lam.pow(7), embed(&c, &ext).unwrap());
        assert!(ext.k() == 3 || ext.k() == 21);
    }

    #[test]
    fn every_square_in_gf13_has_root() {
        let f = build_field(13, 1).unwrap();
        for i in 1..13u64 {
            let c = f.from_u64(i);
            match nth_root(&c, 4) {
                Ok(r) => assert_eq!(r.pow(4), c),
                Err(e) => {
                    assert_eq!(e, Error::NotSolvable);
                    assert!(!is_nth_power(&c, 4));
                }
            }
        }
    }

    #[test]
    fn non_residue_without_extension_fails() {
        let f = build_field(7, 1).unwrap();
        let c = f.from_u64(3); // primitive, not a square
        assert_eq!(
            nth_root_in_degrees(&c, 2, &[1]).unwrap_err(),
            Error::NotSolvable
        );
        let (r, ext) = nth_root_min_ext(&c, 2).unwrap();
        assert_eq!(ext.k(), 2);
        assert_eq!(r.pow(2), embed(&c, &ext).unwrap());
    }

    #[test]
    fn zero_base_rejected() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(nth_root_min_ext(&f.zero(), 3).unwrap_err(), Error::ZeroBase);
    }

    #[test]
    fn repeated_prime_in_index() {
        // r^2 | n with r | |F|-1 exercises the candidate retry
        let f = build_field(37, 1).unwrap();
        for i in 1..37u64 {
            let c = f.from_u64(i);
            if is_nth_power(&c, 9) {
                assert_eq!(nth_root(&c, 9).unwrap().pow(9), c);
            }
        }
    }
}
