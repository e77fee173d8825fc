//! Dense polynomials over a prime field GF(p), stored low-to-high as `u64`
//! residues. These back both element arithmetic in `GF(p^k)` and the
//! deterministic modulus search.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}


pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(if x >= y { x - y } else { x + p - y });
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if p < (1 << 31) {
        // (p-1)^2 < 2^62, so accumulate and reduce once every few steps.
        let mut acc = vec![0u64; out.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let s = acc[i + j] + x * y;
                acc[i + j] = if s >= (1 << 62) { s % p } else { s };
            }
        }
        for (o, a) in out.iter_mut().zip(acc) {
            *o = a % p;
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    divrem(a, m, p).1
}

pub(crate) fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!m.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let f = mul_mod(c, lead_inv, p);
        q[i - dm] = f;
        for (j, &mj) in m.iter().enumerate() {
            let idx = i - dm + j;
            r[idx] = (r[idx] + p - mul_mod(f, mj, p)) % p;
        }
    }
    r.truncate(dm);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv_mod(l, p);
            a.iter().map(|&x| mul_mod(x, li, p)).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m` (extended Euclid); `None` when not coprime.
pub(crate) fn inv_poly_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(s0.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod_small(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(&r, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

/// Ben-Or irreducibility test: `f` (degree `k`) is irreducible iff
/// `gcd(f, t^{p^d} - t) = 1` for every `d <= k/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    let k = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let f = monic(&f, p);
    let t = vec![0, 1];
    let mut h = t.clone();
    for _ in 1..=k / 2 {
        h = powmod_small(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &t, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `k` over GF(p) whose lower coefficient
/// vector, read as the integer `sum c_i p^i`, is smallest.
pub(crate) fn minimal_irreducible(p: u64, k: usize) -> Vec<u64> {
    let mut lower = vec![0u64; k];
    loop {
        let mut f = lower.clone();
        f.push(1);
        // cheap root screen before the full test
        let has_root = (0..p.min(64)).any(|x| eval(&f, x, p) == 0);
        if !(has_root && k > 1) && is_irreducible(&f, p) {
            return f;
        }
        // increment the base-p counter
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial of degree {k} over GF({p})");
        }
    }
}

pub(crate) fn eval(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_cubic_modulus_is_t3_t_1() {
        assert_eq!(minimal_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn ben_or_agrees_with_root_test_on_cubics() {
        for p in [2u64, 3, 5] {
            for n in 0..p.pow(3) {
                let f = vec![n % p, (n / p) % p, (n / p / p) % p, 1];
                let rootless = (0..p).all(|x| eval(&f, x, p) != 0);
                assert_eq!(is_irreducible(&f, p), rootless, "p={p} f={f:?}");
            }
        }
    }

    #[test]
    fn inverse_mod_poly() {
        let m = vec![1, 1, 0, 1];
        for a in 1u64..8 {
            let av = vec![a & 1, (a >> 1) & 1, (a >> 2) & 1];
            let inv = inv_poly_mod(&av, &m, 2).unwrap();
            assert_eq!(mulmod(&av, &inv, &m, 2), vec![1]);
        }
    }
}
