use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Fe, FieldExt};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Fixed seed for every randomized splitting step.
pub const SPLIT_SEED: u64 = 0x7A11_1A1;

/// Fields up to this size are scanned exhaustively for roots.
const SCAN_LIMIT: u128 = 1 << 16;

/// All roots of `f` in its coefficient field, sorted by integer encoding,
/// each paired with its multiplicity.
pub fn poly_roots(f: &UPoly) -> Result<Vec<(Fe, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let field = f.field().clone();
    let mut roots: Vec<Fe> = match field.size_u128() {
        Some(n) if n <= SCAN_LIMIT => (0..n)
            .map(|i| field.from_index(i))
            .filter(|x| f.eval(x).is_zero())
            .collect(),
        _ => {
            let fm = f.monic();
            let t = UPoly::t(&field);
            let tq = frobenius_power_of_t(&fm, 1);
            let g = fm.gcd(&(&tq - &t));
            let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
            let mut out = Vec::new();
            split_linear(&g, &mut rng, &mut out);
            out
        }
    };
    roots.sort();
    Ok(roots
        .into_iter()
        .map(|r| {
            let m = multiplicity(f, &r);
            (r, m)
        })
        .collect())
}

/// Distinct roots only.
pub fn distinct_roots(f: &UPoly) -> Result<Vec<Fe>> {
    Ok(poly_roots(f)?.into_iter().map(|(r, _)| r).collect())
}

fn multiplicity(f: &UPoly, r: &Fe) -> usize {
    let lin = UPoly::linear(r);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rem) = g.div_rem(&lin);
        if !rem.is_zero() || g.deg() == Some(0) {
            return m;
        }
        m += 1;
        g = q;
    }
}

/// `t^(|F|^j) mod m`.
fn frobenius_power_of_t(m: &UPoly, j: usize) -> UPoly {
    let field = m.field();
    let p = BigUint::from(field.p());
    let mut h = UPoly::t(field).rem(m);
    for _ in 0..j * field.k() {
        h = h.powmod(&p, m);
    }
    h
}

/// Splits a squarefree `g` whose roots all lie in the field.
fn split_linear(g: &UPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Fe>) {
    match g.deg() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(-g.coeff(0));
        }
        Some(_) => loop {
            let field = g.field().clone();
            let a = field.random(rng);
            let h = if field.p() == 2 {
                // absolute trace of a*t modulo g
                let mut s = UPoly::from_coeffs(&field, vec![field.zero(), a]).rem(g);
                let mut acc = s.clone();
                for _ in 1..field.k() {
                    s = s.mulmod(&s, g);
                    acc = &acc + &s;
                }
                acc
            } else {
                let e = (field.order() - BigUint::one()) >> 1;
                let base = UPoly::from_coeffs(&field, vec![a, field.one()]);
                &base.powmod(&e, g) - &UPoly::constant(field.one())
            };
            let d = g.gcd(&h);
            let dd = d.deg().unwrap_or(0);
            if dd > 0 && Some(dd) < g.deg() {
                let other = g.div_rem(&d).0;
                split_linear(&d, rng, out);
                split_linear(&other, rng, out);
                return;
            }
        },
    }
}

/// Coefficientwise `p`-th root of a polynomial in `t^p`.
fn pth_root_poly(f: &UPoly) -> UPoly {
    let p = f.field().p() as usize;
    let c = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| c.pth_root())
        .collect();
    UPoly::from_coeffs(f.field(), c)
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn radical(f: &UPoly) -> UPoly {
    let f = f.monic();
    if f.deg().unwrap_or(0) == 0 {
        return f;
    }
    let d = f.deriv();
    if d.is_zero() {
        return radical(&pth_root_poly(&f));
    }
    let one = UPoly::constant(f.field().one());
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut out = one.clone();
    while w.deg() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        out = &out * &z;
        w = y.clone();
        c = c.div_rem(&y).0;
    }
    if c.deg() != Some(0) {
        out = &out * &radical(&pth_root_poly(&c));
    }
    out.monic()
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub fn distinct_degree_factors(f: &UPoly) -> Vec<(usize, UPoly)> {
    let mut rest = f.monic();
    let mut out = Vec::new();
    let t = UPoly::t(f.field());
    let mut h = t.rem(&rest);
    let mut d = 0;
    while rest.deg().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = frobenius_step(&h, &rest);
        let g = rest.gcd(&(&h - &t));
        if g.deg().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((d, g));
        }
    }
    if let Some(n) = rest.deg().filter(|&n| n > 0) {
        out.push((n, rest));
    }
    out
}

fn frobenius_step(h: &UPoly, m: &UPoly) -> UPoly {
    let p = BigUint::from(h.field().p());
    let mut x = h.rem(m);
    for _ in 0..h.field().k() {
        x = x.powmod(&p, m);
    }
    x
}

/// Irreducibility over the coefficient field.
pub fn is_irreducible(f: &UPoly) -> bool {
    match f.deg() {
        None | Some(0) => false,
        Some(1) => true,
        Some(n) => {
            let r = radical(f);
            if r.deg() != Some(n) {
                return false;
            }
            let parts = distinct_degree_factors(&r);
            parts.len() == 1 && parts[0].0 == n
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_field, extend};

    #[test]
    fn cubic_over_gf2_has_no_roots() {
        let f2 = build_field(2, 1).unwrap();
        let f = UPoly::from_ints(&f2, &[1, 0, 1, 1]);
        assert!(poly_roots(&f).unwrap().is_empty());
        assert!(is_irreducible(&f));
    }

    #[test]
    fn cubic_splits_in_gf8_into_frobenius_orbit() {
        let f8 = build_field(2, 3).unwrap();
        let f = UPoly::from_ints(&f8, &[1, 0, 1, 1]);
        let roots = distinct_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        let a = &roots[0];
        let mut orbit = vec![a.clone(), a.pow(2), a.pow(4)];
        orbit.sort();
        assert_eq!(orbit, roots);
    }

    #[test]
    fn x2_minus_1_over_gf5() {
        let f5 = build_field(5, 1).unwrap();
        let f = UPoly::from_ints(&f5, &[-1, 0, 1]);
        let r: Vec<u64> = distinct_roots(&f)
            .unwrap()
            .iter()
            .map(|x| x.as_prime().unwrap())
            .collect();
        assert_eq!(r, vec![1, 4]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f5 = build_field(5, 1).unwrap();
        assert_eq!(
            poly_roots(&UPoly::zero(&f5)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn multiplicities_reported() {
        let f7 = build_field(7, 1).unwrap();
        // (t-2)^3 (t-5)
        let a = UPoly::from_ints(&f7, &[-2, 1]);
        let b = UPoly::from_ints(&f7, &[-5, 1]);
        let f = &(&(&a * &a) * &a) * &b;
        let r = poly_roots(&f).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].1, 3);
        assert_eq!(r[1].1, 1);
    }

    #[test]
    fn large_field_split_path() {
        // GF(2^21) exceeds the scan limit, forcing gcd + trace splitting.
        let f8 = build_field(2, 3).unwrap();
        let big = extend(&f8, 7).unwrap();
        let f = UPoly::from_ints(&big, &[1, 0, 1, 1]);
        let roots = distinct_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(f.eval(r).is_zero());
        }
    }

    #[test]
    fn odd_characteristic_split_path() {
        let f3 = build_field(3, 1).unwrap();
        let big = extend(&f3, 12).unwrap();
        // t^3 - t splits over GF(3) already
        let f = UPoly::from_ints(&big, &[0, -1, 0, 1]);
        assert_eq!(distinct_roots(&f).unwrap().len(), 3);
    }

    #[test]
    fn radical_and_ddf() {
        let f2 = build_field(2, 1).unwrap();
        let lin = UPoly::from_ints(&f2, &[1, 1]);
        let cubic = UPoly::from_ints(&f2, &[1, 1, 0, 1]);
        let f = &(&lin * &lin) * &(&cubic * &cubic);
        let r = radical(&f);
        assert_eq!(r, (&lin * &cubic).monic());
        let parts = distinct_degree_factors(&r);
        assert_eq!(parts.iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![1, 3]);
    }
}
