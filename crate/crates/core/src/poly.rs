//! Sparse trivariate and bivariate (Laurent) polynomials over a finite field.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{embed, Fe, Field, FieldExt, UPoly};
use crate::linalg::Mat;

/// Polynomial in `X0, X1, X2`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TriPoly {
    field: Field,
    terms: BTreeMap<[u32; 3], Fe>,
}

impl TriPoly {
    pub fn zero(field: &Field) -> TriPoly {
        TriPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Fe) -> TriPoly {
        TriPoly::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: [u32; 3], c: Fe) -> TriPoly {
        let mut p = TriPoly::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The coordinate `X_i`.
    pub fn var(field: &Field, i: usize) -> TriPoly {
        let mut e = [0; 3];
        e[i] = 1;
        TriPoly::monomial(e, field.one())
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ([u32; 3], Fe)>) -> TriPoly {
        let mut p = TriPoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Terms with integer coefficients reduced into `field`.
    pub fn from_int_terms(field: &Field, terms: &[([u32; 3], i64)]) -> TriPoly {
        TriPoly::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<[u32; 3], Fe> {
        &self.terms
    }

    pub fn coeff(&self, e: [u32; 3]) -> Fe {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: [u32; 3], c: &Fe) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn scale(&self, s: &Fe) -> TriPoly {
        TriPoly::from_terms(&self.field, self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn mul(&self, o: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> TriPoly {
        let mut r = TriPoly::constant(self.field.one());
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn add(&self, o: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn eval(&self, x: &[Fe; 3]) -> Fe {
        let mut acc = self.field.zero();
        let pw = |v: &Fe, k: u32| v.pow(k as u128);
        for (e, c) in &self.terms {
            let t = &(&(c * &pw(&x[0], e[0])) * &pw(&x[1], e[1])) * &pw(&x[2], e[2]);
            acc += &t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = *e;
            f[i] -= 1;
            out.add_term(f, &(c * &self.field.from_u64(e[i] as u64)));
        }
        out
    }

    pub fn map_coeffs<F: Fn(&Fe) -> Fe>(&self, dst: &Field, f: F) -> TriPoly {
        TriPoly::from_terms(dst, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn embed(&self, dst: &Field) -> Result<TriPoly> {
        let mut out = TriPoly::zero(dst);
        for (e, c) in &self.terms {
            out.add_term(*e, &embed(c, dst)?);
        }
        Ok(out)
    }

    /// `self(M X)`: each `X_i` replaced by the `i`-th row of `m` applied to
    /// `(X0, X1, X2)`.
    pub fn substitute(&self, m: &Mat) -> TriPoly {
        let f = m.field().clone();
        let forms: Vec<TriPoly> = (0..3)
            .map(|i| {
                TriPoly::from_terms(
                    &f,
                    (0..3).map(|j| {
                        let mut e = [0; 3];
                        e[j] = 1;
                        (e, m.get(i, j).clone())
                    }),
                )
            })
            .collect();
        let maxe: Vec<u32> = (0..3)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<TriPoly>> = (0..3)
            .map(|i| {
                let mut v = vec![TriPoly::constant(f.one())];
                for k in 1..=maxe[i] as usize {
                    let next = v[k - 1].mul(&forms[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = TriPoly::zero(&f);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize]);
            out = out.add(&t.scale(c));
        }
        out
    }

    /// The scalar `s` with `self = s * o`, if it exists.
    pub fn ratio_to(&self, o: &TriPoly) -> Option<Fe> {
        let (e, c) = o.terms.iter().next()?;
        let s = &self.coeff(*e) * &c.inv()?;
        if s.is_zero() {
            return None;
        }
        if self.terms.len() != o.terms.len() {
            return None;
        }
        o.terms
            .iter()
            .all(|(e, c)| self.terms.get(e) == Some(&(c * &s)))
            .then_some(s)
    }

    /// Dehomogenization in the chart `X_k = 1`; the remaining coordinates in
    /// increasing index order become `(x, y)`.
    pub fn dehomogenize(&self, k: usize) -> BiPoly {
        let (i, j) = other_two(k);
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|(e, c)| ((e[i] as i64, e[j] as i64), c.clone())),
        )
    }

    /// Homogenization of an affine polynomial in `x = X0/X2`, `y = X1/X2`.
    pub fn homogenize(b: &BiPoly) -> Result<TriPoly> {
        let d = b
            .terms()
            .keys()
            .map(|(i, j)| i + j)
            .max()
            .unwrap_or(0);
        let mut out = TriPoly::zero(b.field());
        for ((i, j), c) in b.terms() {
            if *i < 0 || *j < 0 {
                return Err(Error::NotHomogeneous);
            }
            out.add_term([*i as u32, *j as u32, (d - i - j) as u32], c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"exps": e, "coeff": c.coeffs()}))
                .collect(),
        )
    }
}

pub(crate) fn other_two(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| format!("{c:?}*X0^{}*X1^{}*X2^{}", e[0], e[1], e[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent polynomial in `x, y`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(i64, i64), Fe>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(i: i64, j: i64, c: Fe) -> BiPoly {
        let mut p = BiPoly::zero(c.field());
        p.add_term((i, j), &c);
        p
    }

    pub fn constant(c: Fe) -> BiPoly {
        BiPoly::monomial(0, 0, c)
    }

    pub fn x(field: &Field) -> BiPoly {
        BiPoly::monomial(1, 0, field.one())
    }

    pub fn y(field: &Field) -> BiPoly {
        BiPoly::monomial(0, 1, field.one())
    }

    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ((i64, i64), Fe)>) -> BiPoly {
        let mut p = BiPoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn from_int_terms(field: &Field, terms: &[((i64, i64), i64)]) -> BiPoly {
        BiPoly::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Fe> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: (i64, i64), c: &Fe) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.get(&e) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(e, c)| (*e, -c)))
    }

    pub fn scale(&self, s: &Fe) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(&self.field);
        for ((a, b), ca) in &self.terms {
            for ((c, d), cb) in &o.terms {
                out.add_term((a + c, b + d), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, n: u64) -> BiPoly {
        let mut r = BiPoly::constant(self.field.one());
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: i64, j: i64) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms.iter().map(|((a, b), c)| ((a + i, b + j), c.clone())),
        )
    }

    /// Least exponents of `x` and `y` over all terms.
    pub fn min_exps(&self) -> (i64, i64) {
        let mx = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let my = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (mx, my)
    }

    /// Multiplies by the monomial that makes every exponent nonnegative with
    /// each minimum equal to zero.
    pub fn clear_denominators(&self) -> BiPoly {
        let (mx, my) = self.min_exps();
        self.shift(-mx, -my)
    }

    pub fn deg_y(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn deg_x(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Coefficient of `y^j` as a Laurent polynomial in `x`.
    pub fn coeff_y(&self, j: i64) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .filter(|(e, _)| e.1 == j)
                .map(|((i, _), c)| ((*i, 0), c.clone())),
        )
    }

    pub fn eval(&self, x: &Fe, y: &Fe) -> Fe {
        let mut acc = self.field.zero();
        for ((i, j), c) in &self.terms {
            let t = &(c * &x.pow_i(*i).expect("pole at evaluation point"))
                * &y.pow_i(*j).expect("pole at evaluation point");
            acc += &t;
        }
        acc
    }

    pub fn deriv_x(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|((i, j), c)| ((i - 1, *j), c * &self.field.from_i64(*i))),
        )
    }

    pub fn deriv_y(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.field,
            self.terms
                .iter()
                .map(|((i, j), c)| ((*i, j - 1), c * &self.field.from_i64(*j))),
        )
    }

    /// Specializes `x = x0` (nonnegative exponents only), giving a
    /// polynomial in `y`.
    pub fn at_x(&self, x0: &Fe) -> UPoly {
        let f = x0.field().clone();
        let dy = self.deg_y().unwrap_or(0).max(0) as usize;
        let mut c = vec![f.zero(); dy + 1];
        for ((i, j), v) in &self.terms {
            let v = embed(v, &f).expect("compatible fields");
            c[*j as usize] += &(&v * &x0.pow(*i as u128));
        }
        UPoly::from_coeffs(&f, c)
    }

    pub fn map_coeffs<F: Fn(&Fe) -> Fe>(&self, dst: &Field, f: F) -> BiPoly {
        BiPoly::from_terms(dst, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn embed(&self, dst: &Field) -> Result<BiPoly> {
        let mut out = BiPoly::zero(dst);
        for (e, c) in &self.terms {
            out.add_term(*e, &embed(c, dst)?);
        }
        Ok(out)
    }

    /// Pseudo-remainder of `self` by `f` with respect to `y`, after clearing
    /// denominators: `lc(f)^k * self = Q f + R` with `deg_y R < deg_y f`.
    pub fn prem_y(&self, f: &BiPoly) -> BiPoly {
        let f = f.clear_denominators();
        let df = f.deg_y().expect("nonzero divisor");
        let lc = f.coeff_y(df);
        let mut h = self.clear_denominators();
        while let Some(dh) = h.deg_y().filter(|&d| d >= df) {
            let lh = h.coeff_y(dh);
            h = lc.mul(&h).sub(&lh.shift(0, dh - df).mul(&f));
            h = h.clear_denominators();
        }
        h
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|((i, j), c)| format!("{c:?}*x^{i}*y^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    #[test]
    fn homogeneity_and_degree() {
        let f = build_field(3, 1).unwrap();
        let g = TriPoly::from_int_terms(&f, &[([2, 0, 0], 1), ([0, 1, 0], 1)]);
        assert!(!g.is_homogeneous());
        let h = TriPoly::from_int_terms(&f, &[([2, 0, 0], 1), ([0, 1, 1], 2)]);
        assert!(h.is_homogeneous());
        assert_eq!(h.degree(), Some(2));
    }

    #[test]
    fn substitution_is_a_right_action() {
        let f = build_field(5, 1).unwrap();
        let g = TriPoly::from_int_terms(&f, &[([3, 0, 0], 1), ([1, 1, 1], 2), ([0, 0, 3], 4)]);
        let m1 = Mat::from_fn(&f, 3, 3, |i, j| f.from_u64((i * 3 + j + 1) as u64 % 5));
        let m2 = Mat::from_fn(&f, 3, 3, |i, j| f.from_u64(((i + 2) * (j + 1)) as u64 % 5));
        let lhs = g.substitute(&m1.mul(&m2));
        let rhs = g.substitute(&m1).substitute(&m2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pseudo_remainder_of_multiple_is_zero() {
        let f = build_field(2, 1).unwrap();
        let curve = BiPoly::from_int_terms(&f, &[((1, 3), 1), ((3, 0), 1), ((0, 1), 1)]);
        let h = curve.mul(&BiPoly::from_int_terms(&f, &[((3, 1), 1), ((0, 0), 1)]));
        assert!(h.prem_y(&curve).is_zero());
        assert!(!BiPoly::x(&f).prem_y(&curve).is_zero());
    }

    #[test]
    fn partials() {
        let f = build_field(7, 1).unwrap();
        let g = TriPoly::from_int_terms(&f, &[([3, 1, 0], 2)]);
        assert_eq!(g.partial(0), TriPoly::from_int_terms(&f, &[([2, 1, 0], 6)]));
        assert!(g.partial(2).is_zero());
    }
}
