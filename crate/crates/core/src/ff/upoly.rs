use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use super::field::{same_field, Fe, Field, FieldExt};

/// Dense univariate polynomial over a [`Field`], low-to-high, trimmed so the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Clone)]
pub struct UPoly {
    field: Field,
    c: Vec<Fe>,
}

impl UPoly {
    pub fn zero(field: &Field) -> UPoly {
        UPoly {
            field: field.clone(),
            c: Vec::new(),
        }
    }

    pub fn constant(c: Fe) -> UPoly {
        let field = c.field().clone();
        UPoly::from_coeffs(&field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: &Field) -> UPoly {
        UPoly::from_coeffs(field, vec![field.zero(), field.one()])
    }

    /// `t - a`.
    pub fn linear(a: &Fe) -> UPoly {
        let f = a.field().clone();
        UPoly::from_coeffs(&f, vec![-a, f.one()])
    }

    pub fn from_coeffs(field: &Field, mut c: Vec<Fe>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly {
            field: field.clone(),
            c,
        }
    }

    /// Polynomial over GF(p) (embedded into `field`) from integer coefficients.
    pub fn from_ints(field: &Field, c: &[i64]) -> UPoly {
        UPoly::from_coeffs(field, c.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Fe> {
        self.c.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let mut acc = self.field.zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, s: &Fe) -> UPoly {
        UPoly::from_coeffs(&self.field, self.c.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn deriv(&self) -> UPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_u64(i as u64))
            .collect();
        UPoly::from_coeffs(&self.field, c)
    }

    /// `(quotient, remainder)`; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.deg().expect("division by zero polynomial");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(&self.field), self.clone());
        }
        let li = d.lead().unwrap().inv().unwrap();
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &li;
            for (j, dj) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &(&f * dj);
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (
            UPoly::from_coeffs(&self.field, q),
            UPoly::from_coeffs(&self.field, r),
        )
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        (self * o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &UPoly) -> UPoly {
        let mut r = UPoly::constant(self.field.one()).rem(m);
        let b = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mulmod(&r, m);
            if e.bit(i) {
                r = r.mulmod(&b, m);
            }
        }
        r
    }

    /// `self^(|F|^j) mod m` by repeated Frobenius-size powering.
    pub fn pow_field_size_mod(&self, j: usize, m: &UPoly) -> UPoly {
        let q = self.field.order().clone();
        let mut r = self.rem(m);
        for _ in 0..j {
            r = r.powmod(&q, m);
        }
        r
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut r = UPoly::constant(self.field.one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Maps every coefficient through `f` (e.g. an embedding).
    pub fn map_coeffs<F: Fn(&Fe) -> Fe>(&self, dst: &Field, f: F) -> UPoly {
        UPoly::from_coeffs(dst, self.c.iter().map(f).collect())
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|l| l.is_one())
    }
}

impl PartialEq for UPoly {
    fn eq(&self, o: &UPoly) -> bool {
        same_field(&self.field, &o.field) && self.c == o.c
    }
}

impl Eq for UPoly {}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c:?}"),
                1 => format!("{c:?}*t"),
                _ => format!("{c:?}*t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        UPoly::from_coeffs(&self.field, c)
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        UPoly::from_coeffs(&self.field, c)
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(&self.field, c)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::from_coeffs(&self.field, self.c.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    #[test]
    fn division_identity() {
        let f = build_field(7, 1).unwrap();
        let a = UPoly::from_ints(&f, &[3, 0, 5, 1, 2]);
        let b = UPoly::from_ints(&f, &[1, 4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = build_field(5, 1).unwrap();
        let common = UPoly::from_ints(&f, &[2, 1]);
        let a = &common * &UPoly::from_ints(&f, &[2, 0, 1]);
        let b = &common * &UPoly::from_ints(&f, &[3, 1]);
        assert_eq!(a.gcd(&b), common.monic());
    }
}
