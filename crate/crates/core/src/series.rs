//! Truncated power series `sum_{n < len} a_n t^n` over a finite field.

use std::fmt;

use crate::ff::{Fe, Field, FieldExt};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    field: Field,
    c: Vec<Fe>,
}

impl Series {
    pub fn zero(field: &Field, len: usize) -> Series {
        Series {
            field: field.clone(),
            c: vec![field.zero(); len],
        }
    }

    pub fn constant(c: &Fe, len: usize) -> Series {
        let mut s = Series::zero(c.field(), len);
        if len > 0 {
            s.c[0] = c.clone();
        }
        s
    }

    /// `a + t`.
    pub fn shifted_t(a: &Fe, len: usize) -> Series {
        let mut s = Series::constant(a, len);
        if len > 1 {
            s.c[1] = a.field().one();
        }
        s
    }

    pub fn from_coeffs(field: &Field, mut c: Vec<Fe>, len: usize) -> Series {
        c.resize(len, field.zero());
        Series {
            field: field.clone(),
            c,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn truncate(&self, len: usize) -> Series {
        Series::from_coeffs(&self.field, self.c.iter().take(len).cloned().collect(), len)
    }

    /// Index of the first nonzero coefficient; `None` if zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let c = (0..n).map(|i| &self.c[i] + &o.c[i]).collect();
        Series {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let c = (0..n).map(|i| &self.c[i] - &o.c[i]).collect();
        Series {
            field: self.field.clone(),
            c,
        }
    }

    pub fn scale(&self, s: &Fe) -> Series {
        Series {
            field: self.field.clone(),
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let mut c = vec![self.field.zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    c[i + j] += &(a * b);
                }
            }
        }
        Series {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, e: u64) -> Series {
        let mut r = Series::constant(&self.field.one(), self.len());
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Option<Series> {
        let n = self.len();
        let a0inv = self.c.first()?.inv()?;
        let mut out = vec![self.field.zero(); n];
        out[0] = a0inv.clone();
        for k in 1..n {
            let mut s = self.field.zero();
            for i in 1..=k {
                if !self.c[i].is_zero() {
                    s += &(&self.c[i] * &out[k - i]);
                }
            }
            out[k] = -(&s * &a0inv);
        }
        Some(Series {
            field: self.field.clone(),
            c: out,
        })
    }

    /// Formal derivative `d/dt` (loses one coefficient of precision).
    pub fn deriv(&self) -> Series {
        let n = self.len().saturating_sub(1);
        let c = (0..n)
            .map(|i| &self.c[i + 1] * &self.field.from_u64((i + 1) as u64))
            .collect();
        Series {
            field: self.field.clone(),
            c,
        }
    }

    /// Divides by `t^k` (the first `k` coefficients must vanish).
    pub fn shift_down(&self, k: usize) -> Series {
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        Series {
            field: self.field.clone(),
            c: self.c.iter().skip(k).cloned().collect(),
        }
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(t^{})", self.c, self.c.len())
    }
}

/// A Laurent series `t^val * unit` where `unit` has nonzero constant term,
/// or zero to the available precision.
#[derive(Clone, Debug)]
pub struct Laurent {
    pub val: i64,
    pub unit: Series,
}

impl Laurent {
    /// `a / b` for power series with `b` not zero to precision. Returns
    /// `None` when `a` vanishes to its precision.
    pub fn quotient(a: &Series, b: &Series) -> Option<Laurent> {
        let va = a.valuation()?;
        let vb = b.valuation()?;
        let aa = a.shift_down(va);
        let bb = b.shift_down(vb);
        let n = aa.len().min(bb.len());
        let unit = aa.truncate(n).mul(&bb.truncate(n).inverse()?);
        Some(Laurent {
            val: va as i64 - vb as i64,
            unit,
        })
    }

    /// Order of `d/dt` of this Laurent series; `None` if every available
    /// term has derivative zero.
    pub fn deriv_order(&self) -> Option<i64> {
        let f = self.unit.field();
        self.unit
            .coeffs()
            .iter()
            .enumerate()
            .find(|(i, a)| {
                let n = self.val + *i as i64;
                !a.is_zero() && !f.from_i64(n).is_zero()
            })
            .map(|(i, _)| self.val + i as i64 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    #[test]
    fn inverse_times_self_is_one() {
        let f = build_field(7, 1).unwrap();
        let s = Series::from_coeffs(&f, vec![f.from_u64(3), f.from_u64(1), f.from_u64(5)], 10);
        let p = s.mul(&s.inverse().unwrap());
        assert!(p.coeff(0).is_one());
        assert!(p.coeffs()[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn geometric_series() {
        let f = build_field(5, 1).unwrap();
        let one_minus_t = Series::from_coeffs(&f, vec![f.one(), -f.one()], 6);
        let g = one_minus_t.inverse().unwrap();
        assert!(g.coeffs().iter().all(|x| x.is_one()));
    }

    #[test]
    fn laurent_derivative_order_skips_p_multiples() {
        let f = build_field(2, 1).unwrap();
        // t^-2 + t^-1: derivative of t^-2 vanishes in characteristic 2
        let a = Series::from_coeffs(&f, vec![f.one(), f.one()], 8);
        let b = Series::from_coeffs(&f, vec![f.zero(), f.zero(), f.one()], 8);
        let l = Laurent::quotient(&a, &b).unwrap();
        assert_eq!(l.val, -2);
        assert_eq!(l.deriv_order(), Some(-2));
    }
}
