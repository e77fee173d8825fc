use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde_json::{json, Value};

use super::fp;
use crate::error::{Error, Result};

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// An explicit finite field `GF(p^k) = GF(p)[t] / (modulus)`.
pub struct FieldCtx {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    order: BigUint,
    parent: Option<Parent>,
}

/// Embedding of a subfield: `images[j]` is the image of `t^j` of the parent.
struct Parent {
    field: Field,
    images: Vec<Vec<u64>>,
}

/// Fields are equal when they share the characteristic and modulus.
impl PartialEq for FieldCtx {
    fn eq(&self, o: &FieldCtx) -> bool {
        self.p == o.p && self.modulus == o.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

/// Builds `GF(p^k)` with the minimal-encoding irreducible modulus.
pub fn build_field(p: u64, k: usize) -> Result<Field> {
    if !num_prime::nt_funcs::is_prime64(p) || p >= (1 << 31) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::Internal("extension degree must be positive".into()));
    }
    let modulus = if k == 1 {
        vec![0, 1]
    } else {
        fp::minimal_irreducible(p, k)
    };
    Ok(Arc::new(FieldCtx {
        p,
        k,
        modulus,
        order: BigUint::from(p).pow(k as u32),
        parent: None,
    }))
}

/// Builds `GF(p^{k d})` over `parent` and records the embedding of `parent`
/// (the smallest root of the parent modulus, by integer encoding).
pub fn extend(parent: &Field, d: usize) -> Result<Field> {
    if d == 1 {
        return Ok(parent.clone());
    }
    let base = build_field(parent.p, parent.k * d)?;
    if parent.k == 1 {
        return Ok(Arc::new(FieldCtx {
            p: base.p,
            k: base.k,
            modulus: base.modulus.clone(),
            order: base.order.clone(),
            parent: Some(Parent {
                field: parent.clone(),
                images: vec![vec![1]],
            }),
        }));
    }
    let min_poly = crate::ff::UPoly::from_coeffs(
        &base,
        parent.modulus.iter().map(|&c| base.from_u64(c)).collect(),
    );
    let roots = crate::ff::poly_roots(&min_poly)?;
    let root = roots
        .into_iter()
        .map(|(r, _)| r)
        .min()
        .ok_or_else(|| Error::Internal("parent modulus has no root".into()))?;
    let mut images = Vec::with_capacity(parent.k);
    let mut pw = base.one();
    for _ in 0..parent.k {
        images.push(pw.c.clone());
        pw = &pw * &root;
    }
    Ok(Arc::new(FieldCtx {
        p: base.p,
        k: base.k,
        modulus: base.modulus.clone(),
        order: base.order.clone(),
        parent: Some(Parent {
            field: parent.clone(),
            images,
        }),
    }))
}

/// Maps `e` into `dst` along `dst`'s parent chain.
pub fn embed(e: &Fe, dst: &Field) -> Result<Fe> {
    if same_field(&e.field, dst) {
        return Ok(Fe {
            field: dst.clone(),
            c: e.c.clone(),
        });
    }
    if e.field.p != dst.p {
        return Err(Error::NoEmbedding);
    }
    if e.field.k == 1 {
        return Ok(dst.from_u64(e.c[0]));
    }
    let par = dst.parent.as_ref().ok_or(Error::NoEmbedding)?;
    let x = embed(e, &par.field)?;
    let mut acc = vec![0u64; dst.k];
    for (j, &cj) in x.c.iter().enumerate() {
        if cj == 0 {
            continue;
        }
        for (a, &img) in acc.iter_mut().zip(par.images[j].iter()) {
            *a = (*a + fp::mul_mod(cj, img, dst.p)) % dst.p;
        }
    }
    Ok(Fe {
        field: dst.clone(),
        c: acc,
    })
}

/// True when `small` embeds into `big` through the recorded tower.
pub fn embeds_into(small: &Field, big: &Field) -> bool {
    if same_field(small, big) || (small.k == 1 && small.p == big.p) {
        return true;
    }
    match &big.parent {
        Some(par) => embeds_into(small, &par.field),
        None => false,
    }
}

pub fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || (a.p == b.p && a.modulus == b.modulus)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn size_u128(&self) -> Option<u128> {
        self.order.to_u128()
    }

    pub fn parent(&self) -> Option<&Field> {
        self.parent.as_ref().map(|p| &p.field)
    }

    /// Chain of ancestors, nearest first.
    pub fn tower(&self) -> Vec<Field> {
        let mut out = Vec::new();
        let mut cur = self.parent();
        while let Some(f) = cur {
            out.push(f.clone());
            cur = f.parent();
        }
        out
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn spec_json(&self) -> Value {
        json!({"p": self.p, "k": self.k, "modulus": self.modulus})
    }
}

/// Constructors that need the shared handle.
pub trait FieldExt {
    fn zero(&self) -> Fe;
    fn one(&self) -> Fe;
    fn from_u64(&self, x: u64) -> Fe;
    fn from_i64(&self, x: i64) -> Fe;
    fn from_coeffs(&self, c: &[u64]) -> Fe;
    fn from_index(&self, n: u128) -> Fe;
    fn elements(&self) -> Result<Vec<Fe>>;
    fn random<R: Rng>(&self, rng: &mut R) -> Fe;
    fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Fe;
}

impl FieldExt for Field {
    fn zero(&self) -> Fe {
        Fe {
            field: self.clone(),
            c: vec![0; self.k],
        }
    }

    fn one(&self) -> Fe {
        self.from_u64(1)
    }

    fn from_u64(&self, x: u64) -> Fe {
        let mut c = vec![0; self.k];
        c[0] = x % self.p;
        Fe {
            field: self.clone(),
            c,
        }
    }

    fn from_i64(&self, x: i64) -> Fe {
        self.from_u64(x.rem_euclid(self.p as i64) as u64)
    }

    fn from_coeffs(&self, c: &[u64]) -> Fe {
        let mut v: Vec<u64> = c.iter().map(|&x| x % self.p).collect();
        fp::trim(&mut v);
        if v.len() > self.k {
            v = fp::rem(&v, &self.modulus, self.p);
        }
        v.resize(self.k, 0);
        Fe {
            field: self.clone(),
            c: v,
        }
    }

    /// Element whose coefficient vector is the base-`p` digits of `n`.
    fn from_index(&self, mut n: u128) -> Fe {
        let mut c = vec![0; self.k];
        for x in c.iter_mut() {
            *x = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        Fe {
            field: self.clone(),
            c,
        }
    }

    fn elements(&self) -> Result<Vec<Fe>> {
        let n = self
            .size_u128()
            .filter(|&n| n <= 1 << 24)
            .ok_or(Error::EnumerationBudget(self.size_u128().unwrap_or(u128::MAX)))?;
        Ok((0..n).map(|i| self.from_index(i)).collect())
    }

    fn random<R: Rng>(&self, rng: &mut R) -> Fe {
        let c = (0..self.k).map(|_| rng.gen_range(0..self.p)).collect();
        Fe {
            field: self.clone(),
            c,
        }
    }

    fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// An element of a [`FieldCtx`], as a length-`k` coefficient vector.
#[derive(Clone)]
pub struct Fe {
    field: Field,
    c: Vec<u64>,
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Integer encoding `sum c_i p^i` (when it fits).
    pub fn index(&self) -> u128 {
        let p = self.field.p as u128;
        self.c.iter().rev().fold(0u128, |acc, &x| {
            acc.saturating_mul(p).saturating_add(x as u128)
        })
    }

    /// Value in the prime field, if this element lies there.
    pub fn as_prime(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        if self.field.k == 1 {
            return Some(self.field.from_u64(fp::inv_mod(self.c[0], self.field.p)));
        }
        let mut a = self.c.clone();
        fp::trim(&mut a);
        let inv = fp::inv_poly_mod(&a, &self.field.modulus, self.field.p)?;
        Some(self.with(inv))
    }

    pub fn pow(&self, mut e: u128) -> Fe {
        let mut r = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn pow_big(&self, e: &BigUint) -> Fe {
        let mut r = self.field.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            r = &r * &r;
            if e.bit(i) {
                r = &r * self;
            }
        }
        r
    }

    /// `x^n` for a signed exponent; `None` for a nonpositive power of zero.
    pub fn pow_i(&self, n: i64) -> Option<Fe> {
        if n >= 0 {
            Some(self.pow(n as u128))
        } else {
            self.inv().map(|x| x.pow(n.unsigned_abs() as u128))
        }
    }

    /// The Frobenius image `x^p`.
    pub fn frobenius(&self) -> Fe {
        self.pow(self.field.p as u128)
    }

    /// `x^{p^j}`.
    pub fn frobenius_n(&self, j: usize) -> Fe {
        let mut x = self.clone();
        for _ in 0..j {
            x = x.frobenius();
        }
        x
    }

    /// Unique `p`-th root, i.e. the inverse Frobenius `x^{p^{k-1}}`.
    pub fn pth_root(&self) -> Fe {
        self.frobenius_n(self.field.k - 1)
    }

    /// Multiplicative order (Q - 1 must fit in 128 bits).
    pub fn mult_order(&self) -> Result<u128> {
        super::order::mult_order(self)
    }

    pub fn to_json(&self) -> Value {
        if self.field.k == 1 {
            json!(self.c[0])
        } else {
            json!(self.c)
        }
    }

    fn with(&self, mut v: Vec<u64>) -> Fe {
        v.resize(self.field.k, 0);
        Fe {
            field: self.field.clone(),
            c: v,
        }
    }

    fn check_same(&self, o: &Fe) {
        debug_assert!(
            same_field(&self.field, &o.field),
            "mixed-field arithmetic: {:?} vs {:?}",
            self.field,
            o.field
        );
    }
}

impl PartialEq for Fe {
    fn eq(&self, o: &Fe) -> bool {
        self.c == o.c && same_field(&self.field, &o.field)
    }
}

impl Eq for Fe {}

impl Hash for Fe {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.c.hash(h);
    }
}

impl Ord for Fe {
    /// Order by integer encoding (most significant coefficient first).
    fn cmp(&self, o: &Fe) -> Ordering {
        self.c.iter().rev().cmp(o.c.iter().rev())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, o: &Fe) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            write!(f, "{}", self.c[0])
        } else {
            write!(f, "{:?}", self.c)
        }
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        self.check_same(o);
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        self.check_same(o);
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&o.c)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        self.check_same(o);
        let p = self.field.p;
        if self.field.k == 1 {
            return Fe {
                field: self.field.clone(),
                c: vec![fp::mul_mod(self.c[0], o.c[0], p)],
            };
        }
        let prod = fp::mul(&self.c, &o.c, p);
        let r = if prod.len() > self.field.k {
            fp::rem(&prod, &self.field.modulus, p)
        } else {
            prod
        };
        self.with(r)
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        Fe {
            field: self.field.clone(),
            c,
        }
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: &Fe) -> Fe {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Fe> for &'a Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, o: &Fe) {
        *self = &*self + o;
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, o: &Fe) {
        *self = &*self - o;
    }
}

impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, o: &Fe) {
        *self = &*self * o;
    }
}

/// `(q - 1)` style helper: `|F| - 1` as a big integer.
pub fn unit_group_order(f: &Field) -> BigUint {
    f.order() - BigUint::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_modulus_and_inverse() {
        let f = build_field(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        for x in f.elements().unwrap().into_iter().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn prime_field_modulus_convention() {
        let f = build_field(5, 1).unwrap();
        assert_eq!(f.k(), 1);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!((f.from_u64(3) * f.from_u64(4)).as_prime(), Some(2));
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(build_field(6, 1).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = build_field(3, 4).unwrap();
        for i in [0u128, 1, 7, 40, 80] {
            let x = f.from_index(i);
            assert_eq!(x.pth_root().frobenius(), x);
        }
    }
}
