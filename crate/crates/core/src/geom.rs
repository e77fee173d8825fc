//! Points and collineations of the projective plane over a finite field.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::ff::{embed, factor, order_dividing, poly_roots, Fe, Field, FieldExt, UPoly};
use crate::linalg::Mat;

/// A point of PG(2, F) with first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    c: [Fe; 3],
}

impl ProjPoint {
    /// Normalizes `(x0 : x1 : x2)`; `None` for the zero vector.
    pub fn new(x0: Fe, x1: Fe, x2: Fe) -> Option<ProjPoint> {
        let c = [x0, x1, x2];
        let lead = c.iter().find(|x| !x.is_zero())?.inv().unwrap();
        Some(ProjPoint {
            c: [&c[0] * &lead, &c[1] * &lead, &c[2] * &lead],
        })
    }

    pub fn from_slice(v: &[Fe]) -> Option<ProjPoint> {
        ProjPoint::new(v[0].clone(), v[1].clone(), v[2].clone())
    }

    pub fn from_ints(f: &Field, v: [i64; 3]) -> ProjPoint {
        ProjPoint::new(f.from_i64(v[0]), f.from_i64(v[1]), f.from_i64(v[2])).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Fe; 3] {
        &self.c
    }

    pub fn field(&self) -> &Field {
        self.c[0].field()
    }

    pub fn embed(&self, dst: &Field) -> Result<ProjPoint> {
        Ok(ProjPoint {
            c: [
                embed(&self.c[0], dst)?,
                embed(&self.c[1], dst)?,
                embed(&self.c[2], dst)?,
            ],
        })
    }

    /// Coordinatewise Frobenius `x -> x^(p^j)`.
    pub fn frobenius_n(&self, j: usize) -> ProjPoint {
        ProjPoint {
            c: [
                self.c[0].frobenius_n(j),
                self.c[1].frobenius_n(j),
                self.c[2].frobenius_n(j),
            ],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.c.iter().map(|x| x.to_json()).collect())
    }
}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for x in &self.c {
            x.hash(h);
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} : {:?} : {:?})", self.c[0], self.c[1], self.c[2])
    }
}

/// Elements of the subfield of order `q` inside `ctx`, ascending.
pub fn subfield_elements(q: u64, ctx: &Field) -> Result<Vec<Fe>> {
    if ctx.size_u128() == Some(q as u128) {
        return ctx.elements();
    }
    let mut cur = ctx.parent();
    while let Some(f) = cur {
        if f.size_u128() == Some(q as u128) {
            let mut v = f
                .elements()?
                .iter()
                .map(|x| embed(x, ctx))
                .collect::<Result<Vec<_>>>()?;
            v.sort();
            return Ok(v);
        }
        cur = f.parent();
    }
    if ctx.p() == q {
        return Ok((0..q).map(|i| ctx.from_u64(i)).collect());
    }
    let mut v: Vec<Fe> = ctx
        .elements()?
        .into_iter()
        .filter(|x| x.pow(q as u128) == *x)
        .collect();
    v.sort();
    if v.len() as u64 != q {
        return Err(Error::NoEmbedding);
    }
    Ok(v)
}

/// The `q^2+q+1` points of PG(2, q) inside PG(2, ctx), sorted.
pub fn pg2_points(q: u64, ctx: &Field) -> Result<Vec<ProjPoint>> {
    let els = subfield_elements(q, ctx)?;
    Ok(pg2_from_elements(&els, ctx))
}

pub fn pg2_from_elements(els: &[Fe], ctx: &Field) -> Vec<ProjPoint> {
    let (zero, one) = (ctx.zero(), ctx.one());
    let mut pts = Vec::with_capacity(els.len() * els.len() + els.len() + 1);
    pts.push(ProjPoint {
        c: [zero.clone(), zero.clone(), one.clone()],
    });
    for x in els {
        pts.push(ProjPoint {
            c: [zero.clone(), one.clone(), x.clone()],
        });
    }
    for x in els {
        for y in els {
            pts.push(ProjPoint {
                c: [one.clone(), x.clone(), y.clone()],
            });
        }
    }
    pts.sort();
    pts
}

/// A collineation, i.e. an invertible 3x3 matrix modulo scalars, acting on
/// column vectors.
#[derive(Clone)]
pub struct ProjMap {
    m: Mat,
}

impl ProjMap {
    pub fn new(m: Mat) -> Result<ProjMap> {
        if m.rows() != 3 || m.cols() != 3 || m.det().is_zero() {
            return Err(Error::Internal("collineation needs an invertible 3x3 matrix".into()));
        }
        Ok(ProjMap { m })
    }

    pub fn identity(f: &Field) -> ProjMap {
        ProjMap {
            m: Mat::identity(f, 3),
        }
    }

    pub fn diag(d: [Fe; 3]) -> ProjMap {
        let f = d[0].field().clone();
        ProjMap::new(Mat::diag(&f, &d)).expect("nonzero diagonal")
    }

    /// Permutation map sending the `i`-th coordinate of the image to
    /// `x[perm[i]]`.
    pub fn permutation(f: &Field, perm: [usize; 3]) -> ProjMap {
        let m = Mat::from_fn(f, 3, 3, |i, j| if perm[i] == j { f.one() } else { f.zero() });
        ProjMap { m }
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn field(&self) -> &Field {
        self.m.field()
    }

    pub fn apply(&self, pt: &ProjPoint) -> ProjPoint {
        ProjPoint::from_slice(&self.m.mul_vec(&pt.c)).expect("invertible map")
    }

    /// `self` after `o`.
    pub fn compose(&self, o: &ProjMap) -> ProjMap {
        ProjMap { m: self.m.mul(&o.m) }
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap {
            m: self.m.inverse().expect("invertible map"),
        }
    }

    pub fn pow(&self, e: u128) -> ProjMap {
        ProjMap { m: self.m.pow(e) }
    }

    pub fn embed(&self, dst: &Field) -> Result<ProjMap> {
        Ok(ProjMap { m: self.m.embed(dst)? })
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.m.get(0, 0);
        (0..3).all(|i| {
            (0..3).all(|j| {
                let x = self.m.get(i, j);
                if i == j {
                    x == d
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// Equality up to a nonzero scalar, via the first nonzero entry.
    pub fn eq_projective(&self, o: &ProjMap) -> bool {
        let a = self.m.entries();
        let b = o.m.entries();
        let Some(i) = a.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if b[i].is_zero() {
            return false;
        }
        let s = &b[i] * &a[i].inv().unwrap();
        a.iter().zip(b).all(|(x, y)| &(x * &s) == y)
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.m.to_json()
    }
}

impl fmt::Debug for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// A multiple of the order of every element of PGL(3, Q):
/// `(Q-1)(Q+1)(Q^2+Q+1)` times the least power of `p` that is at least 3.
fn pgl3_exponent_factored(f: &Field) -> Result<(u128, Vec<(u128, u32)>)> {
    let q = f.size_u128().ok_or(Error::FieldTooLarge)?;
    let p = f.p() as u128;
    let mut pe = p;
    while pe < 3 {
        pe *= p;
    }
    let parts = [q - 1, q + 1, q * q + q + 1, pe];
    let mut e: u128 = 1;
    let mut fac: Vec<(u128, u32)> = Vec::new();
    for x in parts {
        e = e.checked_mul(x).ok_or(Error::FieldTooLarge)?;
        for (r, k) in factor(x) {
            match fac.iter_mut().find(|(s, _)| *s == r) {
                Some(slot) => slot.1 += k,
                None => fac.push((r, k)),
            }
        }
    }
    fac.sort_unstable();
    Ok((e, fac))
}

/// Least `n >= 1` with `m^n` scalar.
pub fn proj_order(m: &ProjMap) -> Result<u128> {
    let (e, fac) = pgl3_exponent_factored(m.field())?;
    debug_assert!(m.pow(e).is_scalar());
    Ok(order_dividing(e, &fac, |k| m.pow(k).is_scalar()))
}

/// Orbit of `pt` in generation order.
pub fn orbit(m: &ProjMap, pt: &ProjPoint) -> Vec<ProjPoint> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut cur = pt.clone();
    while seen.insert(cur.clone()) {
        out.push(cur.clone());
        cur = m.apply(&cur);
    }
    out
}

/// Fixed points of a collineation over an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoints {
    /// The map is scalar: every point is fixed.
    All,
    Points(Vec<ProjPoint>),
}

/// Eigenvector classes of `m` over `ext`, from the roots of the
/// characteristic polynomial.
pub fn fixed_points(m: &ProjMap, ext: &Field) -> Result<FixedPoints> {
    if m.is_scalar() {
        return Ok(FixedPoints::All);
    }
    let a = m.matrix().embed(ext)?;
    let g = |i: usize, j: usize| a.get(i, j).clone();
    let tr = a.trace();
    let minors = &(&(&g(0, 0) * &g(1, 1) - &(&g(0, 1) * &g(1, 0)))
        + &(&g(0, 0) * &g(2, 2) - &(&g(0, 2) * &g(2, 0))))
        + &(&g(1, 1) * &g(2, 2) - &(&g(1, 2) * &g(2, 1)));
    let det = a.det();
    let chi = UPoly::from_coeffs(ext, vec![-det, minors, -tr, ext.one()]);
    let mut pts = Vec::new();
    for (ev, _) in poly_roots(&chi)? {
        let shifted = a.map(|x| x.clone());
        let shifted = Mat::from_fn(ext, 3, 3, |i, j| {
            if i == j {
                shifted.get(i, j) - &ev
            } else {
                shifted.get(i, j).clone()
            }
        });
        let ns = shifted.nullspace();
        match ns.len() {
            1 => pts.push(ProjPoint::from_slice(&ns[0]).unwrap()),
            2 => {
                for x in ext.elements()? {
                    let v: Vec<Fe> = (0..3).map(|k| &ns[0][k] + &(&x * &ns[1][k])).collect();
                    pts.push(ProjPoint::from_slice(&v).unwrap());
                }
                pts.push(ProjPoint::from_slice(&ns[1]).unwrap());
            }
            _ => return Ok(FixedPoints::All),
        }
    }
    pts.sort();
    pts.dedup();
    Ok(FixedPoints::Points(pts))
}

/// The literal companion matrix of `X^3 - cX^2 - aX - b` (last column
/// `(b, a, c)`): multiplication by a root on the basis `1, X, X^2`.
pub fn companion_matrix(a: &Fe, b: &Fe, c: &Fe) -> Mat {
    let f = a.field().clone();
    let (z, o) = (f.zero(), f.one());
    Mat::from_rows(
        &f,
        vec![
            vec![z.clone(), z.clone(), b.clone()],
            vec![o.clone(), z.clone(), a.clone()],
            vec![z, o, c.clone()],
        ],
    )
}

/// The cubic `X^3 - cX^2 - aX - b` over the field of `a`.
pub fn tallini_cubic(a: &Fe, b: &Fe, c: &Fe) -> UPoly {
    let f = a.field().clone();
    UPoly::from_coeffs(&f, vec![-b, -a, -c, f.one()])
}

/// A Singer cycle of PG(2, q) whose fixed points over GF(q^3) are the
/// points `(alpha : 1 : alpha^2)` for the roots of the cubic.
///
/// The basic matrix sends `(x0, x1, x2)` to `(x2, x0, a x0 + b x1 + c x2)`,
/// which acts on `(alpha, 1, alpha^2)` as multiplication by `alpha`. When
/// `alpha` has projective order below `q^2+q+1` the least polynomial
/// `h0 + h1 S + h2 S^2` of full order is used instead; it has the same
/// eigenvectors.
pub fn singer_from_cubic(a: &Fe, b: &Fe, c: &Fe, q: u64) -> Result<ProjMap> {
    let cubic = tallini_cubic(a, b, c);
    if !poly_roots(&cubic)?.is_empty() {
        return Err(Error::CubicReducible);
    }
    let f = a.field().clone();
    let (z, o) = (f.zero(), f.one());
    let s = Mat::from_rows(
        &f,
        vec![
            vec![z.clone(), z.clone(), o.clone()],
            vec![o.clone(), z.clone(), z.clone()],
            vec![a.clone(), b.clone(), c.clone()],
        ],
    );
    let n = (q * q + q + 1) as u128;
    let s_map = ProjMap::new(s.clone())?;
    if proj_order(&s_map)? == n {
        return Ok(s_map);
    }
    let s2 = s.mul(&s);
    let els = subfield_elements(q, &f)?;
    let id = Mat::identity(&f, 3);
    for h0 in &els {
        for h1 in &els {
            for h2 in &els {
                let m = Mat::from_fn(&f, 3, 3, |i, j| {
                    &(&(id.get(i, j) * h0) + &(s.get(i, j) * h1)) + &(s2.get(i, j) * h2)
                });
                if m.det().is_zero() {
                    continue;
                }
                let pm = ProjMap::new(m)?;
                if proj_order(&pm)? == n {
                    return Ok(pm);
                }
            }
        }
    }
    Err(Error::Internal("no Singer element in GF(q)[S]".into()))
}
