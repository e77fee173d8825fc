//! Projective plane curves: points, line sections, local expansions and
//! orders of functions and of `dx`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ff::{
    distinct_degree_factors, embed, embeds_into, extend, poly_roots, radical, same_field, Fe,
    Field, FieldExt, UPoly,
};
use crate::geom::{pg2_from_elements, ProjMap, ProjPoint};
use crate::linalg::Mat;
use crate::poly::{other_two, BiPoly, TriPoly};
use crate::series::{Laurent, Series};

/// A plane curve `F = 0` with cached partial derivatives.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    poly: TriPoly,
    partials: [TriPoly; 3],
    degree: u32,
}

pub fn make_curve(f: TriPoly) -> Result<PlaneCurve> {
    if f.is_zero() {
        return Err(Error::ZeroPoly);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let degree = f.degree().unwrap();
    if degree == 0 {
        return Err(Error::ZeroPoly);
    }
    let partials = [f.partial(0), f.partial(1), f.partial(2)];
    Ok(PlaneCurve {
        poly: f,
        partials,
        degree,
    })
}

impl PlaneCurve {
    pub fn poly(&self) -> &TriPoly {
        &self.poly
    }

    pub fn partial(&self, i: usize) -> &TriPoly {
        &self.partials[i]
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Plücker genus `(d-1)(d-2)/2`, meaningful once smoothness is known.
    pub fn genus(&self) -> u64 {
        let d = self.degree as u64;
        (d - 1) * (d - 2) / 2
    }

    pub fn embed(&self, dst: &Field) -> Result<PlaneCurve> {
        if same_field(self.field(), dst) {
            return Ok(self.clone());
        }
        make_curve(self.poly.embed(dst)?)
    }

    /// The curve over `f`, which must contain the curve's field.
    pub fn over(&self, f: &Field) -> Result<PlaneCurve> {
        if same_field(self.field(), f) {
            Ok(self.clone())
        } else if embeds_into(self.field(), f) {
            self.embed(f)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn eval(&self, pt: &ProjPoint) -> Fe {
        self.poly.eval(pt.coords())
    }

    /// True when `F` and all partials vanish at `pt` (same field assumed).
    pub fn is_singular_at(&self, pt: &ProjPoint) -> bool {
        self.eval(pt).is_zero() && self.partials.iter().all(|g| g.eval(pt.coords()).is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({"terms": self.poly.to_json(), "field": self.field().spec_json()})
    }
}

pub fn contains_point(c: &PlaneCurve, pt: &ProjPoint) -> Result<bool> {
    Ok(c.over(pt.field())?.eval(pt).is_zero())
}

/// Number of `ctx`-rational points and the Hasse-Weil sanity check
/// `|N - Q - 1| <= 2 g sqrt(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub count: u128,
    pub hasse_weil_ok: bool,
}

pub const ENUMERATION_LIMIT: u128 = 1 << 20;

pub fn count_points(c: &PlaneCurve, ctx: &Field) -> Result<PointCount> {
    let q = ctx.size_u128().ok_or(Error::FieldTooLarge)?;
    let npts = q * q + q + 1;
    if npts > ENUMERATION_LIMIT {
        return Err(Error::EnumerationBudget(npts));
    }
    let cc = c.over(ctx)?;
    let els = ctx.elements()?;
    let count = pg2_from_elements(&els, ctx)
        .iter()
        .filter(|pt| cc.eval(pt).is_zero())
        .count() as u128;
    let g = c.genus() as u128;
    let dev = count.abs_diff(q + 1);
    let hasse_weil_ok = dev * dev <= 4 * g * g * q;
    Ok(PointCount {
        count,
        hasse_weil_ok,
    })
}

/// Two points spanning the line `l0 X0 + l1 X1 + l2 X2 = 0`, the first one
/// equal to `pt` when given.
fn line_basis(line: &[Fe; 3], pt: Option<&ProjPoint>) -> [Vec<Fe>; 2] {
    let f = line[0].field().clone();
    let m = Mat::from_rows(&f, vec![line.to_vec()]);
    let ns = m.nullspace();
    assert_eq!(ns.len(), 2, "zero line");
    match pt {
        None => [ns[0].clone(), ns[1].clone()],
        Some(p) => {
            let pv = p.coords().to_vec();
            let other = ns
                .iter()
                .find(|v| ProjPoint::from_slice(v).as_ref() != Some(p))
                .unwrap()
                .clone();
            [pv, other]
        }
    }
}

/// `F(P + s R)` as a polynomial in `s`.
fn restrict(c: &PlaneCurve, p: &[Fe], r: &[Fe]) -> UPoly {
    let f = p[0].field().clone();
    let lin: Vec<UPoly> = (0..3)
        .map(|i| UPoly::from_coeffs(&f, vec![p[i].clone(), r[i].clone()]))
        .collect();
    let mut out = UPoly::zero(&f);
    for (e, co) in c.poly.terms() {
        let t = &(&lin[0].pow(e[0] as usize) * &lin[1].pow(e[1] as usize))
            * &lin[2].pow(e[2] as usize);
        out = &out + &t.scale(co);
    }
    out
}

fn on_line(line: &[Fe; 3], pt: &ProjPoint) -> bool {
    let x = pt.coords();
    (&(&(&line[0] * &x[0]) + &(&line[1] * &x[1])) + &(&line[2] * &x[2])).is_zero()
}

/// Intersection multiplicity of the line with the curve at `pt`.
pub fn line_imult(c: &PlaneCurve, line: &[Fe; 3], pt: &ProjPoint) -> Result<usize> {
    let f = pt.field().clone();
    let line: [Fe; 3] = [
        embed(&line[0], &f)?,
        embed(&line[1], &f)?,
        embed(&line[2], &f)?,
    ];
    let cc = c.over(&f)?;
    if !on_line(&line, pt) || !cc.eval(pt).is_zero() {
        return Err(Error::NotIncident);
    }
    let [p, r] = line_basis(&line, Some(pt));
    let h = restrict(&cc, &p, &r);
    h.valuation().ok_or(Error::LineComponent)
}

/// All intersection points of the line with the curve over a splitting
/// field of the restriction, with multiplicities.
pub fn line_section(c: &PlaneCurve, line: &[Fe; 3]) -> Result<(Field, Vec<(ProjPoint, usize)>)> {
    let base = line[0].field().clone();
    let cc = c.over(&base)?;
    let [p, r] = line_basis(line, None);
    let h = restrict(&cc, &p, &r);
    if h.is_zero() {
        return Err(Error::LineComponent);
    }
    let mut e = 1usize;
    if h.deg().unwrap_or(0) > 0 {
        for (d, _) in distinct_degree_factors(&radical(&h)) {
            e = num_integer::lcm(e, d);
        }
    }
    let ext = extend(&base, e)?;
    let he = h.map_coeffs(&ext, |x| embed(x, &ext).unwrap());
    let pe: Vec<Fe> = p.iter().map(|x| embed(x, &ext)).collect::<Result<_>>()?;
    let re: Vec<Fe> = r.iter().map(|x| embed(x, &ext)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    if he.deg().unwrap_or(0) > 0 {
        for (s, m) in poly_roots(&he)? {
            let v: Vec<Fe> = (0..3).map(|i| &pe[i] + &(&s * &re[i])).collect();
            out.push((ProjPoint::from_slice(&v).unwrap(), m));
        }
    }
    let deficit = c.degree as usize - he.deg().unwrap_or(0);
    if deficit > 0 {
        out.push((ProjPoint::from_slice(&re).unwrap(), deficit));
    }
    out.sort();
    Ok((ext, out))
}

/// Power-series parametrization of a smooth branch.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub center: ProjPoint,
    /// Index of the coordinate set to 1.
    pub chart: usize,
    /// 0 when the first affine coordinate is the local parameter, else 1.
    pub param: usize,
    /// The two affine coordinates (remaining indices, increasing) in `t`.
    pub affine: [Series; 2],
    pub precision: usize,
}

impl LocalExpansion {
    /// Homogeneous coordinates as series, with `X_chart = 1`.
    pub fn homogeneous(&self) -> [Series; 3] {
        let f = self.affine[0].field();
        let one = Series::constant(&f.one(), self.precision + 1);
        let (i, j) = other_two(self.chart);
        let mut out = [one.clone(), one.clone(), one];
        out[i] = self.affine[0].clone();
        out[j] = self.affine[1].clone();
        out
    }
}

/// Evaluates a bivariate polynomial (nonnegative exponents) at series.
pub fn eval_bipoly_series(g: &BiPoly, a: &Series, b: &Series) -> Series {
    let n = a.len();
    let f = a.field().clone();
    let mx = g.deg_x().unwrap_or(0).max(0) as usize;
    let my = g.deg_y().unwrap_or(0).max(0) as usize;
    let mut pa = vec![Series::constant(&f.one(), n)];
    for k in 1..=mx {
        let next = pa[k - 1].mul(a);
        pa.push(next);
    }
    let mut pb = vec![Series::constant(&f.one(), n)];
    for k in 1..=my {
        let next = pb[k - 1].mul(b);
        pb.push(next);
    }
    let mut acc = Series::zero(&f, n);
    for ((i, j), c) in g.terms() {
        let t = pa[*i as usize].mul(&pb[*j as usize]).scale(c);
        acc = acc.add(&t);
    }
    acc
}

/// Evaluates a trivariate polynomial at series.
pub fn eval_tripoly_series(g: &TriPoly, x: &[Series; 3]) -> Series {
    let n = x[0].len();
    let f = x[0].field().clone();
    let maxe: Vec<usize> = (0..3)
        .map(|i| g.terms().keys().map(|e| e[i] as usize).max().unwrap_or(0))
        .collect();
    let pw: Vec<Vec<Series>> = (0..3)
        .map(|i| {
            let mut v = vec![Series::constant(&f.one(), n)];
            for k in 1..=maxe[i] {
                let next = v[k - 1].mul(&x[i]);
                v.push(next);
            }
            v
        })
        .collect();
    let mut acc = Series::zero(&f, n);
    for (e, c) in g.terms() {
        let t = pw[0][e[0] as usize]
            .mul(&pw[1][e[1] as usize])
            .mul(&pw[2][e[2] as usize])
            .scale(c);
        acc = acc.add(&t);
    }
    acc
}

/// Chart (first nonzero coordinate from the right) and affine coordinates.
fn chart_of(pt: &ProjPoint) -> (usize, Fe, Fe) {
    let x = pt.coords();
    let k = (0..3).rev().find(|&k| !x[k].is_zero()).unwrap();
    let inv = x[k].inv().unwrap();
    let (i, j) = other_two(k);
    (k, &x[i] * &inv, &x[j] * &inv)
}

pub fn local_series(c: &PlaneCurve, pt: &ProjPoint, n: usize) -> Result<LocalExpansion> {
    let f = pt.field().clone();
    let cc = c.over(&f)?;
    if !cc.eval(pt).is_zero() {
        return Err(Error::NotIncident);
    }
    let (k, u0, v0) = chart_of(pt);
    let g = cc.poly.dehomogenize(k);
    let gu = g.deriv_x();
    let gv = g.deriv_y();
    let len = n + 1;
    let (param, dep_partial, w0) = if !gv.eval(&u0, &v0).is_zero() {
        (0, gv, v0.clone())
    } else if !gu.eval(&u0, &v0).is_zero() {
        (1, gu, u0.clone())
    } else {
        return Err(Error::SingularCenter);
    };
    let free0 = if param == 0 { &u0 } else { &v0 };
    let free = Series::shifted_t(free0, len);
    let pair = |w: &Series, s: &Series| -> (Series, Series) {
        if param == 0 {
            (s.clone(), w.clone())
        } else {
            (w.clone(), s.clone())
        }
    };
    let mut w = Series::constant(&w0, 1);
    let mut prec = 1;
    while prec < len {
        prec = (2 * prec).min(len);
        let s = free.truncate(prec);
        let wp = w.truncate(prec);
        let wp = Series::from_coeffs(&f, wp.coeffs().to_vec(), prec);
        let (a, b) = pair(&wp, &s);
        let val = eval_bipoly_series(&g, &a, &b);
        let der = eval_bipoly_series(&dep_partial, &a, &b);
        let step = val.mul(&der.inverse().ok_or(Error::SingularCenter)?);
        w = wp.sub(&step);
    }
    let (a, b) = pair(&w, &free);
    debug_assert!(eval_bipoly_series(&g, &a, &b).valuation().is_none());
    Ok(LocalExpansion {
        center: pt.clone(),
        chart: k,
        param,
        affine: [a, b],
        precision: n,
    })
}

/// Default expansion precision `2 d^2`.
pub fn default_precision(c: &PlaneCurve) -> usize {
    2 * (c.degree as usize).pow(2)
}

const PRECISION_DOUBLINGS: u32 = 4;

/// Order at `pt` of `num/den`, or of `(num/den) dx` with `x = X0/X2` when
/// `differential` is set.
pub fn ord_at(c: &PlaneCurve, pt: &ProjPoint, num: &TriPoly, den: &TriPoly, differential: bool) -> Result<i64> {
    let f = pt.field().clone();
    let num = num.embed(&f)?;
    let den = den.embed(&f)?;
    if den.is_zero() {
        return Err(Error::NotAFunction);
    }
    if num.is_zero() {
        return Err(Error::PrecisionCap);
    }
    if !num.is_homogeneous() || !den.is_homogeneous() || num.degree() != den.degree() {
        return Err(Error::NotHomogeneous);
    }
    let mut n = default_precision(c);
    for attempt in 0..=PRECISION_DOUBLINGS {
        let exp = local_series(c, pt, n)?;
        let xs = exp.homogeneous();
        let sn = eval_tripoly_series(&num, &xs);
        let sd = eval_tripoly_series(&den, &xs);
        let (vn, vd) = (sn.valuation(), sd.valuation());
        let mut ok = vn.is_some() && vd.is_some();
        let mut dx_ord = 0;
        if ok && differential {
            match Laurent::quotient(&xs[0], &xs[2]).and_then(|l| l.deriv_order()) {
                Some(o) => dx_ord = o,
                None => ok = false,
            }
        }
        if ok {
            return Ok(vn.unwrap() as i64 - vd.unwrap() as i64 + dx_ord);
        }
        if attempt == PRECISION_DOUBLINGS {
            if vd.is_none() {
                return Err(Error::NotAFunction);
            }
            return Err(Error::PrecisionCap);
        }
        n *= 2;
    }
    unreachable!()
}

/// The curve `F(M X) = 0`, i.e. the preimage of `c` under the point map `m`.
pub fn transform(c: &PlaneCurve, m: &ProjMap) -> Result<PlaneCurve> {
    let f = m.field().clone();
    let cc = c.over(&f)?;
    make_curve(cc.poly.substitute(m.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_field;

    /// `X0 X1^3 + X0^3 X2 + X1 X2^3` over GF(2).
    fn klein() -> PlaneCurve {
        let f = build_field(2, 1).unwrap();
        make_curve(TriPoly::from_int_terms(
            &f,
            &[([1, 3, 0], 1), ([3, 0, 1], 1), ([0, 1, 3], 1)],
        ))
        .unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        let f = build_field(3, 1).unwrap();
        let g = TriPoly::from_int_terms(&f, &[([2, 0, 0], 1), ([0, 1, 0], 1)]);
        assert_eq!(make_curve(g).unwrap_err(), Error::NotHomogeneous);
        assert_eq!(make_curve(TriPoly::zero(&f)).unwrap_err(), Error::ZeroPoly);
    }

    #[test]
    fn klein_points() {
        let c = klein();
        let f = c.field().clone();
        assert_eq!(c.genus(), 3);
        assert!(contains_point(&c, &ProjPoint::from_ints(&f, [1, 0, 0])).unwrap());
        assert!(!contains_point(&c, &ProjPoint::from_ints(&f, [1, 1, 0])).unwrap());
        let pc = count_points(&c, &f).unwrap();
        assert_eq!(pc.count, 3);
        assert!(pc.hasse_weil_ok);
        let other = build_field(3, 1).unwrap();
        assert_eq!(
            contains_point(&c, &ProjPoint::from_ints(&other, [1, 0, 0])).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn line_multiplicities_at_origin() {
        let c = klein();
        let f = c.field().clone();
        let o = ProjPoint::from_ints(&f, [0, 0, 1]);
        let xinf = ProjPoint::from_ints(&f, [1, 0, 0]);
        // l_Y : X1 = 0
        let ly = [f.zero(), f.one(), f.zero()];
        assert_eq!(line_imult(&c, &ly, &o).unwrap(), 3);
        assert_eq!(line_imult(&c, &ly, &xinf).unwrap(), 1);
        let (_, sec) = line_section(&c, &ly).unwrap();
        assert_eq!(sec.iter().map(|(_, m)| m).sum::<usize>(), 4);
        let off = ProjPoint::from_ints(&f, [1, 1, 0]);
        assert_eq!(line_imult(&c, &ly, &off).unwrap_err(), Error::NotIncident);
    }

    #[test]
    fn series_at_origin() {
        let c = klein();
        let f = c.field().clone();
        let o = ProjPoint::from_ints(&f, [0, 0, 1]);
        let e = local_series(&c, &o, 12).unwrap();
        // y = x^3 + ... over GF(2) (that is, -x^3)
        assert_eq!(e.param, 0);
        let y = &e.affine[1];
        assert!(y.coeff(0).is_zero() && y.coeff(1).is_zero() && y.coeff(2).is_zero());
        assert!(y.coeff(3).is_one());
        let e2 = local_series(&c, &o, 24).unwrap();
        assert_eq!(&e2.affine[1].coeffs()[..13], y.coeffs());
    }

    #[test]
    fn orders_at_infinity() {
        let c = klein();
        let f = c.field().clone();
        let xinf = ProjPoint::from_ints(&f, [1, 0, 0]);
        let one = TriPoly::constant(f.one());
        let x0 = TriPoly::var(&f, 0);
        let x2 = TriPoly::var(&f, 2);
        assert_eq!(ord_at(&c, &xinf, &x0, &x2, false).unwrap(), -3);
        assert_eq!(ord_at(&c, &xinf, &one, &one, true).unwrap(), -4);
        assert_eq!(ord_at(&c, &xinf, &one, &one, false).unwrap(), 0);
    }

    #[test]
    fn transform_identity_and_inverse() {
        let c = klein();
        let f = c.field().clone();
        assert_eq!(transform(&c, &ProjMap::identity(&f)).unwrap().poly(), c.poly());
        let m = ProjMap::new(Mat::from_fn(&f, 3, 3, |i, j| {
            if i == j || (i, j) == (0, 2) { f.one() } else { f.zero() }
        }))
        .unwrap();
        let back = transform(&transform(&c, &m).unwrap(), &m.inverse()).unwrap();
        assert!(back.poly().ratio_to(c.poly()).is_some());
    }
}
