//! Singular points of plane curves by resultant elimination, and the cheaper
//! partial smoothness check used for larger fields.

use serde_json::{json, Value};

use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::ff::{distinct_degree_factors, embed, extend, poly_roots, radical, Fe, Field, FieldExt, UPoly};
use crate::geom::{pg2_points, ProjPoint};
use crate::poly::BiPoly;

/// Determinant of a square matrix over `K[x]` by fraction-free (Bareiss)
/// elimination.
pub fn poly_det(mut m: Vec<Vec<UPoly>>, field: &Field) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(field.one());
    }
    let mut sign = false;
    let mut prev = UPoly::constant(field.one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return UPoly::zero(field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Coefficients of `g` as a polynomial in `y` over `K[x]`.
fn y_coeffs(g: &BiPoly) -> Vec<UPoly> {
    let f = g.field().clone();
    let dy = g.deg_y().unwrap_or(0).max(0) as usize;
    let dx = g.deg_x().unwrap_or(0).max(0) as usize;
    let mut cols = vec![vec![f.zero(); dx + 1]; dy + 1];
    for ((i, j), c) in g.terms() {
        cols[*j as usize][*i as usize] = c.clone();
    }
    cols.into_iter().map(|c| UPoly::from_coeffs(&f, c)).collect()
}

/// `Res_y(a, b)` as a polynomial in `x`.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> UPoly {
    let f = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return UPoly::zero(&f);
    }
    let ac = y_coeffs(a);
    let bc = y_coeffs(b);
    let (m, n) = (ac.len() - 1, bc.len() - 1);
    if m == 0 {
        return ac[0].pow(n);
    }
    if n == 0 {
        return bc[0].pow(m);
    }
    let size = m + n;
    let mut s = vec![vec![UPoly::zero(&f); size]; size];
    for i in 0..n {
        for (k, c) in ac.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in bc.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    poly_det(s, &f)
}

/// Outcome of the closure search.
#[derive(Clone, Debug)]
pub struct SingularReport {
    pub points: Vec<ProjPoint>,
    /// Degrees of the distinct-degree parts of the affine eliminant.
    pub eliminant_factor_degrees: Vec<usize>,
    pub eliminant_degree: usize,
    pub largest_extension: usize,
}

impl SingularReport {
    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "eliminant_degree": self.eliminant_degree,
            "eliminant_factor_degrees": self.eliminant_factor_degrees,
            "largest_extension": self.largest_extension,
        })
    }
}

/// Roots of `h` over the algebraic closure, grouped by the extension of
/// `h`'s field where they live. Each extension degree is relative to
/// `h`'s field and must not exceed `budget`.
fn closure_roots(h: &UPoly, budget: usize) -> Result<Vec<(Field, Vec<Fe>, usize)>> {
    let mut out = Vec::new();
    if h.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for (d, part) in distinct_degree_factors(&radical(h)) {
        if d > budget {
            return Err(Error::ExtensionBudget {
                degree: d,
                max_ext: budget,
            });
        }
        let ext = extend(h.field(), d)?;
        let pe = part.map_coeffs(&ext, |x| embed(x, &ext).unwrap());
        let roots = poly_roots(&pe)?.into_iter().map(|(r, _)| r).collect();
        out.push((ext, roots, d));
    }
    Ok(out)
}

fn gcd_all(polys: &[UPoly]) -> Option<UPoly> {
    let nz: Vec<&UPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let first = (*nz.first()?).clone();
    Some(nz[1..].iter().fold(first.monic(), |g, p| g.gcd(p)))
}

/// All singular points over the algebraic closure, searching extensions of
/// degree at most `max_ext` over the curve's field.
pub fn singular_points(c: &PlaneCurve, max_ext: usize) -> Result<SingularReport> {
    let base = c.field().clone();
    let f = c.poly().dehomogenize(2);
    let fx = c.partial(0).dehomogenize(2);
    let fy = c.partial(1).dehomogenize(2);
    let r1 = resultant_y(&f, &fx);
    let r2 = resultant_y(&f, &fy);
    let g = gcd_all(&[r1, r2]).ok_or(Error::DegenerateSystem)?;
    let mut points = Vec::new();
    let mut largest = 1usize;
    let mut degrees = Vec::new();
    if g.deg().unwrap_or(0) > 0 {
        degrees = distinct_degree_factors(&radical(&g))
            .iter()
            .map(|(d, _)| *d)
            .collect();
    }
    for (ext, xs, d) in closure_roots(&g, max_ext)? {
        largest = largest.max(d);
        let (fe, fxe, fye) = (f.embed(&ext)?, fx.embed(&ext)?, fy.embed(&ext)?);
        for x0 in xs {
            let polys = [fe.at_x(&x0), fxe.at_x(&x0), fye.at_x(&x0)];
            let h = gcd_all(&polys).ok_or(Error::DegenerateSystem)?;
            for (ext2, ys, e) in closure_roots(&h, max_ext / d)? {
                largest = largest.max(d * e);
                let x0e = embed(&x0, &ext2)?;
                for y0 in ys {
                    points.push(ProjPoint::new(x0e.clone(), y0, ext2.one()).unwrap());
                }
            }
        }
    }
    // the line X2 = 0: points (1 : t : 0) and (0 : 1 : 0)
    for (ext, ts, d) in closure_roots(&infinity_gcd(c)?, max_ext)? {
        largest = largest.max(d);
        for t in ts {
            points.push(ProjPoint::new(ext.one(), t, ext.zero()).unwrap());
        }
    }
    let yinf = ProjPoint::from_ints(&base, [0, 1, 0]);
    if c.is_singular_at(&yinf) {
        points.push(yinf);
    }
    Ok(SingularReport {
        points,
        eliminant_factor_degrees: degrees,
        eliminant_degree: g.deg().unwrap_or(0),
        largest_extension: largest,
    })
}

/// Evidence of smoothness short of the full closure search.
#[derive(Clone, Debug)]
pub struct PartialSmoothness {
    /// Singular points among the points of PG(2, q).
    pub rational_singular: usize,
    /// Singular points among the supplied extra points.
    pub extra_singular: usize,
    /// Values `x0` of the extension field at which `F`, `F_x`, `F_y` share
    /// a root in `y`.
    pub scan_hits: usize,
    pub scan_field_degree: usize,
    pub line_at_infinity_ok: bool,
}

impl PartialSmoothness {
    pub fn ok(&self) -> bool {
        self.rational_singular == 0 && self.extra_singular == 0 && self.scan_hits == 0 && self.line_at_infinity_ok
    }
}

/// Checks the rational points of PG(2, q), the `extra` points, and every
/// vertical line `x = x0` with `x0` in the extension of degree `scan_degree`.
pub fn partial_smoothness(
    c: &PlaneCurve,
    q: u64,
    extra: &[ProjPoint],
    scan_degree: usize,
) -> Result<PartialSmoothness> {
    let base = c.field().clone();
    let rational_singular = pg2_points(q, &base)?
        .iter()
        .filter(|p| c.is_singular_at(p))
        .count();
    let mut extra_singular = 0;
    for p in extra {
        if c.over(p.field())?.is_singular_at(p) {
            extra_singular += 1;
        }
    }
    let ext = extend(&base, scan_degree)?;
    let ce = c.over(&ext)?;
    let f = ce.poly().dehomogenize(2);
    let fx = ce.partial(0).dehomogenize(2);
    let fy = ce.partial(1).dehomogenize(2);
    let mut scan_hits = 0;
    for x0 in ext.elements()? {
        let polys = [f.at_x(&x0), fx.at_x(&x0), fy.at_x(&x0)];
        match gcd_all(&polys) {
            Some(h) if h.deg() == Some(0) => {}
            _ => scan_hits += 1,
        }
    }
    let line_at_infinity_ok = smooth_at_infinity(c)?;
    Ok(PartialSmoothness {
        rational_singular,
        extra_singular,
        scan_hits,
        scan_field_degree: scan_degree,
        line_at_infinity_ok,
    })
}

/// `gcd` of `F` and its partials restricted to `(1 : t : 0)`.
fn infinity_gcd(c: &PlaneCurve) -> Result<UPoly> {
    let base = c.field().clone();
    let polys: Vec<UPoly> = std::iter::once(c.poly())
        .chain((0..3).map(|i| c.partial(i)))
        .map(|g| {
            BiPoly::from_terms(
                &base,
                g.terms()
                    .iter()
                    .filter(|(e, _)| e[2] == 0)
                    .map(|(e, v)| ((0, e[1] as i64), v.clone())),
            )
            .at_x(&base.one())
        })
        .collect();
    gcd_all(&polys).ok_or(Error::DegenerateSystem)
}

/// True when no point of the line `X2 = 0` is singular.
fn smooth_at_infinity(c: &PlaneCurve) -> Result<bool> {
    let yinf = ProjPoint::from_ints(c.field(), [0, 1, 0]);
    Ok(infinity_gcd(c)?.deg() == Some(0) && !c.is_singular_at(&yinf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::make_curve;
    use crate::ff::build_field;
    use crate::poly::TriPoly;

    #[test]
    fn resultant_of_linear_forms() {
        let f = build_field(7, 1).unwrap();
        // Res_y(y - x, y - 2) = 2 - x up to sign
        let a = BiPoly::from_int_terms(&f, &[((0, 1), 1), ((1, 0), -1)]);
        let b = BiPoly::from_int_terms(&f, &[((0, 1), 1), ((0, 0), -2)]);
        let r = resultant_y(&a, &b);
        assert_eq!(r.deg(), Some(1));
        assert!(r.eval(&f.from_u64(2)).is_zero());
    }

    #[test]
    fn resultant_vanishes_on_common_roots() {
        let f = build_field(5, 1).unwrap();
        // y^2 - x and y - x: common root where x^2 = x
        let a = BiPoly::from_int_terms(&f, &[((0, 2), 1), ((1, 0), -1)]);
        let b = BiPoly::from_int_terms(&f, &[((0, 1), 1), ((1, 0), -1)]);
        let r = resultant_y(&a, &b);
        assert!(r.eval(&f.zero()).is_zero());
        assert!(r.eval(&f.one()).is_zero());
        assert!(!r.eval(&f.from_u64(2)).is_zero());
    }

    #[test]
    fn cusp_is_found() {
        let f = build_field(5, 1).unwrap();
        let c = make_curve(TriPoly::from_int_terms(&f, &[([0, 2, 1], 1), ([3, 0, 0], -1)])).unwrap();
        let rep = singular_points(&c, 4).unwrap();
        assert_eq!(rep.points, vec![ProjPoint::from_ints(&f, [0, 0, 1])]);
    }

    #[test]
    fn klein_quartic_is_smooth() {
        let f = build_field(2, 1).unwrap();
        let c = make_curve(TriPoly::from_int_terms(
            &f,
            &[([1, 3, 0], 1), ([3, 0, 1], 1), ([0, 1, 3], 1)],
        ))
        .unwrap();
        assert!(singular_points(&c, 32).unwrap().points.is_empty());
        assert!(partial_smoothness(&c, 2, &[], 3).unwrap().ok());
    }

    #[test]
    fn node_at_infinity_is_found() {
        // X0 X1^2 - X0 X2^2 - X2^3: a node at (1:0:0)
        let f = build_field(7, 1).unwrap();
        let c = make_curve(TriPoly::from_int_terms(
            &f,
            &[([1, 2, 0], 1), ([1, 0, 2], -1), ([0, 0, 3], -1)],
        ))
        .unwrap();
        let rep = singular_points(&c, 4).unwrap();
        assert_eq!(rep.points, vec![ProjPoint::from_ints(&f, [1, 0, 0])]);
    }
}
