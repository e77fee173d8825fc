//! The Cartier operator on holomorphic differentials of the Pellikaan curve:
//! the Hasse-Witt matrix from coefficients of `F^{p-1}`, a local-series
//! oracle, stable rank, ordinarity and the Manin congruence.

use serde_json::{json, Value};

use crate::curve::{count_points, eval_bipoly_series, local_series};
use crate::error::{Error, Result};
use crate::ff::{extend, Fe, Field, FieldExt};
use crate::geom::ProjPoint;
use crate::linalg::Mat;
use crate::poly::BiPoly;
use crate::series::{Laurent, Series};
use crate::symmetry::pellikaan_affine;
use crate::tallini::{gf, pellikaan_curve};

/// Exponents `(i, j)` of `x^i y^j dx / F_y`, `i + j <= q - 1`, ordered by
/// `i` then `j`.
pub fn hol_diff_basis(q: u64) -> Vec<(u64, u64)> {
    (0..q)
        .flat_map(|i| (0..q - i).map(move |j| (i, j)))
        .collect()
}

/// Column `s` holds the image of basis element `s`: entry `(t, s)` is the
/// `p`-th root of the coefficient of `x^{p(a'+1)-(a+1)} y^{p(b'+1)-(b+1)}`
/// in `F^{p-1}`, for source `(a, b)` and target `(a', b')`.
#[derive(Clone, Debug)]
pub struct HwMatrix {
    pub q: u64,
    pub basis: Vec<(u64, u64)>,
    pub a: Mat,
}

impl HwMatrix {
    pub fn p(&self) -> u64 {
        self.a.field().p()
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({"q": self.q, "field": self.a.field().spec_json(), "matrix": self.a.to_json()})
    }
}

pub fn hasse_witt_matrix(q: u64) -> Result<HwMatrix> {
    let f = gf(q)?;
    let p = f.p() as i64;
    let fp1 = pellikaan_affine(q, &f).pow(p as u64 - 1);
    let basis = hol_diff_basis(q);
    let g = basis.len();
    let a = Mat::from_fn(&f, g, g, |t, s| {
        let (a, b) = (basis[s].0 as i64, basis[s].1 as i64);
        let (a2, b2) = (basis[t].0 as i64, basis[t].1 as i64);
        let e = (p * (a2 + 1) - (a + 1), p * (b2 + 1) - (b + 1));
        fp1.terms().get(&e).map_or_else(|| f.zero(), |c| c.pth_root())
    });
    Ok(HwMatrix { q, basis, a })
}

/// `C(sum a_n t^n dt) = sum a_{pn+p-1}^{1/p} t^n dt`.
pub fn cartier_series(s: &Series) -> Series {
    let f = s.field().clone();
    let p = f.p() as usize;
    let len = s.len() / p;
    let c = (0..len)
        .map(|n| s.coeff(p * n + p - 1).pth_root())
        .collect();
    Series::from_coeffs(&f, c, len)
}

/// First affine point `(x, y)`, `x y != 0`, in lexicographic encoding order,
/// over the least extension of `GF(q)` that has one.
pub fn oracle_point(q: u64) -> Result<ProjPoint> {
    let base = gf(q)?;
    let c = pellikaan_curve(q, &base)?;
    for d in 1..=4 {
        let ext = extend(&base, d)?;
        let cc = c.over(&ext)?;
        let g = cc.poly().dehomogenize(2);
        for x in ext.elements()?.into_iter().filter(|x| !x.is_zero()) {
            let h = g.at_x(&x);
            let mut ys = crate::ff::distinct_roots(&h)?;
            ys.retain(|y| !y.is_zero());
            if let Some(y) = ys.into_iter().min() {
                return Ok(ProjPoint::new(x, y, ext.one()).unwrap());
            }
        }
    }
    Err(Error::Internal("no affine point with nonzero coordinates".into()))
}

/// Local expansions of the basis differentials as series in `t` (the
/// coefficient of `dt`), each of length `len`.
pub fn basis_expansions(q: u64, pt: &ProjPoint, n: usize) -> Result<Vec<Series>> {
    let f = pt.field().clone();
    let c = pellikaan_curve(q, &gf(q)?)?;
    let exp = local_series(&c, pt, n)?;
    let [x, y] = &exp.affine;
    let fy = pellikaan_affine(q, &f).deriv_y();
    let fy_t = eval_bipoly_series(&fy, x, y);
    let dx = x.deriv();
    let len = dx.len();
    let mut out = Vec::new();
    for (i, j) in hol_diff_basis(q) {
        let h = eval_bipoly_series(&BiPoly::monomial(i as i64, j as i64, f.one()), x, y);
        let num = h.truncate(len).mul(&dx);
        let l = Laurent::quotient(&num, &fy_t.truncate(len)).ok_or(Error::PrecisionCap)?;
        if l.val < 0 {
            return Err(Error::Internal("basis differential has a pole".into()));
        }
        let mut coeffs = vec![f.zero(); l.val as usize];
        coeffs.extend(l.unit.coeffs().iter().cloned());
        let m = l.unit.len() + l.val as usize;
        out.push(Series::from_coeffs(&f, coeffs, m));
    }
    let m = out.iter().map(|s| s.len()).min().unwrap_or(0);
    Ok(out.into_iter().map(|s| s.truncate(m)).collect())
}

/// Coordinates of `C(omega_s)` in the basis, from local expansions at
/// [`oracle_point`] to precision `n`.
pub fn cartier_series_oracle(q: u64, s: usize, n: usize) -> Result<Vec<Fe>> {
    let pt = oracle_point(q)?;
    let exps = basis_expansions(q, &pt, n)?;
    let f = pt.field().clone();
    let image = cartier_series(exps.get(s).ok_or(Error::Internal("basis index".into()))?);
    let rows = image.len();
    let m = Mat::from_fn(&f, rows, exps.len(), |r, k| exps[k].coeff(r));
    m.solve(image.coeffs()).ok_or(Error::PrecisionCap)
}

/// Default oracle precision `2 g p + p` plus slack for the division by
/// `F_y`.
pub fn oracle_precision(q: u64) -> usize {
    let p = gf(q).map_or(2, |f| f.p()) as usize;
    let g = (q * (q + 1) / 2) as usize;
    2 * g * p + p + 2 * (q as usize + 2)
}

/// Whether every oracle column equals the formula column.
pub fn oracle_agrees(hw: &HwMatrix) -> Result<bool> {
    let pt = oracle_point(hw.q)?;
    let f = pt.field().clone();
    let a = hw.a.embed(&f)?;
    for s in 0..hw.genus() {
        let col = cartier_series_oracle(hw.q, s, oracle_precision(hw.q))?;
        if (0..hw.genus()).any(|t| col[t] != *a.get(t, s)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of `C^n`: `A^{(p^{n-1})} ... A^{(p)} A`.
fn iterate(a: &Mat, n: usize) -> Mat {
    (1..n).fold(a.clone(), |acc, j| a.twist(j).mul(&acc))
}

/// Rank of `C^g`, computed by doubling `P_{2n} = P_n^{(p^n)} P_n` until the
/// exponent reaches `g`.
pub fn stable_rank(a: &Mat, g: usize) -> usize {
    if g == 0 {
        return a.rank();
    }
    let mut pm = a.clone();
    let mut n = 1;
    while n < g {
        pm = pm.twist(n).mul(&pm);
        n *= 2;
    }
    pm.rank()
}

/// The same rank from the explicit product of `g` twisted factors.
pub fn stable_rank_direct(a: &Mat, g: usize) -> usize {
    iterate(a, g.max(1)).rank()
}

#[derive(Clone, Debug)]
pub struct OrdinaryReport {
    pub q: u64,
    pub gamma: usize,
    pub genus: usize,
    pub ordinary: bool,
    /// `rank A = g`, i.e. `C` is injective.
    pub injective: bool,
}

impl OrdinaryReport {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "gamma": self.gamma,
            "genus": self.genus,
            "ordinary": self.ordinary,
            "injective": self.injective,
        })
    }
}

pub fn is_ordinary(q: u64) -> Result<OrdinaryReport> {
    let hw = hasse_witt_matrix(q)?;
    let g = hw.genus();
    let gamma = stable_rank(&hw.a, g);
    Ok(OrdinaryReport {
        q,
        gamma,
        genus: g,
        ordinary: gamma == g,
        injective: hw.a.rank() == g,
    })
}

/// `trace A = 1 - #C(GF(p))` in `GF(p)`.
pub fn manin_trace_check(p: u64) -> Result<bool> {
    let f = gf(p)?;
    if !f.is_prime_field() {
        return Err(Error::NotPrime(p));
    }
    let hw = hasse_witt_matrix(p)?;
    let n = count_points(&pellikaan_curve(p, &f)?, &f)?.count;
    Ok(hw.a.trace() == f.from_u64(1) - f.from_u64((n % p as u128) as u64))
}

/// The field of the oracle expansion point.
pub fn oracle_field(q: u64) -> Result<Field> {
    Ok(oracle_point(q)?.field().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{build_field, FieldExt};

    #[test]
    fn basis_size_is_genus() {
        for q in 2..10 {
            assert_eq!(hol_diff_basis(q).len() as u64, q * (q + 1) / 2);
        }
    }

    #[test]
    fn small_primes_full_rank() {
        let a2 = hasse_witt_matrix(2).unwrap();
        assert_eq!((a2.a.rows(), a2.a.rank()), (3, 3));
        let a3 = hasse_witt_matrix(3).unwrap();
        assert_eq!((a3.a.rows(), a3.a.rank()), (6, 6));
    }

    #[test]
    fn oracle_matches_formula() {
        for q in [2, 3, 4] {
            assert!(oracle_agrees(&hasse_witt_matrix(q).unwrap()).unwrap(), "q={q}");
        }
    }

    #[test]
    fn cartier_is_additive_and_semilinear() {
        let f = build_field(3, 2).unwrap();
        let s1 = Series::from_coeffs(&f, (0..20).map(|i| f.from_index(i * 7 % 9)).collect(), 20);
        let s2 = Series::from_coeffs(&f, (0..20).map(|i| f.from_index(i * 5 % 9)).collect(), 20);
        assert_eq!(
            cartier_series(&s1.add(&s2)),
            cartier_series(&s1).add(&cartier_series(&s2))
        );
        // C(g^p w) = g C(w) for a series g
        let g = Series::from_coeffs(&f, vec![f.from_index(4), f.from_index(2), f.one()], 20);
        let gp = g.pow(3);
        let lhs = cartier_series(&gp.mul(&s1));
        let rhs = g.truncate(lhs.len()).mul(&cartier_series(&s1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stable_rank_routes_agree() {
        for q in [2, 3, 4, 5] {
            let hw = hasse_witt_matrix(q).unwrap();
            let g = hw.genus();
            assert_eq!(stable_rank(&hw.a, g), stable_rank_direct(&hw.a, g));
        }
        let f = build_field(2, 1).unwrap();
        assert_eq!(stable_rank(&Mat::zeros(&f, 3, 3), 3), 0);
    }

    #[test]
    fn ordinarity() {
        for p in [2, 3, 5, 7] {
            let r = is_ordinary(p).unwrap();
            assert!(r.ordinary && r.injective);
            assert_eq!(r.gamma as u64, p * (p + 1) / 2);
        }
        let r4 = is_ordinary(4).unwrap();
        assert!(!r4.ordinary && r4.gamma < 10);
    }

    #[test]
    fn manin() {
        for p in [2, 3, 5, 7] {
            assert!(manin_trace_check(p).unwrap(), "p={p}");
        }
    }
}
