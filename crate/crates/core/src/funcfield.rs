//! Divisors of `x`, `y`, `y/x^n` and `dx` on the Pellikaan curve, and the
//! Weierstrass semigroup at a base point.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::curve::{line_section, ord_at, PlaneCurve};
use crate::error::{Error, Result};
use crate::ff::{distinct_roots, extend, Field, FieldExt};
use crate::geom::ProjPoint;
use crate::poly::TriPoly;
use crate::tallini::{gf, pellikaan_curve};

pub const SAMPLE_SEED: u64 = 0x5EED_0F_DA7A;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    O,
    XInf,
    YInf,
    Affine(ProjPoint),
}

impl Place {
    pub fn of(pt: &ProjPoint) -> Place {
        let f = pt.field();
        let z = f.zero();
        let o = f.one();
        match pt.coords() {
            [a, b, c] if a.is_zero() && b.is_zero() && *c == o => Place::O,
            [a, b, c] if *a == o && b.is_zero() && *c == z => Place::XInf,
            [a, b, c] if a.is_zero() && *b == o && c.is_zero() => Place::YInf,
            _ => Place::Affine(pt.clone()),
        }
    }

    pub fn point(&self, f: &Field) -> ProjPoint {
        match self {
            Place::O => ProjPoint::from_ints(f, [0, 0, 1]),
            Place::XInf => ProjPoint::from_ints(f, [1, 0, 0]),
            Place::YInf => ProjPoint::from_ints(f, [0, 1, 0]),
            Place::Affine(p) => p.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Place::O => "O".into(),
            Place::XInf => "Xinf".into(),
            Place::YInf => "Yinf".into(),
            Place::Affine(p) => format!("{p:?}"),
        }
    }
}

/// A finite formal sum of places.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in pairs {
            d.add_at(p, n);
        }
        d
    }

    pub fn add_at(&mut self, p: Place, n: i64) {
        let e = self.coeffs.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in &o.coeffs {
            d.add_at(p.clone(), *n);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_pairs(self.coeffs.iter().map(|(p, n)| (p.clone(), n * k)))
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.scale(-1))
    }

    /// The negative part, as a positive divisor.
    pub fn poles(&self) -> Divisor {
        Divisor::from_pairs(
            self.coeffs
                .iter()
                .filter(|(_, n)| **n < 0)
                .map(|(p, n)| (p.clone(), -n)),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.coeffs.iter()
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (p, n) in &self.coeffs {
            m.insert(p.label(), json!(n));
        }
        Value::Object(m)
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, n)| format!("{n}*{}", p.label()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `l . C` for the line `line`, over the base field of the curve.
fn line_divisor(c: &PlaneCurve, line: [i64; 3]) -> Result<Divisor> {
    let f = c.field().clone();
    let l = line.map(|v| f.from_i64(v));
    let (_, pts) = line_section(c, &l)?;
    let d = Divisor::from_pairs(pts.iter().map(|(pt, m)| (Place::of(pt), *m as i64)));
    if d.degree() != c.degree() as i64 {
        return Err(Error::DivisorMismatch(format!("line {line:?} section degree")));
    }
    Ok(d)
}

const L_X: [i64; 3] = [1, 0, 0];
const L_Y: [i64; 3] = [0, 1, 0];
const L_Z: [i64; 3] = [0, 0, 1];

/// `(x) = l_X.C - l_Z.C` and `(y) = l_Y.C - l_Z.C` on the canonical model.
pub fn fundamental_divisors(q: u64) -> Result<(Divisor, Divisor)> {
    let c = pellikaan_curve(q, &gf(q)?)?;
    let lz = line_divisor(&c, L_Z)?;
    let dx = line_divisor(&c, L_X)?.sub(&lz);
    let dy = line_divisor(&c, L_Y)?.sub(&lz);
    if dx.degree() != 0 || dy.degree() != 0 {
        return Err(Error::DivisorMismatch("nonzero degree".into()));
    }
    Ok((dx, dy))
}

/// `(y / x^n)` for `1 <= n <= q+1`.
pub fn pole_divisor(q: u64, n: u64) -> Result<Divisor> {
    if n == 0 || n > q + 1 {
        return Err(Error::NRange);
    }
    let (dx, dy) = fundamental_divisors(q)?;
    Ok(dy.sub(&dx.scale(n as i64)))
}

/// `(X_num / X_den)` at the triangle, computed from local expansions.
pub fn coordinate_orders(q: u64, num: usize, den: usize) -> Result<Divisor> {
    let f = gf(q)?;
    let c = pellikaan_curve(q, &f)?;
    let mut d = Divisor::zero();
    for place in [Place::O, Place::XInf, Place::YInf] {
        let o = ord_at(
            &c,
            &place.point(&f),
            &TriPoly::var(&f, num),
            &TriPoly::var(&f, den),
            false,
        )?;
        d.add_at(place, o);
    }
    Ok(d)
}

/// A numerical semigroup given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    pub generators: Vec<u64>,
    pub gaps: Vec<u64>,
    /// Least `c` with every integer `>= c` in the semigroup.
    pub conductor: u64,
}

impl NumericalSemigroup {
    /// Gaps by a sieve on `[0, cap)`; `cap` must exceed the conductor.
    pub fn from_generators(generators: &[u64], cap: u64) -> Result<NumericalSemigroup> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let g0 = *gens
            .first()
            .ok_or_else(|| Error::Internal("empty generator set".into()))?;
        let mut member = vec![false; cap as usize];
        member[0] = true;
        for n in 1..cap as usize {
            member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
        }
        // g0 consecutive members at the end certify the conductor
        let run = member.iter().rev().take_while(|&&m| m).count() as u64;
        if run < g0 {
            return Err(Error::Internal("sieve cap below conductor".into()));
        }
        let gaps: Vec<u64> = (0..cap).filter(|&n| !member[n as usize]).collect();
        let conductor = gaps.last().map_or(0, |g| g + 1);
        Ok(NumericalSemigroup {
            generators: gens,
            gaps,
            conductor,
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.gaps.binary_search(&n).is_err()
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generators": self.generators,
            "gaps": self.gaps,
            "gap_count": self.gaps.len(),
            "conductor": self.conductor,
        })
    }
}

/// `<q+1, 2q+1, ..., (q+1)q+1>`.
pub fn base_semigroup(q: u64) -> Result<NumericalSemigroup> {
    let gens: Vec<u64> = (1..=q + 1).map(|n| n * q + 1).collect();
    let cap = (q + 1) * ((q + 1) * q + 1) + q + 2;
    NumericalSemigroup::from_generators(&gens, cap)
}

pub fn semigroup_gaps(s: &NumericalSemigroup) -> Vec<u64> {
    s.gaps.clone()
}

/// Distinct affine points with both coordinates nonzero over `ext`, chosen
/// by a seeded shuffle of the `x` values.
pub fn sample_affine_points(c: &PlaneCurve, ext: &Field, count: usize, seed: u64) -> Result<Vec<ProjPoint>> {
    let cc = c.over(ext)?;
    let g = cc.poly().dehomogenize(2);
    let mut xs: Vec<_> = ext.elements()?.into_iter().filter(|x| !x.is_zero()).collect();
    xs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut out = Vec::new();
    for x in xs {
        let h = g.at_x(&x);
        if h.is_zero() {
            continue;
        }
        for y in distinct_roots(&h)? {
            if !y.is_zero() && out.len() < count {
                out.push(ProjPoint::new(x.clone(), y, ext.one()).unwrap());
            }
        }
        if out.len() >= count {
            break;
        }
    }
    Ok(out)
}

/// `(dx)` from local orders at the triangle, with the affine sample that
/// supports the claim that `dx` has no other zeros or poles.
#[derive(Clone, Debug)]
pub struct DxDivisor {
    pub divisor: Divisor,
    pub affine_sampled: usize,
    pub affine_all_zero: bool,
}

pub fn canonical_dx_divisor(q: u64, samples: usize) -> Result<DxDivisor> {
    let f = gf(q)?;
    let c = pellikaan_curve(q, &f)?;
    let one = TriPoly::var(&f, 2);
    let mut d = Divisor::zero();
    for place in [Place::O, Place::XInf, Place::YInf] {
        d.add_at(place.clone(), ord_at(&c, &place.point(&f), &one, &one, true)?);
    }
    let ext = extend(&f, 3)?;
    let pts = sample_affine_points(&c, &ext, samples, SAMPLE_SEED)?;
    let mut all_zero = true;
    for pt in &pts {
        if ord_at(&c, pt, &one, &one, true)? != 0 {
            all_zero = false;
        }
    }
    Ok(DxDivisor {
        divisor: d,
        affine_sampled: pts.len(),
        affine_all_zero: all_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn div(o: i64, xi: i64, yi: i64) -> Divisor {
        Divisor::from_pairs([(Place::O, o), (Place::XInf, xi), (Place::YInf, yi)])
    }

    /// Additive closure of the generators below `bound`.
    fn brute_gaps(gens: &[u64], bound: u64) -> Vec<u64> {
        let mut reach = std::collections::BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(n) = frontier.pop() {
            for &g in gens {
                if n + g < bound && reach.insert(n + g) {
                    frontier.push(n + g);
                }
            }
        }
        (0..bound).filter(|n| !reach.contains(n)).collect()
    }

    #[test]
    fn divisors_q2_q4() {
        let (dx, dy) = fundamental_divisors(2).unwrap();
        assert_eq!(dx, div(1, -3, 2));
        assert_eq!(dy, div(3, -2, -1));
        let (_, dy4) = fundamental_divisors(4).unwrap();
        assert_eq!(dy4, div(5, -4, -1));
    }

    #[test]
    fn divisors_agree_with_local_orders() {
        for q in [2, 3, 4] {
            let (dx, dy) = fundamental_divisors(q).unwrap();
            assert_eq!(coordinate_orders(q, 0, 2).unwrap(), dx);
            assert_eq!(coordinate_orders(q, 1, 2).unwrap(), dy);
        }
    }

    #[test]
    fn pole_divisors() {
        let d = pole_divisor(2, 1).unwrap();
        assert_eq!(d.poles(), Divisor::from_pairs([(Place::YInf, 3)]));
        let d = pole_divisor(2, 3).unwrap();
        assert_eq!(d.poles(), Divisor::from_pairs([(Place::YInf, 7)]));
        assert_eq!(d.coeff(&Place::O), 0);
        assert_eq!(d.degree(), 0);
        assert_eq!(pole_divisor(2, 4).unwrap_err(), Error::NRange);
        assert_eq!(pole_divisor(2, 0).unwrap_err(), Error::NRange);
    }

    #[test]
    fn semigroup_examples() {
        let s = base_semigroup(2).unwrap();
        assert_eq!(s.generators, vec![3, 5, 7]);
        assert_eq!(semigroup_gaps(&s), vec![1, 2, 4]);
        assert_eq!(base_semigroup(4).unwrap().genus(), 10);
        let s23 = NumericalSemigroup::from_generators(&[2, 3], 10).unwrap();
        assert_eq!(s23.gaps, vec![1]);
        assert!(s.contains(0) && !s.contains(1));
    }

    #[test]
    fn sieve_matches_brute_force() {
        for q in 2..=12u64 {
            let s = base_semigroup(q).unwrap();
            let bound = (q + 1) * ((q + 1) * q + 1);
            assert_eq!(s.gaps, brute_gaps(&s.generators, bound), "q={q}");
            assert_eq!(s.gaps.len() as u64, q * (q + 1) / 2);
        }
    }

    #[test]
    fn dx_divisor_small_q() {
        let d = canonical_dx_divisor(2, 20).unwrap();
        assert_eq!(d.divisor, Divisor::from_pairs([(Place::YInf, 8), (Place::XInf, -4)]));
        assert!(d.affine_all_zero && d.affine_sampled > 0);
        let d3 = canonical_dx_divisor(3, 20).unwrap();
        assert_eq!(d3.divisor, Divisor::from_pairs([(Place::YInf, 15), (Place::XInf, -5)]));
        assert_eq!(d3.divisor.degree(), 10);
    }
}
