use proptest::prelude::*;

use tallini::cartier::cartier_series;
use tallini::curve::transform;
use tallini::error::Error;
use tallini::ff::{build_field, Field, FieldExt};
use tallini::funcfield::{pole_divisor, NumericalSemigroup};
use tallini::geom::{orbit, pg2_points, singer_from_cubic, ProjMap, ProjPoint};
use tallini::linalg::Mat;
use tallini::series::Series;
use tallini::symmetry::{gen_automorphisms, stabilizer_scalar};
use tallini::tallini::{
    check_witness, covers_pg2, pellikaan_curve, pellikaan_equivalence, tallini_curve, TalliniParams,
};

fn field(sel: usize) -> Field {
    let (p, k) = [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2), (2, 6)][sel];
    build_field(p, k).unwrap()
}

fn map(f: &Field, idx: &[u128]) -> Option<ProjMap> {
    let n = f.size_u128().unwrap();
    ProjMap::new(Mat::from_fn(f, 3, 3, |i, j| f.from_index(idx[3 * i + j] % n))).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(sel in 0usize..6, a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
        let f = field(sel);
        let n = f.size_u128().unwrap();
        let (a, b, c) = (f.from_index(a % n), f.from_index(b % n), f.from_index(c % n));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!(a.pth_root().frobenius(), a.clone());
        if let Some(ai) = a.inv() {
            prop_assert!((&a * &ai).is_one());
        }
    }

    #[test]
    fn transform_is_a_right_action(q in prop::sample::select(vec![2u64, 3, 4]), idx in prop::collection::vec(any::<u128>(), 18)) {
        let f = tallini::tallini::gf(q).unwrap();
        let c = pellikaan_curve(q, &f).unwrap();
        if let (Some(a), Some(b)) = (map(&f, &idx[..9]), map(&f, &idx[9..])) {
            let lhs = transform(&transform(&c, &a).unwrap(), &b).unwrap();
            let rhs = transform(&c, &a.compose(&b)).unwrap();
            prop_assert_eq!(lhs.poly(), rhs.poly());
        }
    }

    #[test]
    fn semigroup_gaps_and_closure(mut gens in prop::collection::vec(2u64..30, 1..5), extra in 2u64..30) {
        gens.push(extra);
        gens.push(extra + 1);
        let s = NumericalSemigroup::from_generators(&gens, 2000).unwrap();
        for &g in &s.gaps {
            prop_assert!(!s.contains(g));
        }
        for n in s.conductor..s.conductor + 50 {
            prop_assert!(s.contains(n));
        }
        for x in 0..60 {
            for y in 0..60 {
                if s.contains(x) && s.contains(y) {
                    prop_assert!(s.contains(x + y));
                }
            }
        }
        prop_assert!(s.conductor as usize <= 2 * s.gaps.len());
    }

    #[test]
    fn cartier_semilinear(v in prop::collection::vec(0u128..9, 30), w in prop::collection::vec(0u128..9, 3)) {
        let f = build_field(3, 2).unwrap();
        let s = Series::from_coeffs(&f, v.iter().map(|&i| f.from_index(i)).collect(), 30);
        let g = Series::from_coeffs(&f, w.iter().map(|&i| f.from_index(i)).collect(), 30);
        let lhs = cartier_series(&g.pow(3).mul(&s));
        let rhs = g.truncate(lhs.len()).mul(&cartier_series(&s));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sigma_powers_preserve_canonical_curve(q in prop::sample::select(vec![2u64, 3, 4, 5]), k in 0u128..200) {
        let a = gen_automorphisms(q).unwrap();
        let c = pellikaan_curve(q, &a.field).unwrap();
        let m = a.sigma.pow(k).compose(&a.tau.pow(k % 3));
        prop_assert!(stabilizer_scalar(&m, &c).is_ok());
    }

    #[test]
    fn singer_regular_and_curve_covers(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]), a in 0u64..7, b in 0u64..7, c in 0u64..7, pt in any::<u128>()) {
        let params = match TalliniParams::from_indices(q, a % q, b % q, c % q) {
            Ok(p) => p,
            Err(Error::CubicReducible) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let f = params.field().clone();
        let s = singer_from_cubic(&params.a, &params.b, &params.c, q).unwrap();
        let pts = pg2_points(q, &f).unwrap();
        let start: &ProjPoint = &pts[(pt % pts.len() as u128) as usize];
        prop_assert_eq!(orbit(&s, start).len() as u64, q * q + q + 1);
        let cov = covers_pg2(&tallini_curve(&params).unwrap(), q).unwrap();
        prop_assert!(cov.covered && cov.count == (q * q + q + 1) as u128);
    }

    #[test]
    fn witnesses_check(q in prop::sample::select(vec![2u64, 3]), a in 0u64..3, b in 0u64..3, c in 0u64..3) {
        if let Ok(params) = TalliniParams::from_indices(q, a % q, b % q, c % q) {
            let w = pellikaan_equivalence(&params).unwrap();
            prop_assert!(check_witness(&w));
        }
    }

    #[test]
    fn pole_divisors_are_principal(q in prop::sample::select(vec![2u64, 3, 4, 5, 7]), n in 1u64..9) {
        if n <= q + 1 {
            prop_assert_eq!(pole_divisor(q, n).unwrap().degree(), 0);
        }
    }
}
