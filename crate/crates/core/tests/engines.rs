mod common;

use common::{rng, Q};
use frechet_core::{
    critical_values, decide, exact, extract_matching_at, Curve, DecisionDiagram, Dist, ParamPoint, Rational, Variant,
};
use proptest::prelude::*;

fn curve(v: &[i64]) -> Curve {
    Curve::from_ints(v).unwrap()
}

fn dist(x: Q) -> Dist {
    Dist::from_rational(Rational::new(*x.numer() as i64, *x.denom() as i64))
}

fn check_pair(a: &[i64], b: &[i64]) {
    let (p, q) = (curve(a), curve(b));
    let ctx = format!("P={a:?} Q={b:?}");
    assert_eq!(exact(Variant::F, &p, &q).unwrap(), dist(common::frechet(a, b)), "F {ctx}");
    assert_eq!(exact(Variant::PartialF, &p, &q).unwrap(), dist(common::partial_frechet(a, b)), "partialF {ctx}");
    assert_eq!(exact(Variant::WF, &p, &q).unwrap(), dist(common::weak(a, b, false)), "wF {ctx}");
    assert_eq!(exact(Variant::WwF, &p, &q).unwrap(), dist(common::weak(a, b, true)), "wwF {ctx}");
    assert_eq!(exact(Variant::DwF, &p, &q).unwrap(), Dist::from_int(common::discrete_weak(a, b, false)), "dwF {ctx}");
    assert_eq!(exact(Variant::DwwF, &p, &q).unwrap(), Dist::from_int(common::discrete_weak(a, b, true)), "dwwF {ctx}");
    if a.len() <= 7 && b.len() <= 7 {
        assert_eq!(exact(Variant::DF, &p, &q).unwrap(), Dist::from_int(common::discrete_brute(a, b)), "dF {ctx}");
    }
}

#[test]
fn engines_match_oracles_on_random_1d_pairs() {
    let mut r = rng(11);
    for _ in 0..400 {
        let a = common::random_curve(&mut r, 8, -6, 6);
        let b = common::random_curve(&mut r, 8, -6, 6);
        check_pair(&a, &b);
    }
}

#[test]
fn decisions_agree_with_oracles_at_half_integers() {
    let mut r = rng(12);
    for _ in 0..150 {
        let a = common::random_curve(&mut r, 7, 0, 9);
        let b = common::random_curve(&mut r, 7, 0, 9);
        let (p, q) = (curve(&a), curve(&b));
        for twice in 0..=14 {
            let eps = Q::new(twice, 2);
            let e = Rational::new(twice as i64, 2);
            assert_eq!(decide(Variant::F, &p, &q, e).unwrap(), common::frechet_decide(&a, &b, eps, false), "{a:?} {b:?} {e}");
            assert_eq!(decide(Variant::PartialF, &p, &q, e).unwrap(), common::frechet_decide(&a, &b, eps, true));
            assert_eq!(decide(Variant::WF, &p, &q, e).unwrap(), common::weak_decide(&a, &b, eps, false));
            assert_eq!(decide(Variant::WwF, &p, &q, e).unwrap(), common::weak_decide(&a, &b, eps, true));
        }
    }
}

#[test]
fn witnesses_validate_at_the_exact_value() {
    let mut r = rng(13);
    for _ in 0..150 {
        let a = common::random_curve(&mut r, 7, -5, 5);
        let b = common::random_curve(&mut r, 7, -5, 5);
        let (p, q) = (curve(&a), curve(&b));
        for v in Variant::ALL {
            let value = exact(v, &p, &q).unwrap();
            let m = extract_matching_at(&p, &q, value, v).unwrap();
            assert!(m.width <= value, "{v} {a:?} {b:?}: width {} > {}", m.width, value);
            assert_eq!(m.validate(&p, &q).unwrap(), m.width);
        }
    }
}

#[test]
fn two_dimensional_values_lie_in_the_critical_set() {
    let mut r = rng(14);
    for _ in 0..60 {
        let pts = |r: &mut rand_chacha::ChaCha8Rng| {
            let a = common::random_curve(r, 5, -3, 3);
            let b: Vec<i64> = (0..a.len()).map(|k| (a[k] * 7 + k as i64 * 3).rem_euclid(7) - 3).collect();
            Curve::from_int_points(&a.iter().zip(&b).map(|(&x, &y)| (x, y)).collect::<Vec<_>>()).unwrap()
        };
        let (p, q) = (pts(&mut r), pts(&mut r));
        let cv = critical_values(&p, &q).unwrap();
        for v in [Variant::F, Variant::PartialF, Variant::DF, Variant::WF] {
            let value = exact(v, &p, &q).unwrap();
            assert!(cv.contains(&value), "{v}: {value} missing from critical values");
            let m = extract_matching_at(&p, &q, value, v);
            if let Ok(m) = m {
                assert!(m.width <= value);
            }
        }
        let f = exact(Variant::F, &p, &q).unwrap();
        assert!(exact(Variant::WF, &p, &q).unwrap() <= f);
        assert!(f <= exact(Variant::DF, &p, &q).unwrap());
    }
}

#[test]
fn diagram_cells_match_pointwise_membership() {
    let p = curve(&[0, 10, 4]);
    let q = curve(&[1, 9, 3, 7]);
    let dg = DecisionDiagram::new(&p, &q, Rational::from_integer(2)).unwrap();
    assert_eq!(dg.shape(), (2, 3));
    for i in 0..2 {
        for j in 0..3 {
            let cell = dg.cell(i, j);
            if let Some(iv) = cell.bottom {
                let lo = iv.lo.to_rational().unwrap();
                let x = ParamPoint(Rational::new(*lo.numer() as i64, *lo.denom() as i64) + (i as i64 + 1));
                assert!(dg.is_free(x, ParamPoint::vertex(j + 1)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frechet_is_symmetric_and_sandwiched(
        a in prop::collection::vec(-8i64..=8, 1..7),
        b in prop::collection::vec(-8i64..=8, 1..7),
    ) {
        let (p, q) = (curve(&a), curve(&b));
        let f = exact(Variant::F, &p, &q).unwrap();
        prop_assert_eq!(f, exact(Variant::F, &q, &p).unwrap());
        prop_assert!(exact(Variant::WF, &p, &q).unwrap() <= f);
        prop_assert!(f <= exact(Variant::DF, &p, &q).unwrap());
        prop_assert!(exact(Variant::PartialF, &p, &q).unwrap() <= f);
        prop_assert!(exact(Variant::DwF, &p, &q).unwrap() <= exact(Variant::DF, &p, &q).unwrap());
    }
}
