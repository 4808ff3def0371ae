use ellfib_core::demo;
use ellfib_core::parse::parse_ratfunc;
use ellfib_core::rankjump::{ap, nagao_sum, nagao_sum_with_threads, rank_jump_scan, specialize};
use ellfib_core::rational::{primes_up_to, rat, ratio, Rat};
use ellfib_core::{fiber_configuration, Error, Point, WeierstrassModel};
use proptest::prelude::*;

fn short(a: i64, b: i64) -> WeierstrassModel<Rat> {
    WeierstrassModel::new(rat(0), rat(0), rat(0), rat(a), rat(b))
}

/// (d | p) by listing the squares mod p.
fn legendre(d: i64, p: i64) -> i64 {
    let d = d.rem_euclid(p);
    if d == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == d) {
        1
    } else {
        -1
    }
}

fn curve_strategy() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..=50, -50i64..=50).prop_filter("nonsingular", |(a, b)| 4 * a * a * a + 27 * b * b != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn hasse_bound((a, b) in curve_strategy()) {
        let e = short(a, b);
        for p in primes_up_to(100).into_iter().filter(|&p| p > 3) {
            match ap(&e, p) {
                Ok(t) => prop_assert!(t * t <= 4 * p as i64, "a_{} = {}", p, t),
                Err(Error::BadReduction(_)) => {}
                Err(other) => prop_assert!(false, "{other}"),
            }
        }
    }

    #[test]
    fn quadratic_twist_multiplies_by_legendre_symbol((a, b) in curve_strategy(), d in prop::sample::select(vec![-3i64, -1, 2, 3, 5, 6, 7])) {
        let e = short(a, b);
        let twist = short(a * d * d, b * d * d * d);
        for p in primes_up_to(60).into_iter().filter(|&p| p > 3) {
            if (d as i128).rem_euclid(p as i128) == 0 {
                continue;
            }
            if let Ok(t) = ap(&e, p) {
                prop_assert_eq!(ap(&twist, p).unwrap(), legendre(d, p as i64) * t);
            }
        }
    }

    #[test]
    fn specialization_agrees_with_fiber_configuration(n in -12i64..=12, m in 1i64..=4) {
        let e = demo::kummer_model();
        let config = fiber_configuration(&e).unwrap();
        let t0 = ratio(n, m);
        let bad = config.entries().iter().find(|d| d.place.rational_point() == Some(t0.clone()));
        match (specialize(&e, &t0), bad) {
            (Ok(s), None) => {
                prop_assert!(!s.model.is_singular());
                prop_assert!(s.model.coeffs().iter().all(|c| c.is_integer()));
            }
            (Err(Error::DegenerateFiber { kodaira, .. }), Some(d)) => prop_assert_eq!(kodaira, d.kodaira),
            (r, d) => prop_assert!(false, "{r:?} vs {:?}", d.map(|d| d.kodaira)),
        }
    }
}

#[test]
fn small_primes_and_composites_are_refused() {
    let e = short(1, 1);
    assert_eq!(ap(&e, 3), Err(Error::SmallPrime(3)));
    assert!(matches!(ap(&e, 9), Err(Error::BadPrime(_))));
    // disc = -16 (4 + 27) = -496 = -2^4 31
    assert_eq!(ap(&e, 31), Err(Error::BadReduction(31)));
}

#[test]
fn nagao_is_deterministic_across_thread_counts() {
    let e = WeierstrassModel::short(parse_ratfunc("0", 't').unwrap(), parse_ratfunc("t", 't').unwrap());
    let base = nagao_sum(&e, 100).unwrap();
    assert!(base >= ratio(-1, 2) && base <= ratio(1, 2));
    for threads in [1, 2, 3, 8] {
        assert_eq!(nagao_sum_with_threads(&e, 100, threads).unwrap(), base);
    }
    assert_eq!(nagao_sum(&e, 100).unwrap(), base);
}

#[test]
fn demo_scan_covers_three_fibers() {
    let e = demo::kummer_model();
    let second = demo::second_fibration(&rat(2)).unwrap();
    assert_eq!(second.generator, Point::Affine(rat(12), rat(36)));
    let report = rank_jump_scan(&e, &second, 6, &[demo::diagonal_section()]).unwrap();
    assert!(report.verify());
    assert!(report.summary.certified_fibers >= 3);
    assert_eq!(report.summary.known_generic_rank, 1);
    let at = |t: Rat| report.fibers.iter().find(|f| f.t == t).unwrap();
    let two = at(rat(2));
    assert!(two.points.iter().any(|p| (p.x.clone(), p.y.clone()) == (rat(12), rat(36))));
    assert!(!at(ratio(25, 24)).points.is_empty());
}
