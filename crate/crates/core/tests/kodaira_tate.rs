use ellfib_core::kodaira::{kodaira_from_valuations, KodairaType};
use ellfib_core::linalg::determinant;
use ellfib_core::local::function_field_local;
use ellfib_core::parse::parse_ratfunc;
use ellfib_core::rational::{rat, ratio, Rat};
use ellfib_core::tate::{local_data, local_data_at_prime, minimalize_at, TateOptions};
use ellfib_core::{fiber_configuration, Field, Place, Poly, RatFunc, Transform, WeierstrassModel};
use num_traits::Zero;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(-3i64..=3, 1..=max_deg + 1).prop_map(|c| RatFunc::poly(Poly::from_ints(&c)))
}

fn model_strategy() -> impl Strategy<Value = WeierstrassModel<RatFunc>> {
    (poly(1), poly(2), poly(3), poly(4), poly(6))
        .prop_map(|(a1, a2, a3, a4, a6)| WeierstrassModel::new(a1, a2, a3, a4, a6))
        .prop_filter("nonsingular", |e| !e.is_singular())
}

fn int_model() -> impl Strategy<Value = WeierstrassModel<Rat>> {
    prop::collection::vec(-30i64..=30, 5)
        .prop_map(|c| WeierstrassModel::new(rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3]), rat(c[4])))
        .prop_filter("nonsingular", |e| !e.is_singular())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invariant_identities(e in model_strategy()) {
        let inv = e.invariants().unwrap();
        prop_assert_eq!(inv.c4.pow(3) - inv.c6.square(), RatFunc::from_int(1728) * inv.disc.clone());
        prop_assert_eq!(RatFunc::from_int(4) * inv.b8.clone(), inv.b2.clone() * inv.b6.clone() - inv.b4.square());
    }

    #[test]
    fn euler_number_divisible_by_twelve(e in model_strategy()) {
        let c = fiber_configuration(&e).unwrap();
        let total: i64 = c.entries().iter().map(|d| d.place.residue_degree() as i64 * d.euler as i64).sum();
        prop_assert_eq!(total % 12, 0);
    }

    #[test]
    fn valuation_table_agrees_with_tate(e in model_strategy()) {
        let c = fiber_configuration(&e).unwrap();
        for d in c.entries() {
            let local = function_field_local(&d.place).unwrap();
            let m = &d.minimal_model;
            let vd = local.valuation(&m.discriminant()).unwrap();
            prop_assert_eq!(vd, d.v_disc);
            let fast = kodaira_from_valuations(local.valuation(&m.c4()), local.valuation(&m.c6()), vd);
            prop_assert_eq!(fast, d.kodaira);
            // Euler number of the fiber equals v(Delta_min) in characteristic 0
            prop_assert_eq!(d.euler as i64, vd);
        }
    }
}

fn unit_rat() -> impl Strategy<Value = Rat> {
    (1i64..=5, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| if neg { ratio(-n, d) } else { ratio(n, d) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn tate_invariant_under_coordinate_change(e in model_strategy(), u in unit_rat(), r in poly(2), s in poly(1), t in poly(3)) {
        let tr = Transform { u: RatFunc::constant(u), r, s, t };
        let e2 = e.transform(&tr);
        let c1 = fiber_configuration(&e).unwrap();
        let c2 = fiber_configuration(&e2).unwrap();
        let key = |c: &ellfib_core::FiberConfig| -> Vec<(Place, KodairaType, i64, u32)> {
            c.entries().iter().map(|d| (d.place.clone(), d.kodaira, d.v_disc, d.components)).collect()
        };
        prop_assert_eq!(key(&c1), key(&c2));
    }

    #[test]
    fn tate_over_z_invariant_under_unimodular_change(e in int_model(), r in -6i64..6, s in -6i64..6, t in -6i64..6, neg in any::<bool>()) {
        let u = if neg { rat(-1) } else { rat(1) };
        let tr = Transform { u, r: rat(r), s: rat(s), t: rat(t) };
        let e2 = e.transform(&tr);
        for p in [2u64, 3, 5, 7] {
            let d1 = local_data_at_prime(&e, p, TateOptions::default()).unwrap();
            let d2 = local_data_at_prime(&e2, p, TateOptions::default()).unwrap();
            prop_assert_eq!((d1.kodaira, d1.v_disc), (d2.kodaira, d2.v_disc));
            // Ogg: the conductor exponent is 0, 1, or at least 2 as the type demands
            let f = d1.conductor_exponent();
            match d1.kodaira {
                KodairaType::I(0) => prop_assert_eq!(f, 0),
                KodairaType::I(_) => prop_assert_eq!(f, 1),
                _ => prop_assert!(f >= 2),
            }
        }
    }
}

/// Curves over Z with known reduction types and conductors.
#[test]
fn ogg_formula_on_known_curves() {
    let cases: [([i64; 5], u64, KodairaType, i64); 9] = [
        ([0, -1, 1, -10, -20], 11, KodairaType::I(5), 1),
        ([1, 0, 1, 4, -6], 2, KodairaType::I(6), 1),
        ([1, 0, 1, 4, -6], 7, KodairaType::I(3), 1),
        ([1, 1, 1, -10, -10], 3, KodairaType::I(4), 1),
        ([1, 1, 1, -10, -10], 5, KodairaType::I(4), 1),
        ([0, 0, 1, 0, -7], 3, KodairaType::IVStar, 3),
        ([0, 0, 0, -1, 0], 2, KodairaType::III, 5),
        ([0, 0, 0, 1, 0], 2, KodairaType::II, 6),
        ([0, 0, 0, 0, 1], 3, KodairaType::III, 2),
    ];
    for (c, p, kod, f) in cases {
        let e = WeierstrassModel::new(rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3]), rat(c[4]));
        let d = local_data_at_prime(&e, p, TateOptions::default()).unwrap();
        assert_eq!(d.kodaira, kod, "{c:?} at {p}");
        assert_eq!(d.conductor_exponent(), f, "{c:?} at {p}");
    }
}

#[test]
fn minimalization_examples() {
    let p = |s: &str| parse_ratfunc(s, 't').unwrap();
    let e = WeierstrassModel::new(p("0"), p("0"), p("0"), p("0"), p("t^2 - 1"));
    let (m, tr) = minimalize_at(&e, &Place::at(&rat(5))).unwrap();
    assert_eq!(m, e);
    assert!(tr.is_identity());
    // scaled by u = t: a_i -> t^i a_i
    let scaled = e.transform(&Transform::scaling(p("1/t")));
    let (m, tr) = minimalize_at(&scaled, &Place::at(&rat(0))).unwrap();
    assert_eq!(m, e);
    assert_eq!(tr.u, p("t"));
    let inf = local_data(&e, &Place::Infinity).unwrap();
    assert_eq!((inf.kodaira, inf.v_disc), (KodairaType::IVStar, 8));
    let d = WeierstrassModel::new(p("0"), p("0"), p("0"), p("0"), p("t"));
    assert_eq!(local_data(&d, &Place::at(&rat(0))).unwrap().kodaira, KodairaType::II);
}

#[test]
fn discriminant_of_legendre_form() {
    // y^2 = x (x + 1)(x + d^2): Delta = 16 d^4 (d^2 - 1)^2
    let d = parse_ratfunc("(t-1)/(t+1)", 't').unwrap();
    let d2 = d.clone() * d.clone();
    let e = WeierstrassModel::new(RatFunc::zero(), RatFunc::from_int(1) + d2.clone(), RatFunc::zero(), d2.clone(), RatFunc::zero());
    let expect = RatFunc::from_int(16) * d2.square() * (d2.clone() - RatFunc::from_int(1)).square();
    assert_eq!(e.discriminant(), expect);
}

// ---- lattice-inversion oracle for the local height corrections ----

/// Negated intersection matrix of the non-identity components, and the
/// node index of each simple component label 1.. in the crate's convention.
fn dual_graph(t: KodairaType) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    use KodairaType::*;
    match t {
        I(n) => {
            let n = n as usize;
            let edges = (0..n.saturating_sub(2)).map(|i| (i, i + 1)).collect();
            (n - 1, edges, (0..n - 1).collect())
        }
        III => (1, vec![], vec![0]),
        IV => (2, vec![(0, 1)], vec![0, 1]),
        IStar(n) => {
            // chain c_0..c_n = nodes 0..=n; near leaf n+1 on c_0; far leaves n+2, n+3 on c_n
            let n = n as usize;
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
            edges.push((0, n + 1));
            edges.push((n, n + 2));
            edges.push((n, n + 3));
            (n + 4, edges, vec![n + 1, n + 2, n + 3])
        }
        IVStar => {
            // center 0; arm toward identity: 1; arms 2-3 and 4-5 end in simple components 3, 5
            (6, vec![(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)], vec![3, 5])
        }
        IIIStar => {
            // chain 0..5 away from identity, extra node 6 on node 2 (the center)
            (7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)], vec![5])
        }
        _ => unreachable!(),
    }
}

fn inverse_entry(size: usize, edges: &[(usize, usize)], a: usize, b: usize) -> Rat {
    let mut m = vec![vec![Rat::zero(); size]; size];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = rat(2);
    }
    for &(i, j) in edges {
        m[i][j] = rat(-1);
        m[j][i] = rat(-1);
    }
    // Cramer: (M^{-1})_{ab} = (-1)^{a+b} det(M minor b,a) / det M
    let minor: Vec<Vec<Rat>> = (0..size)
        .filter(|&r| r != b)
        .map(|r| (0..size).filter(|&c| c != a).map(|c| m[r][c].clone()).collect())
        .collect();
    let sign = if (a + b).is_multiple_of(2) { rat(1) } else { rat(-1) };
    let det_minor = if size == 1 { rat(1) } else { determinant(&minor) };
    sign * det_minor / determinant(&m)
}

#[test]
fn contributions_match_lattice_inversion() {
    use KodairaType::*;
    let mut types: Vec<KodairaType> = (2..=20).map(I).collect();
    types.extend((0..=15).map(IStar));
    types.extend([III, IV, IVStar, IIIStar]);
    for t in types {
        let (size, edges, simple) = dual_graph(t);
        for (li, &ni) in simple.iter().enumerate() {
            for (lj, &nj) in simple.iter().enumerate() {
                let expected = inverse_entry(size, &edges, ni, nj);
                assert_eq!(t.contribution(li + 1, lj + 1).unwrap(), expected, "{t} ({}, {})", li + 1, lj + 1);
            }
        }
        assert_eq!(t.contribution(0, 1).unwrap(), rat(0));
    }
}

#[test]
fn small_characteristic_switch() {
    let e = WeierstrassModel::new(rat(0), rat(0), rat(1), rat(0), rat(-7));
    let off = TateOptions { allow_small_char: false };
    assert!(local_data_at_prime(&e, 3, off).is_err());
    assert!(local_data_at_prime(&e, 5, off).is_ok());
}
