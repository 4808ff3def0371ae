//! The bundled two-fibration example: the Kummer surface of `E x E`,
//! `E: y^2 = x^3 - x`, as `Y^2 = X^3 - (u^3 - u)^2 X` over Q(u).
//!
//! For a rational `c` with `k = c^3 - c != 0`, the curve
//! `C_c: Ytilde^2 = T^3 - k^2 T` lies on the surface via
//! `u = T/k`, `X = c (u^3 - u)`, `Y = (u^3 - u) Ytilde / k`,
//! and carries the point `(c k, k^2)`.

use crate::basechange::{BaseChangeMap, Multisection};
use crate::error::Result;
use crate::mordell_weil::Section;
use crate::parse::{parse_expr, parse_ratfunc};
use crate::rankjump::SecondFibration;
use crate::rational::{fmt_rat, rat, Rat};
use crate::ratfunc::RatFunc;
use crate::weierstrass::{Point, WeierstrassModel};

fn u(src: &str) -> RatFunc {
    parse_ratfunc(src, 'u').expect("demo literal")
}

pub fn kummer_model() -> WeierstrassModel<RatFunc> {
    WeierstrassModel::new(u("0"), u("0"), u("0"), u("-(u^3-u)^2"), u("0"))
}

/// `(u^4 - u^2, (u^3 - u)^2)`
pub fn diagonal_section() -> Section {
    Point::Affine(u("u^4 - u^2"), u("(u^3 - u)^2"))
}

/// The 2-torsion sections `(0, 0)`, `(+-(u^3 - u), 0)`.
pub fn two_torsion() -> Vec<Section> {
    vec![
        Point::Affine(u("0"), u("0")),
        Point::Affine(u("u^3 - u"), u("0")),
        Point::Affine(u("u - u^3"), u("0")),
    ]
}

fn k_of(c: &Rat) -> Rat {
    c * c * c - c
}

/// The curve `C_c` with its embedding and the point `(c k, k^2)`.
pub fn second_fibration(c: &Rat) -> Result<SecondFibration> {
    let k = k_of(c);
    let (cs, ks) = (format!("({})", fmt_rat(c)), format!("({})", fmt_rat(&k)));
    let curve = WeierstrassModel::new(rat(0), rat(0), rat(0), -(k.clone() * k.clone()), rat(0));
    let t = parse_expr(&format!("T/{ks}"))?;
    let x = parse_expr(&format!("{cs}*((T/{ks})^3 - T/{ks})"))?;
    let y = parse_expr(&format!("((T/{ks})^3 - T/{ks})*Y/{ks}"))?;
    let generator = Point::Affine(c * &k, &k * &k);
    SecondFibration::new(curve, ('T', 'Y'), [t, x, y], generator)
}

/// `C_c` as a bisection: over `K' = Q(u)(w)`, `w^2 = k^3 (u^3 - u)`, it
/// gives the section `(c (u^3 - u), (u^3 - u) w / k)`.
pub fn bisection(c: &Rat) -> Multisection {
    let k = k_of(c);
    let kk = RatFunc::constant(k.clone());
    let v = u("u^3 - u");
    let g = kk.clone() * kk.clone() * kk.clone() * v.clone();
    Multisection::quadratic(
        (RatFunc::constant(c.clone()) * v.clone(), RatFunc::constant(rat(0))),
        (RatFunc::constant(rat(0)), v / kk),
        g,
        BaseChangeMap::identity(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basechange::{new_section, NewSection};
    use crate::error::Error;
    use crate::kodaira::KodairaType;
    use crate::mordell_weil::{gram_rank, height};
    use crate::rankjump::rank_jump_scan;
    use crate::rational::ratio;
    use crate::surface::{classify, fiber_configuration, SurfaceClass};
    use crate::twist::{rank_over_extension, TwistCertificate};

    #[test]
    fn kummer_configuration() {
        let e = kummer_model();
        let c = fiber_configuration(&e).unwrap();
        assert_eq!(c.geometric_types(), vec![KodairaType::IStar(0); 4]);
        let info = classify(&c).unwrap();
        assert_eq!(info.class, SurfaceClass::K3);
        assert_eq!(info.trivial_lattice_rank, 18);
        assert_eq!(info.mw_rank_geometric_upper, Some(2));
        let p = diagonal_section();
        assert!(e.contains(&p));
        assert_eq!(height(&e, &c, &p), Ok(rat(1)));
        assert_eq!(gram_rank(&e, &c, &[p]).unwrap().rank, 1);
    }

    #[test]
    fn scan_first_multiples() {
        let e = kummer_model();
        let s = second_fibration(&rat(2)).unwrap();
        let r = rank_jump_scan(&e, &s, 2, &[]).unwrap();
        assert_eq!(r.fibers[0].t, rat(2));
        assert_eq!(r.fibers[0].points[0].x, rat(12));
        assert_eq!(r.fibers[0].points[0].y, rat(36));
        assert_eq!(r.fibers[1].t, ratio(25, 24));
        let v = ratio(25, 24);
        assert_eq!(r.fibers[1].points[0].x, rat(2) * (&v * &v * &v - &v));
        assert!(r.verify());
        assert_eq!(second_fibration(&rat(1)).unwrap_err(), Error::SingularFiberCurve);
    }

    #[test]
    fn bisection_raises_rank() {
        let e = kummer_model();
        let config = fiber_configuration(&e).unwrap();
        let ms = bisection(&rat(2));
        let NewSection::Quadratic { g, point } = new_section(&e, &ms).unwrap() else {
            panic!("expected a section over the extension");
        };
        let r = rank_over_extension(&e, &config, &[diagonal_section()], &g, &point).unwrap();
        assert_eq!((r.old_rank, r.new_rank), (1, 2));
        let TwistCertificate::Constant { curve, point, certificate } = r.twist else { panic!() };
        // P - P^sigma = 2P, i.e. 2(12, 36) = (25/4, -35/8) on the twist,
        // seen on the copy of y^2 = x^3 - 36x rescaled by 6.
        assert_eq!(curve.a4, rat(-36 * 6i64.pow(4)));
        assert_eq!(point, Point::Affine(ratio(25, 4) * rat(36), ratio(-35, 8) * rat(216)));
        assert!(certificate.non_torsion);
    }
}
