//! Sections of the generic fiber over Q(t): Shioda's height pairing, Gram
//! matrices, and torsion tests.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::field::Field;
use crate::kodaira::KodairaType;
use crate::linalg;
use crate::local::{function_field_local, LocalField};
use crate::place::Place;
use crate::poly::Poly;
use crate::rational::{rat, Rat};
use crate::ratfunc::RatFunc;
use crate::surface::{classify, FiberConfig};
use crate::tate::{local_data, LocalData};
use crate::weierstrass::{Point, WeierstrassModel};

pub type Section = Point<RatFunc>;

fn check_on(model: &WeierstrassModel<RatFunc>, p: &Section) -> Result<()> {
    if model.contains(p) {
        Ok(())
    } else {
        Err(Error::NotOnSurface)
    }
}

/// Local data at `v`: from the configuration if the fiber is singular,
/// otherwise computed (the model may still be non-minimal there).
fn local_at(model: &WeierstrassModel<RatFunc>, config: &FiberConfig, v: &Place) -> Result<LocalData<RatFunc>> {
    match config.get(v) {
        Some(d) => Ok(d.clone()),
        None => local_data(model, v),
    }
}

/// Local intersection number of `P` with the zero section at `v`.
fn intersection_with_zero_at(d: &LocalData<RatFunc>, p: &Section) -> Result<i64> {
    let Point::Affine(x, _) = d.transform.apply(p) else {
        return Ok(0);
    };
    let local = function_field_local(&d.place)?;
    match local.valuation(&x) {
        Some(v) if v < 0 => {
            if v % 2 != 0 {
                return Err(Error::Consistency(format!(
                    "odd pole order {v} of x along the zero section"
                )));
            }
            Ok(-v / 2)
        }
        _ => Ok(0),
    }
}

fn factor_places(p: &Poly, out: &mut Vec<Place>) -> Result<()> {
    if p.is_constant() {
        return Ok(());
    }
    for (q, _) in poly_factor(p)?.factors {
        let w = Place::Finite(q);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    Ok(())
}

/// `(P . O)`, summed over places with residue-degree weights.
pub fn intersection_with_zero(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    p: &Section,
) -> Result<i64> {
    let Point::Affine(x, _) = p else {
        return Ok(0);
    };
    let mut places: Vec<Place> = config.entries().iter().map(|d| d.place.clone()).collect();
    factor_places(x.den(), &mut places)?;
    for a in model.coeffs() {
        factor_places(a.den(), &mut places)?;
    }
    factor_places(model.discriminant().num(), &mut places)?;
    if !places.contains(&Place::Infinity) {
        places.push(Place::Infinity);
    }
    let mut total = 0;
    for v in places {
        let d = local_at(model, config, &v)?;
        total += v.residue_degree() as i64 * intersection_with_zero_at(&d, p)?;
    }
    Ok(total)
}

/// Whether the reduction of `P` on the minimal model is the singular point.
fn meets_singular_point(local: &dyn LocalField<Elem = RatFunc>, e: &WeierstrassModel<RatFunc>, x: &RatFunc, y: &RatFunc) -> bool {
    let two = RatFunc::from_int(2);
    let three = RatFunc::from_int(3);
    let psi2 = two.clone() * y.clone() + e.a1.clone() * x.clone() + e.a3.clone();
    let fx = three * x.square() + two * e.a2.clone() * x.clone() + e.a4.clone() - e.a1.clone() * y.clone();
    local.divisible(&psi2, 1) && local.divisible(&fx, 1)
}

/// Diagonal correction `contr_v(P, P)` and the component index it names.
fn diagonal_correction(d: &LocalData<RatFunc>, p: &Section) -> Result<(usize, Rat)> {
    let Point::Affine(x, y) = d.transform.apply(p) else {
        return Ok((0, Rat::zero()));
    };
    let local = function_field_local(&d.place)?;
    let e = &d.minimal_model;
    if !local.divisible(&x, 0) || !meets_singular_point(local.as_ref(), e, &x, &y) {
        return Ok((0, Rat::zero()));
    }
    let cap = i64::MAX / 8;
    let psi2 = RatFunc::from_int(2) * y.clone() + e.a1.clone() * x.clone() + e.a3.clone();
    let v2 = local.val_or(&psi2, cap);
    if let KodairaType::I(n) = d.kodaira {
        let i = v2.min(n as i64 / 2) as usize;
        let c = d.kodaira.contribution(i, i)?;
        return Ok((i, c));
    }
    let psi3 = RatFunc::from_int(3) * x.pow(4)
        + e.b2() * x.pow(3)
        + RatFunc::from_int(3) * e.b4() * x.square()
        + RatFunc::from_int(3) * e.b6() * x.clone()
        + e.b8();
    let v3 = local.val_or(&psi3, cap);
    let c = if v3 >= 3 * v2 { Rat::new((2 * v2).into(), 3.into()) } else { Rat::new(v3.into(), 4.into()) };
    let m = d.kodaira.simple_components() as usize;
    for i in 1..m {
        if d.kodaira.contribution(i, i)? == c {
            return Ok((i, c));
        }
    }
    Err(Error::Consistency(format!(
        "local correction {c} does not match any component of {}",
        d.kodaira
    )))
}

/// Index of the fiber component met by `P` at `v` (0 for the identity
/// component). For `I_n` the index is taken in `0..=n/2`, for `I_n*` the far
/// components are reported as 2.
pub fn component_index_of(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    p: &Section,
    v: &Place,
) -> Result<usize> {
    config.check_model(model)?;
    let Some(d) = config.get(v) else {
        return Ok(0);
    };
    Ok(diagonal_correction(d, p)?.0)
}

fn height_unchecked(model: &WeierstrassModel<RatFunc>, config: &FiberConfig, chi: i64, p: &Section) -> Result<Rat> {
    if *p == Point::Zero {
        return Ok(Rat::zero());
    }
    let po = intersection_with_zero(model, config, p)?;
    let mut h = rat(2 * chi + 2 * po);
    for d in config.entries() {
        let (_, c) = diagonal_correction(d, p)?;
        h -= c * rat(d.place.residue_degree() as i64);
    }
    Ok(h)
}

/// Shioda's height pairing. Off the diagonal it is obtained by polarization,
/// which avoids orienting the component labels of `P` and `Q` jointly.
pub fn height_pairing(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    p: &Section,
    q: &Section,
) -> Result<Rat> {
    config.check_model(model)?;
    check_on(model, p)?;
    check_on(model, q)?;
    let chi = classify(config)?.chi;
    let hp = height_unchecked(model, config, chi, p)?;
    if p == q {
        return Ok(hp);
    }
    let hq = height_unchecked(model, config, chi, q)?;
    let hpq = height_unchecked(model, config, chi, &model.add(p, q))?;
    Ok((hpq - hp - hq) / rat(2))
}

pub fn height(model: &WeierstrassModel<RatFunc>, config: &FiberConfig, p: &Section) -> Result<Rat> {
    height_pairing(model, config, p, p)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightData {
    pub gram: Vec<Vec<Rat>>,
    pub rank: usize,
    pub determinant: Rat,
}

pub fn gram_matrix(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    sections: &[Section],
) -> Result<Vec<Vec<Rat>>> {
    let n = sections.len();
    let mut g = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let h = height_pairing(model, config, &sections[i], &sections[j])?;
            g[i][j] = h.clone();
            g[j][i] = h;
        }
    }
    Ok(g)
}

pub fn gram_rank(model: &WeierstrassModel<RatFunc>, config: &FiberConfig, sections: &[Section]) -> Result<HeightData> {
    let gram = gram_matrix(model, config, sections)?;
    Ok(HeightData {
        rank: linalg::rank(&gram),
        determinant: linalg::determinant(&gram),
        gram,
    })
}

/// Whether appending `new` to `old` raises the Gram rank.
pub fn is_independent(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    old: &[Section],
    new: &Section,
) -> Result<bool> {
    let before = gram_rank(model, config, old)?.rank;
    let mut all = old.to_vec();
    all.push(new.clone());
    Ok(gram_rank(model, config, &all)?.rank > before)
}

pub fn is_torsion(model: &WeierstrassModel<RatFunc>, config: &FiberConfig, p: &Section) -> Result<bool> {
    Ok(height(model, config, p)?.is_zero())
}

/// Secondary certificate: the order of `P` if it is at most `bound`.
pub fn torsion_order(model: &WeierstrassModel<RatFunc>, p: &Section, bound: u32) -> Result<Option<u32>> {
    check_on(model, p)?;
    Ok(model.order_up_to(p, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::rational::ratio;
    use crate::surface::fiber_configuration;

    fn f(s: &str) -> RatFunc {
        parse_ratfunc(s, 's').unwrap()
    }

    fn model(a4: &str, a6: &str) -> WeierstrassModel<RatFunc> {
        WeierstrassModel::new(f("0"), f("0"), f("0"), f(a4), f(a6))
    }

    #[test]
    fn three_torsion() {
        let e = model("0", "s^2");
        let c = fiber_configuration(&e).unwrap();
        let p = Point::Affine(f("0"), f("s"));
        assert_eq!(e.double(&p), Point::Affine(f("0"), f("-s")));
        assert_eq!(e.mul(3, &p), Point::Zero);
        assert_eq!(height(&e, &c, &p), Ok(Rat::zero()));
        assert!(component_index_of(&e, &c, &p, &Place::at(&rat(0))).unwrap() != 0);
        assert_eq!(gram_rank(&e, &c, &[p]).unwrap().rank, 0);
    }

    #[test]
    fn height_two_thirds() {
        let e = model("0", "s^2 - 1");
        let c = fiber_configuration(&e).unwrap();
        let p = Point::Affine(f("1"), f("s"));
        assert_eq!(height(&e, &c, &p), Ok(ratio(2, 3)));
        assert!(!is_torsion(&e, &c, &p).unwrap());
        let hd = gram_rank(&e, &c, std::slice::from_ref(&p)).unwrap();
        assert_eq!((hd.rank, hd.determinant), (1, ratio(2, 3)));
        let m = e.negate(&p);
        assert_eq!(height_pairing(&e, &c, &p, &m), Ok(ratio(-2, 3)));
    }

    #[test]
    fn mismatched_config() {
        let e = model("0", "s^2 - 1");
        let c = fiber_configuration(&model("0", "s^2")).unwrap();
        assert_eq!(height(&e, &c, &Point::Zero), Err(Error::ConfigMismatch));
    }
}
