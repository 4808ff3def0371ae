//! Pulling a fibration back along a rational map of the base line, the
//! behaviour of Kodaira fibers under ramification, and the sections that a
//! multisection induces on the pullback.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::kodaira::KodairaType;
use crate::linalg::column_dependency;
use crate::place::Place;
use crate::poly::Poly;
use crate::quadext::QuadExt;
use crate::ratfunc::{eval_poly_at, RatFunc};
use crate::surface::{classify, fiber_configuration, FiberConfig};
use crate::weierstrass::{Point, WeierstrassModel};

/// `t = phi(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseChangeMap {
    phi: RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ramification {
    pub upstairs: Place,
    pub downstairs: Place,
    pub index: u32,
}

impl BaseChangeMap {
    pub fn new(phi: RatFunc) -> Result<Self> {
        if phi.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(BaseChangeMap { phi })
    }

    pub fn identity() -> Self {
        BaseChangeMap { phi: RatFunc::var() }
    }

    pub fn phi(&self) -> &RatFunc {
        &self.phi
    }

    pub fn degree(&self) -> usize {
        self.phi.map_degree()
    }

    /// A local parameter of `v` pulled back along the map.
    fn pulled_parameter(&self, v: &Place) -> Result<RatFunc> {
        match v {
            Place::Finite(p) => Ok(eval_poly_at(p, &self.phi)),
            Place::Infinity => Ok(RatFunc::one() / self.phi.clone()),
            Place::RationalPrime(_) => Err(Error::BadPlace("not a place of the base line".into())),
        }
    }

    /// Places above `v` with their ramification indices.
    pub fn preimages(&self, v: &Place) -> Result<Vec<(Place, u32)>> {
        let f = self.pulled_parameter(v)?;
        let mut out = Vec::new();
        for (q, e) in poly_factor(f.num())?.factors {
            out.push((Place::Finite(q), e as u32));
        }
        let vinf = f.valuation(&Place::Infinity)?;
        if vinf > 0 {
            out.push((Place::Infinity, vinf as u32));
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(out)
    }

    /// The place below `w`.
    pub fn image(&self, w: &Place) -> Result<Place> {
        match w {
            Place::Infinity => Ok(match self.phi.eval_infinity() {
                Some(c) => Place::at(&c),
                None => Place::Infinity,
            }),
            Place::Finite(q) => {
                if self.phi.den().multiplicity(q) > 0 {
                    return Ok(Place::Infinity);
                }
                let inv = self.phi.den().inv_mod(q).ok_or(Error::BadPlace(q.to_string()))?;
                let beta = (self.phi.num() * &inv).rem(q);
                Ok(Place::Finite(minimal_polynomial(&beta, q)))
            }
            Place::RationalPrime(_) => Err(Error::BadPlace("not a place of the base line".into())),
        }
    }

    /// All ramified places, by index `e >= 2`.
    pub fn ramification(&self) -> Result<Vec<Ramification>> {
        let (n, d) = (self.phi.num(), self.phi.den());
        let wronskian = &(&n.derivative() * d) - &(n * &d.derivative());
        let mut candidates: Vec<Place> = Vec::new();
        for p in [&wronskian, d] {
            if p.is_constant() {
                continue;
            }
            for (q, _) in poly_factor(p)?.factors {
                let w = Place::Finite(q);
                if !candidates.contains(&w) {
                    candidates.push(w);
                }
            }
        }
        candidates.push(Place::Infinity);
        let mut out = Vec::new();
        for w in candidates {
            let v = self.image(&w)?;
            let e = self.pulled_parameter(&v)?.valuation(&w)?;
            if e >= 2 {
                out.push(Ramification { upstairs: w, downstairs: v, index: e as u32 });
            }
        }
        out.sort_by(|a, b| a.upstairs.canonical_cmp(&b.upstairs));
        Ok(out)
    }

    /// Riemann–Hurwitz for a map P^1 -> P^1, counting geometric points.
    pub fn satisfies_riemann_hurwitz(&self) -> Result<bool> {
        let total: usize = self
            .ramification()?
            .iter()
            .map(|r| (r.index as usize - 1) * r.upstairs.residue_degree())
            .sum();
        Ok(total == 2 * self.degree() - 2)
    }
}

/// Minimal polynomial over Q of the class of `beta` in `Q[s]/(q)`.
fn minimal_polynomial(beta: &Poly, q: &Poly) -> Poly {
    let n = q.degree().unwrap_or(0);
    let mut powers: Vec<Poly> = vec![Poly::one()];
    loop {
        let next = (powers.last().unwrap() * beta).rem(q);
        powers.push(next);
        let cols: Vec<Vec<_>> = powers.iter().map(|p| (0..n).map(|i| p.coeff(i)).collect()).collect();
        if let Some(v) = column_dependency(&cols) {
            return Poly::new(v).monic();
        }
    }
}

/// `(T, e) -> T'` for an unramified (`e = 1`) or quadratic (`e = 2`) base change.
pub fn transform_type(t: KodairaType, e: u32) -> Result<KodairaType> {
    use KodairaType::*;
    match e {
        1 => Ok(t),
        2 => Ok(match t {
            I(n) => I(2 * n),
            II => IV,
            III => IStar(0),
            IV => IVStar,
            IStar(0) => I(0),
            IStar(n) => I(2 * n),
            IVStar => IV,
            IIIStar => IStar(0),
            IIStar => IVStar,
        }),
        _ => Err(Error::UnsupportedIndex(e)),
    }
}

pub fn hurwitz_genus(degree: u32, base_genus: u32, indices: &[u32]) -> Result<u32> {
    let ram: i64 = indices.iter().map(|&e| e as i64 - 1).sum();
    let twice = degree as i64 * (2 * base_genus as i64 - 2) + ram + 2;
    if indices.iter().any(|&e| e == 0 || e > degree) || twice < 0 || twice % 2 != 0 {
        return Err(Error::NonIntegerGenus);
    }
    Ok((twice / 2) as u32)
}

pub fn pullback(model: &WeierstrassModel<RatFunc>, map: &BaseChangeMap) -> Result<WeierstrassModel<RatFunc>> {
    if model.is_singular() {
        return Err(Error::SingularSurface);
    }
    Ok(model.map(|a| a.compose(map.phi())))
}

/// Fibers of the pullback predicted from the downstairs configuration.
pub fn predict_configuration(config: &FiberConfig, map: &BaseChangeMap) -> Result<Vec<(Place, KodairaType)>> {
    let mut out = Vec::new();
    for d in config.entries() {
        for (w, e) in map.preimages(&d.place)? {
            let t = transform_type(d.kodaira, e)?;
            if t != KodairaType::I(0) {
                out.push((w, t));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    pub ramification: Vec<Ramification>,
    pub predicted: Vec<(Place, KodairaType)>,
    pub recomputed: Vec<(Place, KodairaType)>,
    pub pulled_back: WeierstrassModel<RatFunc>,
    pub pulled_config: FiberConfig,
}

impl BaseChangeReport {
    pub fn agrees(&self) -> bool {
        self.predicted == self.recomputed
    }
}

pub fn base_change(model: &WeierstrassModel<RatFunc>, map: &BaseChangeMap) -> Result<BaseChangeReport> {
    let config = fiber_configuration(model)?;
    let pulled_back = pullback(model, map)?;
    let pulled_config = fiber_configuration(&pulled_back)?;
    let recomputed = pulled_config
        .entries()
        .iter()
        .map(|d| (d.place.clone(), d.kodaira))
        .collect();
    Ok(BaseChangeReport {
        ramification: map.ramification()?,
        predicted: predict_configuration(&config, map)?,
        recomputed,
        pulled_back,
        pulled_config,
    })
}

/// A quadratic base change of a rational elliptic surface is K3 iff it is
/// not branched above a non-reduced fiber.
pub fn k3_criterion(config: &FiberConfig, map: &BaseChangeMap) -> Result<bool> {
    let info = classify(config)?;
    if info.chi != 1 {
        return Err(Error::WrongChi(info.chi));
    }
    if map.degree() != 2 {
        return Err(Error::BadInput("the K3 criterion needs a map of degree 2".into()));
    }
    for r in map.ramification()? {
        if let Some(d) = config.get(&r.downstairs) {
            if !d.kodaira.is_reduced() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A curve on the surface given by a parametrization over the base change
/// `t = phi(s)`, possibly after adjoining `w` with `w^2 = g(s)`.
#[derive(Clone, Debug)]
pub struct Multisection {
    pub map: BaseChangeMap,
    pub ext: Option<RatFunc>,
    pub x: QuadExt,
    pub y: QuadExt,
}

impl Multisection {
    pub fn parametric(x: RatFunc, y: RatFunc, map: BaseChangeMap) -> Self {
        Multisection { map, ext: None, x: QuadExt::base(x), y: QuadExt::base(y) }
    }

    /// Coordinates `x = x0 + x1 w`, `y = y0 + y1 w`.
    pub fn quadratic(x: (RatFunc, RatFunc), y: (RatFunc, RatFunc), g: RatFunc, map: BaseChangeMap) -> Self {
        let x = QuadExt::new(x.0, x.1, &g);
        let y = QuadExt::new(y.0, y.1, &g);
        Multisection { map, ext: Some(g), x, y }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NewSection {
    Rational(Point<RatFunc>),
    Quadratic { g: RatFunc, point: Point<QuadExt> },
}

/// The tautological section of the pullback along the multisection.
pub fn new_section(model: &WeierstrassModel<RatFunc>, ms: &Multisection) -> Result<NewSection> {
    let pulled = pullback(model, &ms.map)?;
    match &ms.ext {
        None => {
            let (Some(x), Some(y)) = (ms.x.in_base(), ms.y.in_base()) else {
                return Err(Error::NotOnSurface);
            };
            let p = Point::Affine(x.clone(), y.clone());
            if !pulled.contains(&p) {
                return Err(Error::NotOnSurface);
            }
            Ok(NewSection::Rational(p))
        }
        Some(g) => {
            let lifted = pulled.map(|a| QuadExt::new(a.clone(), RatFunc::zero(), g));
            let p = Point::Affine(ms.x.clone(), ms.y.clone());
            if !lifted.contains(&p) {
                return Err(Error::NotOnSurface);
            }
            Ok(NewSection::Quadratic { g: g.clone(), point: p })
        }
    }
}

/// An old section `sigma`, seen on the pullback as `sigma o phi`.
pub fn lift_section(p: &Point<RatFunc>, map: &BaseChangeMap) -> Point<RatFunc> {
    match p {
        Point::Zero => Point::Zero,
        Point::Affine(x, y) => Point::Affine(x.compose(map.phi()), y.compose(map.phi())),
    }
}

/// Euler number change along a quadratic map: `2 e - sum` of the local drops.
pub fn predicted_euler(config: &FiberConfig, map: &BaseChangeMap) -> Result<i64> {
    let mut e = 0i64;
    for d in config.entries() {
        for (w, idx) in map.preimages(&d.place)? {
            e += transform_type(d.kodaira, idx)?.euler() as i64 * w.residue_degree() as i64;
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::rational::rat;

    fn map(src: &str) -> BaseChangeMap {
        BaseChangeMap::new(parse_ratfunc(src, 's').unwrap()).unwrap()
    }

    fn ram(m: &BaseChangeMap) -> Vec<(Place, Place, u32)> {
        m.ramification()
            .unwrap()
            .into_iter()
            .map(|r| (r.upstairs, r.downstairs, r.index))
            .collect()
    }

    #[test]
    fn square_maps() {
        assert_eq!(
            ram(&map("s^2")),
            vec![(Place::at(&rat(0)), Place::at(&rat(0)), 2), (Place::Infinity, Place::Infinity, 2)]
        );
        assert_eq!(
            ram(&map("s^2 - 1")),
            vec![(Place::at(&rat(0)), Place::at(&rat(-1)), 2), (Place::Infinity, Place::Infinity, 2)]
        );
        let cube = map("s^3");
        assert_eq!(ram(&cube).iter().map(|r| r.2).collect::<Vec<_>>(), vec![3, 3]);
        assert!(cube.satisfies_riemann_hurwitz().unwrap());
        assert_eq!(BaseChangeMap::new(RatFunc::constant(rat(3))), Err(Error::ConstantMap));
    }

    #[test]
    fn images_of_higher_degree_places() {
        let m = map("s^2");
        let q = Place::Finite(Poly::from_ints(&[-2, 0, 1]));
        assert_eq!(m.image(&q).unwrap(), Place::at(&rat(2)));
        let m = map("(s^2+1)/s");
        assert!(m.satisfies_riemann_hurwitz().unwrap());
    }

    #[test]
    fn genus_formula() {
        assert_eq!(hurwitz_genus(2, 0, &[2, 2]), Ok(0));
        assert_eq!(hurwitz_genus(2, 0, &[2, 2, 2, 2]), Ok(1));
        assert_eq!(hurwitz_genus(2, 0, &[2; 6]), Ok(2));
        assert_eq!(hurwitz_genus(2, 0, &[2, 2, 2]), Err(Error::NonIntegerGenus));
    }

    #[test]
    fn type_rules() {
        assert_eq!(transform_type(KodairaType::IStar(3), 2), Ok(KodairaType::I(6)));
        assert_eq!(transform_type(KodairaType::I(2), 2), Ok(KodairaType::I(4)));
        assert_eq!(transform_type(KodairaType::II, 1), Ok(KodairaType::II));
        assert_eq!(transform_type(KodairaType::II, 3), Err(Error::UnsupportedIndex(3)));
    }

    #[test]
    fn sections_from_multisections() {
        let t = |s: &str| parse_ratfunc(s, 't').unwrap();
        let s = |x: &str| parse_ratfunc(x, 's').unwrap();
        let e = WeierstrassModel::new(t("0"), t("0"), t("0"), t("0"), t("t"));
        let ms = Multisection::parametric(s("1"), s("s"), map("s^2-1"));
        assert_eq!(
            new_section(&e, &ms),
            Ok(NewSection::Rational(Point::Affine(s("1"), s("s"))))
        );
        let bad = Multisection::parametric(s("1"), s("s+1"), map("s^2-1"));
        assert_eq!(new_section(&e, &bad), Err(Error::NotOnSurface));
        assert_eq!(lift_section(&Point::Zero, &ms.map), Point::Zero);
    }
}
