//! Sections defined over a quadratic extension `K' = K(w)`, `w^2 = g`.
//!
//! Over Q, `E(K') (x) Q` splits into the part fixed by `w -> -w`, which is
//! `E(K) (x) Q`, and the anti-invariant part, which is the quadratic twist
//! `E^g(K) (x) Q`. Ranks over `K'` are computed on the two parts separately.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::field::Field;
use crate::mordell_weil::{gram_rank, is_torsion, Section};
use crate::place::Place;
use crate::quadext::QuadExt;
use crate::rankjump::{mazur_nontorsion, CurvePoint, MazurCertificate};
use crate::rational::Rat;
use crate::ratfunc::RatFunc;
use crate::surface::{fiber_configuration, FiberConfig};
use crate::weierstrass::{Point, Transform, WeierstrassModel};

/// `y^2 = x^3 + g a2 x^2 + g^2 a4 x + g^3 a6` for a model with `a1 = a3 = 0`.
pub fn quadratic_twist(model: &WeierstrassModel<RatFunc>, g: &RatFunc) -> Result<WeierstrassModel<RatFunc>> {
    if !(model.a1.is_zero() && model.a3.is_zero()) {
        return Err(Error::BadInput("twist needs a1 = a3 = 0".into()));
    }
    Ok(WeierstrassModel::new(
        RatFunc::zero(),
        g.clone() * model.a2.clone(),
        RatFunc::zero(),
        g.square() * model.a4.clone(),
        g.pow(3) * model.a6.clone(),
    ))
}

fn conjugate(p: &Point<QuadExt>) -> Point<QuadExt> {
    match p {
        Point::Zero => Point::Zero,
        Point::Affine(x, y) => Point::Affine(x.conjugate(), y.conjugate()),
    }
}

fn lift(model: &WeierstrassModel<RatFunc>, g: &RatFunc) -> WeierstrassModel<QuadExt> {
    model.map(|a| QuadExt::new(a.clone(), RatFunc::zero(), g))
}

/// `(P + P^sigma, P - P^sigma)`, the first as a point of `E(K)`, the second
/// transported to the twist `E^g(K)`. The model must have `a1 = a3 = 0`.
pub fn decompose(
    model: &WeierstrassModel<RatFunc>,
    g: &RatFunc,
    p: &Point<QuadExt>,
) -> Result<(Section, Section)> {
    let big = lift(model, g);
    if !big.contains(p) {
        return Err(Error::NotOnSurface);
    }
    let inconsistent = || Error::Consistency("trace or anti-trace left its eigenspace".into());
    let trace = match big.add(p, &conjugate(p)) {
        Point::Zero => Point::Zero,
        Point::Affine(x, y) => Point::Affine(
            x.in_base().ok_or_else(inconsistent)?.clone(),
            y.in_base().ok_or_else(inconsistent)?.clone(),
        ),
    };
    let anti = match big.sub(p, &conjugate(p)) {
        Point::Zero => Point::Zero,
        Point::Affine(x, y) => {
            if !x.b.is_zero() || !y.a.is_zero() {
                return Err(inconsistent());
            }
            Point::Affine(g.clone() * x.a, g.square() * y.b)
        }
    };
    Ok((trace, anti))
}

/// A model over Q isomorphic to `model` over K, with the transform from
/// `model`, when the curve is constant.
pub fn constant_model(model: &WeierstrassModel<RatFunc>) -> Result<Option<(WeierstrassModel<Rat>, Transform<RatFunc>)>> {
    let (e, mut tr) = model.complete_square();
    let third = RatFunc::from_int(3);
    let shift = Transform::translation(-e.a2.clone() / third, RatFunc::zero(), RatFunc::zero());
    let e = e.transform(&shift);
    tr = tr.then(&shift);
    let (a, b) = (e.a4.clone(), e.a6.clone());
    let mut polys = Vec::new();
    for f in [&a, &b] {
        for p in [f.num(), f.den()] {
            if !p.is_constant() {
                for (q, _) in poly_factor(p)?.factors {
                    if !polys.contains(&q) {
                        polys.push(q);
                    }
                }
            }
        }
    }
    let mut lambda = RatFunc::one();
    for q in polys {
        let place = Place::Finite(q.clone());
        let mut k: Option<i64> = None;
        for (f, w) in [(&a, 4i64), (&b, 6i64)] {
            if !f.is_zero() {
                let v = f.valuation(&place)?.div_euclid(w);
                k = Some(k.map_or(v, |k0| k0.min(v)));
            }
        }
        if let Some(k) = k {
            lambda = lambda * RatFunc::poly(q).powi(k);
        }
    }
    let scale = Transform::scaling(lambda);
    let e = e.transform(&scale);
    tr = tr.then(&scale);
    match e.try_map(|c| c.as_constant()) {
        Some(c) => Ok(Some((c, tr))),
        None => Ok(None),
    }
}

/// How the anti-invariant part of a new section was judged.
#[derive(Clone, Debug, PartialEq)]
pub enum TwistCertificate {
    Zero,
    /// The twist is a constant curve over Q and the part is a rational point.
    Constant { curve: WeierstrassModel<Rat>, point: CurvePoint, certificate: MazurCertificate },
    /// Shioda height on the (non-constant) twist.
    Height(Rat),
}

impl TwistCertificate {
    pub fn non_torsion(&self) -> bool {
        match self {
            TwistCertificate::Zero => false,
            TwistCertificate::Constant { certificate, .. } => certificate.non_torsion,
            TwistCertificate::Height(h) => !h.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionRank {
    pub old_rank: usize,
    pub new_rank: usize,
    pub twist: TwistCertificate,
}

impl ExtensionRank {
    pub fn independent(&self) -> bool {
        self.new_rank > self.old_rank
    }
}

fn judge_twist(twist: &WeierstrassModel<RatFunc>, anti: &Section) -> Result<TwistCertificate> {
    if *anti == Point::Zero {
        return Ok(TwistCertificate::Zero);
    }
    let config: FiberConfig = fiber_configuration(twist)?;
    if config.is_empty() {
        let (curve, tr) = constant_model(twist)?
            .ok_or_else(|| Error::Consistency("twist has no bad fibers but is not constant".into()))?;
        let Point::Affine(x, y) = tr.apply(anti) else {
            return Ok(TwistCertificate::Zero);
        };
        let (Some(x), Some(y)) = (x.as_constant(), y.as_constant()) else {
            return Err(Error::Consistency("a constant curve has a non-constant section".into()));
        };
        let point = Point::Affine(x, y);
        let certificate = mazur_nontorsion(&curve, &point)?;
        return Ok(TwistCertificate::Constant { curve, point, certificate });
    }
    if is_torsion(twist, &config, anti)? {
        Ok(TwistCertificate::Height(Rat::zero()))
    } else {
        Ok(TwistCertificate::Height(crate::mordell_weil::height(twist, &config, anti)?))
    }
}

/// Rank of `old` together with a section over `K(sqrt g)`.
pub fn rank_over_extension(
    model: &WeierstrassModel<RatFunc>,
    config: &FiberConfig,
    old: &[Section],
    g: &RatFunc,
    new: &Point<QuadExt>,
) -> Result<ExtensionRank> {
    let old_rank = gram_rank(model, config, old)?.rank;
    let (trace, anti) = decompose(model, g, new)?;
    let twist = judge_twist(&quadratic_twist(model, g)?, &anti)?;
    let new_rank = if twist.non_torsion() {
        old_rank + 1
    } else {
        let mut all = old.to_vec();
        all.push(trace);
        gram_rank(model, config, &all)?.rank
    };
    Ok(ExtensionRank { old_rank, new_rank, twist })
}

