//! Global bookkeeping for a fibration over P^1: the degenerate fibers at
//! every place, the Euler number, and Shioda–Tate bounds.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::kodaira::KodairaType;
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::tate::{local_data, LocalData};
use crate::weierstrass::WeierstrassModel;

#[derive(Clone, Debug, PartialEq)]
pub struct FiberConfig {
    entries: Vec<LocalData<RatFunc>>,
    disc: RatFunc,
}

impl FiberConfig {
    pub fn entries(&self) -> &[LocalData<RatFunc>] {
        &self.entries
    }

    pub fn get(&self, place: &Place) -> Option<&LocalData<RatFunc>> {
        self.entries.iter().find(|d| &d.place == place)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether this configuration was computed from `model`.
    pub fn matches(&self, model: &WeierstrassModel<RatFunc>) -> bool {
        model.discriminant() == self.disc
    }

    pub fn check_model(&self, model: &WeierstrassModel<RatFunc>) -> Result<()> {
        if self.matches(model) {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }

    /// Geometric fiber types with multiplicity: a place of degree d counts d times.
    pub fn geometric_multiset(&self) -> BTreeMap<KodairaType, usize> {
        let mut out = BTreeMap::new();
        for d in &self.entries {
            *out.entry(d.kodaira).or_insert(0) += d.place.residue_degree();
        }
        out
    }

    /// Sorted list of geometric fiber types.
    pub fn geometric_types(&self) -> Vec<KodairaType> {
        self.geometric_multiset()
            .into_iter()
            .flat_map(|(k, n)| std::iter::repeat_n(k, n))
            .collect()
    }
}

/// Places where some fiber can degenerate: zeros of the discriminant, poles
/// of the coefficients, and infinity.
fn candidate_places(model: &WeierstrassModel<RatFunc>, disc: &RatFunc) -> Result<Vec<Place>> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut add = |p: &Poly| -> Result<()> {
        if p.is_constant() {
            return Ok(());
        }
        for (f, _) in poly_factor(p)?.factors {
            if !polys.contains(&f) {
                polys.push(f);
            }
        }
        Ok(())
    };
    add(disc.num())?;
    add(disc.den())?;
    for a in model.coeffs() {
        add(a.den())?;
    }
    let mut places: Vec<Place> = polys.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// Kodaira fibers of the surface at every place of P^1 over Q.
pub fn fiber_configuration(model: &WeierstrassModel<RatFunc>) -> Result<FiberConfig> {
    let disc = model.discriminant();
    if disc.num().is_zero() {
        return Err(Error::SingularSurface);
    }
    let mut entries = Vec::new();
    for place in candidate_places(model, &disc)? {
        let d = local_data(model, &place)?;
        if d.kodaira != KodairaType::I(0) {
            entries.push(d);
        }
    }
    entries.sort_by(|a, b| a.place.canonical_cmp(&b.place));
    Ok(FiberConfig { entries, disc })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceClass {
    Rational,
    K3,
    HonestlyElliptic(i64),
}

impl SurfaceClass {
    pub fn h11(&self) -> Option<i64> {
        match self {
            SurfaceClass::Rational => Some(10),
            SurfaceClass::K3 => Some(20),
            SurfaceClass::HonestlyElliptic(_) => None,
        }
    }
}

impl std::fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceClass::Rational => write!(f, "Rational"),
            SurfaceClass::K3 => write!(f, "K3"),
            SurfaceClass::HonestlyElliptic(chi) => write!(f, "Honestly elliptic (chi = {chi})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInfo {
    pub euler: i64,
    pub chi: i64,
    pub class: SurfaceClass,
    pub trivial_lattice_rank: i64,
    /// Shioda–Tate bound on the geometric Mordell–Weil rank; `None` when the
    /// Picard bound `h^{1,1}` is not tabulated for the class.
    pub mw_rank_geometric_upper: Option<i64>,
    pub ns_rank_lower_over_k: i64,
}

pub fn classify(config: &FiberConfig) -> Result<SurfaceInfo> {
    let mut euler = 0i64;
    let mut trivial = 2i64;
    let mut by_type: BTreeMap<KodairaType, i64> = BTreeMap::new();
    for d in config.entries() {
        let w = d.place.residue_degree() as i64;
        euler += w * d.euler as i64;
        trivial += w * (d.components as i64 - 1);
        *by_type.entry(d.kodaira).or_insert(0) += 1;
    }
    if euler == 0 {
        return Err(Error::NotElliptic);
    }
    if euler % 12 != 0 {
        return Err(Error::InconsistentConfig(euler));
    }
    let chi = euler / 12;
    let class = match chi {
        1 => SurfaceClass::Rational,
        2 => SurfaceClass::K3,
        c => SurfaceClass::HonestlyElliptic(c),
    };
    // Fibers of one type may be Galois conjugate, so a whole group of them is
    // only guaranteed its symmetry orbits of components.
    let ns_lower = 2 + by_type.keys().map(|k| k.symmetric_orbits() as i64).sum::<i64>();
    Ok(SurfaceInfo {
        euler,
        chi,
        class,
        trivial_lattice_rank: trivial,
        mw_rank_geometric_upper: class.h11().map(|h| (h - trivial).max(0)),
        ns_rank_lower_over_k: ns_lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::rational::rat;

    fn model(a2: &str, a4: &str, a6: &str) -> WeierstrassModel<RatFunc> {
        let p = |s: &str| parse_ratfunc(s, 't').unwrap();
        WeierstrassModel::new(p("0"), p(a2), p("0"), p(a4), p(a6))
    }

    #[test]
    fn rational_example() {
        let e = model("2*(t^2+1)", "(t-1)^2*(t+1)^2", "0");
        let c = fiber_configuration(&e).unwrap();
        let kind = |p: Place| c.get(&p).map(|d| d.kodaira);
        assert_eq!(kind(Place::at(&rat(0))), Some(KodairaType::I(2)));
        assert_eq!(kind(Place::Infinity), Some(KodairaType::I(2)));
        assert_eq!(kind(Place::at(&rat(1))), Some(KodairaType::I(4)));
        assert_eq!(kind(Place::at(&rat(-1))), Some(KodairaType::I(4)));
        assert_eq!(c.entries().len(), 4);
        let info = classify(&c).unwrap();
        assert_eq!(info.euler, 12);
        assert_eq!(info.class, SurfaceClass::Rational);
        assert_eq!(info.ns_rank_lower_over_k, 5);
        assert_eq!(info.trivial_lattice_rank, 10);
    }

    #[test]
    fn constant_curve_is_not_elliptic() {
        let c = fiber_configuration(&model("0", "-1", "0")).unwrap();
        assert!(c.is_empty());
        assert_eq!(classify(&c), Err(Error::NotElliptic));
    }

    #[test]
    fn singular_surface() {
        assert_eq!(fiber_configuration(&model("0", "0", "0")), Err(Error::SingularSurface));
    }
}
