//! Tate's algorithm over a discrete valuation ring, generic in the local
//! field. Returns the Kodaira type of the special fiber together with the
//! coordinate change to a locally minimal integral model.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::kodaira::{ComponentGroup, KodairaType};
use crate::local::{function_field_local, LocalField, PrimePlace};
use crate::place::Place;
use crate::rational::Rat;
use crate::ratfunc::RatFunc;
use crate::weierstrass::{Transform, WeierstrassModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TateOptions {
    /// Reject residue characteristics 2 and 3 instead of running the
    /// special-case branches.
    pub allow_small_char: bool,
}

impl Default for TateOptions {
    fn default() -> Self {
        TateOptions { allow_small_char: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalData<F> {
    pub place: Place,
    pub kodaira: KodairaType,
    /// Valuation of the discriminant of the minimal model.
    pub v_disc: i64,
    pub components: u32,
    pub euler: u32,
    pub component_group: ComponentGroup,
    /// From the input model to `minimal_model`.
    pub transform: Transform<F>,
    pub minimal_model: WeierstrassModel<F>,
}

impl<F> LocalData<F> {
    /// Exponent of the conductor, by Ogg's formula.
    pub fn conductor_exponent(&self) -> i64 {
        self.v_disc - self.components as i64 + 1
    }
}

enum CubicRoots<F> {
    Distinct,
    Double(F),
    Triple(F),
}

struct Run<'a, L: LocalField + ?Sized> {
    local: &'a L,
    pi: L::Elem,
    ch: u64,
    model: WeierstrassModel<L::Elem>,
    transform: Transform<L::Elem>,
}

impl<'a, L: LocalField + ?Sized> Run<'a, L> {
    fn apply(&mut self, tr: Transform<L::Elem>) {
        self.model = self.model.transform(&tr);
        self.transform = self.transform.then(&tr);
    }

    fn div(&self, x: &L::Elem, k: i64) -> bool {
        self.local.divisible(x, k)
    }

    fn over(&self, x: &L::Elem, k: i64) -> L::Elem {
        x.clone() / self.pi.powi(k)
    }

    fn canon(&self, x: &L::Elem) -> L::Elem {
        self.local.canonical(x)
    }

    fn half(&self, x: L::Elem) -> L::Elem {
        x / L::Elem::from_int(2)
    }

    /// Root of `T^3 + b T^2 + c T + d` in the residue field, by multiplicity.
    fn cubic(&self, b: &L::Elem, c: &L::Elem, d: &L::Elem) -> CubicRoots<L::Elem> {
        let f = |n: i64| L::Elem::from_int(n);
        let disc = b.square() * c.square() - f(4) * c.pow(3) - f(4) * b.pow(3) * d.clone()
            - f(27) * d.square()
            + f(18) * b.clone() * c.clone() * d.clone();
        if !self.div(&disc, 1) {
            return CubicRoots::Distinct;
        }
        let h = b.square() - f(3) * c.clone();
        if self.div(&h, 1) {
            let r = if self.ch == 3 { -d.clone() } else { -b.clone() / f(3) };
            return CubicRoots::Triple(self.canon(&r));
        }
        let r = if self.ch == 2 {
            c.clone()
        } else {
            (f(9) * d.clone() - b.clone() * c.clone()) / (f(2) * h)
        };
        CubicRoots::Double(self.canon(&r))
    }

    /// Whether `Y^2 + alpha Y - beta` has distinct roots mod pi; otherwise the
    /// double root.
    fn quad_y(&self, alpha: &L::Elem, beta: &L::Elem) -> Option<L::Elem> {
        let disc = alpha.square() + L::Elem::from_int(4) * beta.clone();
        if !self.div(&disc, 1) {
            return None;
        }
        let r = if self.ch == 2 { beta.clone() } else { self.half(-alpha.clone()) };
        Some(self.canon(&r))
    }

    /// Same for `a X^2 + b X + c` with `a` a unit.
    fn quad_x(&self, a: &L::Elem, b: &L::Elem, c: &L::Elem) -> Option<L::Elem> {
        let disc = b.square() - L::Elem::from_int(4) * a.clone() * c.clone();
        if !self.div(&disc, 1) {
            return None;
        }
        let r = if self.ch == 2 {
            c.clone() / a.clone()
        } else {
            -b.clone() / (L::Elem::from_int(2) * a.clone())
        };
        Some(self.canon(&r))
    }

    fn singular_point(&self) -> (L::Elem, L::Elem) {
        let e = &self.model;
        if self.ch == 2 {
            if !self.div(&e.a1, 1) {
                let x0 = e.a3.clone() / e.a1.clone();
                let y0 = (x0.square() + e.a4.clone()) / e.a1.clone();
                return (self.canon(&x0), self.canon(&y0));
            }
            let x0 = self.canon(&e.a4);
            let y0 = x0.pow(3) + e.a2.clone() * x0.square() + e.a4.clone() * x0.clone() + e.a6.clone();
            return (x0, self.canon(&y0));
        }
        let f = |n: i64| L::Elem::from_int(n);
        let b = e.b2() / f(4);
        let c = e.b4() / f(2);
        let d = e.b6() / f(4);
        let x0 = match self.cubic(&b, &c, &d) {
            CubicRoots::Double(r) | CubicRoots::Triple(r) => r,
            // A nonsingular reduction cannot reach here; the caller checks
            // the translated coefficients anyway.
            CubicRoots::Distinct => L::Elem::zero(),
        };
        let y0 = self.half(-(e.a1.clone() * x0.clone() + e.a3.clone()));
        (x0, self.canon(&y0))
    }

    fn make_integral(&mut self) {
        let weights = [1i64, 2, 3, 4, 6];
        let mut k = 0i64;
        for (a, w) in self.model.coeffs().iter().zip(weights) {
            if let Some(v) = self.local.valuation(a) {
                if v < 0 {
                    k = k.max((-v + w - 1) / w);
                }
            }
        }
        if k > 0 {
            let u = self.pi.powi(-k);
            self.apply(Transform::scaling(u));
        }
    }

    fn classify(&mut self) -> Result<(KodairaType, i64)> {
        self.make_integral();
        loop {
            let disc = self.model.discriminant();
            let vd = self.local.valuation(&disc).ok_or(Error::SingularSurface)?;
            if vd == 0 {
                return Ok((KodairaType::I(0), 0));
            }
            // multiplicative reduction in characteristic 0: skip the
            // residue-field root finding, which is costly at high-degree places
            if self.ch == 0 && !self.div(&self.model.c4(), 1) {
                return Ok((KodairaType::I(vd as u32), vd));
            }
            let (x0, y0) = self.singular_point();
            self.apply(Transform::translation(x0, L::Elem::zero(), y0));
            let e = &self.model;
            if !(self.div(&e.a3, 1) && self.div(&e.a4, 1) && self.div(&e.a6, 1)) {
                return Err(Error::Consistency("singular point not moved to the origin".into()));
            }
            if !self.div(&e.b2(), 1) {
                return Ok((KodairaType::I(vd as u32), vd));
            }
            if !self.div(&e.a6, 2) {
                return Ok((KodairaType::II, vd));
            }
            if !self.div(&e.b8(), 3) {
                return Ok((KodairaType::III, vd));
            }
            if !self.div(&e.b6(), 3) {
                return Ok((KodairaType::IV, vd));
            }
            let (s, t) = if self.ch == 2 {
                let s = self.canon(&e.a2);
                let t = self.pi.clone() * self.canon(&self.over(&e.a6, 2));
                (s, t)
            } else {
                let s = self.canon(&self.half(-e.a1.clone()));
                let t = self.pi.clone() * self.canon(&self.half(-self.over(&e.a3, 1)));
                (s, t)
            };
            self.apply(Transform::translation(L::Elem::zero(), s, t));
            let e = &self.model;
            if !(self.div(&e.a1, 1)
                && self.div(&e.a2, 1)
                && self.div(&e.a3, 2)
                && self.div(&e.a4, 2)
                && self.div(&e.a6, 3))
            {
                return Err(Error::Consistency("additive reduction normal form failed".into()));
            }
            let b = self.over(&e.a2, 1);
            let c = self.over(&e.a4, 2);
            let d = self.over(&e.a6, 3);
            match self.cubic(&b, &c, &d) {
                CubicRoots::Distinct => return Ok((KodairaType::IStar(0), vd)),
                CubicRoots::Double(r) => {
                    let shift = r * self.pi.clone();
                    self.apply(Transform::translation(shift, L::Elem::zero(), L::Elem::zero()));
                    return self.istar_chain(vd).map(|n| (KodairaType::IStar(n), vd));
                }
                CubicRoots::Triple(r) => {
                    let shift = r * self.pi.clone();
                    self.apply(Transform::translation(shift, L::Elem::zero(), L::Elem::zero()));
                }
            }
            let e = &self.model;
            match self.quad_y(&self.over(&e.a3, 2), &self.over(&e.a6, 4)) {
                None => return Ok((KodairaType::IVStar, vd)),
                Some(r) => {
                    let shift = r * self.pi.square();
                    self.apply(Transform::translation(L::Elem::zero(), L::Elem::zero(), shift));
                }
            }
            let e = &self.model;
            if !self.div(&e.a4, 4) {
                return Ok((KodairaType::IIIStar, vd));
            }
            if !self.div(&e.a6, 6) {
                return Ok((KodairaType::IIStar, vd));
            }
            let u = self.pi.clone();
            self.apply(Transform::scaling(u));
        }
    }

    /// Subprocedure for `I_n^*`, entered once the cubic has a double root at 0.
    fn istar_chain(&mut self, vd: i64) -> Result<u32> {
        let mut n: i64 = 1;
        loop {
            if n > vd {
                return Err(Error::Consistency("I_n^* chain did not terminate".into()));
            }
            let e = &self.model;
            if n % 2 == 1 {
                let k = (n + 3) / 2;
                match self.quad_y(&self.over(&e.a3, k), &self.over(&e.a6, n + 3)) {
                    None => return Ok(n as u32),
                    Some(r) => {
                        let shift = r * self.pi.powi(k);
                        self.apply(Transform::translation(L::Elem::zero(), L::Elem::zero(), shift));
                    }
                }
            } else {
                let k = n / 2 + 1;
                let a = self.over(&e.a2, 1);
                let b = self.over(&e.a4, k + 1);
                let c = self.over(&e.a6, n + 3);
                match self.quad_x(&a, &b, &c) {
                    None => return Ok(n as u32),
                    Some(r) => {
                        let shift = r * self.pi.powi(k);
                        self.apply(Transform::translation(shift, L::Elem::zero(), L::Elem::zero()));
                    }
                }
            }
            n += 1;
        }
    }
}

/// Tate's algorithm at the place described by `local`.
pub fn tate<L: LocalField + ?Sized>(
    local: &L,
    model: &WeierstrassModel<L::Elem>,
    opts: TateOptions,
) -> Result<LocalData<L::Elem>> {
    let ch = local.residue_char();
    if !opts.allow_small_char && (ch == 2 || ch == 3) {
        return Err(Error::ResidueCharacteristic(ch));
    }
    if model.discriminant().is_zero() {
        return Err(Error::SingularSurface);
    }
    let mut run = Run {
        local,
        pi: local.uniformizer(),
        ch,
        model: model.clone(),
        transform: Transform::identity(),
    };
    let (kodaira, v_disc) = run.classify()?;
    Ok(LocalData {
        place: local.place(),
        kodaira,
        v_disc,
        components: kodaira.components(),
        euler: kodaira.euler(),
        component_group: kodaira.component_group(),
        transform: run.transform,
        minimal_model: run.model,
    })
}

/// Local data of a surface over Q(t) at a place of the base.
pub fn local_data(model: &WeierstrassModel<RatFunc>, place: &Place) -> Result<LocalData<RatFunc>> {
    let local = function_field_local(place)?;
    tate(local.as_ref(), model, TateOptions::default())
}

/// A `v`-integral, `v`-minimal model and the transform that produces it.
pub fn minimalize_at(
    model: &WeierstrassModel<RatFunc>,
    place: &Place,
) -> Result<(WeierstrassModel<RatFunc>, Transform<RatFunc>)> {
    let d = local_data(model, place)?;
    Ok((d.minimal_model, d.transform))
}

/// Local data of a curve over Q at a rational prime.
pub fn local_data_at_prime(
    model: &WeierstrassModel<Rat>,
    p: u64,
    opts: TateOptions,
) -> Result<LocalData<Rat>> {
    Place::prime(p)?;
    tate(&PrimePlace::new(BigInt::from(p)), model, opts)
}
