//! Weierstrass models over any coefficient field, their invariants,
//! admissible coordinate changes, and the chord-tangent group law.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassModel<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Invariants<F> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub disc: F,
    pub j: F,
}

/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, PartialEq, Debug)]
pub struct Transform<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Transform<F> {
    pub fn identity() -> Self {
        Transform { u: F::one(), r: F::zero(), s: F::zero(), t: F::zero() }
    }

    pub fn scaling(u: F) -> Self {
        Transform { u, r: F::zero(), s: F::zero(), t: F::zero() }
    }

    pub fn translation(r: F, s: F, t: F) -> Self {
        Transform { u: F::one(), r, s, t }
    }

    pub fn is_identity(&self) -> bool {
        self.u == F::one() && self.r.is_zero() && self.s.is_zero() && self.t.is_zero()
    }

    /// `self` followed by `next` (coordinates of `next` are the newest).
    pub fn then(&self, next: &Transform<F>) -> Transform<F> {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = u1.clone() * u1.clone();
        Transform {
            u: u1.clone() * u2.clone(),
            r: u1sq.clone() * r2.clone() + r1.clone(),
            s: u1.clone() * s2.clone() + s1.clone(),
            t: u1sq.clone() * u1.clone() * t2.clone() + s1.clone() * u1sq * r2.clone() + t1.clone(),
        }
    }

    /// Maps a point in old coordinates to new coordinates.
    pub fn apply(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => {
                let u2 = self.u.square();
                let xn = (x.clone() - self.r.clone()) / u2.clone();
                let yn = (y.clone() - self.s.clone() * u2 * xn.clone() - self.t.clone())
                    / self.u.pow(3);
                Point::Affine(xn, yn)
            }
        }
    }

    /// Maps a point in new coordinates back to old coordinates.
    pub fn unapply(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => {
                let u2 = self.u.square();
                Point::Affine(
                    u2.clone() * x.clone() + self.r.clone(),
                    self.u.pow(3) * y.clone() + self.s.clone() * u2 * x.clone() + self.t.clone(),
                )
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Point<F> {
    Zero,
    Affine(F, F),
}

impl<F: Field> WeierstrassModel<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    /// `y^2 = x^3 + a4 x + a6`
    pub fn short(a4: F, a6: F) -> Self {
        WeierstrassModel::new(F::zero(), F::zero(), F::zero(), a4, a6)
    }

    pub fn coeffs(&self) -> [&F; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassModel<G> {
        WeierstrassModel::new(f(&self.a1), f(&self.a2), f(&self.a3), f(&self.a4), f(&self.a6))
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<WeierstrassModel<G>> {
        Some(WeierstrassModel::new(f(&self.a1)?, f(&self.a2)?, f(&self.a3)?, f(&self.a4)?, f(&self.a6)?))
    }

    pub fn b2(&self) -> F {
        self.a1.square() + F::from_int(4) * self.a2.clone()
    }

    pub fn b4(&self) -> F {
        F::from_int(2) * self.a4.clone() + self.a1.clone() * self.a3.clone()
    }

    pub fn b6(&self) -> F {
        self.a3.square() + F::from_int(4) * self.a6.clone()
    }

    pub fn b8(&self) -> F {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1.square() * a6.clone() + F::from_int(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.square()
            - a4.square()
    }

    pub fn c4(&self) -> F {
        self.b2().square() - F::from_int(24) * self.b4()
    }

    pub fn c6(&self) -> F {
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        -b2.pow(3) + F::from_int(36) * b2 * b4 - F::from_int(216) * b6
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -b2.square() * b8 - F::from_int(8) * b4.pow(3) - F::from_int(27) * b6.square()
            + F::from_int(9) * b2 * b4 * b6
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn invariants(&self) -> Result<Invariants<F>> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(Error::SingularSurface);
        }
        let c4 = self.c4();
        Ok(Invariants {
            b2: self.b2(),
            b4: self.b4(),
            b6: self.b6(),
            b8: self.b8(),
            j: c4.pow(3) / disc.clone(),
            c4,
            c6: self.c6(),
            disc,
        })
    }

    /// Coefficients after the substitution described by `tr`.
    pub fn transform(&self, tr: &Transform<F>) -> Self {
        let (u, r, s, t) = (&tr.u, &tr.r, &tr.s, &tr.t);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = F::from_int(2);
        let three = F::from_int(3);
        let n1 = a1.clone() + two.clone() * s.clone();
        let n2 = a2.clone() - s.clone() * a1.clone() + three.clone() * r.clone() - s.square();
        let n3 = a3.clone() + r.clone() * a1.clone() + two.clone() * t.clone();
        let n4 = a4.clone() - s.clone() * a3.clone() + two.clone() * r.clone() * a2.clone()
            - (t.clone() + r.clone() * s.clone()) * a1.clone()
            + three * r.square()
            - two * s.clone() * t.clone();
        let n6 = a6.clone() + r.clone() * a4.clone() + r.square() * a2.clone() + r.pow(3)
            - t.clone() * a3.clone()
            - t.square()
            - r.clone() * t.clone() * a1.clone();
        WeierstrassModel::new(
            n1 / u.clone(),
            n2 / u.pow(2),
            n3 / u.pow(3),
            n4 / u.pow(4),
            n6 / u.pow(6),
        )
    }

    /// `y^2 + a1 x y + a3 y - (x^3 + a2 x^2 + a4 x + a6)`
    pub fn equation_at(&self, x: &F, y: &F) -> F {
        y.square() + self.a1.clone() * x.clone() * y.clone() + self.a3.clone() * y.clone()
            - (x.pow(3) + self.a2.clone() * x.square() + self.a4.clone() * x.clone() + self.a6.clone())
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Zero => true,
            Point::Affine(x, y) => self.equation_at(x, y).is_zero(),
        }
    }

    pub fn negate(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Zero => Point::Zero,
            Point::Affine(x, y) => Point::Affine(
                x.clone(),
                -y.clone() - self.a1.clone() * x.clone() - self.a3.clone(),
            ),
        }
    }

    /// Chord-tangent addition. Inputs are assumed to lie on the curve.
    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Zero, _) => return q.clone(),
            (_, Point::Zero) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.clone() + y2.clone() + a1.clone() * x2.clone() + a3.clone();
            if denom.is_zero() {
                return Point::Zero;
            }
            let d = F::from_int(2) * y1.clone() + a1.clone() * x1.clone() + a3.clone();
            let lambda = (F::from_int(3) * x1.square() + F::from_int(2) * a2.clone() * x1.clone()
                + a4.clone()
                - a1.clone() * y1.clone())
                / d.clone();
            let nu = (-x1.pow(3) + a4.clone() * x1.clone() + F::from_int(2) * a6.clone()
                - a3.clone() * y1.clone())
                / d;
            (lambda, nu)
        } else {
            let dx = x2.clone() - x1.clone();
            let lambda = (y2.clone() - y1.clone()) / dx.clone();
            let nu = (y1.clone() * x2.clone() - y2.clone() * x1.clone()) / dx;
            (lambda, nu)
        };
        let x3 = lambda.square() + a1.clone() * lambda.clone() - a2.clone() - x1.clone() - x2.clone();
        let y3 = -(lambda + a1.clone()) * x3.clone() - nu - a3.clone();
        Point::Affine(x3, y3)
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.negate(q))
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    /// `n * P` by double-and-add; negative `n` allowed.
    pub fn mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let mut base = if n < 0 { self.negate(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Zero;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Smallest `n <= bound` with `n P = O`.
    pub fn order_up_to(&self, p: &Point<F>, bound: u32) -> Option<u32> {
        let mut q = p.clone();
        for n in 1..=bound {
            if q == Point::Zero {
                return Some(n);
            }
            q = self.add(&q, p);
        }
        None
    }

    /// Model with `a1 = a3 = 0` (characteristic not 2) and the transform
    /// that produces it.
    pub fn complete_square(&self) -> (Self, Transform<F>) {
        let half = F::one() / F::from_int(2);
        let tr = Transform::translation(
            F::zero(),
            -self.a1.clone() * half.clone(),
            -self.a3.clone() * half,
        );
        (self.transform(&tr), tr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio, Rat};

    fn m(c: [i64; 5]) -> WeierstrassModel<Rat> {
        WeierstrassModel::new(rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3]), rat(c[4]))
    }

    #[test]
    fn short_form_identities() {
        let e = m([0, 0, 0, 3, 5]);
        let inv = e.invariants().unwrap();
        assert_eq!(inv.c4, rat(-48 * 3));
        assert_eq!(inv.c6, rat(-864 * 5));
        assert_eq!(inv.disc, rat(-16 * (4 * 27 + 27 * 25)));
    }

    #[test]
    fn general_identities() {
        let e = m([0, -1, 1, -10, -20]);
        let inv = e.invariants().unwrap();
        assert_eq!(inv.c4.pow(3) - inv.c6.square(), rat(1728) * inv.disc.clone());
        assert_eq!(rat(4) * inv.b8, inv.b2 * inv.b6 - inv.b4.square());
        assert_eq!(inv.disc, rat(-161051));
    }

    #[test]
    fn transforms_compose_and_move_points() {
        let e = m([1, 0, 1, 4, -6]);
        let p = Point::Affine(rat(2), rat(-5));
        assert!(e.contains(&p));
        let t1 = Transform { u: rat(2), r: rat(1), s: rat(-1), t: ratio(1, 2) };
        let t2 = Transform { u: ratio(1, 3), r: rat(5), s: rat(2), t: rat(-7) };
        let direct = e.transform(&t1).transform(&t2);
        assert_eq!(e.transform(&t1.then(&t2)), direct);
        let q = t1.then(&t2).apply(&p);
        assert!(direct.contains(&q));
        assert_eq!(t1.then(&t2).unapply(&q), p);
    }

    #[test]
    fn group_law_small_orders() {
        // (2,3) on y^2 = x^3 + 1 has order 6
        let e = m([0, 0, 0, 0, 1]);
        let p = Point::Affine(rat(2), rat(3));
        assert_eq!(e.order_up_to(&p, 12), Some(6));
        assert_eq!(e.mul(6, &p), Point::Zero);
        assert_eq!(e.add(&p, &e.negate(&p)), Point::Zero);
        // 2*(12,36) = (25/4, -35/8) on y^2 = x^3 - 36x
        let c = m([0, 0, 0, -36, 0]);
        let g = Point::Affine(rat(12), rat(36));
        assert_eq!(c.double(&g), Point::Affine(ratio(25, 4), ratio(-35, 8)));
    }
}
