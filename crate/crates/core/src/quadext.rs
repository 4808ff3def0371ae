//! Quadratic extensions `K(w)`, `w^2 = g`, of K = Q(s).
//!
//! Elements carry their `g`; constants built through `Field::from_rat` have
//! no `g` yet and adopt the one of whatever they are combined with.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::field::Field;
use crate::rational::Rat;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug)]
pub struct QuadExt {
    pub a: RatFunc,
    pub b: RatFunc,
    g: Option<Arc<RatFunc>>,
}

impl QuadExt {
    pub fn new(a: RatFunc, b: RatFunc, g: &RatFunc) -> Self {
        QuadExt { a, b, g: Some(Arc::new(g.clone())) }
    }

    pub fn base(a: RatFunc) -> Self {
        QuadExt { a, b: RatFunc::zero(), g: None }
    }

    /// The generator `w` itself.
    pub fn gen(g: &RatFunc) -> Self {
        QuadExt::new(RatFunc::zero(), RatFunc::one(), g)
    }

    pub fn g(&self) -> Option<&RatFunc> {
        self.g.as_deref()
    }

    pub fn in_base(&self) -> Option<&RatFunc> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Image under `w -> -w`.
    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone(), g: self.g.clone() }
    }

    pub fn norm(&self) -> RatFunc {
        let g = self.g.as_deref().cloned().unwrap_or_else(RatFunc::zero);
        self.a.clone() * self.a.clone() - self.b.clone() * self.b.clone() * g
    }

    fn join(x: &Option<Arc<RatFunc>>, y: &Option<Arc<RatFunc>>) -> Option<Arc<RatFunc>> {
        match (x, y) {
            (Some(a), Some(b)) => {
                assert!(a == b, "mixing elements of different quadratic extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, o: QuadExt) -> QuadExt {
        let g = QuadExt::join(&self.g, &o.g);
        QuadExt { a: self.a + o.a, b: self.b + o.b, g }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, o: QuadExt) -> QuadExt {
        let g = QuadExt::join(&self.g, &o.g);
        QuadExt { a: self.a - o.a, b: self.b - o.b, g }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, g: self.g }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, o: QuadExt) -> QuadExt {
        let g = QuadExt::join(&self.g, &o.g);
        let bb = self.b.clone() * o.b.clone();
        let a = if bb.is_zero() {
            self.a.clone() * o.a.clone()
        } else {
            let gv = g.as_deref().expect("w used without its extension").clone();
            self.a.clone() * o.a.clone() + bb * gv
        };
        let b = self.a * o.b + self.b * o.a;
        QuadExt { a, b, g }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, o: QuadExt) -> QuadExt {
        let g = QuadExt::join(&self.g, &o.g);
        let o = QuadExt { g: g.clone(), ..o };
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in a quadratic extension");
        let num = QuadExt { g: g.clone(), ..self } * o.conjugate();
        QuadExt { a: num.a / n.clone(), b: num.b / n, g }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::base(RatFunc::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::base(RatFunc::one())
    }
}

impl Field for QuadExt {
    fn from_rat(r: &Rat) -> Self {
        QuadExt::base(RatFunc::constant(r.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;

    #[test]
    fn arithmetic() {
        let g = parse_ratfunc("s^3 - s", 's').unwrap();
        let w = QuadExt::gen(&g);
        assert_eq!(w.clone() * w.clone(), QuadExt::base(g.clone()));
        let x = QuadExt::new(parse_ratfunc("s+1", 's').unwrap(), parse_ratfunc("2", 's').unwrap(), &g);
        let y = QuadExt::new(parse_ratfunc("s", 's').unwrap(), parse_ratfunc("1/s", 's').unwrap(), &g);
        let q = x.clone() / y.clone();
        assert_eq!(q * y, x);
        assert_eq!(x.clone() * x.conjugate(), QuadExt::base(x.norm()));
    }
}
