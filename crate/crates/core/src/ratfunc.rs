//! Rational functions over Q in one variable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::place::Place;
use crate::poly::Poly;
use crate::rational::Rat;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Panics when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = if den.is_constant() {
            Poly::one()
        } else if let Some(k) = monomial_degree(&den) {
            // den = c t^k: the gcd is a power of t
            let z = num.coeffs().iter().take_while(|c| c.is_zero()).count();
            Poly::monomial(Rat::one(), k.min(z))
        } else {
            num.gcd(&den)
        };
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = d.lc();
        if !l.is_one() {
            let li = l.recip();
            n = n.scale(&li);
            d = d.scale(&li);
        }
        RatFunc { num: n, den: d }
    }

    pub fn poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::poly(Poly::constant(c))
    }

    /// The variable.
    pub fn var() -> Self {
        RatFunc::poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `max(deg num, deg den)`, the degree as a map of the projective line.
    pub fn map_degree(&self) -> usize {
        self.num.deg().max(self.den.deg()).max(0) as usize
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Value at infinity; `None` if infinity is a pole.
    pub fn eval_infinity(&self) -> Option<Rat> {
        match self.num.deg().cmp(&self.den.deg()) {
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Less => Some(Rat::zero()),
            std::cmp::Ordering::Equal => Some(self.num.lc() / self.den.lc()),
        }
    }

    /// Substitute `inner` for the variable.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        eval_poly_at(&self.num, inner) / eval_poly_at(&self.den, inner)
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    /// Order of vanishing at a place of P^1 over Q.
    pub fn valuation(&self, v: &Place) -> Result<i64> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput);
        }
        match v {
            Place::Finite(p) => Ok(self.num.multiplicity(p) as i64 - self.den.multiplicity(p) as i64),
            Place::Infinity => Ok(self.den.deg() - self.num.deg()),
            Place::RationalPrime(_) => Err(Error::BadPlace(
                "rational primes are not places of Q(t)".into(),
            )),
        }
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let wrap = |p: &Poly| {
            let s = p.render(var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

fn monomial_degree(p: &Poly) -> Option<usize> {
    let c = p.coeffs();
    let k = c.len().checked_sub(1)?;
    c[..k].iter().all(|x| x.is_zero()).then_some(k)
}

/// Horner evaluation of a polynomial at any field element.
pub fn eval_poly_at<F: Field>(p: &Poly, x: &F) -> F {
    let mut acc = F::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * x.clone() + F::from_rat(c);
    }
    acc
}

/// Evaluate a rational function at any field element; `None` on a pole.
pub fn eval_ratfunc_at<F: Field>(r: &RatFunc, x: &F) -> Option<F> {
    let d = eval_poly_at(r.den(), x);
    if d.is_zero() {
        None
    } else {
        Some(eval_poly_at(r.num(), x) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::poly(Poly::zero());
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Field for RatFunc {
    fn from_rat(r: &Rat) -> Self {
        RatFunc::constant(r.clone())
    }
}

impl RatFunc {
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::poly(Poly::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn canonical_form() {
        let r = RatFunc::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[2, 2]));
        assert_eq!(r.num(), &Poly::from_ints(&[-1, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn valuation_examples() {
        let x = t();
        let one = RatFunc::one();
        let r = &(&x * &x) / &(&x + &one);
        assert_eq!(r.valuation(&Place::Finite(Poly::x())).unwrap(), 2);
        let c = &(&(&x * &x) - &one) / &(&(&x * &x) + &one);
        assert_eq!(c.valuation(&Place::Infinity).unwrap(), 0);
        let cube = &(&(&x * &x) * &x) + &one;
        assert_eq!(cube.valuation(&Place::Infinity).unwrap(), -3);
        assert_eq!(RatFunc::zero().valuation(&Place::Infinity), Err(Error::ZeroInput));
    }

    #[test]
    fn compose_square() {
        let x = t();
        let one = RatFunc::one();
        let d = &(&x - &one) / &(&x + &one);
        let c = d.compose(&(&x * &x));
        assert_eq!(c.eval(&rat(2)), Some(crate::rational::ratio(3, 5)));
    }
}
