//! Discrete valuation data needed by Tate's algorithm: a valuation, a
//! uniformizer, the residue characteristic, and canonical residue lifts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::place::Place;
use crate::poly::Poly;
use crate::rational::{rat_valuation, Rat};
use crate::ratfunc::RatFunc;

pub trait LocalField {
    type Elem: Field;

    fn place(&self) -> Place;
    /// `None` for zero.
    fn valuation(&self, x: &Self::Elem) -> Option<i64>;
    fn uniformizer(&self) -> Self::Elem;
    /// 0 in characteristic zero. Large primes saturate; only 2 and 3 matter.
    fn residue_char(&self) -> u64;
    /// Canonical representative of the residue class of an integral `x`.
    fn canonical(&self, x: &Self::Elem) -> Self::Elem;

    /// `v(x) >= k`, counting zero as infinitely divisible.
    fn divisible(&self, x: &Self::Elem, k: i64) -> bool {
        self.valuation(x).is_none_or(|v| v >= k)
    }

    fn val_or(&self, x: &Self::Elem, cap: i64) -> i64 {
        self.valuation(x).unwrap_or(cap)
    }
}

/// A closed point of the affine line over Q, acting on Q(t).
#[derive(Clone, Debug)]
pub struct PolyPlace {
    p: Poly,
}

impl PolyPlace {
    pub fn new(p: Poly) -> Self {
        PolyPlace { p }
    }
}

impl LocalField for PolyPlace {
    type Elem = RatFunc;

    fn place(&self) -> Place {
        Place::Finite(self.p.clone())
    }

    fn valuation(&self, x: &RatFunc) -> Option<i64> {
        if x.num().is_zero() {
            return None;
        }
        Some(x.num().multiplicity(&self.p) as i64 - x.den().multiplicity(&self.p) as i64)
    }

    fn uniformizer(&self) -> RatFunc {
        RatFunc::poly(self.p.clone())
    }

    fn residue_char(&self) -> u64 {
        0
    }

    fn canonical(&self, x: &RatFunc) -> RatFunc {
        let inv = x
            .den()
            .inv_mod(&self.p)
            .expect("canonical lift of a non-integral element");
        RatFunc::poly((x.num() * &inv).rem(&self.p))
    }
}

/// The point at infinity of the line, uniformizer `1/t`.
#[derive(Clone, Debug)]
pub struct InfinityPlace;

impl LocalField for InfinityPlace {
    type Elem = RatFunc;

    fn place(&self) -> Place {
        Place::Infinity
    }

    fn valuation(&self, x: &RatFunc) -> Option<i64> {
        if x.num().is_zero() {
            return None;
        }
        Some(x.den().deg() - x.num().deg())
    }

    fn uniformizer(&self) -> RatFunc {
        RatFunc::new(Poly::one(), Poly::x())
    }

    fn residue_char(&self) -> u64 {
        0
    }

    fn canonical(&self, x: &RatFunc) -> RatFunc {
        if x.num().is_zero() || x.num().deg() < x.den().deg() {
            return RatFunc::zero();
        }
        assert_eq!(x.num().deg(), x.den().deg(), "canonical lift of a non-integral element");
        RatFunc::constant(x.num().lc() / x.den().lc())
    }
}

/// A rational prime acting on Q.
#[derive(Clone, Debug)]
pub struct PrimePlace {
    p: BigInt,
}

impl PrimePlace {
    pub fn new(p: BigInt) -> Self {
        PrimePlace { p }
    }
}

impl LocalField for PrimePlace {
    type Elem = Rat;

    fn place(&self) -> Place {
        Place::RationalPrime(self.p.clone())
    }

    fn valuation(&self, x: &Rat) -> Option<i64> {
        rat_valuation(x, &self.p)
    }

    fn uniformizer(&self) -> Rat {
        Rat::from_integer(self.p.clone())
    }

    fn residue_char(&self) -> u64 {
        self.p.to_u64().unwrap_or(u64::MAX)
    }

    fn canonical(&self, x: &Rat) -> Rat {
        let d = x.denom().mod_floor(&self.p);
        assert!(!d.is_zero(), "canonical lift of a non-integral element");
        let dinv = d.extended_gcd(&self.p).x;
        Rat::from_integer((x.numer() * dinv).mod_floor(&self.p))
    }
}

/// The local field attached to a place of Q(t).
pub fn function_field_local(place: &Place) -> Result<Box<dyn LocalField<Elem = RatFunc>>> {
    match place {
        Place::Finite(p) => Ok(Box::new(PolyPlace::new(p.clone()))),
        Place::Infinity => Ok(Box::new(InfinityPlace)),
        Place::RationalPrime(_) => Err(Error::BadPlace(
            "rational primes are not places of Q(t)".into(),
        )),
    }
}
