//! Closed points of the base line over Q, and rational primes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::factor::poly_factor;
use crate::poly::Poly;
use crate::rational::{fmt_rat, is_prime, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    /// A monic irreducible polynomial.
    Finite(Poly),
    Infinity,
    RationalPrime(BigInt),
}

impl Place {
    /// Checked constructor: `p` must be monic and irreducible over Q.
    pub fn finite(p: Poly) -> Result<Place> {
        if p.is_constant() || !p.is_monic() {
            return Err(Error::BadPlace(format!("{p} is not a monic nonconstant polynomial")));
        }
        let f = poly_factor(&p)?;
        if f.factors.len() != 1 || f.factors[0].1 != 1 {
            return Err(Error::BadPlace(format!("{p} is reducible")));
        }
        Ok(Place::Finite(p))
    }

    /// The point `t = a`.
    pub fn at(a: &Rat) -> Place {
        Place::Finite(Poly::linear(a))
    }

    pub fn prime(p: u64) -> Result<Place> {
        let b = BigInt::from(p);
        if !is_prime(&b) {
            return Err(Error::BadPrime(b));
        }
        Ok(Place::RationalPrime(b))
    }

    pub fn residue_degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            _ => 1,
        }
    }

    /// The rational point under a degree-one finite place.
    pub fn rational_point(&self) -> Option<Rat> {
        match self {
            Place::Finite(p) if p.degree() == Some(1) => Some(-p.coeff(0)),
            _ => None,
        }
    }

    pub fn render(&self, var: &str) -> String {
        match self {
            Place::Finite(p) => format!("({})", p.render(var)),
            Place::Infinity => "inf".to_string(),
            Place::RationalPrime(p) => format!("p={p}"),
        }
    }

    /// Finite places by (degree, coefficients), then infinity, then primes.
    pub fn canonical_cmp(&self, other: &Place) -> Ordering {
        fn rank(p: &Place) -> u8 {
            match p {
                Place::Finite(_) => 0,
                Place::Infinity => 1,
                Place::RationalPrime(_) => 2,
            }
        }
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.canonical_cmp(b),
            (Place::RationalPrime(a), Place::RationalPrime(b)) => a.cmp(b),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_point() {
            Some(a) => write!(f, "t={}", fmt_rat(&a)),
            None => f.write_str(&self.render("t")),
        }
    }
}
