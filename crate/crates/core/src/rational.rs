//! Rational numbers and small integer helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Canonical arbitrary-precision rational (reduced, positive denominator).
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime(n: &BigInt) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => {
            // only small primes are ever used as places; fall back to trial division
            if n.is_negative() || n.is_even() {
                return false;
            }
            let mut d = BigInt::from(3);
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    return false;
                }
                d += 2;
            }
            true
        }
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime_u64(p)).collect()
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn rat_valuation(r: &Rat, p: &BigInt) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
}

/// Prime factors of |n| by trial division (n small enough in practice).
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    Some(Rat::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

/// Reduce a p-integral rational modulo p.
pub fn rat_mod_p(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(fmt_rat(&ratio(-3, 2)), "-3/2");
        assert_eq!(fmt_rat(&rat(7)), "7");
        assert_eq!(parse_rat("1/0"), None);
    }

    #[test]
    fn valuations() {
        assert_eq!(rat_valuation(&ratio(12, 5), &BigInt::from(2)), Some(2));
        assert_eq!(rat_valuation(&ratio(12, 5), &BigInt::from(5)), Some(-1));
        assert_eq!(rat_valuation(&rat(0), &BigInt::from(5)), None);
    }

    #[test]
    fn modular() {
        assert_eq!(rat_mod_p(&ratio(1, 2), 5), Some(3));
        assert_eq!(rat_mod_p(&ratio(1, 5), 5), None);
        assert_eq!(inv_mod(3, 7), 5);
        assert!(is_prime_u64(97) && !is_prime_u64(91));
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
