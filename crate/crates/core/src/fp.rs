//! Polynomials over a prime field F_p and their factorization
//! (square-free decomposition followed by Berlekamp splitting).

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{inv_mod, is_prime_u64, mul_mod, rat_mod_p};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        FpPoly::new(p, c.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
    }

    /// Reduction of a rational polynomial; `None` if a denominator vanishes mod p.
    pub fn from_poly(f: &Poly, p: u64) -> Option<Self> {
        let c = f
            .coeffs()
            .iter()
            .map(|c| rat_mod_p(c, p))
            .collect::<Option<Vec<_>>>()?;
        Some(FpPoly::new(p, c))
    }

    pub fn from_bigints(p: u64, c: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            c.iter()
                .map(|x| {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).unwrap()
                })
                .collect(),
        )
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.c(i) + o.c(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.c(i) + self.p - o.c(i)) % self.p).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, v)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero());
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mul_mod(c, dc, p)) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*o = g monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut r = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn canonical_key(&self) -> (usize, Vec<u64>) {
        let mut v = self.coeffs.clone();
        v.reverse();
        (self.coeffs.len(), v)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

/// Factorization over F_p: leading unit and monic irreducible factors with
/// multiplicities, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FpFactorization {
    pub p: u64,
    pub unit: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FpFactorization {
    pub fn expand(&self) -> FpPoly {
        let mut acc = FpPoly::new(self.p, vec![self.unit]);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_mod_p(f: &FpPoly) -> Result<FpFactorization> {
    if !is_prime_u64(f.p) {
        return Err(Error::BadPrime(BigInt::from(f.p)));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut factors = Vec::new();
    for (g, m) in squarefree_fp(&f.monic()) {
        for h in berlekamp(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by_key(|a| a.0.canonical_key());
    Ok(FpFactorization { p: f.p, unit, factors })
}

/// Square-free decomposition of a monic polynomial over F_p.
pub fn squarefree_fp(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_fp(&c.pth_root().monic()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a monic square-free polynomial into irreducible factors.
pub fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return vec![f.clone()],
    };
    // rows: x^{ip} mod f
    let xp = FpPoly::x(p).pow_mod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        rows.push((0..n).map(|j| cur.c(j)).collect::<Vec<u64>>());
        cur = cur.mul(&xp).rem(f);
    }
    // kernel of (Q - I)^T
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let q = rows[i][j];
            m[j][i] = if i == j { (q + p - 1) % p } else { q };
        }
    }
    let basis = nullspace_mod_p(m, p);
    let r = basis.len();
    if r <= 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for v in basis.iter() {
        let vp = FpPoly::new(p, v.clone());
        if vp.deg() <= 0 {
            continue;
        }
        for s in 0..p {
            let shifted = vp.sub(&FpPoly::new(p, vec![s]));
            let mut next = Vec::new();
            for u in factors.drain(..) {
                if u.deg() <= 1 {
                    next.push(u);
                    continue;
                }
                let g = u.gcd(&shifted);
                if g.deg() > 0 && g.deg() < u.deg() {
                    let h = u.div_rem(&g).0.monic();
                    next.push(g);
                    next.push(h);
                } else {
                    next.push(u);
                }
            }
            factors = next;
            if factors.len() == r {
                return factors;
            }
        }
    }
    factors
}

fn nullspace_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = mul_mod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(p: u64, c: &[i64]) -> Vec<(Vec<u64>, usize)> {
        factor_mod_p(&FpPoly::from_i64(p, c))
            .unwrap()
            .factors
            .into_iter()
            .map(|(f, m)| (f.coeffs().to_vec(), m))
            .collect()
    }

    #[test]
    fn t2_plus_1() {
        assert_eq!(fac(2, &[1, 0, 1]), vec![(vec![1, 1], 2)]);
        assert_eq!(fac(5, &[1, 0, 1]), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        assert_eq!(fac(3, &[1, 0, 1]), vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            factor_mod_p(&FpPoly::from_i64(4, &[1, 1])),
            Err(Error::BadPrime(BigInt::from(4)))
        );
        assert_eq!(factor_mod_p(&FpPoly::from_i64(5, &[5, 10])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pth_powers_and_roundtrip() {
        // (t^3 + t + 1)^3 (t+2)^2 over F_3
        let a = FpPoly::from_i64(3, &[1, 1, 0, 1]);
        let b = FpPoly::from_i64(3, &[2, 1]);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).scale(2);
        let r = factor_mod_p(&f).unwrap();
        assert_eq!(r.expand(), f);
        assert_eq!(r.unit, 2);
        assert_eq!(r.factors.len(), 2);
    }

    #[test]
    fn x_to_the_p_minus_x_splits_completely() {
        let mut c = vec![0i64; 8];
        c[7] = 1;
        c[1] = -1;
        let r = factor_mod_p(&FpPoly::from_i64(7, &c)).unwrap();
        assert_eq!(r.factors.len(), 7);
        assert!(r.factors.iter().all(|(f, m)| f.deg() == 1 && *m == 1));
    }
}
