//! Factorization of univariate polynomials over Q.
//!
//! Square-free decomposition (Yun), then for each square-free part:
//! factor modulo a good prime, lift with Hensel, and recombine the lifted
//! factors by subset search (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp::{factor_mod_p, FpPoly};
use crate::poly::Poly;
use crate::rational::{is_prime_u64, Rat};

/// `f = unit * prod(factor^mult)`, factors monic, irreducible, distinct,
/// sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

pub fn poly_factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition(&f.monic()) {
        for h in factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Yun's algorithm on a monic polynomial; parts are monic.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let d = f.derivative();
    let c = f.gcd(&d);
    let mut w = f.div_exact(&c).unwrap();
    let mut y = d.div_exact(&c).unwrap();
    let mut z = &y - &w.derivative();
    let mut i = 1;
    while w.deg() > 0 {
        let g = w.gcd(&z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact(&g).unwrap();
        y = z.div_exact(&g).unwrap();
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(v)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zscale(a: &ZPoly, c: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x * c).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    ztrim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact division over Z; `None` if `b` does not divide `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let lb = b.last().unwrap();
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] -= &c * bc;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(ztrim(q))
    } else {
        None
    }
}

fn zprimitive(a: &ZPoly) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut v: ZPoly = a.iter().map(|c| c / &g).collect();
    if v.last().is_some_and(|c| c.is_negative()) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

fn pick_prime(f: &ZPoly) -> Option<(u64, Vec<FpPoly>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in (3u64..2000).filter(|&p| is_prime_u64(p)) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_bigints(p, f);
        if fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let facs: Vec<FpPoly> = factor_mod_p(&fp)
            .ok()?
            .factors
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    best
}

/// Lift `f = g*h (mod p)` with `g` monic to a factorization mod `p^k`.
fn hensel_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = g.ext_gcd(h);
    let pb = BigInt::from(p);
    let mut gz = fp_to_z(g);
    let mut hz = fp_to_z(h);
    let mut m = pb.clone();
    for _ in 1..k {
        let next = &m * &pb;
        let diff = zmod(&zsub(f, &zmul(&gz, &hz)), &next);
        let e: ZPoly = diff.iter().map(|c| c / &m).collect();
        let e = FpPoly::from_bigints(p, &e);
        let (q, r) = t.mul(&e).div_rem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        gz = zmod(&zadd(&gz, &zscale(&fp_to_z(&r), &m)), &next);
        hz = zmod(&zadd(&hz, &zscale(&fp_to_z(&dh), &m)), &next);
        m = next;
    }
    (gz, hz)
}

/// Lift monic factors of `f mod p` so that `f = lc(f) * prod(g_i) mod p^k`.
fn hensel_all(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&modulus);
        let inv = lc.extended_gcd(&modulus).x.mod_floor(&modulus);
        return vec![zmod(&zscale(f, &inv), &modulus)];
    }
    let g = &factors[0];
    let lc = FpPoly::from_bigints(p, &[f.last().unwrap().clone()]);
    let h = factors[1..].iter().fold(lc, |acc, x| acc.mul(x));
    let (gl, hl) = hensel_pair(f, g, &h, p, k);
    let mut out = vec![gl];
    out.extend(hensel_all(&hl, &factors[1..], p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible monic factors of a monic square-free polynomial.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.deg() <= 1 {
        return vec![f.clone()];
    }
    let mut zf = f.primitive_integer();
    let mut result: Vec<ZPoly> = Vec::new();
    // pull out powers of the variable so the constant term is nonzero
    if zf[0].is_zero() {
        result.push(vec![BigInt::zero(), BigInt::one()]);
        zf.remove(0);
        if zf.len() <= 2 {
            if zf.len() == 2 {
                result.push(zf);
            }
            return finish(result);
        }
    }
    let Some((p, modp)) = pick_prime(&zf) else {
        unreachable!("some prime below 2000 is good for a square-free polynomial of small degree");
    };
    if modp.len() == 1 {
        result.push(zf);
        return finish(result);
    }
    let n = zf.len() - 1;
    let norm1: BigInt = zf.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2).pow(n as u32) * norm1 * zf.last().unwrap().abs();
    let target = bound * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= target {
        modulus *= &pb;
        k += 1;
    }
    let mut lifted = hensel_all(&zf, &modp, p, k);
    let mut rest = zf;
    let mut d = 1;
    while 2 * d <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), d) {
            let lc = rest.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &modulus);
            }
            let cand = zprimitive(&zsymmetric(&cand, &modulus));
            if cand.len() < 2 {
                continue;
            }
            if let Some(q) = zdiv_exact(&rest, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                result.push(cand);
                rest = zprimitive(&q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => d += 1,
        }
    }
    if rest.len() > 1 {
        result.push(rest);
    }
    finish(result)
}

fn finish(v: Vec<ZPoly>) -> Vec<Poly> {
    v.iter().map(|z| Poly::from_bigints(z).monic()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_of(c: &[i64]) -> Vec<(Poly, usize)> {
        poly_factor(&Poly::from_ints(c)).unwrap().factors
    }

    #[test]
    fn t4_minus_1() {
        let f = factors_of(&[-1, 0, 0, 0, 1]);
        assert_eq!(
            f,
            vec![
                (Poly::from_ints(&[-1, 1]), 1),
                (Poly::from_ints(&[1, 1]), 1),
                (Poly::from_ints(&[1, 0, 1]), 1)
            ]
        );
    }

    #[test]
    fn t2_plus_1_irreducible() {
        assert_eq!(factors_of(&[1, 0, 1]), vec![(Poly::from_ints(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn zero_is_an_error() {
        assert_eq!(poly_factor(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        assert_eq!(factors_of(&[1, 0, -10, 0, 1]).len(), 1);
    }

    #[test]
    fn repeated_and_scaled() {
        let f = &(&Poly::from_ints(&[-3, 2]).pow(3) * &Poly::from_ints(&[2, 0, 1])) * &Poly::x().pow(2);
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.unit, crate::rational::rat(8));
        assert_eq!(fac.factors.len(), 3);
    }
}
