//! Exact linear algebra over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rat;

/// Scale a rational matrix to an integer matrix (row by row).
fn integer_rows(m: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) elimination; returns the rank.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let v = &a[c][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

/// A nonzero vector `v` with `sum_i v_i * cols[i] = 0`, if one exists.
pub fn column_dependency(cols: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let k = cols.len();
    let n = cols.first().map_or(0, |c| c.len());
    // Row-reduce the n x k matrix whose columns are `cols`.
    let mut a: Vec<Vec<Rat>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..k {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rat::zero(); k];
    v[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -a[row][free].clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn rank_and_det() {
        let m = vec![
            vec![rat(1), ratio(1, 2), rat(3)],
            vec![rat(2), rat(1), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m), rat(0));
        let id = vec![vec![ratio(2, 3), rat(0)], vec![rat(0), rat(3)]];
        assert_eq!(rank(&id), 2);
        assert_eq!(determinant(&id), rat(2));
    }

    #[test]
    fn dependency() {
        let cols = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(2), rat(3)]];
        let v = column_dependency(&cols).unwrap();
        for i in 0..2 {
            let s: Rat = (0..3).map(|j| &v[j] * &cols[j][i]).sum();
            assert_eq!(s, rat(0));
        }
        assert!(column_dependency(&cols[..2]).is_none());
    }
}
