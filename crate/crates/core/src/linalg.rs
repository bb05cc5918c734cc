//! Exact linear algebra over Q and Z, plus a fraction-free determinant for
//! polynomial matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::poly::HPoly;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Some solution `x` of `a·x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel `{x : a·x = 0}`.
pub fn nullspace(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(x).fold(Rat::zero(), |acc, (p, q)| acc + p * q)).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `gens`; the
/// returned rows form a Z-basis of that lattice.
pub fn hnf_basis(gens: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let cols = gens[0].len();
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..cols {
        // Euclid on column c among remaining rows.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[piv][c]);
                for j in 0..cols {
                    let t = &q * &rows[piv][j];
                    rows[i][j] -= t;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.remove(i);
            if r[c].is_negative() {
                for x in r.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(r);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above pivots.
    for k in 0..out.len() {
        let c = out[k].iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = out[i][c].div_floor(&out[k][c]);
            if !q.is_zero() {
                for j in 0..cols {
                    let t = &q * &out[k][j];
                    out[i][j] -= t;
                }
            }
        }
    }
    out
}

/// Coordinates of `v` in the basis `basis` (rows), if `v` lies in their span.
pub fn coordinates(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    if basis.is_empty() {
        return if v.iter().all(Zero::is_zero) { Some(Vec::new()) } else { None };
    }
    let n = v.len();
    let k = basis.len();
    let a: Vec<Vec<Rat>> = (0..n).map(|i| (0..k).map(|j| basis[j][i].clone()).collect()).collect();
    solve(&a, v)
}

/// Determinant by Bareiss fraction-free elimination with exact polynomial
/// division.
pub fn bareiss_det(mut m: Vec<Vec<HPoly>>, nvars: usize) -> HPoly {
    let n = m.len();
    if n == 0 {
        return HPoly::one(nvars);
    }
    let mut sign = Rat::one();
    let mut prev = HPoly::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return HPoly::zero(nvars);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big, rat};

    #[test]
    fn hnf_of_dependent_generators() {
        let gens = vec![vec![big(2), big(4)], vec![big(3), big(6)], vec![big(0), big(1)]];
        let b = hnf_basis(&gens);
        assert_eq!(b, vec![vec![big(1), big(0)], vec![big(0), big(1)]]);
    }

    #[test]
    fn nullspace_and_solve() {
        let a = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)]];
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        assert!(solve(&a, &[rat(1), rat(3)]).is_none());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let x = HPoly::var(2, 0);
        let y = HPoly::var(2, 1);
        let m = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        let det = bareiss_det(m, 2);
        assert_eq!(det, &(&x * &x) - &(&y * &y));
    }
}
