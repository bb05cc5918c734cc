//! Exact integer and rational helpers shared by every module.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn pow_i64(base: i64, exp: u32) -> i64 {
    base.checked_pow(exp).expect("integer power overflow")
}

/// Exponent of the largest power of `p` dividing `n`; `None` for `n = 0`.
pub fn valuation_i64(mut n: i64, p: i64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

pub fn valuation_big(n: &BigInt, p: i64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rat(x: &Rat, p: i64) -> Option<i32> {
    let num = valuation_big(x.numer(), p)? as i32;
    let den = valuation_big(x.denom(), p).unwrap_or(0) as i32;
    Some(num - den)
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Generalized binomial coefficient `binom(x, k)` for rational `x`.
pub fn binomial_rat(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for j in 0..k {
        acc = acc * (x - rat(j as i64)) / rat(j as i64 + 1);
    }
    acc
}

/// Coefficients (constant term first) of the polynomial of least degree
/// through the points `(xs[i], ys[i])`. The abscissae must be distinct.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Vec<Rat> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // Newton divided differences.
    let mut coef: Vec<Rat> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly: Vec<Rat> = vec![Rat::zero(); n.max(1)];
    for j in (0..n).rev() {
        // poly = poly * (x - xs[j]) + coef[j]
        let mut next = vec![Rat::zero(); n.max(1)];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[j];
        }
        next[0] += &coef[j];
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    poly
}

pub fn eval_univariate(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Content-free integer vector: clears denominators of a rational vector.
pub fn common_denominator(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn abs_rat(x: &Rat) -> Rat {
    x.abs()
}
