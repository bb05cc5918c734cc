//! Sparse multivariate polynomials over Q in the Cartan variables.
//!
//! Variables are indexed `0..nvars`. For rank `r` the convention is that
//! `h_0..h_r` occupy indices `0..=r` and the scaling variable `d` sits at
//! index `r + 1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{binomial_big, rat, Rat};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

impl HPoly {
    pub fn zero(nvars: usize) -> Self {
        HPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    /// `Σ coeffs[i]·x_i + constant`.
    pub fn linear(coeffs: &[i64], constant: i64) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, rat(constant));
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p = p + Self::var(n, i).scale(&rat(c));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rat::zero)
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn free_of(&self, var: usize) -> bool {
        self.degree_in(var) == 0
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        HPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Replaces `x_var` by `value` (the variable stays in the index space).
    pub fn eval_var(&self, var: usize, value: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e[var] {
                t *= value;
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, t);
        }
        out
    }

    /// Replaces `x_var` by the polynomial `q`.
    pub fn substitute(&self, var: usize, q: &HPoly) -> Self {
        assert_eq!(q.nvars, self.nvars);
        let maxdeg = self.degree_in(var) as usize;
        let mut powers = vec![Self::one(self.nvars)];
        for k in 1..=maxdeg {
            let next = &powers[k - 1] * q;
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            let mut mono = Self::zero(self.nvars);
            mono.terms.insert(e2, c.clone());
            out = out + &mono * &powers[k];
        }
        out
    }

    /// The polynomial `x ↦ p(x + shift)`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        if shift.iter().all(|&s| s == 0) {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            // Expand Π (x_i + s_i)^{e_i} by the binomial theorem.
            let mut partial: Vec<(Exponents, Rat)> = vec![(vec![0; self.nvars], c.clone())];
            for i in 0..self.nvars {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                let s = shift[i];
                let mut next = Vec::new();
                for (pe, pc) in &partial {
                    if s == 0 {
                        let mut ne = pe.clone();
                        ne[i] += k;
                        next.push((ne, pc.clone()));
                        continue;
                    }
                    let mut spow = Rat::one();
                    for j in 0..=k {
                        // term x^{k-j} s^j binom(k, j)
                        let mut ne = pe.clone();
                        ne[i] += k - j;
                        let coef = pc * &spow * Rat::from_integer(binomial_big(k, j));
                        next.push((ne, coef));
                        spow *= rat(s);
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                out.add_term(pe, pc);
            }
        }
        out
    }

    /// Lexicographically leading exponent.
    fn leading(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &HPoly) -> Option<HPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (le, lc) = divisor.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = re.iter().zip(&le).map(|(a, b)| a - b).collect();
            let qc = rc / &lc;
            let mut mono = Self::zero(self.nvars);
            mono.terms.insert(qe, qc);
            rem = rem - &mono * divisor;
            quot = quot + mono;
        }
        Some(quot)
    }

    /// Coefficient of `x_var^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { String::from(names[i]) } else { alloc::format!("{}^{}", names[i], k) })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(s, "{}", mag);
            } else {
                if !mag.is_one() {
                    let _ = write!(s, "{}*", mag);
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| alloc::format!("x{}", i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl Add for HPoly {
    type Output = HPoly;
    fn add(mut self, rhs: HPoly) -> HPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a> Add<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        self.clone() + rhs.clone()
    }
}

impl Sub for HPoly {
    type Output = HPoly;
    fn sub(mut self, rhs: HPoly) -> HPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<'a> Sub<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        self.clone() - rhs.clone()
    }
}

impl Neg for HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.scale(&-Rat::one())
    }
}

impl<'a> Mul<&'a HPoly> for &'a HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = HPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for HPoly {
    type Output = HPoly;
    fn mul(self, rhs: HPoly) -> HPoly {
        &self * &rhs
    }
}
