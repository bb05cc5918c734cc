//! Untwisted affine root data, weights, roots and pairings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{rat, to_i64, Rat};
use crate::error::{Error, Result};
use crate::linalg::solve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineType {
    pub family: Family,
    pub rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Self {
        AffineType { family, rank }
    }

    /// Parses names such as `A1`, `C2`, `E8`, `G2` (an optional leading `~`
    /// and lowercase letters are accepted).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('~');
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse(format!("empty type name {s:?}")))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::Parse(format!("unknown type {s:?}"))),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad rank in type {s:?}")))?;
        Ok(AffineType { family, rank })
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.family {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{}{}", l, self.rank)
    }
}

/// A weight, recorded by its values on `h_0..h_r` and on `d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub h: Vec<i64>,
    pub d: Rat,
}

impl Weight {
    pub fn new(h: Vec<i64>) -> Self {
        Weight { h, d: Rat::zero() }
    }

    pub fn with_d(h: Vec<i64>, d: Rat) -> Self {
        Weight { h, d }
    }

    pub fn is_dominant(&self) -> bool {
        self.h.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { h: self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect(), d: &self.d + &other.d }
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight { h: self.h.iter().map(|x| x * k).collect(), d: &self.d * rat(k) }
    }
}

/// An element `Σ g_i α_i` of the root lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootElement {
    pub coeffs: Vec<i64>,
}

impl RootElement {
    pub fn new(coeffs: Vec<i64>) -> Self {
        RootElement { coeffs }
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        RootElement { coeffs: c }
    }

    pub fn zero(n: usize) -> Self {
        RootElement { coeffs: vec![0; n] }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, o: &RootElement) -> RootElement {
        RootElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &RootElement) -> RootElement {
        RootElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scaled(&self, k: i64) -> RootElement {
        RootElement { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// `self ≤ other` in the dominance order (difference in Q⁺).
    pub fn le(&self, other: &RootElement) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for RootElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_root(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub kind: AffineType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    /// `(α_i, α_i)`, long roots normalized to 2.
    pub root_lengths: Vec<Rat>,
    finite_positive: Vec<RootElement>,
    /// `6(α_i, α_j)`, integral for every supported type.
    form6: Vec<Vec<i64>>,
}

fn cartan_for(t: AffineType) -> Result<Vec<Vec<i64>>> {
    let r = t.rank;
    let n = r + 1;
    let unsupported = || Error::UnsupportedType(t.to_string());
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // simply-laced edge
    let edge = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    // a_{ij} = ⟨α_j, α_i^∨⟩; `long` is the long end of a multiple bond.
    let bond = |a: &mut Vec<Vec<i64>>, long: usize, short: usize, m: i64| {
        a[long][short] = -1;
        a[short][long] = -m;
    };
    match t.family {
        Family::A => {
            if r < 1 {
                return Err(unsupported());
            }
            if r == 1 {
                a[0][1] = -2;
                a[1][0] = -2;
            } else {
                for i in 0..n {
                    edge(&mut a, i, (i + 1) % n);
                }
            }
        }
        Family::B => {
            if r < 3 {
                return Err(unsupported());
            }
            edge(&mut a, 0, 2);
            for i in 1..r - 1 {
                edge(&mut a, i, i + 1);
            }
            bond(&mut a, r - 1, r, 2);
        }
        Family::C => {
            if r < 2 {
                return Err(unsupported());
            }
            bond(&mut a, 0, 1, 2);
            for i in 1..r - 1 {
                edge(&mut a, i, i + 1);
            }
            bond(&mut a, r, r - 1, 2);
        }
        Family::D => {
            if r < 4 {
                return Err(unsupported());
            }
            edge(&mut a, 0, 2);
            for i in 1..r - 1 {
                edge(&mut a, i, i + 1);
            }
            edge(&mut a, r - 2, r);
        }
        Family::E => match r {
            6 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)] {
                    edge(&mut a, i, j);
                }
            }
            7 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4), (0, 1)] {
                    edge(&mut a, i, j);
                }
            }
            8 => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)] {
                    edge(&mut a, i, j);
                }
            }
            _ => return Err(unsupported()),
        },
        Family::F => {
            if r != 4 {
                return Err(unsupported());
            }
            edge(&mut a, 0, 1);
            edge(&mut a, 1, 2);
            bond(&mut a, 2, 3, 2);
            edge(&mut a, 3, 4);
        }
        Family::G => {
            if r != 2 {
                return Err(unsupported());
            }
            edge(&mut a, 0, 1);
            bond(&mut a, 1, 2, 3);
        }
    }
    Ok(a)
}

/// Minimal positive integer vector `v` with `m·v = 0` and `v_0 = 1`.
fn null_vector(m: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = m.len();
    // Solve the finite block with v_0 = 1.
    let a: Vec<Vec<Rat>> = (1..n).map(|i| (1..n).map(|j| rat(m[i][j])).collect()).collect();
    let b: Vec<Rat> = (1..n).map(|i| rat(-m[i][0])).collect();
    let x = solve(&a, &b).ok_or_else(|| Error::InternalData("singular finite Cartan block".into()))?;
    let mut v = vec![1i64];
    for xi in x {
        v.push(to_i64(&xi).ok_or_else(|| Error::InternalData("non-integral null vector".into()))?);
    }
    Ok(v)
}

impl RootDatum {
    pub fn load(t: AffineType) -> Result<Self> {
        let cartan = cartan_for(t)?;
        let n = t.rank + 1;
        let marks = null_vector(&cartan)?;
        let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
        let comarks = null_vector(&transpose)?;
        let root_lengths: Vec<Rat> = (0..n).map(|i| rat(2 * comarks[i]) / rat(marks[i])).collect();
        let mut form6 = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = rat(3 * cartan[i][j]) * &root_lengths[i];
                form6[i][j] = to_i64(&v).ok_or_else(|| Error::InternalData(format!("non-integral form on {t}")))?;
            }
        }
        let mut datum = RootDatum {
            kind: t,
            rank: t.rank,
            coxeter: marks.iter().sum(),
            dual_coxeter: comarks.iter().sum(),
            cartan,
            marks,
            comarks,
            root_lengths,
            finite_positive: Vec::new(),
            form6,
        };
        datum.check_invariants()?;
        datum.finite_positive = datum.compute_finite_positive();
        Ok(datum)
    }

    /// Shorthand for type `Ã_1`.
    pub fn a1() -> Self {
        Self::load(AffineType::new(Family::A, 1)).expect("A1 is supported")
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let fail = |m: &str| Err(Error::InternalData(format!("{}: {}", self.kind, m)));
        for i in 0..n {
            if self.cartan[i][i] != 2 {
                return fail("diagonal entry is not 2");
            }
            for j in 0..n {
                if i != j && (self.cartan[i][j] > 0 || (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0)) {
                    return fail("not a generalized Cartan matrix");
                }
            }
            let row: i64 = (0..n).map(|j| self.cartan[i][j] * self.marks[j]).sum();
            let col: i64 = (0..n).map(|j| self.comarks[j] * self.cartan[j][i]).sum();
            if row != 0 || col != 0 {
                return fail("marks or comarks are not null vectors");
            }
            if self.marks[i] <= 0 || self.comarks[i] <= 0 {
                return fail("marks must be positive");
            }
        }
        if self.marks[0] != 1 || self.comarks[0] != 1 {
            return fail("a_0 must be 1");
        }
        // symmetrizability: (α_i,α_j) computed from either side agrees
        for i in 0..n {
            for j in 0..n {
                if rat(self.cartan[i][j]) * &self.root_lengths[i] != rat(self.cartan[j][i]) * &self.root_lengths[j] {
                    return fail("root lengths do not symmetrize the Cartan matrix");
                }
            }
        }
        if self.root_lengths.iter().max() != Some(&rat(2)) {
            return fail("long roots must have squared length 2");
        }
        Ok(())
    }

    /// Number of simple roots, `r + 1`.
    pub fn n(&self) -> usize {
        self.rank + 1
    }

    pub fn delta(&self) -> RootElement {
        RootElement::new(self.marks.clone())
    }

    pub fn simple_root(&self, i: usize) -> RootElement {
        RootElement::simple(self.n(), i)
    }

    /// `(α_i, α_j)`.
    pub fn form_simple(&self, i: usize, j: usize) -> Rat {
        rat(self.cartan[i][j]) * &self.root_lengths[i] / rat(2)
    }

    /// The invariant form on the root lattice.
    pub fn form(&self, a: &RootElement, b: &RootElement) -> Rat {
        let n = self.n();
        let mut s = 0i64;
        for i in 0..n {
            if a.coeffs[i] == 0 {
                continue;
            }
            let row = &self.form6[i];
            s += a.coeffs[i] * (0..n).map(|j| row[j] * b.coeffs[j]).sum::<i64>();
        }
        rat(s) / rat(6)
    }

    /// `(λ, β)` for a weight and a root-lattice element (ignores `λ(d)`,
    /// which pairs with nothing in the span of the simple roots' duals).
    pub fn form_weight_root(&self, lambda: &Weight, beta: &RootElement) -> Rat {
        (0..self.n())
            .map(|i| rat(lambda.h[i] * beta.coeffs[i]) * &self.root_lengths[i] / rat(2))
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn norm(&self, g: &RootElement) -> Rat {
        self.form(g, g)
    }

    /// `k` if `g = kδ`, otherwise `None`.
    pub fn delta_multiple(&self, g: &RootElement) -> Option<i64> {
        let k = g.coeffs[0];
        if g.coeffs.iter().zip(&self.marks).all(|(c, a)| *c == k * a) {
            Some(k)
        } else {
            None
        }
    }

    /// Coefficients `g_i^∨` of `h_γ = Σ g_i^∨ h_i`.
    ///
    /// For real `γ` this is the coroot `2γ/(γ,γ)` written in the simple
    /// coroots, `g_i^∨ = g_i (α_i,α_i)/(γ,γ)`; for `γ = kδ` it is `k·c`.
    pub fn coroot_coeffs(&self, g: &RootElement) -> Result<Vec<i64>> {
        if let Some(k) = self.delta_multiple(g) {
            return Ok(self.comarks.iter().map(|c| k * c).collect());
        }
        let norm = self.norm(g);
        if norm.is_zero() {
            return Err(Error::InternalData(format!("isotropic non-δ element {}", g)));
        }
        let mut out = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let c = rat(g.coeffs[i]) * &self.root_lengths[i] / &norm;
            out.push(to_i64(&c).ok_or_else(|| Error::InternalData(format!("non-integral coroot of {}", g)))?);
        }
        Ok(out)
    }

    /// `⟨λ+ρ, γ^∨⟩ = Σ g_i^∨ (λ(h_i) + 1)` for real `γ`.
    pub fn pairing(&self, lambda: &Weight, g: &RootElement) -> Result<i64> {
        if self.is_imaginary(g) {
            return Err(Error::NotRealRoot(g.to_string()));
        }
        let cv = self.coroot_coeffs(g)?;
        Ok(cv.iter().zip(&lambda.h).map(|(c, x)| c * (x + 1)).sum())
    }

    /// `⟨λ, γ^∨⟩` without the ρ shift.
    pub fn pairing_unshifted(&self, lambda: &Weight, g: &RootElement) -> Result<i64> {
        if self.is_imaginary(g) {
            return Err(Error::NotRealRoot(g.to_string()));
        }
        let cv = self.coroot_coeffs(g)?;
        Ok(cv.iter().zip(&lambda.h).map(|(c, x)| c * x).sum())
    }

    /// `⟨β, γ^∨⟩` for a root-lattice element `β`.
    pub fn root_pairing(&self, beta: &RootElement, g: &RootElement) -> Result<i64> {
        if self.is_imaginary(g) {
            return Err(Error::NotRealRoot(g.to_string()));
        }
        let v = rat(2) * self.form(beta, g) / self.norm(g);
        to_i64(&v).ok_or_else(|| Error::InternalData(format!("non-integral pairing with {}", g)))
    }

    pub fn is_imaginary(&self, g: &RootElement) -> bool {
        self.norm(g).is_zero()
    }

    /// The weight `β` as a functional: values on `h_j` and `d`.
    pub fn root_as_weight(&self, g: &RootElement) -> Weight {
        let n = self.n();
        let h = (0..n).map(|j| (0..n).map(|i| g.coeffs[i] * self.cartan[j][i]).sum()).collect();
        Weight { h, d: rat(g.coeffs[0]) }
    }

    /// `λ − nγ`.
    pub fn subtract_root(&self, lambda: &Weight, n: i64, g: &RootElement) -> Weight {
        let w = self.root_as_weight(g);
        Weight { h: lambda.h.iter().zip(&w.h).map(|(x, y)| x - n * y).collect(), d: &lambda.d - rat(n * g.coeffs[0]) }
    }

    pub fn level(&self, lambda: &Weight) -> i64 {
        lambda.h.iter().zip(&self.comarks).map(|(x, c)| x * c).sum()
    }

    pub fn fundamental_weight(&self, j: usize) -> Weight {
        Weight::new((0..self.n()).map(|i| i64::from(i == j)).collect())
    }

    /// Root-lattice element with `λ − μ = that element`, if the difference is
    /// in the root lattice.
    pub fn weight_difference(&self, lambda: &Weight, mu: &Weight) -> Option<RootElement> {
        let n = self.n();
        let dd = &lambda.d - &mu.d;
        let g0 = to_i64(&dd)?;
        let diff: Vec<i64> = lambda.h.iter().zip(&mu.h).map(|(a, b)| a - b).collect();
        // Σ_i g_i a_{ji} = diff_j with g_0 fixed.
        let a: Vec<Vec<Rat>> = (0..n).map(|j| (1..n).map(|i| rat(self.cartan[j][i])).collect()).collect();
        let b: Vec<Rat> = (0..n).map(|j| rat(diff[j] - g0 * self.cartan[j][0])).collect();
        let x = solve(&a, &b)?;
        let mut coeffs = vec![g0];
        for xi in x {
            coeffs.push(to_i64(&xi)?);
        }
        let g = RootElement::new(coeffs);
        (self.root_as_weight(&g).h == diff).then_some(g)
    }

    fn compute_finite_positive(&self) -> Vec<RootElement> {
        let n = self.n();
        let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut layer: Vec<Vec<i64>> = (1..n).map(|i| RootElement::simple(n, i).coeffs).collect();
        for r in &layer {
            all.insert(r.clone());
        }
        while !layer.is_empty() {
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for beta in &layer {
                for i in 1..n {
                    let mut p = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if all.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..n).map(|j| beta[j] * self.cartan[i][j]).sum();
                    if p - pair > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !all.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            for r in &next {
                all.insert(r.clone());
            }
            layer = next.into_iter().collect();
        }
        let mut v: Vec<RootElement> = all.into_iter().map(RootElement::new).collect();
        v.sort_by_key(|r| (r.height(), r.coeffs.clone()));
        v
    }

    /// Positive roots of the underlying finite root system (`α_0`
    /// coefficient zero).
    pub fn finite_positive_roots(&self) -> &[RootElement] {
        &self.finite_positive
    }

    /// `Φ₁⁺ = {α, δ − α | α ∈ Φ₀⁺}`.
    pub fn base_roots(&self) -> Vec<RootElement> {
        let delta = self.delta();
        let mut v: Vec<RootElement> = self.finite_positive.clone();
        v.extend(self.finite_positive.iter().map(|a| delta.sub(a)));
        v
    }

    /// Whether `g` is a positive real root.
    pub fn is_positive_real_root(&self, g: &RootElement) -> bool {
        let k = g.coeffs[0];
        let fin = g.sub(&self.delta().scaled(k));
        if self.finite_positive.contains(&fin) {
            k >= 0
        } else if self.finite_positive.contains(&fin.scaled(-1)) {
            k >= 1
        } else {
            false
        }
    }

    /// Whether `g` is a positive root (real or a positive multiple of δ).
    pub fn is_positive_root(&self, g: &RootElement) -> bool {
        self.is_positive_real_root(g) || self.delta_multiple(g).is_some_and(|k| k > 0)
    }

    /// `γ₀ + tδ` for `t = 0..=t_max`.
    pub fn positive_real_roots(&self, base: &RootElement, t_max: usize) -> Result<Vec<RootElement>> {
        if !self.base_roots().contains(base) {
            return Err(Error::NotBaseRoot(base.to_string()));
        }
        let delta = self.delta();
        Ok((0..=t_max as i64).map(|t| base.add(&delta.scaled(t))).collect())
    }

    /// All positive real roots of height at most `max_height`, sorted by
    /// height then coefficients.
    pub fn positive_real_roots_to_height(&self, max_height: i64) -> Vec<RootElement> {
        let delta = self.delta();
        let h = delta.height();
        let mut out = Vec::new();
        for base in self.base_roots() {
            let mut t = 0;
            loop {
                let g = base.add(&delta.scaled(t));
                if g.height() > max_height {
                    break;
                }
                out.push(g);
                t += 1;
                if h <= 0 {
                    break;
                }
            }
        }
        out.sort_by_key(|r| (r.height(), r.coeffs.clone()));
        out
    }

    /// Simple reflection of a root-lattice element, `s_i(β)`.
    pub fn simple_reflect_root(&self, beta: &RootElement, i: usize) -> RootElement {
        let pair: i64 = (0..self.n()).map(|j| beta.coeffs[j] * self.cartan[i][j]).sum();
        let mut out = beta.clone();
        out.coeffs[i] -= pair;
        out
    }

    /// Reflection of a root-lattice element in a real root.
    pub fn reflect_root(&self, beta: &RootElement, g: &RootElement) -> Result<RootElement> {
        let k = self.root_pairing(beta, g)?;
        Ok(beta.sub(&g.scaled(k)))
    }

    /// Index of a simple root equal to `g`, if any.
    pub fn simple_index(&self, g: &RootElement) -> Option<usize> {
        (g.height() == 1 && g.is_nonnegative()).then(|| g.coeffs.iter().position(|&c| c == 1).unwrap())
    }

    /// `2(λ+ρ, β)`.
    pub fn twice_shifted_form(&self, lambda: &Weight, beta: &RootElement) -> Rat {
        let shifted = Weight { h: lambda.h.iter().map(|x| x + 1).collect(), d: lambda.d.clone() };
        rat(2) * self.form_weight_root(&shifted, beta)
    }
}

/// `gcd` of all entries (nonnegative).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)).abs()
}
