//! The enveloping algebra of affine sl₂ in its loop realization.
//!
//! Root vectors: `f_1 = F⊗1`, `f_0 = E⊗t⁻¹`, `f_{δ,k} = H⊗t⁻ᵏ`, and the
//! real root vectors `f_{α0+jδ} = (−1)ʲ E⊗t^{−j−1}`, `f_{α1+jδ} = (−1)ʲ F⊗t^{−j}`.
//! Positive root vectors are their images under `τ`. Elements are stored
//! as sums of ordered words with a Cartan polynomial on the right; for
//! elements of `U(b⁻)` this is the usual `Σ F_π Q_π`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, interpolate, rat, Rat};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::HPoly;
use crate::rootdata::Weight;

/// Cartan variables `h0, h1, d`.
pub const NVARS: usize = 3;
pub const VAR_H0: usize = 0;
pub const VAR_H1: usize = 1;
pub const VAR_D: usize = 2;
pub const VAR_NAMES: [&str; NVARS] = ["h0", "h1", "d"];

/// Recorded with every stored element so that cached data is only reused
/// under the same monomial order.
pub const ORDER_KEY: &str = "a0-coeff/imaginary-first/delta-degree/a1-coeff";
pub const ENGINE_VERSION: u32 = 1;

/// A basis element of the loop algebra `sl₂[t,t⁻¹] ⊕ Cc ⊕ Cd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoopGen {
    E(i64),
    F(i64),
    H(i64),
    C,
    D,
}

impl LoopGen {
    pub fn degree(&self) -> i64 {
        match *self {
            LoopGen::E(k) | LoopGen::F(k) | LoopGen::H(k) => k,
            LoopGen::C | LoopGen::D => 0,
        }
    }

    /// Root as `(coefficient of α0, coefficient of α1)`.
    pub fn root(&self) -> [i64; 2] {
        match *self {
            LoopGen::E(k) => [k, k + 1],
            LoopGen::F(k) => [k, k - 1],
            LoopGen::H(k) => [k, k],
            LoopGen::C | LoopGen::D => [0, 0],
        }
    }

    /// `"E:-2"`, `"F:0"`, `"H:-1"`, `"C"`, `"D"`.
    pub fn id(&self) -> String {
        match *self {
            LoopGen::E(k) => format!("E:{k}"),
            LoopGen::F(k) => format!("F:{k}"),
            LoopGen::H(k) => format!("H:{k}"),
            LoopGen::C => "C".to_string(),
            LoopGen::D => "D".to_string(),
        }
    }

    pub fn parse_id(s: &str) -> Result<LoopGen> {
        let bad = || Error::Parse(format!("bad generator id {s:?}"));
        match s {
            "C" => return Ok(LoopGen::C),
            "D" => return Ok(LoopGen::D),
            _ => {}
        }
        let (x, k) = s.split_once(':').ok_or_else(bad)?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        match x {
            "E" => Ok(LoopGen::E(k)),
            "F" => Ok(LoopGen::F(k)),
            "H" => Ok(LoopGen::H(k)),
            _ => Err(bad()),
        }
    }
}

pub type LoopSum = BTreeMap<LoopGen, Rat>;

fn push(sum: &mut LoopSum, g: LoopGen, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = sum.entry(g).or_insert_with(Rat::zero);
    *e += c;
    if e.is_zero() {
        sum.remove(&g);
    }
}

/// `[x⊗tᵐ, y⊗tⁿ] = [x,y]⊗t^{m+n} + m·δ_{m+n,0}·κ(x,y)·c`, `[d, x⊗tᵐ] = m·x⊗tᵐ`.
pub fn loop_bracket(a: LoopGen, b: LoopGen) -> LoopSum {
    use LoopGen::*;
    let mut out = LoopSum::new();
    match (a, b) {
        (C, _) | (_, C) | (D, D) => {}
        (D, x) => push(&mut out, x, rat(x.degree())),
        (x, D) => push(&mut out, x, rat(-x.degree())),
        (x, y) => {
            let (m, n) = (x.degree(), y.degree());
            let k = m + n;
            match (x, y) {
                (E(_), F(_)) => push(&mut out, H(k), rat(1)),
                (F(_), E(_)) => push(&mut out, H(k), rat(-1)),
                (H(_), E(_)) => push(&mut out, E(k), rat(2)),
                (E(_), H(_)) => push(&mut out, E(k), rat(-2)),
                (H(_), F(_)) => push(&mut out, F(k), rat(-2)),
                (F(_), H(_)) => push(&mut out, F(k), rat(2)),
                _ => {}
            }
            if k == 0 {
                let kappa = match (x, y) {
                    (E(_), F(_)) | (F(_), E(_)) => 1,
                    (H(_), H(_)) => 2,
                    _ => 0,
                };
                push(&mut out, C, rat(m * kappa));
            }
        }
    }
    out
}

pub fn loop_bracket_sum(a: &LoopSum, b: &LoopSum) -> LoopSum {
    let mut out = LoopSum::new();
    for (x, cx) in a {
        for (y, cy) in b {
            for (z, cz) in loop_bracket(*x, *y) {
                push(&mut out, z, cx * cy * cz);
            }
        }
    }
    out
}

/// A root vector `f_β` (negative) or `e_β` (positive) for a positive root
/// `β = g0·α0 + g1·α1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub positive: bool,
    pub g0: i64,
    pub g1: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// `kδ`
    Imaginary(i64),
    /// `α0 + jδ`
    Alpha0(i64),
    /// `α1 + jδ`
    Alpha1(i64),
}

pub fn is_positive_root(g0: i64, g1: i64) -> bool {
    g0 >= 0 && g1 >= 0 && (g0, g1) != (0, 0) && (g0 - g1).abs() <= 1
}

impl Gen {
    pub fn f(g0: i64, g1: i64) -> Gen {
        assert!(is_positive_root(g0, g1), "({g0},{g1}) is not a positive root");
        Gen { positive: false, g0, g1 }
    }

    pub fn e(g0: i64, g1: i64) -> Gen {
        assert!(is_positive_root(g0, g1), "({g0},{g1}) is not a positive root");
        Gen { positive: true, g0, g1 }
    }

    pub fn f_simple(i: usize) -> Gen {
        if i == 0 {
            Gen::f(1, 0)
        } else {
            Gen::f(0, 1)
        }
    }

    pub fn e_simple(i: usize) -> Gen {
        Gen::f_simple(i).tau()
    }

    pub fn root(&self) -> [i64; 2] {
        [self.g0, self.g1]
    }

    pub fn kind(&self) -> RootKind {
        match self.g0 - self.g1 {
            0 => RootKind::Imaginary(self.g0),
            1 => RootKind::Alpha0(self.g1),
            _ => RootKind::Alpha1(self.g0),
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.g0 == self.g1
    }

    pub fn delta_degree(&self) -> i64 {
        match self.kind() {
            RootKind::Imaginary(k) | RootKind::Alpha0(k) | RootKind::Alpha1(k) => k,
        }
    }

    /// The simple index if `β` is simple.
    pub fn simple_index(&self) -> Option<usize> {
        match (self.g0, self.g1) {
            (1, 0) => Some(0),
            (0, 1) => Some(1),
            _ => None,
        }
    }

    pub fn tau(&self) -> Gen {
        Gen { positive: !self.positive, ..*self }
    }

    /// `(sign, x)` with this root vector equal to `sign·x`.
    pub fn to_loop(&self) -> (i64, LoopGen) {
        let sign = |j: i64| if j % 2 == 0 { 1 } else { -1 };
        match (self.positive, self.kind()) {
            (false, RootKind::Imaginary(k)) => (1, LoopGen::H(-k)),
            (true, RootKind::Imaginary(k)) => (1, LoopGen::H(k)),
            (false, RootKind::Alpha0(j)) => (sign(j), LoopGen::E(-j - 1)),
            (true, RootKind::Alpha0(j)) => (sign(j), LoopGen::F(j + 1)),
            (false, RootKind::Alpha1(j)) => (sign(j), LoopGen::F(-j)),
            (true, RootKind::Alpha1(j)) => (sign(j), LoopGen::E(j)),
        }
    }

    /// Values of the weight of this vector on `h0, h1, d`.
    pub fn weight_shift(&self) -> [i64; NVARS] {
        let s = if self.positive { 1 } else { -1 };
        [s * 2 * (self.g0 - self.g1), s * 2 * (self.g1 - self.g0), s * self.g0]
    }

    pub fn name(&self) -> String {
        let x = if self.positive { "e" } else { "f" };
        match (self.simple_index(), self.kind()) {
            (Some(i), _) => format!("{x}{i}"),
            (None, RootKind::Imaginary(k)) => format!("{x}_{{δ,{k}}}"),
            (None, RootKind::Alpha0(j)) => format!("{x}_{{α0+{}}}", delta_str(j)),
            (None, RootKind::Alpha1(j)) => format!("{x}_{{α1+{}}}", delta_str(j)),
        }
    }
}

fn delta_str(j: i64) -> String {
    if j == 1 {
        "δ".to_string()
    } else {
        format!("{j}δ")
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Image of a loop generator in `U`: a signed root vector or a Cartan element.
#[derive(Clone, Debug, PartialEq)]
pub enum Piece {
    Root(Rat, Gen),
    Cartan(HPoly),
}

pub fn loop_to_piece(x: LoopGen) -> Piece {
    let sign = |j: i64| rat(if j % 2 == 0 { 1 } else { -1 });
    match x {
        LoopGen::C => Piece::Cartan(HPoly::linear(&[1, 1, 0], 0)),
        LoopGen::D => Piece::Cartan(HPoly::var(NVARS, VAR_D)),
        LoopGen::H(0) => Piece::Cartan(HPoly::var(NVARS, VAR_H1)),
        LoopGen::H(k) if k < 0 => Piece::Root(rat(1), Gen::f(-k, -k)),
        LoopGen::H(k) => Piece::Root(rat(1), Gen::e(k, k)),
        LoopGen::E(k) if k >= 0 => Piece::Root(sign(k), Gen::e(k, k + 1)),
        LoopGen::E(k) => {
            let j = -k - 1;
            Piece::Root(sign(j), Gen::f(j + 1, j))
        }
        LoopGen::F(k) if k <= 0 => {
            let j = -k;
            Piece::Root(sign(j), Gen::f(j, j + 1))
        }
        LoopGen::F(k) => {
            let j = k - 1;
            Piece::Root(sign(j), Gen::e(j + 1, j))
        }
    }
}

/// `[a, b]` for root vectors, expressed through root vectors and Cartan
/// elements.
pub fn gen_bracket(a: Gen, b: Gen) -> Vec<(Rat, Piece)> {
    let (sa, la) = a.to_loop();
    let (sb, lb) = b.to_loop();
    let s = rat(sa * sb);
    let mut out = Vec::new();
    let mut cartan = HPoly::zero(NVARS);
    for (z, c) in loop_bracket(la, lb) {
        match loop_to_piece(z) {
            Piece::Root(sz, g) => out.push((&s * &c * sz, Piece::Root(rat(1), g))),
            Piece::Cartan(h) => cartan = cartan + h.scale(&(&s * &c)),
        }
    }
    if !cartan.is_zero() {
        out.push((rat(1), Piece::Cartan(cartan)));
    }
    out
}

pub fn word_shift(w: &[Gen]) -> [i64; NVARS] {
    let mut s = [0; NVARS];
    for g in w {
        for (x, y) in s.iter_mut().zip(g.weight_shift()) {
            *x += y;
        }
    }
    s
}

/// `[(g, n)]` runs to a flat word.
pub fn expand(runs: &[(Gen, u32)]) -> Vec<Gen> {
    runs.iter().flat_map(|&(g, n)| core::iter::repeat(g).take(n as usize)).collect()
}

/// A flat word to `[(g, n)]` runs.
pub fn runs(word: &[Gen]) -> Vec<(Gen, u32)> {
    let mut out: Vec<(Gen, u32)> = Vec::new();
    for &g in word {
        match out.last_mut() {
            Some((h, n)) if *h == g => *n += 1,
            _ => out.push((g, 1)),
        }
    }
    out
}

/// `∏ n!` over the runs of a word.
pub fn run_factorials(word: &[Gen]) -> Rat {
    runs(word).iter().fold(Rat::one(), |acc, (_, n)| acc * Rat::from_integer(factorial(*n)))
}

/// Sum of terms `word · Q(h0, h1, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Uea {
    terms: BTreeMap<Vec<Gen>, HPoly>,
}

impl Uea {
    pub fn zero() -> Uea {
        Uea { terms: BTreeMap::new() }
    }

    pub fn one() -> Uea {
        Uea::term(Vec::new(), HPoly::one(NVARS))
    }

    /// A single term; the caller guarantees that `word` is ordered.
    pub fn term(word: Vec<Gen>, coeff: HPoly) -> Uea {
        let mut u = Uea::zero();
        u.add_term(word, coeff);
        u
    }

    pub fn cartan(p: HPoly) -> Uea {
        Uea::term(Vec::new(), p)
    }

    pub fn add_term(&mut self, word: Vec<Gen>, coeff: HPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                let s = core::mem::replace(c, HPoly::zero(NVARS)) + coeff;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Uea, c: &HPoly) {
        for (w, p) in &other.terms {
            self.add_term(w.clone(), p * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &HPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, word: &[Gen]) -> HPoly {
        self.terms.get(word).cloned().unwrap_or_else(|| HPoly::zero(NVARS))
    }

    pub fn scale(&self, c: &Rat) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p.scale(c));
        }
        out
    }

    pub fn mul_right_poly(&self, q: &HPoly) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &self.terms {
            out.add_term(w.clone(), p * q);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&HPoly) -> HPoly) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &self.terms {
            out.add_term(w.clone(), f(p));
        }
        out
    }

    pub fn add(&self, other: &Uea) -> Uea {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Uea) -> Uea {
        self.add(&other.scale(&rat(-1)))
    }

    /// `P_h`: the part with empty word.
    pub fn project_h(&self) -> HPoly {
        self.coefficient(&[])
    }

    /// `P_{b⁻}`: drops every term containing a positive root vector.
    pub fn project_bminus(&self) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &self.terms {
            if w.iter().all(|g| !g.positive) {
                out.add_term(w.clone(), p.clone());
            }
        }
        out
    }

    pub fn in_borel_minus(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|g| !g.positive))
    }

    /// `u(λ) = Σ F_π Q_π(λ)`.
    pub fn evaluate_at(&self, point: &[Rat]) -> Result<Uea> {
        if !self.in_borel_minus() {
            return Err(Error::NotInBorel);
        }
        let mut out = Uea::zero();
        for (w, p) in &self.terms {
            out.add_term(w.clone(), HPoly::constant(NVARS, p.eval(point)));
        }
        Ok(out)
    }

    pub fn evaluate(&self, lambda: &Weight) -> Result<Uea> {
        self.evaluate_at(&weight_point(lambda))
    }

    /// Numeric coefficient of each word; `None` if some coefficient still
    /// involves a Cartan variable.
    pub fn constant_coefficients(&self) -> Option<BTreeMap<Vec<Gen>, Rat>> {
        let mut out = BTreeMap::new();
        for (w, p) in &self.terms {
            if !p.is_constant() {
                return None;
            }
            out.insert(w.clone(), p.constant_term());
        }
        Some(out)
    }

    /// Coordinates in the divided-power PBW basis `f_π = ∏ f_β^{(π(β))}`.
    pub fn pbw_divided_coordinates(&self) -> Option<BTreeMap<Vec<Gen>, Rat>> {
        let mut out = self.constant_coefficients()?;
        for (w, c) in out.iter_mut() {
            *c *= run_factorials(w);
        }
        Some(out)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Common weight `(g0, g1)` with `wt = −(g0 α0 + g1 α1)` for `U(b⁻)`
    /// elements, if homogeneous.
    pub fn weight(&self) -> Option<[i64; 2]> {
        let mut it = self.terms.keys().map(|w| {
            w.iter().fold([0, 0], |acc, g| {
                let s = if g.positive { -1 } else { 1 };
                [acc[0] + s * g.g0, acc[1] + s * g.g1]
            })
        });
        let first = it.next()?;
        if it.all(|x| x == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(HPoly::is_integral)
    }

    pub fn is_d_free(&self) -> bool {
        self.terms.values().all(|p| p.free_of(VAR_D))
    }
}

pub fn weight_point(lambda: &Weight) -> Vec<Rat> {
    assert_eq!(lambda.h.len(), 2, "the enveloping algebra engine is for type A1 only");
    vec![rat(lambda.h[0]), rat(lambda.h[1]), lambda.d.clone()]
}

pub fn format_word(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    runs(w)
        .iter()
        .map(|(g, n)| if *n == 1 { g.name() } else { format!("{}^{}", g.name(), n) })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut entries: Vec<(&Vec<Gen>, &HPoly)> = self.terms.iter().collect();
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        for (k, (w, p)) in entries.into_iter().enumerate() {
            let word = format_word(w);
            let (neg, body) = if p.is_constant() {
                let c = p.constant_term();
                let mag = c.abs();
                let body = if mag.is_one() && !w.is_empty() {
                    word
                } else if w.is_empty() {
                    mag.to_string()
                } else {
                    format!("{mag} {word}")
                };
                (c.is_negative(), body)
            } else if p.num_terms() == 1 && p.terms().next().map(|(_, c)| c.is_negative()).unwrap_or(false) {
                (true, format!("{word} ({})", p.scale(&rat(-1)).format_with(&VAR_NAMES)))
            } else {
                (false, format!("{word} ({})", p.format_with(&VAR_NAMES)))
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}

/// Sort key of the canonical PBW order: α0-coefficient, imaginary before
/// real, δ-degree, then α1-coefficient. Negative root vectors precede
/// positive ones.
fn canonical_key(g: &Gen) -> (i64, u8, i64, i64) {
    (g.g0, if g.is_imaginary() { 0 } else { 1 }, g.delta_degree(), g.g1)
}

/// Straightening engine with memoized products.
pub struct Engine {
    rightmost: Option<Gen>,
    memo: BTreeMap<(Gen, Vec<Gen>), Uea>,
    brackets: BTreeMap<(Gen, Gen), Vec<(Rat, Piece)>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    /// Canonical order.
    pub fn new() -> Engine {
        Engine { rightmost: None, memo: BTreeMap::new(), brackets: BTreeMap::new() }
    }

    /// Canonical order except that `g` is moved after every other negative
    /// root vector.
    pub fn with_rightmost(g: Gen) -> Engine {
        Engine { rightmost: Some(g), ..Engine::new() }
    }

    pub fn cmp_gen(&self, a: &Gen, b: &Gen) -> Ordering {
        let ka = (a.positive, Some(*a) == self.rightmost, canonical_key(a));
        let kb = (b.positive, Some(*b) == self.rightmost, canonical_key(b));
        ka.cmp(&kb)
    }

    pub fn is_ordered(&self, w: &[Gen]) -> bool {
        w.windows(2).all(|p| self.cmp_gen(&p[0], &p[1]) != Ordering::Greater)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn bracket(&mut self, a: Gen, b: Gen) -> Vec<(Rat, Piece)> {
        self.brackets.entry((a, b)).or_insert_with(|| gen_bracket(a, b)).clone()
    }

    /// `x · w` for an ordered word `w`.
    fn left_multiply(&mut self, x: Gen, w: &[Gen]) -> Uea {
        if w.is_empty() || self.cmp_gen(&x, &w[0]) != Ordering::Greater {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(x);
            word.extend_from_slice(w);
            return Uea::term(word, HPoly::one(NVARS));
        }
        let key = (x, w.to_vec());
        if let Some(u) = self.memo.get(&key) {
            return u.clone();
        }
        let w0 = w[0];
        let rest = &w[1..];
        let mut out = Uea::zero();
        // w0 · (x · rest)
        let inner = self.left_multiply(x, rest);
        for (v, p) in &inner.terms {
            let prod = self.left_multiply(w0, v);
            out.add_scaled(&prod, p);
        }
        // [x, w0] · rest
        for (c, piece) in self.bracket(x, w0) {
            match piece {
                Piece::Root(_, g) => {
                    let prod = self.left_multiply(g, rest);
                    out.add_scaled(&prod, &HPoly::constant(NVARS, c));
                }
                Piece::Cartan(h) => {
                    let moved = h.shift(&word_shift(rest)).scale(&c);
                    out.add_term(rest.to_vec(), moved);
                }
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// Normal form of an arbitrary word of root vectors.
    pub fn normal_word(&mut self, w: &[Gen]) -> Uea {
        let mut acc = Uea::one();
        for &x in w.iter().rev() {
            let mut next = Uea::zero();
            for (v, p) in &acc.terms {
                let prod = self.left_multiply(x, v);
                next.add_scaled(&prod, p);
            }
            acc = next;
        }
        acc
    }

    /// Normal form of `∏ g^{n}` over the runs.
    pub fn normal_runs(&mut self, runs: &[(Gen, u32)]) -> Uea {
        self.normal_word(&expand(runs))
    }

    /// Normal form of a product of divided powers `∏ g^{(n)}`.
    pub fn divided_power_word(&mut self, runs: &[(Gen, u32)]) -> Uea {
        let u = self.normal_runs(runs);
        let denom = runs.iter().fold(Rat::one(), |acc, (_, n)| acc * Rat::from_integer(factorial(*n)));
        u.scale(&(Rat::one() / denom))
    }

    /// Rewrites an element given as words (in any order) into normal form.
    pub fn normalize(&mut self, u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &u.terms {
            let v = self.normal_word(w);
            out.add_scaled(&v, p);
        }
        out
    }

    pub fn multiply(&mut self, a: &Uea, b: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (w1, p1) in &a.terms {
            for (w2, p2) in &b.terms {
                let shifted = p1.shift(&word_shift(w2));
                let mut prod = Uea::term(w2.clone(), HPoly::one(NVARS));
                for &x in w1.iter().rev() {
                    let mut next = Uea::zero();
                    for (v, p) in &prod.terms {
                        let m = self.left_multiply(x, v);
                        next.add_scaled(&m, p);
                    }
                    prod = next;
                }
                out.add_scaled(&prod, &(&shifted * p2));
            }
        }
        out
    }

    /// `P_{b⁻}(e_i^{(n)} u)`.
    pub fn e_divided_projection(&mut self, i: usize, n: u32, u: &Uea) -> Uea {
        let e = Uea::term(vec![Gen::e_simple(i); n as usize], HPoly::one(NVARS));
        self.multiply(&e, u).project_bminus().scale(&(Rat::one() / Rat::from_integer(factorial(n))))
    }

    /// `e_i^{(n)}·u·v⁺` in `M(λ)` for `u ∈ U(n⁻)`, with `λ` given by its
    /// values on `h0, h1, d`.
    pub fn e_action_at(&mut self, i: usize, n: u32, u: &Uea, point: &[Rat]) -> Result<Uea> {
        self.e_divided_projection(i, n, u).evaluate_at(point)
    }

    /// The transpose antiautomorphism: `f_β ↔ e_β`, identity on `h`.
    pub fn tau(&mut self, u: &Uea) -> Uea {
        let mut out = Uea::zero();
        for (w, p) in &u.terms {
            let rev: Vec<Gen> = w.iter().rev().map(Gen::tau).collect();
            let v = self.normal_word(&rev);
            out.add_scaled(&v, &p.shift(&word_shift(&rev)));
        }
        out
    }

    /// `C(u, v) = P_h(τ(u)·v)`.
    pub fn contravariant(&mut self, u: &Uea, v: &Uea) -> HPoly {
        let tu = self.tau(u);
        self.multiply(&tu, v).project_h()
    }

    /// Coordinates of an evaluated element in a basis of divided-power words.
    pub fn divided_power_coordinates(&mut self, u: &Uea, basis: &[Vec<(Gen, u32)>]) -> Result<DividedCoordinates> {
        let target =
            u.constant_coefficients().ok_or_else(|| Error::Basis("element has non-constant coefficients".into()))?;
        let images: Vec<BTreeMap<Vec<Gen>, Rat>> = basis
            .iter()
            .map(|b| {
                self.divided_power_word(b)
                    .constant_coefficients()
                    .ok_or_else(|| Error::Basis("basis word leaves U(n⁻)".into()))
            })
            .collect::<Result<_>>()?;
        let mut monos: Vec<Vec<Gen>> = target.keys().cloned().collect();
        for im in &images {
            monos.extend(im.keys().cloned());
        }
        monos.sort();
        monos.dedup();
        let a: Vec<Vec<Rat>> = monos
            .iter()
            .map(|m| images.iter().map(|im| im.get(m).cloned().unwrap_or_else(Rat::zero)).collect())
            .collect();
        if linalg::rank(&a) < basis.len() {
            return Err(Error::Basis(format!("{} words have rank {}", basis.len(), linalg::rank(&a))));
        }
        let b: Vec<Rat> = monos.iter().map(|m| target.get(m).cloned().unwrap_or_else(Rat::zero)).collect();
        let coords =
            linalg::solve(&a, &b).ok_or_else(|| Error::Basis("element is outside the span of the words".into()))?;
        let integral = coords.iter().all(|c| c.is_integer());
        Ok(DividedCoordinates { coords, integral })
    }

    /// `f_α^m F_ω = Σ F_π f_α^{m−i} C_{ω,π,i}(m)` with `π(α) = 0`, sampled at
    /// `m = 0..=m_max` (raised to the absorption bound of `ω` if smaller)
    /// and interpolated. Keys are `(F_π, i)`; values are
    /// coefficient vectors in `m`, constant term first.
    pub fn c_polynomials(&mut self, omega: &[Gen], alpha: usize, m_max: u32) -> Result<CPolynomials> {
        let fa = Gen::f_simple(alpha);
        if self.rightmost == Some(fa) {
            return c_polys_in(self, omega, fa, m_max);
        }
        c_polys_in(&mut Engine::with_rightmost(fa), omega, fa, m_max)
    }

    pub fn rightmost(&self) -> Option<Gen> {
        self.rightmost
    }
}

/// Most copies of `f_α` that straightening can fold into `F_ω`: each letter
/// `f_β` takes up `k` of them while `β + kα` stays a root. This bounds
/// `deg_m C_{ω,π,i}`.
fn absorption_bound(omega: &[Gen], fa: Gen) -> u32 {
    let [a0, a1] = fa.root();
    omega
        .iter()
        .map(|g| {
            let [g0, g1] = g.root();
            (1..).take_while(|&k| is_positive_root(g0 + k * a0, g1 + k * a1)).count() as u32
        })
        .sum()
}

fn c_polys_in(eng: &mut Engine, omega: &[Gen], fa: Gen, m_max: u32) -> Result<CPolynomials> {
    let m_max = m_max.max(absorption_bound(omega, fa));
    let mut samples: BTreeMap<(Vec<Gen>, i64), Vec<Rat>> = BTreeMap::new();
    let count = m_max as usize + 1;
    for m in 0..=m_max {
        let mut word = vec![fa; m as usize];
        word.extend_from_slice(omega);
        let u = eng.normal_word(&word);
        for (w, p) in u.terms() {
            if !p.is_constant() {
                return Err(Error::Rescaling(format!("Cartan term in {}", format_word(w))));
            }
            let j = w.iter().rev().take_while(|g| **g == fa).count();
            let pi = w[..w.len() - j].to_vec();
            let i = m as i64 - j as i64;
            samples.entry((pi, i)).or_insert_with(|| vec![Rat::zero(); count])[m as usize] = p.constant_term();
        }
    }
    let xs: Vec<Rat> = (0..=m_max).map(|m| rat(m as i64)).collect();
    let mut out = BTreeMap::new();
    for (key, ys) in samples {
        let mut c = interpolate(&xs, &ys);
        while c.len() > 1 && c.last().map(Zero::is_zero).unwrap_or(false) {
            c.pop();
        }
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::Rescaling(format!(
                "C for {} at i = {} has coefficients {:?}",
                format_word(&key.0),
                key.1,
                c.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )));
        }
        out.insert(key, c);
    }
    Ok(out)
}

pub type CPolynomials = BTreeMap<(Vec<Gen>, i64), Vec<Rat>>;

#[derive(Clone, Debug, PartialEq)]
pub struct DividedCoordinates {
    pub coords: Vec<Rat>,
    pub integral: bool,
}

/// Positive roots `β ≤ target` of affine sl₂, in canonical order.
fn roots_below(target: [i64; 2]) -> Vec<Gen> {
    let mut out = Vec::new();
    for g0 in 0..=target[0] {
        for g1 in 0..=target[1] {
            if is_positive_root(g0, g1) {
                out.push(Gen::f(g0, g1));
            }
        }
    }
    out.sort_by_key(canonical_key);
    out
}

/// All PBW monomials of weight `−β` in canonical order, `β = (g0, g1)`.
pub fn weight_space_basis(beta: [i64; 2], max_height: i64) -> Result<Vec<Vec<Gen>>> {
    if beta[0] < 0 || beta[1] < 0 {
        return Ok(Vec::new());
    }
    if beta[0] + beta[1] > max_height {
        return Err(Error::BudgetExceeded(format!("height {} exceeds {max_height}", beta[0] + beta[1])));
    }
    let roots = roots_below(beta);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions(&roots, 0, beta, &mut cur, &mut out);
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| cmp_words(a, b)));
    Ok(out)
}

fn cmp_words(a: &[Gen], b: &[Gen]) -> Ordering {
    let ka: Vec<_> = a.iter().map(canonical_key).collect();
    let kb: Vec<_> = b.iter().map(canonical_key).collect();
    ka.cmp(&kb)
}

fn partitions(roots: &[Gen], start: usize, left: [i64; 2], cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
    if left == [0, 0] {
        out.push(cur.clone());
        return;
    }
    for k in start..roots.len() {
        let g = roots[k];
        if g.g0 <= left[0] && g.g1 <= left[1] {
            cur.push(g);
            partitions(roots, k, [left[0] - g.g0, left[1] - g.g1], cur, out);
            cur.pop();
        }
    }
}

/// Kostant partition function for affine sl₂ (all root multiplicities 1).
pub fn kostant_partition(beta: [i64; 2]) -> usize {
    if beta[0] < 0 || beta[1] < 0 {
        return 0;
    }
    let roots = roots_below(beta);
    let mut out = Vec::new();
    partitions(&roots, 0, beta, &mut Vec::new(), &mut out);
    out.len()
}

/// Words `f_{i1}^{(n1)} f_{i2}^{(n2)} ⋯` in the simple root vectors with
/// `i_k ≠ i_{k+1}` and total weight `−β`.
pub fn divided_power_words(beta: [i64; 2]) -> Vec<Vec<(Gen, u32)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    dp_words(beta, None, &mut cur, &mut out);
    out
}

fn dp_words(left: [i64; 2], last: Option<usize>, cur: &mut Vec<(Gen, u32)>, out: &mut Vec<Vec<(Gen, u32)>>) {
    if left == [0, 0] {
        out.push(cur.clone());
        return;
    }
    for i in [1usize, 0] {
        if Some(i) == last {
            continue;
        }
        for n in 1..=left[i] {
            let mut next = left;
            next[i] -= n;
            cur.push((Gen::f_simple(i), n as u32));
            dp_words(next, Some(i), cur, out);
            cur.pop();
        }
    }
}

pub fn format_runs(runs: &[(Gen, u32)]) -> String {
    runs.iter()
        .map(|(g, n)| if *n == 1 { g.name() } else { format!("{}^({})", g.name(), n) })
        .collect::<Vec<_>>()
        .join(" ")
}
