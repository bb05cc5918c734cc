//! Weight spaces of Verma modules and their simple quotients for affine
//! sl₂: contravariant forms, determinants, Z-form lattices and
//! homomorphism certificates modulo p.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, gcd_i64, pow_i64, rat, valuation_rat, Rat};
use crate::error::{Error, Result};
use crate::linalg;
use crate::pbw::{self, Engine, Gen, Uea, NVARS};
use crate::poly::HPoly;
use crate::rootdata::{Family, RootDatum, RootElement, Weight};
use crate::shapovalov::{self, Builder, ShapovalovElement};
use crate::weylgroup::{self, MirrorWitness};

/// Largest weight space handled.
pub const DEFAULT_DIMENSION_BUDGET: usize = 60;
/// Largest height of `β` handled.
pub const DEFAULT_HEIGHT_BUDGET: i64 = 12;
/// Cap on the number of word subsets tried when looking for a word basis.
const WORD_BASIS_SEARCH: usize = 20_000;

pub type Runs = Vec<(Gen, u32)>;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpace {
    pub base_weight: Weight,
    pub offset: RootElement,
    pub basis: Vec<Vec<Gen>>,
    pub gram: Vec<Vec<Rat>>,
}

impl WeightSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.gram)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantReport {
    pub beta: RootElement,
    pub dimension: usize,
    pub determinant: HPoly,
    /// `(linear form, exponent)` pairs of the product formula.
    pub factors: Vec<(HPoly, u32)>,
    pub formula: HPoly,
    /// `det / formula` when it is a nonzero constant.
    pub ratio: Option<Rat>,
}

impl DeterminantReport {
    pub fn passed(&self) -> bool {
        self.ratio.is_some()
    }
}

/// The image of `(U_Z)_{−β} v̄⁺` in `L(λ)_{λ−β}`. Vectors of `L(λ)` are
/// represented by their contravariant pairings with the PBW basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientLattice {
    pub lambda: Weight,
    pub beta: RootElement,
    pub words: Vec<Runs>,
    pub images: Vec<Vec<Rat>>,
    /// A Z-basis of the lattice in Hermite normal form.
    pub hnf: Vec<Vec<Rat>>,
    /// Indices of words whose images form a Z-basis, when one was found.
    pub word_basis: Option<Vec<usize>>,
}

impl QuotientLattice {
    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// The basis used for coordinates: the word basis if there is one.
    pub fn basis(&self) -> Vec<Vec<Rat>> {
        match &self.word_basis {
            Some(ix) => ix.iter().map(|&i| self.images[i].clone()).collect(),
            None => self.hnf.clone(),
        }
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match &self.word_basis {
            Some(ix) => ix.iter().map(|&i| pbw::format_runs(&self.words[i])).collect(),
            None => (0..self.hnf.len()).map(|i| format!("b{i}")).collect(),
        }
    }

    /// Rational coordinates of a vector of `L(λ)_{λ−β}` in [`Self::basis`].
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        linalg::coordinates(&self.basis(), v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    Verma,
    Weyl,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub i: usize,
    pub n: u32,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomCertificate {
    pub kind: HomKind,
    pub lambda: Weight,
    pub mu: Weight,
    pub gamma: RootElement,
    pub d: i64,
    pub e: u32,
    pub m: i64,
    pub p: i64,
    pub eta: usize,
    pub g: u32,
    pub basis_labels: Vec<String>,
    pub coordinates: Vec<BigInt>,
    pub checks: Vec<HomCheck>,
}

impl HomCertificate {
    pub fn valid(&self) -> bool {
        let pg = BigInt::from(self.p).pow(self.g);
        let reduced_nonzero = self.coordinates.iter().any(|c| (c % &pg).is_zero() && !((c / &pg) % self.p).is_zero());
        let divisible = self.coordinates.iter().all(|c| (c % &pg).is_zero());
        divisible && reduced_nonzero && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub hypothesis: Option<String>,
    pub basis: Vec<String>,
    /// Per `k`, the coordinates of every word image in the basis.
    pub coefficients: Vec<Vec<Vec<Rat>>>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.hypothesis.is_none() && self.coefficients.windows(2).all(|w| w[0] == w[1])
    }
}

/// Weight-space computations in `M(λ)` and `L(λ)` for affine sl₂.
pub struct Verma {
    datum: RootDatum,
    engine: Engine,
    builder: Builder,
    grams: BTreeMap<[i64; 2], Vec<Vec<HPoly>>>,
    pub dimension_budget: usize,
    pub height_budget: i64,
}

fn root_key(beta: &RootElement) -> Result<[i64; 2]> {
    match beta.coeffs[..] {
        [a, b] => Ok([a, b]),
        _ => Err(Error::Scope("weight spaces are computed for affine sl2 only".into())),
    }
}

impl Verma {
    pub fn new(datum: &RootDatum) -> Result<Verma> {
        if datum.kind.family != Family::A || datum.rank != 1 {
            return Err(Error::Scope(format!("Verma computations need A1, got {}", datum.kind)));
        }
        Ok(Verma {
            datum: datum.clone(),
            engine: Engine::new(),
            builder: Builder::new(datum)?,
            grams: BTreeMap::new(),
            dimension_budget: DEFAULT_DIMENSION_BUDGET,
            height_budget: DEFAULT_HEIGHT_BUDGET,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn engine(&mut self) -> &mut Engine {
        &mut self.engine
    }

    pub fn builder(&mut self) -> &mut Builder {
        &mut self.builder
    }

    pub fn weight_space_basis(&self, beta: &RootElement) -> Result<Vec<Vec<Gen>>> {
        let b = root_key(beta)?;
        let basis = pbw::weight_space_basis(b, self.height_budget)?;
        if basis.len() > self.dimension_budget {
            return Err(Error::BudgetExceeded(format!("dimension {} exceeds {}", basis.len(), self.dimension_budget)));
        }
        Ok(basis)
    }

    /// `e_i^{(n)}·u·v⁺_λ`, as an element of `U(n⁻)`.
    pub fn e_action(&mut self, i: usize, n: u32, u: &Uea, lambda: &Weight) -> Result<Uea> {
        self.engine.e_action_at(i, n, u, &pbw::weight_point(lambda))
    }

    /// `C(F_π, F_ω)` over the PBW basis of weight `−β`, as polynomials.
    pub fn symbolic_gram(&mut self, beta: &RootElement) -> Result<Vec<Vec<HPoly>>> {
        let key = root_key(beta)?;
        if let Some(g) = self.grams.get(&key) {
            return Ok(g.clone());
        }
        let basis = self.weight_space_basis(beta)?;
        let n = basis.len();
        let mut gram = vec![vec![HPoly::zero(NVARS); n]; n];
        for a in 0..n {
            let u = Uea::term(basis[a].clone(), HPoly::one(NVARS));
            for b in a..n {
                let v = Uea::term(basis[b].clone(), HPoly::one(NVARS));
                let c = self.engine.contravariant(&u, &v);
                gram[a][b] = c.clone();
                gram[b][a] = c;
            }
        }
        self.grams.insert(key, gram.clone());
        Ok(gram)
    }

    pub fn contravariant_gram(&mut self, lambda: &Weight, beta: &RootElement) -> Result<WeightSpace> {
        let basis = self.weight_space_basis(beta)?;
        let point = pbw::weight_point(lambda);
        let gram = self.symbolic_gram(beta)?.iter().map(|row| row.iter().map(|p| p.eval(&point)).collect()).collect();
        Ok(WeightSpace { base_weight: lambda.clone(), offset: beta.clone(), basis, gram })
    }

    /// Symbolic determinant of the Gram matrix against the product formula.
    pub fn determinant_check(&mut self, beta: &RootElement, height_bound: i64) -> Result<DeterminantReport> {
        if beta.height() > height_bound {
            return Err(Error::BudgetExceeded(format!("height {} exceeds {height_bound}", beta.height())));
        }
        let gram = self.symbolic_gram(beta)?;
        let dimension = gram.len();
        let determinant = linalg::bareiss_det(gram, NVARS);
        let factors = determinant_factors(&self.datum, beta)?;
        let mut formula = HPoly::one(NVARS);
        for (l, k) in &factors {
            formula = &formula * &l.pow(*k);
        }
        let ratio =
            determinant.div_exact(&formula).filter(|q| q.is_constant() && !q.is_zero()).map(|q| q.constant_term());
        Ok(DeterminantReport { beta: beta.clone(), dimension, determinant, factors, formula, ratio })
    }

    /// Coordinates of an evaluated element of `U(n⁻)_{−β}` in the PBW basis.
    fn pbw_vector(&self, basis: &[Vec<Gen>], u: &Uea) -> Result<Vec<Rat>> {
        let c = u.constant_coefficients().ok_or_else(|| Error::Basis("element is not evaluated".into()))?;
        let index: BTreeMap<&Vec<Gen>, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut v = vec![Rat::zero(); basis.len()];
        for (w, x) in c {
            if x.is_zero() {
                continue;
            }
            let i = index
                .get(&w)
                .ok_or_else(|| Error::Basis(format!("{} is not in the weight space", pbw::format_word(&w))))?;
            v[*i] = x;
        }
        Ok(v)
    }

    /// The class of `u·v̄⁺_λ` in `L(λ)_{λ−β}`.
    pub fn quotient_image(&mut self, lambda: &Weight, beta: &RootElement, u: &Uea) -> Result<Vec<Rat>> {
        let ws = self.contravariant_gram(lambda, beta)?;
        let v = self.pbw_vector(&ws.basis, u)?;
        Ok(linalg::mat_vec(&ws.gram, &v))
    }

    pub fn simple_quotient_lattice(&mut self, lambda: &Weight, beta: &RootElement) -> Result<QuotientLattice> {
        let ws = self.contravariant_gram(lambda, beta)?;
        let words = pbw::divided_power_words(root_key(beta)?);
        let mut images = Vec::with_capacity(words.len());
        for w in &words {
            let u = self.engine.divided_power_word(w);
            let v = self.pbw_vector(&ws.basis, &u)?;
            images.push(linalg::mat_vec(&ws.gram, &v));
        }
        let all: Vec<Rat> = images.iter().flatten().cloned().collect();
        let den = common_denominator(&all);
        let scaled: Vec<Vec<BigInt>> = images
            .iter()
            .map(|v| v.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let hnf: Vec<Vec<Rat>> = linalg::hnf_basis(&scaled)
            .into_iter()
            .map(|r| r.into_iter().map(|x| Rat::new(x, den.clone())).collect())
            .collect();
        let word_basis = find_word_basis(&images, hnf.len());
        Ok(QuotientLattice { lambda: lambda.clone(), beta: beta.clone(), words, images, hnf, word_basis })
    }

    /// Hypotheses shared by both certificates. Returns the mirror witness.
    fn hypotheses(
        &self,
        kind: HomKind,
        lambda: &Weight,
        gamma: &RootElement,
        d: i64,
        eta: usize,
        p: i64,
    ) -> Result<(Weight, MirrorWitness)> {
        let datum = &self.datum;
        let mut failed = Vec::new();
        if d <= 0 {
            failed.push(format!("D = {d} is not positive"));
        }
        if eta >= datum.n() {
            return Err(Error::Hypothesis(vec![format!("η = {eta} is not a simple index")]));
        }
        if !datum.is_positive_real_root(gamma) {
            return Err(Error::Hypothesis(vec!["γ is not a positive real root".into()]));
        }
        let g = datum.coroot_coeffs(gamma)?;
        let value = datum.pairing(lambda, gamma)?;
        let mu = datum.subtract_root(lambda, d, gamma);
        // Several e can give the same μ; the largest one is the weakest
        // constraint D·g_η < p^e.
        let witness = if lambda.is_dominant() {
            weylgroup::mirror_images(datum, lambda, gamma, p)?
                .into_iter()
                .filter(|(_, m)| *m == mu)
                .map(|(w, _)| w)
                .last()
        } else {
            None
        };
        if witness.is_none() {
            failed.push(format!("no e with λ − Dγ the nearest lower p^e-reflection (⟨λ+ρ,γ^∨⟩ = {value}, p = {p})"));
        }
        if !shapovalov::is_eta_good_length(datum, gamma, eta) {
            failed.push(format!("(α_{eta},α_{eta}) ≠ (γ,γ)"));
        }
        if gcd_i64(g[eta], p) != 1 {
            failed.push(format!("gcd(g_{eta}, p) = {} ≠ 1", gcd_i64(g[eta], p)));
        }
        let dg = d * g[eta];
        if let Some(w) = &witness {
            if dg >= pow_i64(p, w.e) {
                failed.push(format!("D·g_η = {dg} ≥ p^e = {}", pow_i64(p, w.e)));
            }
        }
        if kind == HomKind::Weyl {
            let a = datum.pairing(lambda, &datum.simple_root(eta))?;
            if dg >= a {
                failed.push(format!("D·g_η = {dg} ≥ ⟨λ+ρ,α_{eta}^∨⟩ = {a}"));
            }
        }
        if d * gamma.height() > self.builder.budget {
            failed.push(format!("D·ht(γ) = {} exceeds the budget {}", d * gamma.height(), self.builder.budget));
        }
        match witness {
            Some(w) if failed.is_empty() => Ok((mu, w)),
            _ => Err(Error::Hypothesis(failed)),
        }
    }

    fn z_eta(&mut self, gamma: &RootElement, d: i64, eta: usize) -> Result<ShapovalovElement> {
        let z = self.builder.integral_shapovalov(gamma, d as u32)?;
        self.builder.eta_avoiding(&z, eta)
    }

    /// Reduction mod p of `M(μ) → M(λ)`, checked in divided PBW coordinates.
    pub fn verma_hom_check(
        &mut self,
        lambda: &Weight,
        gamma: &RootElement,
        d: i64,
        eta: usize,
        p: i64,
    ) -> Result<HomCertificate> {
        let (mu, w) = self.hypotheses(HomKind::Verma, lambda, gamma, d, eta, p)?;
        let z = self.z_eta(gamma, d, eta)?.evaluate(lambda)?;
        let zc = z.pbw_divided_coordinates().ok_or_else(|| Error::Construction("Z_η(λ) is not evaluated".into()))?;
        let labels: Vec<String> = zc.keys().map(|w| divided_label(w)).collect();
        let coords: Vec<Rat> = zc.values().cloned().collect();
        let g = min_valuation(&coords, p).ok_or(Error::NonzeroImage)?;
        let coordinates = integral_vector(&coords, "Z_η(λ) has non-integral divided coordinates")?;
        let scale = Rat::one() / Rat::from_integer(BigInt::from(p).pow(g));
        let zs = z.scale(&scale);
        let target = gamma.scaled(d);
        let mut checks = Vec::new();
        for (i, n) in e_range(&target) {
            let image = self.e_action(i, n, &zs, lambda)?;
            let pass = match image.pbw_divided_coordinates() {
                Some(c) => c.values().all(|x| divisible_by(x, p)),
                None => false,
            };
            checks.push(HomCheck { i, n, pass });
        }
        Ok(HomCertificate {
            kind: HomKind::Verma,
            lambda: lambda.clone(),
            mu,
            gamma: gamma.clone(),
            d,
            e: w.e,
            m: w.m,
            p,
            eta,
            g,
            basis_labels: labels,
            coordinates,
            checks,
        })
    }

    /// Reduction mod p of the map `V(μ) → V(λ)`, checked in the lattices
    /// `L(λ)_Z`.
    pub fn weyl_hom_check(
        &mut self,
        lambda: &Weight,
        gamma: &RootElement,
        d: i64,
        eta: usize,
        p: i64,
    ) -> Result<HomCertificate> {
        let (mu, w) = self.hypotheses(HomKind::Weyl, lambda, gamma, d, eta, p)?;
        let z = self.z_eta(gamma, d, eta)?.evaluate(lambda)?;
        let target = gamma.scaled(d);
        let lattice = self.simple_quotient_lattice(lambda, &target)?;
        let image = self.quotient_image(lambda, &target, &z)?;
        let coords = lattice
            .coordinates(&image)
            .ok_or_else(|| Error::Construction("Z_η v̄⁺ is outside the lattice span".into()))?;
        let g = min_valuation(&coords, p).ok_or(Error::NonzeroImage)?;
        let coordinates = integral_vector(&coords, "Z_η v̄⁺ is not in L(λ)_Z")?;
        let scale = Rat::one() / Rat::from_integer(BigInt::from(p).pow(g));
        let zs = z.scale(&scale);
        let mut checks = Vec::new();
        for (i, n) in e_range(&target) {
            let beta = target.sub(&RootElement::simple(2, i).scaled(i64::from(n)));
            let lat = self.simple_quotient_lattice(lambda, &beta)?;
            let u = self.e_action(i, n, &zs, lambda)?;
            let v = self.quotient_image(lambda, &beta, &u)?;
            let pass = match lat.coordinates(&v) {
                Some(c) => c.iter().all(|x| divisible_by(x, p)),
                None => false,
            };
            checks.push(HomCheck { i, n, pass });
        }
        Ok(HomCertificate {
            kind: HomKind::Weyl,
            lambda: lambda.clone(),
            mu,
            gamma: gamma.clone(),
            d,
            e: w.e,
            m: w.m,
            p,
            eta,
            g,
            basis_labels: lattice.basis_labels(),
            coordinates,
            checks,
        })
    }

    /// Coordinates of all word images in a fixed word basis of
    /// `L(λ + kϖ_η)_{λ+kϖ_η−β}` for `k = 0..=k_max`.
    pub fn basis_stability_check(
        &mut self,
        lambda: &Weight,
        beta: &RootElement,
        eta: usize,
        k_max: u32,
    ) -> Result<StabilityReport> {
        let a = self.datum.pairing(lambda, &self.datum.simple_root(eta))?;
        let m = beta.coeffs.get(eta).copied().unwrap_or(0);
        if a <= m {
            return Ok(StabilityReport {
                hypothesis: Some(format!("⟨λ+ρ,α_{eta}^∨⟩ = {a} ≤ {m}")),
                basis: Vec::new(),
                coefficients: Vec::new(),
            });
        }
        let first = self.simple_quotient_lattice(lambda, beta)?;
        let Some(ix) = first.word_basis.clone() else {
            return Ok(StabilityReport {
                hypothesis: Some("no word basis at k = 0".into()),
                basis: Vec::new(),
                coefficients: Vec::new(),
            });
        };
        let basis = first.basis_labels();
        let omega = self.datum.fundamental_weight(eta);
        let mut coefficients = Vec::new();
        for k in 0..=k_max {
            let lk = lambda.add(&omega.scaled(i64::from(k)));
            let lat = self.simple_quotient_lattice(&lk, beta)?;
            let b: Vec<Vec<Rat>> = ix.iter().map(|&i| lat.images[i].clone()).collect();
            let row: Vec<Vec<Rat>> =
                lat.images.iter().map(|v| linalg::coordinates(&b, v).unwrap_or_default()).collect();
            coefficients.push(row);
        }
        Ok(StabilityReport { hypothesis: None, basis, coefficients })
    }
}

/// `(i, n)` with `n ≤ ht(β)` and `β − nα_i ≥ 0`.
fn e_range(target: &RootElement) -> Vec<(usize, u32)> {
    let bound = target.height();
    let mut out = Vec::new();
    for i in 0..target.coeffs.len() {
        for n in 1..=bound.min(target.coeffs[i]) {
            out.push((i, n as u32));
        }
    }
    out
}

fn divided_label(w: &[Gen]) -> String {
    pbw::format_runs(&pbw::runs(w))
}

fn divisible_by(x: &Rat, p: i64) -> bool {
    x.is_zero() || valuation_rat(x, p).is_some_and(|v| v >= 1)
}

fn min_valuation(v: &[Rat], p: i64) -> Option<u32> {
    v.iter().filter_map(|x| valuation_rat(x, p)).min().map(|g| g.max(0) as u32)
}

fn integral_vector(v: &[Rat], msg: &str) -> Result<Vec<BigInt>> {
    if v.iter().any(|x| !x.is_integer()) {
        return Err(Error::Construction(msg.to_string()));
    }
    Ok(v.iter().map(|x| x.to_integer()).collect())
}

/// The linear factors of the determinant of the form on `U_{−β}`.
pub fn determinant_factors(datum: &RootDatum, beta: &RootElement) -> Result<Vec<(HPoly, u32)>> {
    let key = root_key(beta)?;
    let mut out: Vec<(HPoly, u32)> = Vec::new();
    let mut imaginary = 0u32;
    for g0 in 0..=key[0] {
        for g1 in 0..=key[1] {
            if !pbw::is_positive_root(g0, g1) {
                continue;
            }
            let mut n = 1;
            while g0 * n <= key[0] && g1 * n <= key[1] {
                let k = pbw::kostant_partition([key[0] - n * g0, key[1] - n * g1]) as u32;
                if g0 == g1 {
                    imaginary += k;
                } else if k > 0 {
                    let alpha = RootElement::new(vec![g0, g1]);
                    out.push((shapovalov::hyperplane_form(datum, &alpha, n)?, k));
                }
                n += 1;
            }
        }
    }
    if imaginary > 0 {
        out.push((HPoly::linear(&[1, 1, 0], 2), imaginary));
    }
    Ok(out)
}

/// First subset of `rank` images forming a Z-basis of the lattice they
/// generate together with all other images.
fn find_word_basis(images: &[Vec<Rat>], rank: usize) -> Option<Vec<usize>> {
    let n = images.len();
    if rank == 0 || rank > n {
        return if rank == 0 { Some(Vec::new()) } else { None };
    }
    let mut ix: Vec<usize> = (0..rank).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        let b: Vec<Vec<Rat>> = ix.iter().map(|&i| images[i].clone()).collect();
        if linalg::rank(&b) == rank
            && images.iter().all(|v| linalg::coordinates(&b, v).is_some_and(|c| c.iter().all(|x| x.is_integer())))
        {
            return Some(ix);
        }
        if tried >= WORD_BASIS_SEARCH {
            return None;
        }
        // next combination
        let mut k = rank;
        while k > 0 && ix[k - 1] == n - rank + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return None;
        }
        ix[k - 1] += 1;
        for j in k..rank {
            ix[j] = ix[j - 1] + 1;
        }
    }
}

/// Absolute content of an integer vector.
pub fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}

/// `λ` as a weight with the given values on `h0, h1` and `d`.
pub fn weight(h0: i64, h1: i64, d: i64) -> Weight {
    Weight::with_d(vec![h0, h1], rat(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big;

    fn root(a: i64, b: i64) -> RootElement {
        RootElement::new(vec![a, b])
    }

    fn v() -> Verma {
        Verma::new(&RootDatum::a1()).unwrap()
    }

    #[test]
    fn weight_space_dimensions() {
        let v = v();
        assert_eq!(v.weight_space_basis(&root(2, 1)).unwrap().len(), 3);
        assert_eq!(v.weight_space_basis(&root(0, 1)).unwrap().len(), 1);
        assert_eq!(v.weight_space_basis(&root(1, 1)).unwrap().len(), 2);
    }

    #[test]
    fn gram_simple_root() {
        let mut v = v();
        let ws = v.contravariant_gram(&weight(5, 2, 0), &root(1, 0)).unwrap();
        assert_eq!(ws.gram, vec![vec![rat(5)]]);
    }

    #[test]
    fn e_action_on_f1() {
        let mut v = v();
        let u = Uea::term(vec![Gen::f_simple(1)], HPoly::one(NVARS));
        let r = v.e_action(1, 1, &u, &weight(3, 4, 0)).unwrap();
        assert_eq!(r, Uea::cartan(HPoly::constant(NVARS, rat(4))));
    }

    #[test]
    fn determinants() {
        let mut v = v();
        let r = v.determinant_check(&root(0, 1), 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.determinant, HPoly::var(NVARS, 1));
        let r = v.determinant_check(&root(1, 1), 4).unwrap();
        assert!(r.passed(), "{:?}", r);
        let expected = &(&HPoly::var(NVARS, 0) * &HPoly::var(NVARS, 1)) * &HPoly::linear(&[1, 1, 0], 2);
        assert!(r.determinant.div_exact(&expected).is_some_and(|q| q.is_constant()));
    }

    #[test]
    fn quotient_lattice_example() {
        let mut v = v();
        let l = v.simple_quotient_lattice(&weight(2, 1, 0), &root(2, 1)).unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(l.words.len(), 3);
        assert!(l.word_basis.is_some());
    }

    #[test]
    fn weyl_certificate_example() {
        let mut v = v();
        let c = v.weyl_hom_check(&weight(2, 1, 0), &root(2, 1), 1, 1, 7).unwrap();
        assert_eq!(c.g, 0);
        assert_eq!(c.e, 1);
        assert!(c.valid(), "{:?}", c);
        assert_eq!(content(&c.coordinates), big(1));
    }

    #[test]
    fn negative_control_p5() {
        let mut v = v();
        assert!(matches!(v.weyl_hom_check(&weight(2, 1, 0), &root(2, 1), 1, 1, 5), Err(Error::Hypothesis(_))));
    }
}
