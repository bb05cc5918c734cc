//! Integral Shapovalov elements for affine sl₂.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial_big, interpolate, rat, to_i64, valuation_rat, Rat};
use crate::error::{Error, Result};
use crate::pbw::{expand, CPolynomials, Engine, Gen, Uea, NVARS, VAR_D};
use crate::poly::HPoly;
use crate::rootdata::{Family, RootDatum, RootElement, Weight};

/// Default bound on `D·ht(γ)`.
pub const DEFAULT_BUDGET: i64 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct ShapovalovElement {
    pub element: Uea,
    pub gamma: RootElement,
    /// The multiple `D`.
    pub d: u32,
    pub avoided: Option<usize>,
    pub leading_scale: i64,
}

impl ShapovalovElement {
    /// `∏ f_i^{D g_i}` in canonical order.
    pub fn leading_word(&self) -> Vec<Gen> {
        leading_word(&self.gamma, self.d)
    }

    pub fn leading_coefficient(&self) -> HPoly {
        self.element.coefficient(&self.leading_word())
    }

    pub fn evaluate(&self, lambda: &Weight) -> Result<Uea> {
        self.element.evaluate(lambda)
    }
}

fn leading_word(gamma: &RootElement, d: u32) -> Vec<Gen> {
    let d = i64::from(d);
    let runs: Vec<(Gen, u32)> = [1usize, 0]
        .iter()
        .filter(|&&i| gamma.coeffs[i] > 0)
        .map(|&i| (Gen::f_simple(i), (d * gamma.coeffs[i]) as u32))
        .collect();
    expand(&runs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub root: RootElement,
    /// Simple reflection taken to reach the next root; `None` at the end.
    pub reflection: Option<usize>,
}

fn require_a1(datum: &RootDatum) -> Result<()> {
    if datum.kind.family == Family::A && datum.kind.rank == 1 {
        Ok(())
    } else {
        Err(Error::Scope(format!("symbolic engine covers A1 only, not {}", datum.kind)))
    }
}

fn require_real(datum: &RootDatum, gamma: &RootElement) -> Result<()> {
    if datum.is_positive_real_root(gamma) {
        Ok(())
    } else {
        Err(Error::NotRealRoot(gamma.to_string()))
    }
}

/// `γ = γ_0 > γ_1 > ⋯ > γ_{n−1} = α_η` with `γ_i = s_{ε_i}(γ_{i−1})`.
pub fn gamma_path(datum: &RootDatum, gamma: &RootElement) -> Result<Vec<PathStep>> {
    require_real(datum, gamma)?;
    let mut out = Vec::new();
    let mut cur = gamma.clone();
    while datum.simple_index(&cur).is_none() {
        let mut next = None;
        for i in 0..datum.n() {
            if cur.coeffs[i] > 0 && datum.root_pairing(&cur, &datum.simple_root(i))? > 0 {
                next = Some(i);
                break;
            }
        }
        let i = next.ok_or_else(|| Error::InternalData(format!("no descent from {cur}")))?;
        let lower = datum.simple_reflect_root(&cur, i);
        out.push(PathStep { root: cur, reflection: Some(i) });
        cur = lower;
    }
    out.push(PathStep { root: cur, reflection: None });
    Ok(out)
}

/// `ε_i`, `b_i` and `β_i = s_{ε_1}⋯s_{ε_{i−1}}(ε_i)` along the path.
pub fn path_data(datum: &RootDatum, gamma: &RootElement) -> Result<Vec<(usize, i64, RootElement)>> {
    let path = gamma_path(datum, gamma)?;
    let mut out = Vec::new();
    let mut prefix: Vec<usize> = Vec::new();
    for step in &path {
        let (eps, b) = match step.reflection {
            Some(i) => (i, datum.root_pairing(&step.root, &datum.simple_root(i))?),
            None => (datum.simple_index(&step.root).expect("path ends at a simple root"), 1),
        };
        let mut beta = datum.simple_root(eps);
        for &k in prefix.iter().rev() {
            beta = datum.simple_reflect_root(&beta, k);
        }
        out.push((eps, b, beta));
        prefix.push(eps);
    }
    Ok(out)
}

/// `h_γ + ρ(h_γ) − D`.
pub fn hyperplane_form(datum: &RootDatum, gamma: &RootElement, d: i64) -> Result<HPoly> {
    let cv = datum.coroot_coeffs(gamma)?;
    let mut coeffs = cv.clone();
    coeffs.push(0);
    Ok(HPoly::linear(&coeffs, cv.iter().sum::<i64>() - d))
}

/// Restricts a polynomial to `h_γ + ρ(h_γ) = D` by eliminating the last
/// variable that occurs in `h_γ`.
pub fn restrict_to_hyperplane(datum: &RootDatum, p: &HPoly, gamma: &RootElement, d: i64) -> Result<HPoly> {
    let cv = datum.coroot_coeffs(gamma)?;
    let v = (0..cv.len()).rev().find(|&i| cv[i] != 0).ok_or_else(|| Error::NotRealRoot(gamma.to_string()))?;
    let mut lin = vec![0i64; NVARS];
    for (i, c) in cv.iter().enumerate() {
        if i != v {
            lin[i] = -c;
        }
    }
    let rho: i64 = cv.iter().sum();
    let num = HPoly::linear(&lin, d - rho);
    Ok(p.substitute(v, &num.scale(&(Rat::one() / rat(cv[v])))))
}

/// Integral weights on `H_{γ,D}` with `d = 0`, nearest to the origin first.
pub fn hyperplane_points(datum: &RootDatum, gamma: &RootElement, d: i64, count: usize) -> Result<Vec<Weight>> {
    let cv = datum.coroot_coeffs(gamma)?;
    let mut pts = Vec::new();
    let mut r = 2i64;
    while pts.len() < count && r < 4096 {
        pts.clear();
        for h0 in -r..=r {
            for h1 in -r..=r {
                if cv[0] * (h0 + 1) + cv[1] * (h1 + 1) == d {
                    pts.push(Weight::new(vec![h0, h1]));
                }
            }
        }
        r *= 2;
    }
    pts.sort_by_key(|w| (w.h[0].abs() + w.h[1].abs(), w.h.clone()));
    pts.truncate(count);
    Ok(pts)
}

/// How the inductive step recovers `Q_π` from the Shapovalov equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Route {
    /// `Q_π = Σ_ω C_{ω,π,i}(q+Db)·P'_ω` with `q = −(h_k+1)` and
    /// `P'_ω = P_ω(h_i − a_{ik}(h_k+1))`.
    Symbolic,
    /// Solve at integral samples `q = 1, 2, …` (skipping the first `skip`
    /// admissible ones) and interpolate in `h_k` or, if `other_variable`, in
    /// the remaining coordinate. Only determined modulo `h_γ+ρ(h_γ)−D`.
    Interpolated { skip: usize, other_variable: bool },
}

/// Engines and structure-polynomial tables shared across constructions.
pub struct Builder {
    datum: RootDatum,
    /// Bound on `D·ht(γ)`.
    pub budget: i64,
    canonical: Engine,
    alpha_last: [Engine; 2],
    cpolys: BTreeMap<(usize, Vec<Gen>), CPolynomials>,
    built: BTreeMap<(Vec<i64>, u32, Route), Uea>,
}

impl Builder {
    pub fn new(datum: &RootDatum) -> Result<Builder> {
        require_a1(datum)?;
        Ok(Builder {
            datum: datum.clone(),
            budget: DEFAULT_BUDGET,
            canonical: Engine::new(),
            alpha_last: [Engine::with_rightmost(Gen::f_simple(0)), Engine::with_rightmost(Gen::f_simple(1))],
            cpolys: BTreeMap::new(),
            built: BTreeMap::new(),
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn engine(&mut self) -> &mut Engine {
        &mut self.canonical
    }

    fn cpolys_for(&mut self, k: usize, omega: &[Gen]) -> Result<CPolynomials> {
        let key = (k, omega.to_vec());
        if let Some(c) = self.cpolys.get(&key) {
            return Ok(c.clone());
        }
        let c = self.alpha_last[k].c_polynomials(omega, k, omega.len() as u32 + 2)?;
        self.cpolys.insert(key, c.clone());
        Ok(c)
    }

    fn check_size(&self, gamma: &RootElement, d: u32) -> Result<()> {
        require_real(&self.datum, gamma)?;
        if d == 0 {
            return Err(Error::Construction("D must be positive".into()));
        }
        let size = i64::from(d) * gamma.height();
        if size > self.budget {
            return Err(Error::BudgetExceeded(format!("D·ht(γ) = {size} exceeds {}", self.budget)));
        }
        Ok(())
    }

    /// `Z(γ, D)` satisfying (Z1)–(Z3).
    pub fn integral_shapovalov(&mut self, gamma: &RootElement, d: u32) -> Result<ShapovalovElement> {
        self.check_size(gamma, d)?;
        let element = self.construct(gamma, d, Route::Symbolic)?;
        let z = ShapovalovElement { element, gamma: gamma.clone(), d, avoided: None, leading_scale: 1 };
        if !z.element.is_integral() {
            return Err(Error::Construction(format!("non-integral coefficient in {}", z.element)));
        }
        if !z.element.is_d_free() {
            return Err(Error::Construction(format!("d survives in {}", z.element)));
        }
        if z.leading_coefficient() != HPoly::one(NVARS) {
            return Err(Error::Construction(format!("leading coefficient {:?}", z.leading_coefficient())));
        }
        Ok(z)
    }

    /// A representative of `Z(γ, D)` modulo `U(b⁻)(h_γ+ρ(h_γ)−D)` obtained by
    /// solving the Shapovalov equation at integral samples and interpolating
    /// along the hyperplane in one variable. Its coefficients are rational in
    /// general.
    pub fn sampled_representative(
        &mut self,
        gamma: &RootElement,
        d: u32,
        skip: usize,
        other_variable: bool,
    ) -> Result<Uea> {
        self.check_size(gamma, d)?;
        let u = self.construct(gamma, d, Route::Interpolated { skip, other_variable })?;
        if !u.is_d_free() {
            return Err(Error::Construction(format!("d survives in {u}")));
        }
        Ok(u)
    }

    fn construct(&mut self, gamma: &RootElement, d: u32, route: Route) -> Result<Uea> {
        let key = (gamma.coeffs.clone(), d, route);
        if let Some(u) = self.built.get(&key) {
            return Ok(u.clone());
        }
        let u = if let Some(eta) = self.datum.simple_index(gamma) {
            Uea::term(vec![Gen::f_simple(eta); d as usize], HPoly::one(NVARS))
        } else {
            let k = (0..2)
                .find(|&i| {
                    gamma.coeffs[i] > 0 && self.datum.root_pairing(gamma, &self.datum.simple_root(i)).unwrap_or(0) > 0
                })
                .ok_or_else(|| Error::InternalData(format!("no descent from {gamma}")))?;
            let b = self.datum.root_pairing(gamma, &self.datum.simple_root(k))?;
            let beta = self.datum.simple_reflect_root(gamma, k);
            // Inner elements always come from the same route without skipping.
            let inner_route = match route {
                Route::Symbolic => Route::Symbolic,
                Route::Interpolated { .. } => Route::Interpolated { skip: 0, other_variable: false },
            };
            let zb = self.construct(&beta, d, inner_route)?;
            match route {
                Route::Symbolic => self.step_symbolic(gamma, i64::from(d), &zb, k, i64::from(d) * b)?,
                Route::Interpolated { skip, other_variable } => {
                    self.step_interpolated(gamma, d, &zb, k, b, skip, other_variable)?
                }
            }
        };
        self.built.insert(key, u.clone());
        Ok(u)
    }

    /// `Σ F_π f_α^{Db−i}·c` collected from `f_α^m F_ω`, with `c` supplied per
    /// `(ω, π, i)`; returns the canonical normal form.
    fn collect_step<C>(
        &mut self,
        gamma: &RootElement,
        d: i64,
        k: usize,
        db: i64,
        zb_terms: &[(Vec<Gen>, C)],
        mut coeff: impl FnMut(&Vec<Rat>, &C) -> HPoly,
    ) -> Result<Uea> {
        let fa = Gen::f_simple(k);
        let mut alast: BTreeMap<Vec<Gen>, HPoly> = BTreeMap::new();
        let mut remainder: BTreeMap<(Vec<Gen>, i64), HPoly> = BTreeMap::new();
        for (omega, c) in zb_terms {
            let cp = self.cpolys_for(k, omega)?;
            for ((pi, i), poly) in &cp {
                let val = coeff(poly, c);
                if val.is_zero() {
                    continue;
                }
                let exp = db - i;
                if exp < 0 {
                    let e = remainder.remove(&(pi.clone(), exp)).unwrap_or_else(|| HPoly::zero(NVARS)) + val;
                    if !e.is_zero() {
                        remainder.insert((pi.clone(), exp), e);
                    }
                    continue;
                }
                let mut word = pi.clone();
                word.extend(core::iter::repeat(fa).take(exp as usize));
                let e = alast.remove(&word).unwrap_or_else(|| HPoly::zero(NVARS)) + val;
                if !e.is_zero() {
                    alast.insert(word, e);
                }
            }
        }
        // The inner element is only fixed modulo its own hyperplane, so the
        // remainder has to vanish on H_{γ,D} rather than identically.
        for p in remainder.values() {
            if !restrict_to_hyperplane(&self.datum, p, gamma, d)?.is_zero() {
                return Err(Error::Construction("right division by f_α leaves a remainder".into()));
            }
        }
        let mut out = Uea::zero();
        for (w, p) in alast {
            let v = self.canonical.normal_word(&w);
            out.add_scaled(&v, &p);
        }
        Ok(out)
    }

    fn step_symbolic(&mut self, gamma: &RootElement, d: i64, zb: &Uea, k: usize, db: i64) -> Result<Uea> {
        let a = self.datum.cartan.clone();
        // h_i(ν) = h_i − a_{ik}(h_k + 1); h_k first so later substitutions see the original h_k.
        let shifted = |p: &HPoly| -> HPoly {
            let mut out = p.clone();
            let mut order: Vec<usize> = vec![k];
            order.extend((0..2).filter(|&i| i != k));
            for i in order {
                let mut lin = vec![0i64; NVARS];
                lin[i] += 1;
                lin[k] -= a[i][k];
                out = out.substitute(i, &HPoly::linear(&lin, -a[i][k]));
            }
            out
        };
        let mut m_lin = vec![0i64; NVARS];
        m_lin[k] = -1;
        let m = HPoly::linear(&m_lin, db - 1);
        let terms: Vec<(Vec<Gen>, HPoly)> = zb.terms().map(|(w, p)| (w.clone(), shifted(p))).collect();
        self.collect_step(gamma, d, k, db, &terms, |c, p| {
            let mut acc = HPoly::zero(NVARS);
            for x in c.iter().rev() {
                acc = &(&acc * &m) + &HPoly::constant(NVARS, x.clone());
            }
            &acc * p
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn step_interpolated(
        &mut self,
        gamma: &RootElement,
        d: u32,
        zb: &Uea,
        k: usize,
        b: i64,
        skip: usize,
        other_variable: bool,
    ) -> Result<Uea> {
        let j = 1 - k;
        let cv = self.datum.coroot_coeffs(gamma)?;
        let d = i64::from(d);
        let db = d * b;
        let needed = (d * gamma.height()) as usize + 2;
        let checks = 2;
        let mut qs = Vec::new();
        let mut q = 1i64;
        while qs.len() < skip + needed + checks {
            if (d + cv[k] * q) % cv[j] == 0 {
                qs.push(q);
            }
            q += 1;
        }
        let qs = &qs[skip..];
        let var = if other_variable { j } else { k };
        let mut xs = Vec::new();
        let mut samples: Vec<BTreeMap<Vec<Gen>, Rat>> = Vec::new();
        for &q in qs {
            let mut chi = [0i64; 2];
            chi[k] = -q - 1;
            chi[j] = (d + cv[k] * q) / cv[j] - 1;
            let mut nu = vec![Rat::zero(); NVARS];
            for i in 0..2 {
                nu[i] = rat(chi[i] + self.datum.cartan[i][k] * q);
            }
            nu[VAR_D] = rat(if k == 0 { q } else { 0 });
            let zn = zb.evaluate_at(&nu)?;
            let terms: Vec<(Vec<Gen>, Rat)> = zn.terms().map(|(w, p)| (w.clone(), p.constant_term())).collect();
            let m = rat(q + db);
            let u = self.collect_step(gamma, d, k, db, &terms, |c, val| {
                let mut acc = Rat::zero();
                for x in c.iter().rev() {
                    acc = acc * &m + x;
                }
                HPoly::constant(NVARS, acc * val)
            })?;
            let vals =
                u.constant_coefficients().ok_or_else(|| Error::Construction("Cartan residue in sample".into()))?;
            xs.push(rat(chi[var]));
            samples.push(vals);
        }
        let mut words: Vec<Vec<Gen>> = samples.iter().flat_map(|s| s.keys().cloned()).collect();
        words.sort();
        words.dedup();
        let mut out = Uea::zero();
        for w in words {
            let ys: Vec<Rat> = samples.iter().map(|s| s.get(&w).cloned().unwrap_or_else(Rat::zero)).collect();
            let c = interpolate(&xs[..needed], &ys[..needed]);
            for (x, y) in xs[needed..].iter().zip(&ys[needed..]) {
                if crate::arith::eval_univariate(&c, x) != *y {
                    return Err(Error::Construction(format!(
                        "interpolation misses a check sample for {}",
                        crate::pbw::format_word(&w)
                    )));
                }
            }
            let poly = HPoly::from_terms(
                NVARS,
                c.into_iter().enumerate().map(|(e, coef)| {
                    let mut ex = vec![0u32; NVARS];
                    ex[var] = e as u32;
                    (ex, coef)
                }),
            );
            out.add_term(w, poly);
        }
        Ok(out)
    }

    /// `Z_η`: coefficients free of `h_η`, leading coefficient `(g^∨_η)^N`.
    pub fn eta_avoiding(&self, z: &ShapovalovElement, eta: usize) -> Result<ShapovalovElement> {
        eta_avoiding(&self.datum, z, eta)
    }
}

/// See [`Builder::integral_shapovalov`].
pub fn integral_shapovalov(datum: &RootDatum, gamma: &RootElement, d: u32) -> Result<ShapovalovElement> {
    Builder::new(datum)?.integral_shapovalov(gamma, d)
}

pub fn is_eta_good_length(datum: &RootDatum, gamma: &RootElement, eta: usize) -> bool {
    datum.norm(gamma) == datum.norm(&datum.simple_root(eta))
}

pub fn eta_avoiding(datum: &RootDatum, z: &ShapovalovElement, eta: usize) -> Result<ShapovalovElement> {
    if eta >= datum.n() || !is_eta_good_length(datum, &z.gamma, eta) {
        return Err(Error::NotEtaGood(eta));
    }
    let cv = datum.coroot_coeffs(&z.gamma)?;
    let n = z.element.terms().map(|(_, p)| p.degree_in(eta)).max().unwrap_or(0);
    if n == 0 {
        return Ok(ShapovalovElement { avoided: Some(eta), ..z.clone() });
    }
    let g = cv[eta];
    if g == 0 {
        return Err(Error::NotEtaGood(eta));
    }
    // h_η = (D − ρ(h_γ) − Σ_{i≠η} g_i h_i) / g_η
    let mut lin = vec![0i64; NVARS];
    for (i, c) in cv.iter().enumerate() {
        if i != eta {
            lin[i] = -c;
        }
    }
    let rho: i64 = cv.iter().sum();
    let sub = HPoly::linear(&lin, i64::from(z.d) - rho).scale(&(Rat::one() / rat(g)));
    let scale = g.checked_pow(n).ok_or_else(|| Error::BudgetExceeded("scale overflow".into()))?;
    let element = z.element.map_coefficients(|p| p.substitute(eta, &sub).scale(&(rat(scale) * rat(z.leading_scale))));
    if !element.is_integral() {
        return Err(Error::Construction(format!("h_{eta}-avoiding element is not integral")));
    }
    Ok(ShapovalovElement {
        element,
        gamma: z.gamma.clone(),
        d: z.d,
        avoided: Some(eta),
        leading_scale: scale * z.leading_scale,
    })
}

/// `a − b` lies in `U(b⁻)·(h_γ + ρ(h_γ) − D)`.
pub fn congruent_mod_hyperplane(datum: &RootDatum, a: &Uea, b: &Uea, gamma: &RootElement, d: i64) -> Result<bool> {
    let l = hyperplane_form(datum, gamma, d)?;
    Ok(a.sub(b).terms().all(|(_, p)| p.div_exact(&l).is_some()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularSample {
    pub chi: Weight,
    /// `e_i·Z(χ)v⁺ = 0`, per simple index.
    pub annihilated: Vec<bool>,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularReport {
    pub samples: Vec<SingularSample>,
}

impl SingularReport {
    pub fn passed(&self) -> bool {
        !self.samples.is_empty() && self.samples.iter().all(|s| s.integral && s.annihilated.iter().all(|&b| b))
    }
}

/// Checks `e_i·Z(χ)v⁺_χ = 0` and integrality at integral `χ ∈ H_{γ,D}`.
pub fn verify_singular(datum: &RootDatum, z: &ShapovalovElement, sample_count: usize) -> Result<SingularReport> {
    require_a1(datum)?;
    let mut eng = Engine::new();
    let mut samples = Vec::new();
    for chi in hyperplane_points(datum, &z.gamma, i64::from(z.d), sample_count)? {
        let point = crate::pbw::weight_point(&chi);
        let zc = z.element.evaluate_at(&point)?;
        let annihilated =
            (0..2).map(|i| eng.e_action_at(i, 1, &zc, &point).map(|u| u.is_zero())).collect::<Result<_>>()?;
        let integral = zc.pbw_divided_coordinates().map(|c| c.values().all(Rat::is_integer)).unwrap_or(false);
        samples.push(SingularSample { chi, annihilated, integral });
    }
    Ok(SingularReport { samples })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorEntry {
    pub word: Vec<Gen>,
    pub pairing: HPoly,
    /// Divisible as a polynomial.
    pub exact: bool,
    /// Divisible after restriction to `H_{γ,D}`, where `Z` is determined.
    pub on_hyperplane: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Case2Sample {
    pub chi: Weight,
    pub q: i64,
    /// `c` with `f_α^{q+Db} Z(ν) f_α^{−q} = c·Z(χ)`, if proportional.
    pub scalar: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport {
    pub b: Vec<i64>,
    pub betas: Vec<RootElement>,
    pub factors: Vec<HPoly>,
    pub entries: Vec<FactorEntry>,
    pub case2: Vec<Case2Sample>,
}

impl FactorReport {
    pub fn product(&self) -> HPoly {
        self.factors.iter().fold(HPoly::one(NVARS), |acc, f| &acc * f)
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.on_hyperplane) && self.case2.iter().all(|c| c.scalar.is_some())
    }
}

/// `∏_i ∏_{j=1}^{Db_i} (h_{β_i} + ρ(h_{β_i}) − j)` as a list of factors.
pub fn factor_list(datum: &RootDatum, gamma: &RootElement, d: u32) -> Result<(Vec<i64>, Vec<RootElement>, Vec<HPoly>)> {
    let data = path_data(datum, gamma)?;
    let mut factors = Vec::new();
    for (_, b, beta) in &data {
        for j in 1..=i64::from(d) * b {
            factors.push(hyperplane_form(datum, beta, j)?);
        }
    }
    Ok((data.iter().map(|x| x.1).collect(), data.into_iter().map(|x| x.2).collect(), factors))
}

pub fn factor_formula_check(builder: &mut Builder, z: &ShapovalovElement, height_bound: i64) -> Result<FactorReport> {
    let datum = builder.datum().clone();
    let size = i64::from(z.d) * z.gamma.height();
    if size > height_bound {
        return Err(Error::BudgetExceeded(format!("D·ht(γ) = {size} exceeds {height_bound}")));
    }
    let d = i64::from(z.d);
    let (b, betas, factors) = factor_list(&datum, &z.gamma, z.d)?;
    let product = factors.iter().fold(HPoly::one(NVARS), |acc, f| &acc * f);
    let restricted: Vec<HPoly> =
        factors.iter().map(|f| restrict_to_hyperplane(&datum, f, &z.gamma, d)).collect::<Result<_>>()?;
    let restricted_product = restricted.iter().filter(|f| !f.is_zero()).fold(HPoly::one(NVARS), |acc, f| &acc * f);
    let basis = crate::pbw::weight_space_basis([z.gamma.coeffs[0] * d, z.gamma.coeffs[1] * d], height_bound)?;
    let mut entries = Vec::new();
    for w in basis {
        let u = Uea::term(w.clone(), HPoly::one(NVARS));
        let pairing = builder.engine().contravariant(&u, &z.element);
        let exact = pairing.div_exact(&product).is_some();
        let r = restrict_to_hyperplane(&datum, &pairing, &z.gamma, d)?;
        let on_hyperplane = r.is_zero() || r.div_exact(&restricted_product).is_some();
        entries.push(FactorEntry { word: w, pairing, exact, on_hyperplane });
    }
    let case2 = case2_samples(builder, z)?;
    Ok(FactorReport { b, betas, factors, entries, case2 })
}

/// `Z^χ = f_α^{q+Db} Z(ν) f_α^{−q}` for `χ ∈ H_{γ,D}` with `−Db < q < 0`,
/// compared with `Z(χ)`.
fn case2_samples(builder: &mut Builder, z: &ShapovalovElement) -> Result<Vec<Case2Sample>> {
    let datum = builder.datum().clone();
    let path = gamma_path(&datum, &z.gamma)?;
    let Some(k) = path[0].reflection else {
        return Ok(Vec::new());
    };
    let j = 1 - k;
    let cv = datum.coroot_coeffs(&z.gamma)?;
    let b = datum.root_pairing(&z.gamma, &datum.simple_root(k))?;
    let d = i64::from(z.d);
    let db = d * b;
    let beta = path[1].root.clone();
    let zb = builder.integral_shapovalov(&beta, z.d)?;
    let fa = Gen::f_simple(k);
    let mut out = Vec::new();
    for q in (-db + 1)..0 {
        if (d + cv[k] * q) % cv[j] != 0 {
            continue;
        }
        let mut h = [0i64; 2];
        h[k] = -q - 1;
        h[j] = (d + cv[k] * q) / cv[j] - 1;
        let chi = Weight::new(h.to_vec());
        let mut nu = vec![Rat::zero(); NVARS];
        for i in 0..2 {
            nu[i] = rat(h[i] + datum.cartan[i][k] * q);
        }
        let zn = zb.element.evaluate_at(&nu)?;
        let mut lhs = Uea::zero();
        for (w, p) in zn.terms() {
            let mut word = vec![fa; (q + db) as usize];
            word.extend_from_slice(w);
            word.extend(core::iter::repeat(fa).take((-q) as usize));
            let v = builder.engine().normal_word(&word);
            lhs.add_scaled(&v, p);
        }
        let rhs = z.element.evaluate(&chi)?;
        out.push(Case2Sample { chi, q, scalar: proportionality(&lhs, &rhs) });
    }
    Ok(out)
}

/// `c` with `a = c·b` when `b ≠ 0`.
pub fn proportionality(a: &Uea, b: &Uea) -> Option<Rat> {
    let (w, p) = b.terms().next()?;
    let c = a.coefficient(w).constant_term() / p.constant_term();
    if a.sub(&b.scale(&c)).is_zero() {
        Some(c)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisibilityEntry {
    pub i: usize,
    pub n: u32,
    /// `u_0 = 0` in `P_{b⁻}(e_i^{(n)}Z_η) = Σ u_m·binom(h_γ+ρ(h_γ)−D, m)`.
    pub u0_vanishes: bool,
    /// `(λ, N)` samples where `N > 1` divides `Z_η(λ)` and every `u_m(λ)`.
    pub divided: Vec<(Weight, i64)>,
    /// Samples where some `u_m(λ)` is not divisible by `N`.
    pub failures: Vec<(Weight, i64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisibilityReport {
    pub entries: Vec<DivisibilityEntry>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.u0_vanishes && e.failures.is_empty())
    }

    pub fn samples_tested(&self) -> usize {
        self.entries.iter().map(|e| e.divided.len()).sum()
    }
}

/// Checks both divisibility statements for an `h_η`-avoiding element over
/// the weights `λ` with `|λ(h_i)| ≤ radius`.
pub fn divisibility_check(datum: &RootDatum, z: &ShapovalovElement, radius: i64) -> Result<DivisibilityReport> {
    require_a1(datum)?;
    let eta = z.avoided.ok_or_else(|| Error::Hypothesis(vec!["element is not h_η-avoiding".into()]))?;
    let cv = datum.coroot_coeffs(&z.gamma)?;
    let g = cv[eta];
    if g == 0 {
        return Err(Error::NotEtaGood(eta));
    }
    let d = i64::from(z.d);
    let rho: i64 = cv.iter().sum();
    // h_η in terms of H = h_γ + ρ(h_γ) − D, which takes the slot of h_η.
    let mut lin = vec![0i64; NVARS];
    for (i, c) in cv.iter().enumerate() {
        lin[i] = if i == eta { 1 } else { -c };
    }
    let h_eta = HPoly::linear(&lin, d - rho).scale(&(Rat::one() / rat(g)));
    let mut eng = Engine::new();
    let grid: Vec<Weight> =
        (-radius..=radius).flat_map(|a| (-radius..=radius).map(move |b| Weight::new(vec![a, b]))).collect();
    let lattice_content = |u: &Uea| -> Option<BigInt> {
        let c = u.pbw_divided_coordinates()?;
        let mut acc = BigInt::zero();
        for x in c.values() {
            if !x.is_integer() {
                return None;
            }
            acc = acc.gcd(x.numer());
        }
        Some(acc)
    };
    let mut entries = Vec::new();
    for i in 0..2 {
        for n in 1..=(d * z.gamma.coeffs[i]) as u32 {
            let psi = eng.e_divided_projection(i, n, &z.element);
            let f = psi.map_coefficients(|p| p.substitute(eta, &h_eta));
            let deg = f.terms().map(|(_, p)| p.degree_in(eta)).max().unwrap_or(0);
            let values: Vec<Uea> =
                (0..=deg).map(|k| f.map_coefficients(|p| p.eval_var(eta, &rat(i64::from(k))))).collect();
            let us: Vec<Uea> = (0..=deg)
                .map(|m| {
                    let mut acc = Uea::zero();
                    for k in 0..=m {
                        let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
                        let c = Rat::from_integer(binomial_big(m, k)) * rat(sign);
                        acc = acc.add(&values[k as usize].scale(&c));
                    }
                    acc
                })
                .collect();
            let u0_vanishes = us[0].is_zero();
            let mut divided = Vec::new();
            let mut failures = Vec::new();
            for lambda in &grid {
                let zl = z.evaluate(lambda)?;
                let Some(nn) = lattice_content(&zl) else { continue };
                let Some(nn) = to_i64(&Rat::from_integer(nn)) else { continue };
                if nn <= 1 {
                    continue;
                }
                let point = crate::pbw::weight_point(lambda);
                let mut ok = true;
                for u in &us {
                    let ul = u.evaluate_at(&point)?;
                    let coords = ul.pbw_divided_coordinates().unwrap_or_default();
                    for p in prime_factors(nn) {
                        if g % p == 0 {
                            continue;
                        }
                        let need = crate::arith::valuation_i64(nn, p).unwrap_or(0) as i32;
                        if coords.values().any(|c| valuation_rat(c, p).map(|v| v < need).unwrap_or(false)) {
                            ok = false;
                        }
                    }
                }
                if ok {
                    divided.push((lambda.clone(), nn));
                } else {
                    failures.push((lambda.clone(), nn));
                }
            }
            entries.push(DivisibilityEntry { i, n, u0_vanishes, divided, failures });
        }
    }
    Ok(DivisibilityReport { entries })
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    n = n.abs();
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn format_element(z: &ShapovalovElement) -> String {
    format!("{}", z.element)
}
