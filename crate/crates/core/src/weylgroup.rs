//! Affine reflections, the dot action, nearest lower p^e-reflections and
//! linkage relations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{pow_i64, rat, to_i64};
use crate::error::Result;
use crate::rootdata::{RootDatum, RootElement, Weight};

/// `s_γ(λ) = λ − ⟨λ,γ^∨⟩γ`.
pub fn reflect(datum: &RootDatum, lambda: &Weight, gamma: &RootElement) -> Result<Weight> {
    let k = datum.pairing_unshifted(lambda, gamma)?;
    Ok(datum.subtract_root(lambda, k, gamma))
}

/// `s_{γ,m}·λ = λ − (⟨λ+ρ,γ^∨⟩ − m)γ`.
pub fn dot_reflect(datum: &RootDatum, lambda: &Weight, gamma: &RootElement, m: i64) -> Result<Weight> {
    let k = datum.pairing(lambda, gamma)?;
    Ok(datum.subtract_root(lambda, k - m, gamma))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearestLower {
    pub m: i64,
    pub d: i64,
    pub mu: Weight,
}

/// Writes `⟨λ+ρ,γ^∨⟩ = M·p^e + D` with `0 ≤ D < p^e` and returns
/// `μ = λ − Dγ`.
pub fn nearest_lower(datum: &RootDatum, lambda: &Weight, gamma: &RootElement, p: i64, e: u32) -> Result<NearestLower> {
    let value = datum.pairing(lambda, gamma)?;
    let pe = pow_i64(p, e);
    let m = value.div_euclid(pe);
    let d = value.rem_euclid(pe);
    Ok(NearestLower { m, d, mu: datum.subtract_root(lambda, d, gamma) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorWitness {
    pub gamma: RootElement,
    pub e: u32,
    pub m: i64,
    pub d: i64,
    pub p: i64,
}

/// The smallest `e ≤ e_max` for which `μ = R_{γ,e}·λ` with `D > 0` and
/// `M > 0`, both weights being dominant.
pub fn mirrored(
    datum: &RootDatum,
    mu: &Weight,
    lambda: &Weight,
    gamma: &RootElement,
    p: i64,
    e_max: u32,
) -> Result<Option<MirrorWitness>> {
    if !mu.is_dominant() || !lambda.is_dominant() {
        return Ok(None);
    }
    for e in 1..=e_max {
        if p.checked_pow(e).is_none() {
            break;
        }
        let nl = nearest_lower(datum, lambda, gamma, p, e)?;
        if nl.d > 0 && nl.m > 0 && &nl.mu == mu {
            return Ok(Some(MirrorWitness { gamma: gamma.clone(), e, m: nl.m, d: nl.d, p }));
        }
    }
    Ok(None)
}

/// All mirror witnesses `μ = λ − Dγ` for `γ = λ`-independent data: for each
/// `e` with `p^e ≤ ⟨λ+ρ,γ^∨⟩` the nearest lower reflection, kept when it is
/// proper and lands in `X⁺`.
pub fn mirror_images(
    datum: &RootDatum,
    lambda: &Weight,
    gamma: &RootElement,
    p: i64,
) -> Result<Vec<(MirrorWitness, Weight)>> {
    let value = datum.pairing(lambda, gamma)?;
    let mut out = Vec::new();
    let mut e = 1;
    while let Some(pe) = p.checked_pow(e) {
        if pe > value {
            break;
        }
        let nl = nearest_lower(datum, lambda, gamma, p, e)?;
        if nl.d > 0 && nl.m > 0 && nl.mu.is_dominant() {
            out.push((MirrorWitness { gamma: gamma.clone(), e, m: nl.m, d: nl.d, p }, nl.mu));
        }
        e += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinkageStep {
    pub beta: RootElement,
    pub n: i64,
    pub m: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_height: i64,
    pub max_n: i64,
    pub max_m: i64,
    pub depth: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_height: 20, max_n: 50, max_m: 20, depth: 4 }
    }
}

/// Witnesses `(n, m)` making `y − x = sβ` a step, for a fixed positive root
/// `β` and multiplier `s > 0`. `p = 0` means characteristic zero.
fn step_witnesses(
    datum: &RootDatum,
    y: &Weight,
    beta: &RootElement,
    s: i64,
    p: i64,
    b: &SearchBounds,
) -> Vec<LinkageStep> {
    let mut out = Vec::new();
    let twice = datum.twice_shifted_form(y, beta);
    let norm = datum.norm(beta);
    if norm.is_zero() {
        if !twice.is_zero() {
            return out;
        }
        for n in 1..=b.max_n {
            if p == 0 {
                if n == s {
                    out.push(LinkageStep { beta: beta.clone(), n, m: 0 });
                }
            } else if (n - s) % p == 0 {
                let m = (n - s) / p;
                if m.abs() <= b.max_m {
                    out.push(LinkageStep { beta: beta.clone(), n, m });
                }
            }
        }
        return out;
    }
    let nr = twice / norm;
    let Some(n) = to_i64(&nr) else { return out };
    if n <= 0 || n > b.max_n {
        return out;
    }
    if p == 0 {
        if n == s {
            out.push(LinkageStep { beta: beta.clone(), n, m: 0 });
        }
    } else if (n - s) % p == 0 {
        let m = (n - s) / p;
        if m.abs() <= b.max_m {
            out.push(LinkageStep { beta: beta.clone(), n, m });
        }
    }
    out
}

fn linked(datum: &RootDatum, x: &Weight, y: &Weight, p: i64, b: &SearchBounds) -> Vec<LinkageStep> {
    let Some(zeta) = datum.weight_difference(y, x) else { return Vec::new() };
    if zeta.is_zero() || !zeta.is_nonnegative() {
        return Vec::new();
    }
    let c = crate::rootdata::content(&zeta.coeffs);
    let mut out = Vec::new();
    for s in 1..=c {
        if c % s != 0 {
            continue;
        }
        let beta = RootElement::new(zeta.coeffs.iter().map(|g| g / s).collect());
        if beta.height() > b.max_height || !datum.is_positive_root(&beta) {
            continue;
        }
        out.extend(step_witnesses(datum, y, &beta, s, p, b));
    }
    out.sort();
    out
}

/// Single-step witnesses of `x ↑ y` in characteristic zero:
/// `y − x = nβ`, `n(β,β) = 2(y+ρ,β)`.
pub fn linked_char0(datum: &RootDatum, x: &Weight, y: &Weight, bounds: &SearchBounds) -> Vec<LinkageStep> {
    linked(datum, x, y, 0, bounds)
}

/// Single-step witnesses of `x ↑ y` modulo `p`: `y − x = (n − mp)β` with
/// `n − mp > 0` and `n(β,β) = 2(y+ρ,β)`. `p = 0` reduces to
/// [`linked_char0`].
pub fn linked_modp(datum: &RootDatum, x: &Weight, y: &Weight, p: i64, bounds: &SearchBounds) -> Vec<LinkageStep> {
    linked(datum, x, y, p, bounds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub from: Weight,
    pub to: Weight,
    pub step: LinkageStep,
}

/// A chain `μ = μ_0 ↑ μ_1 ↑ ⋯ ↑ μ_N = λ` within the bounds, listed from `μ`
/// upwards. `Some(vec![])` when `μ = λ`.
pub fn linkage_chain(
    datum: &RootDatum,
    mu: &Weight,
    lambda: &Weight,
    p: i64,
    bounds: &SearchBounds,
) -> Option<Vec<ChainLink>> {
    if mu == lambda {
        return Some(Vec::new());
    }
    datum.weight_difference(lambda, mu)?;
    let mut roots: Vec<RootElement> = datum.positive_real_roots_to_height(bounds.max_height);
    let delta = datum.delta();
    let mut k = 1;
    while delta.height() * k <= bounds.max_height {
        roots.push(delta.scaled(k));
        k += 1;
    }
    roots.sort_by_key(|r| (r.height(), r.coeffs.clone()));
    let mut dead: BTreeSet<(Weight, usize)> = BTreeSet::new();
    let mut chain = Vec::new();
    if search(datum, mu, lambda, p, bounds, &roots, bounds.depth, &mut dead, &mut chain) {
        chain.reverse();
        Some(chain)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    datum: &RootDatum,
    mu: &Weight,
    y: &Weight,
    p: i64,
    bounds: &SearchBounds,
    roots: &[RootElement],
    depth: usize,
    dead: &mut BTreeSet<(Weight, usize)>,
    chain: &mut Vec<ChainLink>,
) -> bool {
    if depth == 0 || dead.contains(&(y.clone(), depth)) {
        return false;
    }
    let Some(gap) = datum.weight_difference(y, mu) else { return false };
    if !gap.is_nonnegative() {
        return false;
    }
    for beta in roots {
        let mut s = 1;
        while beta.scaled(s).le(&gap) {
            let steps = step_witnesses(datum, y, beta, s, p, bounds);
            if let Some(step) = steps.into_iter().next() {
                let x = datum.subtract_root(y, s, beta);
                let link = ChainLink { from: x.clone(), to: y.clone(), step };
                if &x == mu {
                    chain.push(link);
                    return true;
                }
                chain.push(link);
                if search(datum, mu, &x, p, bounds, roots, depth - 1, dead, chain) {
                    return true;
                }
                chain.pop();
            }
            s += 1;
        }
    }
    dead.insert((y.clone(), depth));
    false
}

/// `⟨μ+ρ,γ^∨⟩` for the weight `μ = λ − Dγ`, which equals `M·p^e − D` for
/// a nearest lower reflection.
pub fn mirror_pairing(datum: &RootDatum, mu: &Weight, gamma: &RootElement) -> Result<i64> {
    datum.pairing(mu, gamma)
}

/// `2(y+ρ,β)` and `n(β,β)` agree for the step.
pub fn step_holds(datum: &RootDatum, x: &Weight, y: &Weight, step: &LinkageStep, p: i64) -> bool {
    let lhs = datum.subtract_root(y, step.n - step.m * p, &step.beta);
    lhs == *x
        && rat(step.n) * datum.norm(&step.beta) == datum.twice_shifted_form(y, &step.beta)
        && (step.n - step.m * p).is_positive()
}
