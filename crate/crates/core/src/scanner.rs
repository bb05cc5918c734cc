//! Arithmetic scans for reducible Weyl modules in type Ã_r, quasi-simple
//! weights and level-one weights in `Y⁺`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::arith::{gcd_i64, valuation_i64};
use crate::error::Result;
use crate::rootdata::{AffineType, Family, RootDatum, RootElement, Weight};
use crate::weylgroup;

/// Which clause of the reducibility criterion a witness satisfies: `(i)`
/// uses `η = 0`, `(ii)` an inner node, `(iii)` the last node (`(ii)` for
/// Ã₁, where the corollary has only two clauses).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    II,
    III,
}

impl Condition {
    pub fn id(&self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
        }
    }
}

/// `⟨λ+ρ,γ^∨⟩ = M·p^e + D` for `γ = α_family + tδ`, with `μ = λ − Dγ`
/// dominant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub family: usize,
    pub t: i64,
    pub e: u32,
    pub m: i64,
    pub d: i64,
    /// The clause and simple index `η` when the witness proves
    /// reducibility.
    pub condition: Option<(Condition, usize)>,
}

impl Witness {
    /// `γ = α_family + tδ` in type Ã_r (`n = r + 1` simple roots).
    pub fn gamma(&self, n: usize) -> RootElement {
        let mut c = vec![self.t; n];
        c[self.family] += 1;
        RootElement::new(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Reducible,
    QuasiSimple,
    NotInYPlus,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Reducible => "reducible-by-theorem",
            Status::QuasiSimple => "quasi-simple",
            Status::NotInYPlus => "not-in-Y+",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    /// Values on `h_0..h_r`; the δ-part is normalized to 0.
    pub xi: Vec<i64>,
    pub level: i64,
    pub status: Status,
    /// Reducibility witnesses when reducible, membership witnesses
    /// otherwise.
    pub witnesses: Vec<Witness>,
}

impl ScanEntry {
    pub fn weight(&self) -> Weight {
        Weight::new(self.xi.clone())
    }
}

fn rotate(xi: &[i64], k: usize) -> Vec<i64> {
    let n = xi.len();
    (0..n).map(|j| xi[(j + k) % n]).collect()
}

fn pow_checked(p: i64, e: u32) -> Option<i64> {
    p.checked_pow(e)
}

/// Membership of `λ = (ξ_0, …, ξ_r)` in `Y⁺` through the family
/// `γ = α_k + tδ`, decided by a congruence: some `D ∈ [1, ⌊ξ_k/2⌋]` with
/// `D ≡ ξ_k + 1 (mod gcd(ℓ+h^∨, p^e))`, and `D < p^e` unless
/// `e ≥ e* = v_p(ℓ+h^∨) + 1`, where the modulus has stabilized and `e` may
/// be taken as large as needed.
fn family_member_fast(xi: &[i64], k: usize, p: i64) -> bool {
    let r = xi.len() as i64 - 1;
    let level: i64 = xi.iter().sum();
    let c = level + r + 1;
    let x0 = xi[k];
    let e_star = valuation_i64(c, p).unwrap_or(0) + 1;
    for e in 1..=e_star {
        let Some(pe) = pow_checked(p, e) else { break };
        let modulus = gcd_i64(c, pe);
        let d_max = if e < e_star { (x0 / 2).min(pe - 1) } else { x0 / 2 };
        if (1..=d_max).any(|d| (d - x0 - 1).rem_euclid(modulus) == 0) {
            return true;
        }
    }
    false
}

/// `Y⁺` membership via the congruence test, over all diagram rotations.
pub fn y_plus_fast(xi: &[i64], p: i64) -> bool {
    (0..xi.len()).any(|k| family_member_fast(xi, k, p))
}

/// The witness for `(t, e)` in family `k`, if `t, e` give a nearest lower
/// reflection landing in `X⁺`.
fn witness_at(xi: &[i64], k: usize, p: i64, t: i64, e: u32) -> Option<Witness> {
    let n = xi.len() as i64;
    let level: i64 = xi.iter().sum();
    let value = (level + n) * t + xi[k] + 1;
    let pe = pow_checked(p, e)?;
    let (m, d) = value.div_mod_floor(&pe);
    (d > 0 && m > 0 && 2 * d <= xi[k]).then_some(Witness { family: k, t, e, m, d, condition: None })
}

/// Brute-force `Y⁺` membership: `e ≤ e*`, `t` over one residue period plus
/// the same again for `M ≥ 1`.
pub fn y_plus_oracle(xi: &[i64], p: i64) -> Vec<Witness> {
    let n = xi.len() as i64;
    let level: i64 = xi.iter().sum();
    let e_star = valuation_i64(level + n, p).unwrap_or(0) + 1;
    let period = pow_checked(p, e_star).unwrap_or(i64::MAX / 4);
    let mut out = Vec::new();
    for k in 0..xi.len() {
        for e in 1..=e_star {
            for t in 0..2 * period + 2 {
                if let Some(w) = witness_at(xi, k, p, t, e) {
                    out.push(w);
                    break;
                }
            }
        }
    }
    out
}

/// Ã₁ shorthand for [`y_plus_oracle`] witnesses with the fast-path verdict.
pub fn y_plus_a1(level: i64, xi0: i64, p: i64) -> (bool, Vec<Witness>) {
    let xi = [xi0, level - xi0];
    (y_plus_fast(&xi, p), y_plus_oracle(&xi, p))
}

/// All witnesses of the reducibility corollary for `λ = (ξ_0, …, ξ_r)`,
/// over every rotation of the diagram.
///
/// The search is exhaustive: clause (i) forces `D(t+1) ≤ ξ_k`, the others
/// force `Dt ≤ ξ_i`, so `t ≤ ℓ`; and `p^e ≤ ⟨λ+ρ,γ^∨⟩` since `M ≥ 1`.
pub fn reducibility_witnesses(xi: &[i64], p: i64) -> Vec<Witness> {
    let n = xi.len();
    let r = n - 1;
    let level: i64 = xi.iter().sum();
    let mut out = Vec::new();
    for k in 0..n {
        let rot = rotate(xi, k);
        for t in 0..=level {
            let value = (level + n as i64) * t + xi[k] + 1;
            let mut e = 1;
            while let Some(pe) = pow_checked(p, e) {
                if pe > value {
                    break;
                }
                if let Some(w) = witness_at(xi, k, p, t, e) {
                    if gcd_i64(t + 1, p) == 1 && w.d * (t + 1) < (rot[0] + 1).min(pe) {
                        out.push(Witness { condition: Some((Condition::I, k)), ..w.clone() });
                    }
                    if gcd_i64(t, p) == 1 {
                        for i in 1..=r {
                            if w.d * t < (rot[i] + 1).min(pe) {
                                let c = if r == 1 || i < r { Condition::II } else { Condition::III };
                                out.push(Witness { condition: Some((c, (i + k) % n)), ..w.clone() });
                            }
                        }
                    }
                }
                e += 1;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Ã₁: the first reducibility witness for `(ξ_0, ℓ − ξ_0)`, if any.
pub fn reducible_a1(level: i64, xi0: i64, p: i64) -> Option<Witness> {
    reducibility_witnesses(&[xi0, level - xi0], p).into_iter().next()
}

pub fn classify(xi: &[i64], p: i64) -> ScanEntry {
    let level = xi.iter().sum();
    let red = reducibility_witnesses(xi, p);
    let (status, witnesses) = if !red.is_empty() {
        (Status::Reducible, red)
    } else if y_plus_fast(xi, p) {
        (Status::QuasiSimple, y_plus_oracle(xi, p))
    } else {
        (Status::NotInYPlus, Vec::new())
    };
    ScanEntry { xi: xi.to_vec(), level, status, witnesses }
}

/// Every `(ξ_0, …, ξ_r)` with `ξ_i ≥ 0` and `Σ ξ_i = ℓ`, lexicographic in
/// `ξ_0` first.
pub fn weights_of_level(r: usize, level: i64) -> Vec<Vec<i64>> {
    fn go(left: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            go(left - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(level, r + 1, &mut Vec::new(), &mut out);
    out
}

/// Scan of all weights of level `1..=max_level` in Ã_r, sorted by level
/// then `ξ`.
pub fn scan_ar(r: usize, p: i64, max_level: i64) -> Vec<ScanEntry> {
    let mut out = Vec::new();
    for level in 1..=max_level {
        for xi in weights_of_level(r, level) {
            out.push(classify(&xi, p));
        }
    }
    out
}

pub fn scan_a1(p: i64, max_level: i64) -> Vec<ScanEntry> {
    scan_ar(1, p, max_level)
}

/// Quasi-simple weights of Ã_r up to `max_level`.
pub fn quasi_simple_ar(r: usize, p: i64, max_level: i64) -> Vec<ScanEntry> {
    scan_ar(r, p, max_level).into_iter().filter(|e| e.status == Status::QuasiSimple).collect()
}

pub fn quasi_simple_a1(p: i64, max_level: i64) -> Vec<ScanEntry> {
    quasi_simple_ar(1, p, max_level)
}

/// The lowest level with a reducibility witness in Ã₁ and the `ξ_0` that
/// realize it.
pub fn lowest_level(p: i64) -> (i64, BTreeSet<i64>) {
    let mut level = 0;
    loop {
        let found: BTreeSet<i64> =
            (0..=level).filter(|&x| !reducibility_witnesses(&[x, level - x], p).is_empty()).collect();
        if !found.is_empty() {
            return (level, found);
        }
        level += 1;
    }
}

/// `p > ℓ(ℓ+h^∨) − h^∨` for Ã_r.
pub fn bound_exceeded(r: usize, level: i64, p: i64) -> bool {
    let h = r as i64 + 1;
    p > level * (level + h) - h
}

/// When `p` exceeds the bound, whether every weight of level `ℓ` in `Y⁺` is
/// quasi-simple; `None` when the bound is not exceeded.
pub fn bound_remark_check(r: usize, level: i64, p: i64) -> Option<bool> {
    if !bound_exceeded(r, level, p) {
        return None;
    }
    Some(weights_of_level(r, level).iter().all(|xi| reducibility_witnesses(xi, p).is_empty()))
}

/// Mirror witnesses of `λ` over all base roots `γ_0 ∈ Φ₁⁺` and `γ = γ_0 + tδ`
/// with `t ≤ t_max`, each paired with its `μ`.
pub fn mirror_search(
    datum: &RootDatum,
    lambda: &Weight,
    p: i64,
    t_max: usize,
) -> Result<Vec<(weylgroup::MirrorWitness, Weight)>> {
    let mut out = Vec::new();
    for base in datum.base_roots() {
        for gamma in datum.positive_real_roots(&base, t_max)? {
            out.extend(weylgroup::mirror_images(datum, lambda, &gamma, p)?);
        }
    }
    Ok(out)
}

/// Weights of Ã_r at level `ℓ` where the rotation-closed congruence test and
/// the bounded search over all of `Φ₁⁺` disagree.
pub fn ar_discrepancies(r: usize, level: i64, p: i64, t_max: usize) -> Result<Vec<(Vec<i64>, bool, bool)>> {
    let datum = RootDatum::load(AffineType::new(Family::A, r))?;
    let mut out = Vec::new();
    for xi in weights_of_level(r, level) {
        let fast = y_plus_fast(&xi, p);
        let brute = !mirror_search(&datum, &Weight::new(xi.clone()), p, t_max)?.is_empty();
        if fast != brute {
            out.push((xi, fast, brute));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOneReport {
    pub kind: AffineType,
    pub p: i64,
    /// Nodes `j` with `c_j = 1`.
    pub candidates: Vec<usize>,
    /// Nodes passing `λ − gcd(C, p)γ_0 ∈ X⁺` for some `γ_0 ∈ Φ₁⁺`.
    pub sufficient: Vec<usize>,
    /// Nodes with a mirror witness for some `γ_0 + tδ`, `t ≤ t_bound`.
    pub brute_force: Vec<usize>,
    pub t_bound: usize,
}

impl LevelOneReport {
    pub fn consistent(&self) -> bool {
        self.sufficient == self.brute_force
    }
}

/// Level-one weights of an untwisted affine type lying in `Y⁺`.
pub fn level_one_scan(kind: AffineType, p: i64, t_bound: usize) -> Result<LevelOneReport> {
    let datum = RootDatum::load(kind)?;
    let n = datum.n();
    let candidates: Vec<usize> = (0..n).filter(|&j| datum.comarks[j] == 1).collect();
    let mut sufficient = Vec::new();
    let mut brute_force = Vec::new();
    for &j in &candidates {
        let lambda = datum.fundamental_weight(j);
        let level = datum.level(&lambda);
        let passes = datum.base_roots().iter().any(|g0| {
            // C = 2(ℓ+h^∨)/(γ_0,γ_0)
            let c = crate::arith::rat(2 * (level + datum.dual_coxeter)) / datum.norm(g0);
            let Some(c) = crate::arith::to_i64(&c) else { return false };
            let mu = datum.subtract_root(&lambda, gcd_i64(c, p), g0);
            mu.is_dominant()
        });
        if passes {
            sufficient.push(j);
        }
        if !mirror_search(&datum, &lambda, p, t_bound)?.is_empty() {
            brute_force.push(j);
        }
    }
    Ok(LevelOneReport { kind, p, candidates, sufficient, brute_force, t_bound })
}

/// The default `t` bound of the level-one cross-check, `4p²`.
pub fn default_t_bound(p: i64) -> usize {
    (4 * p * p) as usize
}

pub fn format_xi(xi: &[i64]) -> String {
    format!("({})", xi.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_examples() {
        assert!(y_plus_a1(2, 2, 2).0);
        assert!(!y_plus_a1(0, 0, 2).0);
        let (member, _) = y_plus_a1(2, 0, 5);
        assert!(member);
        assert!(reducible_a1(2, 0, 5).is_none());
        assert!(reducible_a1(3, 1, 7).is_some());
        assert!(reducible_a1(3, 2, 7).is_some());
        assert!(reducible_a1(13, 5, 3).is_none());
        assert!(reducible_a1(3, 0, 2).is_none());
        assert!(reducible_a1(3, 3, 2).is_none());
    }

    #[test]
    fn lowest_levels() {
        assert_eq!(lowest_level(2), (2, [0, 2].into_iter().collect()));
        assert_eq!(lowest_level(11), (4, [0, 4].into_iter().collect()));
        assert_eq!(lowest_level(53), (8, [3, 5].into_iter().collect()));
    }

    #[test]
    fn witness_root() {
        let w = Witness { family: 0, t: 1, e: 1, m: 1, d: 1, condition: None };
        assert_eq!(w.gamma(2).coeffs, vec![2, 1]);
    }

    #[test]
    fn compositions() {
        assert_eq!(weights_of_level(2, 2).len(), 6);
        assert_eq!(weights_of_level(1, 3), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
    }
}
