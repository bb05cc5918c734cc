//! Independent oracle for the radical of the contravariant form.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use weyllab_core::arith::Rat;
use weyllab_core::linalg;
use weyllab_core::pbw::{self, Engine, Gen, Uea};

/// Constant-coefficient vectors spanning `Σ_i U(n⁻) f_i^{ξ_i+1}` in weight
/// `−β`, the kernel of `M(λ) → L(λ)` for dominant `λ`.
pub fn integrable_kernel(eng: &mut Engine, xi: &[i64], beta: [i64; 2]) -> Vec<BTreeMap<Vec<Gen>, Rat>> {
    let mut gens = Vec::new();
    for i in 0..2 {
        let k = xi[i] + 1;
        let mut rest = beta;
        rest[i] -= k;
        if rest[0] < 0 || rest[1] < 0 {
            continue;
        }
        for w in pbw::weight_space_basis(rest, 40).unwrap() {
            let mut word = w.clone();
            word.extend(std::iter::repeat(Gen::f_simple(i)).take(k as usize));
            gens.push(eng.normal_word(&word).constant_coefficients().unwrap());
        }
    }
    gens
}

fn columns(basis: &[Vec<Gen>], gens: &[BTreeMap<Vec<Gen>, Rat>]) -> Vec<Vec<Rat>> {
    basis.iter().map(|m| gens.iter().map(|g| g.get(m).cloned().unwrap_or_else(Rat::zero)).collect()).collect()
}

/// Dimension of the integrable kernel in weight `−β`.
pub fn kernel_dimension(eng: &mut Engine, xi: &[i64], beta: [i64; 2]) -> usize {
    let gens = integrable_kernel(eng, xi, beta);
    if gens.is_empty() {
        return 0;
    }
    let basis = pbw::weight_space_basis(beta, 40).unwrap();
    let rows: Vec<Vec<Rat>> =
        gens.iter().map(|g| basis.iter().map(|m| g.get(m).cloned().unwrap_or_else(Rat::zero)).collect()).collect();
    linalg::rank(&rows)
}

/// Whether the evaluated element `u` lies in the integrable kernel.
pub fn in_integrable_kernel(eng: &mut Engine, xi: &[i64], beta: [i64; 2], u: &Uea) -> bool {
    let gens = integrable_kernel(eng, xi, beta);
    let target = u.constant_coefficients().unwrap();
    let basis = pbw::weight_space_basis(beta, 40).unwrap();
    let b: Vec<Rat> = basis.iter().map(|m| target.get(m).cloned().unwrap_or_else(Rat::zero)).collect();
    if gens.is_empty() {
        return b.iter().all(Rat::is_zero);
    }
    linalg::solve(&columns(&basis, &gens), &b).is_some()
}
