mod common;

use proptest::prelude::*;
use weyllab_core::error::Error;
use weyllab_core::pbw::{self, Uea, NVARS};
use weyllab_core::poly::HPoly;
use weyllab_core::rootdata::{RootDatum, RootElement};
use weyllab_core::scanner::reducibility_witnesses;
use weyllab_core::verma::{weight, Verma};

fn beta_strategy() -> impl Strategy<Value = [i64; 2]> {
    (0i64..4, 0i64..4).prop_filter("nonzero, small", |(a, b)| a + b > 0 && a + b <= 5).prop_map(|(a, b)| [a, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_is_contravariant(beta in beta_strategy(), i in 0usize..2, h0 in -6i64..10, h1 in -6i64..10, a in 0usize..16, b in 0usize..16) {
        let mut below = beta;
        below[i] -= 1;
        prop_assume!(below[i] >= 0 && below[0] + below[1] > 0);
        let d = RootDatum::a1();
        let mut v = Verma::new(&d).unwrap();
        let lambda = weight(h0, h1, 0);
        let point = pbw::weight_point(&lambda);
        let upper = pbw::weight_space_basis(beta, 20).unwrap();
        let lower = pbw::weight_space_basis(below, 20).unwrap();
        let u = Uea::term(lower[a % lower.len()].clone(), HPoly::one(NVARS));
        let w = Uea::term(upper[b % upper.len()].clone(), HPoly::one(NVARS));
        let fu = v.engine().multiply(&Uea::term(vec![pbw::Gen::f_simple(i)], HPoly::one(NVARS)), &u);
        let ew = v.e_action(i, 1, &w, &lambda).unwrap();
        let lhs = v.engine().contravariant(&fu, &w).eval(&point);
        let rhs = v.engine().contravariant(&u, &ew).eval(&point);
        prop_assert_eq!(lhs, rhs);
        let w2 = Uea::term(upper[a % upper.len()].clone(), HPoly::one(NVARS));
        prop_assert_eq!(v.engine().contravariant(&w, &w2), v.engine().contravariant(&w2, &w));
    }

    #[test]
    fn radical_is_the_integrable_kernel(beta in beta_strategy(), x0 in 0i64..6, x1 in 0i64..6) {
        let d = RootDatum::a1();
        let mut v = Verma::new(&d).unwrap();
        let ws = v.contravariant_gram(&weight(x0, x1, 0), &RootElement::new(beta.to_vec())).unwrap();
        let kernel = common::kernel_dimension(v.engine(), &[x0, x1], beta);
        prop_assert_eq!(ws.rank(), ws.dimension() - kernel);
        let lattice = v.simple_quotient_lattice(&weight(x0, x1, 0), &RootElement::new(beta.to_vec())).unwrap();
        prop_assert_eq!(lattice.rank(), ws.rank());
    }

    #[test]
    fn word_basis_is_stable(beta in beta_strategy(), x0 in 0i64..5, x1 in 0i64..5, eta in 0usize..2) {
        let d = RootDatum::a1();
        let mut v = Verma::new(&d).unwrap();
        let report = v.basis_stability_check(&weight(x0, x1, 0), &RootElement::new(beta.to_vec()), eta, 3).unwrap();
        if report.hypothesis.is_none() {
            prop_assert!(report.passed(), "{:?}", report);
        }
    }
}

#[test]
fn gram_is_symmetric_with_product_determinant() {
    let d = RootDatum::a1();
    let mut v = Verma::new(&d).unwrap();
    for a in 0..=3 {
        for b in 0..=3 {
            if a + b == 0 || a + b > 4 {
                continue;
            }
            let beta = RootElement::new(vec![a, b]);
            let g = v.symbolic_gram(&beta).unwrap();
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(x, &g[j][i]);
                }
            }
            assert!(v.determinant_check(&beta, 4).unwrap().passed(), "determinant at {beta}");
        }
    }
}

/// Every small witness either yields a valid certificate or its image in
/// `L(λ)` vanishes, which the kernel oracle must confirm.
#[test]
fn vanishing_images_lie_in_the_kernel() {
    let d = RootDatum::a1();
    let mut v = Verma::new(&d).unwrap();
    for p in [2, 3, 5, 7] {
        for level in 0..=8 {
            for x0 in 0..=level {
                let xi = [x0, level - x0];
                for w in reducibility_witnesses(&xi, p) {
                    let gamma = w.gamma(2);
                    if w.d * gamma.height() > 6 {
                        continue;
                    }
                    let (_, eta) = w.condition.unwrap();
                    let lambda = weight(xi[0], xi[1], 0);
                    let beta = [gamma.coeffs[0] * w.d, gamma.coeffs[1] * w.d];
                    let z = v.builder().integral_shapovalov(&gamma, w.d as u32).unwrap();
                    let ze = v.builder().eta_avoiding(&z, eta).unwrap().evaluate(&lambda).unwrap();
                    let vanishes = common::in_integrable_kernel(v.engine(), &xi, beta, &ze);
                    match v.weyl_hom_check(&lambda, &gamma, w.d, eta, p) {
                        Ok(c) => assert!(c.valid() && !vanishes, "{xi:?} p={p} {w:?}"),
                        Err(Error::NonzeroImage) => assert!(vanishes, "{xi:?} p={p} {w:?}"),
                        Err(e) => panic!("{xi:?} p={p} {w:?}: {e}"),
                    }
                }
            }
        }
    }
}
