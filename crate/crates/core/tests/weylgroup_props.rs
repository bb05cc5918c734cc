use proptest::prelude::*;
use weyllab_core::arith::pow_i64;
use weyllab_core::rootdata::{AffineType, RootDatum, Weight};
use weyllab_core::weylgroup::{
    dot_reflect, linkage_chain, linked_char0, linked_modp, mirror_images, mirror_pairing, nearest_lower, reflect,
    step_holds, SearchBounds,
};

const TYPES: [&str; 5] = ["A1", "A2", "C2", "B3", "G2"];
const PRIMES: [i64; 5] = [2, 3, 5, 7, 11];

fn datum(k: usize) -> RootDatum {
    RootDatum::load(AffineType::parse(TYPES[k]).unwrap()).unwrap()
}

fn dominant(d: &RootDatum, seed: &[i64]) -> Weight {
    Weight::new((0..d.n()).map(|i| seed[i % seed.len()]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reflections_are_involutions(k in 0..TYPES.len(), seed in prop::collection::vec(-4i64..15, 1..5), root in 0usize..200, m in -20i64..20) {
        let d = datum(k);
        let lambda = dominant(&d, &seed);
        let roots = d.positive_real_roots_to_height(9);
        let g = &roots[root % roots.len()];
        let r = reflect(&d, &lambda, g).unwrap();
        prop_assert_eq!(reflect(&d, &r, g).unwrap(), lambda.clone());
        let s = dot_reflect(&d, &lambda, g, m).unwrap();
        prop_assert_eq!(dot_reflect(&d, &s, g, m).unwrap(), lambda.clone());
        // ⟨s·λ+ρ,γ^∨⟩ = 2m − ⟨λ+ρ,γ^∨⟩
        prop_assert_eq!(d.pairing(&s, g).unwrap(), 2 * m - d.pairing(&lambda, g).unwrap());
    }

    #[test]
    fn nearest_lower_mirror_value(k in 0..TYPES.len(), seed in prop::collection::vec(0i64..40, 1..5), root in 0usize..200, pi in 0..PRIMES.len(), e in 1u32..4) {
        let d = datum(k);
        let p = PRIMES[pi];
        let lambda = dominant(&d, &seed);
        let roots = d.positive_real_roots_to_height(9);
        let g = &roots[root % roots.len()];
        let value = d.pairing(&lambda, g).unwrap();
        let pe = pow_i64(p, e);
        let nl = nearest_lower(&d, &lambda, g, p, e).unwrap();
        prop_assert!(0 <= nl.d && nl.d < pe);
        prop_assert_eq!(nl.m * pe + nl.d, value);
        prop_assert_eq!(mirror_pairing(&d, &nl.mu, g).unwrap(), nl.m * pe - nl.d);
        prop_assert_eq!(d.subtract_root(&nl.mu, -nl.d, g), lambda);
    }

    #[test]
    fn first_power_mirrors_are_single_linkage_steps(k in 0..TYPES.len(), seed in prop::collection::vec(0i64..25, 1..5), root in 0usize..200, pi in 0..PRIMES.len()) {
        let d = datum(k);
        let p = PRIMES[pi];
        let lambda = dominant(&d, &seed);
        let roots = d.positive_real_roots_to_height(6);
        let g = &roots[root % roots.len()];
        let bounds = SearchBounds { max_height: 8, max_n: 400, max_m: 400, depth: 2 };
        for (w, mu) in mirror_images(&d, &lambda, g, p).unwrap() {
            prop_assert!(mu.is_dominant());
            prop_assert!(w.d > 0 && w.m > 0);
            if w.e != 1 {
                continue;
            }
            let steps = linked_modp(&d, &mu, &lambda, p, &bounds);
            prop_assert!(!steps.is_empty(), "no step for {:?} -> {:?}", mu, lambda);
            for s in &steps {
                prop_assert!(step_holds(&d, &mu, &lambda, s, p));
            }
        }
    }

    #[test]
    fn characteristic_zero_linkage(k in 0..TYPES.len(), seed in prop::collection::vec(0i64..15, 1..5), root in 0usize..200) {
        let d = datum(k);
        let y = dominant(&d, &seed);
        let roots = d.positive_real_roots_to_height(6);
        let g = &roots[root % roots.len()];
        let x = dot_reflect(&d, &y, g, 0).unwrap();
        let bounds = SearchBounds { max_height: 8, max_n: 200, max_m: 20, depth: 2 };
        let char0 = linked_char0(&d, &x, &y, &bounds);
        prop_assert_eq!(&char0, &linked_modp(&d, &x, &y, 0, &bounds));
        if d.pairing(&y, g).unwrap() > 0 {
            prop_assert!(!char0.is_empty());
        }
        for s in &char0 {
            prop_assert_eq!(s.m, 0);
            prop_assert!(step_holds(&d, &x, &y, s, 0));
        }
    }

    #[test]
    fn chains_consist_of_valid_steps(seed in prop::collection::vec(0i64..12, 2), pi in 0..3usize, root in 0usize..12, n in 1i64..4) {
        let d = datum(0);
        let p = PRIMES[pi];
        let lambda = dominant(&d, &seed);
        let roots = d.positive_real_roots_to_height(5);
        let mu = d.subtract_root(&lambda, n, &roots[root % roots.len()]);
        let bounds = SearchBounds { max_height: 6, max_n: 30, max_m: 10, depth: 3 };
        if let Some(chain) = linkage_chain(&d, &mu, &lambda, p, &bounds) {
            let mut cur = mu.clone();
            for link in &chain {
                prop_assert_eq!(&link.from, &cur);
                prop_assert!(step_holds(&d, &link.from, &link.to, &link.step, p));
                cur = link.to.clone();
            }
            prop_assert_eq!(cur, lambda);
        }
    }
}
