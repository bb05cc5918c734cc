use num_traits::{One, Zero};
use proptest::prelude::*;
use weyllab_core::arith::{factorial, rat, Rat};
use weyllab_core::pbw::{self, loop_bracket, loop_bracket_sum, Engine, Gen, LoopGen, LoopSum, Uea, NVARS};
use weyllab_core::poly::HPoly;

fn loop_gens(k_max: i64) -> Vec<LoopGen> {
    let mut out = vec![LoopGen::C, LoopGen::D];
    for k in -k_max..=k_max {
        out.extend([LoopGen::E(k), LoopGen::F(k), LoopGen::H(k)]);
    }
    out
}

fn single(g: LoopGen) -> LoopSum {
    let mut s = LoopSum::new();
    s.insert(g, Rat::one());
    s
}

fn add(a: &LoopSum, b: &LoopSum) -> LoopSum {
    let mut out = a.clone();
    for (g, c) in b {
        let v = out.entry(*g).or_insert_with(Rat::zero);
        *v += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn neg(a: &LoopSum) -> LoopSum {
    a.iter().map(|(g, c)| (*g, -c)).collect()
}

#[test]
fn jacobi_and_antisymmetry_exhaustive() {
    let gens = loop_gens(4);
    for &a in &gens {
        for &b in &gens {
            assert_eq!(loop_bracket(a, b), neg(&loop_bracket(b, a)), "[{a:?}, {b:?}]");
            for &c in &gens {
                let t1 = loop_bracket_sum(&single(a), &loop_bracket(b, c));
                let t2 = loop_bracket_sum(&single(b), &loop_bracket(c, a));
                let t3 = loop_bracket_sum(&single(c), &loop_bracket(a, b));
                assert!(add(&add(&t1, &t2), &t3).is_empty(), "Jacobi fails on {a:?}, {b:?}, {c:?}");
            }
        }
    }
}

const ROOTS: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)];

fn gen_strategy() -> impl Strategy<Value = Gen> {
    (any::<bool>(), 0..ROOTS.len()).prop_map(|(pos, k)| {
        let (a, b) = ROOTS[k];
        if pos {
            Gen::e(a, b)
        } else {
            Gen::f(a, b)
        }
    })
}

/// Random elements `Σ c·word·(x + y·h_i)` with words of total height ≤ 5.
fn element_strategy() -> impl Strategy<Value = Uea> {
    let term = (prop::collection::vec(gen_strategy(), 0..3), -3i64..=3, -2i64..=2, 0usize..2);
    prop::collection::vec(term, 1..3).prop_map(|terms| {
        let mut eng = Engine::new();
        let mut u = Uea::zero();
        for (word, c, y, var) in terms {
            let height: i64 = word.iter().map(|g| g.g0 + g.g1).sum();
            if height > 5 {
                continue;
            }
            let mut lin = vec![0; NVARS];
            lin[var] = y;
            let coeff = HPoly::linear(&lin, c);
            let v = eng.normal_word(&word);
            u = u.add(&eng.multiply(&v, &Uea::cartan(coeff)));
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in element_strategy(), b in element_strategy(), c in element_strategy()) {
        let mut eng = Engine::new();
        let ab = eng.multiply(&a, &b);
        let bc = eng.multiply(&b, &c);
        prop_assert_eq!(eng.multiply(&ab, &c), eng.multiply(&a, &bc));
    }

    #[test]
    fn tau_is_an_involutive_antiautomorphism(a in element_strategy(), b in element_strategy()) {
        let mut eng = Engine::new();
        let ab = eng.multiply(&a, &b);
        let ta = eng.tau(&a);
        let tb = eng.tau(&b);
        prop_assert_eq!(eng.tau(&ab), eng.multiply(&tb, &ta));
        let tta = eng.tau(&ta);
        prop_assert_eq!(tta, a);
    }

    #[test]
    fn c_polynomials_extrapolate(word in prop::collection::vec(0usize..2, 0..4), alpha in 0usize..2) {
        let omega: Vec<Gen> = word.iter().map(|&i| Gen::f_simple(i)).collect();
        let m_max = 4;
        let mut eng = Engine::new();
        let c = eng.c_polynomials(&omega, alpha, m_max).unwrap();
        for coeffs in c.values() {
            prop_assert!(coeffs.iter().all(|x| x.is_integer()));
        }
        let fa = Gen::f_simple(alpha);
        let mut right = Engine::with_rightmost(fa);
        for m in 0..m_max + 4 {
            let mut w = vec![fa; m as usize];
            w.extend_from_slice(&omega);
            let direct = right.normal_word(&w);
            let mut rebuilt = Uea::zero();
            for ((pi, i), coeffs) in &c {
                let j = m as i64 - i;
                if j < 0 {
                    continue;
                }
                let val = weyllab_core::arith::eval_univariate(coeffs, &rat(m as i64));
                let mut full = pi.clone();
                full.extend(std::iter::repeat(fa).take(j as usize));
                rebuilt.add_term(full, HPoly::constant(NVARS, val));
            }
            prop_assert_eq!(rebuilt, direct, "m = {}", m);
        }
    }
}

fn divided(g: Gen, n: u32) -> Uea {
    Uea::term(vec![g; n as usize], HPoly::constant(NVARS, Rat::one() / Rat::from_integer(factorial(n))))
}

/// `binom(h_i + c, k)` as a polynomial.
fn binom_poly(i: usize, c: i64, k: u32) -> HPoly {
    let mut out = HPoly::one(NVARS);
    for j in 0..i64::from(k) {
        let mut lin = vec![0; NVARS];
        lin[i] = 1;
        out = &out * &HPoly::linear(&lin, c - j);
    }
    out.scale(&(Rat::one() / Rat::from_integer(factorial(k))))
}

#[test]
fn kostant_formula_exhaustive() {
    let mut eng = Engine::new();
    for i in 0..2 {
        for eta in 0..2 {
            for n in 0..=4u32 {
                for d in 0..=4u32 {
                    let e = divided(Gen::e_simple(i), n);
                    let f = divided(Gen::f_simple(eta), d);
                    let lhs = eng.multiply(&e, &f);
                    let rhs = if i == eta {
                        let mut s = Uea::zero();
                        for k in 0..=n.min(d) {
                            let c = -(n as i64) - (d as i64) + 2 * k as i64;
                            let left =
                                eng.multiply(&divided(Gen::f_simple(i), d - k), &Uea::cartan(binom_poly(i, c, k)));
                            s = s.add(&eng.multiply(&left, &divided(Gen::e_simple(i), n - k)));
                        }
                        s
                    } else {
                        eng.multiply(&f, &e)
                    };
                    assert_eq!(lhs, rhs, "e_{i}^({n}) f_{eta}^({d})");
                }
            }
        }
    }
}

#[test]
fn kostant_partition_matches_basis() {
    for g0 in 0..6 {
        for g1 in 0..6 {
            assert_eq!(pbw::kostant_partition([g0, g1]), pbw::weight_space_basis([g0, g1], 12).unwrap().len());
        }
    }
}
