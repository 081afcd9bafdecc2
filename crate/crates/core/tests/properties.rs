mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use octspec::cdnum::{basis_mul, kappa};
use octspec::diagmodel::{self, DiagSymbol, PowerSeq, PowerTerm, PowerVector};
use octspec::funcalc::StepFunction;
use octspec::qlop::OperatorFile;
use octspec::{random, spectral, CdNumber, ModuleVector};

fn coeffs(level: u32) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 1usize << level)
}

fn cd(level: u32) -> impl Strategy<Value = CdNumber> {
    coeffs(level).prop_map(move |c| CdNumber::new(level, c).unwrap())
}

fn close(a: &CdNumber, b: &CdNumber, tol: f64) -> bool {
    a.distance(b) <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn product_matches_doubling_oracle(level in 0u32..=4, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_coeffs(&mut r, 1 << level);
        let b = common::random_coeffs(&mut r, 1 << level);
        let lib = &CdNumber::new(level, a.clone()).unwrap() * &CdNumber::new(level, b.clone()).unwrap();
        let ora = common::cd_mul(&a, &b);
        for (x, y) in lib.coeffs().iter().zip(&ora) {
            prop_assert!((x - y).abs() <= 1e-13);
        }
    }

    #[test]
    fn generators_anticommute_by_kappa(level in 1u32..=6, j in 0usize..64, k in 0usize..64) {
        let w = 1usize << level;
        let (j, k) = (j % w, k % w);
        let a = basis_mul(j, k, level).unwrap();
        let b = basis_mul(k, j, level).unwrap();
        let s = if kappa(j, k) == 0 { 1 } else { -1 };
        prop_assert_eq!(a.index, b.index);
        prop_assert_eq!(a.sign, s * b.sign);
        prop_assert_eq!(a.index == 0 && a.sign == -1, j == k && j >= 1);
    }

    #[test]
    fn conjugation_reverses_products(a in cd(4), b in cd(4)) {
        prop_assert!(close(&(&a * &b).conj(), &(&b.conj() * &a.conj()), 1e-13));
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in cd(3), b in cd(3)) {
        prop_assert!(((&a * &b).norm() - a.norm() * b.norm()).abs() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn octonion_inverse(a in cd(3)) {
        prop_assume!(a.norm() > 1e-3);
        let inv = a.inverse().unwrap();
        prop_assert!(close(&(&a * &inv), &CdNumber::one(3), 1e-12));
        prop_assert!(close(&(&inv * &a), &CdNumber::one(3), 1e-12));
    }

    #[test]
    fn inner_product_is_hermitian(level in 0u32..=3, n in 1usize..4, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = random::module_vector(&mut r, level, n);
        let y = random::module_vector(&mut r, level, n);
        let xy = x.inner(&y).unwrap();
        prop_assert!(close(&xy.conj(), &y.inner(&x).unwrap(), 1e-13));
        prop_assert!((xy.real_part() - x.real_dot(&y).unwrap()).abs() <= 1e-13);
        let xx = x.inner(&x).unwrap();
        prop_assert!(xx.is_real(1e-13) && (xx.real_part() - x.norm_sqr()).abs() <= 1e-13);
    }

    #[test]
    fn grade_projections_sum_to_vector(level in 0u32..=3, n in 1usize..4, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let x = random::module_vector(&mut r, level, n);
        let mut acc = ModuleVector::zeros(level, n);
        for j in 0..1usize << level {
            acc = acc.checked_add(&x.grade_project(j).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, x);
    }

    #[test]
    fn cd_json_round_trip(a in cd(3)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CdNumber>(&text).unwrap(), a);
    }

    #[test]
    fn operator_json_round_trip(level in 0u32..=3, n in 1usize..4, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let t = random::cd_matrix(&mut r, level, n).to_operator().unwrap();
        let text = serde_json::to_string(&t).unwrap();
        let back = serde_json::from_str::<OperatorFile>(&text).unwrap().into_operator().unwrap();
        prop_assert_eq!(back.matrix(), t.matrix());
    }

    #[test]
    fn riemann_error_within_mesh(level in 2u32..=3, n in 1usize..4, seed in any::<u64>(), mesh in 1e-4f64..0.5) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let t = random::self_adjoint(&mut r, level, n);
        let res = spectral::resolution_of_identity(&t).unwrap();
        let x = random::module_vector(&mut r, level, n);
        let err = spectral::riemann_reconstruct(&res, &x, mesh).unwrap().distance(&t.apply(&x).unwrap()).unwrap();
        prop_assert!(err <= mesh * x.norm() + 1e-12);
    }

    #[test]
    fn step_function_json_round_trip(lo in -5.0f64..0.0, hi in 0.1f64..5.0, v in cd(2)) {
        let f = StepFunction::new(
            2,
            vec![(octspec::funcalc::Cell::new(lo, hi).unwrap(), v)],
            Some(CdNumber::zero(2)),
        ).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: StepFunction = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

fn symbol(level: u32) -> impl Strategy<Value = DiagSymbol> {
    let term = (-8i32..9, prop::collection::vec(cd(level), 1..4))
        .prop_map(|(a, values)| PowerTerm { alpha: a as f64 * 0.25, values });
    (prop::collection::vec(cd(level), 0..3), prop::collection::vec(term, 1..3))
        .prop_map(move |(head, tail)| DiagSymbol::new(PowerSeq::new(level, head, tail).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_symbol_is_an_involution(t in symbol(3)) {
        prop_assert_eq!(diagmodel::adjoint_symbol(&diagmodel::adjoint_symbol(&t)), t);
    }

    #[test]
    fn modulus_symbol_is_real_nonnegative(t in symbol(3)) {
        let m = diagmodel::hat_mul(&t, &diagmodel::adjoint_symbol(&t)).unwrap();
        for n in 1..=200 {
            let v = m.value(n);
            prop_assert!(v.is_real(1e-12 * v.norm().max(1.0)) && v.real_part() >= -1e-12 * v.norm().max(1.0));
        }
    }

    #[test]
    fn naive_sum_domain_within_closed(t in symbol(2), b in symbol(2), beta in -4.0f64..-0.6) {
        let x = PowerVector::new(PowerSeq::real_power(2, 1.0, beta).unwrap()).unwrap();
        let naive = diagmodel::naive_add_domain(&t, &b, &x, 1000).unwrap();
        let sum = diagmodel::hat_add(&t, &b).unwrap();
        if naive.member {
            prop_assert!(diagmodel::domain_contains_with(&sum, &x, 1000).unwrap().member);
        }
    }

    #[test]
    fn symbol_json_round_trip(t in symbol(3)) {
        let text = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<DiagSymbol>(&text).unwrap(), t);
    }

    #[test]
    fn bounding_norms_within_threshold(t in symbol(2), m in 0.5f64..50.0) {
        if let Ok(seq) = diagmodel::bounding_sequence(&t, &[m, 2.0 * m]) {
            for p in &seq.projections {
                prop_assert!(p.norm <= p.threshold);
            }
            for n in 1..=200u64 {
                if seq.projections[0].support.contains(n) {
                    prop_assert!(seq.projections[1].support.contains(n));
                }
            }
        }
    }
}
