//! Property tests for the state-algebra invariants.

use proptest::prelude::*;
use qlii_core::qmat::{eig_hermitian, haar_random_pure, purify};

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::sample::select(vec![
        vec![2],
        vec![3],
        vec![2, 2],
        vec![2, 3],
        vec![2, 2, 2],
        vec![2, 2, 3],
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_single_subsystem_reduction_has_unit_trace(
        dims in dims_strategy(),
        seed in 0u64..10_000,
    ) {
        let rho = haar_random_pure(&dims, seed).unwrap().to_density();
        for k in 0..dims.len() {
            let reduced = rho.partial_trace(&[k]).unwrap();
            let trace = reduced.matrix().trace();
            prop_assert!((trace.re - 1.0).abs() < 1e-10, "trace {}", trace.re);
            prop_assert!(trace.im.abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalue_sum_matches_trace(dims in dims_strategy(), seed in 0u64..10_000) {
        let rho = haar_random_pure(&dims, seed).unwrap().to_density();
        let (eigenvalues, _) = eig_hermitian(rho.matrix()).unwrap();
        let total: f64 = eigenvalues.iter().sum();
        prop_assert!((total - rho.matrix().trace().re).abs() < 1e-9);
    }

    #[test]
    fn purification_reduces_back_to_the_input(seed in 0u64..10_000) {
        // rank <= 2 mixed two-qubit states from tracing a tripartite pure state
        let rho = haar_random_pure(&[2, 2, 2], seed).unwrap().reduced(&[0, 1]).unwrap();
        let psi = purify(&rho);
        prop_assert_eq!(psi.dims().len(), 3);
        let back = psi.reduced(&[0, 1]).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-9);
    }

    #[test]
    fn permutations_preserve_the_spectrum(seed in 0u64..10_000, swap in 0usize..3) {
        let rho = haar_random_pure(&[2, 2, 2], seed).unwrap().reduced(&[0, 1, 2]).unwrap();
        let perm = match swap {
            0 => vec![1, 0, 2],
            1 => vec![2, 0, 1],
            _ => vec![0, 2, 1],
        };
        let permuted = rho.permute_subsystems(&perm).unwrap();
        let (before, _) = eig_hermitian(rho.matrix()).unwrap();
        let (after, _) = eig_hermitian(permuted.matrix()).unwrap();
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
