use std::sync::Arc;

use proptest::prelude::*;
use semican::ffmod::{GradedSubspace, ModpModule};
use semican::fixtures;
use semican::flagcount::{
    count_stable_flags, count_stable_flags_recursive, counting_polynomial, naive_flag_count,
    serre_polynomial,
};
use semican::linalg::{Matrix, PrimeField};
use semican::quiver::{DimVector, Quiver, Word};
use semican::semican::euler_convolution;
use semican::{CountOptions, Engine};

/// Random valid representation of the double quiver of A2 or A3 over F_p with small
/// dimension, found by rejection sampling.
fn random_module(
    quiver: Arc<Quiver>,
    dim: Vec<u32>,
    p: u64,
    entries: Vec<u32>,
) -> Option<ModpModule> {
    let field = PrimeField::new(p).unwrap();
    let dim = DimVector(dim);
    let mut it = entries.into_iter().cycle();
    let maps = quiver
        .double_arrows()
        .iter()
        .map(|a| {
            Matrix::from_fn(dim.get(a.target), dim.get(a.source), |_, _| {
                it.next().unwrap_or(0) % p as u32
            })
        })
        .collect();
    let z = ModpModule::new(field, quiver, dim, maps).ok()?;
    z.validate().is_valid().then_some(z)
}

fn small_dims() -> impl Strategy<Value = (usize, Vec<u32>)> {
    prop_oneof![
        (0u32..=2, 0u32..=2).prop_map(|(a, b)| (2, vec![a, b])),
        (0u32..=2, 0u32..=2, 0u32..=1).prop_map(|(a, b, c)| (3, vec![a, b, c])),
    ]
    .prop_filter("total at most 4", |(_, d)| d.iter().sum::<u32>() <= 4)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn recursive_count_matches_naive(
        (n, dim) in small_dims(),
        p in prop::sample::select(vec![2u64, 3]),
        entries in prop::collection::vec(0u32..3, 1..12),
    ) {
        let quiver = Arc::new(Quiver::linear(n));
        if let Some(z) = random_module(quiver.clone(), dim.clone(), p, entries) {
            for w in quiver.words_of_weight(z.dim()) {
                prop_assert_eq!(count_stable_flags(&z, &w).unwrap(), naive_flag_count(&z, &w, 4).unwrap());
                prop_assert_eq!(count_stable_flags(&z, &w).unwrap(), count_stable_flags_recursive(&z, &w).unwrap());
            }
        }
    }

    #[test]
    fn quotients_by_stable_lines_stay_valid(
        (n, dim) in small_dims(),
        entries in prop::collection::vec(0u32..3, 1..12),
        v in 0usize..3,
    ) {
        let quiver = Arc::new(Quiver::linear(n));
        let v = v % n;
        if let Some(z) = random_module(quiver, dim, 3, entries) {
            let k = z.stable_line_space(v);
            let basis = k.basis(v);
            for c in 0..basis.cols() {
                let mut bases: Vec<Matrix<u32>> = (0..n).map(|u| Matrix::filled(z.dim().get(u), 0, 0)).collect();
                bases[v] = basis.select_columns(&[c]);
                let line = GradedSubspace::new(z.field(), bases);
                let quotient = z.quotient(&line).unwrap();
                prop_assert!(quotient.validate().is_valid());
                prop_assert_eq!(quotient.total_dim() + 1, z.total_dim());
            }
        }
    }

    #[test]
    fn counts_are_invariant_under_relabelling(entries in prop::collection::vec(0u32..3, 1..12)) {
        // reversing A3 (1 <-> 3) swaps a with b~ and a~ with b
        let quiver = Arc::new(Quiver::linear(3));
        if let Some(z) = random_module(quiver.clone(), vec![1, 2, 1], 3, entries) {
            let das = quiver.double_arrows();
            let idx = |name: &str| das.iter().find(|a| a.name(&quiver) == name).unwrap().index();
            let mut maps = z.maps().to_vec();
            maps[idx("a")] = z.maps()[idx("b~")].clone();
            maps[idx("b~")] = z.maps()[idx("a")].clone();
            maps[idx("b")] = z.maps()[idx("a~")].clone();
            maps[idx("a~")] = z.maps()[idx("b")].clone();
            let field = z.field();
            let mirrored = ModpModule::new(field, quiver.clone(), DimVector(vec![1, 2, 1]), maps).unwrap();
            prop_assert!(mirrored.validate().is_valid());
            for w in quiver.words_of_weight(z.dim()) {
                let flipped = Word::new(w.letters().iter().map(|&x| 2 - x).collect());
                prop_assert_eq!(count_stable_flags(&z, &w).unwrap(), count_stable_flags(&mirrored, &flipped).unwrap());
            }
        }
    }
}

#[test]
fn every_fixture_counting_polynomial_verifies() {
    let opts = CountOptions::default();
    for (label, z) in fixtures::oracle_modules() {
        for w in z.quiver().words_of_weight(z.dim()) {
            let c = counting_polynomial(&z, &w, &opts).unwrap_or_else(|e| panic!("{label}: {e}"));
            let (p, count) = c.held_out();
            assert_eq!(c.eval(p), count.into(), "{label}");
            let s = serre_polynomial(&c);
            assert!(s.as_laurent().terms().all(|(e, _)| e % 2 == 0));
            assert_eq!(s.as_laurent().eval_at_one(), c.eval_at_one().into());
        }
    }
}

#[test]
fn euler_convolution_matches_euler_value_on_fixtures() {
    let engine = Engine::default();
    for (label, z) in fixtures::oracle_modules() {
        for w in z.quiver().words_of_weight(z.dim()) {
            assert_eq!(
                euler_convolution(&w, &z).unwrap(),
                engine.euler_value(&w, &z).unwrap(),
                "{label} {}",
                z.quiver().render_word(&w)
            );
        }
    }
}

#[test]
fn delta_coefficients_are_pairings() {
    let engine = Engine::default();
    for c in fixtures::components() {
        let delta = engine.delta_vector(&c).unwrap();
        for w in c.quiver().words_of_weight(c.dim()) {
            assert_eq!(
                delta.coeff(&w),
                engine.pairing(&w, &c).unwrap(),
                "{}",
                c.name
            );
        }
    }
}
