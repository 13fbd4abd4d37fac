//! Norm-duality, duality-reduction, and oracle-equivalence properties of the
//! sequence and operator layer.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ubp_forge::operator::DEFAULT_MAX_ITERS;
use ubp_forge::{NormMethod, Operator, SeqVector};

fn seq_vector() -> impl Strategy<Value = SeqVector> {
    prop::collection::vec((1usize..=64, -100.0f64..100.0), 0..12).prop_map(SeqVector::from_entries)
}

proptest! {
    /// The norm is attained at the normalized self, and no unit vector can
    /// read out more than the norm.
    #[test]
    fn norm_duality(y in seq_vector(), w in seq_vector()) {
        let norm = y.norm2();
        if norm > 0.0 {
            let attained = y.inner(&y.normalized().unwrap());
            prop_assert!((attained - norm).abs() <= 1e-12 * norm);
        }
        if let Ok(unit) = w.normalized() {
            prop_assert!(y.inner(&unit).abs() <= norm * (1.0 + 1e-12));
        }
    }

    /// Functional norms equal representer norms exactly (attained duality).
    #[test]
    fn functional_norm_is_representer_norm(s in seq_vector()) {
        let t = Operator::Functional(s.clone());
        let norm = t.operator_norm(1e-12).unwrap();
        prop_assert_eq!(norm.method, NormMethod::ExactFunctional);
        prop_assert!((norm.value - s.norm2()).abs() <= 1e-12 * s.norm2().max(1e-300));
    }

    /// Exact-variant norms scale with |c|.
    #[test]
    fn exact_norm_homogeneity(v in seq_vector(), c in -50.0f64..50.0) {
        for t in [Operator::Diagonal(v.clone()), Operator::Functional(v.clone())] {
            let base = t.operator_norm(1e-10).unwrap().value;
            let scaled = match &t {
                Operator::Diagonal(w) => Operator::Diagonal(w.scale(c)),
                Operator::Functional(w) => Operator::Functional(w.scale(c)),
                _ => unreachable!(),
            };
            let lhs = scaled.operator_norm(1e-10).unwrap().value;
            let rhs = c.abs() * base;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300), "{} vs {}", lhs, rhs);
        }
    }

    /// Serialization round-trips the canonical form.
    #[test]
    fn seq_vector_serde_round_trip(v in seq_vector()) {
        let json = serde_json::to_string(&v).unwrap();
        let back: SeqVector = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, v);
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> (Operator, Vec<Vec<f64>>) {
    let dense: Vec<Vec<f64>> = (0..dim)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let rows: Vec<&[f64]> = dense.iter().map(Vec::as_slice).collect();
    (Operator::matrix_from_rows(&rows, dim), dense)
}

fn eigensolve_top_singular(dense: &[Vec<f64>]) -> f64 {
    let d = dense.len();
    let m = DMatrix::from_fn(d, d, |i, j| dense[i][j]);
    let gram = m.transpose() * &m;
    let eigen = gram.symmetric_eigen();
    eigen
        .eigenvalues
        .iter()
        .cloned()
        .fold(0.0f64, f64::max)
        .max(0.0)
        .sqrt()
}

/// Power iteration against a dense eigensolve of the Gram matrix.
#[test]
fn power_iteration_matches_dense_eigensolve() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..60 {
        let dim = rng.gen_range(1..=6);
        let (op, dense) = random_matrix(&mut rng, dim);
        let got = op.operator_norm(1e-12).unwrap();
        let oracle = eigensolve_top_singular(&dense);
        assert!(
            (got.value - oracle).abs() <= 1e-6 * oracle.max(1e-12),
            "case {case} (d={dim}): {} vs {oracle}",
            got.value
        );
    }
}

/// Second, independent oracle route at d = 2: brute scan of the unit circle.
#[test]
fn power_iteration_matches_unit_circle_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let (op, dense) = random_matrix(&mut rng, 2);
        let mut best = 0.0f64;
        for k in 0..200_000 {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 200_000.0;
            let (c, s) = (theta.cos(), theta.sin());
            let r0 = dense[0][0] * c + dense[0][1] * s;
            let r1 = dense[1][0] * c + dense[1][1] * s;
            best = best.max((r0 * r0 + r1 * r1).sqrt());
        }
        let got = op.operator_norm(1e-12).unwrap().value;
        assert!(
            (got - best).abs() <= 1e-6 * best.max(1e-12),
            "{got} vs {best}"
        );
    }
}

/// Collapsing the codomain through unit functionals loses nothing: the top
/// left-singular functional composed with `T` has norm `||T||`, and no unit
/// functional composed with `T` can exceed it.
#[test]
fn functional_reduction_recovers_operator_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..30 {
        let dim = rng.gen_range(2..=8);
        let (op, dense) = random_matrix(&mut rng, dim);
        let sigma = op.operator_norm(1e-12).unwrap().value;
        if sigma < 1e-9 {
            continue;
        }
        let v = op.near_maximizer(0.5, 1e-12).unwrap();
        let u = op.apply(&v).unwrap().normalized().unwrap();

        // rep of the composed functional u^T T is T^T u.
        let rep = SeqVector::from_entries((1..=dim).map(|j| {
            (
                j,
                (1..=dim)
                    .map(|i| dense[i - 1][j - 1] * u.get(i))
                    .sum::<f64>(),
            )
        }));
        let composed = Operator::Functional(rep)
            .operator_norm(1e-12)
            .unwrap()
            .value;
        assert!(
            (composed - sigma).abs() <= 1e-8 * sigma,
            "case {case}: top functional gives {composed}, operator norm {sigma}"
        );

        // Arbitrary unit functionals never exceed the operator norm.
        for _ in 0..20 {
            let y: SeqVector =
                SeqVector::from_entries((1..=dim).map(|i| (i, rng.gen_range(-1.0..1.0))));
            let Ok(y) = y.normalized() else { continue };
            let rep = SeqVector::from_entries((1..=dim).map(|j| {
                (
                    j,
                    (1..=dim)
                        .map(|i| dense[i - 1][j - 1] * y.get(i))
                        .sum::<f64>(),
                )
            }));
            let value = Operator::Functional(rep)
                .operator_norm(1e-12)
                .unwrap()
                .value;
            assert!(
                value <= sigma + 1e-8,
                "unit functional got {value} over {sigma}"
            );
        }
    }
}

/// Everything is an immutable value, safe to share and send across threads.
#[test]
fn public_types_are_send_and_sync() {
    fn check<T: Send + Sync>() {}
    check::<SeqVector>();
    check::<Operator>();
    check::<ubp_forge::NormResult>();
    check::<ubp_forge::Certificate>();
    check::<ubp_forge::hump::FamilySpec>();
    check::<ubp_forge::hump::HumpWitness>();
    check::<ubp_forge::dual::SetSample>();
    check::<ubp_forge::dual::DualWitness>();
    check::<ubp_forge::series::SeriesSpec>();
    check::<ubp_forge::series::DivergenceCertificate>();
    check::<ubp_forge::fourier::PeriodicFn>();
    check::<ubp_forge::fourier::DecayProfile>();
}

/// Matrix norms are reproducible for a fixed seed and insensitive to it
/// beyond tolerance.
#[test]
fn power_iteration_is_seed_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (op, _) = random_matrix(&mut rng, 5);
    let a = op
        .operator_norm_seeded(1e-12, 0, DEFAULT_MAX_ITERS)
        .unwrap();
    let b = op
        .operator_norm_seeded(1e-12, 0, DEFAULT_MAX_ITERS)
        .unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    let c = op
        .operator_norm_seeded(1e-12, 99, DEFAULT_MAX_ITERS)
        .unwrap();
    assert!((a.value - c.value).abs() <= 1e-9 * a.value.max(1e-300));
}
