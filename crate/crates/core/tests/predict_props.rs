use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use tensor_mcda::experiments::oracle::oracle_weighted_ls;
use tensor_mcda::predict::{first_trainable_index, predict_fiber, regressor, FilterState};
use tensor_mcda::tensor::labels;
use tensor_mcda::{predict_tensor, DecisionTensor, FilterConfig};

/// Weight vector after every RLS step on `series`.
fn rls_trajectory(series: &[f64], lag: usize, order: usize, rho: f64, delta: f64) -> Vec<Vec<f64>> {
    let mut st = FilterState::rls(order, delta);
    (first_trainable_index(lag, order)..series.len())
        .map(|t| {
            let x = regressor(series, t, lag, order).unwrap();
            st.rls_step(&x, series[t], rho).unwrap();
            st.weights().to_vec()
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rls_matches_direct_solve(
        series in proptest::collection::vec(-5.0f64..5.0, 30..80),
        order in prop_oneof![Just(1usize), Just(2), Just(4)],
        rho in prop_oneof![Just(0.9f64), Just(0.99), Just(1.0)],
        lag in 1usize..4,
    ) {
        let fast = rls_trajectory(&series, lag, order, rho, 1e-2);
        let slow = oracle_weighted_ls(&series, lag, order, rho, 1e-2).unwrap();
        prop_assert_eq!(fast.len(), slow.len());
        for (step, (a, b)) in fast.iter().zip(&slow).enumerate() {
            let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            prop_assert!(max_abs(&diff) <= 1e-6 * max_abs(b).max(1e-12), "step {step}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn constant_shift_moves_prediction(c in -50.0f64..50.0, k in -50.0f64..50.0, lag in 1usize..6) {
        let cfg = FilterConfig { init_delta: 1e-8, ..FilterConfig::rls(2, 1.0) };
        let a = predict_fiber(&vec![c; 30], lag, &cfg).unwrap().value;
        let b = predict_fiber(&vec![c + k; 30], lag, &cfg).unwrap().value;
        prop_assert!((b - a - k).abs() <= 1e-6 * (1.0 + c.abs() + k.abs()), "{a} {b} {k}");
    }

    #[test]
    fn tensor_prediction_permutes_with_input(
        n in 1usize..4,
        m in 1usize..4,
        q in 2usize..6,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = 14;
        let values: Vec<f64> = (0..n * m * len).map(|_| rng.random_range(-10.0..10.0)).collect();
        let t = DecisionTensor::new(labels("a", n), labels("c", m), (1990..1990 + len as i64).collect(), values).unwrap();
        let cfgs: Vec<FilterConfig> = (0..m).map(|j| FilterConfig::rls(2, [0.9, 0.99, 1.0][j % 3])).collect();
        let base = predict_tensor(&t, q, &cfgs).unwrap();
        prop_assert_eq!(base.predictions.as_tensor().shape(), [n, m, q]);
        prop_assert_eq!(&predict_tensor(&t, q, &cfgs).unwrap(), &base);

        let pa: Vec<usize> = (0..n).rev().collect();
        let pc: Vec<usize> = (0..m).rev().collect();
        let pcfgs: Vec<FilterConfig> = pc.iter().map(|&j| cfgs[j]).collect();
        let moved = predict_tensor(&t.permute_alternatives(&pa).unwrap().permute_criteria(&pc).unwrap(), q, &pcfgs).unwrap();
        let expected = base.predictions.as_tensor().permute_alternatives(&pa).unwrap().permute_criteria(&pc).unwrap();
        prop_assert_eq!(moved.predictions.as_tensor(), &expected);
    }
}

#[test]
fn linear_recursion_is_learned_exactly() {
    // cos(ωt) satisfies h(t) = 2cos(ω) h(t-1) − h(t-2)
    let omega = 0.3f64;
    let s: Vec<f64> = (0..60).map(|t| (omega * t as f64).cos() + 0.5 * (omega * t as f64).sin()).collect();
    let cfg = FilterConfig { init_delta: 1e-10, ..FilterConfig::rls(2, 1.0) };
    let p = predict_fiber(&s, 1, &cfg).unwrap();
    for (k, e) in p.errors.iter().enumerate().skip(2) {
        assert!(e.abs() < 1e-8, "a-priori error {e} at adaptation step {k}");
    }
    assert!((p.weights[0] - 2.0 * omega.cos()).abs() < 1e-6);
    assert!((p.weights[1] + 1.0).abs() < 1e-6);
}

#[test]
fn noiseless_line_weights() {
    let s: Vec<f64> = (1..=50).map(|t| 3.0 + 0.5 * t as f64).collect();
    let slow = oracle_weighted_ls(&s, 1, 2, 1.0, 1e-6).unwrap();
    let w = slow.last().unwrap();
    assert!((w[0] - 2.0).abs() < 1e-3 && (w[1] + 1.0).abs() < 1e-3, "{w:?}");
    let fast = rls_trajectory(&s, 1, 2, 1.0, 1e-6);
    assert!(fast.last().unwrap().iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-6));
}

#[test]
fn single_step_agrees_with_oracle() {
    let s = [0.3, -1.2, 2.5];
    let fast = rls_trajectory(&s, 1, 2, 0.95, 1e-2);
    let slow = oracle_weighted_ls(&s, 1, 2, 0.95, 1e-2).unwrap();
    assert_eq!(fast.len(), 1);
    for (a, b) in fast[0].iter().zip(&slow[0]) {
        assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
    }
}

/// Squared a-priori errors of NLMS (order 2, μ = 0.5) on stationary AR(1)
/// paths (φ = 0.8, unit noise, 500 samples), averaged over `paths` seeds.
fn nlms_learning_curve(regularization: f64, paths: u64, seed_base: u64) -> Vec<f64> {
    let noise = Normal::new(0.0, 1.0).unwrap();
    let mut curve = vec![0.0; 498];
    for seed in seed_base..seed_base + paths {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = vec![0.0f64; 500];
        s[0] = noise.sample(&mut rng) / (1.0f64 - 0.64).sqrt();
        for t in 1..500 {
            s[t] = 0.8 * s[t - 1] + noise.sample(&mut rng);
        }
        let cfg = FilterConfig { regularization, ..FilterConfig::nlms(2, 0.5) };
        let p = predict_fiber(&s, 1, &cfg).unwrap();
        for (c, e) in curve.iter_mut().zip(&p.errors) {
            *c += e * e / paths as f64;
        }
    }
    curve
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

proptest! {
    #[test]
    fn nlms_step_shrinks_error_by_normalized_factor(
        w in proptest::collection::vec(-3.0f64..3.0, 3),
        x in proptest::collection::vec(-3.0f64..3.0, 3),
        d in -10.0f64..10.0,
        mu in 0.05f64..1.5,
    ) {
        let mut st = FilterState::nlms(3);
        // drive the state to `w` with one exact step per tap
        for k in 0..3 {
            let mut e = vec![0.0; 3];
            e[k] = 1.0;
            let target = w[k] - st.weights()[k];
            st.nlms_step(&e, st.output(&e) + target * 2.0, 0.5, 0.0).unwrap();
        }
        prop_assert!(st.weights().iter().zip(&w).all(|(a, b)| (a - b).abs() < 1e-12));
        let energy: f64 = x.iter().map(|v| v * v).sum();
        let eps = 1e-6;
        let prior = st.nlms_step(&x, d, mu, eps).unwrap();
        let post = d - st.output(&x);
        let factor = 1.0 - mu * energy / (eps + energy);
        prop_assert!((post - factor * prior).abs() <= 1e-9 * (1.0 + prior.abs()));
    }
}

#[test]
fn regularized_nlms_approaches_noise_floor() {
    let curve = nlms_learning_curve(1.0, 128, 0);
    // stationary variance 1 / (1 - φ²) ≈ 2.78, innovation variance 1
    assert!(mean(&curve[..3]) > 1.5);
    assert!(mean(&curve[curve.len() - 100..]) < 1.5);
}
