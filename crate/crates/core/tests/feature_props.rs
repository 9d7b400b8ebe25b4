use proptest::prelude::*;
use tensor_mcda::features::{extract_features, feature_average, feature_cv, feature_slope, FeatureSet, CV_SENTINEL};
use tensor_mcda::tensor::labels;
use tensor_mcda::DecisionTensor;

fn series() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1e3f64..1e3, 2..60)
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + scale)
}

fn magnitude(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

proptest! {
    #[test]
    fn average_is_affine(x in series(), a in -20.0f64..20.0, b in -100.0f64..100.0) {
        let y: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let lhs = feature_average(&y).unwrap();
        let rhs = a * feature_average(&x).unwrap() + b;
        prop_assert!(close(lhs, rhs, a.abs() * magnitude(&x) + b.abs()), "{lhs} vs {rhs}");
    }

    #[test]
    fn slope_ignores_offset_and_scales(x in series(), a in -20.0f64..20.0, b in -100.0f64..100.0) {
        let y: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let lhs = feature_slope(&y).unwrap();
        let rhs = a * feature_slope(&x).unwrap();
        prop_assert!(close(lhs, rhs, a.abs() * magnitude(&x) + b.abs()), "{lhs} vs {rhs}");
    }

    #[test]
    fn reversed_slope_is_negated(x in series()) {
        let r: Vec<f64> = x.iter().rev().copied().collect();
        let (s, t) = (feature_slope(&x).unwrap(), feature_slope(&r).unwrap());
        prop_assert!(close(s, -t, magnitude(&x)), "{s} vs {t}");
    }

    #[test]
    fn cv_is_scale_invariant(x in proptest::collection::vec(0.5f64..1e3, 2..60), a in 1e-3f64..1e3) {
        let y: Vec<f64> = x.iter().map(|v| a * v).collect();
        let (p, q) = (feature_cv(&x).unwrap(), feature_cv(&y).unwrap());
        prop_assert!((p - q).abs() <= 1e-9 * (1.0 + p), "{p} vs {q}");
        prop_assert!(p >= 0.0);
    }

    #[test]
    fn extraction_commutes_with_permutation(
        n in 2usize..5,
        m in 1usize..4,
        q in 2usize..10,
        seed in any::<u64>(),
    ) {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s >> 33
        };
        let values: Vec<f64> = (0..n * m * q).map(|_| (next() % 2000) as f64 / 10.0 - 50.0).collect();
        let t = DecisionTensor::new(labels("a", n), labels("c", m), (0..q as i64).collect(), values).unwrap();
        let mut pa: Vec<usize> = (0..n).collect();
        let mut pc: Vec<usize> = (0..m).collect();
        for k in (1..n).rev() { pa.swap(k, next() as usize % (k + 1)); }
        for k in (1..m).rev() { pc.swap(k, next() as usize % (k + 1)); }

        let set = FeatureSet::standard();
        let base = extract_features(&t, &set).unwrap();
        let permuted = extract_features(&t.permute_alternatives(&pa).unwrap().permute_criteria(&pc).unwrap(), &set).unwrap();
        for (ii, &i) in pa.iter().enumerate() {
            for (jj, &j) in pc.iter().enumerate() {
                for l in 0..set.len() {
                    prop_assert_eq!(permuted.get(ii, jj, l).to_bits(), base.get(i, j, l).to_bits());
                }
            }
        }
    }
}

#[test]
fn zero_mean_cv_is_the_sentinel() {
    assert_eq!(feature_cv(&[-2.0, 2.0]).unwrap(), CV_SENTINEL);
    assert!(feature_cv(&[1.0]).is_err());
    assert!(feature_slope(&[1.0]).is_err());
    assert_eq!(feature_average(&[1.0]).unwrap(), 1.0);
}
