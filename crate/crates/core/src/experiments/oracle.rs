//! Literal, unoptimized reference computations used to check the production
//! code paths. Nothing here calls into `mcda` or `predict`.

#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, DVector};

/// Net flows by direct nested-loop evaluation of the outranking formulas.
///
/// `s[i][j][l]` is the value of alternative `i` on criterion `j`, feature `l`;
/// `maximize[j][l]` the orientation and `gamma[j][l]` the weight of each cell.
/// Inputs must be finite.
pub fn oracle_net_flow(s: &[Vec<Vec<f64>>], maximize: &[Vec<bool>], gamma: &[Vec<f64>]) -> Vec<f64> {
    let n = s.len();
    let mut pi = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if i == k {
                continue;
            }
            let mut total = 0.0;
            for j in 0..maximize.len() {
                for l in 0..maximize[j].len() {
                    let raw = s[i][j][l] - s[k][j][l];
                    let d = if maximize[j][l] { raw } else { -raw };
                    let sgn = if d > 0.0 {
                        1.0
                    } else if d < 0.0 {
                        -1.0
                    } else {
                        0.0
                    };
                    total += gamma[j][l] * (sgn + 1.0) / 2.0;
                }
            }
            pi[i][k] = total;
        }
    }
    (0..n)
        .map(|i| {
            let mut plus = 0.0;
            let mut minus = 0.0;
            for a in 0..n {
                if a != i {
                    plus += pi[i][a];
                    minus += pi[a][i];
                }
            }
            plus / (n as f64 - 1.0) - minus / (n as f64 - 1.0)
        })
        .collect()
}

/// Weight vectors after every adaptation step, each obtained by solving
///
/// `(Σ_k ρ^{N-k} x_k x_kᵀ + δ ρ^N I) w = Σ_k ρ^{N-k} x_k d_k`
///
/// from scratch over the first `N` training pairs. Pairs are
/// (`[h(t-lag), …, h(t-lag-order+1)]`, `h(t)`) for every `t` with a full window.
/// Returns `None` if a system is singular.
pub fn oracle_weighted_ls(series: &[f64], lag: usize, order: usize, rho: f64, delta: f64) -> Option<Vec<Vec<f64>>> {
    let mut pairs: Vec<(Vec<f64>, f64)> = Vec::new();
    for t in 0..series.len() {
        if t + 1 < lag + order {
            continue;
        }
        let x: Vec<f64> = (0..order).map(|k| series[t - lag - k]).collect();
        pairs.push((x, series[t]));
    }

    let mut trajectory = Vec::with_capacity(pairs.len());
    for steps in 1..=pairs.len() {
        let mut a = DMatrix::<f64>::identity(order, order) * (delta * rho.powi(steps as i32));
        let mut b = DVector::<f64>::zeros(order);
        for (k, (x, d)) in pairs[..steps].iter().enumerate() {
            let weight = rho.powi((steps - 1 - k) as i32);
            let xv = DVector::from_column_slice(x);
            a += &xv * xv.transpose() * weight;
            b += xv * (weight * d);
        }
        let w = a.lu().solve(&b)?;
        trajectory.push(w.iter().copied().collect());
    }
    Some(trajectory)
}
