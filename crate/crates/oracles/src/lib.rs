//! Slow, direct reference computations used as test oracles.
//!
//! Nothing here shares code with `lexvec-core`. Each routine follows the
//! textbook definition as literally as possible so that agreement with the
//! library is evidence of correctness rather than of shared bugs.

/// Dense dot product over the norm product.
pub fn dense_cosine(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for i in 0..a.len() {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    dot / (na.sqrt() * nb.sqrt())
}

/// Expands a list of active column ids into a 0/1 vector of length `dim`.
pub fn densify_ids(ids: &[usize], dim: usize) -> Vec<f64> {
    let mut v = vec![0.0; dim];
    for &i in ids {
        v[i] = 1.0;
    }
    v
}

/// `|A ∩ B| / sqrt(|A| |B|)` using explicit set membership.
pub fn set_cosine(a: &[usize], b: &[usize]) -> f64 {
    let set: std::collections::HashSet<usize> = a.iter().copied().collect();
    let inter = b.iter().filter(|x| set.contains(x)).count() as f64;
    inter / ((a.len() as f64) * (b.len() as f64)).sqrt()
}

/// Average ranks by direct counting: rank(i) = 1 + #{x_j < x_i} + (#{x_j = x_i} - 1) / 2.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&xi| {
            let less = x.iter().filter(|&&xj| xj < xi).count() as f64;
            let equal = x.iter().filter(|&&xj| xj == xi).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

/// Two-pass Pearson correlation.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..x.len() {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    sxy / (sxx * syy).sqrt()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Binomial coefficient by multiplicative formula in f64.
fn choose(n: u64, k: u64) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r *= (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// Two-sided exact sign-test p-value: `min(1, 2 * P(Bin(n, 1/2) <= k))`.
pub fn binomial_two_sided(n: u64, k: u64) -> f64 {
    let mut tail = 0.0;
    for i in 0..=k {
        tail += choose(n, i) * 0.5f64.powi(n as i32);
    }
    (2.0 * tail).min(1.0)
}

/// Upper tail of the chi-square distribution with one degree of freedom,
/// integrating the density with composite Simpson's rule on `[x, x + 400]`.
pub fn chi2_1_tail(x: f64) -> f64 {
    assert!(x > 0.0);
    let density = |t: f64| (-t / 2.0).exp() / (2.0 * std::f64::consts::PI * t).sqrt();
    let upper = x + 400.0;
    let n = 400_000usize;
    let h = (upper - x) / n as f64;
    let mut s = density(x) + density(upper);
    for i in 1..n {
        let t = x + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * density(t);
    }
    s * h / 3.0
}

/// One-sided Jacobi SVD (Hestenes). Returns singular values sorted in
/// descending order. `a` is row-major with `rows` rows and `cols` columns.
pub fn jacobi_singular_values(a: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    // Work on the orientation with at least as many rows as columns.
    let (m, n, mut w) = if rows >= cols {
        (rows, cols, a.to_vec())
    } else {
        let mut t = vec![0.0; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                t[j * rows + i] = a[i * cols + j];
            }
        }
        (cols, rows, t)
    };
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = 0.0;
                for i in 0..m {
                    let x = w[i * n + p];
                    let y = w[i * n + q];
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma.abs() <= 1e-15 * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let x = w[i * n + p];
                    let y = w[i * n + q];
                    w[i * n + p] = c * x - s * y;
                    w[i * n + q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|j| (0..m).map(|i| w[i * n + j] * w[i * n + j]).sum::<f64>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Optimal rank-`k` Frobenius reconstruction error, `sqrt(sum_{i >= k} s_i^2)`.
pub fn optimal_rank_k_error(singular_values: &[f64], k: usize) -> f64 {
    singular_values.iter().skip(k).map(|s| s * s).sum::<f64>().sqrt()
}

/// Largest eigenvalue of a symmetric matrix by plain power iteration.
pub fn power_iteration_top_eigenvalue(a: &[f64], n: usize, iters: usize) -> f64 {
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..iters {
        let mut next = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                next[i] += a[i * n + j] * v[j];
            }
        }
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        lambda = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = next.iter().map(|x| x / norm).collect();
    }
    lambda
}

/// Central finite-difference gradient of `f` at `x`.
pub fn central_difference<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], step: f64) -> Vec<f64> {
    let mut g = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let orig = probe[i];
        probe[i] = orig + step;
        let up = f(&probe);
        probe[i] = orig - step;
        let down = f(&probe);
        probe[i] = orig;
        g.push((up - down) / (2.0 * step));
    }
    g
}

/// Minimizes a 2-D function by repeated grid refinement around the best point.
/// Returns `(argmin, min)`.
pub fn grid_search_2d<F: Fn(f64, f64) -> f64>(f: F, center: (f64, f64), radius: f64) -> ((f64, f64), f64) {
    let mut best = center;
    let mut best_val = f(center.0, center.1);
    let mut r = radius;
    let steps = 40i32;
    while r > 1e-9 {
        let (cx, cy) = best;
        for i in -steps..=steps {
            for j in -steps..=steps {
                let x = cx + r * i as f64 / steps as f64;
                let y = cy + r * j as f64 / steps as f64;
                let v = f(x, y);
                if v < best_val {
                    best_val = v;
                    best = (x, y);
                }
            }
        }
        r /= 8.0;
    }
    (best, best_val)
}

/// Mean logistic loss plus `lambda/2 * w^2` for a single feature with bias,
/// written out directly from the definition.
pub fn logistic_objective_1d(xs: &[f64], ys: &[bool], lambda: f64, w: f64, b: f64) -> f64 {
    let mut total = 0.0;
    for (x, &y) in xs.iter().zip(ys) {
        let z = w * x + b;
        let p = 1.0 / (1.0 + (-z).exp());
        total += if y { -p.ln() } else { -(1.0 - p).ln() };
    }
    total / xs.len() as f64 + 0.5 * lambda * w * w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_recovers_diagonal() {
        let a = [3.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let s = jacobi_singular_values(&a, 2, 3);
        assert!((s[0] - 3.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[1.0, 2.0, 2.0, 4.0]), vec![1.0, 2.5, 2.5, 4.0]);
    }

    #[test]
    fn binomial_ten_zero() {
        assert!((binomial_two_sided(10, 0) - 2.0 / 1024.0).abs() < 1e-15);
    }

    #[test]
    fn chi2_tail_matches_known_value() {
        // P(chi2_1 > 3.841459) = 0.05
        assert!((chi2_1_tail(3.841458820694124) - 0.05).abs() < 1e-9);
    }
}
