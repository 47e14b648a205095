//! Randomized truncated SVD of the sparse binary matrix.
//!
//! Range finding follows the usual randomized subspace iteration: sample
//! `Y = LΩ` with a seeded Gaussian `Ω` of width `K + oversampling`, refine
//! with a few rounds of `Y ← L(LᵀQ)` re-orthonormalizing between products,
//! then take the exact SVD of the small projection `B = QᵀL`.
//!
//! Sparse products are parallel over output rows, and every output entry is
//! summed sequentially in ascending index order, so results are bit-identical
//! for any thread count.

use nalgebra::{DMatrix, SVD};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::{DenseEmbeddingTable, LinalgError};
use crate::matrix::SparseBinaryMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SvdOptions {
    pub oversampling: usize,
    pub power_iterations: usize,
}

impl Default for SvdOptions {
    fn default() -> Self {
        SvdOptions { oversampling: 10, power_iterations: 2 }
    }
}

/// Rank-`K` factors with `L ≈ U diag(sigma) Vᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    /// `N×K`, orthonormal columns.
    pub u: DMatrix<f64>,
    /// Non-increasing, non-negative.
    pub sigma: Vec<f64>,
    /// `D×K`, orthonormal columns.
    pub v: DMatrix<f64>,
}

impl SvdResult {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// `U diag(sigma) Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut us = self.u.clone();
        for (k, s) in self.sigma.iter().enumerate() {
            us.column_mut(k).scale_mut(*s);
        }
        us * self.v.transpose()
    }
}

/// Which rows become the embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// Rows of `U`.
    #[default]
    U,
    /// Rows of `UΣ`; preserves cosines between rows of `L` at full rank.
    USigma,
}

/// Dense `N×D` copy of the matrix.
pub fn sparse_to_dense(m: &SparseBinaryMatrix) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(m.n_words(), m.n_features());
    for (i, row) in m.rows().iter().enumerate() {
        for &j in row {
            out[(i, j as usize)] = 1.0;
        }
    }
    out
}

/// Sums rows of `x` selected by each index list: `out[r, :] = Σ_{j ∈ lists[r]} x[j, :]`.
fn gather_rows(lists: &[Vec<u32>], x: &DMatrix<f64>) -> DMatrix<f64> {
    let width = x.ncols();
    let rows: Vec<Vec<f64>> = lists
        .par_iter()
        .map(|list| {
            let mut acc = vec![0.0; width];
            for &j in list {
                for (c, a) in acc.iter_mut().enumerate() {
                    *a += x[(j as usize, c)];
                }
            }
            acc
        })
        .collect();
    DMatrix::from_fn(lists.len(), width, |r, c| rows[r][c])
}

fn orthonormal_basis(y: DMatrix<f64>) -> DMatrix<f64> {
    y.qr().q()
}

pub fn truncated_svd(m: &SparseBinaryMatrix, k: usize, seed: u64) -> Result<SvdResult, LinalgError> {
    truncated_svd_with(m, k, seed, SvdOptions::default())
}

pub fn truncated_svd_with(
    m: &SparseBinaryMatrix,
    k: usize,
    seed: u64,
    opts: SvdOptions,
) -> Result<SvdResult, LinalgError> {
    if m.nnz() == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let (n, d) = (m.n_words(), m.n_features());
    let max = n.min(d);
    if k == 0 || k > max {
        return Err(LinalgError::RankOutOfRange { k, max });
    }
    let width = (k + opts.oversampling).min(max);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega: Vec<f64> = (0..d * width).map(|_| StandardNormal.sample(&mut rng)).collect();
    let omega = DMatrix::from_row_slice(d, width, &omega);

    let rows = m.rows();
    let cols = m.postings();
    let mut q = orthonormal_basis(gather_rows(rows, &omega));
    for _ in 0..opts.power_iterations {
        let z = orthonormal_basis(gather_rows(cols, &q));
        q = orthonormal_basis(gather_rows(rows, &z));
    }

    // B = QᵀL, computed as (LᵀQ)ᵀ.
    let b = gather_rows(cols, &q).transpose();
    let svd = SVD::new(b, true, true);
    let small_u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]).then(a.cmp(&b)));
    order.truncate(k);

    let full_u = &q * &small_u;
    let mut u = DMatrix::zeros(n, k);
    let mut v = DMatrix::zeros(d, k);
    let mut sigma = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        u.set_column(dst, &full_u.column(src));
        v.set_column(dst, &v_t.row(src).transpose());
        sigma.push(svd.singular_values[src].max(0.0));
    }

    // Make the largest-magnitude entry of each U column positive (first such
    // entry on ties).
    for c in 0..k {
        let mut best = 0;
        for r in 1..n {
            if u[(r, c)].abs() > u[(best, c)].abs() {
                best = r;
            }
        }
        if u[(best, c)] < 0.0 {
            u.column_mut(c).neg_mut();
            v.column_mut(c).neg_mut();
        }
    }
    Ok(SvdResult { u, sigma, v })
}

/// Dense embedding of rank `k` with the matrix vocabulary.
pub fn densify(
    m: &SparseBinaryMatrix,
    k: usize,
    seed: u64,
    weighting: Weighting,
) -> Result<DenseEmbeddingTable, LinalgError> {
    let svd = truncated_svd(m, k, seed)?;
    let mut data = Vec::with_capacity(m.n_words() * k);
    for r in 0..m.n_words() {
        for c in 0..k {
            let x = svd.u[(r, c)];
            data.push(match weighting {
                Weighting::U => x,
                Weighting::USigma => x * svd.sigma[c],
            });
        }
    }
    DenseEmbeddingTable::new(m.vocab().to_vec(), k, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_matrix, WordFeaturePair};

    fn matrix(cells: &[(usize, usize)]) -> SparseBinaryMatrix {
        build_matrix(
            cells.iter().map(|&(i, j)| WordFeaturePair::parse(&format!("w{i:02}"), &format!("F.C{j:02}")).unwrap()),
        )
    }

    #[test]
    fn identity_pattern() {
        let m = matrix(&[(0, 0), (1, 1), (2, 2), (3, 3)]);
        let r = truncated_svd(&m, 4, 1).unwrap();
        for s in &r.sigma {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn all_ones_rank_one() {
        let cells: Vec<_> = (0..3).flat_map(|i| (0..5).map(move |j| (i, j))).collect();
        let r = truncated_svd(&matrix(&cells), 1, 7).unwrap();
        assert!((r.sigma[0] - 3.872983346207417).abs() < 1e-12);
        // sign convention
        assert!(r.u.column(0).iter().all(|&x| x > 0.0));
    }

    #[test]
    fn rank_errors() {
        let m = matrix(&[(0, 0), (1, 1)]);
        assert_eq!(truncated_svd(&m, 0, 1), Err(LinalgError::RankOutOfRange { k: 0, max: 2 }));
        assert_eq!(truncated_svd(&m, 3, 1), Err(LinalgError::RankOutOfRange { k: 3, max: 2 }));
        assert_eq!(truncated_svd(&build_matrix(Vec::new()), 1, 1), Err(LinalgError::EmptyMatrix));
    }

    #[test]
    fn densify_shape_and_weighting() {
        let m = matrix(&[(0, 0), (0, 1), (1, 1), (2, 2), (2, 0)]);
        let t = densify(&m, 2, 3, Weighting::U).unwrap();
        assert_eq!((t.len(), t.dim()), (3, 2));
        assert_eq!(t.vocab(), m.vocab());
        let w = densify(&m, 2, 3, Weighting::USigma).unwrap();
        let svd = truncated_svd(&m, 2, 3).unwrap();
        assert_eq!(w.row(1)[0], t.row(1)[0] * svd.sigma[0]);
    }
}
