//! L2-regularized binary logistic regression.
//!
//! Minimizes `mean_i log(1 + exp(-s_i z_i)) + (lambda/2)‖w‖²` with
//! `z_i = w·x_i + b` and an unregularized bias. Training starts from zero and
//! takes full-batch proximal gradient steps: a gradient step on the mean
//! log-loss followed by the closed-form shrinkage `w / (1 + t·lambda)` for the
//! penalty. The step `t` is found by backtracking until the usual sufficient
//! decrease bound holds, so the step size does not depend on `lambda` and
//! very strong regularization still converges. Training stops once the full
//! gradient's infinity norm drops below the tolerance.

use rayon::prelude::*;

use super::EvalError;
use crate::linalg::{LinalgError, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRegConfig {
    pub lambda: f64,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl LogRegConfig {
    pub fn new(lambda: f64) -> Self {
        LogRegConfig { lambda, max_iterations: 1000, tolerance: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogRegModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub lambda: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Infinity norm of the objective gradient at the returned parameters.
    pub gradient_norm: f64,
    pub objective: f64,
}

impl LogRegModel {
    pub fn decision(&self, x: &SparseVector) -> f64 {
        x.dot_dense(&self.weights) + self.bias
    }

    pub fn predict(&self, x: &SparseVector) -> bool {
        self.decision(x) > 0.0
    }

    pub fn accuracy(&self, rows: &[SparseVector], labels: &[bool]) -> f64 {
        if rows.is_empty() {
            return 0.0;
        }
        let hits = rows.iter().zip(labels).filter(|(x, &y)| self.predict(x) == y).count();
        hits as f64 / rows.len() as f64
    }
}

/// `log(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn margins(rows: &[SparseVector], w: &[f64], b: f64) -> Vec<f64> {
    rows.par_iter().map(|x| x.dot_dense(w) + b).collect()
}

/// Mean log-loss given precomputed margins.
fn data_loss(z: &[f64], labels: &[bool]) -> f64 {
    let total: f64 = z.iter().zip(labels).map(|(&z, &y)| softplus(z) - if y { z } else { 0.0 }).sum();
    total / z.len() as f64
}

/// Gradient of the mean log-loss (no penalty).
fn data_gradient(rows: &[SparseVector], labels: &[bool], z: &[f64], dim: usize) -> (Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut gw = vec![0.0; dim];
    let mut gb = 0.0;
    for ((x, &y), &zi) in rows.iter().zip(labels).zip(z) {
        let r = sigmoid(zi) - if y { 1.0 } else { 0.0 };
        gb += r;
        for (j, v) in x.iter() {
            gw[j] += r * v;
        }
    }
    gw.iter_mut().for_each(|g| *g /= n);
    (gw, gb / n)
}

fn squared(w: &[f64]) -> f64 {
    w.iter().map(|v| v * v).sum()
}

/// Regularized objective at `(w, b)`.
pub fn objective(rows: &[SparseVector], labels: &[bool], lambda: f64, w: &[f64], b: f64) -> f64 {
    data_loss(&margins(rows, w, b), labels) + 0.5 * lambda * squared(w)
}

/// Gradient of [`objective`] with respect to `(w, b)`.
pub fn gradient(rows: &[SparseVector], labels: &[bool], lambda: f64, w: &[f64], b: f64) -> (Vec<f64>, f64) {
    let (mut gw, gb) = data_gradient(rows, labels, &margins(rows, w, b), w.len());
    gw.iter_mut().zip(w).for_each(|(g, wi)| *g += lambda * wi);
    (gw, gb)
}

fn inf_norm(gw: &[f64], gb: f64) -> f64 {
    gw.iter().fold(gb.abs(), |m, g| m.max(g.abs()))
}

fn validate(rows: &[SparseVector], labels: &[bool], lambda: f64) -> Result<usize, EvalError> {
    if rows.len() != labels.len() {
        return Err(EvalError::LengthMismatch { left: rows.len(), right: labels.len() });
    }
    let Some(first) = rows.first() else {
        return Err(EvalError::Empty("training set".into()));
    };
    let dim = first.dim();
    if let Some(x) = rows.iter().find(|x| x.dim() != dim) {
        return Err(LinalgError::DimensionMismatch { left: dim, right: x.dim() }.into());
    }
    if !labels.iter().any(|&y| y) || labels.iter().all(|&y| y) {
        return Err(EvalError::SingleClass);
    }
    if !lambda.is_finite() || lambda < 0.0 || rows.iter().any(|x| x.iter().any(|(_, v)| !v.is_finite())) {
        return Err(EvalError::NonFinite);
    }
    Ok(dim)
}

pub fn train_logreg(rows: &[SparseVector], labels: &[bool], lambda: f64) -> Result<LogRegModel, EvalError> {
    train_logreg_traced(rows, labels, LogRegConfig::new(lambda)).map(|(m, _)| m)
}

/// Trains and also returns the objective value after every accepted step,
/// starting with the value at the zero initialization.
pub fn train_logreg_traced(
    rows: &[SparseVector],
    labels: &[bool],
    cfg: LogRegConfig,
) -> Result<(LogRegModel, Vec<f64>), EvalError> {
    let dim = validate(rows, labels, cfg.lambda)?;
    let lambda = cfg.lambda;
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut z = margins(rows, &w, b);
    let mut f = data_loss(&z, labels);
    let mut objective_value = f;
    let mut trace = vec![objective_value];

    // 1/L for the log-loss is at least 4 / max(‖x‖² + 1).
    let max_sq = rows.iter().map(|x| x.squared_norm()).fold(0.0, f64::max);
    let mut step = 4.0 / (max_sq + 1.0);

    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        let (gw, gb) = data_gradient(rows, labels, &z, dim);
        let full = gw.iter().zip(&w).fold(gb.abs(), |m, (g, wi)| m.max((g + lambda * wi).abs()));
        if full < cfg.tolerance {
            converged = true;
            break;
        }
        let mut accepted = None;
        while step > 1e-30 {
            let shrink = 1.0 / (1.0 + step * lambda);
            let w_new: Vec<f64> = w.iter().zip(&gw).map(|(wi, g)| (wi - step * g) * shrink).collect();
            let b_new = b - step * gb;
            let z_new = margins(rows, &w_new, b_new);
            let f_new = data_loss(&z_new, labels);
            let mut lin = (b_new - b) * gb;
            let mut dist = (b_new - b) * (b_new - b);
            for ((wn, wo), g) in w_new.iter().zip(&w).zip(&gw) {
                let d = wn - wo;
                lin += d * g;
                dist += d * d;
            }
            let obj_new = f_new + 0.5 * lambda * squared(&w_new);
            if f_new <= f + lin + dist / (2.0 * step) && obj_new <= objective_value {
                accepted = Some((w_new, b_new, z_new, f_new, obj_new));
                break;
            }
            step *= 0.5;
        }
        let Some((w_new, b_new, z_new, f_new, obj_new)) = accepted else {
            break;
        };
        w = w_new;
        b = b_new;
        z = z_new;
        f = f_new;
        objective_value = obj_new;
        trace.push(objective_value);
        iterations += 1;
        step *= 2.0;
    }
    let (gw, gb) = gradient(rows, labels, lambda, &w, b);
    let gradient_norm = inf_norm(&gw, gb);
    converged |= gradient_norm < cfg.tolerance;
    Ok((
        LogRegModel { weights: w, bias: b, lambda, iterations, converged, gradient_norm, objective: objective_value },
        trace,
    ))
}
