//! McNemar's test on paired classifier outputs.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::EvalError;

/// Discordant-pair count at or above which the chi-square approximation is used.
pub const EXACT_THRESHOLD: u64 = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McNemarResult {
    /// A correct, B wrong.
    pub b: u64,
    /// A wrong, B correct.
    pub c: u64,
    /// Continuity-corrected `(max(|b-c|-1, 0))² / (b+c)`, 0 when `b+c = 0`.
    pub statistic: f64,
    pub p_value: f64,
    /// Whether the exact binomial branch produced `p_value`.
    pub exact: bool,
}

/// `min(1, 2 P(Bin(n, 1/2) <= k))` summed in integers, exact for `n < 64`.
fn exact_two_sided(n: u64, k: u64) -> f64 {
    let mut term: u64 = 1;
    let mut tail: u64 = 1;
    for i in 1..=k {
        term = term * (n - i + 1) / i;
        tail += term;
    }
    (2.0 * tail as f64 / 2f64.powi(n as i32)).min(1.0)
}

/// Test from discordant counts alone.
pub fn mcnemar_counts(b: u64, c: u64) -> McNemarResult {
    let n = b + c;
    if n == 0 {
        return McNemarResult { b, c, statistic: 0.0, p_value: 1.0, exact: true };
    }
    let diff = (b.abs_diff(c) as f64 - 1.0).max(0.0);
    let statistic = diff * diff / n as f64;
    if n >= EXACT_THRESHOLD {
        let p = ChiSquared::new(1.0).expect("1 dof").sf(statistic);
        McNemarResult { b, c, statistic, p_value: p.min(1.0), exact: false }
    } else {
        McNemarResult { b, c, statistic, p_value: exact_two_sided(n, b.min(c)), exact: true }
    }
}

/// Compares predictions of systems A and B against gold labels.
pub fn mcnemar<T: PartialEq>(preds_a: &[T], preds_b: &[T], gold: &[T]) -> Result<McNemarResult, EvalError> {
    if preds_a.len() != gold.len() {
        return Err(EvalError::LengthMismatch { left: preds_a.len(), right: gold.len() });
    }
    if preds_b.len() != gold.len() {
        return Err(EvalError::LengthMismatch { left: preds_b.len(), right: gold.len() });
    }
    let (mut b, mut c) = (0, 0);
    for ((a, bb), g) in preds_a.iter().zip(preds_b).zip(gold) {
        match (a == g, bb == g) {
            (true, false) => b += 1,
            (false, true) => c += 1,
            _ => {}
        }
    }
    Ok(mcnemar_counts(b, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_counts() {
        let r = mcnemar_counts(7, 7);
        assert_eq!((r.statistic, r.p_value), (0.0, 1.0));
        let r = mcnemar_counts(30, 30);
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        assert_eq!(mcnemar_counts(0, 0).p_value, 1.0);
    }

    #[test]
    fn exact_branch() {
        let r = mcnemar_counts(10, 0);
        assert!(r.exact);
        assert_eq!(r.p_value, 0.001953125);
        assert_eq!(mcnemar_counts(3, 5).p_value, 0.7265625);
    }

    #[test]
    fn corrected_branch() {
        let r = mcnemar_counts(40, 10);
        assert!(!r.exact);
        assert_eq!(r.statistic, 16.82);
        assert!((r.p_value - 4.109787809945878e-05).abs() < 1e-12);
    }

    #[test]
    fn from_predictions() {
        let gold = [1, 1, 0, 0, 1];
        let a = [1, 1, 0, 1, 0];
        let b = [0, 1, 1, 1, 1];
        let r = mcnemar(&a, &b, &gold).unwrap();
        assert_eq!((r.b, r.c), (2, 1));
        assert_eq!(mcnemar(&b, &a, &gold).unwrap().p_value, r.p_value);
        assert!(mcnemar(&a[..2], &b, &gold).is_err());
    }
}
