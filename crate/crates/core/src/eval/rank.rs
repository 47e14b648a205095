use super::EvalError;

fn check(x: &[f64], y: &[f64]) -> Result<(), EvalError> {
    if x.len() != y.len() {
        return Err(EvalError::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < 2 {
        return Err(EvalError::TooShort(x.len()));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(EvalError::NonFinite);
    }
    Ok(())
}

/// 1-based ranks; tied values share the mean of the ranks they occupy.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, EvalError> {
    check(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(EvalError::ConstantInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rank correlation: Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, EvalError> {
    check(x, y)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_and_reversed() {
        let x = [0.3, 1.0, 2.5, 7.0, 9.1];
        let y: Vec<f64> = x.iter().map(|v| v * 2.0 + 1.0).collect();
        assert_eq!(spearman(&x, &y).unwrap(), 1.0);
        let r: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_eq!(spearman(&x, &r).unwrap(), -1.0);
    }

    #[test]
    fn tied_example() {
        // ranks (1, 2.5, 2.5, 4) vs (1, 3, 2, 4) give 3/sqrt(10)
        let rho = spearman(&[1.0, 2.0, 2.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((rho - 0.9486832980505139).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(spearman(&[1.0], &[1.0]), Err(EvalError::TooShort(1))));
        assert!(matches!(spearman(&[1.0, 2.0], &[1.0]), Err(EvalError::LengthMismatch { .. })));
        assert!(matches!(spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(EvalError::ConstantInput)));
        assert!(matches!(spearman(&[1.0, f64::NAN], &[1.0, 2.0]), Err(EvalError::NonFinite)));
    }
}
