use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares fit of ln F̂(n) = exponent · ln n + intercept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthFit {
    pub points: Vec<(u64, u64)>,
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window_factor: f64,
}

pub fn fit_growth(points: &[(u64, u64)], window_factor: f64) -> Result<GrowthFit> {
    if points.len() < 3 {
        return Err(Error::invalid(format!(
            "growth fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(n, f)| n == 0 || f == 0) {
        return Err(Error::invalid("growth fit needs n >= 1 and sup >= 1"));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, f)| (f as f64).ln()).collect();
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("growth fit needs at least two distinct n"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + exponent * x)).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(GrowthFit {
        points: points.to_vec(),
        exponent,
        intercept,
        r_squared,
        window_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        // F = 3 n^{1/2} on perfect squares... use n = 4^j so F is an integer.
        let pts: Vec<(u64, u64)> = (1..6).map(|j| (4u64.pow(j), 3 * 2u64.pow(j))).collect();
        let fit = fit_growth(&pts, 10.0).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_data() {
        let fit = fit_growth(&[(1, 2), (10, 2), (100, 2)], 10.0).unwrap();
        assert_eq!(fit.exponent, 0.0);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_growth(&[(1, 1), (2, 2)], 10.0).is_err());
        assert!(fit_growth(&[(5, 1), (5, 2), (5, 3)], 10.0).is_err());
        assert!(fit_growth(&[(1, 0), (2, 2), (3, 3)], 10.0).is_err());
    }
}
