//! Diversity-order and rate-slope fits on metric curves.

use super::AnalyticError;

/// Least-squares slope of y against x.
fn ls_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for &(x, y) in points {
        num += (x - mean_x) * (y - mean_y);
        den += (x - mean_x) * (x - mean_x);
    }
    num / den
}

/// Diversity order: least-squares slope of -log10(outage) against
/// log10(P_s) over the supplied high-power points. Points with zero
/// outage are unusable and skipped; at least two must remain.
pub fn diversity_order(curve: &[(f64, f64)]) -> Result<f64, AnalyticError> {
    let usable: Vec<(f64, f64)> = curve
        .iter()
        .filter(|(p, out)| *p > 0.0 && *out > 0.0)
        .map(|&(p, out)| (p.log10(), -out.log10()))
        .collect();
    if usable.len() < 2 {
        return Err(AnalyticError::NotEnoughPoints {
            need: 2,
            got: usable.len(),
        });
    }
    Ok(ls_slope(&usable))
}

/// Ergodic-rate slope: least-squares slope of the rate against
/// log2(P_s) over the supplied high-power points.
pub fn rate_slope(curve: &[(f64, f64)]) -> Result<f64, AnalyticError> {
    let usable: Vec<(f64, f64)> = curve
        .iter()
        .filter(|(p, _)| *p > 0.0)
        .map(|&(p, r)| (p.log2(), r))
        .collect();
    if usable.len() < 2 {
        return Err(AnalyticError::NotEnoughPoints {
            need: 2,
            got: usable.len(),
        });
    }
    Ok(ls_slope(&usable))
}
