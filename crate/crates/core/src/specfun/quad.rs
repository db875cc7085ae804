//! Gauss–Laguerre and Gauss–Chebyshev (first kind) quadrature rules.

use super::SpecFunError;

/// Which family a [`QuadRule`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    /// Nodes/weights for ∫_0^∞ f(x) e^{-x} dx ≈ Σ w_i f(x_i).
    GaussLaguerre,
    /// First-kind Chebyshev abscissas x_k = cos((2k-1)π/(2K)); the
    /// constant weight π/K is applied by the caller.
    GaussChebyshev1,
}

/// An immutable quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub kind: QuadKind,
    pub order: usize,
    pub nodes: Vec<f64>,
    /// Empty for the Chebyshev kind.
    pub weights: Vec<f64>,
}

impl QuadRule {
    /// ∫_0^∞ f(x) e^{-x} dx for a Laguerre rule.
    pub fn integrate_exp_weighted(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        assert_eq!(self.kind, QuadKind::GaussLaguerre);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// ∫_{-1}^{1} f(x) dx via the first-kind Chebyshev transformation
    /// (π/K) Σ f(x_k) sqrt(1 - x_k²).
    pub fn integrate_unit_interval(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        assert_eq!(self.kind, QuadKind::GaussChebyshev1);
        let w = std::f64::consts::PI / self.order as f64;
        self.nodes
            .iter()
            .map(|&x| f(x) * (1.0 - x * x).sqrt())
            .sum::<f64>()
            * w
    }

    /// The constant Chebyshev weight π/K.
    pub fn chebyshev_weight(&self) -> f64 {
        assert_eq!(self.kind, QuadKind::GaussChebyshev1);
        std::f64::consts::PI / self.order as f64
    }
}

const NEWTON_MAX_ITER: usize = 100;

/// Gauss–Laguerre rule of order `n` (1 ≤ n ≤ 1000).
///
/// Nodes are the roots of L_n located by Newton iteration from the
/// standard asymptotic initial guesses; weights come from
/// w_i = x_i / ((n+1)² L_{n+1}(x_i)²), evaluated in log space so that
/// far-tail weights underflow to zero instead of overflowing the
/// intermediate polynomial values.
pub fn gauss_laguerre_rule(n: usize) -> Result<QuadRule, SpecFunError> {
    if n == 0 || n > 1000 {
        return Err(SpecFunError::domain(
            "gauss_laguerre_rule",
            format!("order must be in 1..=1000, got {n}"),
        ));
    }
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0f64;
    for i in 0..n {
        // Initial guesses (Stroud & Secrest style, alpha = 0).
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        let mut converged = false;
        let mut prev_dz = f64::INFINITY;
        for it in 0..NEWTON_MAX_ITER {
            let eval = laguerre_eval(n, z);
            // L'_n(x) = n (L_n(x) - L_{n-1}(x)) / x; rescaling cancels
            // in the Newton ratio.
            let deriv = nf * (eval.l - eval.l_prev) / z;
            let dz = eval.l / deriv;
            z -= dz;
            // Accept on a tight step, or once the step hits the
            // round-off floor of the recurrence and stops shrinking.
            if dz.abs() <= 1e-14 * z.max(1.0) || (it > 2 && dz.abs() >= prev_dz) {
                converged = true;
                break;
            }
            prev_dz = dz.abs();
        }
        if !converged {
            return Err(SpecFunError::NoConvergence("gauss_laguerre_rule newton"));
        }
        nodes.push(z);
        // Christoffel form w = 1 / Σ_{k<n} L_k(x)², equivalent to the
        // derivative form H_u = [(n+1)!]² / (x_u L'_{n+1}(x_u)²) up to
        // normalization, but second-order insensitive to node error.
        // Assembled in log space so far-tail weights underflow to zero.
        let eval = laguerre_eval(n, z);
        let ln_w = -(eval.sq_sum.ln() + 2.0 * eval.ln_rescale);
        weights.push(ln_w.exp());
    }
    debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    Ok(QuadRule {
        kind: QuadKind::GaussLaguerre,
        order: n,
        nodes,
        weights,
    })
}

struct LaguerreEval {
    /// L_k(x) / exp(ln_rescale)
    l: f64,
    /// L_{k-1}(x) / exp(ln_rescale)
    l_prev: f64,
    /// Σ_{j<k} L_j(x)² / exp(2 ln_rescale)
    sq_sum: f64,
    ln_rescale: f64,
}

/// Three-term recurrence with dynamic rescaling: far beyond the
/// turning point the polynomial grows like e^x, so magnitudes are
/// renormalized whenever they pass 1e130 and the log of the factor is
/// carried separately. The running sum of squares (Christoffel
/// denominator) shares the scale.
fn laguerre_eval(k: usize, x: f64) -> LaguerreEval {
    const BIG: f64 = 1e130;
    const LN_BIG: f64 = 299.336_180_689_226_23; // ln(1e130)
    let mut lm1 = 0.0f64;
    let mut l = 1.0f64; // L_0
    let mut sq_sum = 0.0f64;
    let mut ln_rescale = 0.0f64;
    for j in 0..k {
        let jf = j as f64;
        sq_sum += l * l;
        let lp1 = ((2.0 * jf + 1.0 - x) * l - jf * lm1) / (jf + 1.0);
        lm1 = l;
        l = lp1;
        if l.abs() > BIG {
            l /= BIG;
            lm1 /= BIG;
            sq_sum /= BIG * BIG;
            ln_rescale += LN_BIG;
        }
    }
    LaguerreEval {
        l,
        l_prev: lm1,
        sq_sum,
        ln_rescale,
    }
}

/// First-kind Gauss–Chebyshev abscissas x_k = cos((2k-1)π/(2K)), k = 1..K.
pub fn gauss_chebyshev_nodes(k: usize) -> Result<QuadRule, SpecFunError> {
    if k == 0 {
        return Err(SpecFunError::domain(
            "gauss_chebyshev_nodes",
            "order must be >= 1",
        ));
    }
    let nodes = (1..=k)
        .map(|i| ((2.0 * i as f64 - 1.0) * std::f64::consts::PI / (2.0 * k as f64)).cos())
        .collect();
    Ok(QuadRule {
        kind: QuadKind::GaussChebyshev1,
        order: k,
        nodes,
        weights: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_order_one() {
        let r = gauss_laguerre_rule(1).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn laguerre_order_two_analytic() {
        // Roots of x² - 4x + 2: 2 ± √2; weights (2 ∓ √2)/4 matched to the
        // ascending node order.
        let r = gauss_laguerre_rule(2).unwrap();
        let s2 = std::f64::consts::SQRT_2;
        assert!((r.nodes[0] - (2.0 - s2)).abs() < 1e-13);
        assert!((r.nodes[1] - (2.0 + s2)).abs() < 1e-13);
        assert!((r.weights[0] - (2.0 + s2) / 4.0).abs() < 1e-13);
        assert!((r.weights[1] - (2.0 - s2) / 4.0).abs() < 1e-13);
    }

    #[test]
    fn laguerre_weights_sum_to_one() {
        for &n in &[1usize, 2, 5, 20, 100, 500] {
            let r = gauss_laguerre_rule(n).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 1.0).abs() < 1e-12, "n={n}: sum={s}");
            assert!(r.nodes.iter().all(|&x| x > 0.0));
            assert!(r.weights.iter().all(|&w| w >= 0.0));
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn laguerre_moment_exactness() {
        // ∫ x^k e^{-x} dx = k! exact for k ≤ 2n-1, detectably off at 2n.
        let n = 10;
        let r = gauss_laguerre_rule(n).unwrap();
        let mut fact = 1.0f64;
        for k in 0..=(2 * n - 1) {
            if k > 0 {
                fact *= k as f64;
            }
            let got = r.integrate_exp_weighted(|x| x.powi(k as i32));
            assert!(
                (got - fact).abs() <= 1e-9 * fact,
                "k={k}: {got} vs {fact}"
            );
        }
        let k = 2 * n;
        let fact_2n = fact * (k as f64);
        let got = r.integrate_exp_weighted(|x| x.powi(k as i32));
        assert!(
            (got - fact_2n).abs() > 1e-6 * fact_2n,
            "degree 2n should not be exact: {got} vs {fact_2n}"
        );
    }

    #[test]
    fn laguerre_large_order_moment() {
        // n = 500 still reproduces ∫ x³ e^{-x} = 6 to 1e-10.
        let r = gauss_laguerre_rule(500).unwrap();
        let got = r.integrate_exp_weighted(|x| x * x * x);
        assert!((got - 6.0).abs() < 6.0 * 1e-10, "{got}");
    }

    #[test]
    fn laguerre_order_1000_builds() {
        let r = gauss_laguerre_rule(1000).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-11);
    }

    #[test]
    fn chebyshev_node_formula_exact() {
        let r = gauss_chebyshev_nodes(100).unwrap();
        for (i, &x) in r.nodes.iter().enumerate() {
            let k = i as f64 + 1.0;
            let expect = ((2.0 * k - 1.0) * std::f64::consts::PI / 200.0).cos();
            assert_eq!(x, expect);
        }
        // Strictly decreasing cosine sequence.
        assert!(r.nodes.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn chebyshev_small_orders() {
        let r1 = gauss_chebyshev_nodes(1).unwrap();
        assert!(r1.nodes[0].abs() < 1e-16);
        let r2 = gauss_chebyshev_nodes(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((r2.nodes[0] - s).abs() < 1e-15);
        assert!((r2.nodes[1] + s).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_semicircle_area() {
        // ∫ sqrt(1-x²) dx = π/2 through the transformation rule.
        let r = gauss_chebyshev_nodes(100).unwrap();
        let got = r.integrate_unit_interval(|x| (1.0 - x * x).sqrt());
        assert!(
            (got - std::f64::consts::FRAC_PI_2).abs() < 1e-6,
            "{got}"
        );
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(gauss_laguerre_rule(0).is_err());
        assert!(gauss_laguerre_rule(1001).is_err());
        assert!(gauss_chebyshev_nodes(0).is_err());
    }
}
