//! Splittable counter-based random number generator.
//!
//! Every Monte Carlo trial gets its own stream keyed by
//! `(seed, trial_index)`, so partitioning trials across any number of
//! workers cannot change the sample sequence: results are bitwise
//! reproducible regardless of scheduling.
//!
//! The generator is SplitMix64 with a two-round key derivation. That is
//! plenty for link-level fading statistics and keeps the crate free of
//! external RNG dependencies.

/// A cheap, copyable random stream.
#[derive(Debug, Clone)]
pub struct CounterRng {
    state: u64,
    spare_normal: Option<f64>,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl CounterRng {
    /// Stream for one `(seed, stream)` pair; `stream` is typically the
    /// trial index.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        let k0 = mix64(seed ^ GOLDEN);
        let k1 = mix64(stream.wrapping_mul(0xD134_2543_DE82_EF95).wrapping_add(1));
        CounterRng {
            state: mix64(k0 ^ k1),
            spare_normal: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform on (0, 1].
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Standard normal via Box–Muller; pairs are cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Exponential with the given mean.
    #[inline]
    pub fn exponential(&mut self, mean: f64) -> f64 {
        -mean * self.uniform().ln()
    }

    /// Gamma(shape, scale) via Marsaglia–Tsang, with the boost step for
    /// shape < 1. Requires shape ≥ 0.5 (all fading shapes here qualify).
    pub fn gamma(&mut self, shape: f64, scale: f64) -> f64 {
        debug_assert!(shape >= 0.5 && scale > 0.0);
        if shape < 1.0 {
            let u = self.uniform();
            return self.gamma(shape + 1.0, scale) * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.normal();
            let v = (1.0 + c * x).powi(3);
            if v <= 0.0 {
                continue;
            }
            let u = self.uniform();
            if u.ln() < 0.5 * x * x + d - d * v + d * v.ln() {
                return d * v * scale;
            }
        }
    }
}
