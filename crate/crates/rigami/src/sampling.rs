//! Deterministic sampling: a small splittable RNG for randomized test loads and
//! a Halton-based low-discrepancy sampler on the unit sphere for the
//! second-order classification sweep. Fixed seeds keep every verdict reproducible.

use nalgebra::DVector;

/// SplitMix64: tiny, fast, and good enough for test-direction generation.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Standard normal via Box-Muller.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = (1.0 - self.next_f64()).max(f64::MIN_POSITIVE);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Uniform direction on the unit sphere in `dim` dimensions.
    pub fn next_unit_vector(&mut self, dim: usize) -> DVector<f64> {
        loop {
            let v = DVector::from_fn(dim, |_, _| self.next_normal());
            let n = v.norm();
            if n > 1e-6 {
                return v / n;
            }
        }
    }
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Radical-inverse (van der Corput) value of `index` in base `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut f = 1.0 / base as f64;
    while index > 0 {
        result += f * (index % base) as f64;
        index /= base;
        f /= base as f64;
    }
    result
}

/// Inverse of the standard normal CDF (Acklam's rational approximation),
/// accurate to ~1e-9, plenty for quasi-random direction generation.
fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383_577_518_672_69e2,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    let p = p.clamp(1e-12, 1.0 - 1e-12);
    if p < 0.02425 {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 0.97575 {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Deterministic low-discrepancy samples on the unit sphere in `dim` dimensions.
///
/// Halton points are mapped through the inverse normal CDF coordinate-wise and
/// normalized; `seed` offsets the Halton index so different runs can be requested
/// while staying reproducible.
pub fn sphere_samples(dim: usize, count: usize, seed: u64) -> Vec<DVector<f64>> {
    assert!(dim <= PRIMES.len(), "sphere sampler supports up to 16 dims");
    let mut out = Vec::with_capacity(count);
    let mut index = seed.wrapping_mul(0x9e3779b9).wrapping_add(1);
    while out.len() < count {
        let v = DVector::from_fn(dim, |i, _| {
            inverse_normal_cdf(radical_inverse(index, PRIMES[i]))
        });
        index += 1;
        let n = v.norm();
        if n > 1e-9 {
            out.push(v / n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_samples_are_unit_and_reproducible() {
        let a = sphere_samples(3, 50, 0);
        let b = sphere_samples(3, 50, 0);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
            assert!((x.norm() - 1.0).abs() < 1e-12);
        }
        let c = sphere_samples(3, 50, 1);
        assert_ne!(a[0], c[0]);
    }

    #[test]
    fn inverse_normal_cdf_matches_known_quantiles() {
        assert!(inverse_normal_cdf(0.5).abs() < 1e-9);
        assert!((inverse_normal_cdf(0.975) - 1.959964).abs() < 1e-4);
        assert!((inverse_normal_cdf(0.025) + 1.959964).abs() < 1e-4);
    }

    #[test]
    fn splitmix_unit_vectors_have_unit_norm() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10 {
            let v = rng.next_unit_vector(5);
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }
}
