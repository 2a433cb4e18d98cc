//! Small deterministic PRNG (xoshiro256++) for multistart optimisation and
//! randomised certificates.
//!
//! Reproducibility contract: a given `(seed, stream)` pair always produces the
//! same sequence, independent of platform. Streams are derived with splitmix64
//! so that per-restart generators are statistically independent.

use alloc::vec::Vec;
use num_complex::Complex64;
// Needed for f64 math in no_std builds; shadowed by the inherent
// methods when std is linked (unit tests).
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

const TWO_PI: f64 = core::f64::consts::TAU;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// xoshiro256++ generator.
#[derive(Clone, Debug)]
pub struct Rng {
    s: [u64; 4],
    gauss_spare: Option<f64>,
}

impl Rng {
    /// Seed a generator directly.
    pub fn new(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    /// Seed the `stream`-th independent generator derived from `seed`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut sm = seed ^ stream.wrapping_mul(0xa076_1d64_78bd_642f);
        let mut s = [0u64; 4];
        for slot in s.iter_mut() {
            *slot = splitmix64(&mut sm);
        }
        // All-zero state is a fixed point of xoshiro; splitmix cannot produce
        // four zeros from any seed, but keep the guard explicit.
        if s == [0, 0, 0, 0] {
            s[0] = 1;
        }
        Rng { s, gauss_spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Standard normal deviate (Box–Muller, cached spare).
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.gauss_spare.take() {
            return z;
        }
        let u = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let v = self.next_f64();
        let r = (-2.0 * u.ln()).sqrt();
        self.gauss_spare = Some(r * (TWO_PI * v).sin());
        r * (TWO_PI * v).cos()
    }

    /// Standard complex normal deviate.
    pub fn gaussian_c64(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian())
    }

    /// Haar-distributed random unit vector in ℂ^dim.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..dim).map(|_| self.gaussian_c64()).collect();
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }
}
