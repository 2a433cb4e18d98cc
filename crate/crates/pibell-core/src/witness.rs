//! Closed-form Bell-correlation, entanglement and dimension witnesses on
//! collective data (x, y, z), plus the spin-nematic squeezing parameter.
//!
//! All functions here are pure formula evaluations; extracting (x, y, z)
//! from states lives in [`crate::becdyn`] and [`crate::symrep`]. Domain
//! violations are hard errors, never NaN.

use alloc::format;
// Needed for f64 math in no_std builds; shadowed by the inherent
// methods when std is linked (unit tests).
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::{Error, Result};

/// Which collective data convention a triple (x, y, z) uses.
///
/// * `Pseudospin` — x = ⟨Λ̂₀²⟩/(n−⟨n̂₂⟩), y = ⟨Λ̂₁⟩/(n−⟨n̂₂⟩),
///   z = (n−⟨n̂₂⟩)/n on the type-2 (spin-nematic) triad.
/// * `Type1` — x = ⟨Ŝ_x²⟩/n, y = ⟨3Q̂_zz + Q̂_xx − 8Q̂_xy² − 2n⟩/n,
///   z = ⟨Q̂_yy⟩/n on the spin-1 dipole settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessContext {
    Pseudospin,
    Type1,
}

/// Collective statistics consumed by the witnesses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessData {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub context: WitnessContext,
}

impl WitnessData {
    pub fn pseudospin(x: f64, y: f64, z: f64) -> Self {
        WitnessData { x, y, z, context: WitnessContext::Pseudospin }
    }

    pub fn type1(x: f64, y: f64, z: f64) -> Self {
        WitnessData { x, y, z, context: WitnessContext::Type1 }
    }

    fn require(&self, context: WitnessContext, what: &str) -> Result<()> {
        if self.context != context {
            return Err(Error::InvalidInput(format!(
                "{what} expects {context:?} data, got {:?}",
                self.context
            )));
        }
        Ok(())
    }
}

/// Bell-correlation witness on pseudospin data:
/// 2x + √((z−2)²/z² − y²) + 2/z − 3; negative ⇔ Bell correlation.
pub fn pseudospin_witness(data: &WitnessData) -> Result<f64> {
    data.require(WitnessContext::Pseudospin, "pseudospin_witness")?;
    if data.z <= 0.0 {
        return Err(Error::Domain(format!("pseudospin witness needs z > 0, got z = {}", data.z)));
    }
    let q = (data.z - 2.0) / data.z;
    let radicand = q * q - data.y * data.y;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand {:.3e} in pseudospin witness at (x, y, z) = ({}, {}, {})",
            radicand, data.x, data.y, data.z
        )));
    }
    Ok(2.0 * data.x + radicand.sqrt() + 2.0 / data.z - 3.0)
}

/// Wineland-type entanglement criterion on pseudospin data, 4/z − y²/x;
/// negative ⇔ entanglement. x = 0 signals diverging metrological gain and is
/// reported as −∞.
pub fn wineland_witness(data: &WitnessData) -> Result<f64> {
    data.require(WitnessContext::Pseudospin, "wineland_witness")?;
    if data.z <= 0.0 {
        return Err(Error::Domain(format!("wineland witness needs z > 0, got z = {}", data.z)));
    }
    if data.x < 0.0 {
        return Err(Error::Domain(format!("wineland witness needs x ≥ 0, got x = {}", data.x)));
    }
    if data.x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(4.0 / data.z - data.y * data.y / data.x)
}

/// Magnitude of the optimal pseudospin measurement half-angle,
/// θ = arcsin(|y / (2(x−1))|).
///
/// The minimising branch of the Bell value has sin θ of the opposite sign to
/// y/(1−x); consumers evaluate both ±θ (see [`pseudospin_bell_minimum`]).
pub fn pseudospin_optimal_angle(x: f64, y: f64) -> Result<f64> {
    if x == 1.0 {
        return Err(Error::Domain("optimal angle undefined at x = 1".into()));
    }
    let s = y / (2.0 * (x - 1.0));
    if s.abs() > 1.0 {
        return Err(Error::Domain(format!(
            "|y/(2(x−1))| = {:.6} exceeds 1 at (x, y) = ({x}, {y})",
            s.abs()
        )));
    }
    Ok(s.abs().asin())
}

/// n-normalised Bell expectation on pseudospin data at measurement
/// half-angle θ: z·(cos²θ·x + sinθ·y + sin²θ) + 2(1−z).
pub fn pseudospin_bell_value(theta: f64, data: &WitnessData) -> f64 {
    let (s, c) = theta.sin_cos();
    data.z * (c * c * data.x + s * data.y + s * s) + 2.0 * (1.0 - data.z)
}

/// Minimum of [`pseudospin_bell_value`] over θ with its minimiser. Uses the
/// closed-form angle on both branches when it is in domain, otherwise a
/// 2001-point grid over [−π/2, π/2].
pub fn pseudospin_bell_minimum(data: &WitnessData) -> (f64, f64) {
    if let Ok(theta) = pseudospin_optimal_angle(data.x, data.y) {
        let vp = pseudospin_bell_value(theta, data);
        let vm = pseudospin_bell_value(-theta, data);
        // Stationary candidates include the boundary θ = ±π/2 of the grid
        // convention; include them for safety.
        let bp = pseudospin_bell_value(core::f64::consts::FRAC_PI_2, data);
        let bm = pseudospin_bell_value(-core::f64::consts::FRAC_PI_2, data);
        let mut best = (theta, vp);
        for cand in [(-theta, vm), (core::f64::consts::FRAC_PI_2, bp), (-core::f64::consts::FRAC_PI_2, bm)] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
        best
    } else {
        let mut best = (0.0f64, f64::INFINITY);
        let pts = 2001usize;
        for k in 0..pts {
            let theta = -core::f64::consts::FRAC_PI_2
                + core::f64::consts::PI * k as f64 / (pts - 1) as f64;
            let v = pseudospin_bell_value(theta, data);
            if v < best.1 {
                best = (theta, v);
            }
        }
        best
    }
}

/// Dimension/Bell-correlation witness on spin-1 (type-1) data:
/// x − (y+3z)/2 + √((y+z)(2x − β)); β = 0 gives the Bell-correlation
/// witness, β = −1/4 the qutrit dimension witness.
pub fn type1_witness(data: &WitnessData, beta: f64) -> Result<f64> {
    data.require(WitnessContext::Type1, "type1_witness")?;
    let s = data.y + data.z;
    if s <= 0.0 {
        return Err(Error::Domain(format!("type-1 witness needs y + z > 0, got {s}")));
    }
    let radicand = s * (2.0 * data.x - beta);
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand {:.3e} in type-1 witness at (x, y, z, β) = ({}, {}, {}, {beta})",
            radicand, data.x, data.y, data.z
        )));
    }
    Ok(data.x - (data.y + 3.0 * data.z) / 2.0 + radicand.sqrt())
}

/// Optimal type-1 half-angle from sin²θ = (2x + y − z) / (2(y + z)).
pub fn type1_optimal_angle(x: f64, y: f64, z: f64) -> Result<f64> {
    let s = y + z;
    if s <= 0.0 {
        return Err(Error::Domain(format!("optimal angle degenerate at y + z = {s}")));
    }
    let s2 = (2.0 * x + y - z) / (2.0 * s);
    if !(0.0..=1.0).contains(&s2) {
        return Err(Error::Domain(format!("sin²θ = {s2:.6} outside [0, 1]")));
    }
    Ok(s2.sqrt().asin())
}

/// n-normalised Bell expectation on type-1 data at half-angle θ:
/// 2cos²θ·x − sin²θcos²θ·y + sin²θ(1+sin²θ)·z.
pub fn type1_bell_value(theta: f64, data: &WitnessData) -> f64 {
    let s2 = theta.sin() * theta.sin();
    let c2 = 1.0 - s2;
    2.0 * c2 * data.x - s2 * c2 * data.y + s2 * (1.0 + s2) * data.z
}

/// Spin-nematic squeezing parameter ξ⁻² = r²/(n·λ_min(C)); values above 1
/// indicate squeezing beyond the coherent (polar) reference, which saturates
/// ξ⁻² = 1. Zero variance is reported as +∞.
pub fn squeezing_parameter(r: f64, lambda_min_c: f64, n: usize) -> f64 {
    if lambda_min_c <= 0.0 {
        return f64::INFINITY;
    }
    r * r / (n as f64 * lambda_min_c)
}
