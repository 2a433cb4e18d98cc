//! Spin-1 condensate spin-mixing dynamics in the symmetric subspace and the
//! witness-data trajectories extracted from it.
//!
//! The single-mode Hamiltonian Ĥ = (c/2n)·Ŝ² + g·Q̂_zz is diagonalised once;
//! every evolved state |Ψ(t)⟩ = e^{−itĤ}|polar⟩ then costs two dense
//! matrix-vector products. The polar state (all particles in the m = 0
//! level) stays in the symmetric subspace for all times.
//!
//! Pseudospin data lives on the type-2 triad {Ŝ_x, 2Q̂_yz, Q̂_zz − Q̂_yy}:
//! the squeezed second moment is the smaller eigenvalue of the covariance
//! matrix C of (Ŝ_x, 2Q̂_yz), the mean pseudospin is r = |⟨Q̂_zz − Q̂_yy⟩|,
//! and the dark-level population uses n̂_ψ = Σᵢ|ψ⟩⟨ψ|(i) with
//! |ψ⟩ = (|m=+1⟩ − |m=−1⟩)/√2, i.e. n̂_ψ = (Q̂_zz + Q̂_yy − Q̂_xx)/2.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_complex::Complex64;
// Needed for f64 math in no_std builds; shadowed by the inherent
// methods when std is linked (unit tests).
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::dicke::{DickeBasis, PartitionIndex};
use crate::mat::HermitianEig;
use crate::su3::{Axis, Op3, QuadPair};
use crate::symrep::{collective_operator, collective_quad, collective_spin, SymOperator, SymState};
use crate::witness::{self, WitnessData};
use crate::{Error, Result};

/// Spin-mixing parameters (units with |c| as the energy scale).
#[derive(Clone, Debug)]
pub struct SpinMixParams {
    pub n: usize,
    /// Contact interaction strength; c < 0 for the ferromagnetic case.
    pub c: f64,
    /// Quadratic Zeeman shift.
    pub g: f64,
    /// Sample times, ascending, first ≥ 0.
    pub times: Vec<f64>,
}

impl SpinMixParams {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidInput("spin mixing needs n ≥ 2".to_string()));
        }
        if self.times.is_empty() {
            return Err(Error::InvalidInput("empty time grid".to_string()));
        }
        if self.times[0] < 0.0 {
            return Err(Error::InvalidInput("times must start at t ≥ 0".to_string()));
        }
        if self.times.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("times must be ascending".to_string()));
        }
        Ok(())
    }

    /// Uniform grid of `steps` points on [0, t_max]; the default trajectory
    /// uses 400 points on [0, 10].
    pub fn uniform(n: usize, c: f64, g: f64, t_max: f64, steps: usize) -> Self {
        let times = (0..steps)
            .map(|k| t_max * k as f64 / (steps.max(2) - 1) as f64)
            .collect();
        SpinMixParams { n, c, g, times }
    }
}

/// Ĥ = (c/2n)(Ŝ_x² + Ŝ_y² + Ŝ_z²) + g·Q̂_zz on the symmetric subspace.
pub fn spin1_hamiltonian(n: usize, c: f64, g: f64, basis: &DickeBasis) -> SymOperator {
    assert_eq!(basis.n(), n);
    let sx = collective_spin(Axis::X, basis);
    let sy = collective_spin(Axis::Y, basis);
    let sz = collective_spin(Axis::Z, basis);
    let s2 = sx.square().add(&sy.square()).add(&sz.square());
    let qzz = collective_quad(QuadPair::Zz, basis);
    s2.scale(c / (2.0 * n as f64)).add(&qzz.scale(g))
}

/// The polar state |m = 0⟩^⊗n, i.e. the Dicke state with 𝛍 = (0, n, 0).
pub fn polar_state(basis: &DickeBasis) -> SymState {
    let n = basis.n() as u32;
    SymState::basis_state(basis.clone(), &PartitionIndex::new(0, n, 0))
        .expect("polar partition is in the basis")
}

/// Shared spectral decomposition of a Hamiltonian, reused across times.
pub struct Propagator {
    eig: HermitianEig,
}

impl Propagator {
    pub fn new(h: &SymOperator) -> Result<Self> {
        if h.hermiticity_error() > 1e-9 * h.inf_norm().max(1.0) {
            return Err(Error::InvalidInput("Hamiltonian is not Hermitian".to_string()));
        }
        Ok(Propagator { eig: h.to_dense().hermitian_eig()? })
    }

    /// e^{−itĤ}|ψ⟩.
    pub fn evolve(&self, state: &SymState, t: f64) -> Result<SymState> {
        let v = &self.eig.vectors;
        let mut coeffs = v.dagger().matvec(state.amplitudes());
        for (c, lam) in coeffs.iter_mut().zip(&self.eig.values) {
            let (s, co) = (lam * t).sin_cos();
            *c *= Complex64::new(co, -s);
        }
        SymState::normalised(state.basis().clone(), v.matvec(&coeffs))
    }
}

/// One-shot evolution; diagonalises Ĥ on every call. Use [`Propagator`] for
/// trajectories.
pub fn evolve(state: &SymState, h: &SymOperator, t: f64) -> Result<SymState> {
    Propagator::new(h)?.evolve(state, t)
}

/// Pseudospin data extracted from a symmetric state.
#[derive(Clone, Copy, Debug)]
pub struct PseudospinData {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Mean pseudospin length |⟨Q̂_zz − Q̂_yy⟩|.
    pub r: f64,
    /// Smaller eigenvalue of the (Ŝ_x, 2Q̂_yz) covariance matrix, clipped
    /// at 0.
    pub lambda_min_c: f64,
}

impl PseudospinData {
    pub fn witness_data(&self) -> WitnessData {
        WitnessData::pseudospin(self.x, self.y, self.z)
    }
}

/// Builds C = [[⟨Ŝ_x²⟩, 2Re⟨Ŝ_xQ̂_yz⟩], [2Re⟨Ŝ_xQ̂_yz⟩, 4⟨Q̂_yz²⟩]] and the
/// normalised data (x, y, z); errors when the pseudospin subspace is empty
/// (⟨n̂_ψ⟩ = n).
pub fn extract_pseudospin_data(state: &SymState) -> Result<PseudospinData> {
    let basis = state.basis();
    let n = basis.n() as f64;
    let sx = collective_spin(Axis::X, basis);
    let qyz = collective_quad(QuadPair::Yz, basis);
    let sx_psi = sx.matvec(state.amplitudes());
    let qyz_psi = qyz.matvec(state.amplitudes());
    let c11: f64 = sx_psi.iter().map(|v| v.norm_sqr()).sum();
    let c22: f64 = 4.0 * qyz_psi.iter().map(|v| v.norm_sqr()).sum::<f64>();
    let c12: f64 = 2.0
        * sx_psi
            .iter()
            .zip(&qyz_psi)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>();
    let mean = 0.5 * (c11 + c22);
    let disc = (0.25 * (c11 - c22) * (c11 - c22) + c12 * c12).sqrt();
    let lambda_min_c = (mean - disc).max(0.0);

    let qzz = collective_quad(QuadPair::Zz, basis);
    let qyy = collective_quad(QuadPair::Yy, basis);
    let r = (qzz.expectation_real(state) - qyy.expectation_real(state)).abs();

    // n̂_ψ = Σᵢ |ψ⟩⟨ψ|(i) with |ψ⟩ = (|m=+1⟩ − |m=−1⟩)/√2.
    let half = core::f64::consts::FRAC_1_SQRT_2;
    let dark = Op3::projector([
        Complex64::new(half, 0.0),
        Complex64::ZERO,
        Complex64::new(-half, 0.0),
    ]);
    let n_psi = collective_operator(&dark, basis).expectation_real(state);
    let denom = n - n_psi;
    if denom <= 1e-9 * n {
        return Err(Error::Domain(format!(
            "pseudospin subspace is empty (⟨n̂_ψ⟩ = {n_psi:.6} of n = {n})"
        )));
    }
    Ok(PseudospinData {
        x: lambda_min_c / denom,
        y: r / denom,
        z: denom / n,
        r,
        lambda_min_c,
    })
}

/// One sampled time along a spin-mixing trajectory.
#[derive(Clone, Copy, Debug)]
pub struct TrajectoryRecord {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub r: f64,
    pub lambda_min_c: f64,
    /// Spin-nematic squeezing parameter ξ⁻² = r²/(n·λ_min(C)).
    pub xi_inv2: f64,
    /// Minimising measurement half-angle actually used for `bell_value`.
    pub theta_opt: f64,
    /// min_θ ⟨𝓑̂(θ)⟩/n; negative ⇔ Bell correlation.
    pub bell_value: f64,
    /// 4/z − y²/x; negative ⇔ entanglement by the loose collective
    /// criterion (ξ⁻² > 4).
    pub wineland_value: f64,
}

/// Evolves the polar state under the spin-mixing Hamiltonian and extracts
/// the full witness record at each requested time.
pub fn run_trajectory(params: &SpinMixParams) -> Result<Vec<TrajectoryRecord>> {
    params.validate()?;
    let basis = DickeBasis::new(params.n)?;
    let h = spin1_hamiltonian(params.n, params.c, params.g, &basis);
    let prop = Propagator::new(&h)?;
    let psi0 = polar_state(&basis);
    let mut records = Vec::with_capacity(params.times.len());
    for &t in &params.times {
        let psi = prop.evolve(&psi0, t)?;
        let data = extract_pseudospin_data(&psi)?;
        let wd = data.witness_data();
        let xi_inv2 = witness::squeezing_parameter(data.r, data.lambda_min_c, params.n);
        let wineland_value = witness::wineland_witness(&wd)?;
        let (theta_opt, bell_value) = witness::pseudospin_bell_minimum(&wd);
        records.push(TrajectoryRecord {
            t,
            x: data.x,
            y: data.y,
            z: data.z,
            r: data.r,
            lambda_min_c: data.lambda_min_c,
            xi_inv2,
            theta_opt,
            bell_value,
            wineland_value,
        });
    }
    Ok(records)
}

/// First time a sampled quantity crosses below zero, linearly interpolated
/// between grid points.
pub fn first_negative_time(times: &[f64], values: &[f64]) -> Option<f64> {
    debug_assert_eq!(times.len(), values.len());
    for i in 0..values.len() {
        if values[i] < 0.0 {
            if i == 0 {
                return Some(times[0]);
            }
            let (t0, t1) = (times[i - 1], times[i]);
            let (v0, v1) = (values[i - 1], values[i]);
            return Some(t0 + v0 * (t1 - t0) / (v0 - v1));
        }
    }
    None
}

/// First time the squeezing parameter exceeds 1 (the Wineland-criterion
/// violation in its tight ξ⁻² form).
pub fn first_squeezing_time(records: &[TrajectoryRecord]) -> Option<f64> {
    let times: Vec<f64> = records.iter().map(|r| r.t).collect();
    let values: Vec<f64> = records.iter().map(|r| 1.0 - r.xi_inv2).collect();
    first_negative_time(&times, &values)
}

/// First time the optimised Bell value turns negative (Bell correlation).
pub fn first_bell_time(records: &[TrajectoryRecord]) -> Option<f64> {
    let times: Vec<f64> = records.iter().map(|r| r.t).collect();
    let values: Vec<f64> = records.iter().map(|r| r.bell_value).collect();
    first_negative_time(&times, &values)
}
