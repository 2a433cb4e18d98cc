//! Collective operators and Bell operators on the totally symmetric (Dicke)
//! subspace, extremal eigenpairs, and state diagnostics.
//!
//! A permutation-invariant one-body operator Ô = Σᵢ ô(i) restricted to the
//! symmetric subspace is assembled from the collective transition operators
//! Ê_ab = Σᵢ |a⟩⟨b|(i), whose Dicke matrix elements are the bosonic-mode
//! (Schwinger) amplitudes
//!
//! ```text
//!   ⟨S_{𝛍+e_a−e_b}| Ê_ab |S_𝛍⟩ = √(μ_b (μ_a + 1))   (a ≠ b),
//!   ⟨S_𝛍| Ê_aa |S_𝛍⟩ = μ_a .
//! ```
//!
//! These amplitudes are validated against a brute-force symmetrisation oracle
//! in the full 3ⁿ space for n ≤ 5 (see the crate's integration tests); the
//! large-n machinery relies on that equivalence. Since PI operators preserve
//! the symmetric subspace, products and squares of restrictions equal
//! restrictions of products, which is how the quadratic Bell-operator terms
//! are built.

use alloc::format;
use alloc::string::ToString;
use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// Needed for f64 math in no_std builds; shadowed by the inherent
// methods when std is linked (unit tests).
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::dicke::{DickeBasis, PartitionIndex};
use crate::dimbounds;
use crate::mat::CMat;
use crate::sparse::{lanczos_min_eigenpair, CsrMat};
use crate::su3::{Op3, Povm};
use crate::{Error, Result};

/// Below this dimension extremal eigenpairs use the dense Jacobi solver
/// directly; above it, restarted Lanczos.
const DENSE_EIG_MAX: usize = 48;

/// An operator on the symmetric subspace.
#[derive(Clone, Debug)]
pub struct SymOperator {
    basis: DickeBasis,
    mat: CsrMat,
}

impl SymOperator {
    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CsrMat {
        &self.mat
    }

    pub fn to_dense(&self) -> CMat {
        self.mat.to_dense()
    }

    pub fn add(&self, other: &SymOperator) -> SymOperator {
        assert!(self.basis.compatible(&other.basis));
        SymOperator { basis: self.basis.clone(), mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &SymOperator) -> SymOperator {
        assert!(self.basis.compatible(&other.basis));
        SymOperator { basis: self.basis.clone(), mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, s: f64) -> SymOperator {
        SymOperator { basis: self.basis.clone(), mat: self.mat.scale(Complex64::new(s, 0.0)) }
    }

    /// Operator product (valid on the symmetric subspace for PI operators).
    pub fn matmul(&self, other: &SymOperator) -> SymOperator {
        assert!(self.basis.compatible(&other.basis));
        SymOperator { basis: self.basis.clone(), mat: self.mat.matmul(&other.mat) }
    }

    /// (AB + BA)/2.
    pub fn sym_product(&self, other: &SymOperator) -> SymOperator {
        let ab = self.mat.matmul(&other.mat);
        let ba = other.mat.matmul(&self.mat);
        SymOperator {
            basis: self.basis.clone(),
            mat: ab.add(&ba).scale(Complex64::new(0.5, 0.0)),
        }
    }

    pub fn square(&self) -> SymOperator {
        self.matmul(self)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.mat.hermiticity_error()
    }

    pub fn inf_norm(&self) -> f64 {
        self.mat.inf_norm()
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.mat.matvec(v)
    }

    /// ⟨ψ|Ô|ψ⟩.
    pub fn expectation(&self, state: &SymState) -> Complex64 {
        let av = self.mat.matvec(&state.amplitudes);
        state.amplitudes.iter().zip(&av).map(|(s, a)| s.conj() * a).sum()
    }

    /// Real part of ⟨ψ|Ô|ψ⟩ (exact for Hermitian Ô).
    pub fn expectation_real(&self, state: &SymState) -> f64 {
        self.expectation(state).re
    }
}

/// A pure state of the symmetric subspace.
#[derive(Clone, Debug)]
pub struct SymState {
    basis: DickeBasis,
    amplitudes: Vec<Complex64>,
}

impl SymState {
    /// Wraps amplitudes that are already unit-norm (checked to 1e-10).
    pub fn new(basis: DickeBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dimension() {
            return Err(Error::InvalidInput("amplitude length does not match basis".to_string()));
        }
        let n: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidInput(format!("state norm² = {n} is not 1")));
        }
        Ok(SymState { basis, amplitudes })
    }

    /// Normalises the amplitudes; errors on the zero vector.
    pub fn normalised(basis: DickeBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        let n: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-150 {
            return Err(Error::InvalidInput("cannot normalise the zero vector".to_string()));
        }
        Ok(SymState {
            basis,
            amplitudes: amplitudes.into_iter().map(|z| z / n).collect(),
        })
    }

    /// The Dicke basis state |S_𝛍⟩.
    pub fn basis_state(basis: DickeBasis, p: &PartitionIndex) -> Result<Self> {
        let idx = basis.index_of(p)?;
        let mut amps = vec![Complex64::ZERO; basis.dimension()];
        amps[idx] = Complex64::ONE;
        Ok(SymState { basis, amplitudes: amps })
    }

    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &SymState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Restriction of Σᵢ ô(i) to the symmetric subspace.
pub fn collective_operator(o: &Op3, basis: &DickeBasis) -> SymOperator {
    let dim = basis.dimension();
    let mut triplets: Vec<(usize, usize, Complex64)> = Vec::with_capacity(dim * 4);
    for (idx, mu) in basis.partitions().iter().enumerate() {
        let mut diag = Complex64::ZERO;
        for a in 0..3 {
            diag += o.m[a][a] * mu.occupation(a) as f64;
        }
        if diag != Complex64::ZERO {
            triplets.push((idx, idx, diag));
        }
        for a in 0..3 {
            for b in 0..3 {
                if a == b || o.m[a][b] == Complex64::ZERO {
                    continue;
                }
                if let Some(nu) = mu.shift(a, b) {
                    let amp = ((mu.occupation(b) as f64) * (mu.occupation(a) as f64 + 1.0)).sqrt();
                    let row = basis.index_of(&nu).expect("shift stays in the basis");
                    triplets.push((row, idx, o.m[a][b] * amp));
                }
            }
        }
    }
    SymOperator { basis: basis.clone(), mat: CsrMat::from_triplets(dim, triplets) }
}

/// Collective spin component Ŝ_a = Σᵢ ŝ_a(i).
pub fn collective_spin(axis: crate::su3::Axis, basis: &DickeBasis) -> SymOperator {
    collective_operator(&crate::su3::spin1(axis), basis)
}

/// Collective quadrupole component Q̂_ab = Σᵢ q̂_ab(i).
pub fn collective_quad(pair: crate::su3::QuadPair, basis: &DickeBasis) -> SymOperator {
    collective_operator(&crate::su3::quadrupole(pair), basis)
}

/// Single-particle Bell term
/// β̂ = π̂₀|₀ + π̂₁|₁ − (π̂₀|₀−π̂₁|₁)² + π̂₀|₁ + π̂₁|₀ − (π̂₀|₁−π̂₁|₀)².
pub fn local_bell_term(povm0: &Povm, povm1: &Povm) -> Op3 {
    let els0: Vec<CMat> = povm0.elements.iter().map(Op3::to_cmat).collect();
    let els1: Vec<CMat> = povm1.elements.iter().map(Op3::to_cmat).collect();
    Op3::from_cmat(&dimbounds::beta_operator(&els0, &els1))
}

/// Bell operator 𝓑̂ = (Π̂₀|₀−Π̂₁|₁)² + (Π̂₀|₁−Π̂₁|₀)² + Σᵢ β̂(i) on the
/// symmetric subspace, for arbitrary three-outcome POVM settings.
pub fn bell_operator_from_povms(
    povm0: &Povm,
    povm1: &Povm,
    basis: &DickeBasis,
) -> Result<SymOperator> {
    povm0.validate()?;
    povm1.validate()?;
    let t1 = povm0.element(0).sub(povm1.element(1));
    let t2 = povm1.element(0).sub(povm0.element(1));
    let beta = local_bell_term(povm0, povm1);
    let t1c = collective_operator(&t1, basis);
    let t2c = collective_operator(&t2, basis);
    let b = t1c.square().add(&t2c.square()).add(&collective_operator(&beta, basis));
    debug_assert!(b.hermiticity_error() < 1e-10 * b.inf_norm().max(1.0));
    Ok(b)
}

/// Bell operator in sum-of-squares form, T̂₀ + T̂₁² + T̂₂².
pub fn bell_operator_from_t(t0: &Op3, t1: &Op3, t2: &Op3, basis: &DickeBasis) -> SymOperator {
    let t0c = collective_operator(t0, basis);
    let t1c = collective_operator(t1, basis);
    let t2c = collective_operator(t2, basis);
    t0c.add(&t1c.square()).add(&t2c.square())
}

/// Bell operator for the optimal qubit / qutrit settings.
///
/// The qutrit case uses the POVM route directly. The qubit case uses the
/// sum-of-squares constants with the +2 penalty on the level outside the
/// embedded qubit: without the penalty the unused level carries Bell value 0
/// and would mask the symmetric-qubit minimum whenever that minimum is
/// positive (small n).
pub fn optimal_bell_operator(dim: dimbounds::LocalDim, basis: &DickeBasis) -> SymOperator {
    match dim {
        dimbounds::LocalDim::Qubit => {
            let (t0, t1, t2) = crate::su3::qubit_t_set();
            bell_operator_from_t(&t0, &t1, &t2, basis)
        }
        dimbounds::LocalDim::Qutrit => {
            let (p0, p1) = crate::su3::qutrit_optimal_settings();
            bell_operator_from_povms(&p0, &p1, basis).expect("optimal settings are valid POVMs")
        }
    }
}

/// Ground eigenvalue and eigenvector. Residual certified to
/// ‖(Ô−λ)v‖ ≤ 1e-8·‖Ô‖_∞.
pub fn min_eigenpair(op: &SymOperator) -> Result<(f64, SymState)> {
    let scale = op.inf_norm().max(1e-300);
    if op.hermiticity_error() > 1e-9 * scale {
        return Err(Error::InvalidInput("Bell operator is not Hermitian".to_string()));
    }
    let dim = op.dimension();
    let (value, vector) = if dim <= DENSE_EIG_MAX {
        let eig = op.to_dense().hermitian_eig()?;
        (eig.values[0], eig.vector(0))
    } else {
        match lanczos_min_eigenpair(op.matrix(), 1e-9) {
            Ok(pair) => pair,
            // Dense rescue keeps small awkward spectra from failing hard.
            Err(_) if dim <= 1500 => {
                let eig = op.to_dense().hermitian_eig()?;
                (eig.values[0], eig.vector(0))
            }
            Err(e) => return Err(e),
        }
    };
    let av = op.matvec(&vector);
    let residual: f64 = av
        .iter()
        .zip(&vector)
        .map(|(a, v)| (a - v * value).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > 1e-8 * scale {
        return Err(Error::Convergence(format!(
            "eigenpair residual {residual:.3e} exceeds 1e-8·‖Ô‖ = {:.3e}",
            1e-8 * scale
        )));
    }
    Ok((value, SymState::normalised(op.basis().clone(), vector)?))
}

/// |⟨Ψ|S_𝛍⟩| for every basis partition, in basis order.
pub fn dicke_overlaps(state: &SymState) -> Vec<(PartitionIndex, f64)> {
    state
        .basis
        .partitions()
        .iter()
        .zip(&state.amplitudes)
        .map(|(p, a)| (*p, a.norm()))
        .collect()
}

/// Gaussian superposition of Dicke states centred at the balanced partition:
/// amplitudes ∝ exp(−(δ₀² + δ₀δ₁ + δ₁²)/(2s)) with δ_a = μ_a − n/3.
pub fn gaussian_ansatz(basis: &DickeBasis, s: f64) -> Result<SymState> {
    if s.is_nan() || s <= 0.0 {
        return Err(Error::InvalidInput(format!("gaussian width s = {s} must be positive")));
    }
    let third = basis.n() as f64 / 3.0;
    let amps: Vec<Complex64> = basis
        .partitions()
        .iter()
        .map(|p| {
            let d0 = p.mu0 as f64 - third;
            let d1 = p.mu1 as f64 - third;
            Complex64::new((-(d0 * d0 + d0 * d1 + d1 * d1) / (2.0 * s)).exp(), 0.0)
        })
        .collect();
    SymState::normalised(basis.clone(), amps)
}

/// Best-fit Gaussian width on a fixed geometric grid, with the squared
/// overlap it achieves.
pub fn fit_gaussian_ansatz(state: &SymState) -> (f64, f64) {
    let mut best = (1.0f64, -1.0f64);
    let points = 400usize;
    for k in 0..points {
        // s ∈ [1e-2, 1e2], geometric.
        let s = 1e-2 * (1e4f64).powf(k as f64 / (points - 1) as f64);
        let ansatz = gaussian_ansatz(&state.basis, s).expect("s > 0");
        let fid = ansatz.overlap(state).norm_sqr();
        if fid > best.1 {
            best = (s, fid);
        }
    }
    best
}

/// |φ⟩^⊗n expanded over Dicke states: the amplitude on 𝛍 is
/// √(n!/(μ₀!μ₁!μ₂!)) φ₀^μ₀ φ₁^μ₁ φ₂^μ₂.
pub fn product_state(phi: &[Complex64; 3], basis: &DickeBasis) -> Result<SymState> {
    let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput("single-particle state must be normalised".to_string()));
    }
    let n = basis.n();
    let mut log_fact = vec![0.0f64; n + 1];
    for i in 1..=n {
        log_fact[i] = log_fact[i - 1] + (i as f64).ln();
    }
    let amps: Vec<Complex64> = basis
        .partitions()
        .iter()
        .map(|p| {
            let occ = [p.mu0 as usize, p.mu1 as usize, p.mu2 as usize];
            let log_multi =
                log_fact[n] - log_fact[occ[0]] - log_fact[occ[1]] - log_fact[occ[2]];
            let mut amp = Complex64::new((0.5 * log_multi).exp(), 0.0);
            for a in 0..3 {
                amp *= phi[a].powu(occ[a] as u32);
            }
            amp
        })
        .collect();
    SymState::normalised(basis.clone(), amps)
}

/// The collective statistics (x, y, z) probed by the spin-1 (type-1)
/// witness: x = ⟨Ŝ_x²⟩/n, y = ⟨3Q̂_zz + Q̂_xx − 8Q̂_xy² − 2n⟩/n, z = ⟨Q̂_yy⟩/n.
#[derive(Clone, Copy, Debug)]
pub struct Type1Data {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn extract_type1_data(state: &SymState) -> Type1Data {
    use crate::su3::{Axis, QuadPair};
    let basis = state.basis();
    let nf = basis.n() as f64;
    let sx = collective_spin(Axis::X, basis);
    let qzz = collective_quad(QuadPair::Zz, basis);
    let qxx = collective_quad(QuadPair::Xx, basis);
    let qyy = collective_quad(QuadPair::Yy, basis);
    let qxy = collective_quad(QuadPair::Xy, basis);
    let sx_psi = sx.matvec(state.amplitudes());
    let qxy_psi = qxy.matvec(state.amplitudes());
    let x = sx_psi.iter().map(|z| z.norm_sqr()).sum::<f64>() / nf;
    let qxy2 = qxy_psi.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let y = (3.0 * qzz.expectation_real(state) + qxx.expectation_real(state) - 8.0 * qxy2
        - 2.0 * nf)
        / nf;
    let z = qyy.expectation_real(state) / nf;
    Type1Data { x, y, z }
}
