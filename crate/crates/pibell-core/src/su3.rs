//! Exact su(3) operator constants and single-particle measurement settings.
//!
//! Matrices are stored in the spin basis ordered (m = +1, m = 0, m = −1), the
//! same basis in which the Gell-Mann matrices λ₀…λ₇, the spin-1 dipole
//! operators ŝ_a and the quadrupole operators q̂_ab = ŝ_aŝ_b/2 + h.c. are
//! tabulated. All constants are built from integer, 1/√2 and 1/√3 literals.
//!
//! The three-outcome Bell scenario labels local levels |0⟩, |1⟩, |2⟩ with
//! well-defined ŝ_z = {+1, −1, 0}; the optimal-settings constructors use that
//! embedding so that the second qutrit measurement is exactly the ŝ_x
//! eigenbasis.

use alloc::format;
use alloc::string::ToString;
use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// Needed for f64 math in no_std builds; shadowed by the inherent
// methods when std is linked (unit tests).
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::mat::CMat;
use crate::{Error, Result};

/// Hermiticity tolerance for operator invariants.
pub const HERM_TOL: f64 = 1e-12;
/// Positive-semidefiniteness tolerance (min eigenvalue ≥ −PSD_TOL).
pub const PSD_TOL: f64 = 1e-10;
/// POVM completeness tolerance (per matrix entry).
pub const COMPLETENESS_TOL: f64 = 1e-10;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A 3×3 complex operator on the single-particle space.
#[derive(Clone, Copy, PartialEq)]
pub struct Op3 {
    pub m: [[Complex64; 3]; 3],
}

impl core::fmt::Debug for Op3 {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for r in &self.m {
            writeln!(f, "[{:+.4}{:+.4}i {:+.4}{:+.4}i {:+.4}{:+.4}i]",
                r[0].re, r[0].im, r[1].re, r[1].im, r[2].re, r[2].im)?;
        }
        Ok(())
    }
}

impl Op3 {
    pub const fn zero() -> Self {
        Op3 { m: [[Complex64::ZERO; 3]; 3] }
    }

    pub fn identity() -> Self {
        let mut o = Op3::zero();
        for i in 0..3 {
            o.m[i][i] = Complex64::ONE;
        }
        o
    }

    pub fn from_re(rows: [[f64; 3]; 3]) -> Self {
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                o.m[i][j] = c(rows[i][j], 0.0);
            }
        }
        o
    }

    pub fn diag(d0: f64, d1: f64, d2: f64) -> Self {
        Op3::from_re([[d0, 0.0, 0.0], [0.0, d1, 0.0], [0.0, 0.0, d2]])
    }

    /// |i⟩⟨j| in the storage basis.
    pub fn elementary(i: usize, j: usize) -> Self {
        let mut o = Op3::zero();
        o.m[i][j] = Complex64::ONE;
        o
    }

    /// Projector |v⟩⟨v| (v must be normalised by the caller when a projector
    /// is intended).
    pub fn projector(v: [Complex64; 3]) -> Self {
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                o.m[i][j] = v[i] * v[j].conj();
            }
        }
        o
    }

    pub fn add(&self, other: &Op3) -> Op3 {
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                o.m[i][j] = self.m[i][j] + other.m[i][j];
            }
        }
        o
    }

    pub fn sub(&self, other: &Op3) -> Op3 {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Op3 {
        self.scale_c(c(s, 0.0))
    }

    pub fn scale_c(&self, s: Complex64) -> Op3 {
        let mut o = *self;
        for row in o.m.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        o
    }

    pub fn matmul(&self, other: &Op3) -> Op3 {
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Complex64::ZERO;
                for k in 0..3 {
                    acc += self.m[i][k] * other.m[k][j];
                }
                o.m[i][j] = acc;
            }
        }
        o
    }

    pub fn dagger(&self) -> Op3 {
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                o.m[i][j] = self.m[j][i].conj();
            }
        }
        o
    }

    /// [A, B].
    pub fn commutator(&self, other: &Op3) -> Op3 {
        self.matmul(other).sub(&other.matmul(self))
    }

    /// (AB + BA)/2.
    pub fn sym_product(&self, other: &Op3) -> Op3 {
        self.matmul(other).add(&other.matmul(self)).scale(0.5)
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut e: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                e = e.max((self.m[i][j] - self.m[j][i].conj()).norm());
            }
        }
        e
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= HERM_TOL
    }

    pub fn max_abs_diff(&self, other: &Op3) -> f64 {
        let mut e: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                e = e.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        e
    }

    pub fn to_cmat(&self) -> CMat {
        CMat::from_fn(3, 3, |i, j| self.m[i][j])
    }

    pub fn from_cmat(m: &CMat) -> Op3 {
        assert_eq!((m.rows(), m.cols()), (3, 3));
        let mut o = Op3::zero();
        for i in 0..3 {
            for j in 0..3 {
                o.m[i][j] = m[(i, j)];
            }
        }
        o
    }

    /// Minimum eigenvalue (Hermitian part assumed).
    pub fn min_eigenvalue(&self) -> f64 {
        self.to_cmat().hermitian_eig().map(|e| e.values[0]).unwrap_or(f64::NAN)
    }
}

/// A three-outcome POVM on the single-particle space.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    pub elements: Vec<Op3>,
}

impl Povm {
    pub fn new(elements: Vec<Op3>) -> Self {
        let p = Povm { elements };
        debug_assert!(p.validate().is_ok(), "constructed POVM violates its invariants");
        p
    }

    /// Hermiticity, positivity and completeness of the element set.
    pub fn validate(&self) -> Result<()> {
        let mut sum = Op3::zero();
        for (k, e) in self.elements.iter().enumerate() {
            if e.hermiticity_error() > HERM_TOL {
                return Err(Error::InvalidInput(format!("POVM element {k} is not Hermitian")));
            }
            let min = e.min_eigenvalue();
            if min < -PSD_TOL {
                return Err(Error::InvalidInput(format!(
                    "POVM element {k} is not PSD (min eigenvalue {min:.3e})"
                )));
            }
            sum = sum.add(e);
        }
        if sum.max_abs_diff(&Op3::identity()) > COMPLETENESS_TOL {
            return Err(Error::InvalidInput("POVM elements do not sum to the identity".to_string()));
        }
        Ok(())
    }

    pub fn element(&self, outcome: usize) -> &Op3 {
        &self.elements[outcome]
    }
}

/// Measurement axis for the spin-1 dipole operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Index pair for the quadrupole (nematic) tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadPair {
    Yz,
    Xz,
    Xy,
    Xx,
    Yy,
    Zz,
}

/// The eight Gell-Mann matrices, normalised to tr(λᵢλⱼ) = 2δᵢⱼ.
///
/// λ₀, λ₁ act on the (m=+1, m=0) doublet; λ₂ = diag(1,−1,0);
/// λ₇ = diag(1,1,−2)/√3. {λ₀, λ₁, λ₂} is the type-2 (pseudospin) su(2) triad.
pub fn gell_mann(index: usize) -> Result<Op3> {
    let s3 = 3.0f64.sqrt();
    let m = match index {
        0 => Op3::from_re([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        1 => {
            let mut o = Op3::zero();
            o.m[0][1] = c(0.0, -1.0);
            o.m[1][0] = c(0.0, 1.0);
            o
        }
        2 => Op3::diag(1.0, -1.0, 0.0),
        3 => Op3::from_re([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
        4 => {
            let mut o = Op3::zero();
            o.m[0][2] = c(0.0, -1.0);
            o.m[2][0] = c(0.0, 1.0);
            o
        }
        5 => Op3::from_re([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
        6 => {
            let mut o = Op3::zero();
            o.m[1][2] = c(0.0, -1.0);
            o.m[2][1] = c(0.0, 1.0);
            o
        }
        7 => Op3::diag(1.0 / s3, 1.0 / s3, -2.0 / s3),
        _ => return Err(Error::InvalidInput(format!("Gell-Mann index {index} out of range 0..7"))),
    };
    Ok(m)
}

/// Spin-1 dipole operator along `axis`: ŝ_z = diag(1,0,−1) and the standard
/// ladder structure for ŝ_x, ŝ_y ([ŝ_x, ŝ_y] = i ŝ_z).
pub fn spin1(axis: Axis) -> Op3 {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    match axis {
        Axis::X => Op3::from_re([[0.0, r, 0.0], [r, 0.0, r], [0.0, r, 0.0]]),
        Axis::Y => {
            let mut o = Op3::zero();
            o.m[0][1] = c(0.0, -r);
            o.m[1][0] = c(0.0, r);
            o.m[1][2] = c(0.0, -r);
            o.m[2][1] = c(0.0, r);
            o
        }
        Axis::Z => Op3::diag(1.0, 0.0, -1.0),
    }
}

/// Quadrupole operator q̂_ab = ŝ_aŝ_b/2 + h.c. (so q̂_aa = ŝ_a²).
pub fn quadrupole(pair: QuadPair) -> Op3 {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let h = 0.5 * r; // 1/(2√2)
    match pair {
        QuadPair::Yz => {
            let mut o = Op3::zero();
            o.m[0][1] = c(0.0, -h);
            o.m[1][0] = c(0.0, h);
            o.m[1][2] = c(0.0, h);
            o.m[2][1] = c(0.0, -h);
            o
        }
        QuadPair::Xz => Op3::from_re([[0.0, h, 0.0], [h, 0.0, -h], [0.0, -h, 0.0]]),
        QuadPair::Xy => {
            let mut o = Op3::zero();
            o.m[0][2] = c(0.0, -0.5);
            o.m[2][0] = c(0.0, 0.5);
            o
        }
        QuadPair::Xx => Op3::from_re([[0.5, 0.0, 0.5], [0.0, 1.0, 0.0], [0.5, 0.0, 0.5]]),
        QuadPair::Yy => Op3::from_re([[0.5, 0.0, -0.5], [0.0, 1.0, 0.0], [-0.5, 0.0, 0.5]]),
        QuadPair::Zz => Op3::diag(1.0, 0.0, 1.0),
    }
}

/// Projector onto the level annihilated by the pseudospin triad, |2⟩⟨2| in
/// Bell-level labels.
pub fn pseudospin_dark_projector() -> Op3 {
    Op3::diag(0.0, 0.0, 1.0)
}

/// Two pseudospin (type-2) measurement settings with an angle 2θ between
/// them: m̂₀ = cosθ·λ₀ + sinθ·λ₁, m̂₁ = cosθ·λ₀ − sinθ·λ₁.
///
/// Projectors are π̂₊ = (𝟙₀₁ + m̂)/2, π̂₋ = (𝟙₀₁ − m̂)/2 on the pseudospin
/// doublet plus π̂_𝔬 onto the dark level. Outcomes (0,1,2) map to
/// (π̂₊, π̂_𝔬, π̂₋) for measurement 0 and (π̂_𝔬, π̂₋, π̂₊) for measurement 1;
/// the witness algebra depends on this assignment.
pub fn pseudospin_settings(theta: f64) -> (Povm, Povm) {
    let l0 = gell_mann(0).unwrap();
    let l1 = gell_mann(1).unwrap();
    let block_id = Op3::diag(1.0, 1.0, 0.0);
    let dark = pseudospin_dark_projector();
    let m0 = l0.scale(theta.cos()).add(&l1.scale(theta.sin()));
    let m1 = l0.scale(theta.cos()).sub(&l1.scale(theta.sin()));
    let plus = |m: &Op3| block_id.add(m).scale(0.5);
    let minus = |m: &Op3| block_id.sub(m).scale(0.5);
    let povm0 = Povm::new(vec![plus(&m0), dark, minus(&m0)]);
    let povm1 = Povm::new(vec![dark, minus(&m1), plus(&m1)]);
    (povm0, povm1)
}

/// Two spin-1 (type-1) measurement settings in the {ŝ_x, ŝ_y} plane with an
/// angle 2θ between them. Outcome a ∈ {0,1,2} projects onto spin projection
/// {+1, −1, 0} of m̂: π̂₀ = (m̂² + m̂)/2, π̂₁ = (m̂² − m̂)/2, π̂₂ = 𝟙 − m̂².
pub fn type1_settings(theta: f64) -> (Povm, Povm) {
    let sx = spin1(Axis::X);
    let sy = spin1(Axis::Y);
    let m0 = sx.scale(theta.cos()).add(&sy.scale(theta.sin()));
    let m1 = sx.scale(theta.cos()).sub(&sy.scale(theta.sin()));
    let povm = |m: &Op3| {
        let m2 = m.matmul(m);
        Povm::new(vec![
            m2.add(m).scale(0.5),
            m2.sub(m).scale(0.5),
            Op3::identity().sub(&m2),
        ])
    };
    (povm(&m0), povm(&m1))
}

// Bell-scenario levels |0⟩, |1⟩, |2⟩ carry ŝ_z = +1, −1, 0, i.e. columns
// 0, 2, 1 of the storage basis.
const BELL_LEVEL: [usize; 3] = [0, 2, 1];

fn bell_ket(amp: [f64; 3]) -> [Complex64; 3] {
    let mut v = [Complex64::ZERO; 3];
    for (level, &a) in amp.iter().enumerate() {
        v[BELL_LEVEL[level]] = c(a, 0.0);
    }
    v
}

/// Optimal qutrit settings: measurement 0 projects onto the computational
/// (Bell-level) basis; measurement 1 onto
///
/// ```text
///   |0,1⟩ = |0⟩/2 + |1⟩/2 + |2⟩/√2
///   |1,1⟩ = |0⟩/2 + |1⟩/2 − |2⟩/√2
///   |2,1⟩ = (|0⟩ − |1⟩)/√2 ,
/// ```
///
/// which are the ŝ_x eigenstates with eigenvalues {1, −1, 0}. The pair
/// realises the single-particle bound β̃₃ = −1/2.
pub fn qutrit_optimal_settings() -> (Povm, Povm) {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let povm0 = Povm::new(vec![
        Op3::projector(bell_ket([1.0, 0.0, 0.0])),
        Op3::projector(bell_ket([0.0, 1.0, 0.0])),
        Op3::projector(bell_ket([0.0, 0.0, 1.0])),
    ]);
    let povm1 = Povm::new(vec![
        Op3::projector(bell_ket([0.5, 0.5, r])),
        Op3::projector(bell_ket([0.5, 0.5, -r])),
        Op3::projector(bell_ket([r, -r, 0.0])),
    ]);
    (povm0, povm1)
}

/// Optimal qubit settings embedded in the qutrit space; the qubit lives on
/// Bell levels {|0⟩, |2⟩} and the unused level is absorbed into outcome 2 of
/// each setting so the elements form complete POVMs on ℂ³.
///
/// Measurement 0 is {|0⟩⟨0|, 0, 𝟙−|0⟩⟨0|}; measurement 1 has the zero element
/// as outcome 0 and projects outcome 1 onto |0⟩/2 + (√3/2)|2⟩. This pair
/// realises the single-particle bound β̃₂ = −1/4 (the tabulated state list
/// with |⟨0|1,1⟩| = √3/2 gives only 3/4 − √3/2 ≈ −0.116 and is inconsistent
/// with the ±√3/2 spectrum of the associated collective operator t̂₁, so the
/// two measurement-1 outcome states are interchanged here).
pub fn qubit_optimal_settings() -> (Povm, Povm) {
    let s3h = 3.0f64.sqrt() / 2.0;
    let dark = Op3::projector(bell_ket([0.0, 1.0, 0.0]));
    let pi_00 = Op3::projector(bell_ket([1.0, 0.0, 0.0]));
    let pi_11 = Op3::projector(bell_ket([0.5, 0.0, s3h]));
    let pi_21 = Op3::projector(bell_ket([s3h, 0.0, -0.5]));
    let povm0 = Povm::new(vec![
        pi_00,
        Op3::zero(),
        Op3::projector(bell_ket([0.0, 0.0, 1.0])).add(&dark),
    ]);
    let povm1 = Povm::new(vec![Op3::zero(), pi_11, pi_21.add(&dark)]);
    (povm0, povm1)
}

/// Collective-operator constants t̂₀, t̂₁, t̂₂ of the qutrit Bell operator
/// 𝓑̂ = T̂₀ + T̂₁² + T̂₂², written in the basis where t̂₀ is diagonal.
pub fn qutrit_t_set() -> (Op3, Op3, Op3) {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let t0 = Op3::diag(-0.5, 1.0, 0.5);
    let t1 = Op3::elementary(0, 1).add(&Op3::elementary(1, 0));
    let t2 = Op3::elementary(0, 2).add(&Op3::elementary(2, 0)).scale(r);
    (t0, t1, t2)
}

/// Qubit analogue of [`qutrit_t_set`]; the +2 entry penalises occupation of
/// the level outside the embedded qubit so the qutrit-space minimum reproduces
/// the symmetric-qubit minimum.
pub fn qubit_t_set() -> (Op3, Op3, Op3) {
    let s3h = 3.0f64.sqrt() / 2.0;
    let t0 = Op3::diag(-0.25, 0.75, 2.0);
    let t1 = Op3::elementary(0, 1).add(&Op3::elementary(1, 0)).scale(s3h);
    (t0, t1, Op3::zero())
}

/// [`qutrit_t_set`] conjugated by the discrete Fourier transform of the
/// t̂₀ eigenbasis. In this frame the maximally violating state has exactly
/// balanced mean occupations (n/3 per level), which is where the Gaussian
/// Dicke ansatz applies.
pub fn qutrit_t_set_balanced() -> (Op3, Op3, Op3) {
    let omega = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
    let mut f = Op3::zero();
    let norm = 1.0 / 3.0f64.sqrt();
    for i in 0..3 {
        for j in 0..3 {
            f.m[i][j] = omega.powu((i * j) as u32) * norm;
        }
    }
    let (t0, t1, t2) = qutrit_t_set();
    let rot = |o: &Op3| f.dagger().matmul(o).matmul(&f);
    (rot(&t0), rot(&t1), rot(&t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &Op3, b: &Op3, tol: f64) {
        assert!(a.max_abs_diff(b) <= tol, "\n{a:?}\nvs\n{b:?}");
    }

    #[test]
    fn gell_mann_literals() {
        let l0 = gell_mann(0).unwrap();
        assert_close(&l0, &Op3::from_re([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]), 0.0);
        let l7 = gell_mann(7).unwrap();
        let s3 = 3.0f64.sqrt();
        assert_close(&l7, &Op3::diag(1.0 / s3, 1.0 / s3, -2.0 / s3), 0.0);
        assert!(gell_mann(8).is_err());
    }

    #[test]
    fn gell_mann_trace_orthogonality() {
        for i in 0..8 {
            for j in 0..8 {
                let t = gell_mann(i).unwrap().matmul(&gell_mann(j).unwrap()).trace();
                let expect = if i == j { 2.0 } else { 0.0 };
                assert!((t.re - expect).abs() < 1e-14 && t.im.abs() < 1e-14, "tr λ{i}λ{j} = {t}");
            }
        }
    }

    #[test]
    fn type2_su2_commutators() {
        // [λ_a, λ_b] = 2i ε_abc λ_c on the pseudospin triad.
        let l: Vec<Op3> = (0..3).map(|i| gell_mann(i).unwrap()).collect();
        for (a, b, c_idx) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
            let comm = l[a].commutator(&l[b]);
            let expect = l[c_idx].scale_c(c(0.0, 2.0));
            assert_close(&comm, &expect, 1e-14);
        }
    }

    #[test]
    fn spin1_algebra() {
        let sx = spin1(Axis::X);
        let sy = spin1(Axis::Y);
        let sz = spin1(Axis::Z);
        assert_close(&sz, &Op3::diag(1.0, 0.0, -1.0), 0.0);
        // [s_x, s_y] = i s_z
        assert_close(&sx.commutator(&sy), &sz.scale_c(c(0.0, 1.0)), 1e-14);
        // Casimir s(s+1) = 2
        let casimir = sx.matmul(&sx).add(&sy.matmul(&sy)).add(&sz.matmul(&sz));
        assert_close(&casimir, &Op3::identity().scale(2.0), 1e-14);
    }

    #[test]
    fn quadrupoles_are_symmetrised_products() {
        let s = |a: Axis| spin1(a);
        let cases = [
            (QuadPair::Yz, Axis::Y, Axis::Z),
            (QuadPair::Xz, Axis::X, Axis::Z),
            (QuadPair::Xy, Axis::X, Axis::Y),
            (QuadPair::Xx, Axis::X, Axis::X),
            (QuadPair::Yy, Axis::Y, Axis::Y),
            (QuadPair::Zz, Axis::Z, Axis::Z),
        ];
        for (pair, a, b) in cases {
            assert_close(&quadrupole(pair), &s(a).sym_product(&s(b)), 1e-14);
        }
        assert_close(&quadrupole(QuadPair::Zz), &Op3::diag(1.0, 0.0, 1.0), 0.0);
        // Σ q_aa = ŝ² = 2·𝟙
        let total = quadrupole(QuadPair::Xx)
            .add(&quadrupole(QuadPair::Yy))
            .add(&quadrupole(QuadPair::Zz));
        assert_close(&total, &Op3::identity().scale(2.0), 1e-14);
    }

    #[test]
    fn pseudospin_settings_structure() {
        let (p0, p1) = pseudospin_settings(0.0);
        p0.validate().unwrap();
        p1.validate().unwrap();
        // θ = 0: both measurements built from λ₀ alone; same projector sets up
        // to the outcome relabelling.
        assert_close(p0.element(0), p1.element(2), 1e-15);
        assert_close(p0.element(2), p1.element(1), 1e-15);
        let (q0, q1) = pseudospin_settings(core::f64::consts::FRAC_PI_2);
        q0.validate().unwrap();
        q1.validate().unwrap();
        // θ = π/2: m̂₀ = λ₁, m̂₁ = −λ₁.
        let l1 = gell_mann(1).unwrap();
        let block = Op3::diag(1.0, 1.0, 0.0);
        assert_close(q0.element(0), &block.add(&l1).scale(0.5), 1e-15);
        assert_close(q1.element(2), &block.sub(&l1).scale(0.5), 1e-15);
    }

    #[test]
    fn type1_settings_structure() {
        let (p0, p1) = type1_settings(0.0);
        p0.validate().unwrap();
        p1.validate().unwrap();
        // θ = 0: both project onto the ŝ_x eigenbasis.
        let sx = spin1(Axis::X);
        let sx2 = sx.matmul(&sx);
        assert_close(p0.element(0), &sx2.add(&sx).scale(0.5), 1e-15);
        assert_close(p1.element(1), &sx2.sub(&sx).scale(0.5), 1e-15);

        // θ = π/4: outcome 2 of measurement 0 is 𝟙 − m̂₀², a rank-1 projector.
        let (p0, _) = type1_settings(core::f64::consts::FRAC_PI_4);
        let e2 = p0.element(2);
        let eig = e2.to_cmat().hermitian_eig().unwrap();
        assert!(eig.values[0].abs() < 1e-12 && eig.values[1].abs() < 1e-12);
        assert!((eig.values[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qutrit_settings_are_sx_eigenprojectors() {
        let (p0, p1) = qutrit_optimal_settings();
        p0.validate().unwrap();
        p1.validate().unwrap();
        let sx = spin1(Axis::X);
        for (outcome, eval) in [(0usize, 1.0f64), (1, -1.0), (2, 0.0)] {
            let pi = p1.element(outcome);
            // ŝ_x π = eval·π on the eigenprojector.
            assert!(sx.matmul(pi).max_abs_diff(&pi.scale(eval)) < 1e-14, "outcome {outcome}");
        }
        // |2,1⟩ = (|0⟩ − |1⟩)/√2 in Bell levels.
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let expect = Op3::projector(bell_ket([r, -r, 0.0]));
        assert_close(p1.element(2), &expect, 1e-15);
    }

    #[test]
    fn balanced_frame_is_unitary_image() {
        // Conjugation preserves spectra and Hermiticity.
        let (a0, a1, a2) = qutrit_t_set();
        let (b0, b1, b2) = qutrit_t_set_balanced();
        for (a, b) in [(a0, b0), (a1, b1), (a2, b2)] {
            assert!(b.is_hermitian());
            assert!((a.trace() - b.trace()).norm() < 1e-12);
            let ea = a.to_cmat().hermitian_eig().unwrap().values;
            let eb = b.to_cmat().hermitian_eig().unwrap().values;
            for (x, y) in ea.iter().zip(&eb) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qubit_settings_complete_and_degenerate() {
        let (p0, p1) = qubit_optimal_settings();
        p0.validate().unwrap();
        p1.validate().unwrap();
        assert_close(p1.element(0), &Op3::zero(), 0.0);
        assert_close(p0.element(1), &Op3::zero(), 0.0);
        // The overlap realising β̃₂ = −1/4.
        let pi00 = p0.element(0);
        let pi11 = p1.element(1);
        let anti = pi00.matmul(pi11).add(&pi11.matmul(pi00));
        let min = anti.min_eigenvalue();
        assert!((min + 0.25).abs() < 1e-12, "min eig of {{π00, π11}} = {min}");
    }
}
