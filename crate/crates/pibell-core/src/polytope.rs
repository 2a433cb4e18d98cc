//! Local-deterministic strategies of the permutation-invariant (n,2,3)
//! polytope, the exact classical bound of the three-outcome Bell inequality
//!
//! ```text
//!     B = P̃₀ + P̃₀₀ − 2·P̃₀₁ ≥ 0 ,
//! ```
//!
//! its PSD certificate, and the facet (tightness) check in the 5-dimensional
//! symmetrised correlation space.
//!
//! Every quantity here is an integer; all evaluation is done in integer
//! arithmetic so the classical bound is certified exactly.

use alloc::string::ToString;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::mat::CMat;
use crate::rng::Rng;
use crate::{Error, Result};

/// Coefficients (α₀, α₁, α₂, α₃, α₄) of the canonical inequality
/// B = P̃₀ + P̃₀₀ − 2·P̃₀₁, with classical bound 0.
pub const PIBI_COEFFS: [i64; 5] = [1, 1, 0, 0, -2];

/// Enumeration guideline: C(n+8,8) strategies stay comfortably below 10⁷ up
/// to here.
pub const LDS_BUDGET_N: usize = 20;

/// A permutation-invariant local-deterministic strategy: `counts[3a + b]`
/// parties answer (a, b) on settings (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LdsCounts {
    pub counts: [u64; 9],
}

impl LdsCounts {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts[3 * a + b]
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// All-mass-on-one-pair strategy.
    pub fn pure(n: u64, a: usize, b: usize) -> Self {
        let mut counts = [0u64; 9];
        counts[3 * a + b] = n;
        LdsCounts { counts }
    }
}

/// The five symmetrised correlations (P̃₀, P̃₀₀, P̃₁₀, P̃₁₁, P̃₀₁).
/// Integer-valued on every deterministic strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiPoint {
    pub p0: i64,
    pub p00: i64,
    pub p10: i64,
    pub p11: i64,
    pub p01: i64,
}

impl PiPoint {
    pub fn as_array(&self) -> [i64; 5] {
        [self.p0, self.p00, self.p10, self.p11, self.p01]
    }

    pub fn as_f64(&self) -> [f64; 5] {
        [self.p0 as f64, self.p00 as f64, self.p10 as f64, self.p11 as f64, self.p01 as f64]
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc
}

/// Number of PI local-deterministic strategies, C(n+8, 8).
pub fn lds_count(n: usize) -> u128 {
    binomial(n as u64 + 8, 8)
}

/// Streaming enumeration of every composition of n into 9 non-negative
/// counts, each exactly once. O(1) memory.
pub fn enumerate_lds(n: usize) -> Result<impl Iterator<Item = LdsCounts>> {
    if n == 0 {
        return Err(Error::InvalidInput("party count must be at least 1".to_string()));
    }
    Ok(CompositionIter { next: Some(LdsCounts::pure(n as u64, 0, 0)), n: n as u64 })
}

struct CompositionIter {
    next: Option<LdsCounts>,
    n: u64,
}

impl Iterator for CompositionIter {
    type Item = LdsCounts;

    fn next(&mut self) -> Option<LdsCounts> {
        let current = self.next?;
        let c = &current.counts;
        if c[8] == self.n {
            self.next = None;
        } else {
            let mut next = *c;
            let j = next.iter().position(|&x| x > 0).expect("counts sum to n > 0");
            let v = next[j];
            next[j] = 0;
            next[0] = v - 1;
            next[j + 1] += 1;
            self.next = Some(LdsCounts { counts: next });
        }
        Some(current)
    }
}

/// Symmetrised correlations of a deterministic strategy.
///
/// One-body sums are plain counts; two-body sums are product-minus-diagonal,
/// P_{ab|xy} = P_{a|x}·P_{b|y} − #(parties answering a on x and b on y).
pub fn lds_to_pipoint(lds: &LdsCounts) -> PiPoint {
    let g = |a: usize, b: usize| lds.get(a, b) as i64;
    let a0 = g(0, 0) + g(0, 1) + g(0, 2); // P_{0|0}
    let a1 = g(1, 0) + g(1, 1) + g(1, 2); // P_{1|0}
    let b0 = g(0, 0) + g(1, 0) + g(2, 0); // P_{0|1}
    let b1 = g(0, 1) + g(1, 1) + g(2, 1); // P_{1|1}
    let p0 = a0 + a1 + b0 + b1;
    let p00 = a0 * a0 + a1 * a1 + b0 * b0 + b1 * b1 - p0;
    let p10 = a0 * b0 + a1 * b1 - g(0, 0) - g(1, 1);
    let p11 = a0 * a1 + b0 * b1;
    let p01 = a0 * b1 - g(0, 1) + b0 * a1 - g(1, 0);
    PiPoint { p0, p00, p10, p11, p01 }
}

/// α·(P̃₀, P̃₀₀, P̃₁₀, P̃₁₁, P̃₀₁) − β_c with real coefficients.
pub fn bell_value(point: &PiPoint, coeffs: &[f64; 5], classical_shift: f64) -> f64 {
    let p = point.as_f64();
    coeffs.iter().zip(&p).map(|(c, x)| c * x).sum::<f64>() - classical_shift
}

/// Exact integer Bell value.
pub fn bell_value_exact(point: &PiPoint, coeffs: &[i64; 5], classical_shift: i64) -> i64 {
    let p = point.as_array();
    coeffs.iter().zip(&p).map(|(c, x)| c * x).sum::<i64>() - classical_shift
}

fn check_budget(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("party count must be at least 1".to_string()));
    }
    if n > LDS_BUDGET_N {
        return Err(Error::Budget { required: lds_count(n), budget: LDS_BUDGET_N });
    }
    Ok(())
}

/// Exact minimum of the Bell value over every PI local-deterministic
/// strategy, with one minimiser.
pub fn classical_minimum(
    n: usize,
    coeffs: &[i64; 5],
    classical_shift: i64,
) -> Result<(i64, LdsCounts)> {
    check_budget(n)?;
    let mut best: Option<(i64, LdsCounts)> = None;
    for lds in enumerate_lds(n)? {
        let v = bell_value_exact(&lds_to_pipoint(&lds), coeffs, classical_shift);
        match best {
            Some((b, _)) if b <= v => {}
            _ => best = Some((v, lds)),
        }
    }
    Ok(best.expect("enumeration is non-empty"))
}

/// The 6×6 PSD matrix certifying the classical bound: with
/// 𝐜 = (c₀₀, c₁₁, c₀₂, c₂₀, c₁₂, c₂₁),
/// B_LDS − 2(c₁₀ + c₀₁) = 𝐜ᵀ·𝓘·𝐜 holds identically.
pub const ILDS: [[i64; 6]; 6] = [
    [2, -2, 1, 1, -1, -1],
    [-2, 2, -1, -1, 1, 1],
    [1, -1, 1, 0, 0, -1],
    [1, -1, 0, 1, -1, 0],
    [-1, 1, 0, -1, 1, 0],
    [-1, 1, -1, 0, 0, 1],
];

fn certificate_vector(lds: &LdsCounts) -> [i64; 6] {
    [
        lds.get(0, 0) as i64,
        lds.get(1, 1) as i64,
        lds.get(0, 2) as i64,
        lds.get(2, 0) as i64,
        lds.get(1, 2) as i64,
        lds.get(2, 1) as i64,
    ]
}

/// Quadratic form 𝐜ᵀ·𝓘·𝐜 (exact).
pub fn certificate_quadratic_form(c: &[i64; 6]) -> i64 {
    let mut acc = 0i64;
    for i in 0..6 {
        for j in 0..6 {
            acc += c[i] * ILDS[i][j] * c[j];
        }
    }
    acc
}

/// Outcome of [`verify_psd_certificate`].
#[derive(Clone, Copy, Debug)]
pub struct PsdCertificate {
    /// min eigenvalue ≥ −1e-10 and every sampled identity held.
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Strategies on which B_LDS − 2(c₁₀+c₀₁) = 𝐜ᵀ𝓘𝐜 was checked exactly.
    pub identities_checked: usize,
}

/// Checks that 𝓘 is PSD and that the exact integer identity
/// B_LDS − 2(c₁₀ + c₀₁) = 𝐜ᵀ𝓘𝐜 holds on a deterministic random sample of
/// strategies for several n.
pub fn verify_psd_certificate() -> PsdCertificate {
    let m = CMat::from_fn(6, 6, |i, j| Complex64::new(ILDS[i][j] as f64, 0.0));
    let min_eigenvalue = m.hermitian_eig().expect("ILDS is symmetric").values[0];

    let mut rng = Rng::new(0x1d5);
    let mut checked = 0usize;
    let mut all_ok = true;
    for n in [1usize, 2, 3, 5, 8, 13] {
        for _ in 0..200 {
            let mut counts = [0u64; 9];
            for _ in 0..n {
                counts[rng.below(9)] += 1;
            }
            let lds = LdsCounts { counts };
            let b = bell_value_exact(&lds_to_pipoint(&lds), &PIBI_COEFFS, 0);
            let cross = 2 * (lds.get(1, 0) + lds.get(0, 1)) as i64;
            let q = certificate_quadratic_form(&certificate_vector(&lds));
            if b - cross != q || b < 0 {
                all_ok = false;
            }
            checked += 1;
        }
    }
    PsdCertificate { psd: min_eigenvalue >= -1e-10 && all_ok, min_eigenvalue, identities_checked: checked }
}

/// Result of the facet (tightness) check.
#[derive(Clone, Copy, Debug)]
pub struct FacetCheck {
    pub saturating_vertices: u128,
    /// Affine dimension spanned by the saturating set; 4 means the supporting
    /// hyperplane is a facet of the 5-dimensional projected polytope.
    pub affine_rank: usize,
}

/// Exact affine rank over the integers, built incrementally.
struct IntRank {
    rows: Vec<[i128; 5]>,
}

impl IntRank {
    fn new() -> Self {
        IntRank { rows: Vec::new() }
    }

    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.abs()
    }

    fn normalise(v: &mut [i128; 5]) -> bool {
        let g = v.iter().fold(0i128, |acc, &x| Self::gcd(acc, x));
        if g == 0 {
            return false;
        }
        for x in v.iter_mut() {
            *x /= g;
        }
        true
    }

    fn insert(&mut self, mut v: [i128; 5]) -> bool {
        for row in &self.rows {
            let p = row.iter().position(|&x| x != 0).unwrap();
            if v[p] != 0 {
                let (a, b) = (row[p], v[p]);
                let g = Self::gcd(a, b);
                let (fa, fb) = (a / g, b / g);
                for k in 0..5 {
                    v[k] = v[k] * fa - row[k] * fb;
                }
                // Keep entries primitive so chained eliminations cannot
                // overflow.
                if !Self::normalise(&mut v) {
                    return false;
                }
            }
        }
        if !Self::normalise(&mut v) {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_by_key(|r| r.iter().position(|&x| x != 0).unwrap());
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Exact minimum of an inequality over the strategies, with every minimiser
/// and the affine dimension the minimising PiPoints span.
#[derive(Clone, Debug)]
pub struct MinimumFace {
    pub minimum: i64,
    pub achievers: Vec<(LdsCounts, PiPoint)>,
    pub affine_rank: usize,
}

/// Two-pass exact computation of the minimum face (minimum, its vertices,
/// their affine rank).
pub fn minimum_face(n: usize, coeffs: &[i64; 5], classical_shift: i64) -> Result<MinimumFace> {
    let (minimum, _) = classical_minimum(n, coeffs, classical_shift)?;
    let mut achievers = Vec::new();
    let mut rank = IntRank::new();
    let mut base: Option<[i64; 5]> = None;
    for lds in enumerate_lds(n)? {
        let p = lds_to_pipoint(&lds);
        if bell_value_exact(&p, coeffs, classical_shift) != minimum {
            continue;
        }
        let arr = p.as_array();
        match base {
            None => base = Some(arr),
            Some(b) => {
                let mut diff = [0i128; 5];
                for k in 0..5 {
                    diff[k] = (arr[k] - b[k]) as i128;
                }
                rank.insert(diff);
            }
        }
        achievers.push((lds, p));
    }
    Ok(MinimumFace { minimum, achievers, affine_rank: rank.rank() })
}

/// Collects the strategies saturating B = 0 under the canonical coefficients
/// and the affine dimension their PiPoints span.
pub fn facet_check(n: usize) -> Result<FacetCheck> {
    let face = minimum_face(n, &PIBI_COEFFS, 0)?;
    debug_assert_eq!(face.minimum, 0);
    Ok(FacetCheck {
        saturating_vertices: face.achievers.len() as u128,
        affine_rank: face.affine_rank,
    })
}

/// Saturating vertices with their PiPoints (for report output).
pub fn saturating_vertices(n: usize) -> Result<Vec<(LdsCounts, PiPoint)>> {
    Ok(minimum_face(n, &PIBI_COEFFS, 0)?.achievers)
}
