//! Brute-force full-Hilbert-space oracle: builds permutation-invariant
//! operators on (ℂ³)^⊗n by explicit embedding and symmetrisation, entirely
//! independent of the Dicke-basis amplitude formulas it is used to check.

use num_complex::Complex64;
use pibell_core::dicke::DickeBasis;
use pibell_core::mat::CMat;
use pibell_core::su3::{Op3, Povm};

/// Σᵢ ô(i) on the full 3ⁿ space.
pub fn embed_collective(o: &Op3, n: usize) -> CMat {
    let dim = 3usize.pow(n as u32);
    let mut out = CMat::zeros(dim, dim);
    let o3 = o.to_cmat();
    let id3 = CMat::identity(3);
    for site in 0..n {
        let mut term = CMat::identity(1);
        for k in 0..n {
            term = term.kron(if k == site { &o3 } else { &id3 });
        }
        out = out.add(&term);
    }
    out
}

/// Index of the basis string (site levels, most significant site first).
fn string_index(levels: &[usize]) -> usize {
    levels.iter().fold(0, |acc, &l| acc * 3 + l)
}

/// The isometry V: symmetric subspace → (ℂ³)^⊗n whose columns are the
/// normalised Dicke states in basis order. Built by enumerating all 3ⁿ
/// level strings and bucketing them by occupation.
pub fn dicke_isometry(basis: &DickeBasis) -> CMat {
    let n = basis.n();
    let dim = 3usize.pow(n as u32);
    let d = basis.dimension();
    let mut v = CMat::zeros(dim, d);
    let mut counts = vec![0u64; d];
    let mut levels = vec![0usize; n];
    loop {
        let mut occ = [0u32; 3];
        for &l in &levels {
            occ[l] += 1;
        }
        let p = pibell_core::dicke::PartitionIndex::new(occ[0], occ[1], occ[2]);
        let col = basis.index_of(&p).unwrap();
        counts[col] += 1;
        v[(string_index(&levels), col)] = Complex64::ONE;
        // Odometer over level strings.
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            levels[k] += 1;
            if levels[k] < 3 {
                break;
            }
            levels[k] = 0;
        }
        if levels.iter().all(|&l| l == 0) {
            break;
        }
    }
    for col in 0..d {
        let norm = (counts[col] as f64).sqrt();
        for row in 0..dim {
            let x = v[(row, col)];
            if x != Complex64::ZERO {
                v[(row, col)] = x / norm;
            }
        }
    }
    v
}

/// V† O V: restriction of a full-space operator to the symmetric subspace.
pub fn restrict(op: &CMat, isometry: &CMat) -> CMat {
    isometry.dagger().matmul(op).matmul(isometry)
}

/// Full-space Bell operator built directly from the POVM elements:
/// 𝓑̂ = (Π̂₀|₀−Π̂₁|₁)² + (Π̂₀|₁−Π̂₁|₀)² + Σᵢ β̂(i), with β̂ assembled from
/// single-particle products (independent of the symmetric-subspace code).
pub fn embed_bell_operator(povm0: &Povm, povm1: &Povm, n: usize) -> CMat {
    let t1 = povm0.element(0).sub(povm1.element(1));
    let t2 = povm1.element(0).sub(povm0.element(1));
    let beta = {
        let a = povm0.element(0);
        let b = povm1.element(1);
        let cc = povm1.element(0);
        let e = povm0.element(1);
        let d1 = a.sub(b);
        let d2 = cc.sub(e);
        a.add(b)
            .sub(&d1.matmul(&d1))
            .add(&cc.add(e))
            .sub(&d2.matmul(&d2))
    };
    let t1f = embed_collective(&t1, n);
    let t2f = embed_collective(&t2, n);
    t1f.matmul(&t1f)
        .add(&t2f.matmul(&t2f))
        .add(&embed_collective(&beta, n))
}

/// Born-rule symmetrised correlations of an n-party state on the full space:
/// (P̃₀, P̃₀₀, P̃₁₀, P̃₁₁, P̃₀₁) summed over ordered party pairs.
pub fn born_rule_pipoint(povm0: &Povm, povm1: &Povm, state: &[Complex64], n: usize) -> [f64; 5] {
    let povm = [povm0, povm1];
    let single = |a: usize, x: usize| -> CMat {
        embed_collective(povm[x].element(a), n)
    };
    // ⟨Σᵢ π(i)⟩ gives P_{a|x} directly; two-body sums need Σ_{i≠j}, i.e.
    // pair embeddings. Build them explicitly.
    let dim = 3usize.pow(n as u32);
    let expect = |m: &CMat| -> f64 {
        let mv = m.matvec(state);
        state.iter().zip(&mv).map(|(s, v)| (s.conj() * v).re).sum()
    };
    let pair = |a: usize, x: usize, b: usize, y: usize| -> f64 {
        let mut total = CMat::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut term = CMat::identity(1);
                for k in 0..n {
                    let factor = if k == i {
                        povm[x].element(a).to_cmat()
                    } else if k == j {
                        povm[y].element(b).to_cmat()
                    } else {
                        CMat::identity(3)
                    };
                    term = term.kron(&factor);
                }
                total = total.add(&term);
            }
        }
        expect(&total)
    };
    let p0 = expect(&single(0, 0)) + expect(&single(0, 1)) + expect(&single(1, 0))
        + expect(&single(1, 1));
    let p00 = pair(0, 0, 0, 0) + pair(0, 1, 0, 1) + pair(1, 0, 1, 0) + pair(1, 1, 1, 1);
    let p10 = pair(0, 0, 0, 1) + pair(1, 0, 1, 1);
    let p11 = pair(0, 0, 1, 0) + pair(0, 1, 1, 1);
    let p01 = pair(0, 0, 1, 1) + pair(0, 1, 1, 0);
    [p0, p00, p10, p11, p01]
}
