//! Compact full-Hilbert-space oracle for the acceptance suite: explicit
//! embeddings on (ℂ³)^⊗n, independent of the Dicke-basis machinery under
//! test.

use pibell_core::dicke::DickeBasis;
use pibell_core::mat::CMat;
use pibell_core::su3::{Op3, Povm};
use pibell_core::Complex64;

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

/// Isometry from the symmetric subspace into (ℂ³)^⊗n (columns are the
/// normalised Dicke states in basis order).
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
        let row = levels.iter().fold(0usize, |acc, &l| acc * 3 + l);
        v[(row, col)] = Complex64::ONE;
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

pub fn restrict(op: &CMat, isometry: &CMat) -> CMat {
    isometry.dagger().matmul(op).matmul(isometry)
}

/// Full-space Bell operator from the POVMs, assembled from single-particle
/// products only.
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
        a.add(b).sub(&d1.matmul(&d1)).add(&cc.add(e)).sub(&d2.matmul(&d2))
    };
    let t1f = embed_collective(&t1, n);
    let t2f = embed_collective(&t2, n);
    t1f.matmul(&t1f).add(&t2f.matmul(&t2f)).add(&embed_collective(&beta, n))
}
