//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them). Every tolerance is
//! pinned in code.
//!
//! Three legs encode stated reference expectations that verified ground
//! truth contradicts (the printed analysis and the regression tests pin the
//! true values): the facet rank at n = 3 is 3, the −n/4 crossover of the
//! verified qutrit Bell operator happens at n = 45, and λ_min/n at n = 200
//! is −0.373 on its ~1.8/√n approach to −1/2. They are asserted as stated
//! and fail by design; their test names carry `_expected_fail`.

mod oracle;

use std::time::Instant;

use pibell_core::becdyn;
use pibell_core::dicke::DickeBasis;
use pibell_core::dimbounds::{self, LocalDim};
use pibell_core::polytope::{self, PIBI_COEFFS};
use pibell_core::su3;
use pibell_core::symrep;
use pibell_core::witness::{self, WitnessData};
use pibell_core::Complex64;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_1_classical_bound() {
    let start = Instant::now();
    let mut ok = true;
    for n in 1..=12usize {
        let (min, _) = polytope::classical_minimum(n, &PIBI_COEFFS, 0).unwrap();
        if min != 0 {
            ok = false;
            report("1 (classical bound)", false, &format!("minimum {min} ≠ 0 at n = {n}"));
        }
    }
    let cert = polytope::verify_psd_certificate();
    let psd_ok = cert.min_eigenvalue >= -1e-12 && cert.psd;
    let elapsed = start.elapsed();
    let within_budget = elapsed.as_secs_f64() < 120.0;
    let pass = ok && psd_ok && within_budget;
    report(
        "1 (classical bound)",
        pass,
        &format!(
            "minima exactly 0 for n ∈ 1..=12; certificate min eigenvalue {:.2e}; {:.2?}",
            cert.min_eigenvalue, elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_facet_tightness_n5_n10() {
    let r5 = polytope::facet_check(5).unwrap();
    let r10 = polytope::facet_check(10).unwrap();
    let pass = r5.affine_rank == 4 && r10.affine_rank == 4;
    report(
        "2 (facet tightness, n ∈ {5, 10})",
        pass,
        &format!(
            "affine rank {} at n = 5 ({} vertices), {} at n = 10 ({} vertices)",
            r5.affine_rank, r5.saturating_vertices, r10.affine_rank, r10.saturating_vertices
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_facet_tightness_n3_expected_fail() {
    // Stated reference expectation: affine rank 4 at n = 3. Exhaustive exact
    // enumeration gives six saturating vertices, all with P̃₀₀ = 0 (a
    // same-setting two-body term needs a one-body sum ≥ 2, impossible under
    // the saturation constraints with only three parties), so the affine
    // hull is 3-dimensional; the inequality becomes a facet from n = 4 on.
    let r3 = polytope::facet_check(3).unwrap();
    report(
        "2 (facet tightness, n = 3)",
        r3.affine_rank == 4,
        &format!(
            "measured affine rank {} from {} saturating vertices (stated expectation 4; \
             supporting hyperplane only, facet from n = 4)",
            r3.affine_rank, r3.saturating_vertices
        ),
    );
    assert_eq!(r3.affine_rank, 4, "known discrepancy: the n = 3 saturating set spans rank 3");
}

#[test]
fn criterion_3_oracle_equivalence() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 2..=5usize {
        let basis = DickeBasis::new(n).unwrap();
        let iso = oracle::dicke_isometry(&basis);
        // Collective operators (the generators used downstream).
        for o in [
            su3::spin1(su3::Axis::X),
            su3::spin1(su3::Axis::Y),
            su3::spin1(su3::Axis::Z),
            su3::quadrupole(su3::QuadPair::Yz),
            su3::quadrupole(su3::QuadPair::Zz),
            su3::quadrupole(su3::QuadPair::Xy),
        ] {
            let diff = oracle::restrict(&oracle::embed_collective(&o, n), &iso)
                .max_abs_diff(&symrep::collective_operator(&o, &basis).to_dense());
            worst = worst.max(diff);
        }
        // Bell operators for both optimal settings and a spin-1 angle.
        for (p0, p1) in [
            su3::qutrit_optimal_settings(),
            su3::qubit_optimal_settings(),
            su3::type1_settings(0.9),
        ] {
            let full = oracle::restrict(&oracle::embed_bell_operator(&p0, &p1, n), &iso);
            let sym = symrep::bell_operator_from_povms(&p0, &p1, &basis).unwrap().to_dense();
            worst = worst.max(full.max_abs_diff(&sym));
            let ev_full = full.hermitian_eig().unwrap().values;
            let ev_sym = sym.hermitian_eig().unwrap().values;
            for (a, b) in ev_full.iter().zip(&ev_sym) {
                worst = worst.max((a - b).abs());
            }
        }
        // Hamiltonian and time evolution.
        let h_sym = becdyn::spin1_hamiltonian(n, -1.0, 0.2, &basis);
        let mut s2 = pibell_core::mat::CMat::zeros(3usize.pow(n as u32), 3usize.pow(n as u32));
        for axis in [su3::Axis::X, su3::Axis::Y, su3::Axis::Z] {
            let s = oracle::embed_collective(&su3::spin1(axis), n);
            s2 = s2.add(&s.matmul(&s));
        }
        let h_full = s2.scale(Complex64::new(-1.0 / (2.0 * n as f64), 0.0)).add(
            &oracle::embed_collective(&su3::quadrupole(su3::QuadPair::Zz), n)
                .scale(Complex64::new(0.2, 0.0)),
        );
        worst = worst.max(oracle::restrict(&h_full, &iso).max_abs_diff(&h_sym.to_dense()));
        let polar = becdyn::polar_state(&basis);
        let eig_full = h_full.hermitian_eig().unwrap();
        let polar_full = iso.matvec(polar.amplitudes());
        for &t in &[0.5, 2.3] {
            let sym_t = becdyn::evolve(&polar, &h_sym, t).unwrap();
            let lifted = iso.matvec(sym_t.amplitudes());
            let mut coeff = eig_full.vectors.dagger().matvec(&polar_full);
            for (cc, lam) in coeff.iter_mut().zip(&eig_full.values) {
                let (s, co) = (lam * t).sin_cos();
                *cc *= Complex64::new(co, -s);
            }
            let full_t = eig_full.vectors.matvec(&coeff);
            let fid: Complex64 = full_t.iter().zip(&lifted).map(|(a, b)| a.conj() * b).sum();
            worst = worst.max((fid.norm() - 1.0).abs());
        }
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-9 && elapsed.as_secs_f64() < 300.0;
    report(
        "3 (oracle equivalence)",
        pass,
        &format!("worst deviation {worst:.2e} over n ∈ {{2..5}}; {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_4_dimension_bounds() {
    let seed = 20_260_615u64;
    let v2 = dimbounds::variational_bound(2, 50, seed).unwrap();
    let v3 = dimbounds::variational_bound(3, 50, seed).unwrap();
    let chk = dimbounds::beta_infinity_check(10_000, seed).unwrap();
    // The cleaned optimal qubit POVMs are rank-≤1 projective: every element
    // eigenvalue sits within 1e-4 of {0, 1} with at most one 1.
    let mut projective_dev: f64 = 0.0;
    for povm in [&v2.povm0, &v2.povm1] {
        for e in povm.iter() {
            let vals = e.hermitian_eig().unwrap().values;
            let mut ones = 0usize;
            for v in vals {
                let d0 = v.abs();
                let d1 = (v - 1.0).abs();
                projective_dev = projective_dev.max(d0.min(d1));
                if d1 < d0 {
                    ones += 1;
                }
            }
            assert!(ones <= 1, "qubit POVM element has rank > 1");
        }
    }
    let pass = (v2.bound + 0.25).abs() < 1e-6
        && (v3.bound + 0.50).abs() < 1e-6
        && v2.restarts_used <= 200
        && v3.restarts_used <= 200
        && projective_dev <= 1e-4
        && chk.empirical_min >= -0.5 - 1e-9
        && chk.chain_violations == 0;
    report(
        "4 (dimension bounds)",
        pass,
        &format!(
            "β̃₂ = {:.10} (|Δ| = {:.1e}), β̃₃ = {:.10} (|Δ| = {:.1e}), 50 restarts each; \
             qubit POVMs projective to {:.1e}; β∞ check over {} samples: min ⟨β̂⟩ = {:.6} ≥ −1/2, \
             chain violations {}",
            v2.bound,
            (v2.bound + 0.25).abs(),
            v3.bound,
            (v3.bound + 0.50).abs(),
            projective_dev,
            chk.samples,
            chk.empirical_min,
            chk.chain_violations
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_hp_convergence() {
    let start = Instant::now();
    let mut detail = String::new();
    let mut pass = true;
    for dim in [LocalDim::Qubit, LocalDim::Qutrit] {
        let mut prev = f64::INFINITY;
        for n in [20usize, 40, 80] {
            let basis = DickeBasis::new(n).unwrap();
            let bell = symrep::optimal_bell_operator(dim, &basis);
            let (lam, _) = symrep::min_eigenpair(&bell).unwrap();
            let ratio = (lam - dimbounds::hp_bound(dim, n)).abs() / n as f64;
            if ratio >= prev {
                pass = false;
            }
            detail.push_str(&format!("{dim:?} n={n}: {ratio:.5}; "));
            prev = ratio;
        }
    }
    // The n = 60 qutrit ground energy already beats the scalable qubit line.
    let basis60 = DickeBasis::new(60).unwrap();
    let (lam60, _) =
        symrep::min_eigenpair(&symrep::optimal_bell_operator(LocalDim::Qutrit, &basis60)).unwrap();
    pass = pass && lam60 < -15.0;
    let elapsed = start.elapsed();
    pass = pass && elapsed.as_secs_f64() < 180.0;
    report(
        "5 (HP convergence)",
        pass,
        &format!("|λ−E_d|/n strictly decreasing: {detail}λ(60) = {lam60:.3} < −15; {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_5_crossover_window_expected_fail() {
    // Stated reference expectation: the qutrit curve crosses below −n/4 at
    // some n ∈ [50, 58]. The operator — validated entrywise against the 3ⁿ
    // oracle and through Born-rule consistency — crosses between n = 44 and
    // n = 45, and its exact ground energies lie below the analytic E₃(n)
    // curve (whose own crossing is n ≈ 49.6), so no faithful construction
    // reaches the stated window.
    let start = Instant::now();
    let mut crossover = None;
    let mut table = String::new();
    for n in 40..=58usize {
        let basis = DickeBasis::new(n).unwrap();
        let bell = symrep::optimal_bell_operator(LocalDim::Qutrit, &basis);
        let (lam, _) = symrep::min_eigenpair(&bell).unwrap();
        if crossover.is_none() && lam < -(n as f64) / 4.0 {
            crossover = Some(n);
            table = format!("λ({n}) = {lam:.4} < {:.2}", -(n as f64) / 4.0);
        }
    }
    let elapsed = start.elapsed();
    let n_star = crossover.expect("the curve does cross");
    let pass = (50..=58).contains(&n_star) && elapsed.as_secs_f64() < 180.0;
    report(
        "5 (crossover window)",
        pass,
        &format!("first n with λ_min < −n/4 is {n_star} ({table}); stated window [50, 58]; {elapsed:.2?}"),
    );
    assert!(pass, "known discrepancy: verified crossover at n = {n_star}, not in [50, 58]");
}

#[test]
fn criterion_6_thermodynamic_bound_expected_fail() {
    // Stated reference expectation: λ_min/n ∈ [−0.50, −0.45] at n = 200.
    // The verified operator gives −0.3727 there; the finite-size approach is
    // λ/n ≈ −1/2 + 1.8/√n, which enters the stated band only around
    // n ≈ 1300. A larger-n diagnostic value is printed to show the trend
    // toward −1/2.
    let run = |n: usize| -> f64 {
        let basis = DickeBasis::new(n).unwrap();
        let bell = symrep::optimal_bell_operator(LocalDim::Qutrit, &basis);
        let (lam, _) = symrep::min_eigenpair(&bell).unwrap();
        lam / n as f64
    };
    let v200 = run(200);
    let v400 = run(400);
    let fit200 = (v200 + 0.5) * (200.0f64).sqrt();
    let fit400 = (v400 + 0.5) * (400.0f64).sqrt();
    let pass = (-0.50..=-0.45).contains(&v200);
    report(
        "6 (thermodynamic bound)",
        pass,
        &format!(
            "λ_min/n = {v200:.5} at n = 200 (stated band [−0.50, −0.45]); \
             diagnostic λ_min/n = {v400:.5} at n = 400; \
             (λ/n + 1/2)·√n = {fit200:.3} → {fit400:.3}, entering the band only near n ≈ 1300"
        ),
    );
    assert!(pass, "known discrepancy: measured λ_min/200 = {v200}");
}

#[test]
fn criterion_7_bec_dynamics() {
    let start = Instant::now();
    let params = becdyn::SpinMixParams::uniform(30, -1.0, 0.2, 10.0, 400);
    let records = becdyn::run_trajectory(&params).unwrap();
    let r0 = &records[0];
    let corner_ok = (r0.x - 1.0).abs() <= 1e-10
        && (r0.y - 1.0).abs() <= 1e-10
        && (r0.z - 1.0).abs() <= 1e-10
        && (r0.xi_inv2 - 1.0).abs() <= 1e-10;
    let max_xi = records.iter().map(|r| r.xi_inv2).fold(f64::NEG_INFINITY, f64::max);
    let min_bell = records.iter().map(|r| r.bell_value).fold(f64::INFINITY, f64::min);
    let min_r = records.iter().map(|r| r.r).fold(f64::INFINITY, f64::min);
    let t_wineland = becdyn::first_squeezing_time(&records);
    let t_bell = becdyn::first_bell_time(&records);
    let ordering_ok = match (t_wineland, t_bell) {
        (Some(tw), Some(tb)) => tw <= tb,
        _ => false,
    };
    let elapsed = start.elapsed();
    let pass = corner_ok
        && max_xi > 1.0 + 1e-6
        && min_bell < 0.0
        && ordering_ok
        && elapsed.as_secs_f64() < 60.0;
    report(
        "7 (BEC dynamics)",
        pass,
        &format!(
            "t = 0 corner (x, y, z, ξ⁻²) = ({:.2e}, {:.2e}, {:.2e}, {:.2e}) off (1,1,1,1); \
             max ξ⁻² = {max_xi:.3}, min Bell = {min_bell:.4}, \
             over-squeezing shrinks r to {min_r:.2} of 30, \
             t₁(ξ⁻² > 1) = {:.3} ≤ t₁(Bell < 0) = {:.3}; {elapsed:.2?}",
            (r0.x - 1.0).abs(),
            (r0.y - 1.0).abs(),
            (r0.z - 1.0).abs(),
            (r0.xi_inv2 - 1.0).abs(),
            t_wineland.unwrap_or(f64::NAN),
            t_bell.unwrap_or(f64::NAN)
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_type1_dimension_witness() {
    let n = 60usize;
    let theta = std::f64::consts::FRAC_PI_4;
    let basis = DickeBasis::new(n).unwrap();
    let (p0, p1) = su3::type1_settings(theta);
    let bell = symrep::bell_operator_from_povms(&p0, &p1, &basis).unwrap();
    let (lam, ground) = symrep::min_eigenpair(&bell).unwrap();
    let d = symrep::extract_type1_data(&ground);
    let wd = WitnessData::type1(d.x, d.y, d.z);
    let w_dim = witness::type1_witness(&wd, -0.25).unwrap();
    let recon = witness::type1_bell_value(theta, &wd);
    let identity_err = (recon - lam / n as f64).abs();
    let pass = w_dim < 0.0 && identity_err <= 1e-8;
    report(
        "8 (type-1 dimension witness)",
        pass,
        &format!(
            "n = 60, θ = π/4: witness(β = −1/4) = {w_dim:.5} < 0; \
             collective reconstruction off λ_min/n by {identity_err:.2e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_documented_exclusions() {
    // The moment-matrix SDP hierarchy is out of scope by design; witness
    // thresholds use the closed-form certified constant −1/4 (and β_∞ =
    // −1/2), never the local optimiser output.
    let pass = dimbounds::CERTIFIED_QUBIT_BOUND == -0.25 && dimbounds::BETA_INFINITY == -0.5;
    report(
        "9 (documented exclusions)",
        pass,
        "SDP hierarchy levels not reproduced (out of scope); witnesses pin β₂ = −1/4, β∞ = −1/2 as certified constants",
    );
    assert!(pass);
}
