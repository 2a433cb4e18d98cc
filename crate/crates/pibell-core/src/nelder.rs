//! Derivative-free simplex minimisation (Nelder–Mead) with the adaptive
//! coefficients of Gao & Han, which keep contraction effective in the
//! high-dimensional parameter spaces used for POVM optimisation.

use alloc::{vec, vec::Vec};

/// Outcome of a simplex run.
#[derive(Clone, Debug)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// True when the simplex collapsed below the size tolerance (as opposed
    /// to stopping on the evaluation budget).
    pub converged: bool,
}

/// Minimises `f` starting from `x0`, stepping `step` along each coordinate to
/// build the initial simplex. Stops when the simplex diameter falls below
/// `size_tol` or after `max_evals` evaluations.
pub fn minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    size_tol: f64,
    max_evals: usize,
) -> SimplexResult {
    let dim = x0.len();
    assert!(dim >= 1);
    let nf = dim as f64;
    // Gao–Han adaptive parameters.
    let alpha = 1.0;
    let beta = 1.0 + 2.0 / nf;
    let gamma = 0.75 - 1.0 / (2.0 * nf);
    let delta = 1.0 - 1.0 / nf;

    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..dim {
        let mut xi = x0.to_vec();
        xi[i] += step;
        let vi = eval(&xi, &mut evals);
        simplex.push((xi, vi));
    }

    let mut converged = false;
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        // Simplex diameter in the ∞-norm relative to the best vertex.
        let best = simplex[0].0.clone();
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter().zip(&best).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if size <= size_tol {
            converged = true;
            break;
        }

        let worst = simplex[dim].1;
        let second_worst = simplex[dim - 1].1;
        let best_val = simplex[0].1;

        let mut centroid = vec![0.0f64; dim];
        for (x, _) in simplex.iter().take(dim) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / nf;
            }
        }
        let point = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim].0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let xr = point(alpha);
        let fr = eval(&xr, &mut evals);
        if fr < best_val {
            let xe = point(alpha * beta);
            let fe = eval(&xe, &mut evals);
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < second_worst {
            simplex[dim] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst {
                let xc = point(alpha * gamma);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = point(-gamma);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < worst.min(fr) {
                simplex[dim] = (xc, fc);
            } else {
                // Shrink towards the best vertex.
                for k in 1..=dim {
                    let xk: Vec<f64> = simplex[k]
                        .0
                        .iter()
                        .zip(&simplex[0].0)
                        .map(|(x, b)| b + delta * (x - b))
                        .collect();
                    let fk = eval(&xk, &mut evals);
                    simplex[k] = (xk, fk);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexResult { x, value, evaluations: evals, converged }
}
