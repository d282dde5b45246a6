//! Nelder-Mead downhill simplex minimization.
//!
//! Small, dependency-free implementation used by the Weibull least-squares
//! fit. Non-finite objective values are treated as infinitely bad, which
//! lets callers encode constraints by returning NaN/inf outside the valid
//! region.

/// Options controlling a single simplex run.
#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    /// Stop when every vertex lies within `tol` (inf-norm) of the best one.
    pub tol: f64,
    /// Hard cap on objective evaluations.
    pub max_evals: usize,
    /// Step used to build the initial simplex along coordinates that are
    /// (near) zero; nonzero coordinates step by 5% of their magnitude.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            tol: 1e-10,
            max_evals: 10_000,
            initial_step: 0.1,
        }
    }
}

/// Outcome of a simplex run. `converged` is false when the evaluation
/// budget ran out before the simplex collapsed below tolerance.
#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimizes `f` starting from `x0`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n >= 1, "cannot optimize a zero-dimensional function");

    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        sanitize(f(x))
    };

    // Initial simplex: x0 plus one perturbed vertex per coordinate.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), fx0));
    for i in 0..n {
        let mut v = x0.to_vec();
        let step = if v[i].abs() > 1e-8 {
            0.05 * v[i].abs()
        } else {
            opts.initial_step
        };
        v[i] += step;
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    let order = |s: &mut Vec<(Vec<f64>, f64)>| {
        s.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    };
    order(&mut simplex);

    while evals < opts.max_evals {
        // Convergence: simplex diameter in inf-norm.
        let best = &simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .map(|(v, _)| {
                v.iter()
                    .zip(best)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < opts.tol {
            return NelderMeadResult {
                x: simplex[0].0.clone(),
                fx: simplex[0].1,
                evaluations: evals,
                converged: true,
            };
        }

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x;
            }
        }
        for c in &mut centroid {
            *c /= n as f64;
        }

        let worst = simplex[n].clone();
        let lerp = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = lerp(REFLECT);
        let f_reflected = eval(&reflected, &mut evals);

        if f_reflected < simplex[0].1 {
            let expanded = lerp(EXPAND);
            let f_expanded = eval(&expanded, &mut evals);
            simplex[n] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[n - 1].1 {
            simplex[n] = (reflected, f_reflected);
        } else {
            let contracted = if f_reflected < worst.1 {
                // Outside contraction, between centroid and reflection.
                centroid
                    .iter()
                    .zip(&reflected)
                    .map(|(c, r)| c + CONTRACT * (r - c))
                    .collect::<Vec<_>>()
            } else {
                lerp(-CONTRACT)
            };
            let f_contracted = eval(&contracted, &mut evals);
            if f_contracted < f_reflected.min(worst.1) {
                simplex[n] = (contracted, f_contracted);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].0.clone();
                for (v, fv) in simplex.iter_mut().skip(1) {
                    for (x, b) in v.iter_mut().zip(&best) {
                        *x = b + SHRINK * (*x - b);
                    }
                    *fv = eval(v, &mut evals);
                }
            }
        }
        order(&mut simplex);
    }

    NelderMeadResult {
        x: simplex[0].0.clone(),
        fx: simplex[0].1,
        evaluations: evals,
        converged: false,
    }
}
