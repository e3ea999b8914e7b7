//! Damped Newton iteration on log-shapes.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::gluing::GluingSystem;
use super::special::bloch_wigner;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub max_iters: usize,
    pub tolerance: f64,
    pub min_step: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iters: 200,
            tolerance: 1e-12,
            min_step: 2f64.powi(-20),
        }
    }
}

impl SolverOptions {
    /// Defaults, with the iteration cap taken from `FIBERED_LINKS_MAX_ITERS`
    /// when set.
    pub fn from_env() -> Self {
        let mut o = SolverOptions::default();
        if let Some(n) = std::env::var("FIBERED_LINKS_MAX_ITERS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            o.max_iters = n;
        }
        o
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Geometric,
    SolvedNonGeometric,
    Failed,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeSolution {
    pub shapes: Vec<Complex64>,
    pub residual: f64,
    pub geometric: bool,
    pub converged: bool,
    pub iterations: usize,
    pub status: SolveStatus,
    /// Residual after each accepted step, starting from the initial shapes.
    pub history: Vec<f64>,
}

impl GluingSystem {
    /// Equation values `F(w)` at log-shapes `w`, minus their targets.
    pub fn residual_vector(&self, w: &[Complex64]) -> Vec<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let ipi = Complex64::new(0.0, PI);
        let l2: Vec<Complex64> = w.iter().map(|w| -(one - w.exp()).ln()).collect();
        self.equations
            .iter()
            .map(|e| {
                let mut s = Complex64::new(0.0, -e.target);
                for j in 0..self.num_tetrahedra {
                    let l1 = w[j];
                    let l3 = ipi - l1 - l2[j];
                    s += l1 * e.a[j] as f64 + l2[j] * e.b[j] as f64 + l3 * e.c[j] as f64;
                }
                s
            })
            .collect()
    }

    /// Analytic Jacobian `dF/dw`.
    pub fn jacobian(&self, w: &[Complex64]) -> DMatrix<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let d2: Vec<Complex64> = w
            .iter()
            .map(|w| {
                let z = w.exp();
                z / (one - z)
            })
            .collect();
        DMatrix::from_fn(self.equations.len(), self.num_tetrahedra, |r, j| {
            let e = &self.equations[r];
            // dL1 = 1, dL2 = z/(1-z), dL3 = -1 - z/(1-z)
            Complex64::new((e.a[j] - e.c[j]) as f64, 0.0) + d2[j] * (e.b[j] - e.c[j]) as f64
        })
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn degenerate(w: &[Complex64]) -> bool {
    w.iter().any(|w| {
        let z = w.exp();
        !z.is_finite() || z.norm() < 1e-12 || (z - 1.0).norm() < 1e-12 || w.re.abs() > 600.0
    })
}

/// Solves from the regular ideal shape with options from the environment.
pub fn solve_shapes(s: &GluingSystem) -> ShapeSolution {
    solve_shapes_with(s, &SolverOptions::from_env())
}

pub fn solve_shapes_with(s: &GluingSystem, opts: &SolverOptions) -> ShapeSolution {
    let start = Complex64::new(0.0, PI / 3.0);
    let mut w = vec![start; s.num_tetrahedra];
    let mut f = s.residual_vector(&w);
    let mut res = max_norm(&f);
    let mut history = vec![res];
    let mut iterations = 0;

    while res >= opts.tolerance && iterations < opts.max_iters {
        iterations += 1;
        let j = s.jacobian(&w);
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|x| -x));
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        let Ok(step) = svd.solve(&rhs, smax * 1e-12) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda >= opts.min_step {
            let trial: Vec<Complex64> = w.iter().zip(step.iter()).map(|(w, d)| w + d * lambda).collect();
            if !degenerate(&trial) {
                let ft = s.residual_vector(&trial);
                let rt = max_norm(&ft);
                if rt < res {
                    w = trial;
                    f = ft;
                    res = rt;
                    accepted = true;
                    break;
                }
            }
            lambda /= 2.0;
        }
        if !accepted {
            break;
        }
        history.push(res);
    }

    let shapes: Vec<Complex64> = w.iter().map(|w| w.exp()).collect();
    let converged = res < opts.tolerance;
    let geometric = converged && shapes.iter().all(|z| z.im > 0.0);
    let status = if degenerate(&w) {
        SolveStatus::Degenerate
    } else if !converged {
        SolveStatus::Failed
    } else if geometric {
        SolveStatus::Geometric
    } else {
        SolveStatus::SolvedNonGeometric
    };
    ShapeSolution {
        shapes,
        residual: res,
        geometric,
        converged,
        iterations,
        status,
        history,
    }
}

/// `Σ D(z_j)`; negatively oriented tetrahedra subtract.
pub fn volume(sol: &ShapeSolution) -> Result<f64> {
    if !sol.converged {
        return Err(Error::NotConverged(format!("residual {:.3e}", sol.residual)));
    }
    Ok(sol.shapes.iter().map(|&z| bloch_wigner(z)).sum())
}
