//! Solver for arbitrary (possibly asymmetric) chains.
//!
//! Substituting the closed-form spans `y_i(lambda, mu)` into the two
//! feasibility constraints leaves a 2x2 nonlinear system in the multipliers.
//! That system is the gradient of a strictly concave dual potential, so a
//! damped Newton iteration with an ascent line search on the potential
//! converges from anywhere; an exact coordinate-maximization sweep backs it
//! up whenever a step is rejected. The iteration starts from the exact
//! multipliers of the mirror-averaged chain.

use crate::error::SolveError;
use crate::model::ValidatedChainSpec;
use crate::root::newton_bisect;
use crate::solution::{ChainSolution, SolverKind, SolverReport};
use crate::symmetric::PhiFunction;

const MAX_ITER: usize = 500;
const MAX_HALVINGS: usize = 30;

/// The two-equation optimality system of a chain: level attachment points and
/// exact span, with every `y_i` eliminated through its closed form
/// `y_i = -l_i (c_i + lambda) / sqrt((c_i + lambda)^2 + mu^2)`.
#[derive(Debug, Clone)]
pub struct KktSystem {
    lengths: Vec<f64>,
    c: Vec<f64>,
    span: f64,
}

/// A candidate multiplier pair; `mu` must stay positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierPair {
    pub lambda: f64,
    pub mu: f64,
}

impl KktSystem {
    pub fn new(spec: &ValidatedChainSpec) -> Self {
        KktSystem {
            lengths: spec.lengths().to_vec(),
            c: spec.coefficients().c,
            span: spec.span(),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    fn require_positive(&self, mu: f64) -> Result<(), SolveError> {
        if mu <= 0.0 || mu.is_nan() {
            return Err(SolveError::NonPositiveMu { mu });
        }
        Ok(())
    }

    /// Residual `(sum_i y_i, d - sum_i l_i mu / sqrt((c_i + lambda)^2 + mu^2))`.
    pub fn residual(&self, p: &MultiplierPair) -> Result<(f64, f64), SolveError> {
        self.require_positive(p.mu)?;
        Ok(self.residual_unchecked(p))
    }

    fn residual_unchecked(&self, p: &MultiplierPair) -> (f64, f64) {
        let mut height = 0.0;
        let mut reach = 0.0;
        for (&l, &c) in self.lengths.iter().zip(&self.c) {
            let s = c + p.lambda;
            let q = (s * s + p.mu * p.mu).sqrt();
            height += -l * s / q;
            reach += l * p.mu / q;
        }
        (height, self.span - reach)
    }

    /// Analytic Jacobian of [`KktSystem::residual`]. The matrix is symmetric
    /// with strictly negative diagonal, hence negative definite away from
    /// degeneracy.
    pub fn jacobian(&self, p: &MultiplierPair) -> Result<[[f64; 2]; 2], SolveError> {
        self.require_positive(p.mu)?;
        Ok(self.jacobian_unchecked(p))
    }

    fn jacobian_unchecked(&self, p: &MultiplierPair) -> [[f64; 2]; 2] {
        let mu = p.mu;
        let mut d_height_d_lambda = 0.0;
        let mut mixed = 0.0;
        let mut d_reach_d_mu = 0.0;
        for (&l, &c) in self.lengths.iter().zip(&self.c) {
            let s = c + p.lambda;
            let q = (s * s + mu * mu).sqrt();
            let q3 = q * q * q;
            d_height_d_lambda -= l * mu * mu / q3;
            mixed += l * s * mu / q3;
            d_reach_d_mu += l * s * s / q3;
        }
        [[d_height_d_lambda, mixed], [mixed, -d_reach_d_mu]]
    }

    fn spans(&self, p: &MultiplierPair) -> (Vec<f64>, Vec<f64>) {
        let n = self.lengths.len();
        let mut y = vec![0.0; n];
        let mut x = vec![0.0; n];
        for i in 0..n {
            let l = self.lengths[i];
            let s = self.c[i] + p.lambda;
            let q = (s * s + p.mu * p.mu).sqrt();
            y[i] = -l * s / q;
            x[i] = l * p.mu / q;
        }
        (y, x)
    }

    /// The dual potential `mu d - sum_i l_i sqrt((c_i + lambda)^2 + mu^2)`.
    /// Its gradient is the residual and its Hessian is the Jacobian, which is
    /// negative definite, so the residual's unique zero is the potential's
    /// maximum. Serves as the line-search merit.
    fn dual_potential(&self, p: &MultiplierPair) -> f64 {
        let mut total = 0.0;
        for (&l, &c) in self.lengths.iter().zip(&self.c) {
            let s = c + p.lambda;
            total += l * (s * s + p.mu * p.mu).sqrt();
        }
        p.mu * self.span - total
    }

    /// Exact maximization of the dual potential over `mu` at fixed `lambda`:
    /// the partial derivative is strictly decreasing in `mu` and changes sign
    /// on `(0, inf)`, so the bracketed Newton driver finds its root.
    fn maximize_over_mu(&self, lambda: f64, tol: f64) -> Result<f64, SolveError> {
        let scale = self
            .c
            .iter()
            .map(|c| (c + lambda).abs())
            .fold(0.0f64, f64::max)
            + 1.0;
        let lo = f64::EPSILON * scale;
        let mut hi = scale;
        let eval = |mu: f64| {
            let p = MultiplierPair { lambda, mu };
            let j = self.jacobian_unchecked(&p);
            (self.residual_unchecked(&p).1, j[1][1])
        };
        for _ in 0..200 {
            if eval(hi).0 < 0.0 {
                return Ok(newton_bisect(eval, lo, hi, tol, MAX_ITER)?.root);
            }
            hi *= 2.0;
        }
        Err(SolveError::BracketingFailure {
            lo,
            hi,
            f_lo: eval(lo).0,
            f_hi: eval(hi).0,
        })
    }

    /// Exact maximization over `lambda` at fixed `mu`. The height residual is
    /// strictly decreasing in `lambda` and changes sign inside
    /// `(-c_1, -c_n)`; the insets shrink toward the ends until the signs
    /// show.
    fn maximize_over_lambda(&self, mu: f64, tol: f64) -> Result<f64, SolveError> {
        let eval = |lambda: f64| {
            let p = MultiplierPair { lambda, mu };
            let j = self.jacobian_unchecked(&p);
            (self.residual_unchecked(&p).0, j[0][0])
        };
        let width = self.c[0] - self.c[self.c.len() - 1];
        let mut inset = 1e-12 * width;
        for _ in 0..200 {
            let lo = -self.c[0] + inset;
            let hi = -self.c[self.c.len() - 1] - inset;
            if eval(lo).0 > 0.0 && eval(hi).0 < 0.0 {
                return Ok(newton_bisect(eval, lo, hi, tol, MAX_ITER)?.root);
            }
            inset *= 0.5;
        }
        Err(SolveError::BracketingFailure {
            lo: -self.c[0],
            hi: -self.c[self.c.len() - 1],
            f_lo: f64::NAN,
            f_hi: f64::NAN,
        })
    }
}

fn norm_inf(r: (f64, f64)) -> f64 {
    r.0.abs().max(r.1.abs())
}

/// Solves an arbitrary valid chain by damped Newton on the multiplier system.
///
/// Each iteration first tries the full Newton step and keeps it when it
/// strictly reduces the residual norm (this is the usual path, and the
/// quadratic tail). A rejected step falls back to backtracking along the
/// Newton direction with the dual potential as ascent merit, and if no step
/// length gains potential either, to one exact coordinate-maximization sweep.
/// `mu` stays positive throughout because candidates that leave the domain
/// are rejected rather than projected.
pub fn solve_general(
    spec: &ValidatedChainSpec,
    tol: f64,
) -> Result<ChainSolution, SolveError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let coeffs = spec.coefficients();
    let sys = KktSystem::new(spec);

    let mu0 = PhiFunction::new(&spec.symmetrized()).find_root(tol)?.mu;
    let mut p = MultiplierPair {
        lambda: -coeffs.c_bar,
        mu: mu0,
    };

    let sweep_tol = (0.25 * tol).max(1e-15);
    let mut r = sys.residual_unchecked(&p);
    let mut iterations = 0;
    let mut stale_sweeps = 0;
    while iterations < MAX_ITER && stale_sweeps < 2 {
        if norm_inf(r) <= tol {
            break;
        }
        iterations += 1;

        let j = sys.jacobian_unchecked(&p);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let scale = j[0][0].abs().max(j[0][1].abs()).max(j[1][1].abs());
        if !det.is_finite() || det.abs() <= f64::EPSILON * f64::EPSILON * scale * scale {
            return Err(SolveError::SingularJacobian {
                lambda: p.lambda,
                mu: p.mu,
            });
        }
        let step_lambda = (-r.0 * j[1][1] + r.1 * j[0][1]) / det;
        let step_mu = (-r.1 * j[0][0] + r.0 * j[1][0]) / det;

        // Full step on strict residual decrease.
        let full = MultiplierPair {
            lambda: p.lambda + step_lambda,
            mu: p.mu + step_mu,
        };
        if full.mu > 0.0 {
            let full_r = sys.residual_unchecked(&full);
            if norm_inf(full_r) < norm_inf(r) {
                p = full;
                r = full_r;
                stale_sweeps = 0;
                continue;
            }
        }

        // Backtrack on the dual potential. The Newton direction is an ascent
        // direction because the negated Jacobian is positive definite.
        let slope = r.0 * step_lambda + r.1 * step_mu;
        let base = sys.dual_potential(&p);
        let mut t = 0.5;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let cand = MultiplierPair {
                lambda: p.lambda + t * step_lambda,
                mu: p.mu + t * step_mu,
            };
            if cand.mu > 0.0 && cand != p {
                let gain = sys.dual_potential(&cand) - base;
                if gain > 0.0 && gain >= 1e-4 * t * slope {
                    p = cand;
                    r = sys.residual_unchecked(&p);
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if accepted {
            stale_sweeps = 0;
            continue;
        }

        // Coordinate sweep: each scalar subproblem is an exact concave line
        // maximization solved by the bracketed Newton driver. A subproblem
        // that exhausts its iterations has hit float resolution at the
        // requested tolerance, so the sweep retries coarser rather than
        // throwing its progress away.
        let before = norm_inf(r);
        let mut sub_tol = sweep_tol;
        let sweep = loop {
            let attempt = sys.maximize_over_mu(p.lambda, sub_tol).and_then(|mu| {
                let lambda = sys.maximize_over_lambda(mu, sub_tol)?;
                Ok(MultiplierPair { lambda, mu })
            });
            match attempt {
                Ok(next) => break Some(next),
                Err(SolveError::MaxIterations { .. }) if sub_tol < 1e-6 => sub_tol *= 1e3,
                Err(SolveError::MaxIterations { .. }) => break None,
                Err(other) => return Err(other),
            }
        };
        match sweep {
            Some(next) => {
                p = next;
                r = sys.residual_unchecked(&p);
                stale_sweeps = if norm_inf(r) < before { 0 } else { stale_sweeps + 1 };
            }
            None => stale_sweeps = 2,
        }
    }

    if norm_inf(r) <= tol {
        let (y, x) = sys.spans(&p);
        return Ok(ChainSolution::assemble(
            spec,
            &coeffs,
            y,
            x,
            p.lambda,
            p.mu,
            SolverReport {
                solver: SolverKind::General,
                iterations,
                converged: true,
                bracket: None,
                residual_norm: norm_inf(r),
            },
        ));
    }
    Err(SolveError::MaxIterations {
        iterations,
        residual: norm_inf(r),
    })
}
