//! Solver for symmetric chains.
//!
//! For mirrored masses and lengths the optimality system collapses to one
//! scalar equation: the span multiplier `mu` is the unique positive root of a
//! strictly decreasing, convex function, and every vertical span follows in
//! closed form once `mu` is known.

use crate::error::SolveError;
use crate::model::{ValidatedChainSpec, DEFAULT_SYMMETRY_TOL};
use crate::root::newton_bisect;
use crate::solution::{ChainSolution, SolverKind, SolverReport};

/// Default tolerance on the scalar residual.
pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 200;

/// The scalar feasibility residual `phi(mu) = d - sum_i l_i * mu / sqrt(delta_i^2 + mu^2)`,
/// where `delta_i = c_i - c_bar`.
///
/// `phi` is strictly decreasing and convex on `(0, inf)`; its unique positive
/// root is the span multiplier of the optimal chain.
#[derive(Debug, Clone)]
pub struct PhiFunction {
    lengths: Vec<f64>,
    deltas: Vec<f64>,
    span: f64,
}

/// Root of [`PhiFunction`] together with iteration diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub mu: f64,
    pub iterations: usize,
    /// Final safeguard interval; `phi` is positive at the low end and
    /// negative at the high end.
    pub bracket: (f64, f64),
    pub residual: f64,
}

impl PhiFunction {
    /// Builds the residual function for a chain.
    ///
    /// Mirrored quantities are averaged first: the coefficient offsets become
    /// exactly antisymmetric and the lengths exactly symmetric, which removes
    /// the summation rounding that would otherwise leak into the mirrored
    /// pair cancellations. For an exactly symmetric chain this is the
    /// identity.
    pub fn new(spec: &ValidatedChainSpec) -> Self {
        let coeffs = spec.coefficients();
        let n = spec.n();
        let raw: Vec<f64> = coeffs.c.iter().map(|c| c - coeffs.c_bar).collect();
        let deltas: Vec<f64> = (0..n).map(|i| 0.5 * (raw[i] - raw[n - 1 - i])).collect();
        let lengths: Vec<f64> = (0..n)
            .map(|i| 0.5 * (spec.lengths()[i] + spec.lengths()[n - 1 - i]))
            .collect();
        PhiFunction {
            lengths,
            deltas,
            span: spec.span(),
        }
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    /// `phi(mu)` for `mu > 0`.
    pub fn eval(&self, mu: f64) -> Result<f64, SolveError> {
        self.require_positive(mu)?;
        Ok(self.eval_unchecked(mu))
    }

    /// `phi'(mu) = -sum_i l_i * delta_i^2 / (delta_i^2 + mu^2)^(3/2)` for `mu > 0`.
    ///
    /// Always nonpositive; strictly negative because at least one offset is
    /// nonzero for any valid chain.
    pub fn derivative(&self, mu: f64) -> Result<f64, SolveError> {
        self.require_positive(mu)?;
        Ok(self.derivative_unchecked(mu))
    }

    fn require_positive(&self, mu: f64) -> Result<(), SolveError> {
        if mu <= 0.0 || mu.is_nan() {
            return Err(SolveError::NonPositiveMu { mu });
        }
        Ok(())
    }

    fn eval_unchecked(&self, mu: f64) -> f64 {
        let hang: f64 = self
            .lengths
            .iter()
            .zip(&self.deltas)
            .map(|(&l, &delta)| {
                if delta == 0.0 {
                    // A balanced link is horizontal for every mu; writing the
                    // term as l avoids 0/0 at tiny mu.
                    l
                } else {
                    l * mu / (delta * delta + mu * mu).sqrt()
                }
            })
            .sum();
        self.span - hang
    }

    fn derivative_unchecked(&self, mu: f64) -> f64 {
        -self
            .lengths
            .iter()
            .zip(&self.deltas)
            .map(|(&l, &delta)| {
                let d2 = delta * delta;
                let q = (d2 + mu * mu).sqrt();
                l * d2 / (q * q * q)
            })
            .sum::<f64>()
    }

    /// The interval the root search starts from: `phi` is positive at the low
    /// end by the small-`mu` limit, and the high end is doubled until `phi`
    /// turns negative.
    pub fn initial_bracket(&self) -> Result<(f64, f64), SolveError> {
        let scale = self.deltas.iter().fold(0.0f64, |a, d| a.max(d.abs())) + 1.0;
        let lo = f64::EPSILON * scale;
        let mut hi = scale;
        for _ in 0..200 {
            if self.eval_unchecked(hi) < 0.0 {
                return Ok((lo, hi));
            }
            hi *= 2.0;
        }
        Err(SolveError::BracketingFailure {
            lo,
            hi,
            f_lo: self.eval_unchecked(lo),
            f_hi: self.eval_unchecked(hi),
        })
    }

    /// Finds the unique positive root of `phi` with bracketed Newton.
    pub fn find_root(&self, tol: f64) -> Result<RootResult, SolveError> {
        let (lo, hi) = self.initial_bracket()?;
        let res = newton_bisect(
            |mu| (self.eval_unchecked(mu), self.derivative_unchecked(mu)),
            lo,
            hi,
            tol,
            MAX_ITER,
        )?;
        Ok(RootResult {
            mu: res.root,
            iterations: res.iterations,
            bracket: res.bracket,
            residual: res.residual,
        })
    }
}

/// Solves a symmetric chain through the scalar reduction.
///
/// Returns [`SolveError::NotSymmetric`] when mirrored links disagree beyond
/// the default tolerance. The multiplier of the level constraint is
/// `-c_bar` (minus half the total mass) for both parities.
pub fn solve_symmetric(
    spec: &ValidatedChainSpec,
    tol: f64,
) -> Result<ChainSolution, SolveError> {
    let report = spec.check_symmetry(DEFAULT_SYMMETRY_TOL);
    if !report.is_symmetric {
        return Err(SolveError::NotSymmetric {
            violation: report.first_violation.unwrap(),
        });
    }
    let coeffs = spec.coefficients();
    let phi = PhiFunction::new(spec);
    let root = phi.find_root(tol)?;
    let mu = root.mu;

    let n = spec.n();
    let mut y = vec![0.0; n];
    let mut x = vec![0.0; n];
    for i in 0..n {
        let delta = phi.deltas[i];
        let l = phi.lengths[i];
        if delta == 0.0 {
            y[i] = 0.0;
            x[i] = l;
        } else {
            let q = (delta * delta + mu * mu).sqrt();
            y[i] = -l * delta / q;
            x[i] = l * mu / q;
        }
    }

    let lambda = -coeffs.c_bar;
    Ok(ChainSolution::assemble(
        spec,
        &coeffs,
        y,
        x,
        lambda,
        mu,
        SolverReport {
            solver: SolverKind::Symmetric,
            iterations: root.iterations,
            converged: true,
            bracket: Some(root.bracket),
            residual_norm: root.residual.abs(),
        },
    ))
}
