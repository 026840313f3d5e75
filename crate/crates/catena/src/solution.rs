//! Solved chain states shared by every solver.

use crate::model::{Coefficients, ValidatedChainSpec};

/// Which solver produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Symmetric,
    General,
    Oracle,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Symmetric => "symmetric",
            SolverKind::General => "general",
            SolverKind::Oracle => "oracle",
        }
    }
}

/// First-order optimality measures of a solution, evaluated from the stored
/// `y` and `x` vectors. Signed values are kept so that reporting shows the
/// direction of any defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KktResiduals {
    /// `max_i |c_i + lambda + mu * y_i / x_i|`.
    pub stationarity: f64,
    /// `sum_i y_i` (the two attachment points are level when this is zero).
    pub height_gap: f64,
    /// `d - sum_i x_i`.
    pub span_gap: f64,
}

/// Iteration diagnostics attached to a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub solver: SolverKind,
    pub iterations: usize,
    pub converged: bool,
    /// Final safeguard bracket of the scalar root search, when one was used.
    pub bracket: Option<(f64, f64)>,
    /// Residual norm the solver itself converged on.
    pub residual_norm: f64,
}

/// Equilibrium shape of a chain: per-link horizontal and vertical spans, the
/// KKT multipliers, the centered objective value, and optimality residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSolution {
    /// Vertical span of each link (negative when the link descends).
    pub y: Vec<f64>,
    /// Horizontal span of each link, strictly positive.
    pub x: Vec<f64>,
    /// Multiplier of the level-attachment equality constraint.
    pub lambda: f64,
    /// Multiplier of the span constraint, positive for any hanging chain.
    pub mu: f64,
    /// `sum_i c_i y_i`, the potential energy with the constant term and the
    /// gravity factor removed.
    pub objective: f64,
    pub residuals: KktResiduals,
    pub report: SolverReport,
}

impl ChainSolution {
    /// Builds a solution record from raw spans and multipliers, computing the
    /// objective and the KKT residuals from the stored vectors.
    pub(crate) fn assemble(
        spec: &ValidatedChainSpec,
        coeffs: &Coefficients,
        y: Vec<f64>,
        x: Vec<f64>,
        lambda: f64,
        mu: f64,
        report: SolverReport,
    ) -> Self {
        debug_assert_eq!(y.len(), spec.n());
        debug_assert_eq!(x.len(), spec.n());
        let objective: f64 = coeffs.c.iter().zip(&y).map(|(c, y)| c * y).sum();
        let stationarity = coeffs
            .c
            .iter()
            .zip(y.iter().zip(&x))
            .map(|(c, (y, x))| (c + lambda + mu * y / x).abs())
            .fold(0.0, f64::max);
        let height_gap: f64 = y.iter().sum();
        let span_gap = spec.span() - x.iter().sum::<f64>();
        ChainSolution {
            y,
            x,
            lambda,
            mu,
            objective,
            residuals: KktResiduals {
                stationarity,
                height_gap,
                span_gap,
            },
            report,
        }
    }
}
