//! Vertex reconstruction, absolute potential energy, and the continuous
//! reference curve used in convergence checks.

use crate::error::SolveError;
use crate::model::ValidatedChainSpec;
use crate::root::newton_bisect;
use crate::solution::ChainSolution;

/// A planar point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Vertex coordinates of a hanging chain, from the left attachment point to
/// the right one.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub vertices: Vec<Point>,
}

impl Polyline {
    /// Distance components between the last vertex and the right attachment
    /// point `(span, beam_height)`. Reported as-is; the reconstruction never
    /// redistributes a closure defect over the links.
    pub fn endpoint_gap(&self, span: f64, beam_height: f64) -> (f64, f64) {
        let last = self.vertices.last().expect("polyline has at least one vertex");
        (last.x - span, last.y - beam_height)
    }
}

/// Accumulates the per-link spans into `n + 1` vertices starting at
/// `(0, beam_height)`.
pub fn to_polyline(sol: &ChainSolution, spec: &ValidatedChainSpec) -> Polyline {
    let mut vertices = Vec::with_capacity(sol.y.len() + 1);
    let mut p = Point { x: 0.0, y: spec.beam_height() };
    vertices.push(p);
    for (&x, &y) in sol.x.iter().zip(&sol.y) {
        p = Point { x: p.x + x, y: p.y + y };
        vertices.push(p);
    }
    Polyline { vertices }
}

/// Absolute potential energy of the chain, summed link by link from the
/// midpoint heights: `sum_i m_i g (h + y_1 + ... + y_{i-1} + y_i / 2)`.
///
/// Evaluated directly rather than through the solver's coefficient form, so
/// the two routes cross-check each other.
pub fn potential_energy(sol: &ChainSolution, spec: &ValidatedChainSpec) -> f64 {
    let g = spec.gravity();
    let mut height = spec.beam_height();
    let mut pe = 0.0;
    for (&m, &y) in spec.masses().iter().zip(&sol.y) {
        pe += m * g * (height + 0.5 * y);
        height += y;
    }
    pe
}

/// Solves `2 a sinh(d / (2a)) = L` for the parameter of the catenary with
/// span `d` and arc length `L`. The left side decreases strictly in `a`, so
/// the same bracketed Newton iteration as the chain solver applies.
pub fn catenary_parameter(span: f64, total_length: f64) -> Result<f64, SolveError> {
    if span <= 0.0 || span.is_nan() || total_length <= span || total_length.is_nan() {
        return Err(SolveError::NoSolution { span, total_length });
    }
    // arc_length(a) - L, with derivative 2 sinh(u) - 2u cosh(u), u = d/(2a).
    let eval = |a: f64| {
        let u = span / (2.0 * a);
        (2.0 * a * u.sinh() - total_length, 2.0 * (u.sinh() - u * u.cosh()))
    };
    let mut lo = 0.5 * span;
    let mut hi = 0.5 * span;
    while eval(lo).0 <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(SolveError::NoSolution { span, total_length });
        }
    }
    while eval(hi).0 >= 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(SolveError::NoSolution { span, total_length });
        }
    }
    Ok(newton_bisect(eval, lo, hi, 1e-13 * total_length, 200)?.root)
}

/// Height of the catenary through `(0, 0)` and `(span, 0)` at abscissa `t`.
pub fn catenary_height(parameter: f64, span: f64, t: f64) -> f64 {
    let a = parameter;
    a * ((t - 0.5 * span) / a).cosh() - a * (0.5 * span / a).cosh()
}

/// Samples the catenary with span `d` and arc length `L` on a uniform grid of
/// `samples` points. Endpoints sit at height zero and the curve sags below.
pub fn catenary_reference(
    span: f64,
    total_length: f64,
    samples: usize,
) -> Result<Polyline, SolveError> {
    assert!(samples >= 2, "need at least the two endpoints");
    let a = catenary_parameter(span, total_length)?;
    let vertices = (0..samples)
        .map(|k| {
            let t = span * k as f64 / (samples - 1) as f64;
            Point { x: t, y: catenary_height(a, span, t) }
        })
        .collect();
    Ok(Polyline { vertices })
}
