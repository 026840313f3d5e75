//! Equilibrium shapes of discrete hanging chains.
//!
//! A chain of `n` rigid links with arbitrary positive masses and lengths
//! hangs from two points of a level beam a distance `d` apart. The shape it
//! settles into minimizes potential energy subject to the attachment
//! constraints, and that minimization is convex once the span constraint is
//! relaxed to an inequality (the relaxation is always tight). This crate
//! solves the problem three ways:
//!
//! * [`solve_symmetric`] — for chains with mirrored masses and lengths, the
//!   optimality conditions collapse to one strictly decreasing convex scalar
//!   equation in the span multiplier; a bracketed Newton iteration finds its
//!   root and the link positions follow in closed form.
//! * [`solve_general`] — for arbitrary chains, a damped Newton iteration on
//!   the two-multiplier system obtained by eliminating the link variables.
//! * [`oracle_minimize`] — an independent multi-start augmented-Lagrangian
//!   minimizer over link angles, used to cross-validate the other two and as
//!   a fallback.
//!
//! ```
//! use catena::{ChainSpec, solve_symmetric};
//!
//! let spec = ChainSpec::uniform(3, 1.0, 1.0, 2.0).validate()?;
//! let sol = solve_symmetric(&spec, 1e-12)?;
//! assert!((sol.y[0] + 3f64.sqrt() / 2.0).abs() < 1e-9);
//! assert_eq!(sol.y[1], 0.0); // odd chains keep the middle link level
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! With the default `parallel` feature the oracle fans its restarts out on
//! rayon; disabling the feature keeps every code path sequential and returns
//! bit-identical results.

mod error;
mod general;
mod geometry;
mod model;
mod oracle;
mod root;
mod solution;
mod symmetric;

pub use error::{SolveError, ValidationError};
pub use general::{solve_general, KktSystem, MultiplierPair};
pub use geometry::{
    catenary_height, catenary_parameter, catenary_reference, potential_energy, to_polyline,
    Point, Polyline,
};
pub use model::{
    ChainSpec, Coefficients, SymmetryReport, ValidatedChainSpec, DEFAULT_SYMMETRY_TOL,
};
pub use oracle::{objective, oracle_minimize, AngleState, OracleOptions, SpanConstraint};
pub use solution::{ChainSolution, KktResiduals, SolverKind, SolverReport};
pub use symmetric::{solve_symmetric, PhiFunction, RootResult, DEFAULT_TOL};
