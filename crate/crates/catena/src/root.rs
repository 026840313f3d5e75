//! Bracketed Newton iteration for strictly decreasing scalar functions.
//!
//! Both the chain multiplier equation and the catenary parameter equation are
//! strictly decreasing in their unknown, so one safeguarded driver serves
//! them: Newton steps are taken while they stay inside a sign-changing
//! bracket, and bisection takes over whenever a step would leave it.

use crate::error::SolveError;

#[derive(Debug, Clone, Copy)]
pub(crate) struct BracketedRoot {
    pub root: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    pub residual: f64,
}

/// Finds the root of a strictly decreasing `f` inside `[lo, hi]`, where
/// `f(lo) > 0 > f(hi)` must already hold. `eval` returns `(f, f')`.
pub(crate) fn newton_bisect<F>(
    mut eval: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<BracketedRoot, SolveError>
where
    F: FnMut(f64) -> (f64, f64),
{
    assert!(tol > 0.0, "tolerance must be positive");
    let (f_lo, _) = eval(lo);
    let (f_hi, _) = eval(hi);
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(SolveError::BracketingFailure { lo, hi, f_lo, f_hi });
    }

    let mut x = 0.5 * (lo + hi);
    for iterations in 1..=max_iter {
        let (f, df) = eval(x);
        if f.abs() <= tol {
            return Ok(BracketedRoot {
                root: x,
                iterations,
                bracket: (lo, hi),
                residual: f,
            });
        }
        // Shrink the bracket around the root before stepping.
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        x = if df < 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    let (f, _) = eval(x);
    if f.abs() <= tol {
        return Ok(BracketedRoot {
            root: x,
            iterations: max_iter,
            bracket: (lo, hi),
            residual: f,
        });
    }
    Err(SolveError::MaxIterations {
        iterations: max_iter,
        residual: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_root_of_decreasing_line() {
        let res = newton_bisect(|x| (1.0 - x, -1.0), 0.0, 5.0, 1e-14, 50).unwrap();
        assert!((res.root - 1.0).abs() < 1e-12);
        assert!(res.iterations <= 3);
    }

    #[test]
    fn bisection_rescues_bad_newton_steps() {
        // Derivative deliberately wrong by a factor 100: Newton overshoots,
        // the bracket still pins the root.
        let res = newton_bisect(|x| (2.0 - x, -0.01), 0.0, 10.0, 1e-12, 200).unwrap();
        assert!((res.root - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        let err = newton_bisect(|x| (x + 1.0, 1.0), 0.0, 1.0, 1e-12, 50).unwrap_err();
        assert!(matches!(err, SolveError::BracketingFailure { .. }));
    }
}
