//! Problem instances: per-link masses and lengths, validation of the model
//! assumptions, and the energy coefficients derived from the masses.

use crate::error::ValidationError;

/// Default relative tolerance when comparing mirrored links.
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-12;

/// A discrete hanging chain: `n` rigid links suspended from a level beam,
/// with the first and last link attached a distance `span` apart.
///
/// Gravity and beam height are carried along for potential-energy reporting
/// but do not influence the equilibrium shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub masses: Vec<f64>,
    pub lengths: Vec<f64>,
    pub span: f64,
    pub gravity: f64,
    pub beam_height: f64,
}

impl ChainSpec {
    pub fn new(masses: Vec<f64>, lengths: Vec<f64>, span: f64) -> Self {
        Self {
            masses,
            lengths,
            span,
            gravity: 1.0,
            beam_height: 0.0,
        }
    }

    /// A chain of `n` identical links.
    pub fn uniform(n: usize, mass: f64, length: f64, span: f64) -> Self {
        Self::new(vec![mass; n], vec![length; n], span)
    }

    pub fn with_gravity(mut self, gravity: f64) -> Self {
        self.gravity = gravity;
        self
    }

    pub fn with_beam_height(mut self, beam_height: f64) -> Self {
        self.beam_height = beam_height;
        self
    }

    /// Checks every model assumption: at least two links, matching mass and
    /// length counts, strictly positive entries, and a span strictly between
    /// the longest link and the total chain length.
    pub fn validate(self) -> Result<ValidatedChainSpec, ValidationError> {
        let n = self.masses.len();
        if self.masses.len() != self.lengths.len() {
            return Err(ValidationError::LengthMismatch {
                masses: self.masses.len(),
                lengths: self.lengths.len(),
            });
        }
        if n < 2 {
            return Err(ValidationError::TooFewLinks { n });
        }
        for (i, &m) in self.masses.iter().enumerate() {
            if m <= 0.0 || !m.is_finite() {
                return Err(ValidationError::NonPositiveMass { index: i + 1, value: m });
            }
        }
        for (i, &l) in self.lengths.iter().enumerate() {
            if l <= 0.0 || !l.is_finite() {
                return Err(ValidationError::NonPositiveLength { index: i + 1, value: l });
            }
        }
        let max_length = self.lengths.iter().cloned().fold(f64::MIN, f64::max);
        let total_length: f64 = self.lengths.iter().sum();
        // Assumption bounds are open on both ends; equality is rejected.
        if self.span <= max_length || self.span.is_nan() {
            return Err(ValidationError::SpanTooShort { span: self.span, max_length });
        }
        if self.span >= total_length {
            return Err(ValidationError::SpanTooLong { span: self.span, total_length });
        }
        Ok(ValidatedChainSpec { spec: self })
    }
}

/// A [`ChainSpec`] that passed [`ChainSpec::validate`]. All solvers take this
/// type, so the assumptions hold whenever a solve starts.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedChainSpec {
    spec: ChainSpec,
}

impl ValidatedChainSpec {
    pub fn n(&self) -> usize {
        self.spec.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.spec.masses
    }

    pub fn lengths(&self) -> &[f64] {
        &self.spec.lengths
    }

    pub fn span(&self) -> f64 {
        self.spec.span
    }

    pub fn gravity(&self) -> f64 {
        self.spec.gravity
    }

    pub fn beam_height(&self) -> f64 {
        self.spec.beam_height
    }

    pub fn total_length(&self) -> f64 {
        self.spec.lengths.iter().sum()
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    /// The coefficient of each vertical span in the potential energy.
    pub fn coefficients(&self) -> Coefficients {
        // Single reverse pass: c_i = m_i/2 + sum of the masses hanging after
        // link i, written as suffix_i - m_i/2 so consecutive coefficients
        // share the same partial sums.
        let masses = self.masses();
        let n = masses.len();
        let mut c = vec![0.0; n];
        let mut suffix = 0.0;
        for i in (0..n).rev() {
            suffix += masses[i];
            c[i] = suffix - 0.5 * masses[i];
        }
        let total_mass = suffix;
        Coefficients {
            c,
            c_bar: 0.5 * total_mass,
            total_mass,
        }
    }

    /// Compares mirrored masses and lengths with the given relative tolerance.
    pub fn check_symmetry(&self, tolerance: f64) -> SymmetryReport {
        assert!(tolerance >= 0.0, "symmetry tolerance must be nonnegative");
        let n = self.n();
        let close = |a: f64, b: f64| (a - b).abs() <= tolerance * a.abs().max(b.abs());
        for i in 0..n / 2 {
            let j = n - 1 - i;
            if !close(self.masses()[i], self.masses()[j])
                || !close(self.lengths()[i], self.lengths()[j])
            {
                return SymmetryReport {
                    is_symmetric: false,
                    first_violation: Some((i + 1, j + 1)),
                };
            }
        }
        SymmetryReport {
            is_symmetric: true,
            first_violation: None,
        }
    }

    /// Mirror-averaged copy of this chain: masses and lengths are replaced by
    /// `(v_i + v_{n+1-i}) / 2`. The result is symmetric by construction and
    /// equals the input when the input is already symmetric.
    pub fn symmetrized(&self) -> ValidatedChainSpec {
        let mirror_avg = |v: &[f64]| -> Vec<f64> {
            let n = v.len();
            (0..n).map(|i| 0.5 * (v[i] + v[n - 1 - i])).collect()
        };
        let spec = ChainSpec {
            masses: mirror_avg(self.masses()),
            lengths: mirror_avg(self.lengths()),
            span: self.span(),
            gravity: self.gravity(),
            beam_height: self.beam_height(),
        };
        // Averaging preserves positivity, keeps the total length, and cannot
        // increase the longest link, so the assumptions still hold.
        spec.validate().expect("mirror averaging preserves validity")
    }
}

/// The vector `c` weighting each vertical span in the potential energy,
/// together with half the total mass `c_bar`.
///
/// `c` is strictly decreasing for any valid chain, and for symmetric chains
/// `c - c_bar` is antisymmetric under index reversal.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub c: Vec<f64>,
    pub c_bar: f64,
    pub total_mass: f64,
}

/// Result of a mirrored-link comparison. Indices in `first_violation` are
/// 1-based link numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryReport {
    pub is_symmetric: bool,
    pub first_violation: Option<(usize, usize)>,
}
