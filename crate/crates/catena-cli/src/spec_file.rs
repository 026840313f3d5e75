//! On-disk chain description and its translation into a validated instance.

use catena::{ChainSpec, ValidatedChainSpec, ValidationError};
use serde::{Deserialize, Serialize};

fn default_gravity() -> f64 {
    1.0
}

/// The JSON document accepted as input. Unknown fields are rejected so a
/// typo cannot silently change the problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpecFile {
    pub masses: Vec<f64>,
    pub lengths: Vec<f64>,
    pub span: f64,
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    #[serde(default)]
    pub beam_height: f64,
}

impl ChainSpecFile {
    pub fn from_spec(spec: &ValidatedChainSpec) -> Self {
        ChainSpecFile {
            masses: spec.masses().to_vec(),
            lengths: spec.lengths().to_vec(),
            span: spec.span(),
            gravity: spec.gravity(),
            beam_height: spec.beam_height(),
        }
    }

    pub fn into_chain_spec(self) -> ChainSpec {
        ChainSpec::new(self.masses, self.lengths, self.span)
            .with_gravity(self.gravity)
            .with_beam_height(self.beam_height)
    }
}

/// Input-side failures, each mapping to exit code 1.
#[derive(Debug)]
pub enum SpecFileError {
    /// The bytes are not well-formed JSON.
    Parse(String),
    /// Well-formed JSON that does not match the schema (missing, extra, or
    /// mistyped fields).
    Schema(String),
    /// A structurally correct document describing an impossible chain.
    Validation(ValidationError),
}

impl std::fmt::Display for SpecFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecFileError::Parse(msg) => write!(f, "malformed JSON: {msg}"),
            SpecFileError::Schema(msg) => write!(f, "schema mismatch: {msg}"),
            SpecFileError::Validation(err) => write!(f, "invalid chain: {err}"),
        }
    }
}

impl std::error::Error for SpecFileError {}

/// Parses and validates a chain description.
pub fn parse_spec(text: &[u8]) -> Result<(ChainSpecFile, ValidatedChainSpec), SpecFileError> {
    let file: ChainSpecFile = match serde_json::from_slice(text) {
        Ok(file) => file,
        Err(err) => {
            return Err(match err.classify() {
                serde_json::error::Category::Data => SpecFileError::Schema(err.to_string()),
                _ => SpecFileError::Parse(err.to_string()),
            });
        }
    };
    let spec = file
        .clone()
        .into_chain_spec()
        .validate()
        .map_err(SpecFileError::Validation)?;
    Ok((file, spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_fills_defaults() {
        let (file, spec) =
            parse_spec(br#"{"masses":[1,1],"lengths":[1,1],"span":1.5}"#).unwrap();
        assert_eq!(file.gravity, 1.0);
        assert_eq!(file.beam_height, 0.0);
        assert_eq!(spec.n(), 2);
    }

    #[test]
    fn count_mismatch_is_a_validation_error() {
        let err = parse_spec(br#"{"masses":[1],"lengths":[1,1],"span":1.5}"#).unwrap_err();
        assert!(matches!(
            err,
            SpecFileError::Validation(ValidationError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn unknown_field_is_a_schema_error() {
        let err = parse_spec(br#"{"masses":[1,1],"lengths":[1,1],"span":1.5,"color":"red"}"#)
            .unwrap_err();
        assert!(matches!(err, SpecFileError::Schema(_)));
    }

    #[test]
    fn missing_field_is_a_schema_error() {
        let err = parse_spec(br#"{"masses":[1,1],"lengths":[1,1]}"#).unwrap_err();
        assert!(matches!(err, SpecFileError::Schema(_)));
    }

    #[test]
    fn truncated_document_is_a_parse_error() {
        let err = parse_spec(br#"{"masses":[1,1"#).unwrap_err();
        assert!(matches!(err, SpecFileError::Parse(_)));
    }
}
