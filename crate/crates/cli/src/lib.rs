//! Command-line front end for `morita-core`: reads JSON instance documents,
//! runs validations, compositions, coherence suites and Morita
//! certifications, and emits deterministic JSON reports.

pub mod commands;
pub mod document;
pub mod report;

use serde_json::{json, Value};

pub use commands::{run, Calculus, Command, CommandOutput, Options};
pub use document::{Instance, InstanceDocument, Kind};
pub use report::{Report, StageReport, Status};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{name}: {message}")]
    Schema { name: String, message: String },
    #[error("{name}: {error}")]
    Invalid { name: String, error: morita_core::Error },
    #[error("{0}")]
    Usage(String),
}

impl From<morita_core::Error> for CliError {
    fn from(error: morita_core::Error) -> Self {
        CliError::Invalid {
            name: String::new(),
            error,
        }
    }
}

impl CliError {
    /// Fills in the document name where it is still blank.
    pub fn named(self, doc: &str) -> Self {
        match self {
            CliError::Schema { name, message } if name.is_empty() => CliError::Schema {
                name: doc.to_string(),
                message,
            },
            CliError::Invalid { name, error } if name.is_empty() => CliError::Invalid {
                name: doc.to_string(),
                error,
            },
            other => other,
        }
    }

    /// Machine-readable description for report witnesses.
    pub fn witness(&self) -> Value {
        match self {
            CliError::Parse { line, column, message, .. } => {
                json!({"error": "parse", "line": line, "column": column, "message": message})
            }
            CliError::Io { message, .. } => json!({"error": "io", "message": message}),
            CliError::Schema { message, .. } => json!({"error": "schema", "message": message}),
            CliError::Invalid { error, .. } => {
                let mut w = json!({"error": "invalid", "message": error.to_string()});
                if let Some(at) = core_witness(error) {
                    w["witness"] = at;
                }
                w
            }
            CliError::Usage(message) => json!({"error": "usage", "message": message}),
        }
    }
}

/// The offending indices carried by a library error, when it has any.
pub fn core_witness(e: &morita_core::Error) -> Option<Value> {
    use morita_core::Error as E;
    Some(match e {
        E::AssociativityViolation(i, j, k) => json!({"law": "associativity", "basis": [i, j, k]}),
        E::UnitViolation(i) => json!({"law": "unit", "basis": [i]}),
        E::ActionViolation { law, witness } => json!({"law": law, "at": witness}),
        E::NotIntertwiner(side, i) => json!({"law": "intertwines", "side": side, "basis": [i]}),
        E::NotAHomomorphism(w) => json!({"law": "homomorphism", "at": w}),
        E::Degenerate(row) | E::DegenerateResult(row) => json!({"law": "nondegenerate", "row": row}),
        E::GroupoidAxiom { axiom, witness } => json!({"law": axiom, "at": witness}),
        E::NotAFunctor { law, witness } => json!({"law": law, "at": witness}),
        E::DimensionMismatch { expected, found } => json!({"expected": expected, "found": found}),
        _ => return None,
    })
}
