use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: exit code 2.
    Parse(String),
    /// Well-formed input the mathematics rejects: exit code 1.
    Domain { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Parse(m) => ("parse", m.as_str()),
            CliError::Domain { kind, message } => (*kind, message.as_str()),
        };
        json!({ "error": { "kind": kind, "message": message, "exit_code": self.exit_code() } })
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain { message: m, .. } => m,
        }
    }
}

impl From<flagflux::Error> for CliError {
    fn from(e: flagflux::Error) -> Self {
        use flagflux::Error as E;
        let kind = match &e {
            E::Syntax { .. } => return CliError::Parse(e.to_string()),
            E::IndexOutOfRange { .. } => "index_out_of_range",
            E::Filtration { .. } => "filtration",
            E::Degree { .. } => "degree",
            E::EmptyPresentation => "empty_presentation",
            E::UnsupportedSeries(_) => "unsupported_series",
            E::InvalidFlag(_) => "invalid_flag",
            E::InvalidIdeal(_) => "invalid_ideal",
            E::NotAdmissible(_) => "not_admissible",
            E::Constraint(_) => "constraint",
            E::NotComplexStructure => "not_complex_structure",
            E::SizeMismatch { .. } => "size_mismatch",
        };
        CliError::Domain {
            kind,
            message: e.to_string(),
        }
    }
}
