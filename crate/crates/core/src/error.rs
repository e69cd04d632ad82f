use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to parse scenario: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid scenario: {0}")]
    Validation(#[from] ValidationReport),

    #[error("{operation} requires a {expected} policy, got {found}")]
    WrongPolicy {
        operation: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error(
        "no closed form for self-gated reliance under {dependency} dependency; \
         use the simulator (estimate_accuracy) for this combination"
    )]
    NoClosedForm { dependency: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unrecognized parameter path `{0}`")]
    UnknownParameter(String),

    #[error("parameter path `{path}` is not applicable to this scenario ({reason})")]
    ParameterNotApplicable { path: String, reason: String },

    #[error("swept value {value} for `{path}` gives an invalid scenario: {report}")]
    InvalidSweepValue {
        path: String,
        value: f64,
        report: ValidationReport,
    },
}
