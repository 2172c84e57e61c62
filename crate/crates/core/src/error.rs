use std::fmt;

use crate::rules::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure an engine or the rule-set loader can report.
///
/// [`Error::code`] gives the stable machine-readable identifier carried over
/// the wire; `Display` gives the human message, which for the pension and
/// loan input errors is the exact notifier text shown to users.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed rule-set document: {0}")]
    Parse(String),

    #[error("invalid rule-set: {0}")]
    Validation(Violation),

    #[error("{message}")]
    InvalidInput { field: String, message: String },

    #[error("Please Enter >= {} Years qualifying Service", Years(*.minimum))]
    ServiceTooShort { qualifying_service: f64, minimum: f64 },

    #[error("{message}")]
    NotANumber {
        field: String,
        message: String,
        title: String,
    },

    #[error("zakat declaration has no categories")]
    NoCategories,

    #[error("no coded responses to summarize")]
    EmptyInput,
}

impl Error {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Notifier-style error for a field whose text is not a number.
    pub fn not_a_number(field: impl Into<String>, label: &str) -> Self {
        Error::NotANumber {
            field: field.into(),
            message: format!("Enter a number for {label}"),
            title: format!("{} Entry error", capitalize(label)),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::Validation(_) => "validation_error",
            Error::InvalidInput { .. } => "invalid_input",
            Error::ServiceTooShort { .. } => "service_too_short",
            Error::NotANumber { .. } => "not_a_number",
            Error::NoCategories => "no_categories",
            Error::EmptyInput => "empty_input",
        }
    }

    /// Path of the offending input, when one field is to blame.
    pub fn field(&self) -> Option<&str> {
        match self {
            Error::Validation(v) => Some(&v.field),
            Error::InvalidInput { field, .. } | Error::NotANumber { field, .. } => Some(field),
            Error::ServiceTooShort { .. } => Some("qualifying_service"),
            Error::NoCategories => Some("declaration"),
            Error::EmptyInput => Some("counts"),
            Error::Parse(_) => None,
        }
    }

    /// Dialog title for errors that have one.
    pub fn title(&self) -> Option<&str> {
        match self {
            Error::ServiceTooShort { .. } => Some("Incorrect value"),
            Error::NotANumber { title, .. } => Some(title),
            _ => None,
        }
    }
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Whole years print without a fractional part.
struct Years(f64);

impl fmt::Display for Years {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.fract() == 0.0 && self.0.abs() < 1e15 {
            write!(f, "{}", self.0 as i64)
        } else {
            write!(f, "{}", self.0)
        }
    }
}
