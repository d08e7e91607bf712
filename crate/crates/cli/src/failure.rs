//! Errors surfaced by the commands and their exit codes.

use std::fmt;

use foliation_core::classify::ClassifyError;
use foliation_core::determine::DetermineError;
use foliation_core::foliation::FoliationError;
use foliation_core::formfile::FormFileError;
use foliation_core::groebner::GroebnerError;
use foliation_core::poly::ParseError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_NOT_INTEGRABLE: u8 = 2;
pub const EXIT_EXHAUSTED: u8 = 3;

#[derive(Debug, Clone)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(EXIT_INVALID, message)
    }

    /// Prefix the message, typically with the input path.
    pub fn context(self, prefix: &str) -> Self {
        Self { message: format!("{prefix}: {}", self.message), ..self }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn groebner_code(e: &GroebnerError) -> u8 {
    match e {
        GroebnerError::ResourceExhausted { .. } => EXIT_EXHAUSTED,
        _ => EXIT_INVALID,
    }
}

fn foliation_code(e: &FoliationError) -> u8 {
    match e {
        FoliationError::NotIntegrable => EXIT_NOT_INTEGRABLE,
        FoliationError::Groebner(g) => groebner_code(g),
        _ => EXIT_INVALID,
    }
}

fn classify_code(e: &ClassifyError) -> u8 {
    match e {
        ClassifyError::Foliation(f) => foliation_code(f),
        ClassifyError::Groebner(g) => groebner_code(g),
        _ => EXIT_INVALID,
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        Self::new(groebner_code(&e), e.to_string())
    }
}

impl From<FoliationError> for Failure {
    fn from(e: FoliationError) -> Self {
        Self::new(foliation_code(&e), e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Self::new(classify_code(&e), e.to_string())
    }
}

impl From<DetermineError> for Failure {
    fn from(e: DetermineError) -> Self {
        let code = match &e {
            DetermineError::NotIntegrable => EXIT_NOT_INTEGRABLE,
            DetermineError::Classify(c) => classify_code(c),
            DetermineError::Foliation(f) => foliation_code(f),
            DetermineError::Groebner(g) => groebner_code(g),
            _ => EXIT_INVALID,
        };
        Self::new(code, e.to_string())
    }
}

impl From<FormFileError> for Failure {
    fn from(e: FormFileError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Self::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::invalid(e.to_string())
    }
}
