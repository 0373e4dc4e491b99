use std::fmt;

use spectral_kcluster::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Usage,
    Data,
    Numerical,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: Kind::Usage,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            kind: Kind::Data,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            Kind::Usage => 1,
            Kind::Data => 2,
            Kind::Numerical => 3,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            Kind::Usage => "usage",
            Kind::Data => "data",
            Kind::Numerical => "numerical",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Keep the whole message on one line.
        let flat = self.message.replace('\n', " ");
        write!(f, "error[{}]: {}", self.tag(), flat)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::NonConvergence { .. } => Kind::Numerical,
            Error::InvalidParameter(_) | Error::TooLarge { .. } => Kind::Usage,
            _ => Kind::Data,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::data(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
