use std::fmt;
use std::io;

/// Process exit codes. Every command path ends in exactly one of these.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const COMPUTATION: u8 = 2;
    pub const USAGE: u8 = 64;
}

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// A checked property does not hold.
    Fail,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Status::Pass => exit::PASS,
            Status::Fail => exit::CHECK_FAILED,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed flags or configuration.
    Usage(String),
    /// Raised by the toolkit.
    Compute(curvelab::Error),
    Io(io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Violated preconditions on user input count as usage errors; anything
    /// detected while computing is a computational error.
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Compute(curvelab::Error::InvalidParameter(_) | curvelab::Error::UnknownCurve(_)) => exit::USAGE,
            CliError::Compute(_) | CliError::Io(_) => exit::COMPUTATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<curvelab::Error> for CliError {
    fn from(e: curvelab::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
