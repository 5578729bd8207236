use std::fmt;
use std::process::ExitCode;

use lcpq_core::{Answer, Error};

pub const YES: u8 = 0;
pub const NO: u8 = 1;
pub const UNDECIDED: u8 = 2;
pub const USAGE: u8 = 64;
pub const CAP: u8 = 65;
pub const IO: u8 = 66;
pub const INTERNAL: u8 = 70;

pub fn for_answer(a: Answer) -> u8 {
    match a {
        Answer::Yes => YES,
        Answer::No => NO,
        Answer::Undecided => UNDECIDED,
    }
}

/// A failure that ends the command with a specific exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn io(path: &str, e: std::io::Error) -> Self {
        Failure::new(IO, format!("{path}: {e}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NonSquare(_)
            | Error::MalformedRational(_)
            | Error::ZeroDenominator(_)
            | Error::Malformed(_)
            | Error::DimensionMismatch { .. }
            | Error::InfeasibleConstraints(_)
            | Error::NotSymmetric
            | Error::Domain(_)
            | Error::AlgebraMismatch(..) => USAGE,
            Error::CapExceeded { .. } => CAP,
            Error::NotR0 => NO,
            _ => INTERNAL,
        };
        let message = match e {
            Error::NotR0 => format!("NotR0: {e}"),
            e => e.to_string(),
        };
        Failure::new(code, message)
    }
}

pub type CliResult<T = u8> = Result<T, Failure>;
