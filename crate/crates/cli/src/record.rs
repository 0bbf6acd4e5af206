use std::fmt;
use std::str::FromStr;

use qhomfly::skein::specialize_two_component;
use qhomfly::{Error, QScalar, Substitution, TwoBridgeLink};
use serde::{Deserialize, Serialize};

/// One evaluated value with the metadata needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub cf: Vec<u32>,
    pub fraction: String,
    pub color: u32,
    pub start: String,
    pub normalized: bool,
    pub components: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specialization: Option<String>,
    pub value: QScalar,
}

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnclosableFamily { .. } => 3,
            Error::Budget(_) => 4,
            Error::WindowTooShort { .. } => 5,
            _ => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    SOne,
    AToQPow(i32),
    /// Second component colored by `i` columns.
    OtherColor(u32),
}

impl Specialization {
    pub fn apply(self, value: &QScalar, link: &TwoBridgeLink, j: u32) -> Result<QScalar, CliError> {
        match self {
            Specialization::SOne => Ok(value.substitute(&Substitution::s_to_one())?),
            Specialization::AToQPow(m) => Ok(value.substitute(&Substitution::a_to_q_pow(m))?),
            Specialization::OtherColor(i) => {
                if link.is_knot() {
                    return Err(CliError::usage("i=N needs a two-component link"));
                }
                Ok(specialize_two_component(value, i, j)?)
            }
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::SOne => f.write_str("s=1"),
            Specialization::AToQPow(m) => write!(f, "a=q^{m}"),
            Specialization::OtherColor(i) => write!(f, "i={i}"),
        }
    }
}

impl FromStr for Specialization {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::usage(format!("bad specialization {s:?}; expected s=1, a=q^N or i=N"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (var, rhs) = compact.split_once('=').ok_or_else(bad)?;
        match var {
            "s" if rhs == "1" => Ok(Specialization::SOne),
            "a" => {
                let exp = match rhs.strip_prefix('q').ok_or_else(bad)? {
                    "" => 1,
                    e => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
                };
                Ok(Specialization::AToQPow(exp))
            }
            "i" => Ok(Specialization::OtherColor(rhs.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}
