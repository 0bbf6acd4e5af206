use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot canonicalize zero")]
    CanonicalizeZero,
    #[error("substitution would make a denominator factor vanish")]
    ZeroDenominator,
    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),
    #[error("invalid fraction {p}/{q}: {reason}")]
    InvalidFraction { p: u64, q: u64, reason: String },
    #[error("unclosable family {family} for continued fraction {cf}")]
    UnclosableFamily { family: String, cf: String },
    #[error("colors must satisfy i >= j (got i = {i}, j = {j})")]
    ColorOrder { i: u32, j: u32 },
    #[error("value still depends on s")]
    DependsOnS,
    #[error("sequence window too short: need {needed} terms, have {have}")]
    WindowTooShort { needed: usize, have: usize },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
}
