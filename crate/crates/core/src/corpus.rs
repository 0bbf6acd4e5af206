//! Cross-checks of the engine over the corpus of small 2-bridge links.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::oracle::{homfly, jones, plat_diagram, ENGINE_CONVENTION, ENGINE_STYLE};
use crate::ring::{QScalar, Substitution};
use crate::skein::{consistent_starts, eval_nested_sum, natural_start};
use crate::{eval_reduced, Error, Normalize, TwoBridgeLink};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `j = 1` against the HOMFLY skein recursion.
    Homfly,
    /// `j = 1`, `a = q^2` against the Kauffman bracket.
    Jones,
    /// Amphichiral knots are invariant under `(a, q) -> (a^-1, q^-1)`, `j = 1..=3`.
    Amphichiral,
    /// Knots at `s = 1` have no denominator, `j <= 4`.
    Integrality,
    /// Knots at `a = q^j`, `s = 1` give a signed monomial, `j = 1..=3`.
    Determinant,
    /// The state-vector engine equals the explicit multi-sum, `j <= 3`.
    NestedSum,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Homfly,
        Check::Jones,
        Check::Amphichiral,
        Check::Integrality,
        Check::Determinant,
        Check::NestedSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Homfly => "homfly",
            Check::Jones => "jones",
            Check::Amphichiral => "amphichiral",
            Check::Integrality => "integrality",
            Check::Determinant => "determinant",
            Check::NestedSum => "nested-sum",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// One failed case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub cf: String,
    pub color: u32,
    pub detail: String,
}

/// Outcome of one check over a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The 2-bridge knot `S(p, q)` is amphichiral iff `q^2 = -1 mod p`.
pub fn is_amphichiral(link: &TwoBridgeLink) -> bool {
    (link.q as u128 * link.q as u128 + 1).is_multiple_of(link.p as u128)
}

/// Runs `check` on every link of `corpus`, in parallel.
pub fn run_check(check: Check, corpus: &[TwoBridgeLink]) -> CheckReport {
    let per_link: Vec<(usize, Vec<Failure>)> =
        corpus.par_iter().map(|l| check_link(check, l)).collect();
    let cases = per_link.iter().map(|x| x.0).sum();
    let failures = per_link.into_iter().flat_map(|x| x.1).collect();
    CheckReport { check, cases, failures }
}

fn check_link(check: Check, link: &TwoBridgeLink) -> (usize, Vec<Failure>) {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut record = |color: u32, outcome: Result<Option<String>, Error>| {
        cases += 1;
        let detail = match outcome {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => e.to_string(),
        };
        failures.push(Failure { check, cf: link.cf.to_string(), color, detail });
    };
    let start = natural_start(link);
    let knot = link.is_knot();
    match check {
        Check::Homfly => record(1, homfly_case(link, start)),
        Check::Jones => record(1, jones_case(link, start)),
        Check::Amphichiral if knot && is_amphichiral(link) => {
            for j in 1..=3 {
                record(j, amphichiral_case(link, j));
            }
        }
        Check::Integrality if knot => {
            for j in 0..=4 {
                record(j, integrality_case(link, j));
            }
        }
        Check::Determinant if knot => {
            for j in 1..=3 {
                record(j, determinant_case(link, j));
            }
        }
        Check::NestedSum => {
            for start in consistent_starts(link) {
                for j in 0..=3 {
                    record(j, nested_sum_case(link, j, start));
                }
            }
        }
        _ => {}
    }
    (cases, failures)
}

fn mismatch(expected: &QScalar, got: &QScalar) -> Option<String> {
    (expected != got).then(|| format!("expected {expected}, got {got}"))
}

fn homfly_case(link: &TwoBridgeLink, start: crate::Start) -> Result<Option<String>, Error> {
    let engine = fundamental(link, start)?.canonicalize()?;
    let d = plat_diagram(&link.cf, start, ENGINE_STYLE);
    let oracle = homfly(&d, ENGINE_CONVENTION).canonicalize()?;
    Ok(mismatch(&oracle, &engine))
}

/// The `j = 1` value with both components in the fundamental color, so
/// `s = q^{i-j} = 1`.
fn fundamental(link: &TwoBridgeLink, start: crate::Start) -> Result<QScalar, Error> {
    eval_reduced(link, 1, start, Normalize::Raw)?.substitute(&Substitution::s_to_one())
}

fn jones_case(link: &TwoBridgeLink, start: crate::Start) -> Result<Option<String>, Error> {
    let engine = fundamental(link, start)?
        .substitute(&Substitution::a_to_q_pow(2))?
        .canonicalize()?;
    let d = plat_diagram(&link.cf, start, ENGINE_STYLE);
    let oracle = QScalar::from_poly(jones(&d)).canonicalize()?;
    Ok(mismatch(&oracle, &engine))
}

fn amphichiral_case(link: &TwoBridgeLink, j: u32) -> Result<Option<String>, Error> {
    let v = eval_reduced(link, j, natural_start(link), Normalize::Canonical)?;
    let mirrored = v.mirrored().canonicalize()?;
    Ok(mismatch(&v, &mirrored))
}

fn integrality_case(link: &TwoBridgeLink, j: u32) -> Result<Option<String>, Error> {
    let v = eval_reduced(link, j, natural_start(link), Normalize::Raw)?;
    Ok((!v.den().is_empty()).then(|| format!("denominator remains: {v}")))
}

fn determinant_case(link: &TwoBridgeLink, j: u32) -> Result<Option<String>, Error> {
    let v = eval_reduced(link, j, natural_start(link), Normalize::Raw)?
        .substitute(&Substitution::a_to_q_pow(j as i32))?;
    Ok((!v.is_signed_monomial()).then(|| format!("not a signed monomial: {v}")))
}

fn nested_sum_case(link: &TwoBridgeLink, j: u32, start: crate::Start) -> Result<Option<String>, Error> {
    let engine = eval_reduced(link, j, start, Normalize::Raw)?;
    let reference = eval_nested_sum(link, j, start)?;
    Ok(mismatch(&reference, &engine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twobridge::enumerate_corpus;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("bogus".parse::<Check>().is_err());
    }

    #[test]
    fn amphichiral_detection() {
        let fig8 = TwoBridgeLink::from_fraction(5, 2).unwrap();
        assert!(is_amphichiral(&fig8));
        let trefoil = TwoBridgeLink::from_fraction(3, 1).unwrap();
        assert!(!is_amphichiral(&trefoil));
    }

    #[test]
    fn small_corpus_passes_every_check() {
        let corpus = enumerate_corpus(4);
        for check in Check::ALL {
            let report = run_check(check, &corpus);
            assert!(report.passed(), "{check}: {:?}", report.failures);
        }
    }
}
