//! 2-bridge links as closures of positive rational tangles.
//!
//! A [`ContinuedFraction`] `[a_r, ..., a_1]` is stored in display order. The
//! tangle is built from two vertical strands by `a_1` twists on the top
//! endpoints, then `a_2` twists on the right endpoints, alternating, and is
//! closed so that the last twist group does not become nugatory.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::Error;

/// Twist operator: a crossing glued to the top (`T`) or right (`R`) endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    T,
    R,
}

impl Twist {
    pub fn other(self) -> Twist {
        match self {
            Twist::T => Twist::R,
            Twist::R => Twist::T,
        }
    }
}

/// How the four tangle endpoints are joined at the end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosureType {
    /// NW to SW and NE to SE (lower to upper endpoints).
    TopBottom,
    /// NW to NE and SW to SE (left to right endpoints).
    LeftRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContinuedFraction {
    entries: Vec<u32>,
}

impl ContinuedFraction {
    /// Entries in display order `[a_r, ..., a_1]`.
    pub fn new(entries: Vec<u32>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidContinuedFraction("empty".into()));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidContinuedFraction(format!(
                "entries must be positive: {entries:?}"
            )));
        }
        Ok(ContinuedFraction { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Total crossing number `n = a_1 + ... + a_r`.
    pub fn crossings(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `a_r + 1/(a_{r-1} + ... + 1/a_1)` in lowest terms.
    pub fn to_fraction(&self) -> Result<(u64, u64), Error> {
        let overflow = || Error::InvalidContinuedFraction(format!("{self} overflows u64"));
        // Evaluate from the innermost entry a_1 outward.
        let mut it = self.entries.iter().rev();
        let (mut p, mut q) = (*it.next().unwrap() as u64, 1u64);
        for &a in it {
            // a + q/p = (a p + q) / p
            let np = (a as u64)
                .checked_mul(p)
                .and_then(|x| x.checked_add(q))
                .ok_or_else(overflow)?;
            q = p;
            p = np;
        }
        let g = p.gcd(&q);
        Ok((p / g, q / g))
    }

    /// Inverse of [`to_fraction`](Self::to_fraction) by the Euclidean algorithm.
    pub fn from_fraction(p: u64, q: u64) -> Result<Self, Error> {
        let bad = |reason: &str| Error::InvalidFraction { p, q, reason: reason.into() };
        if p == 0 || q == 0 {
            return Err(bad("numerator and denominator must be positive"));
        }
        if p.gcd(&q) != 1 {
            return Err(bad("not in lowest terms"));
        }
        if q != 1 && p <= q {
            return Err(bad("need p > q unless q = 1"));
        }
        let mut entries = Vec::new();
        let (mut num, mut den) = (p, q);
        while den != 0 {
            let a = num / den;
            entries.push(u32::try_from(a).map_err(|_| bad("entry exceeds u32"))?);
            (num, den) = (den, num % den);
        }
        // A final entry of 1 after a longer expansion is fine; entries are
        // positive because each remainder is smaller than its divisor.
        ContinuedFraction::new(entries)
    }

    /// Twist groups in application order: `(T, a_1), (R, a_2), (T, a_3), ...`.
    pub fn operator_word(&self) -> OperatorWord {
        let groups = self
            .entries
            .iter()
            .rev()
            .enumerate()
            .map(|(idx, &count)| {
                let kind = if idx % 2 == 0 { Twist::T } else { Twist::R };
                (kind, count)
            })
            .collect();
        OperatorWord { groups }
    }

    /// Closure that keeps the last twist group from becoming nugatory.
    pub fn closure_type(&self) -> ClosureType {
        if self.entries.len() % 2 == 1 {
            ClosureType::TopBottom
        } else {
            ClosureType::LeftRight
        }
    }

    /// Number of link components, by following which initial strand ends up
    /// at each tangle endpoint and joining them at the closure.
    pub fn component_count(&self) -> u8 {
        // Endpoint labels [NW, NE, SW, SE]; strand 0 is the left initial
        // strand, strand 1 the right one.
        let mut ends = [0u8, 1, 0, 1];
        for (kind, count) in self.operator_word().groups {
            if count % 2 == 1 {
                match kind {
                    Twist::T => ends.swap(0, 1),
                    Twist::R => ends.swap(1, 3),
                }
            }
        }
        let joined = match self.closure_type() {
            ClosureType::TopBottom => [(ends[0], ends[2]), (ends[1], ends[3])],
            ClosureType::LeftRight => [(ends[0], ends[1]), (ends[2], ends[3])],
        };
        if joined.iter().any(|&(x, y)| x != y) {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses the comma-separated display order `a_r,...,a_1`.
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad continued fraction entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ContinuedFraction::new(entries)
    }
}

/// Parses `p/q` (or a bare integer `p`).
pub fn parse_fraction(s: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::Parse(format!("bad fraction {s:?}"));
    let mut parts = s.trim().splitn(2, '/');
    let p = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let q = match parts.next() {
        Some(t) => t.trim().parse().map_err(|_| bad())?,
        None => 1,
    };
    Ok((p, q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    pub groups: Vec<(Twist, u32)>,
}

impl OperatorWord {
    /// Individual twists in application order.
    pub fn twists(&self) -> impl Iterator<Item = Twist> + '_ {
        self.groups
            .iter()
            .flat_map(|&(kind, count)| std::iter::repeat_n(kind, count as usize))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeLink {
    pub cf: ContinuedFraction,
    pub p: u64,
    pub q: u64,
    pub crossings: u32,
    pub components: u8,
}

impl TwoBridgeLink {
    pub fn new(cf: ContinuedFraction) -> Result<Self, Error> {
        let (p, q) = cf.to_fraction()?;
        let crossings = cf.crossings();
        let components = cf.component_count();
        Ok(TwoBridgeLink { cf, p, q, crossings, components })
    }

    pub fn from_fraction(p: u64, q: u64) -> Result<Self, Error> {
        Self::new(ContinuedFraction::from_fraction(p, q)?)
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn fraction_string(&self) -> String {
        format!("{}/{}", self.p, self.q)
    }
}

/// Every continued fraction with entry sum at most `max_crossings`, i.e. all
/// compositions of `1..=max_crossings`. Duplicates of the same link are kept.
pub fn enumerate_corpus(max_crossings: u32) -> Vec<TwoBridgeLink> {
    let mut out = Vec::new();
    for n in 1..=max_crossings {
        let mut current = Vec::new();
        compositions(n, &mut current, &mut out);
    }
    out
}

fn compositions(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<TwoBridgeLink>) {
    if remaining == 0 {
        let cf = ContinuedFraction::new(current.clone()).expect("compositions are positive");
        out.push(TwoBridgeLink::new(cf).expect("small corpus fractions fit in u64"));
        return;
    }
    for first in 1..=remaining {
        current.push(first);
        compositions(remaining - first, current, out);
        current.pop();
    }
}
