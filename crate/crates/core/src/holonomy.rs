//! q-holonomic recurrences in the color.
//!
//! A [`RecurrenceOperator`] `sum_l a_l(a, q, M) L^l` acts on a sequence by
//! `(M f)_n = q^n f_n` and `(L f)_n = f_{n+1}`. [`guess_recurrence`] fits the
//! ansatz `a_l = sum_m c_{l,m}(a, q) M^m` to a window of values: the kernel
//! is located by exact rank computations modulo a prime at fixed generic
//! points, and the coefficients are then solved for exactly by Cramer's rule
//! with fraction-free determinants over `Z[a^+-1, q^+-1]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::qcomb::balanced_factor;
use crate::ring::{Exp, LaurentPoly, QScalar, Substitution};
use crate::Error;

/// Consecutive values `f_start, f_start+1, ...`, free of `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    pub start: u32,
    values: Vec<QScalar>,
}

impl SequenceWindow {
    /// Values with `s` still present are specialized to `s = 1`.
    pub fn new(start: u32, values: Vec<QScalar>) -> Result<Self, Error> {
        let values = values
            .into_iter()
            .map(|v| {
                if v.involves_s() {
                    v.substitute(&Substitution::s_to_one())
                } else {
                    Ok(v)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SequenceWindow { start, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[QScalar] {
        &self.values
    }

    /// `f_n` for an absolute index `n`.
    pub fn get(&self, n: u32) -> Option<&QScalar> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i as usize))
    }

    /// The first `len` values.
    pub fn truncated(&self, len: usize) -> SequenceWindow {
        SequenceWindow { start: self.start, values: self.values[..len.min(self.len())].to_vec() }
    }

    /// Last absolute index, if any.
    pub fn end(&self) -> Option<u32> {
        (!self.is_empty()).then(|| self.start + self.len() as u32 - 1)
    }
}

/// `sum_l (sum_m coeffs[l][m] M^m) L^l` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceOperator {
    coeffs: Vec<Vec<LaurentPoly>>,
}

impl RecurrenceOperator {
    /// Trims vanishing leading `L`-coefficients and top `M`-powers.
    /// Panics if every coefficient is zero.
    pub fn new(mut coeffs: Vec<Vec<LaurentPoly>>) -> Self {
        while coeffs.last().is_some_and(|a| a.iter().all(LaurentPoly::is_zero)) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "the zero operator is not a recurrence");
        let mdeg = coeffs
            .iter()
            .filter_map(|a| a.iter().rposition(|c| !c.is_zero()))
            .max()
            .unwrap_or(0);
        for a in &mut coeffs {
            a.resize(mdeg + 1, LaurentPoly::zero());
        }
        RecurrenceOperator { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mdeg(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// Coefficient of `M^m L^l`.
    pub fn coeff(&self, l: usize, m: usize) -> &LaurentPoly {
        &self.coeffs[l][m]
    }

    pub fn coeffs(&self) -> &[Vec<LaurentPoly>] {
        &self.coeffs
    }

    pub fn is_a_free(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| !c.involves_a())
    }

    /// Left multiplication by a scalar.
    pub fn scaled(&self, c: &LaurentPoly) -> RecurrenceOperator {
        RecurrenceOperator::new(
            self.coeffs.iter().map(|a| a.iter().map(|x| x.mul_ref(c)).collect()).collect(),
        )
    }

    /// Divides out the gcd of all coefficients and makes the leading
    /// coefficient's top term positive.
    fn cleared(self) -> RecurrenceOperator {
        let mut coeffs = self.coeffs;
        let g = coeffs.iter().flatten().fold(LaurentPoly::zero(), |g, c| g.gcd(c));
        let lead = coeffs.last().and_then(|a| a.iter().rev().find(|c| !c.is_zero()));
        let g = match lead.and_then(|c| c.terms().last()) {
            Some((_, c)) if c.is_negative() => -g,
            _ => g,
        };
        for c in coeffs.iter_mut().flatten() {
            *c = c.div_exact(&g).expect("gcd divides every coefficient");
        }
        let lo = coeffs
            .iter()
            .flatten()
            .filter_map(LaurentPoly::min_exp)
            .reduce(|x, y| Exp::new(x.a.min(y.a), x.q.min(y.q), x.s.min(y.s)))
            .unwrap_or(Exp::ZERO);
        for c in coeffs.iter_mut().flatten() {
            c.shift_in_place(Exp::new(-lo.a, -lo.q, -lo.s));
        }
        RecurrenceOperator::new(coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorWire {
    order: usize,
    mdeg: usize,
    coeffs: Vec<Vec<QScalar>>,
}

impl Serialize for RecurrenceOperator {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        OperatorWire {
            order: self.order(),
            mdeg: self.mdeg(),
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.iter().map(|c| QScalar::from_poly(c.clone())).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RecurrenceOperator {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = OperatorWire::deserialize(de)?;
        if w.coeffs.len() != w.order + 1 || w.coeffs.iter().any(|a| a.len() != w.mdeg + 1) {
            return Err(D::Error::custom("coefficient table does not match order and mdeg"));
        }
        let coeffs = w
            .coeffs
            .into_iter()
            .map(|a| {
                a.into_iter()
                    .map(|c| {
                        if c.is_polynomial() {
                            Ok(c.num().clone())
                        } else {
                            Err(D::Error::custom("operator coefficients must be polynomials"))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.last().is_none_or(|a| a.iter().all(LaurentPoly::is_zero)) {
            return Err(D::Error::custom("leading coefficient must be nonzero"));
        }
        let op = RecurrenceOperator::new(coeffs);
        if op.order() != w.order || op.mdeg() != w.mdeg {
            return Err(D::Error::custom("order or mdeg not tight"));
        }
        Ok(op)
    }
}

impl fmt::Display for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in (0..=self.order()).rev() {
            for m in 0..=self.mdeg() {
                let c = &self.coeffs[l][m];
                if c.is_zero() {
                    continue;
                }
                let mut var = String::new();
                if m > 0 {
                    var.push('M');
                    if m > 1 {
                        var.push_str(&format!("^{m}"));
                    }
                }
                if l > 0 {
                    if !var.is_empty() {
                        var.push(' ');
                    }
                    var.push('L');
                    if l > 1 {
                        var.push_str(&format!("^{l}"));
                    }
                }
                let (neg, body) = if c.is_monomial() {
                    let (e, k) = &c.terms()[0];
                    let abs = LaurentPoly::monomial(k.abs(), *e);
                    let text = if abs.is_one() && !var.is_empty() {
                        String::new()
                    } else {
                        abs.to_string()
                    };
                    (k.is_negative(), text)
                } else {
                    (false, format!("({c})"))
                };
                let sep = match (first, neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                let joined = match (body.is_empty(), var.is_empty()) {
                    (true, _) => var,
                    (false, true) => body,
                    (false, false) => format!("{body} {var}"),
                };
                write!(f, "{sep}{joined}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// `sum_l a_l(a, q, q^n) f_{n+l}` at absolute index `n`.
pub fn apply_operator(
    op: &RecurrenceOperator,
    f: &SequenceWindow,
    n: u32,
) -> Result<QScalar, Error> {
    let d = op.order();
    let have = f.len();
    let needed = (n as usize + d + 1).saturating_sub(f.start as usize);
    if n < f.start || f.get(n + d as u32).is_none() {
        return Err(Error::WindowTooShort { needed, have });
    }
    let mut acc = QScalar::zero();
    for l in 0..=d {
        let mut a = LaurentPoly::zero();
        for m in 0..=op.mdeg() {
            a.add_assign_owned(op.coeffs[l][m].clone().shifted(Exp::new(0, (n as i64 * m as i64) as i32, 0)));
        }
        if a.is_zero() {
            continue;
        }
        acc = acc.add_ref(&f.get(n + l as u32).unwrap().mul_poly(&a));
    }
    Ok(acc)
}

/// Fitting options.
#[derive(Clone, Copy, Debug)]
pub struct GuessOptions {
    /// Restrict the coefficients `c_{l,m}` to be free of `a`.
    pub a_free: bool,
    /// Largest polynomial (in terms) tolerated during exact solving.
    pub term_budget: usize,
}

impl Default for GuessOptions {
    fn default() -> Self {
        GuessOptions { a_free: false, term_budget: 200_000 }
    }
}

/// Equations needed before a grid point `(d, mdeg)` is tried: one more than
/// the number of unknowns, so that a kernel is evidence rather than a
/// counting artifact.
pub fn equations_needed(d: usize, mdeg: usize) -> usize {
    (d + 1) * (mdeg + 1) + 1
}

/// Window length at which the point `(d, mdeg)` becomes overdetermined
/// (without the `a`-splitting that `a_free` fits also get).
pub fn window_needed(d: usize, mdeg: usize) -> usize {
    equations_needed(d, mdeg) + d
}

/// The grid points `(d, mdeg)` with `1 <= d <= d_max`, `mdeg <= mdeg_max`
/// that `f` overdetermines, in search order.
pub fn searchable_grid(f: &SequenceWindow, d_max: usize, mdeg_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        for m in 0..=mdeg_max {
            if f.len() >= window_needed(d, m) {
                out.push((d, m));
            }
        }
    }
    out
}

/// Minimal `(d, then mdeg)` recurrence within the bounds, or `None`.
///
/// Grid points that the window does not overdetermine are skipped;
/// [`Error::WindowTooShort`] if that leaves nothing to try.
pub fn guess_recurrence(
    f: &SequenceWindow,
    d_max: usize,
    mdeg_max: usize,
    opts: GuessOptions,
) -> Result<Option<RecurrenceOperator>, Error> {
    let grid = searchable_grid(f, d_max, mdeg_max);
    if grid.is_empty() {
        return Err(Error::WindowTooShort { needed: window_needed(1, 0), have: f.len() });
    }
    let system = ModSystem::new(f, opts.a_free);
    let kernels: Vec<usize> = grid.par_iter().map(|&(d, m)| system.kernel_dim(d, m)).collect();
    for (&(d, m), _) in grid.iter().zip(&kernels).filter(|(_, &k)| k > 0) {
        let Some(op) = solve_exact(f, d, m, &system, opts)? else {
            continue;
        };
        let end = f.start + (f.len() - op.order()) as u32;
        if (f.start..end).all(|n| apply_operator(&op, f, n).is_ok_and(|v| v.is_zero())) {
            return Ok(Some(op));
        }
    }
    Ok(None)
}

/// Dimension of the solution space of the `(d, mdeg)` ansatz on `f`, at a
/// generic point.
pub fn kernel_dimension(f: &SequenceWindow, d: usize, mdeg: usize, a_free: bool) -> usize {
    ModSystem::new(f, a_free).kernel_dim(d, mdeg)
}

/// Outcome of checking an operator on held-out indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    /// Absolute indices `n` checked, with whether the operator vanished.
    pub checked: Vec<(u32, bool)>,
}

impl ValidationReport {
    pub fn first_failure(&self) -> Option<u32> {
        self.checked.iter().find(|c| !c.1).map(|c| c.0)
    }
}

/// Checks `op` on every equation that involves one of the last `holdout`
/// values of `f`. Fails if there is no such equation.
pub fn validate(op: &RecurrenceOperator, f: &SequenceWindow, holdout: usize) -> ValidationReport {
    let d = op.order();
    let len = f.len();
    let mut checked = Vec::new();
    if len > d && holdout > 0 {
        let last_n = f.start as usize + len - 1 - d;
        let first_n = (f.start as usize + len).saturating_sub(holdout + d).max(f.start as usize);
        for n in first_n..=last_n {
            let ok = apply_operator(op, f, n as u32).map(|v| v.is_zero()).unwrap_or(false);
            checked.push((n as u32, ok));
        }
    }
    ValidationReport { passed: !checked.is_empty() && checked.iter().all(|c| c.1), checked }
}

/// Fits on all but the last `holdout` values and validates on the rest.
pub fn fit_and_validate(
    f: &SequenceWindow,
    d_max: usize,
    mdeg_max: usize,
    holdout: usize,
    opts: GuessOptions,
) -> Result<Option<(RecurrenceOperator, ValidationReport)>, Error> {
    if f.len() < holdout + window_needed(1, 0) {
        return Err(Error::WindowTooShort { needed: holdout + window_needed(1, 0), have: f.len() });
    }
    let fit = f.truncated(f.len() - holdout);
    Ok(guess_recurrence(&fit, d_max, mdeg_max, opts)?.map(|op| {
        let report = validate(&op, f, holdout);
        (op, report)
    }))
}

// ---------------------------------------------------------------------------
// Linear systems.

const PRIME: u64 = (1 << 61) - 1;
/// Generic evaluation points `(a, q)`.
const POINTS: [(u64, u64); 2] = [(0x1d3b_5f07_a9c4_e211, 0x0b7e_1516_28ae_d2a6), (0x13c6_ef37_2fe9_4f82, 0x05d5_8a1f_3b9e_c417)];

fn mulm(x: u64, y: u64) -> u64 {
    ((x as u128 * y as u128) % PRIME as u128) as u64
}

fn addm(x: u64, y: u64) -> u64 {
    let s = x + y;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn powm(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b);
        }
        b = mulm(b, b);
        e >>= 1;
    }
    r
}

fn invm(x: u64) -> u64 {
    powm(x, PRIME - 2)
}

fn powz(x: u64, e: i64) -> u64 {
    if e >= 0 {
        powm(x, e as u64)
    } else {
        powm(invm(x), e.unsigned_abs())
    }
}

fn coeff_mod(c: &BigInt) -> u64 {
    c.mod_floor(&BigInt::from(PRIME)).to_u64().unwrap()
}

fn eval_poly(p: &LaurentPoly, a: u64, q: u64) -> u64 {
    p.terms().iter().fold(0, |acc, (e, c)| {
        addm(acc, mulm(coeff_mod(c), mulm(powz(a, e.a as i64), powz(q, e.q as i64))))
    })
}

fn eval_scalar(v: &QScalar, a: u64, q: u64) -> u64 {
    let den = v.den().iter().fold(1, |acc, (&l, &mult)| {
        let f = addm(powz(q, l as i64), PRIME - powz(q, -(l as i64)));
        mulm(acc, powm(f, mult as u64))
    });
    mulm(eval_poly(v.num(), a, q), invm(den))
}

/// `(a-exponent, value mod p)` pairs for one `f_n`.
type ModValue = Vec<(i32, u64)>;

/// The sequence evaluated at the generic points, ready for rank checks.
struct ModSystem {
    /// Per point: `values[n]` is `f_n` (full evaluation) or, for `a_free`, the
    /// `a`-coefficients of `f_n` evaluated at `q`, keyed by `a`-exponent.
    points: Vec<(u64, Vec<ModValue>)>,
    len: usize,
}

impl ModSystem {
    fn new(f: &SequenceWindow, a_free: bool) -> Self {
        let points = POINTS
            .iter()
            .map(|&(a, q)| {
                let vals = f
                    .values()
                    .iter()
                    .map(|v| {
                        if a_free {
                            split_by_a(v).into_iter().map(|(e, c)| (e, eval_scalar(&c, 1, q))).collect()
                        } else {
                            vec![(0, eval_scalar(v, a, q))]
                        }
                    })
                    .collect();
                (q, vals)
            })
            .collect();
        ModSystem { points, len: f.len() }
    }

    fn rows(&self, point: usize, d: usize, mdeg: usize) -> Vec<Vec<u64>> {
        let (q, vals) = &self.points[point];
        let mut rows = Vec::new();
        for n in 0..self.len - d {
            let qn = powm(*q, n as u64);
            let mut exps: Vec<i32> = (0..=d).flat_map(|l| vals[n + l].iter().map(|x| x.0)).collect();
            exps.sort_unstable();
            exps.dedup();
            for e in exps {
                let mut row = Vec::with_capacity((d + 1) * (mdeg + 1));
                for l in 0..=d {
                    let v = vals[n + l].iter().find(|x| x.0 == e).map_or(0, |x| x.1);
                    let mut qm = 1;
                    for _ in 0..=mdeg {
                        row.push(mulm(v, qm));
                        qm = mulm(qm, qn);
                    }
                }
                rows.push(row);
            }
        }
        rows
    }

    fn kernel_dim(&self, d: usize, mdeg: usize) -> usize {
        let unknowns = (d + 1) * (mdeg + 1);
        (0..self.points.len())
            .map(|p| unknowns - echelon(self.rows(p, d, mdeg)).len())
            .min()
            .unwrap()
    }
}

/// Gauss-Jordan elimination mod p; the pivots as `(original row, column)`.
fn echelon(mut m: Vec<Vec<u64>>) -> Vec<(usize, usize)> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut order: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        order.swap(r, p);
        let inv = invm(m[r][c]);
        for x in m[r].iter_mut() {
            *x = mulm(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = addm(*x, PRIME - mulm(f, y));
                }
            }
        }
        pivots.push((order[r], c));
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// `v` split by powers of `a`: `v = sum_e a^e c_e` with `c_e` free of `a`.
fn split_by_a(v: &QScalar) -> Vec<(i32, QScalar)> {
    let mut out: Vec<(i32, Vec<(Exp, BigInt)>)> = Vec::new();
    for (e, c) in v.num().terms() {
        let t = (Exp::new(0, e.q, e.s), c.clone());
        match out.last_mut() {
            Some((a, terms)) if *a == e.a => terms.push(t),
            _ => out.push((e.a, vec![t])),
        }
    }
    out.into_iter()
        .map(|(a, terms)| {
            let num = LaurentPoly::from_terms(terms);
            (a, QScalar::new(num, v.den().iter().map(|(&l, &m)| (l, m))))
        })
        .collect()
}

/// Exact polynomial rows of the `(d, mdeg)` system: each equation scaled by
/// the common denominator of the values it involves.
fn exact_rows(f: &SequenceWindow, d: usize, mdeg: usize, a_free: bool) -> Vec<Vec<LaurentPoly>> {
    let vals = f.values();
    let mut rows = Vec::new();
    for n in 0..f.len() - d {
        let mut common: std::collections::BTreeMap<u32, u32> = Default::default();
        for v in &vals[n..=n + d] {
            for (&l, &m) in v.den() {
                let e = common.entry(l).or_default();
                *e = (*e).max(m);
            }
        }
        let cleared: Vec<LaurentPoly> = vals[n..=n + d]
            .iter()
            .map(|v| {
                let mut p = v.num().clone();
                for (&l, &m) in &common {
                    let have = v.den().get(&l).copied().unwrap_or(0);
                    for _ in have..m {
                        p = p.mul_ref(&balanced_factor(l));
                    }
                }
                p
            })
            .collect();
        let qn = (f.start as usize + n) as i32;
        let row_for = |vals: &[LaurentPoly]| -> Vec<LaurentPoly> {
            let mut row = Vec::new();
            for v in vals {
                for m in 0..=mdeg {
                    row.push(v.clone().shifted(Exp::new(0, qn * m as i32, 0)));
                }
            }
            row
        };
        if a_free {
            let mut exps: Vec<i32> = cleared.iter().flat_map(|p| p.terms().iter().map(|t| t.0.a)).collect();
            exps.sort_unstable();
            exps.dedup();
            for e in exps {
                let parts: Vec<LaurentPoly> = cleared
                    .iter()
                    .map(|p| {
                        LaurentPoly::from_terms(
                            p.terms().iter().filter(|t| t.0.a == e).map(|(x, c)| (Exp::new(0, x.q, x.s), c.clone())),
                        )
                    })
                    .collect();
                rows.push(row_for(&parts));
            }
        } else {
            rows.push(row_for(&cleared));
        }
    }
    rows
}

fn solve_exact(
    f: &SequenceWindow,
    d: usize,
    mdeg: usize,
    system: &ModSystem,
    opts: GuessOptions,
) -> Result<Option<RecurrenceOperator>, Error> {
    // Modular rows count n from the window start, exact rows use absolute n;
    // the two differ by nonzero column scalings, which keep the pivots.
    let pivots = echelon(system.rows(0, d, mdeg));
    let unknowns = (d + 1) * (mdeg + 1);
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let free = (0..unknowns).find(|c| !pivot_cols.contains(c)).expect("kernel is nontrivial");
    let rows_all = exact_rows(f, d, mdeg, opts.a_free);
    let rows: Vec<&Vec<LaurentPoly>> = pivots.iter().map(|p| &rows_all[p.0]).collect();
    let r = rows.len();
    let square = |replace: Option<usize>| -> Vec<Vec<LaurentPoly>> {
        rows.iter()
            .map(|row| {
                (0..r)
                    .map(|i| {
                        let col = if Some(i) == replace { free } else { pivot_cols[i] };
                        row[col].clone()
                    })
                    .collect()
            })
            .collect()
    };
    // Cramer: x_free = det(B), x_pivot_i = -det(B with column i := free column).
    let mut solution = vec![LaurentPoly::zero(); unknowns];
    solution[free] = determinant(square(None), opts.term_budget)?;
    for i in 0..r {
        solution[pivot_cols[i]] = -determinant(square(Some(i)), opts.term_budget)?;
    }
    let coeffs: Vec<Vec<LaurentPoly>> =
        solution.chunks(mdeg + 1).map(|c| c.to_vec()).collect();
    // A vanishing vector means the modular pivots were not exact pivots.
    if coeffs.iter().flatten().all(LaurentPoly::is_zero) {
        return Ok(None);
    }
    Ok(Some(RecurrenceOperator::new(coeffs).cleared()))
}

/// Fraction-free (Bareiss) determinant over `Z[a^+-1, q^+-1, s^+-1]`.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>, term_budget: usize) -> Result<LaurentPoly, Error> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].len());
        let Some(p) = pivot else {
            return Ok(LaurentPoly::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul_ref(&m[i][j]) - m[i][k].mul_ref(&m[k][j]);
                let v = t.div_exact(&prev).expect("Bareiss steps divide exactly");
                if v.len() > term_budget {
                    return Err(Error::Budget(format!(
                        "intermediate polynomial with {} terms exceeds the budget of {term_budget}",
                        v.len()
                    )));
                }
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}
