//! Quantum integers, balanced q-binomials, the a-deformed binomial and the
//! s-dependent closure products.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use crate::ring::{Exp, LaurentPoly, QScalar};

/// Balanced quantum integer `[l] = (q^l - q^-l) / (q - q^-1)`, with
/// `[-l] = -[l]`.
pub fn quantum_int(l: i64) -> LaurentPoly {
    if l == 0 {
        return LaurentPoly::zero();
    }
    let n = l.unsigned_abs() as i32;
    let p = LaurentPoly::from_q_terms((0..n).map(|t| (n - 1 - 2 * t, 1)));
    if l < 0 {
        -p
    } else {
        p
    }
}

static QBINOM_MEMO: LazyLock<Mutex<HashMap<(i64, i64), LaurentPoly>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Balanced q-binomial `prod_{t=1}^{m} [n-m+t] / [t]`, memoized.
///
/// Zero for `m < 0`, and for `m > n >= 0`. Negative `n` follows the same
/// product formula.
pub fn qbinom(n: i64, m: i64) -> LaurentPoly {
    if m < 0 || (n >= 0 && m > n) {
        return LaurentPoly::zero();
    }
    if let Some(v) = QBINOM_MEMO.lock().unwrap().get(&(n, m)) {
        return v.clone();
    }
    let v = qbinom_uncached(n, m);
    QBINOM_MEMO.lock().unwrap().insert((n, m), v.clone());
    v
}

/// The defining product, without the memo table.
pub fn qbinom_uncached(n: i64, m: i64) -> LaurentPoly {
    if m < 0 || (n >= 0 && m > n) {
        return LaurentPoly::zero();
    }
    let mut acc = LaurentPoly::one();
    for t in 1..=m {
        acc = acc.mul_ref(&quantum_int(n - m + t));
        if acc.is_zero() {
            return acc;
        }
        // Dividing by [t] is multiplying by q - q^-1 and dividing by q^t - q^-t.
        acc = acc
            .mul_quantum_factor(1)
            .exact_div_by_quantum(t as u32)
            .expect("partial q-binomial products are polynomials");
    }
    acc
}

/// `{m brack n}_a = prod_{l=0}^{n-1} (a q^{m-l} - a^-1 q^{l-m}) / (q^{l+1} - q^{-l-1})`.
pub fn abinom(m: i64, n: u32) -> QScalar {
    let mut num = LaurentPoly::one();
    for l in 0..n as i64 {
        num = num.mul_ref(&binomial_factor(1, m - l, 0));
    }
    QScalar::new(num, (1..=n).map(|l| (l, 1)))
}

/// `a^da q^dq s^ds - a^-da q^-dq s^-ds`: every numerator factor in the
/// closure formulas has this antisymmetric two-term shape.
pub(crate) fn binomial_factor(da: i32, dq: i64, ds: i32) -> LaurentPoly {
    let dq = dq as i32;
    let mut p = LaurentPoly::mono(1, da, dq, ds);
    p.add_assign_owned(LaurentPoly::mono(-1, -da, -dq, -ds));
    p
}

/// Which of the two closure products to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    /// `prod (a s^-1 q^{-j-l} - a^-1 s q^{l+j}) / (q^{l+1} - q^{-l-1})`
    UpType,
    /// `prod (s q^{j-l} - s^-1 q^{l-j}) / (q^{l+1} - q^{-l-1})`
    OpType,
}

/// Numerator factor `l` of the closure product is `m - m^-1` for the
/// monomial `m` with this exponent.
pub(crate) fn closure_numerator_exp(kind: ClosureKind, l: u32, j: u32) -> Exp {
    let (l, j) = (l as i32, j as i32);
    match kind {
        ClosureKind::UpType => Exp::new(1, -j - l, -1),
        ClosureKind::OpType => Exp::new(0, j - l, 1),
    }
}

pub(crate) fn closure_numerator_factor(kind: ClosureKind, l: u32, j: u32) -> LaurentPoly {
    let e = closure_numerator_exp(kind, l, j);
    binomial_factor(e.a, e.q as i64, e.s)
}

/// The s-dependent closure product with `count` factors at color `j`.
pub fn closure_s_factor(kind: ClosureKind, count: u32, j: u32) -> QScalar {
    let mut num = LaurentPoly::one();
    for l in 0..count {
        num = num.mul_ref(&closure_numerator_factor(kind, l, j));
    }
    QScalar::new(num, (1..=count).map(|l| (l, 1)))
}

/// Colored unknot `P_n(O) = {0 brack n}_a`.
pub fn unknot_colored(n: u32) -> QScalar {
    abinom(0, n)
}

/// `q^l - q^-l` as a polynomial.
pub fn balanced_factor(l: u32) -> LaurentPoly {
    binomial_factor(0, l as i64, 0)
}

/// `q^k` as an exponent.
#[cfg(test)]
pub(crate) fn q_exp(k: i64) -> Exp {
    Exp::new(0, k as i32, 0)
}
