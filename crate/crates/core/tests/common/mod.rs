//! Brute-force reference evaluation: one explicit summation index per
//! crossing, with its own rule table, Pascal-triangle q-binomials and
//! closure products written out factor by factor.

#![allow(dead_code)]

pub mod strategies;

use qhomfly::skein::effective_word;
use qhomfly::{Exp, LaurentPoly, QScalar, Start, Substitution, Twist, TwoBridgeLink};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fam {
    Up,
    Ups,
    Op,
    Ops,
    Ri,
    Ris,
}

/// `[a, s, q]` exponents as functions of `(j, h, k)`.
type Mono = fn(i64, i64, i64) -> [i64; 3];

struct Rule {
    target: Fam,
    mono: Mono,
}

fn rule(op: Twist, f: Fam) -> Rule {
    use Fam::*;
    let (target, mono): (Fam, Mono) = match (op, f) {
        (Twist::T, Up) => (Ups, |_, h, k| [0, k, h * (k + 1)]),
        (Twist::T, Ups) => (Up, |_, h, k| [0, h, h * (k + 1)]),
        (Twist::T, Ops) => (Ri, |j, h, k| [k, h - k, -2 * j * k + h * (k + 1)]),
        (Twist::T, Op) => (Ris, |j, h, k| [k, -k, -2 * j * k + h * (k + 1)]),
        (Twist::T, Ri) => (Ops, |j, h, k| [h, k - h, h * (k + 1 - 2 * j)]),
        (Twist::T, Ris) => (Op, |j, h, k| [h, -h, h * (k + 1 - 2 * j)]),
        (Twist::R, Up) => (Op, |j, h, k| [h, k - h, j * k + h * (1 - k - j)]),
        (Twist::R, Ups) => (Ops, |j, h, k| [h, -h, j * k + h * (1 - k - j)]),
        (Twist::R, Op) => (Up, |j, h, k| [k, h - k, -j * k + h * (1 + j - k)]),
        (Twist::R, Ops) => (Ups, |j, h, k| [k, -k, -j * k + h * (1 + j - k)]),
        (Twist::R, Ri) => (Ris, |j, h, k| [0, k, j * k + h * (1 + j - k)]),
        (Twist::R, Ris) => (Ri, |j, h, k| [0, h, j * k + h * (1 + j - k)]),
    };
    Rule { target, mono }
}

fn mono(c: i64, a: i64, q: i64, s: i64) -> LaurentPoly {
    LaurentPoly::mono(c, a as i32, q as i32, s as i32)
}

/// Balanced q-binomial from the Pascal recursion in `Q = q^2`.
pub fn pascal_qbinom(n: i64, m: i64) -> LaurentPoly {
    if m < 0 || n < 0 || m > n {
        return LaurentPoly::zero();
    }
    let mut row = vec![LaurentPoly::one()];
    for r in 1..=n as usize {
        let mut next = vec![LaurentPoly::zero(); r + 1];
        for k in 0..=r {
            if k >= 1 {
                next[k] = &next[k] + &row[k - 1];
            }
            if k < r {
                next[k] = &next[k] + &row[k].clone().shifted(Exp::new(0, 2 * k as i32, 0));
            }
        }
        row = next;
    }
    row[m as usize].clone().shifted(Exp::new(0, -(m * (n - m)) as i32, 0))
}

/// `(x - x^-1) / (q^{l+1} - q^{-l-1})` for the monomial `x`.
fn ratio(a: i64, q: i64, s: i64, l: i64) -> QScalar {
    QScalar::new(mono(1, a, q, s) - mono(1, -a, -q, -s), [((l + 1) as u32, 1)])
}

/// `{m brack n}_a`.
pub fn a_binomial(m: i64, n: i64) -> QScalar {
    (0..n).fold(QScalar::one(), |acc, l| acc.mul_ref(&ratio(1, m - l, 0, l)))
}

fn up_product(count: i64, j: i64) -> QScalar {
    (0..count).fold(QScalar::one(), |acc, l| acc.mul_ref(&ratio(1, -j - l, -1, l)))
}

fn op_product(count: i64, j: i64) -> QScalar {
    (0..count).fold(QScalar::one(), |acc, l| acc.mul_ref(&ratio(0, j - l, 1, l)))
}

/// Reduced closure of basis element `k`.
pub fn closure(f: Fam, j: i64, k: i64) -> QScalar {
    match f {
        Fam::Up => a_binomial(-k, j - k).mul_ref(&up_product(k, j)),
        Fam::Op => a_binomial(-k, j - k).mul_ref(&op_product(k, j)),
        Fam::Ri => a_binomial(k - j, k).mul_ref(&up_product(j - k, j)),
        Fam::Ops => a_binomial(k - j, k).mul_ref(&op_product(j - k, j)),
        Fam::Ups | Fam::Ris => panic!("no closure formula for {f:?}"),
    }
}

/// Adds every path `i_1, ..., i_n` of the multi-sum below `prefix`.
fn sum_paths(
    word: &[Twist],
    fam: Fam,
    j: i64,
    k: i64,
    prefix: &LaurentPoly,
    close_as: &dyn Fn(Fam) -> Fam,
    out: &mut QScalar,
) {
    let Some((&op, rest)) = word.split_first() else {
        let fam = close_as(fam);
        *out = out.add_ref(&closure(fam, j, k).mul_poly(prefix));
        return;
    };
    let r = rule(op, fam);
    let range = match op {
        Twist::T => k..=j,
        Twist::R => 0..=k,
    };
    for h in range {
        let [ea, es, eq] = (r.mono)(j, h, k);
        let (n, m) = match op {
            Twist::T => (h, k),
            Twist::R => (j - h, k - h),
        };
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let term = pascal_qbinom(n, m).mul_ref(&mono(sign, ea, eq, es));
        sum_paths(rest, r.target, j, h, &prefix.mul_ref(&term), close_as, out);
    }
}

fn fam_of(start: Start) -> Fam {
    match start {
        Start::Up => Fam::Up,
        Start::Op => Fam::Op,
    }
}

/// The unnormalized multi-sum for `link` at color `j`: symbolic in `s` for
/// links, at `s = 1` with `UPs = UP`, `RIs = RI` before closing for knots.
pub fn nested_sum(link: &TwoBridgeLink, j: u32, start: Start) -> QScalar {
    let (word, _) = effective_word(link, start);
    let knot = link.is_knot();
    let close_as = move |f: Fam| match (knot, f) {
        (true, Fam::Ups) => Fam::Up,
        (true, Fam::Ris) => Fam::Ri,
        (_, f) => f,
    };
    let mut out = QScalar::zero();
    sum_paths(&word, fam_of(start), j as i64, 0, &LaurentPoly::one(), &close_as, &mut out);
    if knot {
        out.substitute(&Substitution::s_to_one()).unwrap()
    } else {
        out
    }
}
