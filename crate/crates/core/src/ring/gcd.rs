//! Polynomial gcd in `Z[a^±1, s^±1, q^±1]`.
//!
//! The heuristic gcd evaluates one variable at a large integer, recurses,
//! and rebuilds the candidate from its balanced digits; a candidate that
//! divides both inputs is the gcd. Recursive primitive pseudo-remainder
//! sequences are the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{Exp, LaurentPoly};

/// Variable order: main variable first.
const VARS: [Var; 3] = [Var::Q, Var::A, Var::S];

#[derive(Clone, Copy)]
enum Var {
    A,
    S,
    Q,
}

impl Var {
    fn get(self, e: Exp) -> i32 {
        match self {
            Var::A => e.a,
            Var::S => e.s,
            Var::Q => e.q,
        }
    }

    fn unit(self, k: i32) -> Exp {
        match self {
            Var::A => Exp::new(k, 0, 0),
            Var::S => Exp::new(0, 0, k),
            Var::Q => Exp::new(0, k, 0),
        }
    }
}

impl LaurentPoly {
    /// Greatest common divisor up to units `±monomial`, normalized to have
    /// minimal exponents zero and a positive lexicographically leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let g = match (self.is_zero(), other.is_zero()) {
            (true, true) => return LaurentPoly::zero(),
            (true, false) => other.clone(),
            (false, true) => self.clone(),
            (false, false) => heuristic_gcd(&lift(self), &lift(other), &VARS)
                .unwrap_or_else(|| gcd_rec(&lift(self), &lift(other), &VARS)),
        };
        normalize_unit(lift(&g))
    }
}

/// Shifts so every minimal exponent is zero.
fn lift(p: &LaurentPoly) -> LaurentPoly {
    match p.min_exp() {
        Some(lo) => p.clone().shifted(Exp::new(-lo.a, -lo.q, -lo.s)),
        None => LaurentPoly::zero(),
    }
}

fn normalize_unit(mut p: LaurentPoly) -> LaurentPoly {
    if p.terms().last().is_some_and(|(_, c)| c.is_negative()) {
        p.negate_in_place();
    }
    p
}

/// Coefficients of `v^0, v^1, ...` for `p` up to a monomial.
fn coeffs_in(p: &LaurentPoly, v: Var) -> Vec<LaurentPoly> {
    let p = &lift(p);
    let deg = p.terms().iter().map(|(e, _)| v.get(*e)).max().unwrap_or(0) as usize;
    let mut parts: Vec<Vec<(Exp, BigInt)>> = vec![Vec::new(); deg + 1];
    for (e, c) in p.terms() {
        let k = v.get(*e);
        parts[k as usize].push((e.shifted(v.unit(-k)), c.clone()));
    }
    parts.into_iter().map(LaurentPoly::from_terms).collect()
}

fn from_coeffs(cs: &[LaurentPoly], v: Var) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (k, c) in cs.iter().enumerate() {
        out.add_assign_owned(c.clone().shifted(v.unit(k as i32)));
    }
    out
}

fn trim(cs: &mut Vec<LaurentPoly>) {
    while cs.len() > 1 && cs.last().is_some_and(LaurentPoly::is_zero) {
        cs.pop();
    }
}

fn max_norm(p: &LaurentPoly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn involves(p: &LaurentPoly, v: Var) -> bool {
    p.terms().iter().any(|(e, _)| v.get(*e) != 0)
}

/// `p` with `v = xi`.
fn evaluate(p: &LaurentPoly, v: Var, xi: &BigInt) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().iter().map(|(e, c)| {
        let k = v.get(*e);
        (e.shifted(v.unit(-k)), c * xi.pow(k as u32))
    }))
}

/// Balanced residue of `c` modulo `m`, in `(-m/2, m/2]`.
fn balanced_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Heuristic gcd of polynomials with nonnegative exponents; `None` when
/// every evaluation point was unlucky.
fn heuristic_gcd(f: &LaurentPoly, g: &LaurentPoly, vars: &[Var]) -> Option<LaurentPoly> {
    let Some(pos) = vars.iter().position(|&v| involves(f, v) || involves(g, v)) else {
        return Some(LaurentPoly::constant(f.content().gcd(&g.content())));
    };
    let (v, rest) = (vars[pos], &vars[pos + 1..]);
    let (cf, cg) = (f.content(), g.content());
    let int_gcd = LaurentPoly::constant(cf.gcd(&cg));
    let (f, g) = (&f.div_exact_scalar(&cf), &g.div_exact_scalar(&cg));
    let mut xi = BigInt::from(2) * max_norm(f).min(max_norm(g)) + 29;
    for _ in 0..6 {
        let fe = evaluate(f, v, &xi);
        let ge = evaluate(g, v, &xi);
        if !fe.is_zero() && !ge.is_zero() {
            if let Some(gamma) = heuristic_gcd(&lift(&fe), &lift(&ge), rest) {
                let candidate = rebuild(gamma, v, &xi);
                let candidate = lift(&candidate.div_exact_scalar(&candidate.content()));
                if f.div_exact(&candidate).is_some() && g.div_exact(&candidate).is_some() {
                    return Some(candidate.mul_ref(&int_gcd));
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// The polynomial in `v` whose balanced base-`xi` digits are `gamma`.
fn rebuild(mut gamma: LaurentPoly, v: Var, xi: &BigInt) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut k = 0;
    while !gamma.is_zero() {
        let digit = LaurentPoly::from_terms(gamma.terms().iter().map(|(e, c)| (*e, balanced_mod(c, xi))));
        out.add_assign_owned(digit.clone().shifted(v.unit(k)));
        gamma = (gamma - digit).div_exact_scalar(xi);
        k += 1;
    }
    out
}

/// gcd up to units; monomials are units in the Laurent ring.
fn gcd_rec(f: &LaurentPoly, g: &LaurentPoly, vars: &[Var]) -> LaurentPoly {
    let Some((&v, rest)) = vars.split_first() else {
        let c = f.content().gcd(&g.content());
        return LaurentPoly::constant(c);
    };
    let cf = coeffs_in(f, v);
    let cg = coeffs_in(g, v);
    let content_f = content(&cf, rest);
    let content_g = content(&cg, rest);
    let cont = gcd_rec(&content_f, &content_g, rest);
    let mut a: Vec<LaurentPoly> = cf.iter().map(|c| c.div_exact(&content_f).unwrap()).collect();
    let mut b: Vec<LaurentPoly> = cg.iter().map(|c| c.div_exact(&content_g).unwrap()).collect();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let pp = loop {
        if b.len() == 1 {
            break vec![LaurentPoly::one()];
        }
        let mut r = pseudo_remainder(&a, &b);
        if r.iter().all(LaurentPoly::is_zero) {
            break b;
        }
        let c = content(&r, rest);
        for x in &mut r {
            *x = x.div_exact(&c).unwrap();
        }
        a = std::mem::replace(&mut b, r);
    };
    from_coeffs(&pp, v).mul_ref(&cont)
}

/// gcd of the coefficients, in the remaining variables.
fn content(cs: &[LaurentPoly], rest: &[Var]) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in cs.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.clone() } else { gcd_rec(&g, c, rest) };
        if g.is_monomial() && g.terms()[0].1.is_one() {
            break;
        }
    }
    g
}

/// Remainder of `lc(b)^k a` by `b`, both as coefficient vectors.
fn pseudo_remainder(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for x in &mut r {
            *x = x.mul_ref(lc);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul_ref(&lead);
            r[dr - db + i] = &r[dr - db + i] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
    }
    r
}
