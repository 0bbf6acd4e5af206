use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent triple of a monomial `a^a s^s q^q`.
///
/// Field order is the canonical term order: lexicographic on `(a, s, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exp {
    pub a: i32,
    pub s: i32,
    pub q: i32,
}

impl Exp {
    pub const ZERO: Exp = Exp { a: 0, s: 0, q: 0 };

    pub fn new(a: i32, q: i32, s: i32) -> Self {
        Exp { a, s, q }
    }

    #[inline]
    pub(crate) fn shifted(self, by: Exp) -> Exp {
        Exp {
            a: self.a + by.a,
            s: self.s + by.s,
            q: self.q + by.q,
        }
    }
}

/// Sparse Laurent polynomial in `a`, `q`, `s` with big-integer coefficients.
///
/// Terms are kept sorted by [`Exp`] with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Exp, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Exp::ZERO)
    }

    pub fn monomial(c: impl Into<BigInt>, e: Exp) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `c * a^a q^q s^s`
    pub fn mono(c: i64, a: i32, q: i32, s: i32) -> Self {
        Self::monomial(c, Exp::new(a, q, s))
    }

    pub fn var_a() -> Self {
        Self::mono(1, 1, 0, 0)
    }

    pub fn var_q() -> Self {
        Self::mono(1, 0, 1, 0)
    }

    pub fn var_s() -> Self {
        Self::mono(1, 0, 0, 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exp, BigInt)>,
    {
        let mut acc: HashMap<Exp, BigInt> = HashMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(acc)
    }

    /// Wraps terms already sorted by exponent with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Exp, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        LaurentPoly { terms }
    }

    fn from_map(acc: HashMap<Exp, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|x| x.0);
        LaurentPoly { terms }
    }

    /// Univariate polynomial in q from `(exponent, coefficient)` pairs.
    pub fn from_q_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, i64)>,
    {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Exp::new(0, e, 0), BigInt::from(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Exp::ZERO && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Exp, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exp, BigInt)> {
        self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, e: Exp) -> BigInt {
        match self.terms.binary_search_by(|t| t.0.cmp(&e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Term with the smallest exponent in `(a, s, q)` order.
    pub fn lowest_term(&self) -> Option<&(Exp, BigInt)> {
        self.terms.first()
    }

    pub fn min_exp(&self) -> Option<Exp> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |m, (e, _)| Exp {
            a: m.a.min(e.a),
            s: m.s.min(e.s),
            q: m.q.min(e.q),
        }))
    }

    pub fn max_exp(&self) -> Option<Exp> {
        let mut it = self.terms.iter();
        let first = it.next()?.0;
        Some(it.fold(first, |m, (e, _)| Exp {
            a: m.a.max(e.a),
            s: m.s.max(e.s),
            q: m.q.max(e.q),
        }))
    }

    pub fn involves_a(&self) -> bool {
        self.terms.iter().any(|(e, _)| e.a != 0)
    }

    pub fn involves_s(&self) -> bool {
        self.terms.iter().any(|(e, _)| e.s != 0)
    }

    /// Multiplies in place by the monomial `a^by.a s^by.s q^by.q`.
    pub fn shift_in_place(&mut self, by: Exp) {
        for (e, _) in &mut self.terms {
            *e = e.shifted(by);
        }
    }

    pub fn shifted(mut self, by: Exp) -> Self {
        self.shift_in_place(by);
        self
    }

    pub fn negate_in_place(&mut self) {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// `self += other`, by a linear merge.
    pub fn add_assign_ref(&mut self, other: &LaurentPoly) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = other.terms.clone();
            return;
        }
        let mine = std::mem::take(&mut self.terms);
        self.terms = merge(mine, other.terms.iter().map(|(e, c)| (*e, c.clone())));
    }

    /// `self += other`, consuming `other`.
    pub fn add_assign_owned(&mut self, other: LaurentPoly) {
        if self.is_zero() {
            self.terms = other.terms;
            return;
        }
        let mine = std::mem::take(&mut self.terms);
        self.terms = merge(mine, other.terms.into_iter());
    }

    /// `self += c * m * other` where `m` is the monomial with exponent `by`.
    pub fn add_scaled_shifted(&mut self, other: &LaurentPoly, c: &BigInt, by: Exp) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let mine = std::mem::take(&mut self.terms);
        let unit = c.is_one();
        let neg_unit = !unit && (-c).is_one();
        self.terms = merge(
            mine,
            other.terms.iter().map(|(e, x)| {
                let v = if unit {
                    x.clone()
                } else if neg_unit {
                    -x
                } else {
                    x * c
                };
                (e.shifted(by), v)
            }),
        );
    }

    /// Multiplication. Uses a dense machine-integer accumulator when the
    /// coefficients are small enough and the product's exponent box is not
    /// too sparse; otherwise repeated merges for tiny factors and a hash
    /// accumulator for the rest.
    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(p) = self.mul_dense_small(other) {
            return p;
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() <= 4 {
            let mut out = LaurentPoly::zero();
            for (e, c) in &small.terms {
                out.add_scaled_shifted(big, c, *e);
            }
            return out;
        }
        let mut acc: HashMap<Exp, BigInt> = HashMap::with_capacity(big.len() * 2);
        for (ex, cx) in &small.terms {
            for (ey, cy) in &big.terms {
                let e = ex.shifted(*ey);
                match acc.get_mut(&e) {
                    Some(v) => *v += cx * cy,
                    None => {
                        acc.insert(e, cx * cy);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    /// Coefficients as `i128` together with the largest bit length.
    fn small_coeffs(&self) -> Option<(Vec<i128>, u64)> {
        let mut bits = 0;
        let v = self
            .terms
            .iter()
            .map(|(_, c)| {
                bits = bits.max(c.bits());
                c.to_i128()
            })
            .collect::<Option<Vec<i128>>>()?;
        Some((v, bits))
    }

    fn mul_dense_small(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        let (lo_x, hi_x) = (self.min_exp()?, self.max_exp()?);
        let (lo_y, hi_y) = (other.min_exp()?, other.max_exp()?);
        let span = |l: i32, h: i32| (h - l) as u64 + 1;
        let (na, ns, nq) = (
            span(lo_x.a + lo_y.a, hi_x.a + hi_y.a),
            span(lo_x.s + lo_y.s, hi_x.s + hi_y.s),
            span(lo_x.q + lo_y.q, hi_x.q + hi_y.q),
        );
        let cells = na.checked_mul(ns)?.checked_mul(nq)?;
        let pairs = (self.len() as u64).saturating_mul(other.len() as u64);
        if cells > (1 << 24) || cells > pairs.saturating_mul(8).max(1 << 12) {
            return None;
        }
        let (cx, bx) = self.small_coeffs()?;
        let (cy, by) = other.small_coeffs()?;
        let n = self.len().min(other.len()) as u64;
        // Each cell sums at most n products.
        if bx + by + (64 - n.leading_zeros() as u64) > 126 {
            return None;
        }
        let base = lo_x.shifted(lo_y);
        let index = |e: Exp| -> usize {
            (((e.a - base.a) as u64 * ns + (e.s - base.s) as u64) * nq + (e.q - base.q) as u64)
                as usize
        };
        let mut acc = vec![0i128; cells as usize];
        for ((ex, _), &x) in self.terms.iter().zip(&cx) {
            for ((ey, _), &y) in other.terms.iter().zip(&cy) {
                acc[index(ex.shifted(*ey))] += x * y;
            }
        }
        let mut terms = Vec::new();
        for (i, &v) in acc.iter().enumerate() {
            if v != 0 {
                let i = i as u64;
                let e = Exp::new(
                    base.a + (i / (ns * nq)) as i32,
                    base.q + (i % nq) as i32,
                    base.s + ((i / nq) % ns) as i32,
                );
                terms.push((e, BigInt::from(v)));
            }
        }
        Some(LaurentPoly::from_sorted_unchecked(terms))
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Multiplies by the balanced factor `q^l - q^-l`.
    pub fn mul_quantum_factor(&self, l: u32) -> LaurentPoly {
        let l = l as i32;
        let mut out = self.clone().shifted(Exp::new(0, l, 0));
        out.add_scaled_shifted(self, &BigInt::from(-1), Exp::new(0, -l, 0));
        out
    }

    /// Exact division by `q^l - q^-l`; `None` when a remainder is left.
    pub fn exact_div_by_quantum(&self, l: u32) -> Option<LaurentPoly> {
        assert!(l >= 1, "quantum factor index must be positive");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let l = l as i64;
        let step = (2 * l) as usize;
        let mut out: Vec<(Exp, BigInt)> = Vec::with_capacity(self.terms.len());
        // Terms sharing (a, s) are contiguous and sorted by q.
        let mut start = 0;
        while start < self.terms.len() {
            let key = (self.terms[start].0.a, self.terms[start].0.s);
            let mut end = start;
            while end < self.terms.len() && (self.terms[end].0.a, self.terms[end].0.s) == key {
                end += 1;
            }
            let block = &self.terms[start..end];
            let lo = block[0].0.q as i64;
            let hi = block[block.len() - 1].0.q as i64;
            let span = (hi - lo + 1) as usize;
            if span <= step {
                return None;
            }
            let mut dense = vec![BigInt::zero(); span];
            for (e, c) in block {
                dense[(e.q as i64 - lo) as usize] = c.clone();
            }
            // p = r * (q^{2l} - 1): r_e = r_{e-2l} - p_e, for e up to hi - 2l.
            let qlen = span - step;
            let mut r: Vec<BigInt> = Vec::with_capacity(qlen);
            for idx in 0..qlen {
                let prev = if idx >= step { r[idx - step].clone() } else { BigInt::zero() };
                r.push(prev - &dense[idx]);
            }
            for (idx, expected) in dense.iter().enumerate().skip(qlen) {
                let ok = if idx >= step {
                    &r[idx - step] == expected
                } else {
                    expected.is_zero()
                };
                if !ok {
                    return None;
                }
            }
            // p / (q^l - q^-l) = q^l * r
            for (idx, c) in r.into_iter().enumerate() {
                if !c.is_zero() {
                    let q = (lo + idx as i64 + l) as i32;
                    out.push((Exp { a: key.0, s: key.1, q }, c));
                }
            }
            start = end;
        }
        Some(LaurentPoly { terms: out })
    }

    /// Applies `e -> f(e)` and a per-term sign to every exponent, then resorts.
    pub fn map_terms<F>(&self, f: F) -> LaurentPoly
    where
        F: Fn(Exp) -> (Exp, bool),
    {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let (e2, negate) = f(*e);
            (e2, if negate { -c } else { c.clone() })
        }))
    }

    /// `s -> 1`.
    pub fn eval_s_one(&self) -> LaurentPoly {
        self.map_terms(|e| (Exp { s: 0, ..e }, false))
    }

    /// Content: gcd of all coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides every coefficient exactly by `d`.
    pub fn div_exact_scalar(&self, d: &BigInt) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    debug_assert!((c % d).is_zero());
                    (*e, c / d)
                })
                .collect(),
        }
    }

    /// Exact division in the Laurent ring; `None` if `d` does not divide.
    ///
    /// Long division on lexicographic leading terms. The quotient's
    /// exponents are confined to the box `[min(self) - min(d), max(self) -
    /// max(d)]`, so a leading quotient term outside it proves a remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_monomial() {
            let (e, c) = &d.terms[0];
            if self.terms.iter().any(|(_, x)| !(x % c).is_zero()) {
                return None;
            }
            let neg = Exp::new(-e.a, -e.q, -e.s);
            return Some(LaurentPoly {
                terms: self.terms.iter().map(|(x, v)| (x.shifted(neg), v / c)).collect(),
            });
        }
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let qlo = Exp::new(lo.a - dlo.a, lo.q - dlo.q, lo.s - dlo.s);
        let qhi = Exp::new(hi.a - dhi.a, hi.q - dhi.q, hi.s - dhi.s);
        if qlo.a > qhi.a || qlo.q > qhi.q || qlo.s > qhi.s {
            return None;
        }
        let (lead_e, lead_c) = d.terms.last().unwrap().clone();
        let mut rem: std::collections::BTreeMap<Exp, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((&e, c)) = rem.iter().next_back() {
            if !(c % &lead_c).is_zero() {
                return None;
            }
            let qe = Exp::new(e.a - lead_e.a, e.q - lead_e.q, e.s - lead_e.s);
            if qe.a < qlo.a || qe.a > qhi.a || qe.q < qlo.q || qe.q > qhi.q || qe.s < qlo.s || qe.s > qhi.s {
                return None;
            }
            let qc = c / &lead_c;
            for (de, dc) in &d.terms {
                let key = de.shifted(qe);
                let v = rem.entry(key).or_default();
                *v -= &qc * dc;
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((qe, qc));
        }
        quotient.reverse();
        Some(LaurentPoly { terms: quotient })
    }
}

fn merge<I>(mine: Vec<(Exp, BigInt)>, other: I) -> Vec<(Exp, BigInt)>
where
    I: Iterator<Item = (Exp, BigInt)>,
{
    let mut out = Vec::with_capacity(mine.len() + other.size_hint().0);
    let mut a = mine.into_iter().peekable();
    let mut b = other.peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (e, mut c) = a.next().unwrap();
                c += b.next().unwrap().1;
                if !c.is_zero() {
                    out.push((e, c));
                }
            }
        }
    }
    out
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &BigInt::from(-1), Exp::ZERO);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_owned(rhs);
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_owned(-rhs);
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        self.negate_in_place();
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: Exp) -> fmt::Result {
    let mut first = true;
    for (name, x) in [("a", e.a), ("q", e.q), ("s", e.s)] {
        if x == 0 {
            continue;
        }
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        if x == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{x}")?;
        }
    }
    Ok(())
}

/// Text form: terms in `(a, s, q)` order, e.g. `-a^-1 q + 2 q^2 s`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == Exp::ZERO {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs} ")?;
                }
                write_monomial(f, *e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
