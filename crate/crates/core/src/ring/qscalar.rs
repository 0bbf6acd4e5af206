use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::{Exp, LaurentPoly};
use crate::Error;

/// Element of `Z[a^±1, s^±1](q)` whose denominator is a product of balanced
/// factors `q^l - q^-l`.
///
/// `den` maps `l` to its multiplicity. Every constructor normalizes: a zero
/// numerator has an empty denominator, and no remaining factor divides the
/// numerator exactly (factors are tried from the largest `l` down).
#[derive(Clone, Default)]
pub struct QScalar {
    num: LaurentPoly,
    den: BTreeMap<u32, u32>,
}

/// Target of a monomial substitution: `sign * q^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QMonomial {
    pub negative: bool,
    pub exp: i32,
}

impl QMonomial {
    pub fn q_pow(exp: i32) -> Self {
        QMonomial { negative: false, exp }
    }
}

/// Simultaneous substitution `a -> ±q^m`, `s -> ±q^m`, `q -> q^-1`.
/// Unset entries are left alone.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub a: Option<QMonomial>,
    pub s: Option<QMonomial>,
    pub invert_q: bool,
}

impl Substitution {
    pub fn s_to_one() -> Self {
        Substitution {
            s: Some(QMonomial::q_pow(0)),
            ..Default::default()
        }
    }

    pub fn s_to_q_pow(m: i32) -> Self {
        Substitution {
            s: Some(QMonomial::q_pow(m)),
            ..Default::default()
        }
    }

    pub fn a_to_q_pow(m: i32) -> Self {
        Substitution {
            a: Some(QMonomial::q_pow(m)),
            ..Default::default()
        }
    }

    pub fn invert_q() -> Self {
        Substitution {
            invert_q: true,
            ..Default::default()
        }
    }

    pub fn apply_to_poly(&self, p: &LaurentPoly) -> LaurentPoly {
        p.map_terms(|e| {
            let mut out = Exp { a: e.a, s: e.s, q: if self.invert_q { -e.q } else { e.q } };
            let mut negate = false;
            if let Some(m) = self.a {
                out.q += m.exp * e.a;
                out.a = 0;
                negate ^= m.negative && e.a.rem_euclid(2) == 1;
            }
            if let Some(m) = self.s {
                out.q += m.exp * e.s;
                out.s = 0;
                negate ^= m.negative && e.s.rem_euclid(2) == 1;
            }
            (out, negate)
        })
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        QScalar { num, den: BTreeMap::new() }
    }

    /// `num / prod_l (q^l - q^-l)^mult`, normalized.
    ///
    /// Panics on a factor with `l = 0`: such a factor is identically zero.
    pub fn new<I>(num: LaurentPoly, den: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut map = BTreeMap::new();
        for (l, m) in den {
            assert!(l >= 1, "zero denominator factor q^0 - q^0");
            if m > 0 {
                *map.entry(l).or_insert(0) += m;
            }
        }
        let mut x = QScalar { num, den: map };
        x.normalize();
        x
    }

    /// Builds a value from stored parts without simplifying. Used by the
    /// deserializer, which must reproduce its input exactly.
    fn from_parts_unchecked(num: LaurentPoly, den: BTreeMap<u32, u32>) -> Self {
        QScalar { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn involves_s(&self) -> bool {
        self.num.involves_s()
    }

    /// Trial-divides the numerator by each denominator factor, largest first.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let ls: Vec<u32> = self.den.keys().rev().copied().collect();
        for l in ls {
            loop {
                let mult = self.den[&l];
                if mult == 0 {
                    break;
                }
                match self.num.exact_div_by_quantum(l) {
                    Some(quot) => {
                        self.num = quot;
                        if mult == 1 {
                            self.den.remove(&l);
                            break;
                        }
                        self.den.insert(l, mult - 1);
                    }
                    None => break,
                }
            }
        }
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    fn scaled_num_to(&self, target: &BTreeMap<u32, u32>) -> LaurentPoly {
        let mut num = self.num.clone();
        for (&l, &m) in target {
            let have = self.den.get(&l).copied().unwrap_or(0);
            for _ in have..m {
                num = num.mul_quantum_factor(l);
            }
        }
        num
    }

    fn union_den(x: &BTreeMap<u32, u32>, y: &BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
        let mut out = x.clone();
        for (&l, &m) in y {
            let e = out.entry(l).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    pub fn add_ref(&self, other: &QScalar) -> QScalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let mut num = self.num.clone();
            num.add_assign_ref(&other.num);
            return QScalar { num, den: self.den.clone() }.normalized();
        }
        let den = Self::union_den(&self.den, &other.den);
        let mut num = self.scaled_num_to(&den);
        num.add_assign_owned(other.scaled_num_to(&den));
        QScalar { num, den }.normalized()
    }

    pub fn sub_ref(&self, other: &QScalar) -> QScalar {
        self.add_ref(&-other)
    }

    pub fn mul_ref(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return QScalar::zero();
        }
        let mut den = self.den.clone();
        for (&l, &m) in &other.den {
            *den.entry(l).or_insert(0) += m;
        }
        QScalar { num: self.num.mul_ref(&other.num), den }.normalized()
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> QScalar {
        QScalar { num: self.num.mul_ref(p), den: self.den.clone() }.normalized()
    }

    pub fn shifted(&self, by: Exp) -> QScalar {
        QScalar { num: self.num.clone().shifted(by), den: self.den.clone() }
    }

    pub fn pow(&self, n: u32) -> QScalar {
        let mut out = QScalar::one();
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }

    /// Exact substitution. Under `q -> q^-1` each balanced factor changes
    /// sign, which is moved into the numerator.
    pub fn substitute(&self, sub: &Substitution) -> Result<QScalar, Error> {
        let mut num = sub.apply_to_poly(&self.num);
        if sub.invert_q {
            let flips: u32 = self.den.values().sum();
            if flips % 2 == 1 {
                num.negate_in_place();
            }
        }
        // Denominators only involve q, and q is sent to q^{±1}, so no factor
        // can vanish here.
        if self.den.keys().any(|&l| l == 0) {
            return Err(Error::ZeroDenominator);
        }
        Ok(QScalar { num, den: self.den.clone() }.normalized())
    }

    /// Sum of `l * mult` over the denominator: the q-valuation lost to the
    /// balanced factors, whose lowest term is `-q^-l`.
    fn den_q_valuation(&self) -> i32 {
        self.den.iter().map(|(&l, &m)| (l * m) as i32).sum()
    }

    /// Rescales by the unique signed monomial that puts the value in
    /// canonical position.
    ///
    /// The numerator gets minimal a- and s-exponents 0. For q the q-adic
    /// valuation of the whole fraction is set to 0, which for an empty
    /// denominator means the numerator's minimal q-exponent is 0. The sign is
    /// chosen so the lowest term of the fraction, expanded as a Laurent
    /// series in q, is positive. Both rules depend only on the value, not on
    /// how the fraction happens to be written.
    pub fn canonicalize(&self) -> Result<QScalar, Error> {
        let (shift, negate) = self.canonical_unit()?;
        let mut out = self.shifted(shift);
        if negate {
            out.num.negate_in_place();
        }
        Ok(out)
    }

    /// Exponent shift and sign flip that [`canonicalize`](Self::canonicalize) applies.
    pub fn canonical_unit(&self) -> Result<(Exp, bool), Error> {
        let min = self.num.min_exp().ok_or(Error::CanonicalizeZero)?;
        let shift = Exp {
            a: -min.a,
            s: -min.s,
            q: -(min.q + self.den_q_valuation()),
        };
        // Lowest term in (a, s, q) order: among terms with minimal a, then
        // minimal s, the minimal q. Its coefficient in the series expansion is
        // the numerator coefficient times (-1)^{number of factors}.
        let lowest = self
            .num
            .lowest_term()
            .expect("nonzero numerator has a lowest term");
        let flips: u32 = self.den.values().sum();
        let negative = lowest.1.is_negative() ^ (flips % 2 == 1);
        Ok((shift, negative))
    }

    /// `(a, q) -> (a^-1, q^-1)`, the effect of mirroring on a knot invariant.
    pub fn mirrored(&self) -> QScalar {
        let flipped = self.substitute(&Substitution::invert_q()).expect("q inversion keeps denominators nonzero");
        let num = flipped.num.map_terms(|e| (Exp { a: -e.a, ..e }, false));
        QScalar::new(num, flipped.den.iter().map(|(&l, &m)| (l, m)))
    }

    pub fn is_signed_monomial(&self) -> bool {
        self.den.is_empty() && self.num.is_monomial()
    }
}

impl PartialEq for QScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        let den = Self::union_den(&self.den, &other.den);
        self.scaled_num_to(&den) == other.scaled_num_to(&den)
    }
}

impl Eq for QScalar {}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        QScalar::from_poly(p)
    }
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        self.add_ref(rhs)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self.sub_ref(rhs)
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(mut self) -> QScalar {
        self.num.negate_in_place();
        self
    }
}

/// Text form: `num`, or `(num) / [1]^2 [3]` where `[l]` stands for the
/// balanced factor `q^l - q^-l`.
impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) /", self.num)?;
        for (&l, &m) in &self.den {
            if m == 1 {
                write!(f, " [{l}]")?;
            } else {
                write!(f, " [{l}]^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

mod wire {
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    pub struct Term {
        pub a: i32,
        pub q: i32,
        pub s: i32,
        pub c: String,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Factor {
        pub l: u32,
        pub mult: u32,
    }

    #[derive(Serialize, Deserialize)]
    pub struct Scalar {
        pub num: Vec<Term>,
        pub den: Vec<Factor>,
    }
}

impl serde::Serialize for QScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let w = wire::Scalar {
            num: self
                .num
                .terms()
                .iter()
                .map(|(e, c)| wire::Term { a: e.a, q: e.q, s: e.s, c: c.to_string() })
                .collect(),
            den: self
                .den
                .iter()
                .map(|(&l, &mult)| wire::Factor { l, mult })
                .collect(),
        };
        w.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for QScalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = wire::Scalar::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(w.num.len());
        let mut prev: Option<Exp> = None;
        for t in w.num {
            let e = Exp::new(t.a, t.q, t.s);
            if prev.is_some_and(|p| p >= e) {
                return Err(D::Error::custom("terms must be strictly sorted by (a, s, q)"));
            }
            prev = Some(e);
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.c)))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            terms.push((e, c));
        }
        let mut den = BTreeMap::new();
        let mut prev_l = 0;
        for f in w.den {
            if f.l == 0 || f.mult == 0 {
                return Err(D::Error::custom("denominator factors need l >= 1 and mult >= 1"));
            }
            if f.l <= prev_l {
                return Err(D::Error::custom("denominator factors must be sorted by l"));
            }
            prev_l = f.l;
            den.insert(f.l, f.mult);
        }
        let num = LaurentPoly::from_terms(terms);
        if num.is_zero() && !den.is_empty() {
            return Err(D::Error::custom("zero numerator with a denominator"));
        }
        Ok(QScalar::from_parts_unchecked(num, den))
    }
}

impl QScalar {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("QScalar serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Number of numerator terms; a rough size measure.
    pub fn num_terms(&self) -> usize {
        self.num.len()
    }

}
