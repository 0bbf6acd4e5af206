//! Evaluation of the reduced colored invariant by twist operators acting on
//! the rank `j + 1` skein module of a four-ended tangle.
//!
//! A [`SkeinState`] is a coefficient vector over one of six basis families.
//! Each [`Twist`] maps a family to another by a triangular matrix whose
//! entries are a signed monomial times a balanced q-binomial; [`close`]
//! evaluates the closure of every basis element.

use std::fmt;

use num_bigint::BigInt;

use crate::qcomb::{
    abinom, binomial_factor, closure_numerator_exp, closure_s_factor, qbinom, unknot_colored,
    ClosureKind,
};
use crate::ring::{DensePoly, Exp, LaurentPoly, QScalar, Substitution};
use crate::twobridge::{ClosureType, TwoBridgeLink};
use crate::Error;

pub use crate::twobridge::Twist;

/// Basis family. The lower left endpoint is always incoming with color `i`.
///
/// `Up`: both strands upward. `Op`: opposite vertical orientations. `Ri`:
/// both strands left to right. The `s` variants carry the colors swapped on
/// the far side and coincide with the plain family when `i = j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Up,
    Ups,
    Op,
    Ops,
    Ri,
    Ris,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Up,
        Family::Ups,
        Family::Op,
        Family::Ops,
        Family::Ri,
        Family::Ris,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Up => "UP",
            Family::Ups => "UPs",
            Family::Op => "OP",
            Family::Ops => "OPs",
            Family::Ri => "RI",
            Family::Ris => "RIs",
        }
    }

    /// The closure that this family's basis elements admit.
    pub fn closure_type(self) -> ClosureType {
        match self {
            Family::Up | Family::Ups | Family::Op => ClosureType::TopBottom,
            Family::Ri | Family::Ris | Family::Ops => ClosureType::LeftRight,
        }
    }

    /// Opposite vertical orientations: closable either way when `i = j`.
    fn is_opposite(self) -> bool {
        matches!(self, Family::Op | Family::Ops)
    }

    /// Identification valid when both colors agree.
    fn knot_identified(self) -> Family {
        match self {
            Family::Ups => Family::Up,
            Family::Ris => Family::Ri,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orientation of the trivial tangle the evaluation starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Start {
    Up,
    Op,
}

impl Start {
    pub fn family(self) -> Family {
        match self {
            Start::Up => Family::Up,
            Start::Op => Family::Op,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Start::Up => "up",
            Start::Op => "op",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalize {
    Raw,
    Canonical,
}

/// Exponents `(a, s, q)` of the monomial in a twist rule, as functions of
/// `(j, h, k)`.
type ExpFn = fn(i64, i64, i64) -> [i64; 3];

/// One of the twelve twist rules
/// `X Source[k] = sum_h (-1)^h a^. s^. q^. [n m] Target[h]`.
#[derive(Clone, Copy)]
pub struct TwistRule {
    pub op: Twist,
    pub source: Family,
    pub target: Family,
    monomial: ExpFn,
}

impl TwistRule {
    /// Exponents `[a, s, q]` of the coefficient of `Target[h]` in the image of
    /// `Source[k]`.
    pub fn exponents(&self, j: i64, h: i64, k: i64) -> [i64; 3] {
        (self.monomial)(j, h, k)
    }

    /// Binomial `(n, m)`: `[h k]` for top twists, `[j-h k-h]` for right twists.
    pub fn binomial(&self, j: i64, h: i64, k: i64) -> (i64, i64) {
        match self.op {
            Twist::T => (h, k),
            Twist::R => (j - h, k - h),
        }
    }

    /// Range of `h` hit by `Source[k]`: `k..=j` for T, `0..=k` for R.
    pub fn targets(&self, j: i64, k: i64) -> std::ops::RangeInclusive<i64> {
        match self.op {
            Twist::T => k..=j,
            Twist::R => 0..=k,
        }
    }

    /// Full coefficient `(-1)^h a^. s^. q^. [n m]`.
    pub fn coefficient(&self, j: i64, h: i64, k: i64) -> LaurentPoly {
        let [ea, es, eq] = self.exponents(j, h, k);
        let (n, m) = self.binomial(j, h, k);
        let sign = if h % 2 == 0 { 1 } else { -1 };
        qbinom(n, m).shifted(Exp::new(ea as i32, eq as i32, es as i32)).scale(&BigInt::from(sign))
    }
}

/// The rule applying `op` to `source`.
pub fn twist_rule(op: Twist, source: Family) -> TwistRule {
    use Family::*;
    let (target, monomial): (Family, ExpFn) = match (op, source) {
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
    TwistRule { op, source, target, monomial }
}

/// Coefficient vector over one basis family at color `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinState {
    pub j: u32,
    pub family: Family,
    pub coeffs: Vec<LaurentPoly>,
}

impl SkeinState {
    /// The trivial tangle: basis element `k = 0` of the start family.
    pub fn initial(j: u32, start: Start) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); j as usize + 1];
        coeffs[0] = LaurentPoly::one();
        SkeinState { j, family: start.family(), coeffs }
    }

    /// Applies one twist. Cost is `O(j^2)` shift-and-add steps.
    pub fn apply_twist(&self, op: Twist) -> SkeinState {
        self.apply_twist_impl(op, false)
    }

    /// [`apply_twist`](Self::apply_twist) followed by `s -> 1`. Coefficients
    /// must already be free of `s`.
    pub fn apply_twist_s_one(&self, op: Twist) -> SkeinState {
        self.apply_twist_impl(op, true)
    }

    fn apply_twist_impl(&self, op: Twist, s_one: bool) -> SkeinState {
        let rule = twist_rule(op, self.family);
        let mut plan = TransformPlan::new(&rule, self.j as i64);
        if s_one {
            for e in plan.h_part.iter_mut().chain(plan.k_part.iter_mut()) {
                e.s = 0;
            }
        }
        let n = self.j as usize;
        // Inputs in transformed index order, premultiplied by the k-part.
        let mut x: Vec<LaurentPoly> = (0..=n)
            .map(|kt| {
                let k = plan.orig(kt as i64) as usize;
                self.coeffs[k].clone().shifted(plan.k_part[kt])
            })
            .collect();
        let b = gaussian_transform(&mut x, plan.q_step);
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        for (ht, mut v) in b.into_iter().enumerate() {
            let h = plan.orig(ht as i64);
            v.shift_in_place(plan.h_part[ht]);
            if h % 2 == 1 {
                v.negate_in_place();
            }
            coeffs[h as usize] = v;
        }
        SkeinState { j: self.j, family: rule.target, coeffs }
    }

    /// Applies one twist by multiplying out every rule coefficient. Same
    /// result as [`apply_twist`](Self::apply_twist) at `O(j^2)` polynomial
    /// products; kept as a cross-check.
    pub fn apply_twist_naive(&self, op: Twist) -> SkeinState {
        let rule = twist_rule(op, self.family);
        let j = self.j as i64;
        let mut coeffs = vec![LaurentPoly::zero(); self.j as usize + 1];
        for (k, old) in self.coeffs.iter().enumerate() {
            if old.is_zero() {
                continue;
            }
            for h in rule.targets(j, k as i64) {
                let term = rule.coefficient(j, h, k as i64).mul_ref(old);
                coeffs[h as usize].add_assign_owned(term);
            }
        }
        SkeinState { j: self.j, family: rule.target, coeffs }
    }

    pub fn apply_word<I: IntoIterator<Item = Twist>>(&self, word: I) -> SkeinState {
        word.into_iter().fold(self.clone(), |st, op| st.apply_twist(op))
    }

    /// `s -> 1` on every coefficient.
    pub fn with_s_one(&self) -> SkeinState {
        SkeinState {
            j: self.j,
            family: self.family,
            coeffs: self.coeffs.iter().map(LaurentPoly::eval_s_one).collect(),
        }
    }
}

/// Separation of a rule's coefficient into `h`-part, `k`-part and a
/// Gaussian binomial in transformed indices.
///
/// Top twists use `h~ = h, k~ = k`; right twists `h~ = j - h, k~ = j - k`,
/// turning `[j-h k-h]` into `[h~ k~]`. Writing the balanced binomial as
/// `q^{-e k~(h~-k~)} G_{q^{2e}}(h~, k~)` for the sign `e` that cancels the
/// cross term of the monomial leaves a coefficient `f(h~) g(k~) G(h~, k~)`.
struct TransformPlan {
    op: Twist,
    j: i64,
    q_step: i32,
    h_part: Vec<Exp>,
    k_part: Vec<Exp>,
}

impl TransformPlan {
    fn new(rule: &TwistRule, j: i64) -> Self {
        for eps in [1i64, -1] {
            if let Some(plan) = Self::try_sign(rule, j, eps) {
                return plan;
            }
        }
        panic!(
            "twist rule {:?} {} does not separate into h- and k-parts",
            rule.op, rule.source
        );
    }

    fn orig(&self, t: i64) -> i64 {
        match self.op {
            Twist::T => t,
            Twist::R => self.j - t,
        }
    }

    fn try_sign(rule: &TwistRule, j: i64, eps: i64) -> Option<Self> {
        let orig = |t: i64| match rule.op {
            Twist::T => t,
            Twist::R => j - t,
        };
        let total = |ht: i64, kt: i64| -> [i64; 3] {
            let [a, s, q] = rule.exponents(j, orig(ht), orig(kt));
            [a, s, q - eps * kt * (ht - kt)]
        };
        let h_part: Vec<[i64; 3]> = (0..=j).map(|ht| total(ht, 0)).collect();
        let base = total(j, 0);
        let k_part: Vec<[i64; 3]> = (0..=j)
            .map(|kt| {
                let t = total(j, kt);
                [t[0] - base[0], t[1] - base[1], t[2] - base[2]]
            })
            .collect();
        for ht in 0..=j {
            for kt in 0..=ht {
                let t = total(ht, kt);
                let (f, g) = (h_part[ht as usize], k_part[kt as usize]);
                if (0..3).any(|i| t[i] != f[i] + g[i]) {
                    return None;
                }
            }
        }
        let to_exp = |v: &[i64; 3]| Exp::new(v[0] as i32, v[2] as i32, v[1] as i32);
        Some(TransformPlan {
            op: rule.op,
            j,
            q_step: (2 * eps) as i32,
            h_part: h_part.iter().map(to_exp).collect(),
            k_part: k_part.iter().map(to_exp).collect(),
        })
    }
}

/// `b_h = sum_{k <= h} G_Q(h, k) x_k` for all `h`, with `Q = q^q_step`.
///
/// Uses `G(h,k) = G(h-1,k-1) + Q^k G(h-1,k)`: replacing `x_k` by
/// `x_{k+1} + Q^k x_k` lowers `h` by one, so `b_h` is `x_0` after `h` passes.
/// `x` is consumed as scratch space.
fn gaussian_transform(x: &mut [LaurentPoly], q_step: i32) -> Vec<LaurentPoly> {
    let n = x.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    out.push(x[0].clone());
    for t in 1..=n {
        for k in 0..=(n - t) {
            x[k].shift_in_place(Exp::new(0, q_step * k as i32, 0));
            let (lo, hi) = x.split_at_mut(k + 1);
            lo[k].add_assign_ref(&hi[0]);
        }
        out.push(x[0].clone());
    }
    out
}

fn closure_layout(family: Family) -> Option<(ClosureKind, bool)> {
    match family {
        Family::Up => Some((ClosureKind::UpType, false)),
        Family::Op => Some((ClosureKind::OpType, false)),
        Family::Ri => Some((ClosureKind::UpType, true)),
        Family::Ops => Some((ClosureKind::OpType, true)),
        Family::Ups | Family::Ris => None,
    }
}

/// Reduced closure of basis element `k` (the closure divided by the colored
/// unknot in the other color).
pub fn closure_factor(family: Family, j: u32, k: u32) -> Option<QScalar> {
    let (jj, kk) = (j as i64, k as i64);
    let v = match family {
        Family::Up => abinom(-kk, j - k).mul_ref(&closure_s_factor(ClosureKind::UpType, k, j)),
        Family::Op => abinom(-kk, j - k).mul_ref(&closure_s_factor(ClosureKind::OpType, k, j)),
        Family::Ri => abinom(kk - jj, k).mul_ref(&closure_s_factor(ClosureKind::UpType, j - k, j)),
        Family::Ops => abinom(kk - jj, k).mul_ref(&closure_s_factor(ClosureKind::OpType, j - k, j)),
        Family::Ups | Family::Ris => return None,
    };
    Some(v)
}

/// Closes the tangle and evaluates the reduced invariant.
///
/// Every reduced closure factor equals `N_k [j k] / F_j` with
/// `F_j = prod_{l=1}^{j} (q^l - q^-l)` and `N_k` a product of `j` two-term
/// factors: a suffix product `prod_{t=k}^{j-1} (a q^-t - a^-1 q^t)` and a
/// prefix product of closure factors. RI and OPs are UP and OP with `k`
/// replaced by `j - k`. The sum is accumulated Horner-style over the suffix.
pub fn close(state: &SkeinState) -> Result<QScalar, Error> {
    close_impl(state, false)
}

/// [`close`] followed by `s -> 1`, without ever forming the `s`-dependent sum.
pub fn close_s_one(state: &SkeinState) -> Result<QScalar, Error> {
    close_impl(state, true)
}

fn close_impl(state: &SkeinState, s_one: bool) -> Result<QScalar, Error> {
    let (kind, reversed) = closure_layout(state.family).ok_or_else(|| Error::UnclosableFamily {
        family: state.family.name().into(),
        cf: String::from("?"),
    })?;
    let j = state.j;
    let coeff = |k: u32| -> &LaurentPoly {
        if reversed {
            &state.coeffs[(j - k) as usize]
        } else {
            &state.coeffs[k as usize]
        }
    };
    // w_k = c_k [j k], with s -> 1 applied up front when requested.
    let weighted = |k: u32| -> LaurentPoly {
        let w = coeff(k).mul_ref(&qbinom(j as i64, k as i64));
        if s_one {
            w.eval_s_one()
        } else {
            w
        }
    };
    let prefix = |k: u32| -> Vec<Exp> {
        (0..k)
            .map(|l| {
                let e = closure_numerator_exp(kind, l, j);
                if s_one {
                    Exp::new(e.a, e.q, 0)
                } else {
                    e
                }
            })
            .collect()
    };
    let suffix = |k: u32| Exp::new(1, -(k as i32), 0);

    // U_0 = w_0 P_0, U_k = X_{k-1} U_{k-1} + w_k P_k, numerator U_j.
    let dense = (|| {
        let mut acc = DensePoly::zero();
        for k in 0..=j {
            if k >= 1 {
                acc = acc.mul_antisymmetric(suffix(k - 1))?;
            }
            let c = coeff(k);
            if c.is_zero() {
                continue;
            }
            let term = prefix(k)
                .into_iter()
                .try_fold(DensePoly::from_poly(&weighted(k))?, |d, e| d.mul_antisymmetric(e))?;
            acc = acc.add(&term)?;
        }
        Some(acc.to_poly())
    })();
    let num = match dense {
        Some(p) => p,
        None => {
            let mut acc = LaurentPoly::zero();
            for k in 0..=j {
                if k >= 1 {
                    let x = suffix(k - 1);
                    acc = acc.mul_ref(&binomial_factor(x.a, x.q as i64, x.s));
                }
                if coeff(k).is_zero() {
                    continue;
                }
                let term = prefix(k)
                    .into_iter()
                    .fold(weighted(k), |t, e| t.mul_ref(&binomial_factor(e.a, e.q as i64, e.s)));
                acc.add_assign_owned(term);
            }
            acc
        }
    };
    Ok(QScalar::new(num, (1..=j).map(|l| (l, 1))))
}

/// Reference closure: `sum_k c_k * closure_factor(k)` in `QScalar` arithmetic.
pub fn close_direct(state: &SkeinState) -> Result<QScalar, Error> {
    let mut acc = QScalar::zero();
    for (k, c) in state.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f = closure_factor(state.family, state.j, k as u32).ok_or_else(|| {
            Error::UnclosableFamily { family: state.family.name().into(), cf: String::from("?") }
        })?;
        acc = acc.add_ref(&f.mul_poly(c));
    }
    Ok(acc)
}

/// The twist word actually evaluated for `link` from `start`, and the
/// family reached.
///
/// If the last family has opposite orientations but the diagram closes the
/// other way, one extra twist of the other kind is appended. It becomes a
/// kink after closing, so the link is unchanged up to framing, and it moves
/// the state into a family whose closure formula matches the diagram.
pub fn effective_word(link: &TwoBridgeLink, start: Start) -> (Vec<Twist>, Family) {
    let mut word: Vec<Twist> = link.cf.operator_word().twists().collect();
    let mut family = word
        .iter()
        .fold(start.family(), |f, &op| twist_rule(op, f).target);
    let target = link.cf.closure_type();
    if family.is_opposite() && family.closure_type() != target {
        let extra = match target {
            ClosureType::LeftRight => Twist::T,
            ClosureType::TopBottom => Twist::R,
        };
        word.push(extra);
        family = twist_rule(extra, family).target;
    }
    (word, family)
}

/// Start families whose boundary orientation is consistent with the closed
/// diagram. Knots have exactly one; two-component links admit both.
pub fn consistent_starts(link: &TwoBridgeLink) -> Vec<Start> {
    [Start::Up, Start::Op]
        .into_iter()
        .filter(|&s| {
            let (_, fam) = effective_word(link, s);
            let fam = if link.is_knot() { fam.knot_identified() } else { fam };
            closure_layout(fam).is_some() && fam.closure_type() == link.cf.closure_type()
        })
        .collect()
}

/// Default start: the only consistent one for knots, `Up` for links.
pub fn natural_start(link: &TwoBridgeLink) -> Start {
    consistent_starts(link).first().copied().unwrap_or(Start::Up)
}

/// Runs the word on the state vector and returns the state just before
/// closing: after the knot identification (`s = 1`, `UPs = UP`,
/// `RIs = RI`) when `link` is a knot.
pub fn final_state(link: &TwoBridgeLink, j: u32, start: Start) -> SkeinState {
    let (word, _) = effective_word(link, start);
    let initial = SkeinState::initial(j, start);
    if link.is_knot() {
        let mut st = word.into_iter().fold(initial, |st, op| st.apply_twist_s_one(op));
        st.family = st.family.knot_identified();
        st
    } else {
        initial.apply_word(word)
    }
}

/// `P~_j(L)` up to a monomial in `a, q, s` (exactly the engine's value when
/// `normalize` is `Raw`, its canonical representative otherwise).
pub fn eval_reduced(
    link: &TwoBridgeLink,
    j: u32,
    start: Start,
    normalize: Normalize,
) -> Result<QScalar, Error> {
    let state = final_state(link, j, start);
    let unclosable = || Error::UnclosableFamily {
        family: state.family.name().into(),
        cf: link.cf.to_string(),
    };
    if closure_layout(state.family).is_none() || state.family.closure_type() != link.cf.closure_type() {
        return Err(unclosable());
    }
    let value = if link.is_knot() { close_s_one(&state)? } else { close(&state)? };
    match normalize {
        Normalize::Raw => Ok(value),
        Normalize::Canonical => value.canonicalize(),
    }
}

/// The raw value of [`eval_reduced`] as an explicit multi-sum with one
/// index per crossing. Exponential in the crossing number; for checks.
pub fn eval_nested_sum(link: &TwoBridgeLink, j: u32, start: Start) -> Result<QScalar, Error> {
    fn walk(
        word: &[Twist],
        family: Family,
        j: i64,
        k: i64,
        prefix: &LaurentPoly,
        knot: bool,
        out: &mut QScalar,
    ) -> Option<()> {
        let Some((&op, rest)) = word.split_first() else {
            let family = if knot { family.knot_identified() } else { family };
            let cl = closure_factor(family, j as u32, k as u32)?;
            *out = out.add_ref(&cl.mul_poly(prefix));
            return Some(());
        };
        let rule = twist_rule(op, family);
        for h in rule.targets(j, k) {
            let next = prefix.mul_ref(&rule.coefficient(j, h, k));
            walk(rest, rule.target, j, h, &next, knot, out)?;
        }
        Some(())
    }
    let (word, family) = effective_word(link, start);
    let unclosable = || Error::UnclosableFamily { family: family.name().into(), cf: link.cf.to_string() };
    let fin = if link.is_knot() { family.knot_identified() } else { family };
    if fin.closure_type() != link.cf.closure_type() {
        return Err(unclosable());
    }
    let mut out = QScalar::zero();
    walk(&word, start.family(), j as i64, 0, &LaurentPoly::one(), link.is_knot(), &mut out)
        .ok_or_else(unclosable)?;
    if link.is_knot() {
        out = out.substitute(&Substitution::s_to_one())?;
    }
    Ok(out)
}

/// Unreduced two-color invariant `P~_j |_{s = q^{i-j}} * P_i(O)`.
pub fn specialize_two_component(ptilde: &QScalar, i: u32, j: u32) -> Result<QScalar, Error> {
    if i < j {
        return Err(Error::ColorOrder { i, j });
    }
    let v = ptilde.substitute(&Substitution::s_to_q_pow(i as i32 - j as i32))?;
    Ok(v.mul_ref(&unknot_colored(i)))
}

/// One-row coloring from the one-column value: `(-1)^r P(a, q^-1)`.
pub fn row_colored(p_col: &QScalar, r: u32) -> Result<QScalar, Error> {
    if p_col.involves_s() {
        return Err(Error::DependsOnS);
    }
    let v = p_col.substitute(&Substitution::invert_q())?;
    Ok(if r % 2 == 1 { -v } else { v })
}
