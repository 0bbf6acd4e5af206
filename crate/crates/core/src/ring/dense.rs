//! Dense `i128` coefficient boxes for hot loops that repeatedly multiply by
//! two-term factors. Every operation is checked and reports overflow as
//! `None`, so callers can fall back to the arbitrary-precision path.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Exp, LaurentPoly};

const MAX_CELLS: usize = 1 << 24;

#[derive(Clone, Debug)]
pub(crate) struct DensePoly {
    lo: Exp,
    /// Extents along a, s, q.
    dims: [usize; 3],
    data: Vec<i128>,
}

impl DensePoly {
    pub(crate) fn from_poly(p: &LaurentPoly) -> Option<Self> {
        if p.is_zero() {
            return Some(Self::zero());
        }
        let (lo, hi) = (p.min_exp()?, p.max_exp()?);
        let dims = [
            (hi.a - lo.a) as usize + 1,
            (hi.s - lo.s) as usize + 1,
            (hi.q - lo.q) as usize + 1,
        ];
        let cells = dims[0].checked_mul(dims[1])?.checked_mul(dims[2])?;
        if cells > MAX_CELLS {
            return None;
        }
        let mut out = DensePoly { lo, dims, data: vec![0; cells] };
        for (e, c) in p.terms() {
            let i = out.index(*e);
            out.data[i] = c.to_i128()?;
        }
        Some(out)
    }

    fn index(&self, e: Exp) -> usize {
        let [_, ns, nq] = self.dims;
        ((e.a - self.lo.a) as usize * ns + (e.s - self.lo.s) as usize) * nq + (e.q - self.lo.q) as usize
    }

    /// `self * (m - m^-1)` for the monomial `m` with exponent `e`.
    pub(crate) fn mul_antisymmetric(&self, e: Exp) -> Option<Self> {
        if self.data.is_empty() {
            return Some(self.clone());
        }
        let (da, ds, dq) = (e.a.unsigned_abs() as usize, e.s.unsigned_abs() as usize, e.q.unsigned_abs() as usize);
        let dims = [self.dims[0] + 2 * da, self.dims[1] + 2 * ds, self.dims[2] + 2 * dq];
        let cells = dims[0].checked_mul(dims[1])?.checked_mul(dims[2])?;
        if cells > MAX_CELLS {
            return None;
        }
        let lo = Exp::new(self.lo.a - da as i32, self.lo.q - dq as i32, self.lo.s - ds as i32);
        let mut out = DensePoly { lo, dims, data: vec![0; cells] };
        let [na, ns, nq] = self.dims;
        let plus = out.index(Exp::new(self.lo.a + e.a, self.lo.q + e.q, self.lo.s + e.s));
        let minus = out.index(Exp::new(self.lo.a - e.a, self.lo.q - e.q, self.lo.s - e.s));
        let [_, ons, onq] = out.dims;
        for ia in 0..na {
            for is in 0..ns {
                let src = (ia * ns + is) * nq;
                let row = (ia * ons + is) * onq;
                for iq in 0..nq {
                    let x = self.data[src + iq];
                    if x == 0 {
                        continue;
                    }
                    let p = &mut out.data[plus + row + iq];
                    *p = p.checked_add(x)?;
                    let m = &mut out.data[minus + row + iq];
                    *m = m.checked_sub(x)?;
                }
            }
        }
        Some(out)
    }

    pub(crate) fn zero() -> Self {
        DensePoly { lo: Exp::ZERO, dims: [0, 0, 0], data: Vec::new() }
    }

    fn hi(&self) -> Exp {
        Exp::new(
            self.lo.a + self.dims[0] as i32 - 1,
            self.lo.q + self.dims[2] as i32 - 1,
            self.lo.s + self.dims[1] as i32 - 1,
        )
    }

    /// Sum, over the union of both boxes.
    pub(crate) fn add(&self, other: &DensePoly) -> Option<Self> {
        if self.data.is_empty() {
            return Some(other.clone());
        }
        if other.data.is_empty() {
            return Some(self.clone());
        }
        let (h1, h2) = (self.hi(), other.hi());
        let lo = Exp::new(self.lo.a.min(other.lo.a), self.lo.q.min(other.lo.q), self.lo.s.min(other.lo.s));
        let hi = Exp::new(h1.a.max(h2.a), h1.q.max(h2.q), h1.s.max(h2.s));
        let dims = [
            (hi.a - lo.a) as usize + 1,
            (hi.s - lo.s) as usize + 1,
            (hi.q - lo.q) as usize + 1,
        ];
        let cells = dims[0].checked_mul(dims[1])?.checked_mul(dims[2])?;
        if cells > MAX_CELLS {
            return None;
        }
        let mut out = DensePoly { lo, dims, data: vec![0; cells] };
        for src in [self, other] {
            let [na, ns, nq] = src.dims;
            let [_, ons, onq] = out.dims;
            let base = out.index(src.lo);
            for ia in 0..na {
                for is in 0..ns {
                    let from = (ia * ns + is) * nq;
                    let to = base + (ia * ons + is) * onq;
                    for iq in 0..nq {
                        let c = &mut out.data[to + iq];
                        *c = c.checked_add(src.data[from + iq])?;
                    }
                }
            }
        }
        Some(out)
    }

    pub(crate) fn to_poly(&self) -> LaurentPoly {
        let [_, ns, nq] = self.dims;
        let mut terms = Vec::new();
        for (i, &v) in self.data.iter().enumerate() {
            if v != 0 {
                let e = Exp::new(
                    self.lo.a + (i / (ns * nq)) as i32,
                    self.lo.q + (i % nq) as i32,
                    self.lo.s + ((i / nq) % ns) as i32,
                );
                terms.push((e, BigInt::from(v)));
            }
        }
        LaurentPoly::from_sorted_unchecked(terms)
    }
}
