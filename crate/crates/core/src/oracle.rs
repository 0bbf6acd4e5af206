//! Classical invariants of the plat diagram of a 2-bridge link, computed
//! independently of the skein engine.
//!
//! The diagram is built crossing by crossing from the same twist word the
//! engine uses, oriented, and then evaluated two ways: the HOMFLY polynomial
//! by the skein recursion on descending diagrams, and the Jones polynomial by
//! the Kauffman bracket state sum.

use std::collections::HashMap;

use crate::qcomb::balanced_factor;
use crate::ring::{Exp, LaurentPoly, QScalar};
use crate::skein::Start;
use crate::twobridge::{ClosureType, ContinuedFraction, Twist};

/// Over-strand choice for the crossings added by each twist kind: `true`
/// puts the strand running lower left to upper right on top.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingStyle {
    pub t_slash_over: bool,
    pub r_slash_over: bool,
}

/// The style matching the engine's twist operators under
/// [`SkeinConvention::Standard`]. Both twist kinds share a handedness, which
/// makes every plat diagram alternating.
pub const ENGINE_STYLE: CrossingStyle = CrossingStyle { t_slash_over: false, r_slash_over: false };

/// HOMFLY skein relation in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeinConvention {
    /// `a P(L+) - a^-1 P(L-) = (q - q^-1) P(L0)`
    Standard,
    /// `a^-1 P(L+) - a P(L-) = (q - q^-1) P(L0)`
    Mirrored,
}

/// The convention under which the oracle agrees with the engine at `j = 1`
/// on diagrams drawn in [`ENGINE_STYLE`]. Mirroring the style and the
/// convention together gives the same values.
pub const ENGINE_CONVENTION: SkeinConvention = SkeinConvention::Standard;

/// An oriented crossing. Edges are labelled by integers; each label occurs
/// exactly once as an incoming and once as an outgoing edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub positive: bool,
}

impl Crossing {
    fn switched(self) -> Crossing {
        Crossing {
            under_in: self.over_in,
            under_out: self.over_out,
            over_in: self.under_in,
            over_out: self.under_out,
            positive: !self.positive,
        }
    }
}

/// An oriented link diagram.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// Counterclockwise edge labels at each crossing, first entry the
    /// incoming under edge. Same order as `crossings`.
    pub planar: Vec<[usize; 4]>,
    /// Components without crossings.
    pub free_loops: usize,
    /// Direction in which the second strand of the trivial tangle is
    /// traversed: `Up` for upward.
    pub start: Start,
}

impl Diagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| if c.positive { 1 } else { -1 }).sum()
    }

    pub fn component_count(&self) -> usize {
        traverse(&self.crossings).len() + self.free_loops
    }
}

// Node ports. Strand nodes: 0 bottom, 1 top. Crossing nodes: SW, SE, NW, NE.
const SW: usize = 0;
const SE: usize = 1;
const NW: usize = 2;
const NE: usize = 3;

fn port(node: usize, p: usize) -> usize {
    node * 4 + p
}

/// Builds the oriented plat diagram of `cf`.
///
/// The trivial tangle is two vertical strands; `T` glues a crossing onto the
/// two top endpoints and `R` onto the two right endpoints. The first strand
/// is traversed upward. The second is traversed in the direction given by
/// `start` if it lies on its own component, and otherwise as it is reached.
pub fn plat_diagram(cf: &ContinuedFraction, start: Start, style: CrossingStyle) -> Diagram {
    let word: Vec<Twist> = cf.operator_word().twists().collect();
    let n_nodes = 2 + word.len();
    let mut link = vec![usize::MAX; n_nodes * 4];
    let mut join = |x: usize, y: usize| {
        link[x] = y;
        link[y] = x;
    };
    // Endpoints of the current tangle.
    let (mut nw, mut ne, sw, mut se) = (port(0, 1), port(1, 1), port(0, 0), port(1, 0));
    let mut slash_over = vec![false; n_nodes];
    for (i, op) in word.iter().enumerate() {
        let x = 2 + i;
        match op {
            Twist::T => {
                join(nw, port(x, SW));
                join(ne, port(x, SE));
                nw = port(x, NW);
                ne = port(x, NE);
                slash_over[x] = style.t_slash_over;
            }
            Twist::R => {
                join(ne, port(x, NW));
                join(se, port(x, SW));
                ne = port(x, NE);
                se = port(x, SE);
                slash_over[x] = style.r_slash_over;
            }
        }
    }
    match cf.closure_type() {
        ClosureType::TopBottom => {
            join(nw, sw);
            join(ne, se);
        }
        ClosureType::LeftRight => {
            join(nw, ne);
            join(sw, se);
        }
    }
    let through = |p: usize| -> usize {
        let (node, k) = (p / 4, p % 4);
        if node < 2 {
            port(node, 1 - k)
        } else {
            port(node, [NE, NW, SE, SW][k])
        }
    };

    // Walk each component, recording (node, in port, out port) at crossings.
    let mut visited = vec![false; n_nodes];
    let mut components: Vec<Vec<(usize, usize, usize)>> = Vec::new();
    let walk = |entry: usize, visited: &mut Vec<bool>| {
        let mut visits = Vec::new();
        let mut p = entry;
        loop {
            let node = p / 4;
            let out = through(p);
            visited[node] = true;
            if node >= 2 {
                visits.push((node, p % 4, out % 4));
            }
            p = link[out];
            if p == entry {
                break;
            }
        }
        visits
    };
    components.push(walk(port(0, 0), &mut visited));
    let derived_start = if visited[1] {
        // Second strand reached from the first: read off its direction.
        let mut p = port(0, 0);
        loop {
            if p / 4 == 1 {
                break if p.is_multiple_of(4) { Start::Up } else { Start::Op };
            }
            p = link[through(p)];
        }
    } else {
        let entry = match start {
            Start::Up => port(1, 0),
            Start::Op => port(1, 1),
        };
        components.push(walk(entry, &mut visited));
        start
    };
    debug_assert!(visited.iter().all(|&v| v), "2-bridge diagrams have at most two components");

    // Edge k of a component runs from visit k to visit k + 1.
    let mut edge_in = HashMap::new();
    let mut edge_out = HashMap::new();
    let mut next_edge = 0;
    let mut free_loops = 0;
    for comp in &components {
        if comp.is_empty() {
            free_loops += 1;
            continue;
        }
        let base = next_edge;
        let len = comp.len();
        for (k, &(node, pin, pout)) in comp.iter().enumerate() {
            edge_in.insert((node, pin), base + (k + len - 1) % len);
            edge_out.insert((node, pout), base + k);
        }
        next_edge += len;
    }
    let edge_at = |node: usize, p: usize| -> usize {
        *edge_in.get(&(node, p)).or_else(|| edge_out.get(&(node, p))).unwrap()
    };
    let incoming = |node: usize, p: usize| edge_in.contains_key(&(node, p));

    let mut crossings = Vec::new();
    let mut planar = Vec::new();
    for (node, &over) in slash_over.iter().enumerate().skip(2) {
        // Slash strand joins SW and NE, backslash joins NW and SE.
        let (slash_in, slash_out) = if incoming(node, SW) { (SW, NE) } else { (NE, SW) };
        let (back_in, back_out) = if incoming(node, NW) { (NW, SE) } else { (SE, NW) };
        let ((oi, oo), (ui, uo)) = if over {
            ((slash_in, slash_out), (back_in, back_out))
        } else {
            ((back_in, back_out), (slash_in, slash_out))
        };
        let dir = |from: usize| -> (i64, i64) {
            match from {
                SW => (1, 1),
                NE => (-1, -1),
                NW => (1, -1),
                _ => (-1, 1),
            }
        };
        let (o, u) = (dir(oi), dir(ui));
        crossings.push(Crossing {
            under_in: edge_at(node, ui),
            under_out: edge_at(node, uo),
            over_in: edge_at(node, oi),
            over_out: edge_at(node, oo),
            positive: o.0 * u.1 - o.1 * u.0 > 0,
        });
        let ring = [SW, SE, NE, NW];
        let first = ring.iter().position(|&p| p == ui).unwrap();
        planar.push(std::array::from_fn(|t| edge_at(node, ring[(first + t) % 4])));
    }
    Diagram { crossings, planar, free_loops, start: derived_start }
}

/// Components as sequences of `(crossing index, passed over)`, each started
/// at its smallest edge label, in order of those labels.
fn traverse(crossings: &[Crossing]) -> Vec<Vec<(usize, bool)>> {
    let mut by_in: HashMap<usize, (usize, bool)> = HashMap::new();
    for (i, c) in crossings.iter().enumerate() {
        by_in.insert(c.under_in, (i, false));
        by_in.insert(c.over_in, (i, true));
    }
    let mut edges: Vec<usize> = by_in.keys().copied().collect();
    edges.sort_unstable();
    let mut seen = std::collections::HashSet::new();
    let mut comps = Vec::new();
    for e0 in edges {
        if seen.contains(&e0) {
            continue;
        }
        let mut comp = Vec::new();
        let mut e = e0;
        loop {
            seen.insert(e);
            let (i, over) = by_in[&e];
            comp.push((i, over));
            let c = &crossings[i];
            e = if over { c.over_out } else { c.under_out };
            if e == e0 {
                break;
            }
        }
        comps.push(comp);
    }
    comps
}

/// HOMFLY polynomial normalized to 1 on the unknot.
pub fn homfly(d: &Diagram, convention: SkeinConvention) -> QScalar {
    let mut memo = HashMap::new();
    homfly_rec(d.crossings.clone(), d.free_loops, convention, &mut memo)
}

fn delta(convention: SkeinConvention) -> QScalar {
    let sign = match convention {
        SkeinConvention::Standard => 1,
        SkeinConvention::Mirrored => -1,
    };
    let num = LaurentPoly::mono(sign, 1, 0, 0) - LaurentPoly::mono(sign, -1, 0, 0);
    QScalar::new(num, [(1, 1)])
}

fn homfly_rec(
    crossings: Vec<Crossing>,
    free_loops: usize,
    convention: SkeinConvention,
    memo: &mut HashMap<(Vec<Crossing>, usize), QScalar>,
) -> QScalar {
    let mut key_x = crossings.clone();
    key_x.sort_unstable();
    let key = (key_x, free_loops);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let comps = traverse(&crossings);
    let mut met = vec![false; crossings.len()];
    let mut bad = None;
    'outer: for comp in &comps {
        for &(i, over) in comp {
            if !met[i] {
                met[i] = true;
                if !over {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
    }
    let value = match bad {
        None => delta(convention).pow((comps.len() + free_loops - 1) as u32),
        Some(i) => {
            let c = crossings[i];
            let mut switched = crossings.clone();
            switched[i] = c.switched();
            let (smoothed, extra) = smooth(&crossings, i);
            let p_switch = homfly_rec(switched, free_loops, convention, memo);
            let p_smooth = homfly_rec(smoothed, free_loops + extra, convention, memo);
            let z = QScalar::from_poly(balanced_factor(1));
            let zp0 = z.mul_ref(&p_smooth);
            let a = |e: i32| QScalar::from_poly(LaurentPoly::mono(1, e, 0, 0));
            // Solve the skein relation for the crossing being switched.
            let e = match convention {
                SkeinConvention::Standard => 1,
                SkeinConvention::Mirrored => -1,
            };
            if c.positive {
                // a^e P+ = a^-e P- + z P0
                a(-e).mul_ref(&a(-e).mul_ref(&p_switch).add_ref(&zp0))
            } else {
                // a^-e P- = a^e P+ - z P0
                a(e).mul_ref(&a(e).mul_ref(&p_switch).sub_ref(&zp0))
            }
        }
    };
    memo.insert(key, value.clone());
    value
}

/// Oriented smoothing of crossing `i`; returns the new crossings and the
/// number of crossingless loops it creates.
fn smooth(crossings: &[Crossing], i: usize) -> (Vec<Crossing>, usize) {
    let c = crossings[i];
    let mut rest: Vec<Crossing> = crossings
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &x)| x)
        .collect();
    let mut loops = 0;
    let rename = |rest: &mut Vec<Crossing>, from: usize, to: usize| {
        for x in rest.iter_mut() {
            for e in [&mut x.under_in, &mut x.under_out, &mut x.over_in, &mut x.over_out] {
                if *e == from {
                    *e = to;
                }
            }
        }
    };
    // Strand entering on under_in leaves on over_out, and over_in on under_out.
    let (ui, oo) = (c.under_in, c.over_out);
    let (mut oi, mut uo) = (c.over_in, c.under_out);
    if ui == oo {
        loops += 1;
    } else {
        rename(&mut rest, oo, ui);
        if oi == oo {
            oi = ui;
        }
        if uo == oo {
            uo = ui;
        }
    }
    if oi == uo {
        loops += 1;
    } else {
        rename(&mut rest, uo, oi);
    }
    (rest, loops)
}

/// Jones polynomial in `q` (with `t = q^2`) from the Kauffman bracket,
/// normalized to 1 on the unknot and `q + q^-1` on the 2-component unlink.
pub fn jones(d: &Diagram) -> LaurentPoly {
    let n = d.crossings.len();
    let edges = 2 * n;
    // Bracket in powers of A, stored in the q slot.
    let mut bracket = LaurentPoly::zero();
    let loop_value = -(LaurentPoly::mono(1, 0, 2, 0) + LaurentPoly::mono(1, 0, -2, 0));
    for state in 0u64..(1u64 << n) {
        let mut uf: Vec<usize> = (0..edges).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        let mut a_count = 0i32;
        for (k, &[p, q, r, s]) in d.planar.iter().enumerate() {
            let pairs = if state >> k & 1 == 0 {
                a_count += 1;
                [(p, q), (r, s)]
            } else {
                a_count -= 1;
                [(p, s), (q, r)]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut uf, x), find(&mut uf, y));
                uf[rx] = ry;
            }
        }
        let loops = (0..edges).filter(|&e| find(&mut uf, e) == e).count() + d.free_loops;
        let term = loop_value.pow((loops - 1) as u32).shifted(Exp::new(0, a_count, 0));
        bracket.add_assign_owned(term);
    }
    // Writhe normalization (-A^3)^-w.
    let w = d.writhe();
    let mut v = bracket.shifted(Exp::new(0, -3 * w as i32, 0));
    if (w + d.component_count() as i64 - 1) % 2 != 0 {
        v.negate_in_place();
    }
    // A^2 = q pairs with the standard skein relation at a = q^2.
    let sign = match ENGINE_CONVENTION {
        SkeinConvention::Standard => 1,
        SkeinConvention::Mirrored => -1,
    };
    v.map_terms(|e| {
        assert!(e.q % 2 == 0, "Jones exponents are even in A");
        (Exp::new(0, sign * e.q / 2, 0), false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twobridge::enumerate_corpus;

    fn cf(e: &[u32]) -> ContinuedFraction {
        ContinuedFraction::new(e.to_vec()).unwrap()
    }

    #[test]
    fn component_counts_agree_with_twobridge() {
        for l in enumerate_corpus(9) {
            let d = plat_diagram(&l.cf, Start::Up, ENGINE_STYLE);
            assert_eq!(d.component_count(), l.components as usize, "{}", l.cf);
        }
    }

    #[test]
    fn diagrams_are_alternating() {
        // A reduced alternating diagram with n crossings has Jones span n.
        for l in enumerate_corpus(8).into_iter().filter(|l| l.crossings > 1) {
            let d = plat_diagram(&l.cf, Start::Up, ENGINE_STYLE);
            let v = jones(&d);
            let span = (v.max_exp().unwrap().q - v.min_exp().unwrap().q) / 2;
            assert_eq!(span as u32, l.crossings, "{}", l.cf);
        }
    }

    #[test]
    fn unknot_and_unlink() {
        let d = plat_diagram(&cf(&[1]), Start::Up, ENGINE_STYLE);
        assert_eq!(homfly(&d, ENGINE_CONVENTION), QScalar::one());
        assert!(jones(&d).is_one());
        let unlink = Diagram { crossings: vec![], planar: vec![], free_loops: 2, start: Start::Up };
        assert_eq!(homfly(&unlink, SkeinConvention::Standard), delta(SkeinConvention::Standard));
    }

    #[test]
    fn trefoil_homfly_is_classical() {
        let d = plat_diagram(&cf(&[3]), Start::Up, ENGINE_STYLE);
        let p = homfly(&d, SkeinConvention::Standard);
        assert!(p.is_polynomial());
        // One handedness: 2a^2 - a^4 + a^2 z^2, i.e. a^2 q^2 + a^2 q^-2 - a^4.
        let right = LaurentPoly::mono(1, 2, 2, 0) + LaurentPoly::mono(1, 2, -2, 0)
            - LaurentPoly::mono(1, 4, 0, 0);
        let left = right.map_terms(|e| (Exp::new(-e.a, e.q, 0), false));
        assert!(p.num() == &right || p.num() == &left, "{p}");
    }

    #[test]
    fn figure_eight_jones() {
        let d = plat_diagram(&cf(&[2, 2]), Start::Up, ENGINE_STYLE);
        let v = jones(&d);
        let expected = LaurentPoly::from_q_terms([(4, 1), (2, -1), (0, 1), (-2, -1), (-4, 1)]);
        assert_eq!(v, expected);
    }

    #[test]
    fn knot_orientation_is_forced() {
        for l in enumerate_corpus(8).into_iter().filter(|l| l.is_knot()) {
            let a = plat_diagram(&l.cf, Start::Up, ENGINE_STYLE).start;
            let b = plat_diagram(&l.cf, Start::Op, ENGINE_STYLE).start;
            assert_eq!(a, b, "{}", l.cf);
        }
    }

    #[test]
    fn jones_is_homfly_at_a_equals_q_squared() {
        use crate::ring::Substitution;
        for l in enumerate_corpus(7) {
            for start in [Start::Up, Start::Op] {
                let d = plat_diagram(&l.cf, start, ENGINE_STYLE);
                let h = homfly(&d, ENGINE_CONVENTION)
                    .substitute(&Substitution::a_to_q_pow(2))
                    .unwrap();
                assert!(h.is_polynomial(), "{}", l.cf);
                assert_eq!(h.num(), &jones(&d), "{} {:?}", l.cf, start);
            }
        }
    }
}
