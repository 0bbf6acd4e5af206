//! Checks that see colors above 1, where rules differing only at `h < j`
//! become visible.

use qhomfly::oracle::{homfly, plat_diagram, ENGINE_CONVENTION, ENGINE_STYLE};
use qhomfly::skein::natural_start;
use qhomfly::twobridge::enumerate_corpus;
use qhomfly::{eval_reduced, Normalize, Substitution};

/// At `a = q^{j+1}` the `j`-column coloring is the dual of the fundamental
/// representation of `sl_{j+1}`, which a knot invariant cannot tell apart
/// from the fundamental one.
#[test]
fn antisymmetric_power_at_n_equals_j_plus_one_is_the_dual() {
    for l in enumerate_corpus(7).into_iter().filter(|l| l.is_knot()) {
        let start = natural_start(&l);
        let h = homfly(&plat_diagram(&l.cf, start, ENGINE_STYLE), ENGINE_CONVENTION);
        for j in 2..=3u32 {
            let at = Substitution::a_to_q_pow(j as i32 + 1);
            let engine = eval_reduced(&l, j, start, Normalize::Raw).unwrap();
            let lhs = engine.substitute(&at).unwrap().canonicalize().unwrap();
            let rhs = h.substitute(&at).unwrap().canonicalize().unwrap();
            assert_eq!(lhs, rhs, "cf {} j {j}", l.cf);
        }
    }
}

#[test]
fn determinant_specialization_up_to_seven_crossings() {
    for l in enumerate_corpus(7).into_iter().filter(|l| l.is_knot()) {
        for j in 1..=4u32 {
            let v = eval_reduced(&l, j, natural_start(&l), Normalize::Raw)
                .unwrap()
                .substitute(&Substitution::a_to_q_pow(j as i32))
                .unwrap();
            assert!(v.is_signed_monomial(), "cf {} j {j}: {v}", l.cf);
        }
    }
}

#[test]
fn amphichiral_knots_are_mirror_symmetric() {
    use qhomfly::corpus::is_amphichiral;
    let amphichiral: Vec<_> =
        enumerate_corpus(8).into_iter().filter(|l| l.is_knot() && is_amphichiral(l)).collect();
    assert!(amphichiral.len() >= 4);
    for l in &amphichiral {
        for j in 1..=3 {
            let v = eval_reduced(l, j, natural_start(l), Normalize::Canonical).unwrap();
            assert_eq!(v.mirrored().canonicalize().unwrap(), v, "cf {} j {j}", l.cf);
        }
    }
}

#[test]
fn chiral_trefoil_is_not_mirror_symmetric() {
    let l = qhomfly::TwoBridgeLink::from_fraction(3, 1).unwrap();
    let v = eval_reduced(&l, 1, natural_start(&l), Normalize::Canonical).unwrap();
    assert_ne!(v.mirrored().canonicalize().unwrap(), v);
}
