"""Smoke test for the qhomfly_py extension module.

Build and install first, e.g. `pip install ./crates/python` or
`maturin develop -m crates/python/Cargo.toml`, then run this script.
"""

import json
import sys

import qhomfly_py as qh


def main():
    unknot = qh.Link([1])
    for j in range(6):
        assert unknot.eval(j) == qh.QScalar.from_json('{"num":[{"a":0,"q":0,"s":0,"c":"1"}],"den":[]}')

    trefoil = qh.Link.from_fraction(3, 1)
    assert trefoil.is_knot() and trefoil.crossings == 3
    p1 = trefoil.eval(1)
    print("trefoil, j = 1:", p1)
    assert str(p1) == "1 + q^4 - a^2 q^2"
    assert p1.terms() == [(0, 0, 0, 1), (0, 4, 0, 1), (2, 2, 0, -1)]

    # Determinant coloring: a = q^j gives a signed monomial.
    for j in range(1, 4):
        v = trefoil.eval(j, normalize="raw").a_to_q_pow(j)
        assert v.num_terms() == 1 and v.denominator() == [], v

    # The figure-eight knot is amphichiral.
    fig8 = qh.Link([2, 2])
    v = fig8.eval(2)
    assert v.mirrored().canonicalize() == v

    # Two-component links keep s; i = j = 1 gives the unreduced HOMFLY.
    hopf = qh.Link([2])
    assert hopf.components == 2 and hopf.eval(1).involves_s()
    unreduced = qh.unreduced_two_color(hopf.eval(2), 3, 2)
    assert not unreduced.involves_s() and unreduced.denominator()

    round_trip = qh.QScalar.from_json(unreduced.to_json())
    assert round_trip == unreduced
    json.loads(unreduced.to_json())

    try:
        trefoil.eval(1, start="op")
    except qh.UnclosableFamilyError:
        pass
    else:
        raise AssertionError("expected UnclosableFamilyError")

    found = qh.guess_recurrence([unknot.eval(j) for j in range(12)], 4, 8, validate=3)
    assert found is not None
    op, passed = found
    assert str(op) == "L - 1" and passed and op.order == 1

    try:
        qh.guess_recurrence([unknot.eval(j) for j in range(3)], 4, 8, validate=2)
    except qh.WindowTooShortError:
        pass
    else:
        raise AssertionError("expected WindowTooShortError")

    cases, failures = qh.run_check("nested-sum", 4)
    assert cases > 0 and failures == []
    assert len(qh.corpus_links(4)) == 15

    print("engine version", qh.ENGINE_VERSION, "- all smoke checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
