import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braids import braid_closure
from props import kunneth
from equikh.barnatan import build_reduced_pointed, build_unreduced
from equikh.complex import (
    FreeComplex,
    apply,
    build_complex,
    compose,
    direct_sum_shift,
    entry_exponents,
    identity,
    one_plus,
    simplify,
    tensor,
    transfer_endo,
)
from equikh.diagram import parse_pd
from equikh.examples import ALGEBRAIC
from equikh.f2 import graded_smith, u_zero_homology_dims


def test_entry_exponents():
    # x at (0, 0) -> y at (1, 4): u^2, no Q
    assert entry_exponents([0, 1], [0, 4], None, 0, 1) == (0, 2, 0)
    # Q-entry of a Borel complex: same h, same q
    assert entry_exponents([0, 0], [0, 0], None, 0, 1) == (1, 0, 0)


def test_check_catches_bad_differential():
    c = build_complex({"a": (0, 0), "b": (1, 0), "c": (2, 0)}, {"a": ["b"], "b": ["c"]})
    with pytest.raises(AssertionError):
        c.check()


def test_check_catches_q_power_in_u_complex():
    c = FreeComplex([0, 0], [0, 0], [[1], []])
    with pytest.raises(AssertionError):
        c.check()


def test_apply_compose_identity():
    m = [[1, 2], [2], []]
    assert apply(m, {0, 1}) == {1}
    assert compose(identity(3), m) == [sorted(o) for o in m]
    assert one_plus(one_plus(m)) == [sorted(o) for o in m]


@pytest.mark.parametrize("pd", ["[1,4,2,5],[3,6,4,1],[5,2,6,3]", "[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]"])
def test_simplify_is_a_homotopy_equivalence(pd):
    c = build_unreduced(parse_pd(pd)).complex
    r = simplify(c, track=True)
    r.check()
    assert graded_smith(r.minimal) == graded_smith(c)
    # a minimal model has no unit entries left
    assert all(not o for o in r.minimal.mod_u())
    assert sum(u_zero_homology_dims(c).values()) == r.minimal.n


def test_transfer_endo_on_examples():
    for make in ALGEBRAIC.values():
        c = make()
        r = simplify(c, track=True)
        r.check()
        t = transfer_endo(r, "tau")
        assert compose(r.minimal.d, t) == compose(t, r.minimal.d)


def test_tensor_and_json_round_trip():
    a, b = ALGEBRAIC["ex1"](), ALGEBRAIC["ex2"]()
    t = tensor(a, b)
    t.check()
    assert t.n == 9 and t.names[0] == "xx"
    assert FreeComplex.from_json(t.to_json()) == t
    assert direct_sum_shift(t, 1, 2).h[0] == t.h[0] + 1


def test_kunneth_small():
    kunneth(ALGEBRAIC["ex4"](), ALGEBRAIC["ex3b"]())
    tref = build_reduced_pointed(parse_pd("[1,4,2,5],[3,6,4,1],[5,2,6,3]"), 1).complex
    kunneth(tref, tref)


braid_words = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])),
                       min_size=n - 1, max_size=5).map(lambda w: (n, w)))


@settings(max_examples=40, deadline=None)
@given(braid_words, braid_words)
def test_kunneth_on_braid_closures(w1, w2):
    try:
        d1, d2 = braid_closure(*w1), braid_closure(*w2)
    except ValueError:
        return
    kunneth(build_reduced_pointed(d1, 1).complex, build_unreduced(d2).complex)
