import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from besselgspin.exactalg import LaurentPoly, UsageError, VarTable
from besselgspin.rootdata import (
    Root,
    RootSystemB,
    SatakeSpec,
    Torus,
    WeylElement,
    coroot_monomial,
    enumerate_weyl,
    simple_reflections,
    special_elements,
    weyl_act,
    word_lengths,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_group_order_and_distinct(n):
    ws = enumerate_weyl(n)
    assert len(ws) == 2**n * len(list(itertools.permutations(range(n))))
    assert len(set(ws)) == len(ws)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_closed_under_composition_with_identity(n):
    ws = set(enumerate_weyl(n))
    e = WeylElement.identity(n)
    for w in ws:
        assert w * e == w == e * w
        assert w * w.inverse() == e
    for u, w in itertools.islice(itertools.product(ws, ws), 500):
        assert u * w in ws


@pytest.mark.parametrize("n", [1, 2, 3])
def test_length_equals_reduced_word_length(n):
    lengths = word_lengths(n)
    assert len(lengths) == len(enumerate_weyl(n))
    for w, k in lengths.items():
        assert w.length() == k
        assert w.sign() == (-1) ** k


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_positive_root_count(n):
    assert len(RootSystemB(n).positive_roots()) == n * n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_special_elements(n):
    w0, w1 = special_elements(n)
    assert set(map(str, w0.inversions())) == set(map(str, RootSystemB(n).positive_roots()))
    assert w0.length() == n * n
    expected = {str(r) for r in RootSystemB(n).positive_roots()} - {f"e{n}"}
    assert set(map(str, w1.inversions())) == expected


def test_w0_and_w1_actions():
    V = VarTable.standard(2)
    w0, w1 = special_elements(2)
    a1, a2 = LaurentPoly.var(V, "a1"), LaurentPoly.var(V, "a2")
    s2 = LaurentPoly.monomial(V, {"s0": 2})
    assert weyl_act(w0, a1) == s2 * a1 ** -1
    assert weyl_act(w1, a1) == s2 * a1 ** -1
    assert weyl_act(w1, a2) == a2


def test_root_parsing_and_coroots():
    V = VarTable.standard(3)
    assert coroot_monomial("e1-e2", V) == LaurentPoly.monomial(V, {"a1": 1, "a2": -1})
    assert coroot_monomial("e1+e3", V) == LaurentPoly.monomial(V, {"a1": 1, "a3": 1, "s0": -2})
    assert coroot_monomial("e2", V) == LaurentPoly.monomial(V, {"a2": 2, "s0": -2})
    assert str(Root.parse(" e1 + e2 ")) == "e1+e2"
    for bad in ("e2-e1", "f1", "e1*e2"):
        with pytest.raises(UsageError):
            Root.parse(bad)
    with pytest.raises(UsageError):
        coroot_monomial("e4", V)


def test_torus_parsing_and_satake_data():
    assert Torus.parse("Non-Split") is Torus.NONSPLIT
    with pytest.raises(UsageError):
        Torus.parse("ramified")
    sp = SatakeSpec(1, "nonsplit")
    z1, z2 = sp.z()
    assert z1 == -z2 and z1 * z2 == -LaurentPoly.monomial(sp.vars, {"s0": 2})
    sp = SatakeSpec(1, "split")
    z1, z2 = sp.z()
    assert z1 * z2 == LaurentPoly.monomial(sp.vars, {"s0": 2})
    assert sp.z(swapped=True) == (z2, z1)
    assert sp.Q() == 1 - LaurentPoly.monomial(sp.vars, {"v": 2})


def test_invalid_elements_rejected():
    with pytest.raises(UsageError):
        WeylElement((0, 0), (1, 1))
    with pytest.raises(UsageError):
        WeylElement((0, 1), (1, 2))
    with pytest.raises(UsageError):
        weyl_act(WeylElement.identity(2), LaurentPoly.one(VarTable.standard(3)))


elements3 = st.sampled_from(enumerate_weyl(3))


@given(elements3, elements3)
def test_action_is_a_homomorphism(u, w):
    V = VarTable.standard(3)
    p = LaurentPoly.monomial(V, {"a1": 3, "a2": -1, "s0": 1}) + LaurentPoly.monomial(V, {"a3": 2, "v": 1})
    assert weyl_act(u * w, p) == weyl_act(u, weyl_act(w, p))


@given(elements3, elements3)
def test_sign_is_multiplicative(u, w):
    assert (u * w).sign() == u.sign() * w.sign()


@given(elements3)
def test_action_on_vectors_matches_parameter_action(w):
    V = VarTable.standard(3)
    for r in RootSystemB(3).positive_roots():
        image = w.act_on_vector(r.vector(3))
        lhs = weyl_act(w, coroot_monomial(r, V))
        # rebuild chi(image^vee) from the image vector
        powers = {}
        short = r.kind == "short"
        for i, c in enumerate(image):
            if c:
                powers[f"a{i + 1}"] = c * (2 if short else 1)
        s0 = -sum(image) * (2 if short else 1)
        powers["s0"] = s0
        assert lhs == LaurentPoly.monomial(V, powers)


def test_simple_reflections_generate():
    assert len(simple_reflections(3)) == 3
    assert all(s.length() == 1 for s in simple_reflections(3))
