import itertools

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from besselgspin.bessel import (
    NormalizerKind,
    bessel_value,
    bessel_value_simplified,
    bp_value,
    c_w,
    c_w1_displayed,
    e_delta_vexp,
    invariant_part,
    is_holomorphic,
    is_w_invariant,
    lemma_bh_combine,
    macdonald_sigma,
    nonsplit_via_symmetrization,
    normalizer,
    s_delta,
    sigma_w1_displayed,
    split_bf_w0,
    symmetrize_via_delta,
    symmetrizer_direct,
    xi_displayed,
    xi_nonsplit,
)
from besselgspin.characters import dominant_weights
from besselgspin.exactalg import LaurentPoly, RationalFunction, UsageError
from besselgspin.rootdata import SatakeSpec, Torus, WeylElement, special_elements
from conftest import sympy_zero, to_sympy

s0, b, v = sp.symbols("s0 b v")


def sympy_closed_form(n, torus, delta):
    """Independent transcription of the closed form, summing over signed permutations in sympy."""
    a = sp.symbols(" ".join(f"a{i}" for i in range(1, n + 1)), seq=True)
    z1, z2 = (b, s0**2 / b) if torus == "split" else (s0, -s0)
    Q = 1 - v**2 if torus == "split" else 1 + v**2

    def alt(f):
        total = 0
        for perm in itertools.permutations(range(n)):
            psign = sp.combinatorics.Permutation(list(perm)).signature()
            for signs in itertools.product((1, -1), repeat=n):
                image = {a[i]: (a[perm[i]] if signs[perm[i]] > 0 else s0**2 / a[perm[i]]) for i in range(n)}
                total += psign * sp.prod(signs) * f.xreplace(image)
        return total

    arg = sp.prod([a[i] ** (delta[i] + n - i) * (1 - z1 * v / a[i]) * (1 - z2 * v / a[i]) for i in range(n)])
    rho = sp.prod([a[i] ** (n - i) for i in range(n)])
    vexp = sum(l * (2 * n + 1 - 2 * i) for i, l in enumerate(delta, start=1))
    return v**vexp / Q * alt(arg) / alt(rho)


def weights(n, max_total):
    return [d for k in range(max_total + 1) for d in dominant_weights(n, k)]


# --- exponent of q ----------------------------------------------------------


def test_e_delta_examples():
    assert e_delta_vexp((0,)) == 0
    assert e_delta_vexp((1,)) == 1
    assert e_delta_vexp((2, 1)) == 7
    with pytest.raises(UsageError):
        e_delta_vexp((0, 1))


# --- closed form -------------------------------------------------------------


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_identity_value(n, torus):
    assert bessel_value(SatakeSpec(n, torus), (0,) * n) == 1


@pytest.mark.parametrize("torus", ["split", "nonsplit"])
@pytest.mark.parametrize("delta", [(1,), (2,), (0, 0), (1, 0), (1, 1), (2, 1)])
def test_closed_form_against_sympy(delta, torus):
    n = len(delta)
    ours = bessel_value(SatakeSpec(n, torus), delta)
    assert sympy_zero(to_sympy(ours) - sympy_closed_form(n, torus, delta))


def test_nonsplit_rank_one_by_hand():
    spec = SatakeSpec(1, "nonsplit")
    V = spec.vars
    a = LaurentPoly.var(V, "a1")
    v_ = LaurentPoly.var(V, "v")
    s2 = LaurentPoly.monomial(V, {"s0": 2})
    expected = RationalFunction(v_ * (a + s2 * a ** -1), 1 + v_ * v_)
    assert bessel_value(spec, (1,)) == expected
    # the displayed alternator form v/(1+v^2) (a - s0^2/a)^-1 A(a^2 (1 - s0^2 v^2 / a^2))
    arg = a * a * (1 - s2 * v_ * v_ * a ** -2)
    alt = arg - arg.substitute({"a1": s2 * a ** -1})
    assert bessel_value(spec, (1,)) == RationalFunction(v_ * alt, (1 + v_ * v_) * (a - s2 * a ** -1))


def test_split_rank_one_by_hand():
    spec = SatakeSpec(1, "split")
    V = spec.vars
    a, bb, v_ = (LaurentPoly.var(V, x) for x in ("a1", "b", "v"))
    s2 = LaurentPoly.monomial(V, {"s0": 2})
    num = (a + s2 * a ** -1) - (bb + s2 * bb ** -1) * v_
    assert bessel_value(spec, (1,)) == RationalFunction(v_ * num, 1 - v_ * v_)


def test_non_dominant_rejected():
    with pytest.raises(UsageError):
        bessel_value(SatakeSpec(2, "split"), (0, 1))
    with pytest.raises(UsageError):
        bessel_value(SatakeSpec(2, "split"), (1, 0, 0))


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", weights(2, 3) + weights(3, 2))
def test_z_swap_symmetry(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    assert bessel_value(spec, delta) == bessel_value(spec, delta, swapped=True)
    assert s_delta(delta, spec) == s_delta(delta, spec, swapped=True)


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", weights(2, 3))
def test_s_delta_relation(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    shift = LaurentPoly.monomial(spec.vars, {"v": e_delta_vexp(delta)})
    assert bessel_value(spec, delta) == s_delta(delta, spec) * shift


def test_s_delta_examples():
    spec = SatakeSpec(1, "nonsplit")
    assert s_delta((0,), spec) == 1
    v_inv = LaurentPoly.monomial(spec.vars, {"v": -1})
    assert s_delta((1,), spec) == bessel_value(spec, (1,)) * v_inv


# --- holomorphy --------------------------------------------------------------


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", [d for d in weights(3, 4)])
def test_holomorphic_in_satake_parameters(delta, torus):
    spec = SatakeSpec(3, torus)
    value = bessel_value(spec, delta).reduced()
    if delta[-1] == 0:
        assert value.is_laurent()
    else:
        # the only denominator left is Q(q), a nonzero constant in the parameters
        assert value.den == (spec.Q() * (-1 if torus is Torus.SPLIT else 1))
        assert is_holomorphic(value, allowed=("v",))


def test_positive_l_n_keeps_q_denominator():
    for torus in Torus:
        value = bessel_value(SatakeSpec(1, torus), (1,))
        assert not value.reduced().is_laurent()


# --- W invariance and specialization -----------------------------------------


@settings(max_examples=10)
@given(st.sampled_from([2, 3]).flatmap(lambda n: st.sampled_from(weights(n, 4))), st.sampled_from(list(Torus)))
def test_invariant_part_is_w_invariant(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    assert is_w_invariant(invariant_part(spec, delta), spec.n)


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", weights(2, 3))
def test_s0_specialization_removes_s0(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    value = bessel_value(spec, delta).substitute({"s0": 1})
    assert not value.num.uses("s0") and not value.den.uses("s0")


# --- simplified forms --------------------------------------------------------


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", [d for n in (1, 2, 3) for d in weights(n, 3) if d[-1] == 0])
def test_simplified_form_holds_when_l_n_zero(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    assert bessel_value_simplified(spec, delta, "rho") == bessel_value(spec, delta)


@pytest.mark.parametrize("torus", list(Torus))
@pytest.mark.parametrize("delta", [(1,), (2, 1), (1, 1, 1)])
def test_simplified_form_fails_when_l_n_one(delta, torus):
    spec = SatakeSpec(len(delta), torus)
    assert bessel_value_simplified(spec, delta, "rho") != bessel_value(spec, delta)


def test_printed_nonsplit_exponent_breaks_at_rank_three():
    spec = SatakeSpec(3, "nonsplit")
    assert bessel_value_simplified(spec, (1, 0, 0), "printed") != bessel_value(spec, (1, 0, 0))
    spec2 = SatakeSpec(2, "nonsplit")
    assert bessel_value_simplified(spec2, (2, 0), "printed") == bessel_value(spec2, (2, 0))


def test_simplified_domain_guard():
    with pytest.raises(UsageError):
        bessel_value_simplified(SatakeSpec(1, "split"), (2,))
    assert bessel_value_simplified(SatakeSpec(2, "split"), (0, 0)) == 1


# --- proof ingredients -------------------------------------------------------


def test_normalizer_examples():
    assert normalizer(NormalizerKind.NONSPLIT_FE, SatakeSpec(1, "nonsplit")) == 1
    spec = SatakeSpec(1, "split")
    V = spec.vars
    m = lambda **k: LaurentPoly.monomial(V, k)  # noqa: E731
    expected = RationalFunction((1 - m(a1=1, b=-1, v=1)) * (1 - m(s0=-2, a1=1, b=1, v=1)), 1 - m(s0=-2, a1=2, v=2))
    assert normalizer("split", spec) == expected
    V2 = SatakeSpec(2, "nonsplit").vars
    m2 = lambda **k: LaurentPoly.monomial(V2, k)  # noqa: E731
    n2 = normalizer(NormalizerKind.NONSPLIT_FE, SatakeSpec(2, "nonsplit"))
    assert 1 / n2 == (1 - m2(s0=-2, a1=1, a2=1, v=2)) * (1 - m2(a1=1, a2=-1, v=2))


@pytest.mark.parametrize("n", [2, 3])
def test_c_w_values(n):
    assert c_w(WeylElement.identity(n), n) == 1
    w0, w1 = special_elements(n)
    assert c_w(w1, n) == c_w1_displayed(n)
    full = RationalFunction(LaurentPoly.one(SatakeSpec(n, "split").vars))
    from besselgspin.rootdata import RootSystemB, coroot_monomial

    V = SatakeSpec(n, "split").vars
    vv = LaurentPoly.monomial(V, {"v": 2})
    for r in RootSystemB(n).positive_roots():
        m = coroot_monomial(r, V)
        full = full * RationalFunction(1 - vv * m, 1 - m)
    assert c_w(w0, n) == full


@pytest.mark.parametrize("n", [1, 2, 3])
def test_macdonald_sigma(n):
    w0, w1 = special_elements(n)
    assert macdonald_sigma(WeylElement.identity(n), (0,) * n) == 1
    for delta in weights(n, 3):
        assert macdonald_sigma(w1, delta) == sigma_w1_displayed(delta, n)


def test_macdonald_singular_parameter():
    V = SatakeSpec(1, "split").vars
    with pytest.raises(ArithmeticError):
        macdonald_sigma([LaurentPoly.var(V, "s0")], (1,))


@pytest.mark.parametrize("delta", weights(1, 4) + weights(2, 4))
def test_nonsplit_symmetrization_path(delta):
    assert nonsplit_via_symmetrization(delta, len(delta)) == bessel_value(SatakeSpec(len(delta), "nonsplit"), delta)


@pytest.mark.parametrize("delta", [(0,), (1,), (2,), (1, 0), (1, 1)])
def test_displayed_xi_symmetrizes_to_closed_form(delta):
    n = len(delta)
    assert symmetrize_via_delta(xi_displayed(delta, n), n) == bessel_value(SatakeSpec(n, "nonsplit"), delta)
    assert xi_displayed(delta, n) == xi_nonsplit(delta, n)


def test_literal_symmetrizer_agrees_for_rank_one():
    for delta in [(0,), (1,), (2,)]:
        assert symmetrizer_direct(xi_nonsplit(delta, 1), 1) == bessel_value(SatakeSpec(1, "nonsplit"), delta)


def test_bf_w0_series():
    spec = SatakeSpec(2, "split")
    V = spec.vars
    series, closed = split_bf_w0(spec, 2)
    r = LaurentPoly.monomial(V, {"s0": -2, "a2": 1, "b": 1, "v": 1})
    assert series.coeffs == (LaurentPoly.one(V), r, r * r)
    s0_series, _ = split_bf_w0(spec, 0)
    assert s0_series.coeffs == (LaurentPoly.one(V),)
    long, _ = split_bf_w0(spec, 6)
    assert all(long[k] * (1 - r) == long[k] - long[k] * r for k in range(7))
    assert closed * (1 - r) == 1
    with pytest.raises(UsageError):
        split_bf_w0(SatakeSpec(2, "nonsplit"), 2)


@pytest.mark.parametrize("delta", [d for n in (1, 2) for d in weights(n, 3)])
def test_lemma_bh_with_weighted_l_n_decrement(delta):
    spec = SatakeSpec(len(delta), "split")
    closed = bessel_value(spec, delta)
    bp = bp_value(delta, spec)
    if delta[-1] == 0:
        assert lemma_bh_combine(bp, None, spec, 0) == closed
        return
    prime = delta[:-1] + (delta[-1] - 1,)
    z1, _ = spec.z()
    assert lemma_bh_combine(bp, bp_value(prime, spec), spec, delta[-1], weight=z1) == closed
    assert lemma_bh_combine(bp, bp_value(prime, spec), spec, delta[-1]) != closed


def test_lemma_bh_v_zero_limit():
    spec = SatakeSpec(1, "split")
    bp, bpp = bp_value((1,), spec), bp_value((0,), spec)
    at_zero = lemma_bh_combine(bp, bpp, spec, 1).substitute({"v": 0})
    assert at_zero == (bp / normalizer("split", spec)).substitute({"v": 0})


def test_lemma_bh_needs_split_and_prime():
    with pytest.raises(UsageError):
        lemma_bh_combine(None, None, SatakeSpec(1, "nonsplit"), 0)
    with pytest.raises(UsageError):
        lemma_bh_combine(bp_value((1,), SatakeSpec(1, "split")), None, SatakeSpec(1, "split"), 1)


