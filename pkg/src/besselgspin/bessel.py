"""Closed-form unramified Bessel values B_delta and the ingredients of their derivation.

Conventions: ``q^{e_delta}`` is ``v ** e_delta_vexp(delta)``; ``alpha_0 = s0^2``;
the non-split pair is ``(z1, z2) = (s0, -s0)`` with ``Q = 1 + v^2``; the split
pair is ``(b, s0^2/b)`` with ``Q = 1 - v^2``.

The alternant exponent is ``l_i + (n + 1 - i)`` by default ("rho").  The
exponent ``l_i + i`` ("index") is available for comparison only; it agrees
with "rho" up to the sign of the index reversal at delta = 0 and vanishes on
many dominant weights.
"""

from __future__ import annotations

import enum
from typing import Sequence

from .characters import alternator_W, check_dominant, delta_gsp, divide_by_delta, symmetrizer_W
from .exactalg import LaurentPoly, NotDivisible, RationalFunction, TruncatedSeries, UsageError, series_inv_one_minus
from .rootdata import (
    RootSystemB,
    SatakeSpec,
    Torus,
    WeylElement,
    coroot_monomial,
    special_elements,
    weyl_act,
)

CONVENTIONS = ("rho", "index")


class NormalizerKind(enum.Enum):
    NONSPLIT_FE = "nonsplit"
    SPLIT_FE = "split"


def e_delta_vexp(delta: Sequence[int], n: int | None = None) -> int:
    """Exponent of v equal to q^{e_delta}: sum of l_i (2n + 1 - 2i)."""
    delta = check_dominant(delta, n)
    n = len(delta)
    return sum(l * (2 * n + 1 - 2 * i) for i, l in enumerate(delta, start=1))


def _exponents(delta: tuple[int, ...], convention: str) -> list[int]:
    n = len(delta)
    if convention == "rho":
        return [l + n + 1 - i for i, l in enumerate(delta, start=1)]
    if convention == "index":
        return [l + i for i, l in enumerate(delta, start=1)]
    raise UsageError(f"unknown exponent convention {convention!r}; expected one of {CONVENTIONS}")


def _mono(V, **powers) -> LaurentPoly:
    return LaurentPoly.monomial(V, powers)


def local_factor(spec: SatakeSpec, i: int, swapped: bool = False, which: str = "both") -> LaurentPoly:
    """``(1 - z1 v/a_i)(1 - z2 v/a_i)``, or one of its two factors."""
    V = spec.vars
    z1, z2 = spec.z(swapped)
    t = LaurentPoly.monomial(V, {"v": 1, f"a{i}": -1})
    f1 = 1 - z1 * t
    f2 = 1 - z2 * t
    if which == "both":
        return f1 * f2
    if which == "z1":
        return f1
    if which == "z2":
        return f2
    raise UsageError(f"unknown factor selector {which!r}")


def bessel_argument(spec: SatakeSpec, delta: Sequence[int], convention: str = "rho",
                    swapped: bool = False) -> LaurentPoly:
    """``prod_i a_i^{exponent_i} (1 - z1 v/a_i)(1 - z2 v/a_i)`` (the alternator argument)."""
    delta = check_dominant(delta, spec.n)
    V = spec.vars
    exps = _exponents(delta, convention)
    out = LaurentPoly.monomial(V, {f"a{i}": exps[i - 1] for i in range(1, spec.n + 1)})
    for i in range(1, spec.n + 1):
        out = out * local_factor(spec, i, swapped)
    return out


def bessel_alternant(spec: SatakeSpec, delta: Sequence[int], convention: str = "rho",
                     swapped: bool = False) -> LaurentPoly:
    return alternator_W(bessel_argument(spec, delta, convention, swapped), spec.n)


def invariant_part(spec: SatakeSpec, delta: Sequence[int], convention: str = "rho",
                   swapped: bool = False) -> LaurentPoly:
    """``Delta^{-1} A(argument)``; exact, so a W-invariant Laurent polynomial."""
    return divide_by_delta(bessel_alternant(spec, delta, convention, swapped), spec.n)


def s_delta(delta: Sequence[int], spec: SatakeSpec, convention: str = "rho",
            swapped: bool = False) -> RationalFunction:
    """``(Q Delta)^{-1} A(argument)``, reduced when Q divides."""
    delta = check_dominant(delta, spec.n)
    return RationalFunction(invariant_part(spec, delta, convention, swapped), spec.Q()).reduced()


def bessel_value(spec: SatakeSpec, delta: Sequence[int], convention: str = "rho",
                 swapped: bool = False) -> RationalFunction:
    """B_delta = q^{e_delta} / Q * Delta^{-1} A(argument)."""
    delta = check_dominant(delta, spec.n)
    shift = _mono(spec.vars, v=e_delta_vexp(delta))
    return s_delta(delta, spec, convention, swapped) * shift


def bessel_value_simplified(spec: SatakeSpec, delta: Sequence[int], exponent_rule: str = "printed") -> RationalFunction:
    """Simplified form ``q^{e_delta} Delta^{-1} A(a_n prod_{i<n} a_i^{m_i} (factors))``.

    ``exponent_rule="printed"`` uses m_i = l_i + (n + i - 1) for the non-split
    torus and l_i + (n + 1 - i) for the split torus, as displayed for each
    torus; ``"rho"`` uses l_i + (n + 1 - i) for both.  Only l_n in {0, 1} is
    accepted; the value ignores l_n apart from q^{e_delta}.
    """
    delta = check_dominant(delta, spec.n)
    n = spec.n
    if delta[-1] not in (0, 1):
        raise UsageError(f"simplified form is stated only for l_n in {{0, 1}}, got l_n = {delta[-1]}")
    V = spec.vars
    if exponent_rule == "printed" and spec.torus is Torus.NONSPLIT:
        exps = [delta[i - 1] + n + i - 1 for i in range(1, n)]
    elif exponent_rule in ("printed", "rho"):
        exps = [delta[i - 1] + n + 1 - i for i in range(1, n)]
    else:
        raise UsageError(f"unknown exponent rule {exponent_rule!r}")
    arg = LaurentPoly.monomial(V, {f"a{n}": 1, **{f"a{i}": exps[i - 1] for i in range(1, n)}})
    for i in range(1, n):
        arg = arg * local_factor(spec, i)
    alt = alternator_W(arg, n)
    try:
        inner = divide_by_delta(alt, n)
    except NotDivisible:
        return RationalFunction(alt * _mono(V, v=e_delta_vexp(delta)), delta_gsp(n, V))
    return RationalFunction(inner * _mono(V, v=e_delta_vexp(delta)))


def normalizer(kind: "NormalizerKind | str", spec: SatakeSpec) -> RationalFunction:
    """Normalizing factor multiplying H_chi in the functional equations.

    Non-split: 1 / prod_{i<j} (1 - a_i a_j v^2/s0^2)(1 - a_i v^2/a_j).
    Split: prod_i (1 - a_i v/b)(1 - a_i b v/s0^2) divided by that same product
    times prod_i (1 - a_i^2 v^2/s0^2).
    """
    kind = NormalizerKind(kind) if not isinstance(kind, NormalizerKind) else kind
    V = spec.vars
    n = spec.n
    den = LaurentPoly.one(V)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            den = den * (1 - _mono(V, s0=-2, v=2, **{f"a{i}": 1, f"a{j}": 1}))
            den = den * (1 - _mono(V, v=2, **{f"a{i}": 1, f"a{j}": -1}))
    if kind is NormalizerKind.NONSPLIT_FE:
        return RationalFunction(LaurentPoly.one(V), den)
    num = LaurentPoly.one(V)
    for i in range(1, n + 1):
        num = num * (1 - _mono(V, v=1, b=-1, **{f"a{i}": 1}))
        num = num * (1 - _mono(V, s0=-2, v=1, b=1, **{f"a{i}": 1}))
        den = den * (1 - _mono(V, s0=-2, v=2, **{f"a{i}": 2}))
    return RationalFunction(num, den)


def c_w(w: WeylElement, spec: "SatakeSpec | int") -> RationalFunction:
    """prod over inversions r of w of (1 - v^2 chi(r^vee)) / (1 - chi(r^vee))."""
    V = spec.vars if isinstance(spec, SatakeSpec) else SatakeSpec(spec, Torus.SPLIT).vars
    num = LaurentPoly.one(V)
    den = LaurentPoly.one(V)
    v2 = _mono(V, v=2)
    for r in w.inversions():
        m = coroot_monomial(r, V)
        num = num * (1 - v2 * m)
        den = den * (1 - m)
    return RationalFunction(num, den)


def c_w1_displayed(n: int) -> RationalFunction:
    """The product displayed for c_{w1}, transcribed independently of inversion sets."""
    V = SatakeSpec(n, Torus.SPLIT).vars
    num = LaurentPoly.one(V)
    den = LaurentPoly.one(V)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            num = num * (1 - _mono(V, s0=-2, v=2, **{f"a{i}": 1, f"a{j}": 1}))
            num = num * (1 - _mono(V, v=2, **{f"a{i}": 1, f"a{j}": -1}))
            den = den * (1 - _mono(V, s0=-2, **{f"a{i}": 1, f"a{j}": 1}))
            den = den * (1 - _mono(V, **{f"a{i}": 1, f"a{j}": -1}))
    for i in range(1, n):
        num = num * (1 - _mono(V, s0=-2, v=2, **{f"a{i}": 2}))
        den = den * (1 - _mono(V, s0=-2, **{f"a{i}": 2}))
    return RationalFunction(num, den)


def transformed_parameters(w: WeylElement, n: int) -> list[LaurentPoly]:
    """chi'_1..chi'_n as monomials: the images of a_1..a_n under w."""
    V = SatakeSpec(n, Torus.SPLIT).vars
    return [weyl_act(w, LaurentPoly.var(V, f"a{i}")) for i in range(1, n + 1)]


def macdonald_gl2_quotient(chi_n: LaurentPoly, l_n: int) -> RationalFunction:
    """The GL(2) Macdonald quotient in chi'_n and chi_0 / chi'_n."""
    V = chi_n.vars
    s02 = _mono(V, s0=2)
    v2 = _mono(V, v=2)
    other = s02 * chi_n.inverse_monomial()
    den = chi_n - other
    if den.is_zero():
        raise ArithmeticError("singular parameter: chi'_n^2 = chi_0 (chi is not regular)")
    num = (chi_n - other * v2) * chi_n ** l_n - (other - chi_n * v2) * s02 ** l_n * chi_n ** (-l_n)
    return RationalFunction(num, den)


def macdonald_sigma(wchi: "WeylElement | Sequence[LaurentPoly]", delta: Sequence[int],
                    n: int | None = None) -> RationalFunction:
    """sigma_{w chi}(varpi^delta) from the Macdonald formula."""
    if isinstance(wchi, WeylElement):
        n = wchi.n if n is None else n
        wchi = transformed_parameters(wchi, n)
    wchi = list(wchi)
    n = len(wchi) if n is None else n
    delta = check_dominant(delta, n)
    for m in wchi:
        if not m.is_monomial():
            raise UsageError("transformed parameters must be monomials")
    V = wchi[0].vars
    Q = 1 + _mono(V, v=2)
    prefix = _mono(V, v=e_delta_vexp(delta))
    for i in range(n - 1):
        prefix = prefix * wchi[i] ** delta[i]
    return (RationalFunction(prefix, Q) * macdonald_gl2_quotient(wchi[-1], delta[-1])).reduced()


def sigma_w1_displayed(delta: Sequence[int], n: int) -> RationalFunction:
    """Displayed sigma_{w1 chi}(varpi^delta): alpha_0^{sum_{i<n} l_i} prod_{i<n} a_i^{-l_i} times the GL2 quotient."""
    delta = check_dominant(delta, n)
    V = SatakeSpec(n, Torus.SPLIT).vars
    mono = _mono(V, v=e_delta_vexp(delta), s0=2 * sum(delta[:-1]),
                 **{f"a{i}": -delta[i - 1] for i in range(1, n)})
    a_n = LaurentPoly.var(V, f"a{n}")
    s02 = _mono(V, s0=2)
    v2 = _mono(V, v=2)
    l = delta[-1]
    num = (a_n - s02 * a_n ** -1 * v2) * a_n ** l - (s02 * a_n ** -1 - a_n * v2) * s02 ** l * a_n ** (-l)
    return RationalFunction(mono * num, (1 + v2) * (a_n - s02 * a_n ** -1))


def xi_nonsplit(delta: Sequence[int], n: int) -> RationalFunction:
    """The term of normalizer * c_{w1} * sigma_{w1} proportional to prod a_i^{-l_i}.

    Built from the ingredients: the non-split normalizer, c_{w1} from the
    inversion set, and the a_n^{-l_n} half of the GL(2) Macdonald quotient.
    """
    delta = check_dominant(delta, n)
    spec = SatakeSpec(n, Torus.NONSPLIT)
    V = spec.vars
    _, w1 = special_elements(n)
    chi = transformed_parameters(w1, n)
    prefix = _mono(V, v=e_delta_vexp(delta))
    for i in range(n - 1):
        prefix = prefix * chi[i] ** delta[i]
    a_n = chi[-1]
    s02 = _mono(V, s0=2)
    v2 = _mono(V, v=2)
    l = delta[-1]
    # second summand of the GL(2) quotient: the one carrying chi_0^l a_n^-l
    tail = RationalFunction(-(s02 * a_n ** -1 - a_n * v2) * s02 ** l * a_n ** (-l), a_n - s02 * a_n ** -1)
    return normalizer(NormalizerKind.NONSPLIT_FE, spec) * c_w(w1, spec) * RationalFunction(prefix, 1 + v2) * tail


def xi_displayed(delta: Sequence[int], n: int) -> RationalFunction:
    """Displayed Xi (with the q^{e_delta}/(1+q^{-1}) prefactor restored)."""
    delta = check_dominant(delta, n)
    V = SatakeSpec(n, Torus.NONSPLIT).vars
    num = _mono(V, v=e_delta_vexp(delta), s0=2 * sum(delta), **{f"a{i}": -delta[i - 1] for i in range(1, n + 1)})
    den = 1 + _mono(V, v=2)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            den = den * (1 - _mono(V, s0=-2, **{f"a{i}": 1, f"a{j}": 1}))
            den = den * (1 - _mono(V, **{f"a{i}": 1, f"a{j}": -1}))
    for i in range(1, n + 1):
        num = num * (1 - _mono(V, s0=-2, v=2, **{f"a{i}": 2}))
        den = den * (1 - _mono(V, s0=-2, **{f"a{i}": 2}))
    return RationalFunction(num, den)


def symmetrize_via_delta(xi: RationalFunction, n: int) -> RationalFunction:
    """S(xi) computed as Delta^{-1} A(xi Delta).

    ``xi * Delta`` must reduce to a Laurent polynomial up to a denominator
    free of the a-variables (such as 1 + v^2), which is carried through.
    """
    Delta = delta_gsp(n, xi.vars)
    prod = RationalFunction(xi.num * Delta, xi.den)
    # peel off any a-free part of the denominator before dividing
    a_names = [f"a{i}" for i in range(1, n + 1)]
    if prod.den.free_of(a_names):
        top, scalar = prod.num, prod.den
    else:
        top = None
        for split in _a_free_splits(prod.den, a_names):
            rest, scalar = split
            try:
                top = prod.num.exact_div(rest)
                break
            except NotDivisible:
                continue
        if top is None:
            raise ArithmeticError("xi * Delta is not a Laurent polynomial")
    alt = alternator_W(top, n)
    return RationalFunction(divide_by_delta(alt, n), scalar).reduced()


def _a_free_splits(den: LaurentPoly, a_names):
    """Candidate factorizations den = rest * scalar with scalar free of a-variables."""
    V = den.vars
    one = LaurentPoly.one(V)
    v2 = _mono(V, v=2)
    yield den, one
    for scalar in (1 + v2, 1 - v2):
        try:
            yield den.exact_div(scalar), scalar
        except NotDivisible:
            pass


def symmetrizer_direct(xi: RationalFunction, n: int) -> RationalFunction:
    """S(xi) as a literal sum over W of rational functions (small n only)."""
    from .rootdata import enumerate_weyl

    total = RationalFunction(LaurentPoly.zero(xi.vars))
    for w in enumerate_weyl(n):
        term = RationalFunction(weyl_act(w, xi.num), weyl_act(w, xi.den))
        total = total + term
    return total


def nonsplit_via_symmetrization(delta: Sequence[int], n: int) -> RationalFunction:
    """B_delta for the non-split torus, obtained by symmetrizing xi."""
    return symmetrize_via_delta(xi_nonsplit(delta, n), n)


def split_bf_w0(spec: SatakeSpec, order: int) -> tuple[TruncatedSeries, RationalFunction]:
    """B(f_{w0}) = 1 / (1 - a_n b v / s0^2): closed form and its geometric partial sums.

    The series variable X counts powers of the ratio a_n b v / s0^2.
    """
    if spec.torus is not Torus.SPLIT:
        raise UsageError("B(f_w0) is defined for the split torus")
    V = spec.vars
    ratio = _mono(V, s0=-2, b=1, v=1, **{f"a{spec.n}": 1})
    series = series_inv_one_minus(ratio * LaurentPoly.var(V, "X"), order)
    return series, RationalFunction(LaurentPoly.one(V), 1 - ratio)


def y_split(delta: Sequence[int], spec: SatakeSpec) -> RationalFunction:
    """Presymmetrization term for the split case: N * c_{w0} * (w0 chi delta^1/2)(varpi^delta) * B(f_{w0})."""
    if spec.torus is not Torus.SPLIT:
        raise UsageError("split torus required")
    delta = check_dominant(delta, spec.n)
    V = spec.vars
    w0, _ = special_elements(spec.n)
    mono = _mono(V, v=e_delta_vexp(delta), s0=2 * sum(delta), **{f"a{i}": -delta[i - 1] for i in range(1, spec.n + 1)})
    _, bf = split_bf_w0(spec, 0)
    return normalizer(NormalizerKind.SPLIT_FE, spec) * c_w(w0, spec) * mono * bf


def bp_normalized(delta: Sequence[int], spec: SatakeSpec) -> RationalFunction:
    """The W-invariant normalization of B(P_delta), by symmetrizing :func:`y_split`."""
    return symmetrize_via_delta(y_split(delta, spec), spec.n)


def bp_value(delta: Sequence[int], spec: SatakeSpec) -> RationalFunction:
    """B(P_delta) in the normalization where N^{-1} B(P_delta) is :func:`bp_normalized`."""
    return normalizer(NormalizerKind.SPLIT_FE, spec) * bp_normalized(delta, spec)


def lemma_bh_combine(bp_delta: RationalFunction, bp_delta_prime: "RationalFunction | None",
                     spec: SatakeSpec, l_n: int, weight: "LaurentPoly | None" = None) -> RationalFunction:
    """N^{-1} B(P_delta) if l_n = 0, else N^{-1}/(1 - q^{-1}) (B(P_delta) - q^{-1} w B(P_delta')).

    ``weight`` defaults to 1; it exists so the convention report can test a
    weighted variant of the subtraction.
    """
    if spec.torus is not Torus.SPLIT:
        raise UsageError("the recursion is defined for the split torus only")
    V = spec.vars
    Ninv = 1 / normalizer(NormalizerKind.SPLIT_FE, spec)
    if l_n == 0:
        return Ninv * bp_delta
    if bp_delta_prime is None:
        raise UsageError("l_n > 0 needs B(P_delta')")
    v2 = _mono(V, v=2)
    w = LaurentPoly.one(V) if weight is None else weight
    return Ninv * (bp_delta - bp_delta_prime * (v2 * w)) / (1 - v2)


def is_holomorphic(value: RationalFunction, allowed: Sequence[str] = ()) -> bool:
    """True if the reduced denominator is a monomial times a polynomial in ``allowed`` only."""
    r = value.reduced()
    if r.is_laurent():
        return True
    return r.den.free_of([s for s in r.vars.names if s not in allowed])


def is_w_invariant(p: LaurentPoly, n: int) -> bool:
    """True if ``p`` is fixed by every simple reflection."""
    from .rootdata import simple_reflections

    return all(weyl_act(s, p) == p for s in simple_reflections(n))


def coroot_table(n: int) -> list[tuple[str, LaurentPoly]]:
    V = SatakeSpec(n, Torus.SPLIT).vars
    return [(str(r), coroot_monomial(r, V)) for r in RootSystemB(n).positive_roots()]


__all__ = [
    "NormalizerKind",
    "e_delta_vexp",
    "bessel_argument",
    "bessel_alternant",
    "invariant_part",
    "s_delta",
    "bessel_value",
    "bessel_value_simplified",
    "normalizer",
    "c_w",
    "c_w1_displayed",
    "macdonald_sigma",
    "sigma_w1_displayed",
    "xi_nonsplit",
    "xi_displayed",
    "symmetrize_via_delta",
    "symmetrizer_direct",
    "nonsplit_via_symmetrization",
    "split_bf_w0",
    "y_split",
    "bp_normalized",
    "bp_value",
    "lemma_bh_combine",
    "is_holomorphic",
    "is_w_invariant",
    "symmetrizer_W",
]
