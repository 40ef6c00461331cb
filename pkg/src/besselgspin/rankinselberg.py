"""Generating series for the unramified Rankin-Selberg integral and its exact truncated checks.

All series are truncated by total X-degree.  Every summand is a product of
an a-part and a g-part, so the double alternator factors as
``A(a-part) * B(g-part)``; the joint form is kept as an independent oracle
in :func:`d_series` (``method="alternator"``).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .bessel import _exponents, local_factor
from .characters import (
    alternator_GL,
    alternator_W,
    check_dominant,
    delta_gl,
    delta_gsp,
    divide_by_delta,
    dominant_weights,
    gl_rho_monomial,
    rho_monomial,
    schur,
    sp_char_bar,
)
from .exactalg import LaurentPoly, TruncatedSeries, UsageError, VarTable, series_inv_one_minus
from .rootdata import SatakeSpec, Torus

JOBS_ENV = "BESSELGSPIN_JOBS"


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise UsageError(f"{JOBS_ENV} must be >= 1")
    return jobs


def _map_degrees(fn: Callable, args: list[tuple], jobs: int | None) -> list:
    """Evaluate ``fn(*a)`` for each tuple, optionally in worker processes; order is preserved."""
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


# ---------------------------------------------------------------------------
# building blocks


def _check_order(order: int) -> int:
    if int(order) != order or order < 0:
        raise UsageError(f"order must be a non-negative integer, got {order!r}")
    return int(order)


def _X(V: VarTable, k: int = 1) -> LaurentPoly:
    return LaurentPoly.monomial(V, {"X": k})


@lru_cache(maxsize=None)
def gl_part(g_exps: tuple[int, ...], V: VarTable) -> LaurentPoly:
    """``Delta_GL^{-1} B(prod g_i^{g_exps[i]})`` over ``g1..gm``, m = len(g_exps)."""
    m = len(g_exps)
    mono = LaurentPoly.monomial(V, {f"g{i + 1}": g_exps[i] for i in range(m)})
    alt = alternator_GL(mono, m)
    if alt.is_zero():
        return alt
    return alt.exact_div(delta_gl(m, V))


def gl_part_shifted(delta: Sequence[int], V: VarTable) -> LaurentPoly:
    """Schur polynomial of ``delta`` in ``g1..g_len(delta)`` computed as an alternant quotient."""
    m = len(delta)
    return gl_part(tuple(delta[i] + m - 1 - i for i in range(m)), V)


def sp_part(p: LaurentPoly, n: int) -> LaurentPoly:
    """``Delta^{-1} A(p)``."""
    return divide_by_delta(alternator_W(p, n), n)


def _a_monomial(V: VarTable, exps: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial(V, {f"a{i + 1}": e for i, e in enumerate(exps)})


def _rho_shift(delta: Sequence[int]) -> list[int]:
    n = len(delta)
    return [l + n - i for i, l in enumerate(delta)]


@lru_cache(maxsize=None)
def s_numerator(n: int, torus: str, delta: tuple[int, ...], convention: str = "rho",
                perturb: bool = False, upto: int | None = None) -> LaurentPoly:
    """``Delta^{-1} A(prod_i a_i^{e_i} prod_{i<=upto} f_i)``, i.e. Q * S_delta when upto = n.

    ``f_i = (1 - z1 v/a_i)(1 - z2 v/a_i)``; ``perturb`` flips the sign in the
    z1 factor (negative control).
    """
    spec = SatakeSpec(n, Torus.parse(torus))
    V = spec.vars
    upto = n if upto is None else upto
    arg = _a_monomial(V, _exponents(delta, convention))
    for i in range(1, upto + 1):
        if perturb:
            z1, _ = spec.z()
            t = LaurentPoly.monomial(V, {"v": 1, f"a{i}": -1})
            arg = arg * (1 + z1 * t) * local_factor(spec, i, which="z2")
        else:
            arg = arg * local_factor(spec, i)
    return sp_part(arg, n)


# ---------------------------------------------------------------------------
# series


def _d_coefficient_character(n: int, k: int) -> LaurentPoly:
    V = VarTable.standard(n)
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(n, k):
        g = schur(delta, n, V).as_laurent()
        sp = sp_char_bar(delta, n, V).as_laurent() * LaurentPoly.monomial(V, {"s0": k})
        acc = acc + g * sp
    return acc


def _d_coefficient_alternator(n: int, k: int) -> LaurentPoly:
    V = VarTable.standard(n)
    base = rho_monomial(V, n) * gl_rho_monomial(V, n)
    den = delta_gsp(n, V) * delta_gl(n, V)
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(n, k):
        mono = base * LaurentPoly.monomial(
            V, {**{f"a{i + 1}": l for i, l in enumerate(delta)}, **{f"g{i + 1}": l for i, l in enumerate(delta)}})
        acc = acc + alternator_GL(alternator_W(mono, n), n).exact_div(den)
    return acc


def d_series(n: int, order: int, method: str = "character", jobs: int | None = None) -> TruncatedSeries:
    """D(alpha, gamma; X) through X^order.

    ``method="character"``: sum of s0^{|delta|} * schur(delta; g) * Sp-character(delta; t-bar).
    ``method="alternator"``: joint double alternator divided by both Weyl denominators.
    """
    order = _check_order(order)
    fns = {"character": _d_coefficient_character, "alternator": _d_coefficient_alternator}
    if method not in fns:
        raise UsageError(f"unknown method {method!r}")
    coeffs = _map_degrees(fns[method], [(n, k) for k in range(order + 1)], jobs)
    return TruncatedSeries(VarTable.standard(n), order, coeffs)


def _geometric_product(monomials: list[LaurentPoly], V: VarTable, order: int) -> TruncatedSeries:
    out = TruncatedSeries.one(V, order)
    for m in monomials:
        out = out * series_inv_one_minus(m, order)
    return out


def _poly_product(factors: list[LaurentPoly], V: VarTable, order: int) -> TruncatedSeries:
    out = TruncatedSeries.one(V, order)
    for f in factors:
        out = out * TruncatedSeries.from_poly(f, order)
    return out


def _sigma_lambda_monomials(m: int, spec: SatakeSpec) -> list[LaurentPoly]:
    V = spec.vars
    if m > V.gl_rank:
        raise UsageError(f"only {V.gl_rank} g-variables available")
    out = []
    for z in spec.z():
        for i in range(1, m + 1):
            out.append(z * LaurentPoly.monomial(V, {f"g{i}": 1, "v": 1, "X": 1}))
    return out


def lfactor_sigma_lambda(m: int, spec: SatakeSpec, order: int) -> TruncatedSeries:
    """prod_{i<=m} 1 / ((1 - z1 g_i v X)(1 - z2 g_i v X))."""
    order = _check_order(order)
    return _geometric_product(_sigma_lambda_monomials(m, spec), spec.vars, order)


def inverse_lfactor_sigma_lambda(m: int, spec: SatakeSpec, order: int) -> TruncatedSeries:
    order = _check_order(order)
    return _poly_product([1 - x for x in _sigma_lambda_monomials(m, spec)], spec.vars, order)


def _ext_square_monomials(l: int, V: VarTable) -> list[LaurentPoly]:
    return [LaurentPoly.monomial(V, {"s0": 2, f"g{i}": 1, f"g{j}": 1, "X": 2})
            for i in range(1, l + 1) for j in range(i + 1, l + 1)]


def lfactor_ext_square(l: int, order: int, vars: VarTable | None = None) -> TruncatedSeries:
    """prod_{i<j<=l} 1 / (1 - s0^2 g_i g_j X^2)."""
    order = _check_order(order)
    if l < 1:
        raise UsageError("l must be >= 1")
    V = vars or VarTable.standard(l)
    return _geometric_product(_ext_square_monomials(l, V), V, order)


def inverse_lfactor_ext_square(l: int, order: int, vars: VarTable) -> TruncatedSeries:
    order = _check_order(order)
    return _poly_product([1 - x for x in _ext_square_monomials(l, vars)], vars, order)


def standard_tensor_monomials(n: int, m: int, V: VarTable) -> list[LaurentPoly]:
    """g_i mu_k X for i <= m and mu = (a_1..a_n, s0^2/a_n..s0^2/a_1)."""
    mus = [LaurentPoly.var(V, f"a{k}") for k in range(1, n + 1)]
    mus += [LaurentPoly.monomial(V, {"s0": 2, f"a{k}": -1}) for k in range(n, 0, -1)]
    return [LaurentPoly.monomial(V, {f"g{i}": 1, "X": 1}) * mu for i in range(1, m + 1) for mu in mus]


def lfactor_pi_sigma(n: int, order: int, m: int | None = None, method: str = "product",
                     jobs: int | None = None) -> TruncatedSeries:
    """L(s + 1/2, pi x sigma) through X^order.

    ``method="product"``: exterior-square factor times D (requires m = n).
    ``method="euler"``: the direct product over g_i mu_k.
    """
    order = _check_order(order)
    m = n if m is None else m
    V = VarTable.standard(n)
    if method == "product":
        if m != n:
            raise UsageError("the product path needs m = n; use method='euler'")
        return lfactor_ext_square(n, order, V) * d_series(n, order, jobs=jobs)
    if method == "euler":
        return _geometric_product(standard_tensor_monomials(n, m, V), V, order)
    raise UsageError(f"unknown method {method!r}")


def _zeta_coefficient(n: int, torus: str, k: int, convention: str, perturb: bool) -> LaurentPoly:
    """Q times the X^k coefficient of the local zeta series."""
    spec = SatakeSpec(n, Torus.parse(torus))
    V = spec.vars
    Q = spec.Q()
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(n, k):
        term = gl_part_shifted(delta, V) * s_numerator(n, spec.torus.value, delta, convention, perturb)
        acc = acc + (term if delta[-1] == 0 else term * Q)
    return acc


def zeta_local_series_scaled(n: int, spec: SatakeSpec, order: int, convention: str = "rho",
                             perturb: bool = False, jobs: int | None = None) -> TruncatedSeries:
    """Q(q) times the local zeta series; every coefficient is a Laurent polynomial under any convention."""
    order = _check_order(order)
    if spec.n != n:
        raise UsageError("spec rank differs from n")
    args = [(n, spec.torus.value, k, convention, perturb) for k in range(order + 1)]
    return TruncatedSeries(spec.vars, order, _map_degrees(_zeta_coefficient, args, jobs))


def zeta_local_series(n: int, spec: SatakeSpec, order: int, convention: str = "rho",
                      jobs: int | None = None) -> TruncatedSeries:
    """sum_{l_n = 0} X^{|delta|} s_delta(g) S_delta + Q sum_{l_n > 0} X^{|delta|} s_delta(g) S_delta."""
    scaled = zeta_local_series_scaled(n, spec, order, convention, jobs=jobs)
    Q = spec.Q()
    return TruncatedSeries(spec.vars, scaled.order, [c.exact_div(Q) for c in scaled.coeffs])


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class CoefficientCheck:
    degree: int
    passed: bool
    lhs_minus_rhs_terms: int

    def to_json(self) -> dict:
        return {"degree": self.degree, "pass": self.passed, "lhs_minus_rhs_terms": self.lhs_minus_rhs_terms}


@dataclass
class Report:
    identity: str
    n: int
    torus: str | None
    order: int
    coefficients: list[CoefficientCheck]
    options: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.coefficients)

    def first_failure(self) -> int | None:
        return next((c.degree for c in self.coefficients if not c.passed), None)

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "n": self.n,
            "torus": self.torus,
            "order": self.order,
            "coefficients": [c.to_json() for c in self.coefficients],
        }
        if self.options:
            out["options"] = dict(sorted(self.options.items()))
        out["pass"] = self.passed
        return out


Comparator = Callable[[LaurentPoly, LaurentPoly], bool]


def _compare(identity: str, n: int, spec: SatakeSpec | None, lhs: TruncatedSeries, rhs: TruncatedSeries,
             comparator: Comparator | None = None, options: dict | None = None) -> Report:
    order = min(lhs.order, rhs.order)
    checks = []
    for k in range(order + 1):
        diff = lhs[k] - rhs[k]
        ok = diff.is_zero() if comparator is None else comparator(lhs[k], rhs[k])
        checks.append(CoefficientCheck(k, ok, len(diff)))
    return Report(identity, n, spec.torus.value if spec else None, order, checks, options or {})


def _check_spec(n: int, spec: SatakeSpec) -> None:
    if spec.n != n:
        raise UsageError(f"spec rank {spec.n} differs from n = {n}")


def _bfg1_rhs_coefficient(n: int, torus: str, k: int) -> LaurentPoly:
    spec = SatakeSpec(n, Torus.parse(torus))
    V = spec.vars
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(n, k):
        arg = _a_monomial(V, _rho_shift(delta))
        for i in range(1, n + 1):
            arg = arg * local_factor(spec, i, which="z1")
        acc = acc + gl_part_shifted(delta, V) * sp_part(arg, n)
    return acc


def verify_bfg1(n: int, spec: SatakeSpec, order: int, perturb: bool = False,
                comparator: Comparator | None = None, jobs: int | None = None) -> Report:
    """D * prod_i (1 - z1 g_i v X) against the single-factor alternator sum.

    ``perturb`` replaces the left factor by (1 + z1 g_i v X).
    """
    order = _check_order(order)
    _check_spec(n, spec)
    V = spec.vars
    z1, _ = spec.z()
    sign = 1 if perturb else -1
    factors = [1 + sign * z1 * LaurentPoly.monomial(V, {f"g{i}": 1, "v": 1, "X": 1}) for i in range(1, n + 1)]
    lhs = d_series(n, order, jobs=jobs) * _poly_product(factors, V, order)
    args = [(n, spec.torus.value, k) for k in range(order + 1)]
    rhs = TruncatedSeries(V, order, _map_degrees(_bfg1_rhs_coefficient, args, jobs))
    return _compare("bfg1", n, spec, lhs, rhs, comparator, {"perturb": perturb})


def _claim_sum(n: int, torus: str, subset: tuple[int, ...], k: int, shifted: bool) -> LaurentPoly:
    """X^k coefficient of the sum over l (shifted: l - chi_S dominant; else l dominant)."""
    spec = SatakeSpec(n, Torus.parse(torus))
    V = spec.vars
    z1, _ = spec.z()
    chi = [1 if i + 1 in subset else 0 for i in range(n)]
    if shifted:
        if k < len(subset):
            return LaurentPoly.zero(V)
        ells = [tuple(m + c for m, c in zip(mu, chi)) for mu in dominant_weights(n, k - len(subset))]
    else:
        ells = dominant_weights(n, k)
    acc = LaurentPoly.zero(V)
    for ell in ells:
        arg = _a_monomial(V, _rho_shift(ell))
        for i in subset:
            arg = arg * (-z1 * LaurentPoly.monomial(V, {"v": 1, f"a{i}": -1}))
        g = gl_part(tuple(l + n - 1 - i for i, l in enumerate(ell)), V)
        if g.is_zero():
            continue
        acc = acc + g * sp_part(arg, n)
    return acc


def subsets(n: int) -> list[tuple[int, ...]]:
    """All subsets of {1..n}, ordered by size then lexicographically."""
    from itertools import combinations

    return [c for r in range(n + 1) for c in combinations(range(1, n + 1), r)]


def verify_claim(n: int, spec: SatakeSpec, order: int, comparator: Comparator | None = None,
                 jobs: int | None = None) -> Report:
    """For every subset S, the shifted summation domain gives the same truncated sum as the dominant one."""
    order = _check_order(order)
    _check_spec(n, spec)
    V = spec.vars
    t = spec.torus.value
    per_subset = {}
    checks = [CoefficientCheck(k, True, 0) for k in range(order + 1)]
    for S in subsets(n):
        args_l = [(n, t, S, k, True) for k in range(order + 1)]
        args_r = [(n, t, S, k, False) for k in range(order + 1)]
        lhs = TruncatedSeries(V, order, _map_degrees(_claim_sum, args_l, jobs))
        rhs = TruncatedSeries(V, order, _map_degrees(_claim_sum, args_r, jobs))
        rep = _compare("claim", n, spec, lhs, rhs, comparator)
        per_subset["{" + ",".join(map(str, S)) + "}"] = rep.passed
        for c, r in zip(checks, rep.coefficients):
            c.passed = c.passed and r.passed
            c.lhs_minus_rhs_terms += r.lhs_minus_rhs_terms
    return Report("claim", n, t, order, checks, {"subsets": per_subset})


def _a8_display_coefficient(n: int, torus: str, k: int) -> LaurentPoly:
    V = VarTable.standard(n)
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(n, k):
        upto = n - 1 if delta[-1] == 0 else n
        acc = acc + gl_part_shifted(delta, V) * s_numerator(n, torus, delta, "rho", False, upto)
    return acc


def verify_a8(n: int, spec: SatakeSpec, order: int, convention: str = "rho", rhs: str = "zeta",
              perturb: bool = False, comparator: Comparator | None = None, jobs: int | None = None) -> Report:
    """D * prod_i (1 - z1 g_i v X)(1 - z2 g_i v X) against the local zeta series.

    ``rhs="zeta"`` builds the right side from S_delta (convention selectable,
    ``perturb`` flips one sign inside S_delta); both sides are multiplied by
    Q(q).  ``rhs="display"`` uses the explicit alternator sums with the
    product over i < n when l_n = 0.
    """
    order = _check_order(order)
    _check_spec(n, spec)
    V = spec.vars
    lhs = d_series(n, order, jobs=jobs) * inverse_lfactor_sigma_lambda(n, spec, order)
    if rhs == "zeta":
        lhs = lhs * spec.Q()
        right = zeta_local_series_scaled(n, spec, order, convention, perturb, jobs)
    elif rhs == "display":
        args = [(n, spec.torus.value, k) for k in range(order + 1)]
        right = TruncatedSeries(V, order, _map_degrees(_a8_display_coefficient, args, jobs))
    else:
        raise UsageError(f"unknown right-hand side {rhs!r}")
    opts = {"convention": convention, "rhs": rhs, "perturb": perturb}
    return _compare("a8", n, spec, lhs, right, comparator, opts)


def _corollary_coefficient(n: int, l: int, torus: str, k: int, convention: str) -> LaurentPoly:
    """Q times the X^k coefficient of sum_{delta of length l} s_delta(g_1..g_l) S_{padded delta}."""
    V = VarTable.standard(n)
    acc = LaurentPoly.zero(V)
    for delta in dominant_weights(l, k):
        padded = tuple(delta) + (0,) * (n - l)
        acc = acc + gl_part_shifted(delta, V) * s_numerator(n, torus, padded, convention)
    return acc


def corollary_rhs(n: int, l: int, spec: SatakeSpec, order: int) -> TruncatedSeries:
    """L(pi x sigma') / (L(sigma' x lambda) L(sigma', ext^2 x chi_0)) with l g-variables."""
    V = spec.vars
    return (lfactor_pi_sigma(n, order, m=l, method="euler")
            * inverse_lfactor_sigma_lambda(l, spec, order)
            * inverse_lfactor_ext_square(l, order, V))


def verify_corollary(n: int, l: int, spec: SatakeSpec, order: int, convention: str = "rho",
                     comparator: Comparator | None = None, jobs: int | None = None) -> Report:
    order = _check_order(order)
    _check_spec(n, spec)
    if not 1 <= l < n:
        raise UsageError(f"corollary needs 1 <= l < n, got l = {l}, n = {n}")
    V = spec.vars
    args = [(n, l, spec.torus.value, k, convention) for k in range(order + 1)]
    lhs = TruncatedSeries(V, order, _map_degrees(_corollary_coefficient, args, jobs))
    rhs = corollary_rhs(n, l, spec, order) * spec.Q()
    return _compare("corollary", n, spec, lhs, rhs, comparator, {"l": l, "convention": convention})


__all__ = [
    "JOBS_ENV",
    "CoefficientCheck",
    "Report",
    "d_series",
    "lfactor_sigma_lambda",
    "lfactor_ext_square",
    "lfactor_pi_sigma",
    "zeta_local_series",
    "zeta_local_series_scaled",
    "verify_bfg1",
    "verify_claim",
    "verify_a8",
    "verify_corollary",
    "corollary_rhs",
    "gl_part",
    "sp_part",
    "subsets",
    "check_dominant",
]
