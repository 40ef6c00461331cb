"""Alternators, symmetrizers, Weyl denominators, Schur and symplectic characters."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .exactalg import LaurentPoly, RationalFunction, UsageError, VarTable, product
from .rootdata import enumerate_weyl


def check_dominant(delta: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    """Return ``delta`` as a tuple after checking l_1 >= ... >= l_n >= 0."""
    delta = tuple(int(x) for x in delta)
    if n is not None and len(delta) != n:
        raise UsageError(f"weight {delta} has length {len(delta)}, expected {n}")
    if not delta:
        raise UsageError("empty weight")
    if any(x < y for x, y in zip(delta, delta[1:])) or delta[-1] < 0:
        raise UsageError(f"weight {delta} is not dominant")
    return delta


def check_gl_weight(kappa: Sequence[int]) -> tuple[int, ...]:
    kappa = tuple(int(x) for x in kappa)
    if any(x < y for x, y in zip(kappa, kappa[1:])):
        raise UsageError(f"GL weight {kappa} is not weakly decreasing")
    return kappa


def dominant_weights(n: int, total: int) -> list[tuple[int, ...]]:
    """Dominant weights of length ``n`` with entry sum ``total``, in lex order."""
    out = []

    def rec(prefix: list[int], remaining: int, cap: int, slots: int):
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for x in range(min(cap, remaining), -1, -1):
            if x * slots < remaining:
                break
            rec(prefix + [x], remaining - x, x, slots - 1)

    rec([], total, total, n)
    return sorted(out)


@lru_cache(maxsize=None)
def _weyl_maps(n: int, vars: VarTable):
    return tuple((w.sign(), w.exponent_map(vars)) for w in enumerate_weyl(n))


def _signed_orbit_sum(p: LaurentPoly, maps, signed: bool) -> LaurentPoly:
    acc: dict = {}
    for e, c in sorted(p.terms.items()):
        for sg, f in maps:
            t = f(e)
            acc[t] = acc.get(t, 0) + (c * sg if signed else c)
    return LaurentPoly(p.vars, acc)


def alternator_W(p: LaurentPoly, n: int | None = None) -> LaurentPoly:
    """Sum over the type B Weyl group of ``sign(w) * w(p)``."""
    n = p.vars.rank if n is None else n
    return _signed_orbit_sum(p, _weyl_maps(n, p.vars), True)


def symmetrizer_W(p: LaurentPoly, n: int | None = None) -> LaurentPoly:
    n = p.vars.rank if n is None else n
    return _signed_orbit_sum(p, _weyl_maps(n, p.vars), False)


@lru_cache(maxsize=None)
def _gl_maps(m: int, vars: VarTable):
    idx = [vars.index(f"g{i + 1}") for i in range(m)]
    maps = []
    for perm in itertools.permutations(range(m)):
        sign = 1
        for i in range(m):
            for j in range(i + 1, m):
                if perm[i] > perm[j]:
                    sign = -sign

        def f(e, perm=perm):
            out = list(e)
            for i in range(m):
                out[idx[perm[i]]] = e[idx[i]]
            return tuple(out)

        maps.append((sign, f))
    return tuple(maps)


def alternator_GL(p: LaurentPoly, m: int) -> LaurentPoly:
    """Antisymmetrization over permutations of ``g1..gm``."""
    return _signed_orbit_sum(p, _gl_maps(m, p.vars), True)


def rho_monomial(vars: VarTable, n: int | None = None) -> LaurentPoly:
    """``a1^n a2^(n-1) ... an``."""
    n = vars.rank if n is None else n
    return LaurentPoly.monomial(vars, {f"a{i}": n + 1 - i for i in range(1, n + 1)})


def gl_rho_monomial(vars: VarTable, m: int) -> LaurentPoly:
    """``g1^(m-1) g2^(m-2) ... g_{m-1}``."""
    return LaurentPoly.monomial(vars, {f"g{i}": m - i for i in range(1, m + 1)})


@lru_cache(maxsize=None)
def delta_gsp(n: int, vars: VarTable | None = None) -> LaurentPoly:
    """Weyl denominator as the alternant of ``a1^n ... an``."""
    vars = vars or VarTable.standard(n)
    return alternator_W(rho_monomial(vars, n), n)


@lru_cache(maxsize=None)
def delta_gsp_product(n: int, vars: VarTable | None = None) -> LaurentPoly:
    """Weyl denominator from its product formula.

    (-1)^n s0^(n(n+1)) prod a_i^-(n+1-i) (1 - a_i^2/s0^2)
      * prod_{i<j} (1 - a_i a_j / s0^2)(1 - a_i/a_j)
    """
    V = vars or VarTable.standard(n)
    one = LaurentPoly.one(V)
    mono = LaurentPoly.monomial
    out = mono(V, {"s0": n * (n + 1)}, (-1) ** n)
    for i in range(1, n + 1):
        out = out * mono(V, {f"a{i}": -(n + 1 - i)})
        out = out * (one - mono(V, {"s0": -2, f"a{i}": 2}))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (one - mono(V, {"s0": -2, f"a{i}": 1, f"a{j}": 1}))
            out = out * (one - mono(V, {f"a{i}": 1, f"a{j}": -1}))
    return out


def sp_denominator(n: int, vars: VarTable | None = None) -> LaurentPoly:
    """Classical Sp(2n) denominator prod (a_i - 1/a_i) prod_{i<j} (a_i + 1/a_i - a_j - 1/a_j)."""
    V = vars or VarTable.standard(n)
    a = [LaurentPoly.var(V, f"a{i}") for i in range(1, n + 1)]
    ainv = [x.inverse_monomial() for x in a]
    out = product((a[i] - ainv[i] for i in range(n)), V)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (a[i] + ainv[i] - a[j] - ainv[j])
    return out


@lru_cache(maxsize=None)
def delta_gl(m: int, vars: VarTable) -> LaurentPoly:
    return alternator_GL(gl_rho_monomial(vars, m), m)


def schur(kappa: Sequence[int], m: int | None = None, vars: VarTable | None = None) -> RationalFunction:
    """GL_m character of highest weight ``kappa`` via the alternant quotient, in ``g1..gm``."""
    kappa = check_gl_weight(kappa)
    m = len(kappa) if m is None else m
    if len(kappa) != m:
        raise UsageError(f"weight {kappa} has length {len(kappa)}, expected {m}")
    vars = vars or VarTable.standard(m)
    if vars.gl_rank < m:
        raise UsageError(f"variable table has only {vars.gl_rank} g-variables")
    top = LaurentPoly.monomial(vars, {f"g{i + 1}": kappa[i] + m - 1 - i for i in range(m)})
    q = RationalFunction(alternator_GL(top, m), delta_gl(m, vars)).reduced()
    if not q.is_laurent():
        raise ArithmeticError("Weyl denominator did not divide the GL alternant")
    return q


def semistandard_tableaux(shape: Sequence[int], m: int):
    """Yield SSYT of a partition shape with entries 1..m, as lists of rows."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling: dict[tuple[int, int], int] = {}

    def rec(k: int):
        if k == len(cells):
            yield [[filling[(r, c)] for c in range(shape[r])] for r in range(len(shape))]
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for x in range(lo, m + 1):
            filling[(r, c)] = x
            yield from rec(k + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def schur_oracle(kappa: Sequence[int], m: int | None = None, vars: VarTable | None = None,
                 max_size: int = 12) -> LaurentPoly:
    """Schur polynomial as a sum of tableau monomials (kappa must be a partition)."""
    kappa = check_gl_weight(kappa)
    m = len(kappa) if m is None else m
    if kappa and kappa[-1] < 0:
        raise UsageError("tableau oracle needs a partition (nonnegative parts)")
    if sum(kappa) > max_size:
        raise UsageError(f"|kappa| = {sum(kappa)} exceeds oracle bound {max_size}")
    vars = vars or VarTable.standard(max(m, 1))
    shape = [x for x in kappa if x > 0]
    if len(shape) > m:
        return LaurentPoly.zero(vars)
    acc: dict = {}
    gi = [vars.index(f"g{i + 1}") for i in range(m)]
    for t in semistandard_tableaux(shape, m):
        e = [0] * len(vars)
        for row in t:
            for x in row:
                e[gi[x - 1]] += 1
        e = tuple(e)
        acc[e] = acc.get(e, 0) + 1
    if not shape:
        return LaurentPoly.one(vars)
    return LaurentPoly(vars, acc)


def sp_alternant(delta: Sequence[int], vars: VarTable) -> LaurentPoly:
    """Alternant of ``prod a_i^(l_i + n + 1 - i)``."""
    n = vars.rank
    mono = LaurentPoly.monomial(vars, {f"a{i + 1}": delta[i] + n - i for i in range(n)})
    return alternator_W(mono, n)


def sp_char_bar(delta: Sequence[int], n: int | None = None, vars: VarTable | None = None) -> RationalFunction:
    """Sp(2n) character at the similitude-normalized parameter.

    Equals s0^(-|delta|) * alternant(a^(delta + rho)) / Delta.
    """
    delta = check_dominant(delta, n)
    n = len(delta)
    vars = vars or VarTable.standard(n)
    num = sp_alternant(delta, vars) * LaurentPoly.monomial(vars, {"s0": -sum(delta)})
    q = RationalFunction(num, delta_gsp(n, vars)).reduced()
    if not q.is_laurent():
        raise ArithmeticError("Weyl denominator did not divide the alternant")
    return q


def divide_by_delta(p: LaurentPoly, n: int | None = None) -> LaurentPoly:
    """Exact quotient of an anti-invariant by the Weyl denominator."""
    n = p.vars.rank if n is None else n
    return p.exact_div(delta_gsp(n, p.vars))
