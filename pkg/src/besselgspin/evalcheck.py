"""Probabilistic identity testing by evaluation at random points.

Values are evaluated modulo a prime (default 2^31 - 1).  A coefficient whose
denominator the prime divides switches that trial to exact rational
evaluation.  Each trial draws its point from its own generator seeded by
``(seed, trial index)``, so verdicts do not depend on scheduling.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactalg import LaurentPoly, RationalFunction, TruncatedSeries, UsageError, VarTable

DEFAULT_PRIME = 2**31 - 1
MIN_PRIME = 2**30
RETRY_BUDGET = 20

Value = Union[LaurentPoly, RationalFunction, TruncatedSeries]


class InconclusiveError(ArithmeticError):
    """Every sampled point made a denominator vanish."""


@dataclass(frozen=True)
class Verdict:
    equal: bool
    trials: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"equal": self.equal, "trials": self.trials, "witness": self.witness}


class _Denominator(Exception):
    pass


def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % small == 0:
            return p == small
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if p <= MIN_PRIME or not _is_probable_prime(p):
        raise UsageError(f"modulus must be a prime above 2^30, got {p}")
    return p


def _eval_mod(poly: LaurentPoly, point: tuple[int, ...], p: int) -> int:
    acc = 0
    for e, c in poly.terms.items():
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise _Denominator
            c = c.numerator * pow(c.denominator, -1, p)
        t = c % p
        for x, k in zip(point, e):
            if k:
                t = t * pow(x, k, p) % p
        acc = (acc + t) % p
    return acc


def _eval_exact(poly: LaurentPoly, point: tuple[int, ...]) -> Fraction:
    acc = Fraction(0)
    for e, c in poly.terms.items():
        t = Fraction(c)
        for x, k in zip(point, e):
            if k:
                t *= Fraction(x) ** k
        acc += t
    return acc


def _components(value: Value, vars: VarTable) -> list[tuple[int | None, LaurentPoly, LaurentPoly]]:
    """(degree, numerator, denominator) pieces to compare."""
    if isinstance(value, LaurentPoly):
        return [(None, value, LaurentPoly.one(vars))]
    if isinstance(value, RationalFunction):
        return [(None, value.num, value.den)]
    if isinstance(value, TruncatedSeries):
        return [(k, c, LaurentPoly.one(vars)) for k, c in enumerate(value.coeffs)]
    raise UsageError(f"cannot evaluate {type(value).__name__}")


def _pair_up(lhs: Value, rhs: Value):
    V = lhs.vars
    if rhs.vars != V:
        raise UsageError("values use different variable tables")
    if isinstance(lhs, TruncatedSeries) != isinstance(rhs, TruncatedSeries):
        raise UsageError("cannot compare a series with a non-series")
    left, right = _components(lhs, V), _components(rhs, V)
    n = min(len(left), len(right))
    return V, list(zip(left[:n], right[:n]))


def _trial(pairs, names: tuple[str, ...], seed: int, index: int, p: int) -> dict | None:
    """Run one trial; return a witness dict on disagreement, None on agreement."""
    rng = random.Random(f"{seed}:{index}")
    for _ in range(RETRY_BUDGET):
        point = tuple(rng.randrange(1, p) for _ in names)
        try:
            return _check_point(pairs, names, point, p, modular=True)
        except _Denominator:
            pass
        small = tuple(rng.randrange(2, 1000) * rng.choice((1, -1)) for _ in names)
        try:
            return _check_point(pairs, names, small, p, modular=False)
        except _Denominator:
            continue
    raise InconclusiveError(f"denominator vanished at {RETRY_BUDGET} sampled points (trial {index})")


def _check_point(pairs, names, point, p, modular: bool) -> dict | None:
    for (deg, ln, ld), (_, rn, rd) in pairs:
        if modular:
            vals = [_eval_mod(x, point, p) for x in (ln, ld, rn, rd)]
            if vals[1] == 0 or vals[3] == 0:
                raise _Denominator
            equal = vals[0] * vals[3] % p == vals[2] * vals[1] % p
            if not equal:
                inv = lambda a, b: a * pow(b, -1, p) % p  # noqa: E731
                return _witness(names, point, deg, inv(vals[0], vals[1]), inv(vals[2], vals[3]), p)
        else:
            vals = [_eval_exact(x, point) for x in (ln, ld, rn, rd)]
            if vals[1] == 0 or vals[3] == 0:
                raise _Denominator
            a, b = vals[0] / vals[1], vals[2] / vals[3]
            if a != b:
                return _witness(names, point, deg, a, b, None)
    return None


def _witness(names, point, degree, lhs, rhs, modulus) -> dict:
    w = {
        "point": {s: str(x) for s, x in zip(names, point)},
        "modulus": modulus,
        "lhs": str(lhs),
        "rhs": str(rhs),
    }
    if degree is not None:
        w["degree"] = degree
    return w


def prob_equal(lhs: Value, rhs: Value, trials: int = 5, seed: int = 0, prime: int = DEFAULT_PRIME,
               jobs: int = 1) -> Verdict:
    """Compare two values at ``trials`` random points.

    An unequal verdict is certain and carries the witness point.  An equal
    verdict is advisory.  The X variable of a series is not evaluated;
    coefficients are compared degree by degree.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    check_prime(prime)
    V, pairs = _pair_up(lhs, rhs)
    names = tuple(s for s in V.names if s != "X")
    keep = [i for i, s in enumerate(V.names) if s != "X"]

    def strip(poly: LaurentPoly) -> LaurentPoly:
        if poly.uses("X"):
            raise UsageError("X must not occur outside series coefficients")
        return poly

    pairs = [((d, strip(a), strip(b)), (e, strip(c), strip(f))) for (d, a, b), (e, c, f) in pairs]
    # drop the X slot from exponent vectors once, so points line up with names
    pairs = [tuple((d, _project(a, keep), _project(b, keep)) for d, a, b in pair) for pair in pairs]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda i: _trial(pairs, names, seed, i, prime), range(trials)))
    else:
        results = []
        for i in range(trials):
            results.append(_trial(pairs, names, seed, i, prime))
            if results[-1] is not None:
                break
    for i, w in enumerate(results):
        if w is not None:
            w["trial"] = i
            return Verdict(False, i + 1, w)
    return Verdict(True, trials)


class _Projected:
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms


def _project(poly: LaurentPoly, keep: list[int]) -> _Projected:
    out: dict = {}
    for e, c in poly.terms.items():
        f = tuple(e[i] for i in keep)
        out[f] = out.get(f, 0) + c
    return _Projected(out)


def series_comparator(trials: int = 5, seed: int = 0, prime: int = DEFAULT_PRIME):
    """Coefficient comparator for the verifiers: True iff no witness of inequality is found."""

    def compare(a: LaurentPoly, b: LaurentPoly) -> bool:
        return prob_equal(a, b, trials, seed, prime).equal

    return compare


__all__ = ["DEFAULT_PRIME", "InconclusiveError", "Verdict", "check_prime", "prob_equal", "series_comparator"]
