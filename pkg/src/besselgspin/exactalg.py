"""Exact arithmetic: Laurent polynomials over Q, rational functions, truncated series.

All values are immutable once built.  Coefficients are Python ints when
integral and :class:`fractions.Fraction` otherwise; no floating point is ever
used.  Exponent vectors are tuples indexed by a :class:`VarTable`, and the
monomial order used for leading terms and canonical forms is lexicographic in
the table order.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Coef = Union[int, Fraction]


class UsageError(ValueError):
    """Invalid call: mismatched variable tables, bad symbols, bad parameters."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide the dividend."""


def _norm(c: Coef) -> Coef:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _coef(c) -> Coef:
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


@dataclass(frozen=True)
class VarTable:
    """Ordered variable names.  Position in ``names`` is the exponent index."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise UsageError(f"duplicate variable names in {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index_map()[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def _index_map(self) -> dict[str, int]:
        # frozen dataclass: cache through a module-level helper
        return _index_map(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index_map()

    @staticmethod
    def standard(n: int) -> "VarTable":
        """``s0, a1..an, b, v, g1..gn, X`` for rank ``n``.

        s0 is the square root of alpha_0, v is q^(-1/2), X is q^-(s+1/2).
        """
        return _standard(n)

    @property
    def rank(self) -> int:
        return sum(1 for s in self.names if s.startswith("a") and s[1:].isdigit())

    @property
    def gl_rank(self) -> int:
        return sum(1 for s in self.names if s.startswith("g") and s[1:].isdigit())


@lru_cache(maxsize=None)
def _index_map(names: tuple[str, ...]) -> dict[str, int]:
    return {s: i for i, s in enumerate(names)}


@lru_cache(maxsize=None)
def _standard(n: int) -> VarTable:
    if n < 1:
        raise UsageError("rank must be >= 1")
    names = ["s0"] + [f"a{i}" for i in range(1, n + 1)] + ["b", "v"]
    names += [f"g{i}" for i in range(1, n + 1)] + ["X"]
    return VarTable(tuple(names))


class LaurentPoly:
    """Finite map from exponent vectors to nonzero exact rationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: VarTable, terms: Mapping[tuple[int, ...], Coef] | None = None):
        self.vars = vars
        clean: dict[tuple[int, ...], Coef] = {}
        if terms:
            k = len(vars)
            for e, c in terms.items():
                if len(e) != k:
                    raise UsageError(f"exponent {e} does not match {k} variables")
                c = _coef(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, vars: VarTable, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, vars: VarTable, c=1) -> "LaurentPoly":
        c = _coef(c)
        if c == 0:
            return cls._raw(vars, {})
        return cls._raw(vars, {(0,) * len(vars): c})

    @classmethod
    def zero(cls, vars: VarTable) -> "LaurentPoly":
        return cls._raw(vars, {})

    @classmethod
    def one(cls, vars: VarTable) -> "LaurentPoly":
        return cls.const(vars, 1)

    @classmethod
    def monomial(cls, vars: VarTable, powers: Mapping[str, int] | None = None, coef=1) -> "LaurentPoly":
        e = [0] * len(vars)
        for name, k in (powers or {}).items():
            e[vars.index(name)] += k
        return cls(vars, {tuple(e): coef})

    @classmethod
    def var(cls, vars: VarTable, name: str) -> "LaurentPoly":
        return cls.monomial(vars, {name: 1})

    # -- predicates and access ---------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Coef:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def leading_term(self) -> tuple[tuple[int, ...], Coef]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def trailing_term(self) -> tuple[tuple[int, ...], Coef]:
        if not self.terms:
            raise ValueError("zero polynomial has no trailing term")
        e = min(self.terms)
        return e, self.terms[e]

    def degree_range(self, name: str) -> tuple[int, int]:
        i = self.vars.index(name)
        exps = [e[i] for e in self.terms]
        return min(exps), max(exps)

    def uses(self, name: str) -> bool:
        i = self.vars.index(name)
        return any(e[i] for e in self.terms)

    def free_of(self, names: Iterable[str]) -> bool:
        return not any(self.uses(s) for s in names)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.vars != other.vars:
            raise UsageError("operands use different variable tables")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return LaurentPoly.zero(self.vars)
            return LaurentPoly._raw(self.vars, {e: _norm(c * other) for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[tuple[int, ...], Coef] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw(self.vars, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.vars, {tuple(k * x for x in e): _norm(Fraction(c) ** k)})
        result = LaurentPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse_monomial(self) -> "LaurentPoly":
        return self ** -1

    def shift(self, exp: tuple[int, ...], coef: Coef = 1) -> "LaurentPoly":
        """Multiply by the monomial ``coef * x^exp``."""
        return LaurentPoly._raw(
            self.vars,
            {tuple([x + y for x, y in zip(e, exp)]): _norm(c * coef) for e, c in self.terms.items()},
        )

    def map_exponents(self, fn) -> "LaurentPoly":
        """Apply ``fn`` to every exponent vector, summing collisions."""
        out: dict = {}
        for e, c in self.terms.items():
            f = fn(e)
            out[f] = out.get(f, 0) + c
        return LaurentPoly._raw(self.vars, {e: _norm(c) for e, c in out.items() if c})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- division ----------------------------------------------------------

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``self / d`` when it is a Laurent polynomial, else NotDivisible.

        Division by leading terms under lex order; the quotient's support is
        confined to the box allowed by per-variable degree ranges, which makes
        the loop terminate on non-divisible input.
        """
        self._check(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if d.is_monomial():
            return self * d.inverse_monomial()
        k = len(self.vars)
        lo = []
        hi = []
        for i in range(k):
            pe = [e[i] for e in self.terms]
            de = [e[i] for e in d.terms]
            lo.append(min(pe) - min(de))
            hi.append(max(pe) - max(de))
            if lo[-1] > hi[-1]:
                raise NotDivisible("degree ranges incompatible")
        lead_e, lead_c = d.leading_term()
        inv_lead = Fraction(1, 1) / lead_c
        dterms = list(d.terms.items())
        r = dict(self.terms)
        heap = [tuple(-x for x in e) for e in r]
        heapq.heapify(heap)
        q: dict = {}
        while heap:
            neg = heapq.heappop(heap)
            e = tuple(-x for x in neg)
            c = r.get(e)
            if c is None:
                continue
            qe = tuple([x - y for x, y in zip(e, lead_e)])
            for i in range(k):
                if not lo[i] <= qe[i] <= hi[i]:
                    raise NotDivisible(f"quotient exponent {qe} outside admissible box")
            qc = _norm(c * inv_lead)
            q[qe] = qc
            for de, dc in dterms:
                te = tuple([x + y for x, y in zip(qe, de)])
                old = r.get(te)
                if old is None:
                    r[te] = _norm(-qc * dc)
                    heapq.heappush(heap, tuple(-x for x in te))
                else:
                    s = old - qc * dc
                    if s:
                        r[te] = _norm(s)
                    else:
                        del r[te]
        return LaurentPoly._raw(self.vars, q)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    def monomial_content(self) -> tuple[int, ...]:
        """Componentwise minimum exponent (the largest monomial dividing as a polynomial)."""
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    # -- substitution --------------------------------------------------------

    def substitute(self, assignment: Mapping[str, "LaurentPoly | int | Fraction"]) -> "LaurentPoly":
        """Replace variables by Laurent polynomials (same table).

        A variable occurring with a negative exponent may only be replaced by a
        monomial; anything else has no Laurent inverse.
        """
        idx = {}
        for name, val in assignment.items():
            i = self.vars.index(name)
            if not isinstance(val, LaurentPoly):
                val = LaurentPoly.const(self.vars, val)
            self._check(val)
            idx[i] = val
        if not idx:
            return self
        powcache: dict[tuple[int, int], LaurentPoly] = {}

        def power(i: int, k: int) -> LaurentPoly:
            key = (i, k)
            if key not in powcache:
                val = idx[i]
                if k < 0 and not val.is_monomial():
                    raise ArithmeticError(
                        f"cannot substitute non-monomial {val} into negative power of {self.vars.names[i]}"
                    )
                if k < 0 and val.is_zero():
                    raise ZeroDivisionError(f"{self.vars.names[i]} -> 0 under negative power")
                powcache[key] = val ** k
            return powcache[key]

        acc: dict = {}
        for e, c in self.terms.items():
            rest = list(e)
            term = None
            for i in idx:
                if e[i]:
                    p = power(i, e[i])
                    term = p if term is None else term * p
                rest[i] = 0
            base = LaurentPoly._raw(self.vars, {tuple(rest): c})
            if term is not None:
                base = base * term
            for te, tc in base.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return LaurentPoly._raw(self.vars, {e: _norm(c) for e, c in acc.items() if c})

    def evaluate(self, point: Mapping[str, Coef]) -> Coef:
        """Exact value at a rational point assigning every used variable."""
        total: Coef = 0
        vals = [point.get(s) for s in self.vars.names]
        for e, c in self.terms.items():
            t = Fraction(c)
            for i, k in enumerate(e):
                if k:
                    x = vals[i]
                    if x is None:
                        raise UsageError(f"no value for {self.vars.names[i]}")
                    t *= Fraction(x) ** k
            total += t
        return _norm(Fraction(total))

    def restrict(self, name: str, degree: int) -> "LaurentPoly":
        """Coefficient of ``name**degree`` as a polynomial with that exponent set to 0."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == degree:
                f = list(e)
                f[i] = 0
                out[tuple(f)] = c
        return LaurentPoly._raw(self.vars, out)

    # -- text and JSON -------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = format_monomial(self.vars, e)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars.names),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        vars = VarTable(tuple(data["vars"]))
        return cls(vars, {tuple(t["exp"]): Fraction(t["coef"]) for t in data["terms"]})


def format_monomial(vars: VarTable, e: tuple[int, ...]) -> str:
    bits = []
    for name, k in zip(vars.names, e):
        if k == 1:
            bits.append(name)
        elif k:
            bits.append(f"{name}^{k}")
    return "*".join(bits) if bits else "1"


def lp_arith(lhs: LaurentPoly, rhs: LaurentPoly, op: str) -> LaurentPoly:
    """Binary ring operation by name: ``add``, ``sub`` or ``mul``."""
    if lhs.vars != rhs.vars:
        raise UsageError("operands use different variable tables")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise UsageError(f"unknown operation {op!r}")


def substitute(p: LaurentPoly, assignment: Mapping[str, LaurentPoly]) -> LaurentPoly:
    return p.substitute(assignment)


def product(factors: Iterable[LaurentPoly], vars: VarTable) -> LaurentPoly:
    out = LaurentPoly.one(vars)
    for f in factors:
        out = out * f
    return out


class RationalFunction:
    """Quotient ``num/den`` of Laurent polynomials.

    Canonical form: the denominator is an honest polynomial with no monomial
    factor (monomial units are moved into the numerator) and leading
    coefficient 1 under lex order.  A monomial denominator is folded away
    entirely.  No gcd is taken; :meth:`reduced` tries exact division instead.
    Equality is cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.vars)
        if num.vars != den.vars:
            raise UsageError("numerator and denominator use different variable tables")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            num = num * den.inverse_monomial()
            den = LaurentPoly.one(num.vars)
        else:
            content = den.monomial_content()
            if any(content):
                neg = tuple(-x for x in content)
                den = den.shift(neg)
                num = num.shift(neg)
            _, lc = den.leading_term()
            if lc != 1:
                inv = Fraction(1) / lc
                den = den * inv
                num = num * inv
        self.num = num
        self.den = den

    @property
    def vars(self) -> VarTable:
        return self.num.vars

    @classmethod
    def of(cls, x, vars: VarTable | None = None) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        if vars is None:
            raise UsageError("constant needs a variable table")
        return cls(LaurentPoly.const(vars, x))

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"denominator {self.den} is not a unit")
        return self.num

    def reduced(self) -> "RationalFunction":
        """Cancel the denominator when it divides the numerator exactly."""
        if self.is_laurent():
            return self
        try:
            return RationalFunction(self.num.exact_div(self.den))
        except NotDivisible:
            return self

    def reduce_by(self, factor: LaurentPoly) -> "RationalFunction":
        """Cancel one copy of ``factor`` from numerator and denominator if possible."""
        try:
            n = self.num.exact_div(factor)
            d = self.den.exact_div(factor)
        except NotDivisible:
            return self
        return RationalFunction(n, d)

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise UsageError("operands use different variable tables")
            return other
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise UsageError("operands use different variable tables")
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RationalFunction(LaurentPoly.const(self.vars, other))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k)
        return RationalFunction(self.den ** -k, self.num ** -k)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        # cross-multiplied equality has no cheap canonical hash
        raise TypeError("RationalFunction is unhashable")

    def substitute(self, assignment) -> "RationalFunction":
        return RationalFunction(self.num.substitute(assignment), self.den.substitute(assignment))

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


class TruncatedSeries:
    """Power series in the distinguished variable ``X``, kept through degree ``order``.

    Coefficients are X-free Laurent polynomials over the same table.
    """

    __slots__ = ("vars", "order", "coeffs", "xvar")

    def __init__(self, vars: VarTable, order: int, coeffs: Iterable[LaurentPoly] = (), xvar: str = "X"):
        if order < 0:
            raise UsageError("order must be >= 0")
        vars.index(xvar)
        cs = list(coeffs)[: order + 1]
        for c in cs:
            if c.vars != vars:
                raise UsageError("coefficient uses a different variable table")
            if c.uses(xvar):
                raise UsageError(f"series coefficients must be free of {xvar}")
        while len(cs) < order + 1:
            cs.append(LaurentPoly.zero(vars))
        self.vars = vars
        self.order = order
        self.coeffs = tuple(cs)
        self.xvar = xvar

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int, xvar: str = "X") -> "TruncatedSeries":
        i = p.vars.index(xvar)
        buckets: list[dict] = [dict() for _ in range(order + 1)]
        for e, c in p.terms.items():
            k = e[i]
            if k < 0:
                raise UsageError(f"negative power of {xvar} in a power series")
            if k <= order:
                f = list(e)
                f[i] = 0
                buckets[k][tuple(f)] = c
        return cls(p.vars, order, [LaurentPoly._raw(p.vars, b) for b in buckets], xvar)

    @classmethod
    def one(cls, vars: VarTable, order: int, xvar: str = "X") -> "TruncatedSeries":
        return cls(vars, order, [LaurentPoly.one(vars)], xvar)

    def to_poly(self) -> LaurentPoly:
        i = self.vars.index(self.xvar)
        out = {}
        for k, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                f = list(e)
                f[i] = k
                out[tuple(f)] = v
        return LaurentPoly._raw(self.vars, out)

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def _check(self, other: "TruncatedSeries") -> None:
        if self.vars != other.vars or self.xvar != other.xvar:
            raise UsageError("series use different variable tables")

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, min(order, self.order), self.coeffs, self.xvar)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.vars, n, [a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)], self.xvar)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.vars, self.order, [-c for c in self.coeffs], self.xvar)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, LaurentPoly):
            if other.uses(self.xvar):
                other = TruncatedSeries.from_poly(other, self.order, self.xvar)
            else:
                return TruncatedSeries(self.vars, self.order, [c * other for c in self.coeffs], self.xvar)
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.vars, self.order, [c * other for c in self.coeffs], self.xvar)
        self._check(other)
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc = LaurentPoly.zero(self.vars)
            for j in range(k + 1):
                a, b = self.coeffs[j], other.coeffs[k - j]
                if a.terms and b.terms:
                    acc = acc + a * b
            out.append(acc)
        return TruncatedSeries(self.vars, n, out, self.xvar)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a monomial."""
        c0 = self.coeffs[0]
        if not c0.is_monomial():
            raise ArithmeticError("constant term is not a unit")
        inv0 = c0.inverse_monomial()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = LaurentPoly.zero(self.vars)
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-(acc * inv0))
        return TruncatedSeries(self.vars, self.order, out, self.xvar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.vars == other.vars
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        body = ", ".join(f"[{k}] {c}" for k, c in enumerate(self.coeffs))
        return f"TruncatedSeries(order={self.order}; {body})"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "var": self.xvar,
            "coeffs": [{"degree": k, "coef": c.to_json()} for k, c in enumerate(self.coeffs)],
        }


def series_inv_one_minus(m: LaurentPoly, order: int, xvar: str = "X") -> TruncatedSeries:
    """Truncation of ``1/(1 - m)`` for a monomial ``m`` of positive X-degree."""
    if not m.is_monomial():
        raise UsageError("series_inv_one_minus expects a monomial")
    (e, c), = m.terms.items()
    i = m.vars.index(xvar)
    k = e[i]
    if k < 1:
        raise UsageError(f"monomial must have positive {xvar}-degree to expand 1/(1-m)")
    total = LaurentPoly.one(m.vars)
    power = LaurentPoly.one(m.vars)
    for _ in range(order // k):
        power = power * m
        total = total + power
    return TruncatedSeries.from_poly(total, order, xvar)
