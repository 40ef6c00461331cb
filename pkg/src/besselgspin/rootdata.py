"""Type B_n root datum of GSpin(2n+1) and its Weyl group acting on Satake parameters.

Parameters are encoded over :meth:`VarTable.standard`: ``s0`` is a square
root of alpha_0, ``a_i`` is alpha_i, ``b`` is beta, ``v`` is q^(-1/2).  A Weyl
element ``(p, eps)`` substitutes ``a_i -> a_{p(i)}`` when ``eps[p(i)] = +1``
and ``a_i -> s0^2 / a_{p(i)}`` when ``eps[p(i)] = -1``.  Indices are 0-based
in code: ``perm[i]`` is the image of ``i``.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import LaurentPoly, UsageError, VarTable


@dataclass(frozen=True)
class Root:
    """Positive root: ``e_i - e_j`` (kind ``"-"``), ``e_i + e_j`` (``"+"``), or ``e_i`` (``"short"``).

    Indices are 1-based as in the usual notation; ``i < j``.
    """

    kind: str
    i: int
    j: int = 0

    _PATTERN = re.compile(r"^\s*e(\d+)\s*(?:([+-])\s*e(\d+))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "Root":
        m = cls._PATTERN.match(text)
        if not m:
            raise UsageError(f"unknown root symbol {text!r}")
        i = int(m.group(1))
        if m.group(2) is None:
            return cls("short", i)
        j = int(m.group(3))
        if not i < j:
            raise UsageError(f"root {text!r} is not written as a positive root (need i < j)")
        return cls(m.group(2), i, j)

    def __str__(self) -> str:
        if self.kind == "short":
            return f"e{self.i}"
        return f"e{self.i}{self.kind}e{self.j}"

    def vector(self, n: int) -> tuple[int, ...]:
        v = [0] * n
        v[self.i - 1] = 1
        if self.kind == "-":
            v[self.j - 1] = -1
        elif self.kind == "+":
            v[self.j - 1] = 1
        return tuple(v)


@dataclass(frozen=True)
class RootSystemB:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("rank must be >= 1")

    def positive_roots(self) -> list[Root]:
        n = self.n
        roots = [Root("-", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        roots += [Root("+", i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        roots += [Root("short", i) for i in range(1, n + 1)]
        return roots

    def simple_roots(self) -> list[Root]:
        return [Root("-", i, i + 1) for i in range(1, self.n)] + [Root("short", self.n)]

    def check(self, root: Root) -> Root:
        if root.i < 1 or root.i > self.n or (root.kind != "short" and not root.i < root.j <= self.n):
            raise UsageError(f"{root} is not a positive root of B_{self.n}")
        if root.kind not in ("-", "+", "short"):
            raise UsageError(f"unknown root kind {root.kind!r}")
        return root


class Torus(enum.Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"

    @classmethod
    def parse(cls, text: "str | Torus") -> "Torus":
        if isinstance(text, Torus):
            return text
        key = text.strip().lower().replace("-", "").replace("_", "")
        for t in cls:
            if t.value == key:
                return t
        raise UsageError(f"unknown torus type {text!r} (expected split or nonsplit)")


@dataclass(frozen=True)
class SatakeSpec:
    """Rank and torus type; provides the pair ``(z1, z2)`` and ``Q(q)``."""

    n: int
    torus: Torus

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("rank must be >= 1")
        object.__setattr__(self, "torus", Torus.parse(self.torus))

    @property
    def vars(self) -> VarTable:
        return VarTable.standard(self.n)

    def z(self, swapped: bool = False) -> tuple[LaurentPoly, LaurentPoly]:
        V = self.vars
        if self.torus is Torus.SPLIT:
            pair = LaurentPoly.var(V, "b"), LaurentPoly.monomial(V, {"s0": 2, "b": -1})
        else:
            s0 = LaurentPoly.var(V, "s0")
            pair = s0, -s0
        return pair[::-1] if swapped else pair

    def Q(self) -> LaurentPoly:
        v2 = LaurentPoly.monomial(self.vars, {"v": 2})
        return 1 - v2 if self.torus is Torus.SPLIT else 1 + v2


def coroot_monomial(root: "Root | str", vars: "VarTable | SatakeSpec | int") -> LaurentPoly:
    """The value chi(r^vee(varpi)) as a monomial in s0 and the a_i."""
    if isinstance(vars, SatakeSpec):
        vars = vars.vars
    elif isinstance(vars, int):
        vars = VarTable.standard(vars)
    if isinstance(root, str):
        root = Root.parse(root)
    RootSystemB(vars.rank).check(root)
    a_i = f"a{root.i}"
    if root.kind == "-":
        return LaurentPoly.monomial(vars, {a_i: 1, f"a{root.j}": -1})
    if root.kind == "+":
        return LaurentPoly.monomial(vars, {a_i: 1, f"a{root.j}": 1, "s0": -2})
    return LaurentPoly.monomial(vars, {a_i: 2, "s0": -2})


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: ``perm`` in one-line form (0-based), ``signs`` in {+1,-1}^n.

    ``signs`` is indexed by target position, so ``a_i`` goes to ``a_{perm[i]}``
    or ``s0^2 / a_{perm[i]}`` according to ``signs[perm[i]]``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.signs) != len(self.perm):
            raise UsageError(f"invalid signed permutation {self.perm}, {self.signs}")
        if any(s not in (1, -1) for s in self.signs):
            raise UsageError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def flip(cls, n: int, positions) -> "WeylElement":
        """Identity permutation with signs flipped at the given 1-based positions."""
        signs = [1] * n
        for k in positions:
            signs[k - 1] = -1
        return cls(tuple(range(n)), tuple(signs))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "WeylElement":
        """Swap of 1-based positions ``i`` and ``j``."""
        p = list(range(n))
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
        return cls(tuple(p), (1,) * n)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        """Composition: ``(w * u)`` acts as ``w`` after ``u``."""
        if self.n != other.n:
            raise UsageError("Weyl elements of different rank")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        inv = self.inverse_perm()
        signs = tuple(self.signs[k] * other.signs[inv[k]] for k in range(self.n))
        return WeylElement(perm, signs)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, k in enumerate(self.perm):
            inv[k] = i
        return tuple(inv)

    def inverse(self) -> "WeylElement":
        inv = self.inverse_perm()
        # w^-1 sends a_k back to a_{inv[k]}, with the sign recorded at target inv[k]
        signs = tuple(self.signs[self.perm[i]] for i in range(self.n))
        return WeylElement(inv, signs)

    def perm_sign(self) -> int:
        s = 1
        seen = [False] * self.n
        for i in range(self.n):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = self.perm[j]
                    length += 1
                if length % 2 == 0:
                    s = -s
        return s

    def sign(self) -> int:
        s = self.perm_sign()
        for e in self.signs:
            s *= e
        return s

    def act_on_vector(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Action on the character lattice: ``e_i -> signs[perm[i]] * e_{perm[i]}``."""
        out = [0] * self.n
        for i, c in enumerate(vec):
            k = self.perm[i]
            out[k] += self.signs[k] * c
        return tuple(out)

    def inversions(self) -> list[Root]:
        """Positive roots ``r`` with ``w(r) < 0``."""
        out = []
        for r in RootSystemB(self.n).positive_roots():
            image = self.act_on_vector(r.vector(self.n))
            first = next(c for c in image if c)
            if first < 0:
                out.append(r)
        return out

    def length(self) -> int:
        return len(self.inversions())

    def exponent_map(self, vars: VarTable):
        """Function on exponent vectors implementing the substitution on ``vars``."""
        s0 = vars.index("s0")
        a_idx = [vars.index(f"a{i + 1}") for i in range(self.n)]
        moves = [(a_idx[i], a_idx[self.perm[i]], self.signs[self.perm[i]]) for i in range(self.n)]

        def apply(e: tuple[int, ...]) -> tuple[int, ...]:
            out = list(e)
            for src, _, _ in moves:
                out[src] = 0
            for src, dst, sg in moves:
                k = e[src]
                if sg > 0:
                    out[dst] += k
                else:
                    out[dst] -= k
                    out[s0] += 2 * k
            return tuple(out)

        return apply


def weyl_act(w: WeylElement, p: LaurentPoly) -> LaurentPoly:
    """Apply ``w`` to a Laurent polynomial in the Satake parameters."""
    if p.vars.rank != w.n:
        raise UsageError(f"Weyl element of rank {w.n} acting on rank {p.vars.rank} polynomial")
    return p.map_exponents(w.exponent_map(p.vars))


@lru_cache(maxsize=None)
def enumerate_weyl(n: int) -> tuple[WeylElement, ...]:
    """All ``2^n n!`` elements, ordered lexicographically by (permutation, signs)."""
    if n < 1:
        raise UsageError("rank must be >= 1")
    sign_vectors = sorted(itertools.product((-1, 1), repeat=n))
    return tuple(
        WeylElement(p, s) for p in itertools.permutations(range(n)) for s in sign_vectors
    )


def simple_reflections(n: int) -> list[WeylElement]:
    """Reflections in ``e_i - e_{i+1}`` (i < n) and in ``e_n``."""
    gens = [WeylElement.transposition(n, i, i + 1) for i in range(1, n)]
    gens.append(WeylElement.flip(n, [n]))
    return gens


@lru_cache(maxsize=None)
def word_lengths(n: int) -> dict[WeylElement, int]:
    """Reduced-word length of every element, by breadth-first search on the Cayley graph."""
    gens = simple_reflections(n)
    start = WeylElement.identity(n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            u = w * s
            if u not in dist:
                dist[u] = dist[w] + 1
                queue.append(u)
    return dist


def special_elements(n: int) -> tuple[WeylElement, WeylElement]:
    """``(w0, w1)``: w0 flips every sign; w1 flips signs at positions 1..n-1."""
    if n < 1:
        raise UsageError("rank must be >= 1")
    w0 = WeylElement.flip(n, range(1, n + 1))
    w1 = WeylElement.flip(n, range(1, n))
    return w0, w1
