import os

import pytest
import sympy as sp
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "25")), deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def to_sympy(poly):
    """LaurentPoly or RationalFunction -> sympy expression over symbols named like the table."""
    from besselgspin.exactalg import RationalFunction

    if isinstance(poly, RationalFunction):
        return to_sympy(poly.num) / to_sympy(poly.den)
    syms = sp.symbols(poly.vars.names)
    expr = 0
    for e, c in poly.terms.items():
        term = sp.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sp.Integer(c)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return expr


def sympy_zero(expr) -> bool:
    return sp.cancel(sp.together(expr)) == 0


@pytest.fixture
def sym():
    return to_sympy


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
