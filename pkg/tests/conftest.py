import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gwcover.fields import QQ
from gwcover.mpoly import MultiPoly

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PROJECTIVE = ("X0", "X1", "X2")

# acceptance outcome lines, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def proj_vars(K=QQ):
    return [MultiPoly.variable(K, PROJECTIVE, v) for v in PROJECTIVE]


def poly_vars(K, names):
    return [MultiPoly.variable(K, tuple(names), v) for v in names]


def random_cover_input(rng, n, K):
    """Random homogeneous F of degree 2n over F_p with F(0,0,1) a nonzero square."""
    from gwcover.pipeline import BranchedCoverInput

    d = 2 * n
    p = K.p
    terms = {}
    for i in range(d + 1):
        for j in range(d + 1 - i):
            c = rng.randrange(p)
            if c:
                terms[(i, j, d - i - j)] = K.from_int(c)
    terms[(0, 0, d)] = K.from_int(rng.randrange(1, p) ** 2)
    return BranchedCoverInput(K, n, MultiPoly(K, PROJECTIVE, terms))


def random_system(rng):
    """Zero-dimensional systems with an isolated, usually degenerate, zero at the origin."""
    from gwcover.scheja_storch import gradient

    t1, t2 = poly_vars(QQ, ("t1", "t2"))
    kind = rng.randrange(3)
    c = [Fraction(rng.choice([1, -1, 2, -2, 3, 5]), rng.randint(1, 3)) for _ in range(4)]
    if kind == 0:
        a, b = rng.randint(2, 4), rng.randint(2, 4)
        f = c[0] * t1**(a + 1) + c[1] * t2**(b + 1) + c[2] * t1**a * t2**b
        return gradient(f)
    if kind == 1:
        return [c[0] * t1**2 + c[1] * t2**3, c[2] * t1 * t2 + c[3] * t2**2 + t1**3]
    return [t1 + c[0] * t2**2, c[1] * t2**rng.randint(2, 4) + c[2] * t1**2 + c[3] * t1 * t2**2]


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
