import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from gwcover import upoly
from gwcover.errors import CapacityError, FieldMismatchError, NonIsolatedError
from gwcover.factor import factor_list, factor_univariate, is_irreducible
from gwcover.fields import GF, QQ, Extension, field_arith
from gwcover.mpoly import multipoly_calc
from gwcover.series import compose, hensel_parametrize
from gwcover.squares import INF, hilbert_symbol, is_square, prime_support, square_class

from conftest import poly_vars, proj_vars

Qi = Extension(QQ, [1, 0, 1], "i")


# ---------------------------------------------------------------- field arithmetic

def test_field_arith_examples():
    i = Qi.wrap(Qi.gen)
    assert field_arith(i, i, "mul") == -1
    F5 = GF(5)
    assert field_arith(F5(2), F5(3), "div") == 4
    assert field_arith(QQ(Fraction(1, 3)), QQ(Fraction(1, 6)), "add") == Fraction(1, 2)


def test_field_arith_errors():
    with pytest.raises(ZeroDivisionError):
        field_arith(QQ(1), QQ(0), "div")
    with pytest.raises(FieldMismatchError):
        field_arith(GF(5)(1), GF(7)(1), "add")


def test_extension_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        Extension(QQ, [-1, 0, 1], "a")
    with pytest.raises(ValueError):
        Extension(GF(5), [1, 0, 1], "a")


def test_tower_inverse_roundtrip():
    w = Extension(Qi, [1, 1, 1], "w")
    rng = random.Random(3)
    for _ in range(20):
        x = w.wrap(tuple(tuple(Fraction(rng.randint(-5, 5)) for _ in range(2)) for _ in range(2)))
        if x:
            assert x * (1 / x) == 1


def test_tower_trace_is_transitive():
    w = Extension(Qi, [1, 1, 1], "w")
    x = w.wrap(((Fraction(2), Fraction(1)), (Fraction(-3), Fraction(5))))
    down = Qi.trace(w.trace(x.value))
    assert x.trace(QQ).value == down


# ---------------------------------------------------------------- square classes

def test_square_class_examples():
    assert square_class(18, QQ) == 2
    assert square_class(Fraction(-4, 9), QQ) == -1
    assert square_class(3, GF(5)) == 2
    with pytest.raises(ValueError):
        square_class(0, QQ)


def test_is_square_examples():
    assert is_square(Fraction(4, 9), QQ)
    assert not is_square(-1, QQ)
    assert is_square(2, GF(7))
    assert not is_square(0, QQ)


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 10**4), st.integers(1, 10**4))
def test_square_class_ignores_squares_over_q(a, num, den):
    c = Fraction(num, den)
    assert square_class(a * c * c, QQ) == square_class(a, QQ)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 101])
def test_square_class_ignores_squares_over_fp(p):
    K = GF(p)
    rng = random.Random(p)
    for a in range(1, p):
        for _ in range(10):
            c = rng.randrange(1, p)
            assert square_class(a * c * c % p, K) == square_class(a, K)


# ---------------------------------------------------------------- Hilbert symbols

def _brute_hilbert(a: int, b: int, p: int, k: int) -> int:
    """Primitive solution of z^2 = a x^2 + b y^2 modulo p^k."""
    m = p ** k
    squares: dict[int, bool] = {}
    for z in range(m):
        squares.setdefault(z * z % m, False)
        if z % p:
            squares[z * z % m] = True
    for x in range(m):
        for y in range(m):
            r = (a * x * x + b * y * y) % m
            if r in squares and (x % p or y % p or squares[r]):
                return 1
    return -1


def test_hilbert_examples():
    for place in (2, 3, 5, 7, INF):
        assert hilbert_symbol(1, 7, place) == 1
        assert hilbert_symbol(6, -6, place) == 1
    assert hilbert_symbol(2, 5, 5) == -1
    assert _brute_hilbert(2, 5, 5, 3) == -1


@pytest.mark.parametrize("p", [3, 5])
def test_hilbert_matches_brute_force_at_odd_primes(p):
    vals = [1, -1, 2, -2, 3, -3, 5, -5, 6, -15]
    for a in vals:
        for b in vals:
            assert hilbert_symbol(a, b, p) == _brute_hilbert(a, b, p, 3), (a, b, p)


def test_hilbert_matches_brute_force_at_two():
    vals = [1, -1, 2, -2, 3, -3, 6, -6, 5, 10]
    for a in vals:
        for b in vals:
            assert hilbert_symbol(a, b, 2) == _brute_hilbert(a, b, 2, 4), (a, b)


_small_rational = st.fractions(min_value=-50, max_value=50, max_denominator=12).filter(bool)


@given(_small_rational, _small_rational, _small_rational)
def test_hilbert_bimultiplicative(a, b1, b2):
    for v in [INF] + sorted(prime_support([a, b1, b2]) | {2}):
        assert hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v)


@given(_small_rational, _small_rational)
def test_hilbert_product_formula(a, b):
    prod = 1
    for v in [INF] + sorted(prime_support([a, b]) | {2}):
        prod *= hilbert_symbol(a, b, v)
    assert prod == 1


# ---------------------------------------------------------------- resultants

def test_resultant_examples():
    a, b = Fraction(3), Fraction(-7)
    assert upoly.resultant([-a, 1], [-b, 1], QQ) == a - b
    assert upoly.resultant(upoly.from_ints([0, 0, 1], QQ), upoly.from_ints([1, 1], QQ), QQ) == 1
    f, g = upoly.from_ints([1, 0, 1], QQ), upoly.from_ints([-2, 0, 1], QQ)
    assert upoly.resultant(f, g, QQ) == 9
    assert upoly.resultant_ring(f, g, QQ) == 9


def test_resultant_matches_sylvester_determinant():
    # sympy.resultant disagrees in sign with its own Sylvester matrix when
    # deg f < deg g, so the determinant is the oracle
    from sympy.polys.subresultants_qq_zz import sylvester

    rng = random.Random(11)
    x = sympy.Symbol("x")
    for _ in range(30):
        f = [rng.randint(-5, 5) for _ in range(rng.randint(2, 6))] + [rng.randint(1, 4)]
        g = [rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)]
        ours = upoly.resultant(upoly.from_ints(f, QQ), upoly.from_ints(g, QQ), QQ)
        fx, gx = sympy.Poly(f[::-1], x).as_expr(), sympy.Poly(g[::-1], x).as_expr()
        ref = sylvester(fx, gx, x).det()
        assert ours == Fraction(int(ref))


@pytest.mark.parametrize("p", [3, 7, 101])
def test_resultant_vanishes_iff_common_factor(p):
    K = GF(p)
    rng = random.Random(p)
    hits = 0
    for _ in range(150):
        f = upoly.strip([rng.randrange(p) for _ in range(rng.randint(2, 5))] + [1], K)
        g = upoly.strip([rng.randrange(p) for _ in range(rng.randint(2, 4))] + [1], K)
        if rng.random() < 0.3:
            h = [rng.randrange(p), 1]
            f, g = upoly.mul(f, h, K), upoly.mul(g, h, K)
        common = len(upoly.gcd(f, g, K)) > 1
        hits += common
        assert (upoly.resultant(f, g, K) == K.zero) == common
        assert (upoly.resultant_ring(f, g, K) == K.zero) == common
    assert hits > 10


# ---------------------------------------------------------------- factorization

def test_factor_examples():
    facs = factor_univariate(upoly.from_ints([1, 0, 0, 0, 0, 0, 1], QQ), QQ)
    assert [f for f, _ in facs] == [upoly.from_ints([1, 0, 1], QQ), upoly.from_ints([1, 0, -1, 0, 1], QQ)]
    F5 = GF(5)
    assert sorted(f[0] for f, _ in factor_univariate([1, 0, 1], F5)) == [2, 3]
    i = Qi.gen
    facs = factor_univariate([Qi.one, Qi.zero, Qi.one], Qi)
    assert sorted(f[0] for f, _ in facs) == sorted([i, Qi.neg(i)])


def test_factor_capacity_bound():
    with pytest.raises(CapacityError):
        factor_univariate(upoly.from_ints([1] * 70, QQ), QQ)
    with pytest.raises(CapacityError):
        factor_univariate(upoly.from_ints([1] * 10, QQ), QQ, max_degree=5)


def _expand(lc, facs, K):
    acc = [lc]
    for f, m in facs:
        acc = upoly.mul(acc, upoly.power(f, m, K), K)
    return acc


@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=4), min_size=1, max_size=4))
def test_factor_over_q_reconstructs_and_matches_sympy(parts):
    x = sympy.Symbol("x")
    f = [Fraction(1)]
    for p in parts:
        g = upoly.from_ints(p, QQ)
        if len(g) >= 2:
            f = upoly.mul(f, g, QQ)
    if len(f) < 2:
        return
    lc, facs = factor_list(f, QQ)
    assert _expand(lc, facs, QQ) == f
    for g, _ in facs:
        assert is_irreducible(g, QQ)
    ref = sympy.factor_list(sympy.Poly([int(c) for c in f[::-1]], x))[1]
    assert sorted(len(g) - 1 for g, m in facs for _ in range(m)) == \
        sorted(sympy.degree(g, x) for g, m in ref for _ in range(m))


@pytest.mark.parametrize("p", [3, 5, 101])
def test_factor_over_fp_reconstructs(p):
    K = GF(p)
    rng = random.Random(p)
    for _ in range(25):
        f = upoly.strip([rng.randrange(p) for _ in range(rng.randint(2, 12))] + [rng.randrange(1, p)], K)
        if rng.random() < 0.5:
            f = upoly.mul(f, f, K)
        lc, facs = factor_list(f, K)
        assert _expand(lc, facs, K) == f
        for g, _ in facs:
            # irreducible iff no root-free splitting: compare with brute force for small degree
            assert g[-1] == 1


def test_factor_over_finite_extension():
    K = GF(7)
    L = Extension(K, [1, 0, 1], "a")  # -1 is not a square mod 7
    f = [L.from_int(1)] + [L.zero] * 3 + [L.one]  # x^4 + 1
    lc, facs = factor_list(f, L)
    assert _expand(lc, facs, L) == f
    assert sum((len(g) - 1) * m for g, m in facs) == 4


def test_trager_factors_over_tower():
    w = Extension(QQ, [-2, 0, 0, 1], "w")  # cube root of 2
    f = [w.from_int(-2), w.zero, w.zero, w.one]
    facs = factor_univariate(f, w)
    assert sorted(len(g) - 1 for g, _ in facs) == [1, 2]


# ---------------------------------------------------------------- multivariate

def test_multipoly_examples():
    X0, X1, X2 = proj_vars()
    F = X0**6 + X1**6 + X2**6
    assert multipoly_calc(F, "derivative", "X2") == 6 * X2**5
    g = multipoly_calc(X0**2 + X1 * X2, "dehomogenize", "X0")
    x1, x2 = poly_vars(QQ, ("X1", "X2"))
    assert g == 1 + x1 * x2
    assert multipoly_calc(F, "evaluate", {"X0": 0, "X1": 0, "X2": 1}) == 1
    with pytest.raises(ValueError):
        F.derivative("Y")


def test_multipoly_evaluate_in_tower():
    X0, X1, X2 = proj_vars()
    i = Qi.wrap(Qi.gen)
    assert (X0**2 + X1**2 + X2**2).evaluate([1, i, 0]) == 0


# ---------------------------------------------------------------- series

def test_hensel_sqrt_series():
    x, y = poly_vars(QQ, ("x", "y"))
    h = hensel_parametrize(x**2 - y - 1, "x", "y", {"x": 1, "y": 0}, 3)
    assert [h[k].value for k in range(3)] == [1, Fraction(1, 2), Fraction(-1, 8)]


def test_hensel_polynomial_branch_is_exact():
    x, y = poly_vars(QQ, ("x", "y"))
    h = hensel_parametrize(x - y**3, "x", "y", {"x": 0, "y": 0}, 8)
    assert [h[k].value for k in range(8)] == [0, 0, 0, 1, 0, 0, 0, 0]


def test_hensel_fermat_chart_order():
    x1, x2 = poly_vars(QQ, ("x1", "x2"))
    f = 1 + x1**6 + x2**6
    a = Qi.wrap(Qi.gen)
    f_L = f.change_field(Qi)
    h = hensel_parametrize(f_L, "x1", "x2", {"x1": a, "x2": 0}, 8)
    assert h[0] == a and h[1] == 0
    ser = compose(f_L.derivative("x2"), {"x1": list(h.coefficients), "x2": [Qi.zero, Qi.one]}, 8, Qi)
    assert ser[:5] == [Qi.zero] * 5 and Qi.wrap(ser[5]) == 6


def test_hensel_errors():
    x, y = poly_vars(QQ, ("x", "y"))
    with pytest.raises(NonIsolatedError):
        hensel_parametrize(x**2 - y, "x", "y", {"x": 0, "y": 0}, 4)
    with pytest.raises(ValueError):
        hensel_parametrize(x - y, "x", "y", {"x": 0, "y": 0}, 0)


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=6), st.integers(2, 12))
def test_hensel_resubstitution(coeffs, N):
    x, y = poly_vars(QQ, ("x", "y"))
    # curve through the origin with f_x(0,0) = 1
    f = x + sum(c * y**(k + 1) for k, c in enumerate(coeffs)) + coeffs[0] * x**2 * y + coeffs[-1] * x**3
    h = hensel_parametrize(f, "x", "y", {"x": 0, "y": 0}, N)
    back = compose(f, {"x": list(h.coefficients), "y": [QQ.zero, QQ.one]}, N, QQ)
    assert all(c == 0 for c in back)
