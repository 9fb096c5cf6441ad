import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwcover.errors import FieldMismatchError
from gwcover.fields import GF, QQ
from gwcover.gw import (
    GWElement, display, gw_arith, gw_equals, gw_equals_real, gw_from_diagonal, gw_invariants,
    real_product_solutions,
)
from gwcover.parsing import parse_gw

FINITE = [3, 5, 7, 11]


def form(K, a):
    return GWElement.form(K, a)


def H(K=QQ):
    return GWElement.hyperbolic(K)


def _equivalent_by_search(a: list[int], b: list[int], p: int) -> bool:
    """Brute force: is there P in GL_2(F_p) with P^T diag(a) P = diag(b)?"""
    for p11, p12, p21, p22 in itertools.product(range(p), repeat=4):
        if (p11 * p22 - p12 * p21) % p == 0:
            continue
        # columns of P are the images of the basis vectors
        q = lambda x, y: (a[0] * x * x + a[1] * y * y) % p
        if q(p11, p21) != b[0] % p or q(p12, p22) != b[1] % p:
            continue
        if (a[0] * p11 * p12 + a[1] * p21 * p22) % p == 0:
            return True
    return False


# ---------------------------------------------------------------- examples

def test_from_diagonal_examples():
    assert gw_from_diagonal([18], QQ) == form(QQ, 2)
    assert gw_from_diagonal([18], QQ).entries == {2: 1}
    assert gw_from_diagonal([], QQ) == GWElement.zero(QQ)
    assert gw_from_diagonal([], QQ).entries == {}
    assert gw_from_diagonal([1, -1], QQ) == H()
    with pytest.raises(ValueError):
        gw_from_diagonal([1, 0], QQ)


def test_arith_examples():
    assert gw_arith(form(QQ, 2), form(QQ, 2), "mul") == GWElement.one(QQ)
    for a in (1, -1, 2, 3, Fraction(5, 7), -30):
        assert H() * form(QQ, a) == H()
    # expansion gives <3> + <3>H + H + H^2 = <3> + 4H (rank 9)
    prod = (form(QQ, 3) + H()) * (GWElement.one(QQ) + H())
    assert prod == form(QQ, 3) + 4 * H()
    assert prod.rank == 9
    with pytest.raises(FieldMismatchError):
        gw_arith(H(QQ), H(GF(5)), "add")
    with pytest.raises(ValueError):
        gw_arith(H(), H(), "div")


def test_invariant_examples():
    inv = gw_invariants(H())
    assert (inv.rank, inv.signature, inv.discriminant) == (2, 0, -1)
    x = 2 * GWElement.one(QQ) + 11 * H()
    assert (x.rank, x.signature()) == (24, 2)
    assert gw_invariants(form(QQ, 1) + form(QQ, 2)) == gw_invariants(form(QQ, 3) + form(QQ, 6))
    with pytest.raises(ValueError):
        H(GF(5)).signature()


def test_equals_examples():
    assert gw_equals(form(QQ, 1) + form(QQ, 2), form(QQ, 3) + form(QQ, 6))
    assert not gw_equals(2 * GWElement.one(QQ), H())
    # -1 is a square mod 5 and mod 13, so H = 2<1> there
    for p in (5, 13):
        K = GF(p)
        assert gw_equals(2 * GWElement.one(K), H(K))
        assert _equivalent_by_search([1, 1], [1, -1], p)
    K = GF(7)
    assert not gw_equals(2 * GWElement.one(K), H(K))
    assert not _equivalent_by_search([1, 1], [1, -1], 7)
    assert gw_equals(form(GF(5), 2), form(GF(5), 8))


def test_equals_sees_hasse_invariant():
    # same rank, signature and discriminant; differ at the place 3
    x = form(QQ, 1) + form(QQ, 1)
    y = form(QQ, 3) + form(QQ, 3)
    assert (x.rank, x.signature(), x.discriminant()) == (y.rank, y.signature(), y.discriminant())
    assert not gw_equals(x, y)
    assert gw_equals(form(QQ, 1) + form(QQ, 1), form(QQ, 2) + form(QQ, 2))


def test_virtual_equality_uses_padding():
    x = form(QQ, 2) - form(QQ, 3)
    y = form(QQ, 2) + form(QQ, -3) - H()
    assert x == y
    assert x.rank == 0 and x.signature() == 0
    assert gw_equals(x - y, GWElement.zero(QQ))


def test_real_equality():
    assert gw_equals_real(form(QQ, 2), form(QQ, 3))
    assert not gw_equals_real(form(QQ, 2), form(QQ, -3))


def test_display_examples():
    assert display(form(QQ, 3) + form(QQ, -3) + GWElement.one(QQ)) == "<1> + H"
    assert display(GWElement.zero(QQ)) == "0"
    assert display(2 * GWElement.one(QQ) + form(QQ, -1)) == "<1> + H"
    assert display(2 * GWElement.one(QQ) + 11 * H()) == "2<1> + 11*H"
    assert display(2 * GWElement.one(QQ) + 11 * H(), unicode=True) == "2⟨1⟩ + 11·H"


def test_display_is_deterministic_order():
    x = form(QQ, -2) + form(QQ, 3) + form(QQ, 2) + GWElement.one(QQ)
    assert display(x) == display(form(QQ, 2) + GWElement.one(QQ) + form(QQ, 3) + form(QQ, -2))


# ---------------------------------------------------------------- presentation relations

def check_relations(K, a, b) -> list[str]:
    failed = []
    if not gw_equals(form(K, a) * form(K, b), form(K, K.mul(a, b))):
        failed.append("mul")
    s = K.add(a, b)
    if not K.is_zero(s):
        rhs = form(K, s) + form(K, K.mul(K.mul(a, b), s))
        if not gw_equals(form(K, a) + form(K, b), rhs):
            failed.append("sum")
    if not gw_equals(form(K, K.mul(a, K.mul(b, b))), form(K, a)):
        failed.append("square")
    if not gw_equals(form(K, a) + form(K, K.neg(a)), H(K)):
        failed.append("hyperbolic")
    return failed


@pytest.mark.parametrize("p", FINITE)
def test_relations_exhaustive_over_fp(p):
    K = GF(p)
    for a in range(1, p):
        for b in range(1, p):
            assert check_relations(K, K.from_int(a), K.from_int(b)) == [], (a, b)


_nonzero_q = st.fractions(min_value=-200, max_value=200, max_denominator=30).filter(bool)


@given(_nonzero_q, _nonzero_q)
def test_relations_over_q(a, b):
    assert check_relations(QQ, a, b) == []


def test_fp_equality_matches_change_of_basis_search():
    for p in (3, 5, 7):
        K = GF(p)
        units = range(1, p)
        for a in itertools.product(units, repeat=2):
            for b in itertools.product(units, repeat=2):
                ours = gw_equals(gw_from_diagonal(list(a), K), gw_from_diagonal(list(b), K))
                assert ours == _equivalent_by_search(list(a), list(b), p), (p, a, b)


# ---------------------------------------------------------------- properties

_rep = st.sampled_from([1, -1, 2, -2, 3, -3, 5, 6, -6, 7, -10, 15, Fraction(1, 3), Fraction(-5, 2)])


@st.composite
def gw_q(draw, max_terms=5):
    x = GWElement.zero(QQ)
    for _ in range(draw(st.integers(0, max_terms))):
        x = x + draw(st.integers(-3, 3)) * form(QQ, draw(_rep))
    return x + draw(st.integers(-2, 3)) * H()


@given(gw_q(), gw_q())
def test_rank_and_signature_are_ring_homomorphisms(x, y):
    assert (x + y).rank == x.rank + y.rank
    assert (x * y).rank == x.rank * y.rank
    assert (x + y).signature() == x.signature() + y.signature()
    assert (x * y).signature() == x.signature() * y.signature()


@given(gw_q(), gw_q(), gw_q())
def test_ring_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == GWElement.zero(QQ)


@given(gw_q())
def test_rank_signature_parity(x):
    assert (x.rank - x.signature()) % 2 == 0


@given(gw_q())
def test_hyperbolic_absorbs(x):
    assert H() * x == x.rank * H()


@given(gw_q())
def test_display_round_trip(x):
    assert parse_gw(display(x), QQ) == x
    assert parse_gw(display(x, unicode=True), QQ) == x


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_display_round_trip_fp(p):
    K = GF(p)
    rng = random.Random(p)
    for _ in range(30):
        x = gw_from_diagonal([rng.randrange(1, p) for _ in range(rng.randint(0, 5))], K)
        x = x - rng.randint(0, 2) * H(K)
        assert parse_gw(display(x), K) == x


@given(gw_q(), gw_q())
def test_hash_consistent_with_equality(x, y):
    if x == y:
        assert hash(x) == hash(y)


def test_real_parity_obstruction_solver():
    # beta * chi_X = chi_Y with chi_X of rank 12, signature 4 and chi_Y of rank 24, signature 4
    assert real_product_solutions(12, 4, 24, 4) is None
    sol = real_product_solutions(12, 4, 24, 8)
    assert sol is not None
    a, b = sol
    assert (a + b) * 12 == 24 and (a - b) * 4 == 8
