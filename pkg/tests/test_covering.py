from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gwcover.covering import (
    CoveringLocalInput, LocalKind, assemble_general, branched_contribution, chi_blowup, chi_curve,
    chi_product, chi_projective_space, covering_chi, d_invariant, etale_contribution,
    real_parity_obstruction,
)
from gwcover.errors import FieldMismatchError
from gwcover.fields import GF, QQ
from gwcover.forms import cyclic_trace_check
from gwcover.gw import GWElement

H = GWElement.hyperbolic(QQ)
ONE = GWElement.one(QQ)
ZERO = GWElement.zero(QQ)


def form(a, K=QQ):
    return GWElement.form(K, a)


# ---------------------------------------------------------------- known characteristics

def test_projective_space():
    assert chi_projective_space(2) == ONE + H
    assert chi_projective_space(1) == H
    assert chi_projective_space(0) == ONE
    for n in range(8):
        x = chi_projective_space(n)
        assert x.rank == n + 1
        assert x.signature() == (n + 1) % 2
    with pytest.raises(ValueError):
        chi_projective_space(-1)


def test_curves():
    assert chi_curve(0) == H
    assert chi_curve(1) == ZERO
    assert chi_curve(10) == -9 * H
    with pytest.raises(ValueError):
        chi_curve(-1)


def test_blowup():
    P2 = chi_projective_space(2)
    assert chi_blowup(P2, ONE, 2) == 2 * H
    X = ONE + 5 * H
    assert chi_blowup(X, form(3), 1) == X
    assert chi_blowup(X, 2 * ONE, 2) == X + 2 * form(-1)
    with pytest.raises(ValueError):
        chi_blowup(X, ONE, 0)


def test_product():
    P1 = chi_projective_space(1)
    assert chi_product(P1, P1) == 2 * H
    X = form(3) + form(-5) + H
    assert chi_product(X, ONE) == X
    assert chi_product(chi_projective_space(2), ZERO) == ZERO


def test_d_invariant():
    assert d_invariant(0, 2, 2) == 0
    assert d_invariant(2, 2, 2) == -2
    assert d_invariant(2, 2, 1) == 2
    with pytest.raises(ValueError):
        d_invariant(2, 3, 1)


# ---------------------------------------------------------------- local contributions

def test_etale_contribution_examples():
    inp = CoveringLocalInput(LocalKind.ETALE_IRREDUCIBLE, 3, base_class=ONE, s_x=2)
    assert etale_contribution(inp) == form(3) + H
    s = Fraction(5, 3)
    inp = CoveringLocalInput(LocalKind.ETALE_IRREDUCIBLE, 2, base_class=ONE, s_x=s)
    assert etale_contribution(inp) == form(2) + form(2 * s)
    assert etale_contribution(CoveringLocalInput(LocalKind.ETALE_SPLIT, 5, base_class=ZERO)) == ZERO


@pytest.mark.parametrize("n,s", [(2, 3), (3, 2), (4, 5), (5, 7), (6, 2), (7, 3)])
def test_etale_irreducible_matches_trace_form(n, s):
    inp = CoveringLocalInput(LocalKind.ETALE_IRREDUCIBLE, n, base_class=ONE, s_x=s)
    assert etale_contribution(inp) == cyclic_trace_check(n, s, QQ)


def test_etale_contribution_errors():
    with pytest.raises(ValueError):
        etale_contribution(CoveringLocalInput(LocalKind.BRANCHED_ODD, 3, milnor_rank=1))
    with pytest.raises(ValueError):
        etale_contribution(CoveringLocalInput(LocalKind.ETALE_IRREDUCIBLE, 2, base_class=ONE))
    with pytest.raises(ValueError):
        etale_contribution(CoveringLocalInput(LocalKind.ETALE_SPLIT, 5, base_class=GWElement.one(GF(5))))
    with pytest.raises(ValueError):
        CoveringLocalInput(LocalKind.ETALE_SPLIT, 1, base_class=ONE)
    with pytest.raises(ValueError):
        CoveringLocalInput(LocalKind.BRANCHED_ODD, 3, milnor_rank=-1)


def test_branched_contribution_examples():
    assert branched_contribution(CoveringLocalInput(LocalKind.BRANCHED_ODD, 3, milnor_rank=1)) == H
    alpha = Fraction(7, 2)
    inp = CoveringLocalInput(LocalKind.BRANCHED_EVEN, 2, euler_class=ONE, alpha=alpha)
    assert branched_contribution(inp) == form(2 * alpha)
    assert branched_contribution(CoveringLocalInput(LocalKind.BRANCHED_ODD, 5, milnor_rank=0)) == ZERO


def test_branched_contribution_errors():
    with pytest.raises(ValueError):
        branched_contribution(CoveringLocalInput(LocalKind.BRANCHED_EVEN, 2, euler_class=ONE, alpha=0))
    with pytest.raises(ValueError):
        branched_contribution(CoveringLocalInput(LocalKind.BRANCHED_ODD, 4, milnor_rank=1))
    with pytest.raises(ValueError):
        branched_contribution(CoveringLocalInput(LocalKind.ETALE_SPLIT, 3, base_class=ONE))


@given(st.sampled_from([3, 5, 7, 9]), st.integers(0, 12))
def test_odd_branched_is_hyperbolic(n, mu):
    x = branched_contribution(CoveringLocalInput(LocalKind.BRANCHED_ODD, n, milnor_rank=mu))
    assert x.rank % 2 == 0 and x.signature() == 0
    assert x == (x.rank // 2) * H


_reps = st.sampled_from([1, -1, 2, -2, 3, -3, 5, 7, -6, Fraction(1, 3)])


@st.composite
def gw_elements(draw, genuine=False):
    x = ZERO
    for _ in range(draw(st.integers(0, 4))):
        x = x + draw(st.integers(0 if genuine else -2, 3)) * form(draw(_reps))
    return x + draw(st.integers(0 if genuine else -2, 3)) * H


@given(st.integers(2, 9), gw_elements())
def test_split_etale_is_rank_multiplicative(n, base):
    x = etale_contribution(CoveringLocalInput(LocalKind.ETALE_SPLIT, n, base_class=base))
    assert x.rank == n * base.rank
    assert x == n * base


# ---------------------------------------------------------------- covering formulas

def test_covering_chi_examples():
    X = ONE + H
    split = covering_chi(X, ZERO, 3, "split")
    assert split == 3 * ONE + 3 * H
    assert split.entries == (3 * (ONE + H)).entries
    # (<3> + H)(<1> + H) expands to <3> + 4H
    irr = covering_chi(X, ZERO, 3, "irreducible")
    assert irr == form(3) + 4 * H
    assert irr.rank == 3 * X.rank
    for mode in ("split", "irreducible"):
        assert covering_chi(ZERO, ZERO, 5, mode) == ZERO


def test_covering_chi_errors():
    with pytest.raises(ValueError):
        covering_chi(ONE, ZERO, 4)
    with pytest.raises(ValueError):
        covering_chi(ONE, ZERO, 1)
    with pytest.raises(ValueError):
        covering_chi(ONE, ZERO, 3, "other")
    with pytest.raises(FieldMismatchError):
        covering_chi(ONE, GWElement.zero(GF(5)), 3)
    K = GF(3)
    with pytest.raises(ValueError):
        covering_chi(GWElement.one(K), GWElement.zero(K), 3)


@given(st.sampled_from([3, 5, 7, 9, 11]), gw_elements(), gw_elements())
def test_covering_rank_law(n, chi_X, chi_Z):
    for mode in ("irreducible", "split"):
        chi_Y = covering_chi(chi_X, chi_Z, n, mode)
        assert chi_Y.rank == n * chi_X.rank - (n - 1) * chi_Z.rank


@given(st.sampled_from([3, 5, 7]), gw_elements(), gw_elements())
def test_split_minus_irreducible(n, chi_X, chi_Z):
    diff = covering_chi(chi_X, chi_Z, n, "split") - covering_chi(chi_X, chi_Z, n, "irreducible")
    factor = n * ONE - form(n) - ((n - 1) // 2) * H
    assert diff == factor * chi_X
    # the branch term cancels, and over R the difference only sees the signature of chi_X
    assert diff.rank == 0
    assert diff.signature() == (n - 1) * chi_X.signature()


def test_real_parity_obstruction():
    assert real_parity_obstruction(12, 4, 24, 4)
    assert not real_parity_obstruction(12, 4, 24, 8)
    assert not real_parity_obstruction(1, 1, 3, 1)


# ---------------------------------------------------------------- assembly

def test_assemble_examples():
    assert assemble_general([], [], ZERO, 3, 2, 0) == ZERO
    assert assemble_general([form(3) + H], [], ZERO, 3, 2, 0) == form(3) + H
    with pytest.raises(ValueError):
        assemble_general([], [H], ZERO, 3, 2, 0)
    with pytest.raises(FieldMismatchError):
        assemble_general([GWElement.one(GF(7))], [], ZERO, 3, 2, 0)


def test_assemble_double_cover_of_p2():
    # chi(Y) for the blow-up model: r = 2, n = 2, branch curve of genus 10, D = 0
    beta = 3 * H
    chi_Z = chi_curve(10)
    y = assemble_general([], [beta], chi_Z, 2, 2, 0)
    assert y.rank == beta.rank - chi_Z.rank


@given(st.integers(2, 7), st.integers(1, 3), st.lists(gw_elements(), max_size=3),
       st.lists(gw_elements(), max_size=3), gw_elements(), st.integers(-3, 3))
def test_assemble_rank_bookkeeping(n, r, etale, branched, chi_Z, D):
    if n % 2:
        branched = []
    y = assemble_general(etale, branched, chi_Z, n, r, D)
    c_rank = n - 1
    total = sum(x.rank for x in etale) + sum(x.rank for x in branched)
    expected = (-1) ** r * (total + (-1) ** (r - 1) * chi_Z.rank * c_rank - 2 * n * D)
    assert y.rank == expected
