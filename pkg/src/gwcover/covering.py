"""Closed-form Euler characteristic calculus in GW(k) for cyclic branched covers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import FieldMismatchError
from .fields import Field, QQ
from .gw import GWElement


def _H(K: Field) -> GWElement:
    return GWElement.hyperbolic(K)


def chi_projective_space(n: int, K: Field = QQ) -> GWElement:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n % 2:
        return ((n + 1) // 2) * _H(K)
    return GWElement.one(K) + (n // 2) * _H(K)


def chi_curve(g: int, K: Field = QQ) -> GWElement:
    if g < 0:
        raise ValueError("genus must be non-negative")
    return (1 - g) * _H(K)


def chi_blowup(chi_X: GWElement, chi_Z: GWElement, codim: int) -> GWElement:
    """Blow-up along a smooth centre of codimension ``codim``: the exceptional divisor is a P^{c-1}-bundle."""
    if codim < 1:
        raise ValueError("codimension must be at least 1")
    K = chi_X.field
    return chi_X + (chi_projective_space(codim - 1, K) - GWElement.one(K)) * chi_Z


def chi_product(chi_X: GWElement, chi_F: GWElement) -> GWElement:
    return chi_X * chi_F


def d_invariant(chi_top_fiber: int, chi_top_base: int, r: int) -> int:
    if chi_top_base % 2:
        raise ValueError("the base is a curve, so its Euler number must be even")
    return (-1) ** (r - 1) * chi_top_fiber * chi_top_base // 2


class LocalKind(enum.Enum):
    ETALE_IRREDUCIBLE = "etale-irreducible"
    ETALE_SPLIT = "etale-split"
    BRANCHED_ODD = "branched-odd"
    BRANCHED_EVEN = "branched-even"


@dataclass(frozen=True)
class CoveringLocalInput:
    kind: LocalKind
    n: int
    base_class: GWElement | None = None
    s_x: object = None
    milnor_rank: int = 0
    euler_class: GWElement | None = None
    alpha: object = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("covering degree must be at least 2")
        if self.milnor_rank < 0:
            raise ValueError("Milnor rank must be non-negative")


def _check_invertible(n: int, K: Field):
    if K.is_zero(K.from_int(n)):
        raise ValueError(f"n = {n} is not invertible in {K}")


def cyclic_factor(n: int, s, K: Field) -> GWElement:
    """Trace form of k[z]/(z^n - s) in closed form."""
    H = _H(K)
    if n % 2:
        return GWElement.form(K, n) + ((n - 1) // 2) * H
    ns = K.mul(K.from_int(n), K.convert(s))
    return GWElement.form(K, n) + GWElement.form(K, ns) + ((n - 2) // 2) * H


def etale_contribution(inp: CoveringLocalInput) -> GWElement:
    if inp.kind not in (LocalKind.ETALE_IRREDUCIBLE, LocalKind.ETALE_SPLIT):
        raise ValueError(f"{inp.kind.value} is not an etale kind")
    if inp.base_class is None:
        raise ValueError("etale contributions need a base class")
    K = inp.base_class.field
    _check_invertible(inp.n, K)
    if inp.kind is LocalKind.ETALE_SPLIT:
        return inp.n * inp.base_class
    if inp.n % 2 == 0 and inp.s_x is None:
        raise ValueError("even irreducible contributions need s_x")
    return inp.base_class * cyclic_factor(inp.n, inp.s_x if inp.s_x is not None else 1, K)


def branched_contribution(inp: CoveringLocalInput, K: Field | None = None) -> GWElement:
    if inp.kind not in (LocalKind.BRANCHED_ODD, LocalKind.BRANCHED_EVEN):
        raise ValueError(f"{inp.kind.value} is not a branched kind")
    n = inp.n
    if inp.kind is LocalKind.BRANCHED_ODD:
        if n % 2 == 0:
            raise ValueError("odd branched contribution with even n")
        K = K or (inp.base_class.field if inp.base_class is not None else QQ)
        _check_invertible(n, K)
        return inp.milnor_rank * ((n - 1) // 2) * _H(K)
    if n % 2:
        raise ValueError("even branched contribution with odd n")
    if inp.euler_class is None:
        raise ValueError("even branched contributions need an Euler class")
    K = inp.euler_class.field
    _check_invertible(n, K)
    alpha = K.convert(inp.alpha if inp.alpha is not None else 0)
    if K.is_zero(alpha):
        raise ValueError("alpha must be nonzero")
    na = K.mul(K.from_int(n), alpha)
    return inp.euler_class * (GWElement.form(K, na) + ((n - 2) // 2) * _H(K))


def covering_chi(chi_X: GWElement, chi_Z: GWElement, n: int, mode: str = "irreducible") -> GWElement:
    if n < 3 or n % 2 == 0:
        raise ValueError("covering_chi needs an odd degree n >= 3")
    if chi_X.field != chi_Z.field:
        raise FieldMismatchError("chi_X and chi_Z live over different fields")
    K = chi_X.field
    _check_invertible(n, K)
    H = _H(K)
    branch = chi_Z * (((n - 1) // 2) * H)
    if mode == "irreducible":
        return cyclic_factor(n, 1, K) * chi_X - branch
    if mode == "split":
        return n * chi_X - branch
    raise ValueError(f"unknown mode {mode!r}")


def assemble_general(etale_terms: Sequence[GWElement], branched_terms: Sequence[GWElement],
                     chi_Z: GWElement, n: int, r: int, D_rho: int) -> GWElement:
    """chi(Y) from traced local terms.

    With ``c_n = (n-1)/2 H`` for odd ``n`` and ``<1> + (n-2)/2 H`` for even ``n``:
    ``(-1)^r chi(Y) = sum(etale) + [n even] sum(branched) + (-1)^(r-1) chi(Z) c_n - n D H``.
    For odd ``n`` the branched terms are already absorbed in the chi(Z) term,
    so passing any is a parity error.
    """
    if n < 2:
        raise ValueError("covering degree must be at least 2")
    K = chi_Z.field
    _check_invertible(n, K)
    H = _H(K)
    for x in list(etale_terms) + list(branched_terms):
        if x.field != K:
            raise FieldMismatchError("terms live over different fields")
    if n % 2 and branched_terms:
        raise ValueError("branched terms are only assembled for even n")
    S = GWElement.zero(K)
    for x in etale_terms:
        S = S + x
    if n % 2 == 0:
        for x in branched_terms:
            S = S + x
        c_n = GWElement.one(K) + ((n - 2) // 2) * H
    else:
        c_n = ((n - 1) // 2) * H
    S = S + (-1) ** (r - 1) * (chi_Z * c_n) - (n * D_rho) * H
    return (-1) ** r * S


def real_parity_obstruction(rank_x: int, sig_x: int, rank_y: int, sig_y: int) -> bool:
    """True when no beta in GW(R) satisfies beta * chi_X = chi_Y on rank and signature."""
    from .gw import real_product_solutions

    return real_product_solutions(rank_x, sig_x, rank_y, sig_y) is None
