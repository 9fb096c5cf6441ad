"""Univariate factorization over Q, finite fields and towers above them.

* finite towers: squarefree split, distinct-degree split, then randomized
  equal-degree splitting (Cantor--Zassenhaus, odd characteristic);
* Q: factor modulo a good prime, multifactor Hensel lift, subset recombination;
* extension stages of characteristic zero: Trager's norm reduction to the stage
  below, factors recovered by gcds.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from . import upoly
from .errors import CapacityError
from .fields import Field, PrimeField, Rationals

DEFAULT_MAX_DEGREE = 64
DEFAULT_SEED = 0
_MAX_SUBSETS = 200_000


def factor_univariate(f, K: Field, *, seed: int = DEFAULT_SEED,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> list[tuple[list, int]]:
    """Complete factorization into ``(monic irreducible, multiplicity)`` pairs.

    The leading coefficient is dropped; use :func:`factor_list` to keep it.
    """
    return factor_list(f, K, seed=seed, max_degree=max_degree)[1]


def factor_list(f, K: Field, *, seed: int = DEFAULT_SEED, max_degree: int = DEFAULT_MAX_DEGREE):
    f = upoly.strip(list(f), K)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) - 1 > max_degree:
        raise CapacityError(f"degree {len(f) - 1} exceeds the factorization bound {max_degree}")
    lc = f[-1]
    if len(f) == 1:
        return lc, []
    rng = random.Random(seed)
    out: list[tuple[list, int]] = []
    for g, mult in squarefree_decomposition(upoly.monic(f, K), K):
        for h in _factor_squarefree(g, K, rng, max_degree):
            out.append((h, mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[1], repr(fm[0])))
    return lc, out


def is_irreducible(f, K: Field, **kw) -> bool:
    f = upoly.strip(list(f), K)
    if len(f) < 2:
        return False
    if len(f) == 2:
        return True
    facs = factor_univariate(f, K, **kw)
    return len(facs) == 1 and facs[0][1] == 1


def _factor_squarefree(g, K, rng, max_degree):
    if len(g) == 2:
        return [g]
    if K.is_finite:
        return _factor_sqf_finite(g, K, rng)
    if isinstance(K, Rationals):
        return _factor_sqf_rational(g, rng, max_degree)
    return _factor_sqf_trager(g, K, rng, max_degree)


# --- squarefree decomposition ------------------------------------------------

def squarefree_decomposition(f, K: Field) -> list[tuple[list, int]]:
    """Monic ``f`` as a product of ``g_i ** m_i`` with pairwise coprime squarefree ``g_i``."""
    f = upoly.monic(f, K)
    if len(f) <= 1:
        return []
    if K.characteristic == 0:
        return _yun(f, K)
    return _sqf_finite(f, K)


def _yun(f, K):
    out = []
    fp = upoly.derivative(f, K)
    a = upoly.gcd(f, fp, K)
    b = upoly.quo(f, a, K)
    c = upoly.quo(fp, a, K)
    d = upoly.sub(c, upoly.derivative(b, K), K)
    i = 1
    while len(b) > 1:
        a = upoly.gcd(b, d, K)
        b = upoly.quo(b, a, K)
        c = upoly.quo(d, a, K)
        d = upoly.sub(c, upoly.derivative(b, K), K)
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out


def _pth_root_poly(f, K):
    p = K.characteristic
    coeffs = f[::p]
    if isinstance(K, PrimeField):
        return list(coeffs)
    return [K.pth_root(c) for c in coeffs]


def _sqf_finite(f, K):
    p = K.characteristic
    out: list[tuple[list, int]] = []
    fp = upoly.derivative(f, K)
    if not fp:
        return [(g, m * p) for g, m in _sqf_finite(_pth_root_poly(f, K), K)]
    c = upoly.gcd(f, fp, K)
    w = upoly.quo(f, c, K)
    i = 1
    while len(w) > 1:
        y = upoly.gcd(w, c, K)
        z = upoly.quo(w, y, K)
        if len(z) > 1:
            out.append((upoly.monic(z, K), i))
        i += 1
        w = y
        c = upoly.quo(c, y, K)
    if len(c) > 1:
        out.extend((g, m * p) for g, m in _sqf_finite(_pth_root_poly(c, K), K))
    return out


# --- finite fields -------------------------------------------------------------

def _factor_sqf_finite(f, K, rng):
    out = []
    for g, d in _distinct_degree(f, K):
        out.extend(_equal_degree(g, d, K, rng))
    return out


def _distinct_degree(f, K):
    q = K.order
    x = [K.zero, K.one]
    h = x
    rest = f
    out = []
    i = 1
    while 2 * i <= len(rest) - 1:
        h = upoly.powmod(h, q, rest, K)
        g = upoly.gcd(rest, upoly.sub(h, x, K), K)
        if len(g) > 1:
            out.append((g, i))
            rest = upoly.quo(rest, g, K)
            h = upoly.rem(h, rest, K)
        i += 1
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _equal_degree(f, d, K, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    q = K.order
    e = (q ** d - 1) // 2
    while True:
        a = upoly.strip([K.random_element(rng) for _ in range(n)], K)
        if len(a) < 2:
            continue
        b = upoly.sub(upoly.powmod(a, e, f, K), [K.one], K)
        g = upoly.gcd(f, b, K)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, K, rng) + _equal_degree(upoly.quo(f, g, K), d, K, rng)


# --- integers / rationals -----------------------------------------------------

def _zz_primitive(f) -> tuple[list[int], Fraction]:
    """Scale a rational polynomial to a primitive integer one with positive lc."""
    den = 1
    for c in f:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    cont = 0
    for c in ints:
        cont = math.gcd(cont, c)
    if ints[-1] < 0:
        cont = -cont
    return [c // cont for c in ints], Fraction(cont, den)


def _zz_mod(f, m):
    out = [c % m for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zz_symmetric(f, m):
    half = m // 2
    out = [(c % m) - m if c % m > half else c % m for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zz_mul(f, g, m=None):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _zz_mod(out, m) if m else out


def _zz_add(f, g, m):
    n = max(len(f), len(g))
    return _zz_mod([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], m)


def _zz_sub(f, g, m):
    n = max(len(f), len(g))
    return _zz_mod([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], m)


def _zz_divmod_monic(f, g, m):
    """Divide by a polynomial with unit leading coefficient modulo ``m``."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], _zz_mod(r, m)
    inv = pow(g[-1], -1, m)
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k] * inv % m
        if c:
            q[k - dg] = c
            for i in range(dg + 1):
                r[k - dg + i] -= c * g[i]
    return _zz_mod(q, m), _zz_mod(r[:dg], m)


def _zz_exact_div(f, g):
    """``f / g`` over Z, or ``None`` when g does not divide f."""
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return None
    lcg = g[-1]
    q = [0] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c, rem = divmod(r[k], lcg)
        if rem:
            return None
        q[k - dg] = c
        if c:
            for i in range(dg + 1):
                r[k - dg + i] -= c * g[i]
    if any(r[:dg]):
        return None
    return q


def _hensel_step(f, g, h, s, t, m):
    """Lift ``f = g h``, ``s g + t h = 1`` from mod m to mod m^2 (h monic)."""
    m2 = m * m
    e = _zz_sub(f, _zz_mul(g, h, m2), m2)
    q, r = _zz_divmod_monic(_zz_mul(s, e, m2), h, m2)
    g1 = _zz_add(g, _zz_add(_zz_mul(t, e, m2), _zz_mul(q, g, m2), m2), m2)
    h1 = _zz_add(h, r, m2)
    b = _zz_sub(_zz_add(_zz_mul(s, g1, m2), _zz_mul(t, h1, m2), m2), [1], m2)
    c, d = _zz_divmod_monic(_zz_mul(s, b, m2), h1, m2)
    s1 = _zz_sub(s, d, m2)
    t1 = _zz_sub(t, _zz_add(_zz_mul(t, b, m2), _zz_mul(c, g1, m2), m2), m2)
    return g1, h1, s1, t1


def _hensel_lift(F, factors, p, k):
    """Lift monic modular factors of ``F`` (lc(F) a unit mod p) to monic factors mod p^k."""
    Fp = PrimeField(p)
    pk = p ** k
    if len(factors) == 1:
        inv = pow(F[-1], -1, pk)
        return [_zz_mod([c * inv for c in F], pk)]
    half = len(factors) // 2
    A, B = factors[:half], factors[half:]
    g = [F[-1] % p]
    for a in A:
        g = _zz_mul(g, a, p)
    h = [1]
    for b in B:
        h = _zz_mul(h, b, p)
    one, s, t = upoly.gcdex(g, h, Fp)
    assert one == [1]
    m = p
    g1, h1 = g, h
    while m < pk:
        g1, h1, s, t = _hensel_step(_zz_mod(F, m * m), g1, h1, s, t, m)
        m *= m
    g1, h1 = _zz_mod(g1, pk), _zz_mod(h1, pk)
    return _hensel_lift(g1, A, p, k) + _hensel_lift(h1, B, p, k)


def _choose_prime(F, rng):
    n = len(F) - 1
    best = None
    p = 3
    tried = 0
    from sympy import nextprime

    while tried < 6:
        p = nextprime(p)
        if F[-1] % p == 0:
            continue
        Fp = PrimeField(p)
        Fbar = upoly.from_ints(F, Fp)
        if len(upoly.gcd(Fbar, upoly.derivative(Fbar, Fp), Fp)) != 1:
            continue
        facs = _factor_sqf_finite(upoly.monic(Fbar, Fp), Fp, rng)
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1 or len(facs) <= 2 and n > 6:
            break
    return best


def _factor_zz_squarefree(F, rng):
    """Irreducible primitive factors of a primitive squarefree integer polynomial."""
    n = len(F) - 1
    if n <= 1:
        return [F]
    p, modular = _choose_prime(F, rng)
    if len(modular) == 1:
        return [F]
    lc = F[-1]
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    bound = 2 * (2 ** n) * norm2 * abs(lc)
    k = 1
    while p ** k <= bound:
        k += 1
    pk = p ** k
    lifted = _hensel_lift(F, modular, p, k)

    found = []
    remaining = list(range(len(lifted)))
    G = list(F)
    s = 1
    checked = 0
    while 2 * s <= len(remaining):
        progress = False
        for subset in combinations(remaining, s):
            checked += 1
            if checked > _MAX_SUBSETS:
                raise CapacityError("factor recombination exceeds its subset budget")
            lcG = G[-1]
            cand = [lcG % pk]
            for i in subset:
                cand = _zz_mul(cand, lifted[i], pk)
            cand = _zz_symmetric(cand, pk)
            cont = 0
            for c in cand:
                cont = math.gcd(cont, c)
            cand = [c // cont for c in cand]
            q = _zz_exact_div(G, cand)
            if q is not None:
                found.append(cand)
                G = q
                remaining = [i for i in remaining if i not in subset]
                progress = True
                break
        if not progress:
            s += 1
    found.append(G)
    out = []
    for g in found:
        if g[-1] < 0:
            g = [-x for x in g]
        out.append(g)
    return out


def _factor_sqf_rational(g, rng, max_degree):
    F, _ = _zz_primitive(g)
    out = []
    for h in _factor_zz_squarefree(F, rng):
        out.append(upoly.monic([Fraction(c) for c in h], Rationals()))
    return out


# --- characteristic-zero extension stages (Trager) ----------------------------

def _shifted_bivariate(g, L, s):
    """``G(x, y) = g(x - s*y)`` with the stage generator replaced by ``y``.

    Returned as a list over powers of ``y`` of polynomials in ``x`` over the
    parent field.
    """
    K = L.parent
    # (x - s*y)^k kept as a dict (i, j) -> coefficient of x^i y^j
    terms: dict[tuple[int, int], object] = {}
    power = {(0, 0): K.one}
    minus_s = K.from_int(-s)
    for k, c in enumerate(g):
        # c is an L element: sum_l c[l] y^l
        for (i, j), v in power.items():
            for l, cl in enumerate(c):
                if cl == K.zero:
                    continue
                key = (i, j + l)
                terms[key] = K.add(terms.get(key, K.zero), K.mul(v, cl))
        new: dict[tuple[int, int], object] = {}
        for (i, j), v in power.items():
            new[(i + 1, j)] = K.add(new.get((i + 1, j), K.zero), v)
            if s:
                new[(i, j + 1)] = K.add(new.get((i, j + 1), K.zero), K.mul(minus_s, v))
        power = new
    maxj = max((j for (_, j) in terms), default=0)
    out = [[] for _ in range(maxj + 1)]
    for (i, j), v in terms.items():
        if v == K.zero:
            continue
        col = out[j]
        if len(col) <= i:
            col.extend([K.zero] * (i + 1 - len(col)))
        col[i] = v
    return [upoly.strip(col, K) for col in out]


def norm_poly(g, L, s: int = 0):
    """Norm over the parent stage of ``g(x - s*a)``."""
    K = L.parent
    R = upoly.PolyRing(K)
    G = _shifted_bivariate(g, L, s)
    M = [upoly.constant(c, K) for c in L.modulus]
    return upoly.resultant_ring(M, G, R)


def _factor_sqf_trager(g, L, rng, max_degree):
    K = L.parent
    a = L.gen
    for s in _shifts():
        N = norm_poly(g, L, s)
        if len(N) - 1 > max_degree:
            raise CapacityError(f"norm of degree {len(N) - 1} exceeds the factorization bound {max_degree}")
        if len(upoly.gcd(N, upoly.derivative(N, K), K)) == 1:
            break
    else:  # pragma: no cover - the shift search is finite only by a budget
        raise CapacityError("no squarefree norm found")
    sa = L.mul(L.from_int(s), a)
    gs = upoly.compose(g, [L.neg(sa), L.one], L)  # g(x - s a)
    out = []
    for Ni, _ in factor_univariate(N, K, seed=rng.randrange(2**31), max_degree=max_degree):
        Ni_L = [L.embed(c, K) for c in Ni]
        h = upoly.gcd(gs, Ni_L, L)
        if len(h) > 1:
            out.append(upoly.monic(upoly.compose(h, [sa, L.one], L), L))
    return out


def _shifts():
    yield 0
    for k in range(1, 200):
        yield k
        yield -k
