"""Steenrod squares acting on GF(2)[x_1, ..., x_k].

``Sq^r`` on a monomial is given by the Cartan formula together with
``Sq^r(x^a) = binom(a, r) x^{a+r}``.  Over GF(2) the binomial is odd exactly
when the bits of ``r`` are a subset of the bits of ``a``, and different splits
``r = r_1 + ... + r_k`` produce different exponent vectors, so the expansion
never cancels within a single monomial.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .f2core import Monomial, Polynomial, monomials_of_degree

__all__ = [
    "binom_mod2",
    "sq_exponents",
    "sq_monomial",
    "sq",
    "sq_sources",
    "hit_generator_stream",
    "adem_check",
]


def binom_mod2(a: int, b: int) -> int:
    """``binom(a, b) mod 2`` by Lucas' theorem."""
    if b < 0 or a < 0 or b > a:
        return 0
    return int((a & b) == b)


@lru_cache(maxsize=1 << 16)
def _submasks(a: int) -> tuple[int, ...]:
    out = []
    s = a
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & a
    out.sort()
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def _preimages(t: int) -> tuple[int, ...]:
    """Values ``x`` with ``x`` a bit-subset of ``t - x``, i.e. ``Sq^x(y^{t-x})`` contains ``y^t``."""
    return tuple(x for x in range(t + 1) if ((t - x) & x) == x)


def sq_exponents(r: int, e: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponent vectors of the terms of ``Sq^r(x^e)`` (each with coefficient 1)."""
    if r < 0:
        raise ValueError("Sq^r needs r >= 0")
    k = len(e)
    if r == 0:
        return [tuple(e)]
    if r > sum(e):
        return []
    lists = [_submasks(a) for a in e]
    # caps[i] = largest amount the variables i.. can absorb
    caps = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        caps[i] = caps[i + 1] + e[i]
    out: list[tuple[int, ...]] = []
    acc = list(e)

    def rec(i: int, rem: int) -> None:
        if i == k - 1:
            if (rem & e[i]) == rem:
                acc[i] = e[i] + rem
                out.append(tuple(acc))
                acc[i] = e[i]
            return
        for s in lists[i]:
            if s > rem:
                break
            if rem - s > caps[i + 1]:
                continue
            acc[i] = e[i] + s
            rec(i + 1, rem - s)
        acc[i] = e[i]

    rec(0, r)
    return out


def sq_sources(t: Sequence[int], r: int) -> list[tuple[int, ...]]:
    """All ``e`` such that ``x^t`` is a term of ``Sq^r(x^e)``."""
    k = len(t)
    lists = [_preimages(x) for x in t]
    out: list[tuple[int, ...]] = []
    acc = [0] * k

    def rec(i: int, rem: int) -> None:
        if i == k - 1:
            if rem in lists[i]:
                acc[i] = rem
                out.append(tuple(a - b for a, b in zip(t, acc)))
            return
        for s in lists[i]:
            if s > rem:
                break
            acc[i] = s
            rec(i + 1, rem - s)

    rec(0, r)
    return out


def sq_monomial(r: int, m: Sequence[int]) -> Polynomial:
    k = len(m)
    deg = sum(m) + r
    return Polynomial._raw(k, frozenset(Monomial(t) for t in sq_exponents(r, m)), deg if r <= sum(m) else None)


def sq(r: int, f: Polynomial | Sequence[int]) -> Polynomial:
    """``Sq^r`` applied to a polynomial (or to a bare exponent vector)."""
    if not isinstance(f, Polynomial):
        return sq_monomial(r, f)
    acc: set = set()
    for m in f.terms:
        acc.symmetric_difference_update(sq_exponents(r, m))
    return Polynomial(f.k, acc)


def hit_generator_stream(k: int, n: int) -> Iterator[Polynomial]:
    """Nonzero ``Sq^{2^j}(m)`` for all monomials ``m`` of degree ``n - 2^j``.

    These span the hit elements of degree ``n``: the algebra is generated by
    the squares ``Sq^{2^j}``, and the unstable condition makes ``Sq^r`` vanish
    on degree below ``r``, so only ``2^j <= n/2`` contributes.
    """
    j = 0
    while (1 << j) <= n // 2:
        r = 1 << j
        for m in monomials_of_degree(k, n - r):
            terms = sq_exponents(r, m)
            if terms:
                yield Polynomial._raw(k, frozenset(Monomial(t) for t in terms), n)
        j += 1


def _sq_seq(seq: Sequence[int], f: Polynomial) -> Polynomial:
    for r in reversed(seq):
        f = sq(r, f)
    return f


def adem_check(a: int, b: int, f: Polynomial) -> bool:
    """Check ``Sq^a Sq^b (f) = sum_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c (f)`` for ``a < 2b``."""
    if not 0 < a < 2 * b:
        raise ValueError("the Adem relation needs 0 < a < 2b")
    lhs = sq(a, sq(b, f))
    rhs = Polynomial.zero(f.k)
    for c in range(a // 2 + 1):
        if binom_mod2(b - c - 1, a - 2 * c):
            rhs = rhs + _sq_seq((a + b - c, c), f)
    return lhs == rhs
