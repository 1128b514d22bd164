"""Brute-force reference implementations, written without the package's code paths."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from functools import lru_cache


def naive_sq(r: int, e: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Sq^r of a monomial by convolving binomials variable by variable (math.comb parities)."""
    acc = Counter({((), 0): 1})
    for a in e:
        nxt: Counter = Counter()
        for (pre, used), c in acc.items():
            for ri in range(0, r - used + 1):
                if math.comb(a, ri) % 2:
                    nxt[(pre + (a + ri,), used + ri)] += c
        acc = nxt
    out: Counter = Counter()
    for (pre, used), c in acc.items():
        if used == r:
            out[pre] += c
    return {t for t, c in out.items() if c % 2}


def naive_sq_poly(r: int, terms) -> set:
    out: set = set()
    for e in terms:
        out ^= naive_sq(r, tuple(e))
    return out


def naive_weight(e) -> tuple[int, ...]:
    top = max((x.bit_length() for x in e), default=0)
    w = [sum((x >> i) & 1 for x in e) for i in range(top)]
    while w and w[-1] == 0:
        w.pop()
    return tuple(w)


def naive_key(e):
    w = naive_weight(e)
    return (w + (0,) * (16 - len(w)), tuple(e))


def monomials(k: int, n: int):
    for c in itertools.combinations_with_replacement(range(k), n):
        e = [0] * k
        for i in c:
            e[i] += 1
        yield tuple(e)


def brute_admissible(k: int, n: int) -> set[tuple[int, ...]]:
    """Admissible monomials using every Sq^r, 0 < r <= n, as generators.

    Columns are listed ascending in the order; a set bit at a higher index is
    a larger monomial, and pivots are the highest set bits.
    """
    cols = sorted(set(monomials(k, n)), key=naive_key)
    idx = {m: i for i, m in enumerate(cols)}
    piv: dict[int, int] = {}
    for r in range(1, n + 1):
        for m in set(monomials(k, n - r)):
            row = 0
            for t in naive_sq(r, m):
                row ^= 1 << idx[t]
            while row:
                top = row.bit_length() - 1
                if top in piv:
                    row ^= piv[top]
                else:
                    piv[top] = row
                    break
    return {cols[i] for i in range(len(cols)) if i not in piv}


@lru_cache(maxsize=None)
def mu_brute(n: int) -> int:
    """Fewest parts of the form 2^t - 1 (t >= 1) summing to n, by dynamic programming."""
    parts = [(1 << t) - 1 for t in range(1, n.bit_length() + 2) if (1 << t) - 1 <= n]
    best = [0] + [math.inf] * n
    for x in range(1, n + 1):
        best[x] = min((best[x - p] + 1 for p in parts if p <= x), default=math.inf)
    return best[n]


def spikes(n: int, k: int):
    vals = [(1 << t) - 1 for t in range(0, n.bit_length() + 1) if (1 << t) - 1 <= n]
    for combo in itertools.product(vals, repeat=k):
        if sum(combo) == n:
            yield combo


def span_dim(rows) -> int:
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in piv:
                r ^= piv[top]
            else:
                piv[top] = r
                break
    return len(piv)
