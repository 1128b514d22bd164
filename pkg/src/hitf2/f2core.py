"""Monomials and polynomials over GF(2), weight vectors and the monomial order.

A monomial in ``k`` variables is stored as its exponent vector.  Polynomials
are finite sets of monomials (coefficients live in GF(2), so addition is the
symmetric difference of term sets).

The order used throughout the package compares weight vectors first and
exponent vectors second, both left-lexicographically.  Because weight vectors
are stored with trailing zeros trimmed, plain tuple comparison already agrees
with zero-padded comparison, so ``sort_key`` is just ``(weight, exponents)``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_VARS = 16
MAX_EXPONENT = (1 << 63) - 1

__all__ = [
    "Monomial",
    "Polynomial",
    "WeightVector",
    "ParseError",
    "weight_vector",
    "sort_key",
    "compare",
    "alpha",
    "mu",
    "minimal_spike",
    "is_spike",
    "monomials_of_degree",
    "linear_substitution",
    "parse_monomial",
    "parse_polynomial",
    "format_monomial",
    "format_polynomial",
]


class ParseError(ValueError):
    """Raised for malformed monomial or polynomial text; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class WeightVector(tuple):
    """Weight vector with trailing zeros trimmed.

    Entry ``i`` (0-based here) counts the variables whose exponent has bit
    ``i`` set.  Comparison is left-lexicographic with implicit zero padding,
    which for trimmed tuples coincides with ordinary tuple comparison.
    """

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        vals = [int(x) for x in entries]
        if any(x < 0 for x in vals):
            raise ValueError("weight vector entries must be nonnegative")
        while vals and vals[-1] == 0:
            vals.pop()
        return super().__new__(cls, vals)

    @property
    def degree(self) -> int:
        return sum(c << i for i, c in enumerate(self))

    @property
    def length(self) -> int:
        return len(self)

    def concat(self, other: Iterable[int]) -> "WeightVector":
        return WeightVector(tuple(self) + tuple(other))

    @classmethod
    def repeated(cls, a: int, s: int) -> "WeightVector":
        """The block ``(a)|^s``."""
        return cls((a,) * s)

    def __repr__(self) -> str:
        return "WeightVector(" + ",".join(map(str, self)) + ")"


def _weight(e: Sequence[int]) -> tuple[int, ...]:
    out = []
    i = 0
    live = [x for x in e if x]
    while live:
        out.append(sum(x & 1 for x in live))
        live = [x >> 1 for x in live if x >> 1]
        i += 1
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def sort_key(e: Sequence[int]) -> tuple:
    """Key realizing the monomial order: weight vector, then exponent vector."""
    return (_weight(e), tuple(e))


class Monomial(tuple):
    """Exponent vector of a monomial ``x_1^{e_1} ... x_k^{e_k}``.

    Equality and hashing are those of the underlying tuple.  The rich
    comparisons implement the weight-then-exponent order and refuse to compare
    monomials of different ``k`` or degree.
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        vals = tuple(int(x) for x in exponents)
        if not 1 <= len(vals) <= MAX_VARS:
            raise ValueError(f"monomials need between 1 and {MAX_VARS} variables, got {len(vals)}")
        for x in vals:
            if x < 0 or x > MAX_EXPONENT:
                raise ValueError(f"exponent {x} out of range")
        return super().__new__(cls, vals)

    @classmethod
    def one(cls, k: int) -> "Monomial":
        return cls((0,) * k)

    @property
    def k(self) -> int:
        return len(self)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def weight(self) -> WeightVector:
        return weight_vector(self)

    def nu(self, j: int) -> int:
        """Exponent of ``x_j`` (1-based)."""
        return self[j - 1]

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        if len(self) != len(other):
            raise ValueError("cannot multiply monomials in different numbers of variables")
        return Monomial(a + b for a, b in zip(self, other))

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(a * n for a in self)

    def _check(self, other) -> None:
        if not isinstance(other, Monomial):
            raise TypeError("can only compare monomials with monomials")
        if len(self) != len(other) or sum(self) != sum(other):
            raise ValueError("compared monomials must share k and degree")

    def __lt__(self, other):  # type: ignore[override]
        self._check(other)
        return sort_key(self) < sort_key(other)

    def __le__(self, other):  # type: ignore[override]
        self._check(other)
        return sort_key(self) <= sort_key(other)

    def __gt__(self, other):  # type: ignore[override]
        self._check(other)
        return sort_key(self) > sort_key(other)

    def __ge__(self, other):  # type: ignore[override]
        self._check(other)
        return sort_key(self) >= sort_key(other)

    def __eq__(self, other):
        return tuple.__eq__(self, other)

    def __ne__(self, other):
        return tuple.__ne__(self, other)

    __hash__ = tuple.__hash__

    def __repr__(self) -> str:
        return "Monomial(" + format_monomial(self) + ")"

    def __str__(self) -> str:
        return format_monomial(self)


def weight_vector(m: Sequence[int]) -> WeightVector:
    return WeightVector(_weight(m))


def compare(a: Monomial, b: Monomial) -> int:
    """Return -1, 0 or 1 according to the monomial order."""
    a = a if isinstance(a, Monomial) else Monomial(a)
    b = b if isinstance(b, Monomial) else Monomial(b)
    a._check(b)
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


def alpha(n: int) -> int:
    """Number of ones in the binary expansion of ``n``."""
    if n < 0:
        raise ValueError("alpha is defined for nonnegative integers")
    return n.bit_count()


def mu(n: int) -> int:
    """Least ``r`` such that ``n`` is a sum of ``r`` numbers of the form ``2^t - 1``."""
    if n < 0:
        raise ValueError("mu is defined for nonnegative integers")
    r = 0
    while alpha(n + r) > r:
        r += 1
    return r


def is_spike(m: Sequence[int]) -> bool:
    return all(((e + 1) & e) == 0 for e in m)


def minimal_spike(n: int, k: int) -> Monomial:
    """The minimal spike of degree ``n`` in ``k`` variables.

    Greedy: take the largest ``2^t - 1`` whose remainder is still a sum of at
    most the remaining number of such terms.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if mu(n) > k:
        raise ValueError(f"no spike of degree {n} in {k} variables (mu = {mu(n)})")
    exps: list[int] = []
    rem = n
    left = k
    while rem:
        t = (rem + 1).bit_length()
        while t > 0:
            part = (1 << t) - 1
            if part <= rem and mu(rem - part) <= left - 1:
                break
            t -= 1
        exps.append((1 << t) - 1)
        rem -= (1 << t) - 1
        left -= 1
    exps += [0] * (k - len(exps))
    return Monomial(exps)


def monomials_of_degree(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length ``k`` summing to ``n`` (left-lex descending)."""
    if k == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for rest in monomials_of_degree(k - 1, n - a):
            yield (a,) + rest


class Polynomial:
    """Homogeneous (or zero) polynomial over GF(2) in ``k`` variables."""

    __slots__ = ("k", "terms", "_degree")

    def __init__(self, k: int, terms: Iterable[Sequence[int]] = ()):
        if not 1 <= k <= MAX_VARS:
            raise ValueError(f"k must lie in [1, {MAX_VARS}]")
        acc: set = set()
        for t in terms:
            m = t if isinstance(t, Monomial) else Monomial(t)
            if len(m) != k:
                raise ValueError(f"term {tuple(m)} does not have {k} variables")
            acc ^= {m}
        degs = {sum(m) for m in acc}
        if len(degs) > 1:
            raise ValueError("polynomials are kept homogeneous")
        self.k = k
        self.terms = frozenset(acc)
        self._degree = degs.pop() if degs else None

    @classmethod
    def zero(cls, k: int) -> "Polynomial":
        return cls(k)

    @classmethod
    def monomial(cls, m: Sequence[int]) -> "Polynomial":
        return cls(len(m), [m])

    @classmethod
    def _raw(cls, k: int, terms: frozenset, degree) -> "Polynomial":
        p = object.__new__(cls)
        p.k = k
        p.terms = terms
        p._degree = degree
        return p

    @property
    def degree(self):
        """Common degree of the terms, ``None`` for the zero polynomial."""
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self.terms, key=sort_key, reverse=True))

    def __contains__(self, m) -> bool:
        return tuple(m) in self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.k, self.terms))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.k != other.k:
            raise ValueError("cannot add polynomials in different numbers of variables")
        terms = self.terms ^ other.terms
        if self._degree is not None and other._degree is not None and self._degree != other._degree and terms:
            raise ValueError("polynomials are kept homogeneous")
        deg = next(iter(terms)).degree if terms else None
        return Polynomial._raw(self.k, terms, deg)

    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.k != other.k:
            raise ValueError("cannot multiply polynomials in different numbers of variables")
        counts: Counter = Counter()
        for a in self.terms:
            for b in other.terms:
                counts[tuple(x + y for x, y in zip(a, b))] += 1
        return Polynomial(self.k, [t for t, c in counts.items() if c & 1])

    def square(self) -> "Polynomial":
        """Frobenius: over GF(2), ``f^2`` just doubles every exponent."""
        return Polynomial._raw(self.k, frozenset(Monomial(2 * x for x in m) for m in self.terms),
                               None if self._degree is None else 2 * self._degree)

    def leading(self) -> Monomial:
        return max(self.terms, key=sort_key)

    def __repr__(self) -> str:
        return f"Polynomial(k={self.k}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


@lru_cache(maxsize=None)
def _power_of_sum(a: int, targets: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Terms of ``(sum_{u in targets} x_u)^a`` as sparse (variable, exponent) lists.

    The multinomial coefficient is odd exactly when the bits of ``a`` are
    split among the summands, so each term assigns every set bit to one target.
    """
    if a == 0:
        return ((),)
    if not targets:
        return ()
    bits = [1 << i for i in range(a.bit_length()) if a >> i & 1]
    out = []
    for choice in itertools.product(targets, repeat=len(bits)):
        acc: dict[int, int] = {}
        for b, u in zip(bits, choice):
            acc[u] = acc.get(u, 0) | b
        out.append(tuple(sorted(acc.items())))
    return tuple(out)


def linear_substitution(f: Polynomial, images: Sequence[Sequence[int]], k_out: int) -> Polynomial:
    """Apply the algebra map ``x_i -> sum_{u in images[i]} x_u`` (0-based indices).

    ``images`` has one entry per source variable; an empty entry sends that
    variable to zero.
    """
    if len(images) != f.k:
        raise ValueError("one image per source variable is required")
    imgs = [tuple(sorted(set(s))) for s in images]
    for s in imgs:
        if any(not 0 <= u < k_out for u in s):
            raise ValueError("image variable out of range")
    counts: Counter = Counter()
    zero = (0,) * k_out
    for m in f.terms:
        partial = {zero: 1}
        for i, a in enumerate(m):
            if a == 0:
                continue
            pieces = _power_of_sum(a, imgs[i])
            nxt: Counter = Counter()
            for e, c in partial.items():
                for piece in pieces:
                    e2 = list(e)
                    for u, x in piece:
                        e2[u] += x
                    nxt[tuple(e2)] += c
            partial = {e: c & 1 for e, c in nxt.items() if c & 1}
            if not partial:
                break
        for e in partial:
            counts[e] += 1
    return Polynomial(k_out, [e for e, c in counts.items() if c & 1])


# --- text forms -----------------------------------------------------------

_BRACKET = re.compile(r"\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*")
_FACTOR = re.compile(r"\s*x_?\{?(\d+)\}?(?:\s*\^\s*\{?(\d+)\}?)?")


def _parse_monomial_at(text: str, start: int, end: int, k: int | None) -> tuple[int, ...] | None:
    chunk = text[start:end]
    if not chunk.strip():
        raise ParseError("empty term", start)
    m = _BRACKET.fullmatch(chunk)
    if m:
        exps = tuple(int(x) for x in re.split(r"\s*,\s*", m.group(1)))
        if k is not None and len(exps) != k:
            raise ParseError(f"expected {k} exponents, found {len(exps)}", start)
        return exps
    if chunk.strip() == "0":
        return None
    factors: dict[int, int] = {}
    pos = 0
    if chunk.strip() == "1":
        if k is None:
            raise ParseError("the constant 1 needs an explicit variable count", start)
        return (0,) * k
    while pos < len(chunk):
        if chunk[pos:].strip() == "":
            break
        fm = _FACTOR.match(chunk, pos)
        if not fm:
            raise ParseError("expected a factor like x3^5", start + pos + (len(chunk[pos:]) - len(chunk[pos:].lstrip())))
        var = int(fm.group(1))
        if var < 1:
            raise ParseError("variables are numbered from 1", start + pos)
        factors[var] = factors.get(var, 0) + (int(fm.group(2)) if fm.group(2) else 1)
        pos = fm.end()
    top = max(factors) if factors else 0
    kk = k if k is not None else top
    if top > kk:
        raise ParseError(f"variable x{top} exceeds k={kk}", start)
    if kk == 0:
        raise ParseError("cannot infer the variable count", start)
    return tuple(factors.get(i, 0) for i in range(1, kk + 1))


def parse_monomial(text: str, k: int | None = None) -> Monomial:
    """Parse ``x1^3x2^15...`` or ``[3,15,...]``."""
    e = _parse_monomial_at(text, 0, len(text), k)
    if e is None:
        raise ParseError("zero is not a monomial", 0)
    return Monomial(e)


def parse_polynomial(text: str, k: int | None = None) -> Polynomial:
    """Parse a ``+``-separated sum of monomials; repeated terms cancel."""
    spans = []
    start = 0
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "+" and depth == 0:
            spans.append((start, i))
            start = i + 1
    spans.append((start, len(text)))
    exps = [e for s, t in spans if (e := _parse_monomial_at(text, s, t, k)) is not None]
    if k is None:
        if not exps:
            raise ParseError("cannot infer the variable count of 0", 0)
        k = max(len(e) for e in exps)
    padded = [e + (0,) * (k - len(e)) for e in exps]
    return Polynomial(k, padded)


def format_monomial(m: Sequence[int], style: str = "bracket") -> str:
    if style == "bracket":
        return "[" + ",".join(str(x) for x in m) + "]"
    if style == "x":
        parts = [f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m, 1) if e]
        return "".join(parts) if parts else "1"
    raise ValueError(f"unknown style {style!r}")


def format_polynomial(f: Polynomial, style: str = "bracket") -> str:
    if not f.terms:
        return "0"
    return " + ".join(format_monomial(m, style) for m in f)
