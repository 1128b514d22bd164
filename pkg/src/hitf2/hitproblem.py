"""Admissible bases of QP_k by degree and by weight, and the maps between them.

A monomial is inadmissible when it equals a hit polynomial plus strictly
smaller monomials.  With columns sorted in descending order and the lowest
set bit of a row taken as its pivot, the inadmissible monomials are exactly
the pivot columns of an echelon form of the hit generators, and the
admissible ones are the remaining columns.

For a weight ``w`` the quotient ``QP_k(w)`` only sees monomials of weight
``w``.  Columns are laid out as block A (weight above ``w``) followed by block
B (weight ``w``); lower weights are dropped because the quotient is taken
modulo them.  Eliminating A first leaves exactly the hit combinations with no
higher-weight terms.
"""

from __future__ import annotations

import itertools
import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import config
from .f2core import (
    Monomial,
    Polynomial,
    WeightVector,
    alpha,
    is_spike,
    linear_substitution,
    minimal_spike,
    monomials_of_degree,
    mu,
    sort_key,
    weight_vector,
)
from .f2linalg import (
    BudgetExceeded,
    CacheError,
    ColumnUniverse,
    EchelonBasis,
    bits_of,
    load_echelon,
    order_hash,
    save_echelon,
)
from .steenrod import sq_exponents, sq_sources

log = logging.getLogger(__name__)

__all__ = [
    "SCHEME_VERSION",
    "LARGE_COLUMNS",
    "AdmissibleBasis",
    "Reduction",
    "StratumMismatch",
    "DimensionBreakdown",
    "DimensionFormulaReport",
    "weight_vectors_of_degree",
    "monomials_of_weight",
    "admissible_basis_full",
    "admissible_basis_weight",
    "admissible_basis_degree",
    "qp_dimension_by_weights",
    "is_strictly_inadmissible",
    "singer_hit_filter",
    "kameko_up",
    "kameko_down",
    "n_pairs",
    "p_homomorphism",
    "theta",
    "j_complement",
    "phi",
    "Phi0",
    "Phi_plus",
    "Phi",
    "mothebe_uys_lift",
    "dimension_formula_hypotheses",
    "dimension_formula_check",
    "reduce_to_admissible",
    "strict_inadmissibility_prefilter",
    "load_strict_catalog",
    "clear_memo",
]

# Version of the generating set used for cached echelon forms: the squares
# Sq^{2^j} with 2^j <= n/2, columns ordered weight-then-exponent descending.
SCHEME_VERSION = 1
LARGE_COLUMNS = 1_000_000
PARALLEL_MIN_GENERATORS = 20_000


class StratumMismatch(ValueError):
    """A polynomial does not live in the degree or weight a basis describes."""


# --- weights and columns -------------------------------------------------------

def weight_vectors_of_degree(k: int, n: int) -> list[WeightVector]:
    """All weight vectors of degree ``n`` with entries in ``[0, k]``, ascending.

    Every such vector is realized (pick ``w_i`` variables at level ``i``), so
    the enumeration is exactly the set of weights of degree-``n`` monomials.
    """
    if k < 1:
        raise ValueError("k must be positive")
    out: list[WeightVector] = []

    def rec(i: int, rem: int, acc: list[int]) -> None:
        if rem == 0:
            out.append(WeightVector(acc))
            return
        for c in range(k + 1):
            if c << i > rem:
                break
            if (rem - (c << i)) % (1 << (i + 1)) == 0:
                acc.append(c)
                rec(i + 1, rem - (c << i), acc)
                acc.pop()

    rec(0, n, [])
    return sorted(set(out))


def monomials_of_weight(k: int, w: Sequence[int]) -> list[tuple[int, ...]]:
    """Exponent vectors of weight ``w`` in ``k`` variables, descending."""
    levels = [list(itertools.combinations(range(k), c)) for c in w]
    out = []
    for choice in itertools.product(*levels):
        e = [0] * k
        for i, s in enumerate(choice):
            for v in s:
                e[v] |= 1 << i
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


# --- bases ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Class of a polynomial in admissible coordinates.

    ``coordinates`` lists the admissible monomials whose sum represents the
    class.  ``certificate`` is ``f`` (with lower-weight terms removed when the
    basis is a weight stratum) plus those monomials; it lies in the span the
    basis quotients by.  ``lower`` collects the dropped lower-weight terms.
    """

    coordinates: tuple[Monomial, ...]
    certificate: Polynomial
    lower: Polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coordinates


@dataclass(eq=False)
class AdmissibleBasis:
    """Admissible monomials of a degree (``weight is None``) or of a weight stratum."""

    k: int
    degree: int
    weight: WeightVector | None
    monomials: tuple[Monomial, ...]
    provenance: str
    columns: ColumnUniverse
    echelon: EchelonBasis
    _pos: dict = field(init=False, repr=False)
    _col_to_pos: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._pos = {m: i for i, m in enumerate(self.monomials)}
        self._col_to_pos = {self.columns.index[m]: i for i, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def __contains__(self, m) -> bool:
        return tuple(m) in self._pos

    def position(self, m) -> int:
        return self._pos[tuple(m)]

    def _split(self, f: Polynomial) -> tuple[int, list]:
        if f.k != self.k:
            raise StratumMismatch(f"polynomial has {f.k} variables, basis has {self.k}")
        if f.degree is not None and f.degree != self.degree:
            raise StratumMismatch(f"polynomial has degree {f.degree}, basis has {self.degree}")
        row = 0
        lower = []
        idx = self.columns.index
        for m in f.terms:
            i = idx.get(m)
            if i is not None:
                row ^= 1 << i
                continue
            if self.weight is None:
                raise StratumMismatch(f"{m} is not a column of this basis")
            wm = weight_vector(m)
            if wm > self.weight:
                raise StratumMismatch(f"{m} has weight {tuple(wm)} above the stratum")
            lower.append(m)
        return row, lower

    def coordinate_bits(self, f: Polynomial) -> int:
        """Class of ``f`` as a bitset over ``self.monomials``."""
        row, _ = self._split(f)
        out = 0
        for c in bits_of(self.echelon.reduce(row)):
            out |= 1 << self._col_to_pos[c]
        return out

    def reduce(self, f: Polynomial) -> Reduction:
        row, lower = self._split(f)
        res = self.echelon.reduce(row)
        coords = tuple(sorted((self.columns[c] for c in bits_of(res)), key=sort_key, reverse=True))
        in_stratum = Polynomial(self.k, [m for m in f.terms if m in self.columns.index])
        cert = in_stratum + Polynomial(self.k, coords)
        return Reduction(coords, cert, Polynomial(self.k, lower))

    def is_zero_class(self, f: Polynomial) -> bool:
        row, _ = self._split(f)
        return self.echelon.contains(row)

    def polynomial(self, bits: int) -> Polynomial:
        """Sum of the admissible monomials selected by a coordinate bitset."""
        return Polynomial(self.k, [self.monomials[i] for i in bits_of(bits)])

    def is_inadmissible_column(self, m) -> bool:
        return self.columns.index[tuple(m)] in self.echelon.rows


def reduce_to_admissible(f: Polynomial, basis: AdmissibleBasis) -> Reduction:
    return basis.reduce(f)


def _zero_degree_basis(k: int, weight: WeightVector | None) -> AdmissibleBasis:
    one = Monomial.one(k)
    cols = ColumnUniverse([one])
    return AdmissibleBasis(k, 0, weight, (one,), "weight" if weight is not None else "full",
                           cols, EchelonBasis(1))


def admissible_basis_full(k: int, n: int, *, mem_budget: int | None = None) -> AdmissibleBasis:
    """Eliminate all hit generators over every monomial of degree ``n``."""
    if k < 1:
        raise ValueError("k must be positive")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return _zero_degree_basis(k, None)
    budget = config.current().mem_budget if mem_budget is None else mem_budget
    cols = sorted(monomials_of_degree(k, n), key=sort_key, reverse=True)
    if len(cols) > LARGE_COLUMNS:
        warnings.warn(f"full-degree elimination over {len(cols)} columns is large; "
                      "the weight-stratified path is much cheaper", stacklevel=2)
    uni = ColumnUniverse(Monomial(c) for c in cols)
    idx = uni.index
    eb = EchelonBasis(len(cols), full_reduction=False, mem_budget=budget)
    j = 0
    while (1 << j) <= n // 2:
        r = 1 << j
        for m in monomials_of_degree(k, n - r):
            row = 0
            for t in sq_exponents(r, m):
                row ^= 1 << idx[t]
            if row:
                eb.insert(row)
        j += 1
    adm = tuple(Monomial(cols[i]) for i in range(len(cols)) if i not in eb.rows)
    return AdmissibleBasis(k, n, None, adm, "full", uni, eb)


# --- weight strata --------------------------------------------------------------------

_memo: dict = {}


def clear_memo() -> None:
    _memo.clear()


def _max_square(n: int) -> int:
    """Largest ``j`` with ``2^j <= n/2`` (or -1)."""
    j = -1
    while (1 << (j + 1)) <= n // 2:
        j += 1
    return j


_worker_index: dict | None = None


def _worker_init(index: dict) -> None:
    global _worker_index
    _worker_index = index


def _rows_for(chunk: Sequence[tuple[int, tuple[int, ...]]]) -> list[int]:
    idx = _worker_index
    assert idx is not None
    out = []
    for j, m in chunk:
        r = 0
        for t in sq_exponents(1 << j, m):
            i = idx.get(t)
            if i is not None:
                r ^= 1 << i
        out.append(r)
    return out


def _stratum_rows(index: dict, targets: Iterable[tuple[int, ...]], max_j: int, threads: int) -> Iterator[int]:
    """Rows ``Sq^{2^j}(m)`` restricted to the given columns, for every ``m`` hitting a target."""
    sources: set = set()
    for t in targets:
        for j in range(max_j + 1):
            for m in sq_sources(t, 1 << j):
                sources.add((j, m))
    ordered = sorted(sources)
    del sources
    if threads <= 1 or len(ordered) < PARALLEL_MIN_GENERATORS:
        _worker_init(index)
        try:
            for r in _rows_for(ordered):
                if r:
                    yield r
        finally:
            _worker_init({})
        return
    size = max(1000, len(ordered) // (threads * 8))
    chunks = [ordered[i:i + size] for i in range(0, len(ordered), size)]
    with ProcessPoolExecutor(max_workers=threads, initializer=_worker_init, initargs=(index,)) as ex:
        for rows in ex.map(_rows_for, chunks):
            for r in rows:
                if r:
                    yield r


def _cache_file(cache_dir: Path, k: int, w: WeightVector, max_j: int) -> Path:
    tag = "-".join(map(str, w)) or "0"
    return cache_dir / f"qp_k{k}_n{w.degree}_w{tag}_j{max_j}_s{SCHEME_VERSION}.hitf2"


def _load_cached(path: Path, k: int, w: WeightVector, ohash: int, ncols: int) -> EchelonBasis | None:
    try:
        data = load_echelon(path)
    except FileNotFoundError:
        return None
    except CacheError as exc:
        log.warning("ignoring unusable cache file %s: %s", path, exc)
        return None
    if (data["k"], data["degree"], data["weight"], data["order_hash"]) != (k, w.degree, tuple(w), ohash):
        log.warning("cache file %s does not match the requested stratum; recomputing", path)
        return None
    eb = EchelonBasis(ncols, full_reduction=True)
    for support in data["rows"]:
        r = 0
        for i in support:
            r |= 1 << i
        eb.rows[support[0]] = r
    return eb


def _stratum_echelon(k: int, w: WeightVector, max_j: int, *, mem_budget: int, threads: int) -> tuple[list, EchelonBasis]:
    n = w.degree
    higher = [v for v in weight_vectors_of_degree(k, n) if v > w]
    higher.sort(reverse=True)
    block_a: list[tuple[int, ...]] = []
    for v in higher:
        block_a.extend(monomials_of_weight(k, v))
    block_b = monomials_of_weight(k, w)
    cut = len(block_a)
    index = {m: i for i, m in enumerate(block_a)}
    index.update({m: cut + i for i, m in enumerate(block_b)})
    eb = EchelonBasis(cut + len(block_b), full_reduction=False, mem_budget=mem_budget)
    for r in _stratum_rows(index, itertools.chain(block_a, block_b), max_j, threads):
        eb.insert(r)
    shifted = eb.shifted(cut)
    del eb
    return block_b, _finish_reduction(shifted, len(block_b))


def _finish_reduction(eb: EchelonBasis, ncols: int) -> EchelonBasis:
    """Reduced echelon form, with each row stored as pivot plus non-pivot support.

    Rows are processed from the highest pivot down.  Each finished row is kept
    as a bitset over non-pivot columns, so clearing a pivot bit costs one XOR
    with a short integer.
    """
    pivots = eb.rows
    npiv = [c for c in range(ncols) if c not in pivots]
    npos = {c: i for i, c in enumerate(npiv)}
    compact: dict[int, int] = {}
    for piv in sorted(pivots, reverse=True):
        acc = 0
        for b in bits_of(pivots[piv] >> (piv + 1)):
            c = b + piv + 1
            q = compact.get(c)
            if q is None:
                acc ^= 1 << npos[c]
            else:
                acc ^= q
        compact[piv] = acc
    out = EchelonBasis(ncols, full_reduction=True)
    for piv, acc in compact.items():
        r = 1 << piv
        for i in bits_of(acc):
            r |= 1 << npiv[i]
        out.rows[piv] = r
    return out


def admissible_basis_weight(k: int, w: Sequence[int], *, max_j: int | None = None,
                            cache_dir: Path | None | bool = True, mem_budget: int | None = None,
                            threads: int | None = None) -> AdmissibleBasis:
    """Admissible basis of ``QP_k(w)``.

    ``max_j`` restricts the generators to ``Sq^{2^j}`` with ``j <= max_j``;
    with ``max_j = len(w) - 1`` the pivot columns are the strictly
    inadmissible monomials of weight ``w``.  ``cache_dir=True`` uses the
    configured cache directory, ``None`` or ``False`` disables caching.
    """
    if k < 1:
        raise ValueError("k must be positive")
    w = WeightVector(w)
    if any(c > k for c in w):
        raise ValueError(f"weight {tuple(w)} is not realizable in {k} variables")
    n = w.degree
    if n == 0:
        return _zero_degree_basis(k, w)
    top = _max_square(n)
    max_j = top if max_j is None else min(max_j, top)
    key = (k, tuple(w), max_j)
    if key in _memo:
        return _memo[key]
    settings = config.current()
    budget = settings.mem_budget if mem_budget is None else mem_budget
    nthreads = settings.threads if threads is None else threads
    if cache_dir is True:
        cache_dir = settings.cache_dir
    elif cache_dir is False:
        cache_dir = None

    block_b = monomials_of_weight(k, w)
    ohash = order_hash(block_b)
    eb = None
    path = None
    if cache_dir is not None:
        path = _cache_file(Path(cache_dir), k, w, max_j)
        eb = _load_cached(path, k, w, ohash, len(block_b))
    if eb is None:
        if path is not None:
            from filelock import FileLock

            path.parent.mkdir(parents=True, exist_ok=True)
            with FileLock(str(path) + ".lock"):
                eb = _load_cached(path, k, w, ohash, len(block_b))
                if eb is None:
                    _, eb = _stratum_echelon(k, w, max_j, mem_budget=budget, threads=nthreads)
                    rows = [list(bits_of(eb.rows[p])) for p in sorted(eb.rows)]
                    save_echelon(path, k=k, degree=n, weight=tuple(w), ohash=ohash, rows=rows)
        else:
            _, eb = _stratum_echelon(k, w, max_j, mem_budget=budget, threads=nthreads)
    adm = tuple(Monomial(block_b[i]) for i in range(len(block_b)) if i not in eb.rows)
    basis = AdmissibleBasis(k, n, w, adm, "weight", ColumnUniverse(Monomial(m) for m in block_b), eb)
    _memo[key] = basis
    return basis


@dataclass(frozen=True)
class DimensionBreakdown:
    k: int
    degree: int
    total: int
    per_weight: dict
    singer_skipped: tuple

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "degree": self.degree,
            "total": self.total,
            "per_weight": {",".join(map(str, w)): d for w, d in self.per_weight.items()},
            "singer_skipped": [",".join(map(str, w)) for w in self.singer_skipped],
        }


def qp_dimension_by_weights(k: int, n: int, *, singer: bool = True, **kw) -> DimensionBreakdown:
    """``dim (QP_k)_n`` as a sum over weight strata.

    With ``singer`` on, weights below the weight of the minimal spike are
    skipped: every monomial of such a weight is hit, so the stratum is zero.
    """
    if k < 1:
        raise ValueError("k must be positive")
    weights = weight_vectors_of_degree(k, n)
    floor = weight_vector(minimal_spike(n, k)) if singer and mu(n) <= k else None
    per: dict = {}
    skipped = []
    for w in sorted(weights, reverse=True):
        if floor is not None and w < floor:
            skipped.append(w)
            continue
        per[w] = admissible_basis_weight(k, w, **kw).dim
    return DimensionBreakdown(k, n, sum(per.values()), per, tuple(skipped))


def admissible_basis_degree(k: int, n: int, **kw) -> list[Monomial]:
    """Union of the per-weight admissible bases (descending), skipping Singer-hit weights."""
    out: list[Monomial] = []
    floor = weight_vector(minimal_spike(n, k)) if mu(n) <= k else None
    for w in weight_vectors_of_degree(k, n):
        if floor is not None and w < floor:
            continue
        out.extend(admissible_basis_weight(k, w, **kw).monomials)
    out.sort(key=sort_key, reverse=True)
    return out


def is_strictly_inadmissible(m: Sequence[int], **kw) -> bool:
    """Decide strict inadmissibility by elimination with ``Sq^{2^j}``, ``j < len(weight)``."""
    m = Monomial(m)
    w = m.weight
    basis = admissible_basis_weight(m.k, w, max_j=len(w) - 1, **kw)
    return basis.is_inadmissible_column(m)


# --- Singer and Kameko ---------------------------------------------------------------

def singer_hit_filter(m: Sequence[int]) -> bool:
    """``True`` certifies ``m`` hit: its weight is below that of the minimal spike."""
    m = Monomial(m)
    n = m.degree
    if mu(n) > m.k:
        raise ValueError(f"mu({n}) = {mu(n)} exceeds k = {m.k}; the criterion does not apply")
    return m.weight < weight_vector(minimal_spike(n, m.k))


def _as_poly(f) -> Polynomial:
    return f if isinstance(f, Polynomial) else Polynomial.monomial(Monomial(f))


def kameko_up(f) -> Polynomial:
    """``f -> x_1 ... x_k f^2``."""
    f = _as_poly(f)
    return Polynomial(f.k, [tuple(2 * e + 1 for e in m) for m in f.terms])


def kameko_down(f) -> Polynomial:
    """Square root of ``m / (x_1 ... x_k)`` on all-odd monomials, zero on the rest."""
    f = _as_poly(f)
    return Polynomial(f.k, [tuple((e - 1) // 2 for e in m) for m in f.terms if all(e & 1 for e in m)])


# --- substitutions and the Phi construction ------------------------------------------

def n_pairs(k: int) -> list[tuple[int, tuple[int, ...]]]:
    """All ``(j; J)`` with ``1 <= j < h_1 < ... < h_s <= k`` and ``s < k``."""
    out = []
    for j in range(1, k + 1):
        rest = range(j + 1, k + 1)
        for s in range(0, k - j + 1):
            for J in itertools.combinations(rest, s):
                out.append((j, J))
    return out


def _check_pair(j: int, J: Sequence[int], k: int) -> None:
    if not 1 <= j <= k:
        raise ValueError(f"j = {j} out of range")
    prev = j
    for h in J:
        if not prev < h <= k:
            raise ValueError(f"J = {tuple(J)} must be strictly increasing and exceed j = {j}")
        prev = h


def p_homomorphism(j: int, J: Sequence[int], f: Polynomial) -> Polynomial:
    """``x_j -> sum_{u in J} x_{u-1}``, ``x_t -> x_t`` for ``t < j``, ``x_t -> x_{t-1}`` for ``t > j``."""
    k = f.k
    if k < 2:
        raise ValueError("the substitution needs at least two variables")
    _check_pair(j, J, k)
    images: list[tuple[int, ...]] = []
    for t in range(1, k + 1):
        if t < j:
            images.append((t - 1,))
        elif t == j:
            images.append(tuple(u - 2 for u in J))
        else:
            images.append((t - 2,))
    return linear_substitution(f, images, k - 1)


def theta(I: Sequence[int], f, k: int) -> Polynomial:
    """Rename ``x_v -> x_{I_v}``, embedding ``P_r`` into ``P_k``."""
    f = _as_poly(f)
    if len(I) != f.k:
        raise ValueError("I must have one entry per variable")
    if any(not 1 <= a <= k for a in I) or any(a >= b for a, b in zip(I, I[1:])):
        raise ValueError("I must be strictly increasing within [1, k]")
    out = []
    for m in f.terms:
        e = [0] * k
        for v, a in zip(I, m):
            e[v - 1] = a
        out.append(tuple(e))
    return Polynomial(k, out)


def j_complement(r: int, k: int) -> tuple[int, ...]:
    """``(1, ..., r-1, r+1, ..., k)``."""
    return tuple(i for i in range(1, k + 1) if i != r)


def _bit(x: int, i: int) -> int:
    return (x >> i) & 1 if i >= 0 else 0


def phi(j: int, J: Sequence[int], w: Sequence[int]) -> Monomial | None:
    """The monomial attached to a ``(k-1)``-variable monomial ``w`` by the pair ``(j; J)``.

    ``None`` stands for zero.  For ``s = len(J) > 0`` the result is
    ``x_j^{2^s - 1} theta(w) / x_(J,r)`` where ``r`` is the unique index with
    the first ``r - 1`` exponents at positions ``J`` equal to ``2^s - 1`` and
    the ``r``-th one larger, subject to the binary digit conditions that make
    the division exact.
    """
    w = tuple(w)
    k = len(w) + 1
    _check_pair(j, J, k)
    s = len(J)
    lifted = [0] * k
    for v, a in zip(j_complement(j, k), w):
        lifted[v - 1] = a
    if s == 0:
        return Monomial(lifted)
    full = (1 << s) - 1
    nus = [w[h - 2] for h in J]
    r = 0
    while r < s and nus[r] == full:
        r += 1
    if r == s or nus[r] <= full:
        return None
    r += 1  # 1-based position of the first exponent above 2^s - 1
    top = nus[r - 1]
    if not all(_bit(top, s - t) for t in range(1, r + 1)):
        return None
    if not all(_bit(nus[t - 1], s - t) for t in range(r + 1, s + 1)):
        return None
    lifted[j - 1] += full
    lifted[J[r - 1] - 1] -= sum(1 << (s - t) for t in range(1, r + 1))
    for t in range(r + 1, s + 1):
        lifted[J[t - 1] - 1] -= 1 << (s - t)
    return Monomial(lifted)


def Phi0(B: Iterable[Sequence[int]], k: int) -> set[Monomial]:
    out = set()
    for w in B:
        for j in range(1, k + 1):
            out.add(phi(j, (), w))
    return out


def Phi_plus(B: Iterable[Sequence[int]], k: int) -> set[Monomial]:
    """Images under pairs with ``0 < len(J) <= k-1``, keeping only monomials with every variable present."""
    B = list(B)
    out = set()
    for j, J in n_pairs(k):
        if not J:
            continue
        for w in B:
            m = phi(j, J, w)
            if m is not None and all(m):
                out.add(m)
    return out


def Phi(B: Iterable[Sequence[int]], k: int) -> set[Monomial]:
    B = list(B)
    return Phi0(B, k) | Phi_plus(B, k)


def mothebe_uys_lift(f: Sequence[int], r: int, h: int) -> Monomial:
    """``x_r^{2^h - 1} theta_{J_r}(f)`` for a monomial ``f`` in ``k - 1`` variables."""
    f = tuple(f)
    k = len(f) + 1
    if not 1 <= r <= k:
        raise ValueError("r out of range")
    e = list(f)
    e.insert(r - 1, (1 << h) - 1)
    return Monomial(e)


# --- dimension formula ----------------------------------------------------------------

@dataclass(frozen=True)
class DimensionFormulaReport:
    k: int
    d: int
    q: int
    n: int
    strict_hypotheses: bool
    dim_k_n: int
    dim_k1_q: int
    kameko_chain: tuple
    phi_matches: bool
    phi_size: int

    @property
    def formula_holds(self) -> bool:
        return self.dim_k_n == ((1 << self.k) - 1) * self.dim_k1_q

    @property
    def chain_constant(self) -> bool:
        return len(set(self.kameko_chain)) <= 1

    @property
    def ok(self) -> bool:
        return self.formula_holds and self.phi_matches and self.chain_constant


def dimension_formula_hypotheses(k: int, d: int, q: int) -> tuple[bool, bool]:
    """``(usable, strict)``: the conditions ``k-3 <= mu(q) <= k-2``, ``alpha(q + mu(q)) = mu(q)``,
    ``d >= k-1`` with ``d, q > 0``; ``strict`` additionally asks ``k - 3 >= 1``."""
    m = mu(q)
    usable = d > 0 and q > 0 and k >= 2 and k - 3 <= m <= k - 2 and alpha(q + m) == m and d >= k - 1
    return usable, usable and k - 3 >= 1


def dimension_formula_check(k: int, d: int, q: int) -> DimensionFormulaReport:
    """Compare ``dim (QP_k)_n`` with ``(2^k - 1) dim (QP_{k-1})_q`` and ``B_k(n)`` with ``Phi(B_{k-1}(n))``."""
    usable, strict = dimension_formula_hypotheses(k, d, q)
    if not usable:
        raise ValueError(f"(k, d, q) = ({k}, {d}, {q}) violates the dimension formula hypotheses")
    n = (k - 1) * ((1 << d) - 1) + q * (1 << d)
    big = admissible_basis_full(k, n)
    small_q = admissible_basis_full(k - 1, q)
    chain = tuple(admissible_basis_full(k - 1, (k - 1) * ((1 << (d - u)) - 1) + q * (1 << (d - u))).dim
                  for u in range(d + 1))
    prev = admissible_basis_full(k - 1, n)
    image = Phi(prev.monomials, k)
    return DimensionFormulaReport(k, d, q, n, strict, big.dim, small_q.dim, chain,
                                  image == set(big.monomials), len(image))


# --- catalog prefilter ------------------------------------------------------------------

@lru_cache(maxsize=None)
def load_strict_catalog() -> frozenset:
    from .fixtures import load_monomials

    return frozenset(tuple(m) for m in load_monomials("strict_catalog.txt"))


def strict_inadmissibility_prefilter(m: Sequence[int], catalog: Iterable | None = None) -> bool:
    """``True`` when ``m = u * c^{2^t} * v^{2^{t+s}}`` for a catalog entry ``c``.

    Here ``u`` has exponents below ``2^t`` and ``c`` has exponents below
    ``2^s``.  Inadmissibility of ``c`` then propagates to ``m``.  A ``False``
    answer carries no information; the prefilter only lets callers skip work.
    """
    cat = load_strict_catalog() if catalog is None else frozenset(tuple(c) for c in catalog)
    m = tuple(m)
    if not cat:
        return False
    k = len(m)
    top = max(m).bit_length()
    for t in range(top + 1):
        mid = tuple(x >> t for x in m)
        if mid in cat:
            return True
        for s in range(1, top - t + 1):
            mask = (1 << s) - 1
            c = tuple(x & mask for x in mid)
            if len(c) == k and c in cat:
                return True
    return False
