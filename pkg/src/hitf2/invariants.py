"""Group actions on QP_k, invariant classes, the common kernel of the
substitution maps, and the end-to-end check of the degree-108 invariant."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .f2core import Monomial, Polynomial, WeightVector, linear_substitution, minimal_spike, mu, sort_key, weight_vector
from .f2linalg import kernel, transpose
from .fixtures import Identity, load_identities, load_polynomial
from .hitproblem import (
    AdmissibleBasis,
    admissible_basis_weight,
    is_strictly_inadmissible,
    n_pairs,
    p_homomorphism,
    singer_hit_filter,
)
from .report import Report
from .steenrod import sq_exponents

__all__ = [
    "rho_apply",
    "QuotientOperator",
    "quotient_operator",
    "invariant_space",
    "sf_tilde",
    "P_WEIGHT",
    "load_p",
    "verify_counterexample",
    "identity_residual",
    "verify_lemma_identities",
    "certify_identity_lhs",
]

P_WEIGHT = WeightVector((4, 4, 4, 2, 2, 1))
P_DEGREE = 108


def rho_apply(j: int, f: Polynomial) -> Polynomial:
    """``rho_j`` swaps ``x_j`` and ``x_{j+1}`` for ``j < k``; ``rho_k`` sends ``x_1`` to ``x_1 + x_2``."""
    k = f.k
    if not 1 <= j <= k:
        raise ValueError(f"rho_{j} is not defined for k = {k}")
    if j < k:
        images = [(i,) for i in range(k)]
        images[j - 1], images[j] = (j,), (j - 1,)
        return Polynomial(k, [tuple(m[images[i][0]] for i in range(k)) for m in f.terms])
    if k == 1:
        return f
    images = [(i,) for i in range(k)]
    images[0] = (0, 1)
    return linear_substitution(f, images, k)


@dataclass(frozen=True)
class QuotientOperator:
    """Matrix of an induced map in admissible coordinates, stored by columns."""

    source: AdmissibleBasis
    target: AdmissibleBasis | None
    columns: tuple[int, ...]

    def apply(self, v: int) -> int:
        out = 0
        i = 0
        while v:
            if v & 1:
                out ^= self.columns[i]
            v >>= 1
            i += 1
        return out


def quotient_operator(source: AdmissibleBasis, fn: Callable[[Polynomial], Polynomial],
                      target: AdmissibleBasis | None = None) -> QuotientOperator:
    """Columns are the classes of ``fn(b)`` for the admissible monomials ``b`` of ``source``.

    With ``target=None`` the map is an endomorphism of the source quotient.
    """
    tgt = source if target is None else target
    cols = tuple(tgt.coordinate_bits(fn(Polynomial.monomial(b))) for b in source.monomials)
    return QuotientOperator(source, target, cols)


def _common_kernel(columns_per_map: Sequence[Sequence[int]], widths: Sequence[int], dim: int) -> list[int]:
    """Vectors killed by every map, given column lists and target widths."""
    stacked = [0] * dim
    offset = 0
    for cols, width in zip(columns_per_map, widths):
        for b, c in enumerate(cols):
            stacked[b] |= c << offset
        offset += width
    rows = transpose(stacked, offset) if offset else []
    return kernel(rows, dim)


def invariant_space(k: int, basis: AdmissibleBasis, group: str = "GL") -> list[int]:
    """Basis (coordinate bitsets) of the classes fixed by ``GL_k`` or by the symmetric group."""
    if basis.k != k:
        raise ValueError("basis has the wrong number of variables")
    group = group.upper()
    if group == "GL":
        gens = range(1, k + 1)
    elif group in ("SIGMA", "S", "SYM"):
        gens = range(1, k)
    else:
        raise ValueError(f"unknown group {group!r}")
    dim = basis.dim
    maps = []
    for j in gens:
        op = quotient_operator(basis, lambda f, j=j: rho_apply(j, f))
        maps.append([c ^ (1 << b) for b, c in enumerate(op.columns)])
    return _common_kernel(maps, [dim] * len(maps), dim)


def sf_tilde(k: int, w: Sequence[int], *, source: AdmissibleBasis | None = None) -> list[int]:
    """Common kernel of the induced maps ``p_(j;J)`` from ``QP_k(w)`` to ``QP_{k-1}(w)``."""
    w = WeightVector(w)
    src = admissible_basis_weight(k, w) if source is None else source
    if k < 2:
        raise ValueError("the substitution maps need k >= 2")
    if any(c > k - 1 for c in w):
        # no monomial of weight w in k-1 variables: every image is of lower weight
        return [1 << i for i in range(src.dim)]
    tgt = admissible_basis_weight(k - 1, w)
    maps = []
    for j, J in n_pairs(k):
        op = quotient_operator(src, lambda f, j=j, J=J: p_homomorphism(j, J, f), tgt)
        maps.append(op.columns)
    return _common_kernel(maps, [tgt.dim] * len(maps), src.dim)


# --- the degree-108 check -----------------------------------------------------------------

def load_p() -> Polynomial:
    return load_polynomial("p.txt")


def verify_counterexample(p: Polynomial | None = None, *, basis: AdmissibleBasis | None = None,
                          include_sf: bool = True) -> Report:
    """Checks (a) through (e) for the candidate invariant, plus two diagnostics.

    (a) 60 terms of the expected weight; (b) each ``rho_i(p) + p`` is zero in
    ``QP_5(w)``; (c) the lower-weight part is hit by the minimal-spike
    criterion; (d) every term is admissible; (e) the common kernel of the
    substitution maps is spanned by the class of ``p``.  The diagnostics
    record whether the class of ``p`` is nonzero and lies in that kernel,
    which do not depend on (d).
    """
    rep = Report("counterexample")
    p = load_p() if p is None else p
    w = P_WEIGHT
    bad = [m for m in p.terms if weight_vector(m) != w]
    rep.add("a_terms_and_weight", len(p) == 60 and not bad and p.k == 5,
            f"terms={len(p)} off_weight={len(bad)}", terms=len(p), off_weight=len(bad))
    if bad:
        return rep
    with rep.timed():
        B = admissible_basis_weight(5, w) if basis is None else basis
    floor_ok = mu(P_DEGREE) <= 5 and weight_vector(minimal_spike(P_DEGREE, 5)) == w
    for i in range(1, 6):
        q = rho_apply(i, p) + p
        red = B.reduce(q)
        rep.add(f"b_rho{i}_fixes_class", red.is_zero, f"residual_terms={len(red.coordinates)}",
                residual=[list(m) for m in red.coordinates])
        certified = floor_ok and all(singer_hit_filter(m) for m in red.lower.terms)
        rep.add(f"c_rho{i}_lower_weight_hit", certified,
                f"lower_terms={len(red.lower)} mu={mu(P_DEGREE)} spike_weight_matches={floor_ok}")
    missing = sorted((m for m in p.terms if m not in B), key=sort_key, reverse=True)
    rep.add("d_terms_admissible", not missing, f"inadmissible_terms={len(missing)}"
            + (" " + " ".join("[" + ",".join(map(str, m)) + "]" for m in missing) if missing else ""),
            inadmissible=[list(m) for m in missing])
    pbits = B.coordinate_bits(p)
    rep.add("class_nonzero", pbits != 0, f"coordinates={bin(pbits).count('1')}")
    if include_sf:
        tgt = admissible_basis_weight(4, w)
        killed = all(tgt.is_zero_class(p_homomorphism(j, J, p)) for j, J in n_pairs(5))
        rep.add("class_in_common_kernel", killed, "all 31 substitution images vanish" if killed else "")
        ker = sf_tilde(5, w, source=B)
        rep.add("e_common_kernel_is_span_of_p", len(ker) == 1 and ker[0] == pbits and pbits != 0,
                f"dim={len(ker)}", dim=len(ker))
    return rep


# --- identities ------------------------------------------------------------------------------

def identity_residual(ident: Identity) -> list[Monomial]:
    """Terms of ``lhs + terms + sum Sq^r(arg)`` whose weight is not below the stated weight."""
    acc: set = {ident.lhs}
    for t in ident.terms:
        acc ^= {t}
    for r, a in ident.squares:
        acc.symmetric_difference_update(Monomial(t) for t in sq_exponents(r, a))
    out = [Monomial(m) for m in acc if not weight_vector(m) < ident.weight]
    return sorted(out, key=sort_key, reverse=True)


def verify_lemma_identities(identities: Iterable[Identity] | None = None, *,
                            source: str = "identities.txt") -> Report:
    rep = Report("identities")
    idents = load_identities(source) if identities is None else list(identities)
    for ident in idents:
        res = identity_residual(ident)
        degree_ok = all(t.degree == ident.lhs.degree for t in ident.terms)
        detail = f"residual_terms={len(res)}"
        if res:
            detail += " " + " ".join("[" + ",".join(map(str, m)) + "]" for m in res[:8])
        if not degree_ok:
            detail += " degree_mismatch"
        rep.add(f"identity_{ident.name}", not res and degree_ok, detail,
                residual=[list(m) for m in res])
    return rep


def certify_identity_lhs(identities: Iterable[Identity] | None = None) -> Report:
    """Check by elimination that each identity's left side is strictly inadmissible."""
    rep = Report("strict-inadmissibility")
    idents = load_identities() if identities is None else list(identities)
    for ident in idents:
        if ident.lhs.weight != ident.weight:
            rep.add(f"strict_{ident.name}", False, "lhs weight differs from the stated weight")
            continue
        ok = is_strictly_inadmissible(ident.lhs)
        rep.add(f"strict_{ident.name}", ok, "")
    return rep
