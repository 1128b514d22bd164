"""One pass/fail test per acceptance criterion.

Tolerances are exact: every count is an integer compared with ``==`` and the
resource budget of the large stratum is two hours and 8 GiB peak RSS.
"""

from __future__ import annotations

import dataclasses
import itertools
import random

import pytest

from hitf2.f2core import Polynomial
from hitf2.f2linalg import intersect_with_suffix
from hitf2.fixtures import load_identities, load_monomials
from hitf2.hitproblem import (
    Phi0,
    Phi_plus,
    admissible_basis_degree,
    admissible_basis_full,
    admissible_basis_weight,
    dimension_formula_check,
    dimension_formula_hypotheses,
    qp_dimension_by_weights,
)
from hitf2.invariants import identity_residual, verify_counterexample, verify_lemma_identities
from hitf2.steenrod import adem_check, sq
from hitf2.verification import FORMULA_INSTANCES
from oracles import monomials, mu_brute

TIME_BUDGET_SECONDS = 2 * 3600
RSS_BUDGET_BYTES = 8 * 2**30

ADEM_PAIRS = [(a, b) for b in range(1, 17) for a in range(1, 2 * b)]


def random_poly(rng: random.Random, k: int, deg: int) -> Polynomial:
    terms = []
    for _ in range(rng.randint(1, 6)):
        cuts = sorted(rng.randint(0, deg) for _ in range(k - 1))
        pts = [0, *cuts, deg]
        terms.append(tuple(pts[i + 1] - pts[i] for i in range(k)))
    return Polynomial(k, terms)


def span(rows) -> set[int]:
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def test_criterion_1_steenrod_correctness():
    rng = random.Random(20261016)
    failures = []
    for i in range(1000):
        k = rng.randint(1, 4)
        df = rng.randint(0, 20)
        dg = rng.randint(0, 20 - df)
        f, g = random_poly(rng, k, df), random_poly(rng, k, dg)  # either may cancel to zero
        r = rng.randint(0, df + dg + 1)
        cartan = Polynomial.zero(k)
        for j in range(r + 1):
            cartan = cartan + sq(j, f) * sq(r - j, g)
        if sq(r, f * g) != cartan:
            failures.append(("cartan", i))
        if not sq(df + 1 + rng.randint(0, 5), f).is_zero():
            failures.append(("instability", i))
        if sq(df, f) != f.square():
            failures.append(("frobenius", i))
        a, b = ADEM_PAIRS[i % len(ADEM_PAIRS)]
        if not adem_check(a, b, f):
            failures.append(("adem", a, b, i))
    assert not failures, failures[:10]


def test_criterion_2_oracle_equivalence():
    cases = [(k, n) for k in (1, 2, 3) for n in range(25)] + [(4, n) for n in range(13)]
    mismatched = [(k, n) for k, n in cases
                  if set(admissible_basis_full(k, n).monomials) != set(admissible_basis_degree(k, n))
                  and n > 0]
    rng = random.Random(7)
    bad_intersections = []
    for trial in range(300):
        ncols = rng.randint(1, 12)
        rows = [rng.getrandbits(ncols) for _ in range(rng.randint(0, 12))]
        cut = rng.randint(0, ncols)
        got = span(intersect_with_suffix(rows, cut, ncols).rows.values())
        want = {v >> cut for v in span(rows) if v & ((1 << cut) - 1) == 0}
        if got != want:
            bad_intersections.append(trial)
    assert not mismatched and not bad_intersections, (mismatched, bad_intersections)


def test_criterion_3_vanishing():
    wrong = []
    for k in (1, 2, 3):
        for n in range(25):
            vanishes = admissible_basis_full(k, n).dim == 0
            if vanishes != (mu_brute(n) > k):
                wrong.append((k, n))
    assert not wrong


def test_criterion_4_dimension_counts():
    w = (4, 4, 4, 2, 2, 1)
    b4 = admissible_basis_weight(4, w)
    got = {
        "dim_k4": b4.dim,
        "basis_matches": set(b4.monomials) == set(load_monomials("b4_4442221.txt")),
        "dim_k5_444411": admissible_basis_weight(5, (4, 4, 4, 4, 1, 1)).dim,
        "dim_k5_44443": admissible_basis_weight(5, (4, 4, 4, 4, 3)).dim,
        "phi0": len(Phi0(b4.monomials, 5)),
        "phi_plus": len(Phi_plus(b4.monomials, 5)),
    }
    assert got == {"dim_k4": 56, "basis_matches": True, "dim_k5_444411": 310,
                   "dim_k5_44443": 124, "phi0": 280, "phi_plus": 1403}


def test_criterion_5_large_stratum(big_basis):
    b4 = admissible_basis_weight(4, (4, 4, 4, 2, 2, 1))
    plus = {m for m in big_basis.monomials if all(m)}
    listed = set(load_monomials("b5plus_4442221_a.txt")) | set(load_monomials("b5plus_4442221_b.txt"))
    rest = plus - Phi_plus(b4.monomials, 5)
    got = {
        "columns": len(big_basis.columns),
        "dim": big_basis.dim,
        "all_variable": len(plus),
        "all_variable_matches_catalog": plus == listed,
        "complement_matches_table": rest == set(load_monomials("c54.txt")),
        "total_degree_108": qp_dimension_by_weights(5, 108).total,
        "within_time": big_basis.build_seconds <= TIME_BUDGET_SECONDS,
        "within_memory": big_basis.peak_rss <= RSS_BUDGET_BYTES,
    }
    assert got == {"columns": 62500, "dim": 1737, "all_variable": 1457,
                   "all_variable_matches_catalog": True, "complement_matches_table": True,
                   "total_degree_108": 2171, "within_time": True, "within_memory": True}


def test_criterion_6_identities():
    rep = verify_lemma_identities()
    surviving_mutants = []
    for ident in load_identities():
        for t in range(len(ident.squares)):
            mutant = dataclasses.replace(ident, squares=ident.squares[:t] + ident.squares[t + 1:])
            if not identity_residual(mutant):
                surviving_mutants.append((ident.name, t))
    assert rep.ok and not surviving_mutants, ([c.line() for c in rep.failed()], surviving_mutants)


def test_criterion_7_counterexample(big_basis):
    rep = verify_counterexample(basis=big_basis)
    assert rep.ok, "\n".join(c.line() for c in rep.failed())


def test_criterion_8_dimension_formula():
    results = []
    for k, d, q in FORMULA_INSTANCES:
        usable, _ = dimension_formula_hypotheses(k, d, q)
        r = dimension_formula_check(k, d, q)
        results.append((k, d, q, usable, r.formula_holds, r.phi_matches))
    assert len(results) >= 2
    assert all(all(x[3:]) for x in results), results
