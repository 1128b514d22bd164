"""Aggregate reproduction run: catalog counts, identities, the dimension
formula instances and (in full mode) the degree-108 invariant."""

from __future__ import annotations

from .f2core import Monomial, WeightVector
from .fixtures import load_identities, load_monomials
from .hitproblem import (
    Phi0,
    Phi_plus,
    admissible_basis_weight,
    dimension_formula_check,
    mothebe_uys_lift,
    qp_dimension_by_weights,
)
from .invariants import P_WEIGHT, certify_identity_lhs, verify_counterexample, verify_lemma_identities
from .report import Report

__all__ = ["FORMULA_INSTANCES", "count_checks", "big_stratum_checks", "run"]

# (k, d, q) with the hypotheses of the dimension formula satisfied
FORMULA_INSTANCES = ((3, 2, 1), (4, 3, 1), (4, 3, 3))

W_SPIKE1 = WeightVector((4, 4, 4, 4, 1, 1))
W_SPIKE2 = WeightVector((4, 4, 4, 4, 3))
W_LIFT = WeightVector((3, 3, 3, 1, 1))


def _eq(rep: Report, name: str, got: int, want: int) -> None:
    rep.add(name, got == want, f"got={got} expected={want}", got=got, expected=want)


def count_checks() -> Report:
    """Counts that need at most the k=4 strata and the two small k=5 strata."""
    rep = Report("counts")
    b4 = admissible_basis_weight(4, P_WEIGHT)
    listed = load_monomials("b4_4442221.txt")
    _eq(rep, "dim_k4_w4442221", b4.dim, 56)
    rep.add("basis_k4_w4442221_matches_catalog", set(listed) == set(b4.monomials) and len(listed) == 56)
    for w, fixture, want in ((W_SPIKE1, "b4_444411.txt", 10), (W_SPIKE2, "b4_44443.txt", 4)):
        b = admissible_basis_weight(4, w)
        tag = "".join(map(str, w))
        _eq(rep, f"dim_k4_w{tag}", b.dim, want)
        rep.add(f"basis_k4_w{tag}_matches_catalog", set(load_monomials(fixture)) == set(b.monomials))
    d4 = qp_dimension_by_weights(4, 108)
    _eq(rep, "dim_k4_degree108", d4.total, 70)
    _eq(rep, "dim_k5_w444411", admissible_basis_weight(5, W_SPIKE1).dim, 310)
    _eq(rep, "dim_k5_w44443", admissible_basis_weight(5, W_SPIKE2).dim, 124)
    _eq(rep, "phi0_count", len(Phi0(b4.monomials, 5)), 280)
    _eq(rep, "phi_plus_count", len(Phi_plus(b4.monomials, 5)), 1403)
    lift_src = [m for m in admissible_basis_weight(4, W_LIFT).monomials if all(m)]
    _eq(rep, "all_variable_k4_w33311", len(lift_src), 66)
    lifted = {mothebe_uys_lift(x, i, 6) for x in lift_src for i in range(1, 6)}
    _eq(rep, "lift_count", len(lifted), 330)
    rep.add("lift_set_matches_catalog", lifted == set(load_monomials("b5plus_4442221_a.txt")))
    return rep


def big_stratum_checks() -> Report:
    """Checks on the 62,500-column stratum of weight (4,4,4,2,2,1) in five variables."""
    rep = Report("big-stratum")
    with rep.timed():
        b5 = admissible_basis_weight(5, P_WEIGHT)
    _eq(rep, "dim_k5_w4442221", b5.dim, 1737)
    plus = {m for m in b5.monomials if all(m)}
    _eq(rep, "all_variable_count", len(plus), 1457)
    listed = set(load_monomials("b5plus_4442221_a.txt")) | set(load_monomials("b5plus_4442221_b.txt"))
    extra = sorted(listed - plus, reverse=True)
    rep.add("all_variable_set_matches_catalog", not extra and listed == plus,
            f"catalog_only={len(extra)} computed_only={len(plus - listed)}"
            + (" " + " ".join(str(Monomial(m)) for m in extra[:5]) if extra else ""))
    b4 = admissible_basis_weight(4, P_WEIGHT)
    rest = plus - Phi_plus(b4.monomials, 5)
    c54 = set(load_monomials("c54.txt"))
    rep.add("complement_of_phi_matches_catalog", rest == c54,
            f"computed={len(rest)} catalog={len(c54)} catalog_only={len(c54 - rest)}")
    total = qp_dimension_by_weights(5, 108)
    _eq(rep, "dim_k5_degree108", total.total, 2171)
    return rep


def run(quick: bool = True) -> Report:
    rep = Report("verify" + ("-quick" if quick else "-full"))
    rep.extend(verify_lemma_identities())
    idents = load_identities()
    small = [i for i in idents if i.weight != P_WEIGHT]
    rep.extend(certify_identity_lhs(small if quick else idents))
    rep.extend(count_checks())
    for k, d, q in FORMULA_INSTANCES:
        r = dimension_formula_check(k, d, q)
        rep.add(f"dimension_formula_k{k}_d{d}_q{q}", r.formula_holds,
                f"n={r.n} dim={r.dim_k_n} rhs={((1 << k) - 1) * r.dim_k1_q} strict_hypotheses={r.strict_hypotheses}")
        rep.add(f"phi_image_k{k}_d{d}_q{q}", r.phi_matches, f"phi_size={r.phi_size}")
        rep.add(f"kameko_chain_k{k}_d{d}_q{q}", r.chain_constant, "dims=" + ",".join(map(str, r.kameko_chain)))
    if not quick:
        rep.extend(big_stratum_checks())
        rep.extend(verify_counterexample())
    return rep
