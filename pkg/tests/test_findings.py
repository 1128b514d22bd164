"""Computed values for the weight (4,4,4,2,2,1) stratum in five variables.

Criteria 5 and 7 in ``test_acceptance.py`` compare against the expected
numbers and fail; these tests pin what elimination produces instead, so a
change in either direction is noticed.  The inadmissibility of the one
disputed monomial and the hitness of ``p`` are certified independently in
``test_certificates.py``.
"""

from __future__ import annotations

import pytest

from hitf2.fixtures import load_monomials
from hitf2.hitproblem import Phi_plus, admissible_basis_weight, qp_dimension_by_weights
from hitf2.invariants import invariant_space, load_p

DISPUTED = (15, 15, 23, 17, 38)

pytestmark = pytest.mark.slow


def test_stratum_dimension(big_basis):
    assert big_basis.dim == 1736
    assert DISPUTED not in big_basis
    listed = set(load_monomials("b5plus_4442221_a.txt")) | set(load_monomials("b5plus_4442221_b.txt"))
    plus = {m for m in big_basis.monomials if all(m)}
    assert len(plus) == 1456 and listed - plus == {DISPUTED} and plus <= listed


def test_complement_and_total(big_basis):
    b4 = admissible_basis_weight(4, (4, 4, 4, 2, 2, 1))
    rest = {m for m in big_basis.monomials if all(m)} - Phi_plus(b4.monomials, 5)
    c54 = set(load_monomials("c54.txt"))
    assert len(rest) == 53 and rest <= c54 and c54 - rest == {DISPUTED}
    assert qp_dimension_by_weights(5, 108).total == 2170


def test_p_class_and_invariants(big_basis):
    assert big_basis.coordinate_bits(load_p()) == 0
    assert invariant_space(5, big_basis, "GL") == []
