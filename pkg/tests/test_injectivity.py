import numpy as np
import pytest

from braidlab.core import derived_solution
from braidlab.errors import CapExceeded
from braidlab.families import (commuting_pairs, compose, conjugate_solution_s3, flip,
                               permutation_solution)
from braidlab.injectivity import (_unresolved_pairs, affine_module_separate,
                                  build_m_module, injectivity_agrees_with_derived,
                                  injectivity_report, is_injective, is_injective_full,
                                  necessary_conditions, relation_rows)
from braidlab.linear import materialize
from braidlab.quotients import a0_quotient
from braidlab.sampling import random_linear

S3 = conjugate_solution_s3()


def test_necessary_conditions_examples():
    assert necessary_conditions(flip(3))
    assert necessary_conditions(S3)
    assert not necessary_conditions(permutation_solution((1, 0), (0, 1)))


def test_m_module_dimensions():
    assert build_m_module(flip(3)).dim == 3
    assert build_m_module(S3).dim == 18
    m = permutation_solution((1, 0), (0, 1))
    assert a0_quotient(m).group.order == 2
    assert build_m_module(m).dim == 4


def test_symmetric_lattice_is_zero():
    assert build_m_module(flip(3)).lattice.rank == 0


def test_relation_rows_shape():
    mod = build_m_module(S3)
    rows = relation_rows(S3, mod.group)
    assert rows
    for r in rows:
        vals = list(r.values()) if isinstance(r, dict) else list(r)
        assert all(-2 <= v <= 2 for v in vals)
        assert sum(vals) == 0


def test_injective_examples():
    assert is_injective(flip(4))
    assert is_injective(S3)
    assert injectivity_agrees_with_derived(S3)


def test_permutation_solutions_injective_iff_cb_identity():
    for n in (1, 2, 3, 4):
        for b, c in commuting_pairs(n):
            m = permutation_solution(b, c)
            want = compose(c, b) == tuple(range(n))
            assert is_injective(m) == want
            assert injectivity_agrees_with_derived(m)


def test_shortcuts_agree_with_full_lattice(census3):
    for m in census3:
        assert is_injective(m) == is_injective_full(m)
        if is_injective(m):
            assert necessary_conditions(m)


def test_shortcuts_agree_on_linear_tables():
    rng = np.random.default_rng(11)
    for m, k in [(2, 2), (3, 1), (4, 1), (2, 3), (5, 1)]:
        for _ in range(5):
            t = materialize(random_linear(m, k, rng))
            assert is_injective(t) == is_injective_full(t)


def test_separator_is_sound():
    # pairs equal in A_X (non-injective tables) must never be separated
    for m in (permutation_solution((1, 0), (0, 1)), permutation_solution((1, 2, 0), (0, 1, 2))):
        mod = build_m_module(m)
        for x in range(m.n):
            for y in range(x + 1, m.n):
                diff = {mod.basis_index(0, x): 1, mod.basis_index(0, y): -1}
                if diff in mod.lattice:
                    assert affine_module_separate(m, [(x, y)]) == [(x, y)]


def test_report_shape():
    rep = injectivity_report(permutation_solution((1, 0), (0, 1)))
    assert rep == {"injective": False, "necessary_only": True, "m_dim": None}
    rep = injectivity_report(S3)
    assert rep["injective"] and not rep["necessary_only"]
    assert rep["m_dim"] in (None, 18)


def test_unresolved_pairs_subset():
    pairs = _unresolved_pairs(S3)
    assert all(0 <= x < y < 3 for x, y in pairs)


def test_cap_enforced():
    with pytest.raises(CapExceeded):
        build_m_module(S3, cap=5)


def test_derived_of_census_agree(census3):
    for m in census3:
        assert is_injective(m) == is_injective(derived_solution(m))
