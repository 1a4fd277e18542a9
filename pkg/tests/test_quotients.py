import numpy as np
import pytest

import oracles
from braidlab.core import action_tables, check_involutive
from braidlab.errors import CapExceeded, NotBraided
from braidlab.families import (all_perms, commuting_pairs, compose, conjugate_solution_s3,
                               flip, invert, permutation_solution)
from braidlab.quotients import (PermGroup, a0_quotient, equivalence_classes, g_quotient,
                                quotient_report, rank, rank_equality_is_symmetric)

S3 = conjugate_solution_s3()


def cycle_count(p):
    seen, count = set(), 0
    for i in range(len(p)):
        if i not in seen:
            count += 1
            while i not in seen:
                seen.add(i)
                i = p[i]
    return count


def test_perm_group_closure_against_oracle():
    rng = np.random.default_rng(3)
    for _ in range(30):
        deg = int(rng.integers(1, 7))
        gens = [tuple(rng.permutation(deg)) for _ in range(int(rng.integers(1, 3)))]
        g = PermGroup(deg, gens)
        assert g.order == oracles.perm_group_order(gens)
        assert tuple(g.identity) == tuple(range(deg))
        elems = {tuple(e) for e in g.elements}
        for a in elems:
            assert oracles.perm_inv(a) in elems
            for b in list(elems)[:5]:
                assert oracles.perm_mul(a, b) in elems


def test_perm_group_cap():
    with pytest.raises(CapExceeded):
        PermGroup(6, [(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)], cap=100)


def test_flip_quotients_trivial():
    assert g_quotient(flip(4)).group.order == 1
    assert a0_quotient(flip(4)).group.order == 1


def test_conjugate_quotients():
    at = action_tables(S3)
    gens = [tuple(at.circ[x]) + tuple(v + 3 for v in at.star[x]) for x in range(3)]
    assert g_quotient(S3).group.order == oracles.perm_group_order(gens)
    assert a0_quotient(S3).group.order == 6


def test_permutation_solution_quotients():
    for n in (2, 3, 4):
        for b, c in commuting_pairs(n):
            m = permutation_solution(b, c)
            pair = tuple(b) + tuple(v + n for v in invert(c))
            assert g_quotient(m).group.order == oracles.perm_group_order([pair])
            assert a0_quotient(m).group.order == oracles.perm_group_order([compose(b, c)])


def test_rank_examples():
    assert rank(flip(5)) == 5
    assert rank(S3) == 1
    assert equivalence_classes(S3) == [[0, 1, 2]]
    for n in (2, 3, 4):
        for b, c in commuting_pairs(n):
            assert rank(permutation_solution(b, c)) == cycle_count(compose(b, c))


def test_rank_single_cycle():
    b = (1, 2, 3, 0)
    m = permutation_solution(b, tuple(range(4)))
    assert rank(m) == 1 and not check_involutive(m)
    assert rank_equality_is_symmetric(m)


def test_classes_match_oracle(census3):
    for m in census3:
        got = [tuple(c) for c in equivalence_classes(m)]
        assert got == oracles.classes(oracles.table_of(m), m.n)
        assert rank(m) <= m.n
        assert rank_equality_is_symmetric(m)


def test_requires_braided():
    with pytest.raises(NotBraided):
        rank(permutation_solution((1, 0, 2), (0, 2, 1)))


def test_report_keys():
    rep = quotient_report(S3)
    assert rep == {"rank": 1, "g_quotient_order": g_quotient(S3).group.order,
                   "a0_order": 6, "classes": [[0, 1, 2]]}


def test_all_perms_count():
    assert len(all_perms(4)) == 24
