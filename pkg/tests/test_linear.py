import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from braidlab.core import (check_braided, check_involutive, check_nondegenerate, phi_table,
                           validate_bijection)
from braidlab.errors import (BadPerturbation, ConstraintViolation, InvariantViolation,
                             NotASolution, TooLarge)
from braidlab.families import flip
from braidlab.injectivity import is_injective, necessary_conditions
from braidlab.linear import (AffineSolution, LinearSolution, QuadrupleABDS, TriplePQZ,
                             abd_from_pqz, affine_extend, affine_relations, breve_solution,
                             check_linear_relations, element_vectors, hat_solution,
                             injective_from_pqz, is_injective_affine, is_injective_linear,
                             kvec_of, linear_relations, materialize, phi_closed_form,
                             pqz_from_abd, quadruple_to_solution, s_of,
                             solution_to_quadruple)
from braidlab.modmat import ModMatrix
from braidlab.sampling import (diagonal_pqz, ess_nilpotent, ess_perturbed, flip_linear,
                               kvec_candidates, perturb, random_affine, random_invertible,
                               random_linear, random_quadruple, square_zero_pair,
                               swap_type, z_equals_p, z_equals_q)


def M(rows, m):
    return ModMatrix(rows, m)


def same_table(sol):
    """materialize agrees with the independent dict construction."""
    lin = sol.linear if isinstance(sol, AffineSolution) else sol
    z = tuple(sol.zvec.tolist()) if isinstance(sol, AffineSolution) else None
    t = tuple(sol.tvec.tolist()) if isinstance(sol, AffineSolution) else None
    ref = oracles.linear_table(*(x.tolist() for x in lin.matrices), lin.m, lin.k, z, t)
    return oracles.table_of(materialize(sol)) == ref


# -- relations and the defect ------------------------------------------------------

def test_flip_relations():
    l = flip_linear(5, 2)
    assert check_linear_relations(*l.matrices)
    assert s_of(l).is_zero() and is_injective_linear(l)


def test_swap_type_commuting_is_solution():
    b = M([[1, 1], [0, 1]], 5)
    c = M([[2, 3], [0, 2]], 5)
    l = swap_type(b, c)
    assert check_linear_relations(*l.matrices)
    assert s_of(l) == b @ c - 1
    assert not is_injective_linear(l)


def test_swap_type_noncommuting_fails():
    b = M([[1, 1], [0, 1]], 5)
    c = M([[1, 0], [1, 1]], 5)
    zero = ModMatrix.zero(2, 5)
    assert not check_linear_relations(zero, c, b, zero)
    with pytest.raises(NotASolution):
        LinearSolution(zero, c, b, zero)


def test_hat_of_swap_type():
    b = M([[3]], 7)
    c = M([[5]], 7)
    l = swap_type(b, c)
    h = hat_solution(l)
    assert h.a == 0 and h.b == c and h.c == b
    assert h.d == 1 - b @ c
    assert is_injective_linear(h)
    assert same_table(h) and is_injective(materialize(h))


def test_quadruple_flip():
    z, one = ModMatrix.zero(2, 3), ModMatrix.identity(2, 3)
    assert quadruple_to_solution(QuadrupleABDS(z, one, z, z)) == flip_linear(3, 2)


def test_quadruple_violation_named():
    z, one = ModMatrix.zero(1, 4), ModMatrix.identity(1, 4)
    q = QuadrupleABDS(z, one * 2, z, z)
    assert q.violations() == ["b not invertible"]
    with pytest.raises(InvariantViolation):
        quadruple_to_solution(q)


# -- ESS nilpotent family ------------------------------------------------------------

@pytest.mark.parametrize("m,k", [(5, 2), (5, 3), (7, 2)])
def test_ess_family(m, k):
    base, s, pert = ess_perturbed(m, k, 2)
    assert check_linear_relations(*base.matrices)
    assert check_involutive(materialize(base))
    assert is_injective_linear(base)
    assert s_of(pert) == s and not s.is_zero()
    assert hat_solution(pert) == base
    assert breve_solution(base, s) == pert
    t = materialize(pert)
    assert check_braided(t) and check_nondegenerate(t)
    assert not check_involutive(t) and not is_injective(t)


def test_breve_zero_is_identity():
    base = ess_nilpotent(5, 2)
    assert breve_solution(base, ModMatrix.zero(2, 5)) == base


def test_breve_rejects_noncommuting():
    l = flip_linear(4, 2)
    s = M([[0, 1], [0, 0]], 4)
    b = M([[1, 0], [1, 1]], 4)
    l2 = LinearSolution(l.a, b, b.inverse(), l.d)
    assert is_injective_linear(l2)
    with pytest.raises(BadPerturbation, match="sb=bs"):
        breve_solution(l2, s)


def test_breve_needs_injective():
    l = swap_type(M([[2]], 5), M([[1]], 5))
    with pytest.raises(BadPerturbation):
        breve_solution(l, ModMatrix.zero(1, 5))


def test_breve_quadruple():
    base, s, pert = ess_perturbed(5, 2, 1)
    q = solution_to_quadruple(pert)
    assert (q.a, q.b, q.d, q.s) == (base.a, base.b, base.d + s, s)


# -- (p, q, zauto) coordinates --------------------------------------------------------

def test_z_equals_p_formula():
    p, q = M([[2]], 5), M([[3]], 5)
    l = injective_from_pqz(z_equals_p(p, q))
    assert l == LinearSolution(M([[0]], 5), M([[3]], 5), M([[3]], 5), M([[2]], 5))
    t = materialize(l)
    assert validate_bijection(t) and check_braided(t) and check_nondegenerate(t)
    assert is_injective(t) and same_table(l)


def test_z_equals_p_general():
    rng = np.random.default_rng(4)
    for _ in range(10):
        p = random_invertible(2, 7, rng)
        q = p @ p + p * 3
        if not q.is_invertible():
            continue
        l = injective_from_pqz(z_equals_p(p, q))
        pinv = p.inverse()
        assert (l.a, l.b, l.c, l.d) == (0, pinv, q, 1 - pinv @ q)
        l = injective_from_pqz(z_equals_q(p, q))
        assert (l.a, l.b, l.c, l.d) == (1 - q @ pinv, pinv, q, 0)
        # (py + (1 - q^-1 p)x, q^-1 x) is the same family at (p^-1, q^-1)
        qinv = q.inverse()
        l = injective_from_pqz(z_equals_q(pinv, qinv))
        assert (l.a, l.b, l.c, l.d) == (1 - qinv @ p, p, qinv, 0)


def test_square_zero_commuting_formula():
    m = 4
    e1 = M([[0, 2], [0, 0]], m)
    e2 = M([[2, 1], [0, 2]], m)
    assert (e1 @ e1).is_zero() and (e2 @ e2).is_zero() and e1.commutes(e2)
    l = injective_from_pqz(square_zero_pair(e1, e2))
    assert l.a == e1 - e2 + e2 @ e1
    assert l.b == 1 - e1 and l.c == 1 - e1
    assert l.d == e1 + e2 - e2 @ e1


def test_square_zero_noncommuting_formulas():
    m = 3
    e1 = M([[0, 1], [0, 0]], m)
    e2 = M([[0, 0], [1, 0]], m)
    l = injective_from_pqz(square_zero_pair(e1, e2))
    assert l.a == e1 - e2 + e2 @ e1 and l.b == 1 - e1
    assert l.d == 1 - (1 + e1) @ (1 - e2) @ (1 - e1 * 2)
    assert l.c == (1 + e1) @ (1 - e2) @ (1 - e1) @ (1 + e2) @ (1 - e1)


def test_unitary_gives_p_equals_q():
    base = ess_nilpotent(5, 3)
    assert (1 - base.a) @ (1 - base.d) == 1
    t = pqz_from_abd(base.a, base.b, base.d)
    assert t.p == t.q


@pytest.mark.parametrize("m", [5, 7, 11])
def test_diagonal_example(m):
    rng = np.random.default_rng(m)
    for k in (1, 2):
        while True:
            eig = rng.choice(np.arange(1, m), 2 * k, replace=False)
            if len(set(eig.tolist())) == 2 * k:
                break
        t = diagonal_pqz(eig[:k].tolist(), eig[k:].tolist(), rng.integers(0, 2, k), m)
        assert not t.violations()
        l = injective_from_pqz(t)
        tab = materialize(l)
        assert check_braided(tab) and check_nondegenerate(tab) and is_injective(tab)


def test_pqz_violation():
    one = ModMatrix.identity(1, 5)
    with pytest.raises(InvariantViolation):
        abd_from_pqz(TriplePQZ(one, one * 2, one * 3))


# -- phi -------------------------------------------------------------------------------

def test_phi_closed_form_small():
    assert phi_closed_form(flip_linear(3)) == (0, 1)
    b, c = M([[2]], 5), M([[4]], 5)
    assert phi_closed_form(swap_type(b, c)) == (0, b @ c)


def phi_agrees(l):
    cz, cy = phi_closed_form(l)
    vecs = element_vectors(l.m, l.k)
    phi = phi_table(materialize(l))
    n = len(vecs)
    # expected[y, x] = cz x + cy y
    exp = ((cz @ vecs)[None, :, :] + (cy @ vecs)[:, None, :]) % l.m
    got = vecs[phi.reshape(-1)].reshape(n, n, l.k)
    return np.array_equal(exp, got)


def test_phi_closed_form_random():
    rng = np.random.default_rng(8)
    for m, k in [(2, 2), (3, 2), (4, 1), (5, 2), (2, 3)]:
        for _ in range(5):
            assert phi_agrees(random_linear(m, k, rng))


# -- affine -----------------------------------------------------------------------------

def test_affine_zero_is_linear():
    l = ess_nilpotent(5, 2)
    aff = affine_extend(l, [0, 0], [0, 0])
    assert not aff.zvec.any() and not aff.tvec.any()
    assert materialize(aff) == materialize(l)


def test_affine_injective_correspondence():
    l = ess_nilpotent(5, 2)
    for z in ([1, 0], [2, 3]):
        aff = affine_extend(l, z, [0, 0])
        assert np.array_equal(aff.tvec, (-(l.c @ (1 - l.a).inverse()) @ np.array(z)) % 5)
        assert all(affine_relations(aff).values())
        assert is_injective_affine(aff)
        tab = materialize(aff)
        assert check_braided(tab) and is_injective(tab) and same_table(aff)


def nonzero_kvec_instance():
    rng = np.random.default_rng(0)
    for _ in range(500):
        l = random_linear(int(rng.integers(2, 6)), int(rng.integers(1, 3)), rng)
        z = rng.integers(0, l.m, l.k)
        ks = [kv for kv in kvec_candidates(l, z) if kv.any()]
        if ks:
            return affine_extend(l, z, ks[0])
    raise AssertionError("no instance with nonzero kvec found")


def test_affine_nonzero_kvec_not_injective():
    aff = nonzero_kvec_instance()
    assert kvec_of(aff).any()
    assert all(affine_relations(aff).values())
    assert not is_injective_affine(aff)
    tab = materialize(aff)
    assert check_braided(tab) and check_nondegenerate(tab)
    assert not necessary_conditions(tab) and not is_injective(tab)


def test_affine_flip_accepts_any_translation():
    l = flip_linear(5, 1)
    aff = affine_extend(l, [2], [1])
    assert np.array_equal(aff.tvec, [4]) and not is_injective_affine(aff)


def test_affine_constraint_errors():
    # b = 2, c = 1, s = bc - 1 = 1, so (b - 1)k = s z forces k = z
    l = swap_type(M([[1]], 5), M([[2]], 5))
    with pytest.raises(ConstraintViolation):
        affine_extend(l, [0], [1])
    assert affine_extend(l, [1], [1]).tvec.tolist() == [0]


def test_affine_bad_translation_rejected():
    l = swap_type(M([[1]], 5), M([[2]], 5))
    with pytest.raises(NotASolution):
        AffineSolution(l, [1], [1])


# -- materialize ------------------------------------------------------------------------

def test_materialize_flip():
    assert materialize(flip_linear(2)) == flip(2)


def test_materialize_cap():
    with pytest.raises(TooLarge):
        materialize(flip_linear(5, 3), cap=100)


# -- random instances (properties) --------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)
rings = st.sampled_from([(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (5, 2)])


@settings(max_examples=60, deadline=None)
@given(rings, seeds)
def test_random_quadruple_round_trip(ring, seed):
    rng = np.random.default_rng(seed)
    q = random_quadruple(*ring, rng)
    assert q.is_valid()
    l = quadruple_to_solution(q)
    assert all(linear_relations(*l.matrices).values())
    assert solution_to_quadruple(l) == q
    assert is_injective_linear(hat_solution(l))
    if is_injective_linear(l):
        t = pqz_from_abd(l.a, l.b, l.d)
        assert abd_from_pqz(t) == (l.a, l.b, l.d)


@settings(max_examples=40, deadline=None)
@given(rings, seeds)
def test_materialize_matches_relations(ring, seed):
    rng = np.random.default_rng(seed)
    l = random_linear(*ring, rng)
    cand = perturb(l, rng) if rng.random() < 0.5 else l
    tab = materialize(cand)
    assert same_table(cand)
    set_level = validate_bijection(tab) and check_nondegenerate(tab) and check_braided(tab)
    assert set_level == check_linear_relations(*cand.matrices)


@settings(max_examples=30, deadline=None)
@given(rings, seeds)
def test_injectivity_agrees_with_set_level(ring, seed):
    rng = np.random.default_rng(seed)
    l = random_linear(*ring, rng)
    assert is_injective_linear(l) == is_injective(materialize(l))
    aff = random_affine(l, rng)
    assert all(affine_relations(aff).values())
    assert is_injective_affine(aff) == is_injective(materialize(aff))
