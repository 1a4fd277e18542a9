"""Named linear families and a random generator of valid quadruples.

Random instances are built directly in (p, q, zauto) coordinates, where the
constraints are easy to meet block by block, then converted to (a, b, d).
A defect s is chosen among matrices that commute with the block and kill
a and d, and everything is conjugated by a random invertible matrix.
"""

from itertools import product

import numpy as np

from .linear import (LinearSolution, QuadrupleABDS, TriplePQZ, abd_from_pqz,
                     affine_extend, element_vectors, quadruple_to_solution, s_of)
from .modmat import ModMatrix, block_diag


def flip_linear(m, k=1):
    one, zero = ModMatrix.identity(k, m), ModMatrix.zero(k, m)
    return LinearSolution(zero, one, one, zero)


def swap_type(b, c):
    """S(x, y) = (c y, b x) for commuting automorphisms b, c."""
    zero = ModMatrix.zero(b.k, b.m)
    return LinearSolution(zero, c, b, zero)


def z_equals_p(p, q):
    """zauto = p: S(x, y) = (p^-1 y, q x + (1 - p^-1 q) y)."""
    return TriplePQZ(p, q, p)


def z_equals_q(p, q):
    return TriplePQZ(p, q, q)


def square_zero_pair(e1, e2):
    """p = 1 + e1, q = 1 - e1, zauto = 1 + e2 for e1^2 = e2^2 = 0."""
    return TriplePQZ(1 + e1, 1 - e1, 1 + e2)


def diagonal_pqz(p_diag, q_diag, use_p, m):
    """Diagonal p, q and zauto_i = p_i if use_p[i] else q_i."""
    z_diag = [pi if up else qi for pi, qi, up in zip(p_diag, q_diag, use_p)]
    return TriplePQZ(ModMatrix(np.diag(p_diag), m), ModMatrix(np.diag(q_diag), m),
                     ModMatrix(np.diag(z_diag), m))


def shift(k, m):
    """The nilpotent shift e_i -> e_{i-1}, so shift^k = 0."""
    return ModMatrix(np.eye(k, k, 1, dtype=np.int64), m)


def ess_nilpotent(m, k, a=None):
    """Symmetric solution with nilpotent a:
    bab^-1 = a(1+a)^-1, c = b^-1(1-a^2), d = a(a-1)^-1.

    b is found by search over upper triangular matrices.
    """
    a = shift(k, m) if a is None else a
    target = a @ (1 + a).inverse()
    b = None
    units = [u for u in range(1, m) if np.gcd(u, m) == 1]
    upper = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for diag in product(units, repeat=k):
        for off in product(range(m), repeat=len(upper)):
            mat = np.diag(diag).astype(np.int64)
            for (i, j), v in zip(upper, off):
                mat[i, j] = v
            cand = ModMatrix(mat, m)
            if cand @ a == target @ cand:
                b = cand
                break
        if b is not None:
            break
    if b is None:
        raise ValueError("no triangular conjugator found")
    c = b.inverse() @ (1 - a @ a)
    d = a @ (a - 1).inverse()
    return LinearSolution(a, b, c, d)


def nilpotent_index(a):
    n = 1
    p = a
    while not p.is_zero():
        p = p @ a
        n += 1
        if n > a.k + 1:
            raise ValueError("matrix is not nilpotent")
    return n


def ess_perturbed(m, k, mu):
    """d replaced by d + mu a^(n-1), where a^n = 0."""
    base = ess_nilpotent(m, k)
    n = nilpotent_index(base.a)
    s = (base.a ** (n - 1)) * mu
    return base, s, LinearSolution(base.a, base.b, base.c, base.d + s)


# -- random instances ------------------------------------------------------------

def random_invertible(k, m, rng):
    while True:
        cand = ModMatrix(rng.integers(0, m, (k, k)), m)
        if cand.is_invertible():
            return cand


def random_unit(m, rng):
    while True:
        u = int(rng.integers(1, m))
        if np.gcd(u, m) == 1:
            return u


def _square_zero(k, m, rng):
    """A random e with e^2 = 0 (often zero or rank one)."""
    if k == 1:
        opts = [e for e in range(m) if (e * e) % m == 0]
        return ModMatrix([[int(rng.choice(opts))]], m)
    for _ in range(50):
        u, v = rng.integers(0, m, k), rng.integers(0, m, k)
        if int(v @ u) % m == 0:
            return ModMatrix(np.outer(u, v), m)
    return ModMatrix.zero(k, m)


def _random_poly(x, m, rng, unit=True):
    k = x.k
    while True:
        coef = rng.integers(0, m, k)
        out = ModMatrix.zero(k, m)
        power = ModMatrix.identity(k, m)
        for cf in coef:
            out = out + power * int(cf)
            power = power @ x
        if not unit or out.is_invertible():
            return out


def _random_block_pqz(r, m, rng):
    kind = rng.integers(0, 4)
    if kind == 0 or kind == 1:
        p = random_invertible(r, m, rng)
        q = _random_poly(p, m, rng)
        return z_equals_p(p, q) if kind == 0 else z_equals_q(p, q)
    if kind == 2:
        return square_zero_pair(_square_zero(r, m, rng), _square_zero(r, m, rng))
    pd = [random_unit(m, rng) for _ in range(r)]
    qd = [random_unit(m, rng) for _ in range(r)]
    return diagonal_pqz(pd, qd, rng.integers(0, 2, r).astype(bool), m)


def _defect_candidates(a, b, d):
    """Matrices s in the span of powers of b or diagonal (when a, b, d are),
    satisfying the quadruple conditions."""
    k, m = a.k, a.m
    cands = set()
    basis = [ModMatrix.identity(k, m)]
    for _ in range(k - 1):
        basis.append(basis[-1] @ b)
    for coef in product(range(m), repeat=k):
        s = ModMatrix.zero(k, m)
        for cf, bb in zip(coef, basis):
            s = s + bb * cf
        cands.add(s)
    diag = all(not (x.a - np.diag(np.diagonal(x.a))).any() for x in (a, b, d))
    if diag:
        for entries in product(range(m), repeat=k):
            cands.add(ModMatrix(np.diag(entries), m))
    out = []
    for s in cands:
        if s.is_zero():
            continue
        q = QuadrupleABDS(a, b, d, s)
        if q.is_valid():
            out.append(s)
    return sorted(out, key=lambda x: x.a.tobytes())


def random_quadruple(m, k, rng, p_defect=0.5):
    """A QuadrupleABDS satisfying all conditions by construction."""
    sizes = []
    left = k
    while left:
        r = int(rng.integers(1, left + 1))
        sizes.append(r)
        left -= r
    blocks = []
    for r in sizes:
        a, b, d = abd_from_pqz(_random_block_pqz(r, m, rng))
        s = ModMatrix.zero(r, m)
        if rng.random() < p_defect:
            cands = _defect_candidates(a, b, d)
            if cands:
                s = cands[int(rng.integers(0, len(cands)))]
        blocks.append((a, b, d, s))
    mats = [block_diag([blk[i] for blk in blocks], m) for i in range(4)]
    P = random_invertible(k, m, rng)
    Pinv = P.inverse()
    a, b, d, s = (P @ x @ Pinv for x in mats)
    return QuadrupleABDS(a, b, d, s)


def random_linear(m, k, rng, p_defect=0.5):
    return quadruple_to_solution(random_quadruple(m, k, rng, p_defect))


def kvec_candidates(l, zvec):
    """All k in X with ak = dk = 0 and (b-1)k = s z."""
    vecs = element_vectors(l.m, l.k)
    s = s_of(l)
    target = s @ np.asarray(zvec)
    ok = (~(l.a @ vecs).any(axis=1) & ~(l.d @ vecs).any(axis=1)
          & np.all((l.b - 1) @ vecs == target, axis=1))
    return vecs[ok]


def random_affine(l, rng):
    """An affine extension of l with random zvec and, when possible, a
    random admissible kvec (nonzero ones included)."""
    z = rng.integers(0, l.m, l.k)
    ks = kvec_candidates(l, z)
    if not len(ks):
        z = np.zeros(l.k, dtype=np.int64)
        ks = kvec_candidates(l, z)
    kv = ks[int(rng.integers(0, len(ks)))]
    return affine_extend(l, z, kv)


def perturb(l, rng):
    """Change one random entry of one matrix; the result may or may not be valid."""
    mats = [x.a.copy() for x in l.matrices]
    i = int(rng.integers(0, 4))
    r, c = rng.integers(0, l.k, 2)
    mats[i][r, c] = (mats[i][r, c] + rng.integers(1, l.m)) % l.m
    return LinearSolution(*(ModMatrix(x, l.m) for x in mats), check=False)
