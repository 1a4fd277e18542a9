"""Linear and affine solutions on X = (Z/m)^k.

    linear:  S(x, y) = (a x + b y,     c x + d y)
    affine:  S(x, y) = (a x + b y + z, c x + d y + t)

with a, b, c, d ModMatrix and z, t vectors (``zvec``, ``tvec``).  The
braid relation for the linear map is the system of matrix identities
checked by ``linear_relations``; the defect s = bc - (1 - d + ad)(1 - a)
classifies injectivity.
"""

import numpy as np

from .caps import get_caps
from .core import BraidedMap, all_tuples, tuple_index
from .errors import (BadPerturbation, ConstraintViolation, InvariantViolation,
                     NotASolution, ShapeMismatch, TooLarge)
from .modmat import ModMatrix


def _vec(v, m, k, name):
    arr = np.asarray(v, dtype=np.int64)
    if arr.shape != (k,):
        raise ShapeMismatch(f"{name} must have length {k}, got shape {arr.shape}")
    out = arr % m
    out.setflags(write=False)
    return out


def _same_ring(*mats):
    m, k = mats[0].m, mats[0].k
    for x in mats:
        if not isinstance(x, ModMatrix):
            raise ShapeMismatch("expected ModMatrix arguments")
        if x.m != m or x.k != k:
            raise ShapeMismatch("matrices must share modulus and size")
    return m, k


def linear_relations(a, b, c, d):
    """Named identities for the braid relation of (ax+by, cx+dy), each a bool."""
    _same_ring(a, b, c, d)
    return {
        "a(1-a)=bac": a @ (1 - a) == b @ a @ c,
        "d(1-d)=cdb": d @ (1 - d) == c @ d @ b,
        "ab=ba(1-d)": a @ b == b @ a @ (1 - d),
        "ca=(1-d)ac": c @ a == (1 - d) @ a @ c,
        "dc=cd(1-a)": d @ c == c @ d @ (1 - a),
        "bd=(1-a)db": b @ d == (1 - a) @ d @ b,
        "cb-bc=ada-dad": c @ b - b @ c == a @ d @ a - d @ a @ d,
    }


def check_linear_relations(a, b, c, d):
    """The seven identities hold and b, c are invertible."""
    rel = linear_relations(a, b, c, d)
    return all(rel.values()) and b.is_invertible() and c.is_invertible()


class LinearSolution:
    """S(x, y) = (ax + by, cx + dy) on (Z/m)^k.

    With ``check=False`` the identities are not enforced, which lets
    invalid candidates be materialized and tested at the set level.
    """

    def __init__(self, a, b, c, d, check=True):
        self.m, self.k = _same_ring(a, b, c, d)
        self.a, self.b, self.c, self.d = a, b, c, d
        if check and not check_linear_relations(a, b, c, d):
            raise NotASolution("matrices do not define a nondegenerate braided map")

    @property
    def matrices(self):
        return self.a, self.b, self.c, self.d

    def is_valid(self):
        return check_linear_relations(*self.matrices)

    def __eq__(self, other):
        return isinstance(other, LinearSolution) and self.matrices == other.matrices

    def __hash__(self):
        return hash(self.matrices)

    def __repr__(self):
        return (f"LinearSolution(m={self.m}, a={self.a.tolist()}, b={self.b.tolist()}, "
                f"c={self.c.tolist()}, d={self.d.tolist()})")

    def __call__(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        return self.a @ x + self.b @ y, self.c @ x + self.d @ y


class AffineSolution:
    """S(x, y) = (ax + by + zvec, cx + dy + tvec)."""

    def __init__(self, linear, zvec, tvec, check=True):
        self.linear = linear
        self.m, self.k = linear.m, linear.k
        self.zvec = _vec(zvec, self.m, self.k, "zvec")
        self.tvec = _vec(tvec, self.m, self.k, "tvec")
        if check:
            if not linear.is_valid():
                raise NotASolution("linear part is not a solution")
            bad = [name for name, ok in affine_relations(self).items() if not ok]
            if bad:
                raise NotASolution(f"affine identity fails: {bad[0]}")

    def __eq__(self, other):
        return (isinstance(other, AffineSolution) and self.linear == other.linear
                and np.array_equal(self.zvec, other.zvec)
                and np.array_equal(self.tvec, other.tvec))

    def __hash__(self):
        return hash((self.linear, self.zvec.tobytes(), self.tvec.tobytes()))

    def __repr__(self):
        return f"AffineSolution({self.linear!r}, zvec={self.zvec.tolist()}, tvec={self.tvec.tolist()})"

    def __call__(self, x, y):
        u, v = self.linear(x, y)
        return (u + self.zvec) % self.m, (v + self.tvec) % self.m


def affine_relations(sol):
    """The three vector identities on (z, t) from the affine braid relation."""
    a, b, c, d = sol.linear.matrices
    z, t, m = sol.zvec, sol.tvec, sol.m
    zero = np.zeros(sol.k, dtype=np.int64)

    def eq(u):
        return bool(np.array_equal(u % m, zero))

    return {
        "cdz+dt=0": eq((c @ d) @ z + d @ t),
        "az+bat=0": eq(a @ z + (b @ a) @ t),
        "(c+d-ad-1)z+(da+1-a-b)t=0": eq((c + d - a @ d - 1) @ z + (d @ a + 1 - a - b) @ t),
    }


# -- quadruples ----------------------------------------------------------------

class QuadrupleABDS:
    """(a, b, d, s) with c recovered from bc = (1 - d + ad)(1 - a) + s."""

    def __init__(self, a, b, d, s):
        self.m, self.k = _same_ring(a, b, d, s)
        self.a, self.b, self.d, self.s = a, b, d, s

    def __eq__(self, other):
        return (isinstance(other, QuadrupleABDS)
                and (self.a, self.b, self.d, self.s) == (other.a, other.b, other.d, other.s))

    def __repr__(self):
        return (f"QuadrupleABDS(m={self.m}, a={self.a.tolist()}, b={self.b.tolist()}, "
                f"d={self.d.tolist()}, s={self.s.tolist()})")

    def violations(self):
        """Names of the failed conditions, in a fixed order."""
        a, b, d, s = self.a, self.b, self.d, self.s
        out = []
        for name, mat in (("1-a", 1 - a), ("1-d", 1 - d), ("b", b), ("1+s", 1 + s)):
            if not mat.is_invertible():
                out.append(f"{name} not invertible")
        if out:
            return out
        for name, ok in (("sa=as", s.commutes(a)), ("sb=bs", s.commutes(b)),
                         ("sd=ds", s.commutes(d)), ("sa=0", (s @ a).is_zero()),
                         ("sd=0", (s @ d).is_zero())):
            if not ok:
                out.append(name)
        binv = b.inverse()
        if b @ d @ binv != (1 - a) @ d:
            out.append("bdb^-1=(1-a)d")
        if binv @ a @ b != a @ (1 - d):
            out.append("b^-1ab=a(1-d)")
        return out

    def is_valid(self):
        return not self.violations()


def s_of(l):
    """The defect s = bc - (1 - d + ad)(1 - a) of a linear solution."""
    if not l.is_valid():
        raise NotASolution("matrices do not define a nondegenerate braided map")
    a, b, c, d = l.matrices
    return b @ c - (1 - d + a @ d) @ (1 - a)


def solution_to_quadruple(l):
    return QuadrupleABDS(l.a, l.b, l.d, s_of(l))


def quadruple_to_solution(q):
    bad = q.violations()
    if bad:
        raise InvariantViolation(f"quadruple condition fails: {bad[0]}")
    a, b, d, s = q.a, q.b, q.d, q.s
    c = b.inverse() @ ((1 - d + a @ d) @ (1 - a) + s)
    return LinearSolution(a, b, c, d)


def is_injective_linear(l):
    return s_of(l).is_zero()


def phi_closed_form(l):
    """(coefficient of z, coefficient of y) in phi(y, z) = (1-K)z + (K+s)y,
    K = (1-d)(1-a)."""
    s = s_of(l)
    kk = (1 - l.d) @ (1 - l.a)
    return 1 - kk, kk + s


def hat_solution(l):
    """(ax + by, cx + (d - s)y): always injective."""
    s = s_of(l)
    return LinearSolution(l.a, l.b, l.c, l.d - s)


def breve_conditions(l, s):
    a, b, c, d = l.matrices
    return {
        "sa=0": (s @ a).is_zero(),
        "as=0": (a @ s).is_zero(),
        "sb=bs": s.commutes(b),
        "sd=-s^2": s @ d == -(s @ s),
        "ds=-s^2": d @ s == -(s @ s),
        "sc=cs": s.commutes(c),
    }


def breve_solution(l, s):
    """(ax + by, cx + (d + s)y) for injective l.

    Its defect is s and its quadruple is (a, b, d + s, s).
    """
    _same_ring(l.a, s)
    if not is_injective_linear(l):
        raise BadPerturbation("base solution must be injective")
    for name, ok in breve_conditions(l, s).items():
        if not ok:
            raise BadPerturbation(f"perturbation violates {name}")
    return LinearSolution(l.a, l.b, l.c, l.d + s)


# -- (p, q, z) coordinates --------------------------------------------------------

class TriplePQZ:
    """Automorphisms p, q, zauto with pq = qp and zauto^2 - zauto(p+q) + pq = 0."""

    def __init__(self, p, q, zauto):
        self.m, self.k = _same_ring(p, q, zauto)
        self.p, self.q, self.zauto = p, q, zauto

    def __eq__(self, other):
        return (isinstance(other, TriplePQZ)
                and (self.p, self.q, self.zauto) == (other.p, other.q, other.zauto))

    def __repr__(self):
        return (f"TriplePQZ(m={self.m}, p={self.p.tolist()}, q={self.q.tolist()}, "
                f"zauto={self.zauto.tolist()})")

    def violations(self):
        p, q, z = self.p, self.q, self.zauto
        out = [f"{n} not invertible" for n, x in (("p", p), ("q", q), ("zauto", z))
               if not x.is_invertible()]
        if not p.commutes(q):
            out.append("pq=qp")
        if not (z @ z - z @ (p + q) + p @ q).is_zero():
            out.append("zauto^2-zauto(p+q)+pq=0")
        return out


def abd_violations(a, b, d):
    out = [f"{n} not invertible" for n, x in (("b", b), ("1-a", 1 - a), ("1-d", 1 - d))
           if not x.is_invertible()]
    if out:
        return out
    binv = b.inverse()
    if b @ d @ binv != (1 - a) @ d:
        out.append("bdb^-1=(1-a)d")
    if binv @ a @ b != a @ (1 - d):
        out.append("b^-1ab=a(1-d)")
    return out


def pqz_from_abd(a, b, d):
    bad = abd_violations(a, b, d)
    if bad:
        raise InvariantViolation(f"triple condition fails: {bad[0]}")
    binv = b.inverse()
    return TriplePQZ(binv, (1 - a) @ (1 - d) @ binv, (1 - a) @ binv)


def abd_from_pqz(t):
    bad = t.violations()
    if bad:
        raise InvariantViolation(f"(p, q, zauto) condition fails: {bad[0]}")
    pinv = t.p.inverse()
    a = 1 - t.zauto @ pinv
    d = 1 - t.p @ t.zauto.inverse() @ t.q @ pinv
    return a, pinv, d


def injective_from_pqz(t):
    a, b, d = abd_from_pqz(t)
    return quadruple_to_solution(QuadrupleABDS(a, b, d, ModMatrix.zero(t.k, t.m)))


# -- affine ---------------------------------------------------------------------

def affine_extend(l, zvec, kvec):
    """The affine solution with linear part l, t = -c(1-a)^-1 z + k."""
    a, b, c, d = l.matrices
    m, k = l.m, l.k
    if not (1 - a).is_invertible():
        raise ConstraintViolation("1-a is not invertible")
    z = _vec(zvec, m, k, "zvec")
    kv = _vec(kvec, m, k, "kvec")
    s = s_of(l)
    if (a @ kv).any():
        raise ConstraintViolation("a kvec != 0")
    if (d @ kv).any():
        raise ConstraintViolation("d kvec != 0")
    if not np.array_equal((b - 1) @ kv, s @ z):
        raise ConstraintViolation("(b-1) kvec != s zvec")
    t = (kv - c @ ((1 - a).inverse() @ z)) % m
    return AffineSolution(l, z, t)


def kvec_of(sol):
    a, c = sol.linear.a, sol.linear.c
    return (sol.tvec + c @ ((1 - a).inverse() @ sol.zvec)) % sol.m


def is_injective_affine(sol):
    return is_injective_linear(sol.linear) and not kvec_of(sol).any()


# -- set level --------------------------------------------------------------------

def materialize(sol, cap=None):
    """The table of sol on (Z/m)^k, elements in lexicographic order."""
    cap = get_caps(materialize=cap).materialize
    m, k = sol.m, sol.k
    n = m ** k
    if n > cap:
        raise TooLarge(f"m**k = {n} exceeds cap {cap}")
    lin = sol.linear if isinstance(sol, AffineSolution) else sol
    a, b, c, d = lin.matrices
    vecs = all_tuples(m, k)
    z = sol.zvec if isinstance(sol, AffineSolution) else 0
    t = sol.tvec if isinstance(sol, AffineSolution) else 0
    first = (a @ vecs)[:, None, :] + (b @ vecs)[None, :, :] + z
    second = (c @ vecs)[:, None, :] + (d @ vecs)[None, :, :] + t
    left = tuple_index(first.reshape(-1, k) % m, m).reshape(n, n)
    right = tuple_index(second.reshape(-1, k) % m, m).reshape(n, n)
    labels = tuple(",".join(map(str, v)) for v in vecs.tolist())
    return BraidedMap(n, left, right, labels)


def element_vectors(m, k):
    """Row i is the vector labelled i by ``materialize``."""
    return all_tuples(m, k)
