"""Finite maps S: X x X -> X x X stored as tables, and pointwise predicates.

Elements of X are the integers 0..n-1.  A map is stored as two n x n arrays
``left`` and ``right`` with ``S(x, y) = (left[x, y], right[x, y])``, so that
``left[x, y] = g_x(y)`` and ``right[x, y] = f_y(x)``.

All predicates are exhaustive over X^2 or X^3 and vectorized with numpy.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .caps import get_caps
from .errors import BadIndex, Degenerate, MalformedTable, NotBraided, TooLarge


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BraidedMap:
    """The table of a candidate solution on {0, ..., n-1}.

    ``labels`` is display-only; all computation uses indices.
    """

    n: int
    left: np.ndarray
    right: np.ndarray
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise MalformedTable(f"n must be a positive integer, got {n!r}")
        left, right = _frozen(self.left), _frozen(self.right)
        if left.shape != (n, n) or right.shape != (n, n):
            raise MalformedTable(f"table must be {n}x{n}")
        for a in (left, right):
            if a.size and (a.min() < 0 or a.max() >= n):
                raise MalformedTable(f"table entries must lie in [0, {n})")
        if self.labels is not None and len(self.labels) != n:
            raise MalformedTable("labels must have length n")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @classmethod
    def from_table(cls, table, labels=None):
        """Build from ``table[x][y] = (u, v)`` nested sequences."""
        try:
            arr = np.asarray(table, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise MalformedTable(f"cannot read table: {exc}") from None
        if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
            raise MalformedTable("table must have shape n x n x 2")
        return cls(arr.shape[0], arr[:, :, 0], arr[:, :, 1], labels)

    @classmethod
    def from_function(cls, n, fn, labels=None):
        left = np.empty((n, n), dtype=np.int64)
        right = np.empty((n, n), dtype=np.int64)
        for x in range(n):
            for y in range(n):
                left[x, y], right[x, y] = fn(x, y)
        return cls(n, left, right, labels)

    def __call__(self, x, y):
        return int(self.left[x, y]), int(self.right[x, y])

    def table(self):
        return [[[int(self.left[x, y]), int(self.right[x, y])]
                 for y in range(self.n)] for x in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, BraidedMap):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.left, other.left)
                and np.array_equal(self.right, other.right))

    def __hash__(self):
        return hash((self.n, self.left.tobytes(), self.right.tobytes()))

    def __repr__(self):
        return f"BraidedMap(n={self.n}, table={self.table()})"

    @cached_property
    def codes(self):
        """Each output pair encoded as ``u * n + v``."""
        return self.left * self.n + self.right

    @cached_property
    def inverse(self):
        """Tables of S^-1 (requires a bijection)."""
        if not validate_bijection(self):
            raise MalformedTable("map is not a bijection of X x X")
        n = self.n
        inv_l = np.empty((n, n), dtype=np.int64)
        inv_r = np.empty((n, n), dtype=np.int64)
        xs, ys = np.indices((n, n))
        inv_l[self.left, self.right] = xs
        inv_r[self.left, self.right] = ys
        return _frozen(inv_l), _frozen(inv_r)


@dataclass(frozen=True, eq=False)
class ActionTables:
    """``star[x][z] = x*z = f_x^-1(z)``, ``circ[x][z] = g_x(z)``,
    ``star_inv[x][z] = x^-1 * z = f_x(z)``."""

    star: np.ndarray
    circ: np.ndarray
    star_inv: np.ndarray


def _rows_are_perms(a):
    n = a.shape[1]
    s = np.sort(a, axis=1)
    return bool(np.all(s == np.arange(n)))


def validate_bijection(m):
    return np.unique(m.codes).size == m.n * m.n


def check_nondegenerate(m):
    # rows of left are g_x; columns of right are f_y
    return _rows_are_perms(m.left) and _rows_are_perms(m.right.T)


def _require_nondegenerate(m):
    if not check_nondegenerate(m):
        raise Degenerate("map is degenerate")


def _inverse_rows(a):
    inv = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    inv[rows, a] = np.arange(a.shape[1])[None, :]
    return inv


def action_tables(m):
    _require_nondegenerate(m)
    star_inv = np.ascontiguousarray(m.right.T)
    return ActionTables(star=_frozen(_inverse_rows(star_inv)),
                        circ=m.left, star_inv=_frozen(star_inv))


def _triples(n):
    x, y, z = np.indices((n, n, n)).reshape(3, -1)
    return x, y, z


def _braid_blocks(m):
    """Both sides of the braid relation, one block of x values at a time.

    An output pair (u, v) is packed as u << s | v into a table indexed by
    u << s | v as well, so each application of S is a single gather.
    Yields (v2, v3, w1, w2) of shape (rows, n), rows indexed by (x, y) and
    columns by z: v3 and v2's low half are S1 S2 S1, w1's high half, w2
    are S2 S1 S2.  Small blocks keep the gathers in cache.
    """
    n = m.n
    s = max(1, (n - 1).bit_length())
    dt = np.int32 if 2 * s < 31 else np.int64
    mask = dt((1 << s) - 1)
    packed = np.zeros((n, 1 << s), dtype=dt)
    packed[:, :n] = (m.left.astype(dt) << s) | m.right.astype(dt)
    table = packed.ravel()
    z = np.arange(n, dtype=dt)
    block = max(1, (1 << 16) // (n * n))
    for x0 in range(0, n, block):
        x1 = min(n, x0 + block)
        first = packed[x0:x1, :n].reshape(-1, 1)          # S(x, y)
        v2 = np.take(table, ((first & mask) << s) | z)
        v3 = np.take(table, (first & ~mask) | (v2 >> s))
        yz = np.tile(packed[:, :n], (x1 - x0, 1))          # S(y, z) for each x
        xs = (np.arange(x0, x1, dtype=dt) << s).repeat(n)[:, None]
        w1 = np.take(table, xs | (yz >> s))
        w2 = np.take(table, ((w1 & mask) << s) | (yz & mask))
        yield s, mask, v2, v3, w1, w2


def check_braided(m):
    """S1 S2 S1 == S2 S1 S2 on all of X^3."""
    cache = m.__dict__.setdefault("_memo", {})
    if "braided" not in cache:
        cache["braided"] = all(
            np.array_equal(v3, (w1 & ~mask) | (w2 >> s)) and not ((v2 ^ w2) & mask).any()
            for s, mask, v2, v3, w1, w2 in _braid_blocks(m))
    return cache["braided"]


def braid_components(m):
    """Per-component agreement of the two sides of the braid relation.

    The flags are the two action conditions and the linking relation; all
    three hold exactly when the map is braided.
    """
    _require_nondegenerate(m)
    flags = [True, True, True]
    for s, mask, v2, v3, w1, w2 in _braid_blocks(m):
        lhs = (v3 >> s, v3 & mask, v2 & mask)
        rhs = (w1 >> s, w2 >> s, w2 & mask)
        for i in range(3):
            flags[i] = flags[i] and bool(np.array_equal(lhs[i], rhs[i]))
    return tuple(flags)


def linking_relation_holds(m):
    """f_{g_{f_y(x)}(z)}(g_x(y)) == g_{f_{g_y(z)}(x)}(f_z(y)) for all x, y, z."""
    x, y, z = _triples(m.n)
    g, f = m.left, m.right            # g[x, y] = g_x(y), f[x, y] = f_y(x)
    lhs = f[g[x, y], g[f[x, y], z]]
    rhs = g[f[x, g[y, z]], f[y, z]]
    return bool(np.array_equal(lhs, rhs))


def check_qybe_equiv(m):
    """Evaluate the QYBE for R = sigma S directly and compare with the braid test.

    Returns the agreement bit, so it is expected to be True for every
    bijective table.
    """
    if not validate_bijection(m):
        raise MalformedTable("map is not a bijection of X x X")

    def r(u, v):
        return m.right[u, v], m.left[u, v]

    def r12(x, y, z):
        a, b = r(x, y)
        return a, b, z

    def r13(x, y, z):
        a, c = r(x, z)
        return a, y, c

    def r23(x, y, z):
        b, c = r(y, z)
        return x, b, c

    t = _triples(m.n)
    lhs = r12(*r13(*r23(*t)))
    rhs = r23(*r13(*r12(*t)))
    qybe = all(np.array_equal(a, b) for a, b in zip(lhs, rhs))
    return qybe == check_braided(m)


def check_involutive(m):
    return bool(np.array_equal(m.left[m.left, m.right], np.indices((m.n, m.n))[0])
                and np.array_equal(m.right[m.left, m.right],
                                   np.indices((m.n, m.n))[1]))


def check_symmetric(m):
    return check_braided(m) and check_involutive(m)


def phi_table(m):
    """``phi[y, x] = x^-1 * ((y * x) o y)``."""
    at = action_tables(m)
    ys, xs = np.indices((m.n, m.n))
    return _frozen(at.star_inv[xs, at.circ[at.star[ys, xs], ys]])


def _require_braided(m):
    _require_nondegenerate(m)
    if not check_braided(m):
        raise NotBraided("map does not satisfy the braid relation")


def derived_solution(m):
    """S'(x, y) = (phi(y, x), x)."""
    _require_braided(m)
    phi = phi_table(m)
    xs, _ = np.indices((m.n, m.n))
    return BraidedMap(m.n, phi.T, xs, m.labels)


def phi_invariance_check(m):
    """t^-1 * phi(y, z) == phi(t^-1 * y, t^-1 * z) for every generator t."""
    _require_braided(m)
    si = action_tables(m).star_inv
    phi = phi_table(m)
    t, y, z = _triples(m.n)
    return bool(np.array_equal(si[t, phi[y, z]], phi[si[t, y], si[t, z]]))


def all_tuples(n, k):
    """X^k in lexicographic order, shape (n**k, k)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((n,) * k).reshape(k, -1).T.copy()


def tuple_index(tuples, n):
    k = tuples.shape[1]
    weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return tuples @ weights


def j_map(m, k, cap=None):
    """J_k as an array: row t of the result is J_k applied to all_tuples(n, k)[t].

    J_1 = id and J_k = Q_k (J_{k-1} x id), where
    Q_k(x_1..x_k) = (x_k^-1 * x_1, ..., x_k^-1 * x_{k-1}, x_k).
    """
    if k < 1:
        raise BadIndex("k must be at least 1")
    cap = get_caps(jmap=cap).jmap
    if m.n ** k > cap:
        raise TooLarge(f"n**k = {m.n ** k} exceeds cap {cap}")
    si = action_tables(m).star_inv
    tuples = all_tuples(m.n, k)
    out = tuples.copy()
    for j in range(2, k + 1):
        last = out[:, j - 1]
        out[:, :j - 1] = si[last[:, None], out[:, :j - 1]]
    return out


def apply_local(m, tuples, i, inverse=False):
    """Apply S (or S^-1) in positions i, i+1 (1-based) to every row of ``tuples``."""
    k = tuples.shape[1]
    if not 1 <= i <= k - 1:
        raise BadIndex(f"generator index {i} outside [1, {k - 1}]")
    left, right = m.inverse if inverse else (m.left, m.right)
    out = np.array(tuples, dtype=np.int64, copy=True)
    a, b = out[:, i - 1].copy(), out[:, i].copy()
    out[:, i - 1], out[:, i] = left[a, b], right[a, b]
    return out


def apply_braid_word(m, word, tup):
    """Apply generators left to right; a negative entry -i means (S^{i,i+1})^-1."""
    _require_braided(m)
    arr = np.atleast_2d(np.asarray(tup, dtype=np.int64))
    if arr.size and (arr.min() < 0 or arr.max() >= m.n):
        raise BadIndex("tuple entries must lie in [0, n)")
    for w in word:
        if w == 0:
            raise BadIndex("generator index 0 is not allowed")
        arr = apply_local(m, arr, abs(w), inverse=w < 0)
    if np.ndim(tup) == 1:
        return tuple(int(v) for v in arr[0])
    return arr


def j_conjugation_holds(m, k):
    """J_k S^{i,i+1} == S'^{i,i+1} J_k on all of X^k for every i."""
    if k < 2:
        return True
    mp = derived_solution(m)
    tuples = all_tuples(m.n, k)
    jk = j_map(m, k)
    for i in range(1, k):
        lhs = jk[tuple_index(apply_local(m, tuples, i), m.n)]
        rhs = apply_local(mp, jk, i)
        if not np.array_equal(lhs, rhs):
            return False
    return True
