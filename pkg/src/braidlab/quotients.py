"""Finite images of the structure groups and the rank of a solution.

The structure group G_X acts on X twice (by o and by *); the image of the
combined action in Sym(X) x Sym(X) is G_X modulo the intersection of the two
kernels.  The derived group A_X acts on X through phi, with image A_X^0.
Groups are closed by breadth-first search over full permutation tables.
"""

from dataclasses import dataclass

import numpy as np

from .caps import get_caps
from .core import _require_braided, action_tables, check_involutive, phi_table
from .errors import CapExceeded


class PermGroup:
    """A permutation group given by generators, closed eagerly.

    Permutations compose as functions: ``(p * q)[u] = p[q[u]]``.
    ``elements`` is sorted lexicographically, so index 0 is the identity.
    """

    def __init__(self, degree, generators, cap=None, labels=None):
        cap = get_caps(group=cap).group
        self.degree = degree
        gens = np.array(generators, dtype=np.int64).reshape(-1, degree)
        self.generators = gens
        self.labels = list(labels) if labels is not None else list(range(len(gens)))
        self.elements = _closure(degree, gens, cap)
        self._index = {row.tobytes(): i for i, row in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def index(self, perm):
        return self._index[np.asarray(perm, dtype=np.int64).tobytes()]

    def __contains__(self, perm):
        return np.asarray(perm, dtype=np.int64).tobytes() in self._index

    def element_set(self):
        return set(self._index)

    @property
    def identity(self):
        return self.elements[0]


def _closure(degree, gens, cap):
    ident = np.arange(degree, dtype=np.int64)
    seen = {ident.tobytes()}
    found = [ident]
    frontier = ident[None, :]
    uniq = np.unique(gens, axis=0) if len(gens) else gens
    while len(frontier):
        # g o h for every frontier element h and generator g
        cand = uniq[:, frontier].reshape(-1, degree)
        cand = np.unique(cand, axis=0)
        new = [row for row in cand if row.tobytes() not in seen]
        for row in new:
            seen.add(row.tobytes())
        if len(seen) > cap:
            raise CapExceeded(f"group closure exceeds {cap} elements")
        found.extend(new)
        frontier = np.array(new, dtype=np.int64).reshape(-1, degree)
    elements = np.array(found, dtype=np.int64).reshape(-1, degree)
    order = np.lexsort(elements.T[::-1])
    out = elements[order]
    out.setflags(write=False)
    return out


def compose(p, q):
    return p[q]


def inverse(p):
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv


@dataclass(frozen=True)
class GQuotient:
    group: PermGroup
    genmap: np.ndarray      # genmap[x] = (circ row of x, n + star row of x)


@dataclass(frozen=True)
class AQuotient:
    group: PermGroup
    pmap: np.ndarray        # pmap[x][y] = phi(y, x)


def g_quotient(m, cap=None):
    _require_braided(m)
    at = action_tables(m)
    gens = np.concatenate([at.circ, at.star + m.n], axis=1)
    return GQuotient(PermGroup(2 * m.n, gens, cap=cap), gens)


def a0_generators(m):
    """p(x) as the permutation y -> phi(y, x), one row per x."""
    return np.ascontiguousarray(phi_table(m).T)


def a0_quotient(m, cap=None):
    _require_braided(m)
    gens = a0_generators(m)
    return AQuotient(PermGroup(m.n, gens, cap=cap), gens)


def _find(parent, u):
    while parent[u] != u:
        parent[u] = parent[parent[u]]
        u = parent[u]
    return u


def equivalence_classes(m):
    """Classes of the smallest equivalence with y ~ phi(y, x)."""
    _require_braided(m)
    phi = phi_table(m)
    parent = list(range(m.n))
    n = m.n
    edges = np.unique(np.arange(n)[:, None] * n + phi).tolist()
    for e in edges:
        y, t = divmod(e, n)
        if y != t:
            a, b = _find(parent, y), _find(parent, t)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes = {}
    for u in range(m.n):
        classes.setdefault(_find(parent, u), []).append(u)
    return sorted(classes.values())


def rank(m):
    return len(equivalence_classes(m))


def rank_equality_is_symmetric(m):
    return (rank(m) == m.n) == check_involutive(m)


def quotient_report(m, cap=None):
    """The JSON payload shared by the ``rank`` and ``quotient`` commands."""
    classes = equivalence_classes(m)
    return {
        "rank": len(classes),
        "g_quotient_order": g_quotient(m, cap).group.order,
        "a0_order": a0_quotient(m, cap).group.order,
        "classes": classes,
    }
