"""Deciding whether X embeds in its structure group.

The decision goes through the module M_X over A_X^0.  Its A_X^0-module
presentation is flattened to an abelian group on |A_X^0| * n generators
e(a, x) = a.v_x by translating every defining relation by every group
element; x and y collide exactly when e(1, x) - e(1, y) lies in the
relation lattice.

Before the lattice is built, pairs are discharged by cheap certificates
that x != y in A_X, each a homomorphism out of A_X:

- x -> p(x) in A_X^0 (pairs with different p-images);
- x -> [x] in the free abelian group on the ~-classes;
- x -> (v -> t v + a(x)) in the affine group of a module V over
  R = (Z/p^e)[u]/(u^j) with t = 1 + u, where a is the universal map with
  a(phi(y, x)) = t a(y) + (1 - t) a(x).

A separated pair never lies in the lattice, so the verdict is unchanged;
only pairs no certificate separates reach the HNF test.
"""

from dataclasses import dataclass

import numpy as np

from .caps import get_caps
from .core import _require_braided, derived_solution, phi_table
from .errors import CapExceeded
from .lattice import IntLattice, ModuleModPE
from .quotients import a0_generators, a0_quotient, equivalence_classes, inverse


def necessary_conditions(m):
    """phi(x, x) == x for all x, and phi(y, x) == y iff phi(x, y) == x."""
    _require_braided(m)
    phi = phi_table(m)
    n = m.n
    if not np.array_equal(np.diagonal(phi), np.arange(n)):
        return False
    fixed = phi == np.arange(n)[:, None]      # fixed[y, x]: phi(y, x) == y
    return bool(np.array_equal(fixed, fixed.T))


@dataclass
class MModule:
    group: object           # PermGroup, the image A_X^0
    n: int
    lattice: IntLattice

    @property
    def dim(self):
        return self.group.order * self.n

    def basis_index(self, a, x):
        return a * self.n + x

    def generator(self, x):
        """The coordinate vector of theta(psi_A(x)) = e(1, x)."""
        return {self.basis_index(0, x): 1}


def relation_rows(m, group):
    """Sparse rows e(a p(y)^-1, x) + e(a, y) - e(a p(x)^-1, phi(y, x)) - e(a, x)."""
    n = m.n
    phi = phi_table(m)
    pinv = np.array([inverse(p) for p in a0_generators(m)])
    elems = group.elements
    # right[a, y] = index of a o p(y)^-1
    right = np.empty((group.order, n), dtype=np.int64)
    for y in range(n):
        prod = elems[:, pinv[y]]
        right[:, y] = [group.index(row) for row in prod]
    rows = set()
    for a in range(group.order):
        ra = right[a]
        for y in range(n):
            for x in range(n):
                v = {}
                for idx, c in ((ra[y] * n + x, 1), (a * n + y, 1),
                               (ra[x] * n + int(phi[y, x]), -1), (a * n + x, -1)):
                    w = v.get(idx, 0) + c
                    if w:
                        v[idx] = w
                    else:
                        v.pop(idx)
                if v:
                    rows.add(tuple(sorted(v.items())))
    return [dict(r) for r in sorted(rows)]


def build_m_module(m, cap=None, group_cap=None):
    _require_braided(m)
    cap = get_caps(mmodule=cap).mmodule
    group = a0_quotient(m, cap=group_cap).group
    dim = group.order * m.n
    if dim > cap:
        raise CapExceeded(f"M_X has {dim} generators, cap is {cap}")
    return MModule(group, m.n, IntLattice(dim, relation_rows(m, group)))


def _unresolved_pairs(m):
    """Pairs x < y not separated by p or by the ~-classes."""
    gens = a0_generators(m)
    cls = np.empty(m.n, dtype=np.int64)
    for i, c in enumerate(equivalence_classes(m)):
        cls[c] = i
    keys = np.column_stack([cls, gens])
    _, label = np.unique(keys, axis=0, return_inverse=True)
    label = label.ravel()
    pairs = []
    for lab in np.unique(label):
        members = np.flatnonzero(label == lab)
        pairs.extend((int(x), int(y)) for i, x in enumerate(members) for y in members[i + 1:])
    return sorted(pairs)


def _prime_powers(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _spanning_definitions(phi, classes):
    """Roots and an order of definitions z = phi(y, x) covering X.

    Each definition uses only elements defined earlier; when the search
    stalls, the least undefined element becomes a new root.
    """
    n = phi.shape[0]
    done = np.zeros(n, dtype=bool)
    roots, defs = [], []
    queue = []

    def mark(z):
        done[z] = True
        queue.append(z)

    for c in classes:
        roots.append(c[0])
        mark(c[0])
    while True:
        while queue:
            w = queue.pop()
            known = np.flatnonzero(done)
            # phi(w, x) and phi(y, w) for every known x, y
            for y, x in [(w, x) for x in known] + [(y, w) for y in known]:
                z = int(phi[y, x])
                if not done[z]:
                    defs.append((z, y, x))
                    mark(z)
        if done.all():
            return roots, defs
        z = int(np.flatnonzero(~done)[0])
        roots.append(z)
        mark(z)


def _unique_rows(a):
    # one byte string per row sorts far faster than np.unique(axis=0)
    a = np.ascontiguousarray(a)
    keys = a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()
    _, idx = np.unique(keys, return_index=True)
    return a[np.sort(idx)]


def affine_module_values(phi, classes, p, e, j):
    """The universal a: X -> V over (Z/p^e)[u]/(u^j), and V's relation span.

    Returns (values, module): values[x] is a(x) flattened to length f*j in
    terms of the root generators, and module is the Z/p^e-span of all
    relations (closed under multiplication by u).
    """
    q = p ** e
    n = phi.shape[0]
    roots, defs = _spanning_definitions(phi, classes)
    f = len(roots)
    vals = np.zeros((n, f, j), dtype=np.int64)
    for i, r in enumerate(roots):
        vals[r, i, 0] = 1

    def times_u(v):
        out = np.zeros_like(v)
        out[..., 1:] = v[..., :-1]
        return out

    for z, y, x in defs:
        vals[z] = (vals[y] + times_u(vals[y] - vals[x])) % q
    ys, xs = np.indices((n, n))
    rel = (vals[phi] - vals[ys] - times_u(vals[ys] - vals[xs])) % q
    rows = [rel.reshape(n * n, f * j)]
    for _ in range(j - 1):
        rel = times_u(rel)
        rows.append(rel.reshape(n * n, f * j))
    rows = _unique_rows(np.vstack(rows))
    rows = rows[rows.any(axis=1)]
    if not len(rows):
        rows = np.zeros((0, f * j), dtype=np.int64)
    return vals.reshape(n, f * j), ModuleModPE(rows, p, e) if len(rows) else None


def affine_module_separate(m, pairs, max_j=None):
    """Pairs not separated by any affine-module certificate tried."""
    if not pairs:
        return pairs
    n = m.n
    phi = phi_table(m)
    classes = equivalence_classes(m)
    max_j = max_j or n.bit_length() + 1
    for p, e in _prime_powers(n):
        for j in range(2, max_j + 1):
            vals, mod = affine_module_values(phi, classes, p, e, j)
            q = p ** e
            left = []
            for x, y in pairs:
                d = (vals[x] - vals[y]) % q
                if not d.any() or (mod is not None and d in mod):
                    left.append((x, y))
            pairs = left
            if not pairs:
                return pairs
    return pairs


def injectivity_report(m, cap=None, group_cap=None):
    """{"injective": bool, "necessary_only": bool, "m_dim": int or None}.

    ``necessary_only`` is True when the cheap necessary conditions already
    refute injectivity.  ``m_dim`` is the number of generators |A_X^0| * n
    of the flattened M_X when the lattice test ran, and None when every pair
    was already separated by a certificate.
    """
    if not necessary_conditions(m):
        return {"injective": False, "necessary_only": True, "m_dim": None}
    pairs = affine_module_separate(m, _unresolved_pairs(m))
    if not pairs:
        return {"injective": True, "necessary_only": False, "m_dim": None}
    mod = build_m_module(m, cap=cap, group_cap=group_cap)
    for x, y in pairs:
        diff = {mod.basis_index(0, x): 1, mod.basis_index(0, y): -1}
        if diff in mod.lattice:
            return {"injective": False, "necessary_only": False, "m_dim": mod.dim}
    return {"injective": True, "necessary_only": False, "m_dim": mod.dim}


def is_injective(m, cap=None, group_cap=None):
    return injectivity_report(m, cap, group_cap)["injective"]


def is_injective_full(m, cap=None, group_cap=None):
    """Lattice test on every pair, with no shortcuts; used as a cross-check."""
    mod = build_m_module(m, cap=cap, group_cap=group_cap)
    for x in range(m.n):
        for y in range(x + 1, m.n):
            diff = {mod.basis_index(0, x): 1, mod.basis_index(0, y): -1}
            if diff in mod.lattice:
                return False
    return True


def injectivity_agrees_with_derived(m, cap=None):
    return is_injective(m, cap) == is_injective(derived_solution(m), cap)
