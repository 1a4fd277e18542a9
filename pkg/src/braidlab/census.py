"""Exhaustive enumeration of nondegenerate braided sets on small X.

The search assigns the permutations g_0, f_0, g_1, f_1, ... in turn, so
nondegeneracy is built into the search space.  After each assignment every
braid triple that has become fully evaluable is checked, and triples that
are still undetermined are carried down to the children.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .core import BraidedMap, check_involutive
from .errors import Unsupported
from .injectivity import is_injective
from .quotients import a0_quotient, g_quotient, rank

FILTERS = ("all", "symmetric", "injective")


def _relabelings(n):
    return [np.array(p, dtype=np.int64) for p in permutations(range(n))]


def _relabel(m, sigma):
    """sigma acting on a table: T'[sx][sy] = (s u, s v) for T[x][y] = (u, v)."""
    inv = np.empty_like(sigma)
    inv[sigma] = np.arange(len(sigma))
    left = sigma[m.left[np.ix_(inv, inv)]]
    right = sigma[m.right[np.ix_(inv, inv)]]
    return left, right


def _flat(left, right):
    return tuple(np.stack([left, right], axis=-1).ravel().tolist())


def _canonical_key(m):
    best, count = None, 0
    for sigma in _relabelings(m.n):
        key = _flat(*_relabel(m, sigma))
        if best is None or key < best:
            best, count = key, 1
        elif key == best:
            count += 1
    return best, count


def _from_key(n, key):
    arr = np.array(key, dtype=np.int64).reshape(n, n, 2)
    return BraidedMap(n, arr[:, :, 0], arr[:, :, 1])


def canonical_form(m):
    """Lexicographically least relabeling of the flattened table."""
    key, _ = _canonical_key(m)
    return _from_key(m.n, key)


def orbit_size(m):
    """Number of distinct relabelings, n! / |automorphisms|."""
    _, stabilizer = _canonical_key(m)
    return math.factorial(m.n) // stabilizer


# -- search -----------------------------------------------------------------

def _eval(g, f, x, y):
    gx, fy = g[x], f[y]
    if gx is None or fy is None:
        return None
    return gx[y], fy[x]


def _side(g, f, x, y, z, first_left):
    """S1 S2 S1 (first_left) or S2 S1 S2, or None if some entry is unknown."""
    if first_left:
        r = _eval(g, f, x, y)
        if r is None:
            return None
        x, y = r
        r = _eval(g, f, y, z)
        if r is None:
            return None
        y, z = r
        r = _eval(g, f, x, y)
        if r is None:
            return None
        return r[0], r[1], z
    r = _eval(g, f, y, z)
    if r is None:
        return None
    y, z = r
    r = _eval(g, f, x, y)
    if r is None:
        return None
    x, y = r
    r = _eval(g, f, y, z)
    if r is None:
        return None
    return x, r[0], r[1]


def _prune(g, f, pending):
    """Check newly decidable triples; return remaining ones, or None on failure."""
    rest = []
    for t in pending:
        a = _side(g, f, *t, True)
        if a is None:
            rest.append(t)
            continue
        b = _side(g, f, *t, False)
        if b is None:
            rest.append(t)
        elif a != b:
            return None
    return rest


def _bijective(g, f, n):
    seen = set()
    for x in range(n):
        for y in range(n):
            seen.add((g[x][y], f[y][x]))
    return len(seen) == n * n


def _search_partition(args):
    """All solutions with g_0 fixed; returns canonical keys."""
    n, g0 = args
    perms = list(permutations(range(n)))
    g, f = [None] * n, [None] * n
    g[0] = g0
    found = set()
    order = [("f", 0)] + [(kind, i) for i in range(1, n) for kind in ("g", "f")]
    pending0 = _prune(g, f, list(product(range(n), repeat=3)))

    def rec(depth, pending):
        if depth == len(order):
            if _bijective(g, f, n):
                m = BraidedMap(n, np.array(g), np.array(f).T)
                found.add(_canonical_key(m)[0])
            return
        kind, i = order[depth]
        slot = g if kind == "g" else f
        for p in perms:
            slot[i] = p
            rest = _prune(g, f, pending)
            if rest is not None:
                rec(depth + 1, rest)
        slot[i] = None

    if pending0 is not None:
        rec(0, pending0)
    return found


def search_canonical(n, workers=1, allow_n4=False):
    """Sorted canonical keys of all nondegenerate braided sets of size n."""
    if n < 1 or n > 4 or (n == 4 and not allow_n4):
        raise Unsupported(f"enumeration supports n <= 3 (n = 4 behind a flag), got {n}")
    tasks = [(n, p) for p in permutations(range(n))]
    keys = set()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_search_partition, tasks):
                keys |= part
    else:
        for t in tasks:
            keys |= _search_partition(t)
    return sorted(keys)


@dataclass(frozen=True)
class CensusRecord:
    solution: BraidedMap
    orbit_size: int
    symmetric: bool
    injective: bool
    rank: int
    a0_order: int
    g_quotient_order: int
    braided: bool = True

    def to_json(self):
        return {
            "n": self.solution.n,
            "s": self.solution.table(),
            "orbit_size": self.orbit_size,
            "braided": self.braided,
            "symmetric": self.symmetric,
            "injective": self.injective,
            "rank": self.rank,
            "a0_order": self.a0_order,
            "g_quotient_order": self.g_quotient_order,
        }

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))


def census_record(m):
    m = canonical_form(m)
    return CensusRecord(
        solution=m,
        orbit_size=orbit_size(m),
        symmetric=check_involutive(m),
        injective=is_injective(m),
        rank=rank(m),
        a0_order=a0_quotient(m).group.order,
        g_quotient_order=g_quotient(m).group.order,
    )


def _record_from_key(args):
    n, key = args
    return census_record(_from_key(n, key))


def enumerate_solutions(n, filter="all", workers=1, allow_n4=False):
    """Census records of every relabeling class, sorted by canonical table."""
    if filter not in FILTERS:
        raise Unsupported(f"unknown filter {filter!r}")
    keys = search_canonical(n, workers=workers, allow_n4=allow_n4)
    tasks = [(n, k) for k in keys]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_record_from_key, tasks, chunksize=16))
    else:
        records = [_record_from_key(t) for t in tasks]
    for rec in records:
        if filter == "all" or getattr(rec, filter):
            yield rec


def write_census(records, fh):
    for rec in records:
        fh.write(rec.dumps())
        fh.write("\n")
