"""Bijective 1-cocycles.

Conventions: a group G acts on a group A on the left, ``rho[g]`` is the
permutation of A's element indices given by g, and a 1-cocycle satisfies

    pi(g1 g2) = rho[g2^-1](pi(g1)) . pi(g2).

Two directions are covered: building an injective solution from explicit
finite data (G, A, rho, pi, X), and evaluating the cocycle G_X -> A_X on
words, read in the finite image A_X^0.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import BraidedMap, _require_braided, action_tables
from .errors import InvariantViolation, MalformedTables, NotAnAutomorphism
from .quotients import a0_quotient, compose, inverse


class FiniteGroup:
    """A group given by its multiplication table on indices 0..order-1."""

    def __init__(self, mul, check=True):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise MalformedTables("multiplication table must be square and nonempty")
        k = mul.shape[0]
        if mul.min() < 0 or mul.max() >= k:
            raise MalformedTables("multiplication table entries out of range")
        self.mul = mul
        self.order = k
        ids = [e for e in range(k)
               if np.array_equal(mul[e], np.arange(k)) and np.array_equal(mul[:, e], np.arange(k))]
        if not ids:
            raise MalformedTables("no identity element")
        self.id = ids[0]
        inv = np.full(k, -1, dtype=np.int64)
        for a in range(k):
            hits = np.flatnonzero(mul[a] == self.id)
            if len(hits) != 1 or mul[hits[0], a] != self.id:
                raise MalformedTables(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        self.inv = inv
        if check and not _associative(mul):
            raise MalformedTables("multiplication is not associative")

    @classmethod
    def from_elements(cls, elements, op):
        """Table of a concrete group given as a list of hashable elements."""
        index = {e: i for i, e in enumerate(elements)}
        mul = [[index[op(a, b)] for b in elements] for a in elements]
        return cls(mul)

    @classmethod
    def cyclic(cls, k):
        return cls([[(a + b) % k for b in range(k)] for a in range(k)])

    def to_json(self):
        return {"order": self.order, "mul": self.mul.tolist()}


def _associative(mul):
    k = mul.shape[0]
    ab_c = mul[mul[:, :, None], np.arange(k)[None, None, :]]
    a_bc = mul[np.arange(k)[:, None, None], mul[None, :, :]]
    return bool(np.array_equal(ab_c, a_bc))


def _is_perm(p, k):
    return len(p) == k and np.array_equal(np.sort(p), np.arange(k))


def verify_cocycle(G, A, rhoGA, pi):
    """True iff pi is a bijection and pi(g1 g2) = rho(g2^-1)(pi(g1)) . pi(g2)."""
    rho = np.asarray(rhoGA, dtype=np.int64)
    pi = np.asarray(pi, dtype=np.int64)
    if rho.shape != (G.order, A.order) or pi.shape != (G.order,):
        raise MalformedTables("rhoGA must be |G| x |A| and pi must have length |G|")
    if rho.min() < 0 or rho.max() >= A.order or pi.min() < 0 or pi.max() >= A.order:
        raise MalformedTables("rhoGA or pi entries out of range")
    if G.order != A.order or not _is_perm(pi, A.order):
        return False
    g1, g2 = np.indices((G.order, G.order))
    lhs = pi[G.mul[g1, g2]]
    rhs = A.mul[rho[G.inv[g2], pi[g1]], pi[g2]]
    return bool(np.array_equal(lhs, rhs))


def is_action_by_automorphisms(G, A, rhoGA):
    rho = np.asarray(rhoGA, dtype=np.int64)
    for g in range(G.order):
        r = rho[g]
        if not _is_perm(r, A.order):
            return False
        if not np.array_equal(r[A.mul], A.mul[r[:, None], r[None, :]]):
            return False
    # rho(g1 g2) = rho(g1) o rho(g2)
    g1, g2 = np.indices((G.order, G.order))
    return bool(np.array_equal(rho[G.mul[g1, g2]], rho[g1[:, :, None], rho[g2]]))


@dataclass
class SevenTuple:
    """(G, A, rhoGA, pi, X): the remaining data is induced.

    G x| A acts on A by g -> rho[g] and a -> conjugation by a; X is a subset
    of A (element indices) invariant under that action, listed in the order
    that becomes 0..|X|-1 in the constructed solution.
    """

    G: FiniteGroup
    A: FiniteGroup
    rhoGA: np.ndarray
    pi: np.ndarray
    X: list

    def __post_init__(self):
        self.rhoGA = np.asarray(self.rhoGA, dtype=np.int64)
        self.pi = np.asarray(self.pi, dtype=np.int64)
        self.X = [int(x) for x in self.X]

    def check(self):
        """Raise InvariantViolation naming the first failed invariant."""
        G, A = self.G, self.A
        if self.rhoGA.shape != (G.order, A.order):
            raise InvariantViolation("rhoGA must have one row of length |A| per element of G")
        if not is_action_by_automorphisms(G, A, self.rhoGA):
            raise InvariantViolation("rhoGA is not a homomorphism G -> Aut(A)")
        if self.pi.shape != (G.order,) or not _is_perm(self.pi, A.order) or G.order != A.order:
            raise InvariantViolation("pi is not a bijection G -> A")
        if not verify_cocycle(G, A, self.rhoGA, self.pi):
            raise InvariantViolation("pi violates the 1-cocycle identity")
        xs = set(self.X)
        if not xs or len(xs) != len(self.X) or min(xs) < 0 or max(xs) >= A.order:
            raise InvariantViolation("X must be a nonempty list of distinct elements of A")
        for x in self.X:
            if any(int(self.rhoGA[g, x]) not in xs for g in range(G.order)):
                raise InvariantViolation("X is not invariant under the G-action")
            for a in range(A.order):
                if int(A.mul[A.mul[a, x], A.inv[a]]) not in xs:
                    raise InvariantViolation("X is not invariant under conjugation in A")

    def to_json(self):
        return {"G": self.G.to_json(), "A": self.A.to_json(),
                "rhoGA": self.rhoGA.tolist(), "pi": self.pi.tolist(), "X": list(self.X)}


def seven_tuple_to_solution(t, check=True):
    """The injective solution on X:

        S(x, y) = (pi(pi^-1(x) pi^-1(y) pi^-1(y')^-1), y')  with
        y' = rho(pi^-1(y)^-1)(x).
    """
    if check:
        t.check()
    G, A = t.G, t.A
    pinv = np.empty(G.order, dtype=np.int64)
    pinv[t.pi] = np.arange(G.order)
    pos = {a: i for i, a in enumerate(t.X)}
    n = len(t.X)
    left = np.empty((n, n), dtype=np.int64)
    right = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(t.X):
        for j, y in enumerate(t.X):
            gy = pinv[y]
            second = int(t.rhoGA[G.inv[gy], x])
            first = int(t.pi[G.mul[G.mul[pinv[x], gy], G.inv[pinv[second]]]])
            if first not in pos or second not in pos:
                raise InvariantViolation("constructed map leaves X")
            left[i, j], right[i, j] = pos[first], pos[second]
    return BraidedMap(n, left, right, labels=tuple(str(x) for x in t.X))


# -- the cocycle on words, read in A_X^0 --------------------------------------

class WordCocycle:
    """Pi: words over X -> A_X^0 with

        Pi(w x)    = (x^-1 * Pi(w)) . p(x)
        Pi(w x^-1) = (x * Pi(w)) . (x * p(x))^-1

    where G_X acts on A_X^0 through conjugation by the *-permutations:
    x * a = star_x o a o star_x^-1, which sends p(z) to p(x * z).
    Words are sequences of (letter, exponent) pairs with exponent +1 or -1.
    """

    def __init__(self, m, cap=None):
        _require_braided(m)
        self.m = m
        self.quotient = a0_quotient(m, cap=cap)
        self.group = self.quotient.group
        self.p = self.quotient.pmap
        at = action_tables(m)
        self.star, self.star_inv = at.star, at.star_inv
        self.identity = self.group.identity

    def act(self, letter, exponent, a):
        s = self.star[letter] if exponent > 0 else self.star_inv[letter]
        return compose(compose(s, a), inverse(s))

    def __call__(self, word):
        val = self.identity
        for x, e in word:
            if e > 0:
                val = compose(self.act(x, -1, val), self.p[x])
            else:
                xp = self.p[self.star[x, x]]          # x * p(x) = p(x * x)
                val = compose(self.act(x, 1, val), inverse(xp))
        return val

    def relation_pairs(self):
        """(x y, (x o y)(y^-1 * x)) for all x, y, as word pairs."""
        n = self.m.n
        circ, si = self.m.left, self.star_inv
        for x, y in product(range(n), repeat=2):
            yield ([(x, 1), (y, 1)], [(int(circ[x, y]), 1), (int(si[y, x]), 1)])

    def consistency_violations(self, max_len=3):
        """Count rewrites (defining relations, free reductions) that change Pi,
        over all words of length <= max_len containing the rewritten pair."""
        n = self.m.n
        letters = [(x, e) for x in range(n) for e in (1, -1)]
        pairs = list(self.relation_pairs())
        for x in range(n):
            pairs.append(([(x, 1), (x, -1)], []))
            pairs.append(([(x, -1), (x, 1)], []))
        bad = 0
        for lhs, rhs in pairs:
            room = max_len - max(len(lhs), len(rhs))
            for total in range(room + 1):
                for ctx in product(letters, repeat=total):
                    for cut in range(total + 1):
                        u, v = list(ctx[:cut]), list(ctx[cut:])
                        if not np.array_equal(self(u + lhs + v), self(u + rhs + v)):
                            bad += 1
        return bad


def word_cocycle(m, word):
    return WordCocycle(m)(word)


def star_action_on_a0(m, word, cocycle=None):
    """The automorphism of A_X^0 induced by a word g in G_X, as a permutation
    of the group's element indices.  ``word`` may be a single letter."""
    wc = cocycle or WordCocycle(m)
    if isinstance(word, (int, np.integer)):
        word = [(int(word), 1)]
    n = m.n
    sigma = np.arange(n)
    for x, e in word:
        sigma = compose(sigma, wc.star[x] if e > 0 else wc.star_inv[x])
    sinv = inverse(sigma)
    group = wc.group
    images = np.empty(group.order, dtype=np.int64)
    for i, a in enumerate(group.elements):
        b = compose(compose(sigma, a), sinv)
        if b not in group:
            raise NotAnAutomorphism("conjugate leaves A_X^0")
        images[i] = group.index(b)
    # generator images must be p(g * z)
    for z in range(n):
        if not np.array_equal(compose(compose(sigma, wc.p[z]), sinv), wc.p[sigma[z]]):
            raise NotAnAutomorphism("p(z) is not sent to p(g * z)")
    if len(set(images.tolist())) != group.order:
        raise NotAnAutomorphism("induced map is not bijective")
    return images
