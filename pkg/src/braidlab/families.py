"""Standard small solutions used as fixtures, CLI inputs and test oracles."""

from itertools import permutations

from .core import BraidedMap


def compose(p, q):
    """(p o q)(u) = p(q(u))."""
    return tuple(p[i] for i in q)


def invert(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def flip(n):
    return BraidedMap.from_function(n, lambda x, y: (y, x))


def identity_map(n):
    return BraidedMap.from_function(n, lambda x, y: (x, y))


def permutation_solution(b, c):
    """S(x, y) = (b(y), c(x)) for permutations b, c of {0..n-1}."""
    n = len(b)
    if len(c) != n:
        raise ValueError("b and c must have the same degree")
    return BraidedMap.from_function(n, lambda x, y: (b[y], c[x]))


def transpositions(k):
    """All transpositions of {0..k-1} as permutation tuples, in lexicographic order."""
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            p = list(range(k))
            p[i], p[j] = j, i
            out.append(tuple(p))
    return out


def conjugation_solution(elements):
    """S(x, y) = (x y x^-1, x) on a conjugation-closed set of permutations."""
    elements = [tuple(e) for e in elements]
    index = {e: i for i, e in enumerate(elements)}

    def s(i, j):
        x, y = elements[i], elements[j]
        return index[compose(compose(x, y), invert(x))], i

    return BraidedMap.from_function(len(elements), s,
                                    labels=tuple(map(str, elements)))


def conjugate_solution_s3():
    """The conjugate solution on the three transpositions of Sym(3)."""
    return conjugation_solution(transpositions(3))


def all_perms(n):
    return list(permutations(range(n)))


def commuting_pairs(n):
    perms = all_perms(n)
    return [(b, c) for b in perms for c in perms
            if compose(b, c) == compose(c, b)]
