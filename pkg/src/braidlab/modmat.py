"""Square matrices over Z/m.

Entries live in numpy int64 arrays reduced into [0, m).  Determinants are
taken exactly over the integers (fraction-free elimination on Python ints)
and then reduced, so invertibility is decided by gcd(det, m) == 1 and the
inverse comes from the adjugate.
"""

from math import gcd

import numpy as np

from .errors import ShapeMismatch


def _int_det(rows):
    """Bareiss determinant of a square list of Python ints."""
    a = [list(r) for r in rows]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for i in range(k - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if a[r][i]), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[k - 1][k - 1]


class ModMatrix:
    """A k x k matrix over Z/m.

    ``A @ B`` is the matrix product, ``+``/``-`` are entrywise, and an int on
    either side of ``+``/``-`` stands for that multiple of the identity, so
    ``1 - a`` reads as in the algebra.  ``A * c`` scales by an integer.
    """

    __slots__ = ("m", "k", "a")

    def __init__(self, entries, m):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatch(f"matrix must be square, got shape {arr.shape}")
        if not isinstance(m, (int, np.integer)) or m < 2:
            raise ShapeMismatch(f"modulus must be an integer >= 2, got {m!r}")
        self.m = int(m)
        self.k = arr.shape[0]
        self.a = arr % self.m
        self.a.setflags(write=False)

    @classmethod
    def _wrap(cls, arr, m):
        """Internal constructor for int64 square results of arithmetic."""
        obj = object.__new__(cls)
        obj.m, obj.k = m, arr.shape[0]
        obj.a = arr % m
        obj.a.setflags(write=False)
        return obj

    @classmethod
    def identity(cls, k, m):
        return cls(np.eye(k, dtype=np.int64), m)

    @classmethod
    def zero(cls, k, m):
        return cls(np.zeros((k, k), dtype=np.int64), m)

    @classmethod
    def scalar(cls, c, k, m):
        return cls(c * np.eye(k, dtype=np.int64), m)

    def _coerce(self, other):
        if isinstance(other, ModMatrix):
            if other.m != self.m or other.k != self.k:
                raise ShapeMismatch(
                    f"({self.k}, mod {self.m}) vs ({other.k}, mod {other.m})")
            return other.a
        if isinstance(other, (int, np.integer)):
            return np.diag(np.full(self.k, int(other), dtype=np.int64))
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else ModMatrix._wrap(self.a + b, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else ModMatrix._wrap(self.a - b, self.m)

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else ModMatrix._wrap(b - self.a, self.m)

    def __neg__(self):
        return ModMatrix._wrap(-self.a, self.m)

    def __mul__(self, c):
        if not isinstance(c, (int, np.integer)):
            return NotImplemented
        return ModMatrix._wrap(self.a * int(c), self.m)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, ModMatrix):
            self._coerce(other)
            return ModMatrix._wrap(self.a @ other.a, self.m)
        v = np.asarray(other, dtype=np.int64)
        if v.shape[-1] != self.k:
            raise ShapeMismatch(f"vector length {v.shape[-1]} does not match {self.k}")
        # works for a single vector or a stack of row vectors
        return (v @ self.a.T) % self.m

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ModMatrix.identity(self.k, self.m), self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return bool(np.array_equal(self.a, self._coerce(other) % self.m))
        if not isinstance(other, ModMatrix):
            return NotImplemented
        return self.m == other.m and self.k == other.k and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.m, self.k, self.a.tobytes()))

    def __repr__(self):
        return f"ModMatrix({self.tolist()}, m={self.m})"

    def tolist(self):
        return self.a.tolist()

    def is_zero(self):
        return not self.a.any()

    def det(self):
        return _int_det(self.a.tolist()) % self.m

    def is_invertible(self):
        return gcd(self.det(), self.m) == 1

    def adjugate(self):
        k, rows = self.k, self.a.tolist()
        if k == 1:
            return ModMatrix([[1]], self.m)
        adj = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                minor = [r[:j] + r[j + 1:] for t, r in enumerate(rows) if t != i]
                adj[j][i] = (-1) ** (i + j) * _int_det(minor)
        return ModMatrix(adj, self.m)

    def inverse(self):
        d = self.det()
        if gcd(d, self.m) != 1:
            raise ZeroDivisionError(f"matrix is not invertible mod {self.m}")
        return self.adjugate() * pow(d, -1, self.m)

    def commutes(self, other):
        return self @ other == other @ self


def block_diag(blocks, m):
    k = sum(b.k for b in blocks)
    out = np.zeros((k, k), dtype=np.int64)
    i = 0
    for b in blocks:
        out[i:i + b.k, i:i + b.k] = b.a
        i += b.k
    return ModMatrix(out, m)
