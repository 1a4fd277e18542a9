"""Integer row lattices with exact Hermite-normal-form membership.

Rows are kept sparse (``{column: value}``) because the relation lattices
built for injectivity testing have at most four nonzero entries per
generator.  Insertion maintains an echelon basis with positive pivots using
extended-gcd row combinations, which are unimodular, so the span is exactly
preserved.
"""

import numpy as np


def _sparse(vec):
    if isinstance(vec, dict):
        return {int(j): int(v) for j, v in vec.items() if v}
    return {j: int(v) for j, v in enumerate(vec) if v}


def _axpy(target, coef, row):
    """target += coef * row, in place."""
    for j, v in row.items():
        w = target.get(j, 0) + coef * v
        if w:
            target[j] = w
        else:
            target.pop(j, None)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class IntLattice:
    """The Z-span of a list of integer vectors of length ``dim``."""

    def __init__(self, dim, rows=()):
        self.dim = dim
        self.rows = []
        self._basis = {}        # pivot column -> sparse row, pivot entry > 0
        self._reduced = True
        for r in rows:
            self.add(r)

    def add(self, vec):
        v = _sparse(vec)
        if any(not 0 <= j < self.dim for j in v):
            raise ValueError("vector has entries outside the ambient dimension")
        self.rows.append(dict(v))
        basis = self._basis
        while v:
            j = min(v)
            b = v[j]
            piv = basis.get(j)
            if piv is None:
                if b < 0:
                    v = {k: -w for k, w in v.items()}
                basis[j] = v
                self._reduced = False
                return
            a = piv[j]
            if b % a == 0:
                _axpy(v, -(b // a), piv)
                continue
            g, s, t = _xgcd(a, b)
            new_piv = {}
            _axpy(new_piv, s, piv)
            _axpy(new_piv, t, v)
            rest = {}
            _axpy(rest, a // g, v)
            _axpy(rest, -(b // g), piv)
            if new_piv[j] < 0:
                new_piv = {k: -w for k, w in new_piv.items()}
            basis[j] = new_piv
            self._reduced = False
            v = rest

    @property
    def rank(self):
        return len(self._basis)

    def _reduce_above(self):
        if self._reduced:
            return
        cols = sorted(self._basis)
        for j in cols:
            piv = self._basis[j]
            a = piv[j]
            for i in cols:
                if i >= j:
                    break
                row = self._basis[i]
                c = row.get(j, 0)
                if c < 0 or c >= a:
                    _axpy(row, -(c // a), piv)
        self._reduced = True

    @property
    def hnf(self):
        """Dense rows of the reduced row-style Hermite normal form."""
        self._reduce_above()
        out = []
        for j in sorted(self._basis):
            row = [0] * self.dim
            for k, w in self._basis[j].items():
                row[k] = w
            out.append(row)
        return out

    def __contains__(self, vec):
        v = _sparse(vec)
        basis = self._basis
        while v:
            j = min(v)
            piv = basis.get(j)
            if piv is None or v[j] % piv[j]:
                return False
            _axpy(v, -(v[j] // piv[j]), piv)
        return True

    contains = __contains__


# -- modules over Z/p^e --------------------------------------------------------

def _valuation(x, p, e):
    """p-adic valuation of each entry of x in Z/p^e (e for zero entries)."""
    v = np.zeros(x.shape, dtype=np.int64)
    rest = x.copy()
    nz = rest != 0
    v[~nz] = e
    for _ in range(e):
        step = nz & (rest % p == 0)
        if not step.any():
            break
        v[step] += 1
        rest[step] //= p
        nz = step
    return v


class ModuleModPE:
    """Row span of an integer matrix over Z/p^e, kept in Howell form.

    After every pivot p^v the row p^(e-v) * pivot is fed back, so reduction
    against the pivots decides membership exactly.
    """

    def __init__(self, rows, p, e):
        self.p, self.e, self.q = p, e, p ** e
        a = np.array(rows, dtype=np.int64) % self.q
        if a.ndim != 2:
            raise ValueError("rows must form a 2-d array")
        self.dim = a.shape[1]
        self.pivots = []                     # (column, exponent v, row)
        self._echelon(a)

    def _echelon(self, a):
        p, e, q = self.p, self.e, self.q
        for c in range(self.dim):
            if not a.shape[0]:
                break
            col = a[:, c]
            if not col.any():
                continue
            val = _valuation(col, p, e)
            i = int(np.argmin(val))
            v = int(val[i])
            piv = a[i].copy()
            unit = int(piv[c]) // p ** v
            piv = (piv * pow(unit, -1, q)) % q
            a = np.delete(a, i, axis=0)
            f = a[:, c] // p ** v
            a = (a - f[:, None] * piv[None, :]) % q
            if v:
                extra = (piv * p ** (e - v)) % q
                if extra.any():
                    a = np.vstack([a, extra[None, :]])
            a = a[a.any(axis=1)]
            self.pivots.append((c, v, piv))

    def __contains__(self, vec):
        w = np.array(vec, dtype=np.int64) % self.q
        for c, v, piv in self.pivots:
            if w[c] % self.p ** v:
                return False
            w = (w - (w[c] // self.p ** v) * piv) % self.q
        return not w.any()
