"""JSON formats for solutions, linear/affine data and 7-tuples.

Writers produce plain dicts of ints and lists; ``dumps`` serializes them
compactly so equal values give equal bytes.
"""

import json

import numpy as np

from .cocycle import FiniteGroup, SevenTuple
from .core import BraidedMap
from .errors import MalformedInput, MalformedTable
from .linear import AffineSolution, LinearSolution
from .modmat import ModMatrix


def dumps(obj):
    return json.dumps(obj, separators=(",", ":"))


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise MalformedInput(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise MalformedInput(f"{what} is missing {', '.join(missing)}")


def _int(v, name):
    if isinstance(v, bool) or not isinstance(v, int):
        raise MalformedInput(f"{name} must be an integer")
    return v


# -- solutions ----------------------------------------------------------------

def solution_to_json(m):
    return {"n": m.n, "s": m.table()}


def solution_from_json(obj):
    _require(obj, ("n", "s"), "solution")
    n = _int(obj["n"], "n")
    s = obj["s"]
    if n < 1:
        raise MalformedTable("n must be positive")
    if (not isinstance(s, list) or len(s) != n
            or any(not isinstance(r, list) or len(r) != n for r in s)):
        raise MalformedTable(f"s must be an {n} x {n} array of pairs")
    for row in s:
        for e in row:
            if (not isinstance(e, list) or len(e) != 2
                    or any(isinstance(v, bool) or not isinstance(v, int) for v in e)):
                raise MalformedTable("every entry of s must be a pair of integers")
    return BraidedMap.from_table(s)


# -- linear / affine ------------------------------------------------------------

def _matrix(obj, key, m, k):
    rows = obj[key]
    if (not isinstance(rows, list) or len(rows) != k
            or any(not isinstance(r, list) or len(r) != k for r in rows)):
        raise MalformedInput(f"{key} must be a {k} x {k} integer matrix")
    for r in rows:
        for v in r:
            _int(v, key)
    return ModMatrix(rows, m)


def _vector(obj, key, k):
    v = obj[key]
    if not isinstance(v, list) or len(v) != k:
        raise MalformedInput(f"{key} must be a length-{k} integer vector")
    return [_int(x, key) for x in v]


def ring_from_json(obj):
    _require(obj, ("m", "k"), "linear data")
    m, k = _int(obj["m"], "m"), _int(obj["k"], "k")
    if m < 2 or k < 1:
        raise MalformedInput("need m >= 2 and k >= 1")
    return m, k


def matrices_from_json(obj, keys):
    m, k = ring_from_json(obj)
    _require(obj, keys, "linear data")
    return [_matrix(obj, key, m, k) for key in keys]


def linear_from_json(obj, check=True):
    """A LinearSolution, or an AffineSolution when zvec or tvec is given
    (a missing one of the two is taken as zero)."""
    m, k = ring_from_json(obj)
    a, b, c, d = matrices_from_json(obj, ("a", "b", "c", "d"))
    lin = LinearSolution(a, b, c, d, check=check)
    if "zvec" not in obj and "tvec" not in obj:
        return lin
    z = _vector(obj, "zvec", k) if "zvec" in obj else [0] * k
    t = _vector(obj, "tvec", k) if "tvec" in obj else [0] * k
    return AffineSolution(lin, z, t, check=check)


def linear_to_json(sol):
    lin = sol.linear if isinstance(sol, AffineSolution) else sol
    out = {"m": lin.m, "k": lin.k, "a": lin.a.tolist(), "b": lin.b.tolist(),
           "c": lin.c.tolist(), "d": lin.d.tolist()}
    if isinstance(sol, AffineSolution):
        out["zvec"] = sol.zvec.tolist()
        out["tvec"] = sol.tvec.tolist()
    return out


# -- 7-tuples -------------------------------------------------------------------

def _group(obj, name):
    _require(obj, ("order", "mul"), name)
    order = _int(obj["order"], f"{name}.order")
    mul = obj["mul"]
    if not isinstance(mul, list) or len(mul) != order:
        raise MalformedInput(f"{name}.mul must have {order} rows")
    try:
        arr = np.array(mul, dtype=np.int64)
    except (TypeError, ValueError):
        raise MalformedInput(f"{name}.mul must be an integer table") from None
    return FiniteGroup(arr)


def seven_tuple_from_json(obj):
    _require(obj, ("G", "A", "rhoGA", "pi", "X"), "7-tuple")
    G, A = _group(obj["G"], "G"), _group(obj["A"], "A")
    for key in ("rhoGA", "pi", "X"):
        if not isinstance(obj[key], list):
            raise MalformedInput(f"{key} must be a list")
    try:
        return SevenTuple(G, A, obj["rhoGA"], obj["pi"], obj["X"])
    except (TypeError, ValueError):
        raise MalformedInput("rhoGA, pi and X must be integer arrays") from None


def seven_tuple_to_json(t):
    return t.to_json()
