"""Command line entry point: ``braidlab <subcommand> [--in FILE] [--out FILE]``.

Input and output are JSON (JSON lines for ``enumerate``); ``-`` or a missing
path means stdin/stdout.  Exit codes: 0 success, 1 a checked predicate is
false, 2 malformed input or a failed precondition, reported on stdout as
{"error": code, "detail": message}.
"""

import argparse
import sys

from . import io
from .census import FILTERS, enumerate_solutions, write_census
from .cocycle import WordCocycle, seven_tuple_to_solution, verify_cocycle
from .core import (check_braided, check_involutive, check_nondegenerate,
                   derived_solution, validate_bijection)
from .errors import BraidlabError, InvariantViolation, MalformedInput
from .injectivity import injectivity_report
from .linear import (AffineSolution, LinearSolution, abd_violations,
                     affine_extend, affine_relations, check_linear_relations,
                     hat_solution, is_injective_affine, is_injective_linear,
                     kvec_of, linear_relations, materialize, pqz_from_abd, s_of)
from .quotients import quotient_report


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(args):
    if args.inp in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.inp) as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {args.inp}: {exc.strerror}") from None
    return io.loads(text)


def _emit(args, obj):
    text = io.dumps(obj) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


# -- subcommands; each returns (json object, exit code) ------------------------

def cmd_verify(args):
    m = io.solution_from_json(_read(args))
    bij = bool(validate_bijection(m))
    nd = bool(check_nondegenerate(m))
    br = bool(check_braided(m)) if bij else False
    out = {"bijective": bij, "nondegenerate": nd, "braided": br,
           "symmetric": bool(br and check_involutive(m))}
    return out, 0 if bij and nd and br else 1


def cmd_derive(args):
    m = io.solution_from_json(_read(args))
    return io.solution_to_json(derived_solution(m)), 0


def cmd_quotient(args):
    m = io.solution_from_json(_read(args))
    return quotient_report(m, cap=args.cap_group), 0


def cmd_inject(args):
    m = io.solution_from_json(_read(args))
    rep = injectivity_report(m, group_cap=args.cap_group)
    return rep, 0 if rep["injective"] else 1


def cmd_enumerate(args):
    if args.n is None:
        raise MalformedInput("--n is required")
    records = enumerate_solutions(args.n, args.filter, workers=args.workers,
                                  allow_n4=args.allow_n4)
    if args.out in (None, "-"):
        write_census(records, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            write_census(records, fh)
    return None, 0


def cmd_seven_tuple(args):
    obj = _read(args)
    try:
        t = io.seven_tuple_from_json(obj)
    except ValueError as exc:
        if isinstance(exc, BraidlabError):
            raise
        raise MalformedInput(str(exc)) from None
    try:
        m = seven_tuple_to_solution(t)
    except InvariantViolation as exc:
        return {"valid": False, "violation": str(exc)}, 1
    return io.solution_to_json(m), 0


def cmd_cocycle_check(args):
    """Three input shapes: a (G, A, rhoGA, pi) table set; a solution with a
    "word" to evaluate; or a bare solution, checked for consistency."""
    obj = _read(args)
    if isinstance(obj, dict) and "G" in obj:
        t = io.seven_tuple_from_json({**obj, "X": obj.get("X", [0])})
        ok = verify_cocycle(t.G, t.A, t.rhoGA, t.pi)
        return {"cocycle": ok}, 0 if ok else 1
    m = io.solution_from_json(obj)
    wc = WordCocycle(m, cap=args.cap_group)
    if "word" in obj:
        word = obj["word"]
        if (not isinstance(word, list)
                or any(not isinstance(w, list) or len(w) != 2 for w in word)):
            raise MalformedInput("word must be a list of [letter, +1 or -1] pairs")
        for x, e in word:
            if not (isinstance(x, int) and 0 <= x < m.n and e in (1, -1)):
                raise MalformedInput("word letters must lie in [0, n) with exponent +1 or -1")
        val = wc([(x, e) for x, e in word])
        return {"value": val.tolist(), "a0_index": wc.group.index(val)}, 0
    bad = wc.consistency_violations(max_len=args.max_len)
    return {"violations": bad, "max_len": args.max_len}, 0 if bad == 0 else 1


# -- linear ---------------------------------------------------------------------

def _linear_in(args, check=True):
    sol = io.linear_from_json(_read(args), check=check)
    return sol


def lin_check(args):
    sol = _linear_in(args, check=False)
    lin = sol.linear if isinstance(sol, AffineSolution) else sol
    rel = linear_relations(*lin.matrices)
    out = {"relations": rel, "b_invertible": lin.b.is_invertible(),
           "c_invertible": lin.c.is_invertible()}
    valid = check_linear_relations(*lin.matrices)
    if isinstance(sol, AffineSolution):
        arel = affine_relations(sol)
        out["affine_relations"] = arel
        valid = valid and all(arel.values())
    out["valid"] = valid
    if valid:
        out["injective"] = (is_injective_affine(sol) if isinstance(sol, AffineSolution)
                            else is_injective_linear(sol))
    return out, 0 if valid else 1


def lin_quad(args):
    lin = _linear_in(args)
    if isinstance(lin, AffineSolution):
        lin = lin.linear
    s = s_of(lin)
    return {"m": lin.m, "k": lin.k, "a": lin.a.tolist(), "b": lin.b.tolist(),
            "d": lin.d.tolist(), "s": s.tolist(), "injective": s.is_zero()}, 0


def lin_pqz(args):
    obj = _read(args)
    m, k = io.ring_from_json(obj)
    a, b, d = io.matrices_from_json(obj, ("a", "b", "d"))
    bad = abd_violations(a, b, d)
    if bad:
        raise InvariantViolation(f"triple condition fails: {bad[0]}")
    t = pqz_from_abd(a, b, d)
    return {"m": m, "k": k, "p": t.p.tolist(), "q": t.q.tolist(),
            "zauto": t.zauto.tolist()}, 0


def lin_hat(args):
    lin = _linear_in(args)
    if isinstance(lin, AffineSolution):
        lin = lin.linear
    return io.linear_to_json(hat_solution(lin)), 0


def lin_materialize(args):
    sol = _linear_in(args, check=False)
    return io.solution_to_json(materialize(sol, cap=args.cap_materialize)), 0


def lin_affine(args):
    """Linear data plus "zvec" and optional "kvec" -> the affine solution."""
    obj = _read(args)
    m, k = io.ring_from_json(obj)
    a, b, c, d = io.matrices_from_json(obj, ("a", "b", "c", "d"))
    lin = LinearSolution(a, b, c, d)
    z = io._vector(obj, "zvec", k) if "zvec" in obj else [0] * k
    kv = io._vector(obj, "kvec", k) if "kvec" in obj else [0] * k
    aff = affine_extend(lin, z, kv)
    out = io.linear_to_json(aff)
    out["kvec"] = kvec_of(aff).tolist()
    out["injective"] = is_injective_affine(aff)
    return out, 0


LINEAR = {"check": lin_check, "quad": lin_quad, "pqz": lin_pqz, "hat": lin_hat,
          "materialize": lin_materialize, "affine": lin_affine}


def build_parser():
    p = _Parser(prog="braidlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--in", dest="inp", default=None, help="input JSON path (default stdin)")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--cap-group", type=int, default=None)
        sp.add_argument("--cap-materialize", type=int, default=None)
        sp.set_defaults(func=fn)
        return sp

    add("verify", cmd_verify, "bijective / nondegenerate / braided / symmetric flags")
    add("derive", cmd_derive, "the derived solution S'")
    add("rank", cmd_quotient, "rank, quotient orders and ~-classes")
    add("quotient", cmd_quotient, "same report as rank")
    add("inject", cmd_inject, "injectivity via the M_X criterion")
    e = add("enumerate", cmd_enumerate, "census of solutions of size n as JSON lines")
    e.add_argument("--n", type=int, default=None)
    e.add_argument("--filter", choices=FILTERS, default="all")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--allow-n4", action="store_true")
    lin = add("linear", None, "linear and affine solutions on (Z/m)^k")
    lin.add_argument("action", choices=sorted(LINEAR))
    add("seven-tuple", cmd_seven_tuple, "build a solution from (G, A, rhoGA, pi, X)")
    cc = add("cocycle-check", cmd_cocycle_check, "cocycle identity or word cocycle checks")
    cc.add_argument("--max-len", type=int, default=3)
    return p


def run(argv=None):
    """Parse and dispatch; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
        fn = LINEAR[args.action] if args.command == "linear" else args.func
        obj, code = fn(args)
    except _UsageError as exc:
        obj, code = {"error": "usage", "detail": str(exc)}, 2
        args = argparse.Namespace(out=None)
    except BraidlabError as exc:
        obj, code = {"error": exc.code, "detail": str(exc)}, 2
    if code == 2:
        sys.stdout.write(io.dumps(obj) + "\n")
    elif obj is not None:
        _emit(args, obj)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
