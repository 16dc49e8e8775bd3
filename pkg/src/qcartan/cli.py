"""Command-line front end: ``qcartan normalize | verify | matrix | cohomology``."""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .braiding import sigma, sigma_inv, sigma_tilde
from .expr import ExprSyntaxError, parse_element
from .linalg import Matrix
from .qcl import clifford
from .qext import cohomology, exterior
from .repn import trivial
from .scalar import SYMBOLIC, PointField, specialize
from .verify import SUITES, make_field, run

__all__ = ["main", "UnknownObject"]


class UnknownObject(LookupError):
    pass


class UsageError(ValueError):
    pass


def _point(args):
    """(q, c) as Fractions, or None for symbolic mode."""
    if args.q is None:
        if args.c is not None:
            raise UsageError("--c needs --q")
        return None
    try:
        q = Fraction(args.q)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--q must be a rational number, got {args.q!r}") from None
    if args.c is None:
        return q, Fraction(1)
    text = args.c.strip()
    try:
        return q, Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    if re.search(r"\bc\b", text):
        raise UsageError("--c may not refer to c itself")
    from .expr import parse_scalar

    return q, specialize(parse_scalar(text), q, 1)


def _algebra(name: str, field=SYMBOLIC):
    return {"ext": exterior, "cl": clifford}[name](field)


def _specialize_matrix(m: Matrix, point) -> Matrix:
    if point is None:
        return m
    return Matrix([[specialize(x, *point) for x in row] for row in m.data], PointField(*point))


# normalize

def cmd_normalize(args) -> int:
    point = _point(args)
    field = SYMBOLIC if point is None else make_field(*point)
    A = _algebra(args.algebra, field)
    el = parse_element(args.text, A)
    print(el)
    return 0


# verify

def cmd_verify(args) -> int:
    point = _point(args)
    field = make_field(*point) if point else SYMBOLIC
    report = run(args.suite, field)
    doc = report.to_dict()
    if args.json:
        text = json.dumps(doc, indent=2, sort_keys=True)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    if args.json != "-":
        for c in report.checks:
            line = f"{c.status.upper():4}  {c.id}"
            if c.status != "pass":
                line += f"  [{c.lhs}  vs  {c.rhs}]"
            print(line)
        for f in report.findings:
            flag = "agrees" if f.agrees else "DIFFERS"
            print(f"note  {f.id}: solved {f.solved}, displayed {f.displayed} ({flag})")
        n_pass = sum(c.status == "pass" for c in report.checks)
        print(f"{n_pass}/{len(report.checks)} checks passed in {report.timing['total_seconds']}s")
    return 0 if report.passed else 1


# matrix

_MATRIX_HELP = """objects:
  sigma M N | sigma-inv M N | sigma-tilde M N   with M, N in {V, Cl, Ext, V0}
  d-ext | d-cl
  iota(x)  with x in {v2, v0, vm2}; uses --algebra
  L(g)     with g in {E, F, K, Kinv, X, Z, Y, v2, v0, vm2}; uses --algebra"""


def _module(name: str):
    if name == "V":
        return clifford().V
    if name == "Cl":
        return clifford().module
    if name == "Ext":
        return exterior().module
    if name == "V0":
        return trivial()
    raise UnknownObject(f"unknown module {name!r}; choose from V, Cl, Ext, V0")


def build_matrix(obj: str, modules: list[str], algebra: str = "cl") -> tuple[Matrix, list[str], list[str]]:
    """The named operator with its column and row labels."""
    if obj in ("sigma", "sigma-inv", "sigma-tilde"):
        if len(modules) != 2:
            raise UnknownObject(f"{obj} needs two module names")
        M, N = (_module(m) for m in modules)
        op = {"sigma": sigma, "sigma-inv": sigma_inv, "sigma-tilde": sigma_tilde}[obj](M, N)
        cols = [f"{a}(x){b}" for a in M.labels for b in N.labels]
        rows = [f"{b}(x){a}" for b in N.labels for a in M.labels]
        return op.matrix, cols, rows
    if modules:
        raise UnknownObject(f"{obj} takes no module arguments")
    if obj in ("d-ext", "d-cl"):
        A = _algebra(obj[2:])
        labels = list(A.module.labels)
        return A.d, labels, labels
    m = re.fullmatch(r"(iota|L)\((\w+)\)", obj)
    if m:
        A = _algebra(algebra)
        labels = list(A.module.labels)
        kind, arg = m.groups()
        if kind == "iota":
            if arg not in ("v2", "v0", "vm2"):
                raise UnknownObject(f"iota needs v2, v0 or vm2, got {arg!r}")
            return A.iota(("v2", "v0", "vm2").index(arg)), labels, labels
        if arg not in ("E", "F", "K", "Kinv", "X", "Z", "Y", "v2", "v0", "vm2"):
            raise UnknownObject(f"unknown generator {arg!r}")
        return A.lie("k" if arg == "Kinv" else arg), labels, labels
    raise UnknownObject(f"unknown object {obj!r}")


def cmd_matrix(args) -> int:
    point = _point(args)
    mat, cols, rows = build_matrix(args.object, args.modules, args.algebra)
    mat = _specialize_matrix(mat, point)
    if args.json:
        doc = {
            "object": args.object,
            "modules": args.modules,
            "rows": rows,
            "columns": cols,
            "entries": [[str(x) for x in row] for row in mat.data],
        }
        print(json.dumps(doc, indent=2))
        return 0
    print(f"# {args.object} {' '.join(args.modules)}: {mat.rows}x{mat.cols}, column j is the image of basis j")
    print("# columns: " + ", ".join(cols))
    for label, row in zip(rows, mat.data):
        print(f"{label}: " + "  ".join(str(x) for x in row))
    return 0


# cohomology

def cmd_cohomology(args) -> int:
    point = _point(args)
    A = _algebra(args.algebra)
    D = _specialize_matrix(A.d, point)
    if args.algebra == "ext":
        H = cohomology(D, A.degrees())
        grading = "degree"
    else:
        H = cohomology(D, A.parities(), 2)
        grading = "parity"
    for g in sorted(H.dims):
        reps = [str(A.element(v)) for v in H.representatives[g]]
        print(f"{grading} {g}: dim H = {H.dims[g]}  (ker {H.kernel_dims[g]}, im {H.image_dims[g]})")
        for r in reps:
            print(f"    {r}")
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcartan", description="Exact calculus on the quantum exterior and Clifford algebras of sl2.")
    sub = p.add_subparsers(dest="command", required=True)

    def point_flags(sp):
        sp.add_argument("--q", help="rational value of q (default: symbolic)")
        sp.add_argument("--c", help="rational value of c, or an expression in q (default 1 when --q is given)")

    n = sub.add_parser("normalize", help="rewrite an expression in the monomial basis")
    n.add_argument("--algebra", choices=("ext", "cl"), default="cl")
    point_flags(n)
    n.add_argument("text")
    n.set_defaults(func=cmd_normalize)

    v = sub.add_parser("verify", help="run the identity checks")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    point_flags(v)
    v.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="print an operator", epilog=_MATRIX_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    m.add_argument("object")
    m.add_argument("modules", nargs="*")
    m.add_argument("--algebra", choices=("ext", "cl"), default="cl")
    point_flags(m)
    m.add_argument("--json", action="store_true", help="structured output")
    m.set_defaults(func=cmd_matrix)

    c = sub.add_parser("cohomology", help="cohomology of the differential")
    c.add_argument("--algebra", choices=("ext", "cl"), default="ext")
    point_flags(c)
    c.set_defaults(func=cmd_cohomology)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.text:
            print(f"  {e.text}\n  {' ' * e.position}^", file=sys.stderr)
        return 2
    except (UnknownObject, UsageError, ValueError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
