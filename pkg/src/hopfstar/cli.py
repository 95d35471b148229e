"""
Command-line entry point.

    hopfstar validate <file>
    hopfstar construct <construction> --in <names> --out <file> [--workspace <dir>]
    hopfstar check <suite> [--workspace <dir>]
    hopfstar report --format {text,json}

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""

import argparse
import sys
from pathlib import Path

from . import io
from .errors import (
    AlgebraMismatch,
    CheckFailed,
    DimensionMismatch,
    HopfStarError,
    ParseError,
    ReferenceError,
    UnknownFixture,
)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_INPUT_ERRORS = (ParseError, ReferenceError, UnknownFixture, DimensionMismatch, AlgebraMismatch, OSError)

CONSTRUCTIONS = ("conjugate", "dual", "tensor", "hom", "tensor-algebra", "braiding", "adjoint", "two-out-of-three")


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


# -- validate -------------------------------------------------------------


def validate_object(kind, obj):
    """Run the verifier that matches an object's kind."""
    from .braid import verify_quasitriangular
    from .hmod import intertwining_defect, verify_module
    from .hopf import verify_hopf_star
    from .inner import verify_inner_product
    from .staralg import verify_module_algebra, verify_star_module

    if kind == "algebra":
        return verify_hopf_star(obj)
    if kind == "module":
        return verify_module(obj)
    if kind == "map":
        r = Report(f"module-map {obj.name}")
        bad = intertwining_defect(obj.matrix, obj.domain, obj.codomain)
        r.add("module map", bad is None, None if bad is None else {"basis": bad[0], "difference": bad[1]})
        return r
    if kind == "star":
        return verify_star_module(obj.module, obj.D)
    if kind == "gram":
        return verify_inner_product(obj.module, obj.G)
    if kind == "form":
        return _verify_form(obj)
    if kind == "rmatrix":
        return verify_quasitriangular(obj.algebra, obj)
    if kind == "module-algebra":
        return verify_module_algebra(obj)
    raise UsageError(f"nothing validates kind {kind!r}")


def _verify_form(h):
    from .hmod import is_module_map, tensor_module, trivial_module
    from .linalg import Matrix

    V = h.module
    n = V.dim
    row = Matrix([[h.G[p, q] for p in range(n) for q in range(n)]])
    r = Report(f"bilinear-form {h.name}")
    r.add("invariant", is_module_map(row, tensor_module(V, V), trivial_module(V.algebra)))
    r.add("non-degenerate", h.G.rank() == n)
    return r


def cmd_validate(args):
    path = Path(args.file)
    text = path.read_text()
    ws = io.Workspace(path.parent)
    kind, obj = io.parse_document(text, ws, str(path))
    return validate_object(kind, obj)


# -- construct ------------------------------------------------------------


def _need(names, k, construction):
    if len(names) != k:
        raise UsageError(f"{construction} takes {k} input name(s), got {len(names)}")
    return names


def construct(construction, names, ws, degree=2, side="left"):
    """Build a named construction; returns (kind, object, report)."""
    from .braid import braiding, conjugate_braiding
    from .conj import conjugate_module
    from .hmod import ModuleMap, hom_left, left_dual, right_dual, tensor_module, verify_module
    from .inner import InnerProduct, adjoint, two_out_of_three
    from .staralg import StarStructure, truncated_tensor_algebra, verify_module_algebra

    if construction == "conjugate":
        (v,) = _need(names, 1, construction)
        V = ws.resolve(v, "module")
        out = conjugate_module(V)
        out.name = f"bar({v})"
        return "module", out, verify_module(out)
    if construction == "dual":
        (v,) = _need(names, 1, construction)
        V = ws.resolve(v, "module")
        out = left_dual(V) if side == "left" else right_dual(V)
        out.name = f"{v}*" if side == "left" else f"*{v}"
        return "module", out, verify_module(out)
    if construction in ("tensor", "hom"):
        v, w = _need(names, 2, construction)
        V, W = ws.resolve(v, "module"), ws.resolve(w, "module")
        if construction == "tensor":
            out = tensor_module(V, W)
            out.name = f"{v}(x){w}"
        else:
            out = hom_left(V, W)
            out.name = f"Hom({v},{w})"
        return "module", out, verify_module(out)
    if construction == "tensor-algebra":
        (v,) = _need(names, 1, construction)
        V = ws.resolve(v, "module")
        T = truncated_tensor_algebra(V, degree)
        T.carrier.name = f"T<={degree}({v})"
        T.name = f"T<={degree}({v}) algebra"
        rep = verify_module_algebra(T, [(i, j) for i in range(T.dim) for j in range(T.dim) if T.admissible(i, j)])
        rep.note(f"tensor algebra truncated at degree {degree}")
        return "module-algebra", T, rep
    if construction == "braiding":
        rn, v, w = _need(names, 3, construction)
        R = ws.resolve(rn, "rmatrix")
        V, W = ws.resolve(v, "module"), ws.resolve(w, "module")
        dom, cod = tensor_module(V, W), tensor_module(W, V)
        dom.name, cod.name = f"{v}(x){w}", f"{w}(x){v}"
        rep = Report(f"braiding {rn} {v},{w}")
        conjugate_braiding(R, V, W, rep)
        m = ModuleMap(dom, cod, braiding(R, V, W), f"psi[{rn}]({v},{w})")
        rep.add("psi is a module map", m.is_module_map())
        return "map", m, rep
    if construction == "adjoint":
        t, gv, gw = _need(names, 3, construction)
        T = ws.resolve(t, "map")
        GV, GW = ws.resolve(gv, "gram"), ws.resolve(gw, "gram")
        if GV.module is not T.domain or GW.module is not T.codomain:
            raise ReferenceError("Gram matrices must live on the domain and codomain of the map")
        Td = adjoint(T.matrix, GV.G, GW.G)
        m = ModuleMap(T.codomain, T.domain, Td, f"{t}^dagger")
        rep = Report(f"adjoint {t}")
        rep.add("defining relation", Td.H @ GV.G == GW.G @ T.matrix)
        rep.add("module map iff the input is", m.is_module_map() == T.is_module_map())
        return "map", m, rep
    if construction == "two-out-of-three":
        given = {}
        for n in _need(names, 2, construction):
            given[ws.kind_of(n)] = ws.get(n)
        if set(given) - {"star", "gram", "form"} or len(given) != 2:
            raise UsageError("two-out-of-three takes two distinct inputs among star, gram and form")
        mods = {id(o.module) for o in given.values()}
        if len(mods) != 1:
            raise ReferenceError("two-out-of-three inputs must live on one module")
        V = next(iter(given.values())).module
        res = two_out_of_three(
            V,
            D=given["star"].D if "star" in given else None,
            G=given["gram"].G if "gram" in given else None,
            h=given["form"].G if "form" in given else None,
        )
        missing = ({"star", "gram", "form"} - set(given)).pop()
        key = ws._module_key(V)
        if missing == "star":
            out = StarStructure(V, res.D, f"{key}.star")
        else:
            out = InnerProduct(V, res.G if missing == "gram" else res.h, f"{key}.{missing}")
        return missing, out, res.report
    raise UsageError(f"unknown construction {construction!r}; choose from {', '.join(CONSTRUCTIONS)}")


def _dependencies(kind, obj):
    """Objects an output file refers to, as (kind, object) pairs."""
    if kind == "module":
        return [("algebra", obj.algebra)]
    if kind == "map":
        return [("module", obj.domain), ("module", obj.codomain)]
    if kind in ("star", "gram", "form"):
        return [("module", obj.module)]
    if kind == "module-algebra":
        return [("module", obj.carrier)]
    return []


def write_construction(kind, obj, out, ws):
    """
    Write obj to out.  Referenced objects that the output directory cannot
    resolve are written next to it, transitively.
    """
    out = Path(out)
    names = {id(o): n for n, o in ws.objects.items()}
    same_dir = ws.root is not None and out.parent.resolve() == ws.root.resolve()
    present = set(names) if same_dir else set()
    written = []

    def emit(k, o, path):
        refs = {}
        for dkind, dep in _dependencies(k, o):
            refs[id(dep)] = names.get(id(dep), dep.name)
            if id(dep) not in present:
                present.add(id(dep))
                emit(dkind, dep, out.parent / f"{_safe(refs[id(dep)])}.{dkind}.json")
        path.write_text(io.serialize(k, o, refs))
        written.append(path)

    emit(kind, obj, out)
    return written


def _safe(name):
    return "".join(c if c.isalnum() or c in "._-+" else "_" for c in name)


def cmd_construct(args):
    ws = _workspace(args.workspace, default_cwd=True)
    names = [n.strip() for part in args.inputs for n in part.split(",") if n.strip()]
    kind, obj, rep = construct(args.construction, names, ws, degree=args.degree, side=args.side)
    if rep.passed:
        for p in write_construction(kind, obj, args.out, ws):
            rep.note(f"wrote {p}")
    return rep


# -- check / report -------------------------------------------------------


def _workspace(where, default_cwd=False):
    """A directory, a shipped fixture name, or None."""
    if where is None:
        return io.Workspace(Path.cwd()) if default_cwd else None
    p = Path(where)
    if p.is_dir():
        return io.Workspace.load(p)
    try:
        d = io.shipped_dir() / io.workspace_dir_name(where)
    except UnknownFixture:
        raise ReferenceError(f"workspace {where!r} is neither a directory nor a shipped fixture") from None
    if not d.is_dir():
        raise ReferenceError(f"no shipped files for fixture {where!r}")
    return io.Workspace.load(d)


def _bundles(where):
    if where is None:
        out = []
        for d in io.shipped_workspaces():
            out.extend(io.Workspace.load(d).bundles())
        return out
    return _workspace(where).bundles()


def cmd_check(args):
    from .suites import SUITES, run_suite

    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    return run_suite(args.suite, _bundles(args.workspace))


def cmd_report(args):
    if args.source:
        return Report.from_json(Path(args.source).read_text())
    from .suites import run_suite

    return run_suite(args.suite, _bundles(args.workspace))


# -- main -----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="hopfstar", description="Exact checks for Hopf *-algebras and their modules.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="run the verifier matching a definition file")
    v.add_argument("file")
    v.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("construct", help="build a derived object and write it as a file")
    c.add_argument("construction", choices=CONSTRUCTIONS)
    c.add_argument("--in", dest="inputs", nargs="+", required=True, help="input names (space or comma separated)")
    c.add_argument("--out", required=True)
    c.add_argument("--workspace", help="directory of definition files (default: current directory)")
    c.add_argument("--degree", type=int, default=2, help="truncation degree for tensor-algebra")
    c.add_argument("--side", choices=("left", "right"), default="left", help="which dual to build")
    c.add_argument("--format", choices=("text", "json"), default="text")

    k = sub.add_parser("check", help="run a named proposition suite")
    k.add_argument("suite")
    k.add_argument("--workspace", help="directory or shipped fixture name (default: every shipped fixture)")
    k.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("report", help="run every suite and emit one document")
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.add_argument("--workspace")
    r.add_argument("--suite", default="all")
    r.add_argument("--from", dest="source", help="re-render a saved JSON report instead of running suites")
    r.add_argument("--out", help="write the document here instead of stdout")
    return p


_COMMANDS = {"validate": cmd_validate, "construct": cmd_construct, "check": cmd_check, "report": cmd_report}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        rep = _COMMANDS[args.command](args)
    except CheckFailed as e:
        rep = e.report
    except (UsageError, *_INPUT_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except HopfStarError as e:
        print(f"check failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    doc = rep.to_json() if args.format == "json" else rep.to_text()
    if getattr(args, "out", None) and args.command == "report":
        Path(args.out).write_text(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
