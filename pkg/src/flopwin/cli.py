"""Command-line entry point.

Subcommands cover presentation ingestion (bundled fixture name or JSON file),
the polyhedral and window computations, quiver representation checks, graded
algebra queries, cohomology multiplicities, the named verification suites and
SVG figure emission.

Exit codes: 0 success, 1 a computation ran and reported failure, 2 usage or
input error.  Stdout carries only the deterministic payload; timing lines go
to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import cohomology, ncalg, verify
from .figures import emit_figures
from .lattice import GitPresentation
from .quiver import QuiverRep, base_equation, base_map, is_semistable, relations_hold, stratum
from .windows import FaceRef, big_window, kappa_generators, window
from .zonotope import skms


class InputError(ValueError):
    """Bad user input (file contents, flag values); reported with exit 2."""


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _load_presentation(source: str) -> GitPresentation:
    """Resolve a presentation argument: a file path or a bundled fixture name."""
    if os.path.exists(source):
        return GitPresentation.from_dict(_read_json(source))
    from importlib.resources import files

    res = files("flopwin.fixtures").joinpath(source)
    if not res.is_file():
        raise InputError(f"no such file or bundled fixture: {source}")
    try:
        data = json.loads(res.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return GitPresentation.from_dict(data)


def _default_degree(fallback: int) -> int:
    raw = os.environ.get("FLOPWIN_MAX_DEGREE")
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"FLOPWIN_MAX_DEGREE must be an integer, got {raw!r}") from None
    if value < 0:
        raise InputError("FLOPWIN_MAX_DEGREE must be nonnegative")
    return value


def _resolve_degree(args, fallback: int) -> int:
    if args.max_degree is not None:
        if args.max_degree < 0:
            raise InputError("--max-degree must be nonnegative")
        return args.max_degree
    return _default_degree(fallback)


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _rat(value: Fraction):
    return int(value) if value.denominator == 1 else str(value)


def _rat_tree(value):
    if isinstance(value, Fraction):
        return _rat(value)
    return [_rat_tree(v) for v in value]


def _cmd_skms(args) -> int:
    p = _load_presentation(args.input)
    _emit(skms(p).to_jsonable())
    return 0


def _cmd_windows(args) -> int:
    p = _load_presentation(args.input)
    try:
        ref = FaceRef.parse(args.face)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    win = big_window(p, ref) if ref.kind == "D" else window(p, ref)
    if args.json:
        _emit(win.to_jsonable())
    else:
        print(win.render())
    return 0


def _cmd_kappa(args) -> int:
    p = _load_presentation(args.input)
    try:
        gens = kappa_generators(p, FaceRef.parse(args.wall), FaceRef.parse(args.chamber))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = [
        {
            "chi_class": list(g.chi_class),
            "cocharacter": list(g.cocharacter),
            "b_weight": list(g.b_weight),
            "chi_name": g.chi_name,
            "object": g.object_name,
        }
        for g in gens
    ]
    _emit(payload)
    return 0


def _cmd_quiver_check(args) -> int:
    try:
        rep = QuiverRep.from_dict(_read_json(args.rep))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{args.rep}: {exc}") from None
    ok, residuals = relations_hold(rep)
    payload: dict = {"stability": args.stability, "relations_hold": ok}
    if not ok:
        payload["residuals"] = {k: _rat_tree(v) for k, v in residuals.items()}
        _emit(payload)
        return 1
    point = base_map(rep)
    payload["semistable"] = is_semistable(rep, args.stability)
    payload["stratum"] = stratum(rep)
    payload["base_point"] = point.to_dict()
    payload["base_equation"] = _rat(base_equation(point))
    _emit(payload)
    return 0


def _cmd_ncalg_hilbert(args) -> int:
    try:
        pres = ncalg.catalog(args.algebra)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    d = _resolve_degree(args, 12)
    _emit({"algebra": args.algebra, "max_degree": d, "dims": ncalg.hilbert(pres, d)})
    return 0


def _cmd_ncalg_normal_form(args) -> int:
    try:
        pres = ncalg.catalog(args.algebra)
        expr = ncalg.parse_expr(pres, args.expr)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    degree = max((pres.word_degree(w) for w in expr), default=0)
    cutoff = max(_resolve_degree(args, 12), degree)
    rs = ncalg.completed(pres, cutoff)
    print(pres.render(rs.normal_form(expr)))
    return 0


def _parse_irrep(text: str) -> tuple[int, int]:
    if "," in text:
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 2:
            raise InputError("irrep label must be 'p,q' or a representation name")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"irrep label {text!r} is not an integer pair") from None
        if p < q:
            raise InputError("irrep label must satisfy p >= q")
        return (p, q)
    try:
        return cohomology.irrep_from_name(text.strip())
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _cmd_coh_multiplicity(args) -> int:
    label = _parse_irrep(args.irrep)
    names = [part.strip() for part in args.sym.split(",") if part.strip()]
    if not names:
        raise InputError("--sym needs at least one summand name")
    d = _resolve_degree(args, 15)
    try:
        graded = cohomology.sym_graded(names, d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {
        "irrep": list(label),
        "max_degree": d,
        "multiplicities": cohomology.multiplicity(label, graded),
        "sym": names,
    }
    _emit(payload)
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    for res in results:
        print(f"{res.name}: {res.elapsed:.3f}s", file=sys.stderr)
    payload = {
        "suite": args.suite,
        "checks": [
            {"name": res.name, "pass": res.ok, "details": res.details} for res in results
        ],
        "overall": all(res.ok for res in results),
    }
    _emit(payload)
    return 0 if payload["overall"] else 1


def _cmd_figures(args) -> int:
    p = _load_presentation(args.input)
    try:
        paths = emit_figures(args.out_dir, p)
    except OSError as exc:
        raise InputError(f"{args.out_dir}: {exc.strerror or exc}") from None
    _emit({"files": paths})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flopwin",
        description="Exact window, stability and graded-algebra computations "
        "for a reductive GIT presentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--input",
            default="universal_flop_length2.json",
            help="presentation JSON file or bundled fixture name "
            "(default: universal_flop_length2.json)",
        )

    p_skms = sub.add_parser("skms", help="hyperplane-arrangement descriptor as JSON")
    add_input(p_skms)
    p_skms.set_defaults(handler=_cmd_skms)

    p_win = sub.add_parser("windows", help="window generators for a face (C:j or D:j)")
    p_win.add_argument("--face", required=True, help="face reference, e.g. C:0 or D:-1")
    p_win.add_argument("--json", action="store_true", help="emit JSON instead of text")
    add_input(p_win)
    p_win.set_defaults(handler=_cmd_windows)

    p_kappa = sub.add_parser("kappa", help="wall-subcategory generators for a wall/chamber pair")
    p_kappa.add_argument("--wall", required=True, help="wall face, e.g. D:-1")
    p_kappa.add_argument("--chamber", required=True, help="adjacent chamber, e.g. C:0")
    add_input(p_kappa)
    p_kappa.set_defaults(handler=_cmd_kappa)

    p_quiver = sub.add_parser("quiver", help="quiver representation checks")
    quiver_sub = p_quiver.add_subparsers(dest="quiver_command", required=True)
    p_check = quiver_sub.add_parser("check", help="relations, stability and base point")
    p_check.add_argument("--rep", required=True, help="representation JSON file")
    p_check.add_argument(
        "--stability", default="theta1", choices=("theta1", "theta2"),
        help="stability chamber (default: theta1)",
    )
    p_check.set_defaults(handler=_cmd_quiver_check)

    p_ncalg = sub.add_parser("ncalg", help="graded algebra queries")
    ncalg_sub = p_ncalg.add_subparsers(dest="ncalg_command", required=True)
    p_hilbert = ncalg_sub.add_parser("hilbert", help="graded dimensions of a catalog algebra")
    p_hilbert.add_argument("--algebra", required=True, help="catalog name, e.g. acon")
    p_hilbert.add_argument("--max-degree", type=int, default=None)
    p_hilbert.set_defaults(handler=_cmd_ncalg_hilbert)
    p_nf = ncalg_sub.add_parser("normal-form", help="normal form of an expression")
    p_nf.add_argument("--algebra", required=True, help="catalog name, e.g. acon")
    p_nf.add_argument("--expr", required=True, help="e.g. \"t*(beta*gamma - gamma*beta)\"")
    p_nf.add_argument("--max-degree", type=int, default=None)
    p_nf.set_defaults(handler=_cmd_ncalg_normal_form)

    p_coh = sub.add_parser("coh", help="equivariant cohomology queries")
    coh_sub = p_coh.add_subparsers(dest="coh_command", required=True)
    p_mult = coh_sub.add_parser("multiplicity", help="irreducible multiplicity in a Sym algebra")
    p_mult.add_argument("--irrep", required=True, help="name (e.g. Vstar) or pair \"p,q\"")
    p_mult.add_argument("--sym", required=True, help="comma-separated summands, e.g. V,S2Vm1,S2Vm1")
    p_mult.add_argument("--max-degree", type=int, default=None)
    p_mult.set_defaults(handler=_cmd_coh_multiplicity)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument(
        "--suite", default="all", choices=tuple(sorted(verify.SUITES)),
        help="suite name (default: all)",
    )
    p_verify.set_defaults(handler=_cmd_verify)

    p_fig = sub.add_parser("figures", help="write the three SVG figures")
    p_fig.add_argument("--out-dir", required=True, help="output directory")
    add_input(p_fig)
    p_fig.set_defaults(handler=_cmd_figures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0 if exc.code is None else 2
    start = time.perf_counter()
    try:
        code = args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"{args.command}: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
