"""Command-line front end: ``sagalg [global options] COMMAND [options]``.

Every command prints one report (JSON or ``key: value`` text) whose values come
straight from the library functions. Exit codes: 1 parse or validation error,
2 unsupported algebra, 3 solver bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bondarenko, complexes, linhom, quiver, resolutions, walks
from .errors import ParseError, SagError, SolverBoundError, UnsupportedAlgebraError
from .field import field_from_spec
from .fixtures import DESCRIPTIONS, fixture

SCHEMA = "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _Session:
    def __init__(self, args):
        self.field = field_from_spec(args.field)
        if args.quiver in DESCRIPTIONS:
            self.A = fixture(args.quiver)
        else:
            self.A = quiver.load_bound_quiver(args.quiver)

    def walk(self, text):
        return walks.parse_walk(self.A, text)

    def paths(self, ps):
        return [str(p) for p in sorted(ps, key=self.A.key)]

    def complex_from(self, args):
        """Complex named by ``--string``, ``--band``/``--poly`` or ``--complex FILE``."""
        A = self.A
        if getattr(args, "complex", None):
            try:
                with open(args.complex, encoding="utf-8") as fh:
                    data = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ParseError(f"cannot read complex file {args.complex}: {exc}") from exc
            return complexes.ProjComplex.from_dict(A, data, self.field)
        if getattr(args, "band", None):
            if not args.poly:
                raise ParseError("--band needs --poly")
            f = complexes.IndecPoly.parse(args.poly, self.field)
            return complexes.band_complex(A, self.walk(args.band), f)
        if getattr(args, "string", None):
            s = args.string[0] if isinstance(args.string, list) else args.string
            return complexes.string_complex(A, self.walk(s), self.field)
        raise ParseError("give one of --string, --band or --complex")


# ------------------------------------------------------------------- commands
def cmd_classify(S, args):
    return quiver.classify(S.A).as_dict()


def cmd_paths(S, args):
    return {"paths": [str(p) for p in S.A.basis_paths], "dimension": len(S.A.basis_paths)}


def cmd_maximal(S, args):
    ok, wit = quiver.unique_maximal_arrow_property(S.A)
    out = {"maximal": [str(p) for p in S.A.maximal_paths], "unique_maximal_arrow": ok}
    if not ok:
        out["witness"] = {"arrow": wit[0],
                          "paths": [str(p) for p in wit[1:] if p is not None]}
    return out


def cmd_cyclic_sets(S, args):
    A = S.A
    return {"Qc": S.paths(resolutions.cyclic_arrows_Qc(A)),
            "Qc_star": S.paths(resolutions.cyclic_arrows_Qc_star(A)),
            "Pac": S.paths(resolutions.cyclic_paths_Pac(A))}


def cmd_strings(S, args):
    ws = walks.enumerate_generalized_strings(S.A, args.max_letters)
    return {"count": len(ws), "strings": [walks.format_walk(w) for w in ws]}


def cmd_bands(S, args):
    ws = walks.enumerate_generalized_bands(S.A, args.max_letters)
    return {"count": len(ws), "bands": [walks.format_walk(w) for w in ws]}


def cmd_complex(S, args):
    return S.complex_from(args).to_dict(S.A)


def cmd_verify(S, args):
    C = S.complex_from(args)
    rep = complexes.verify_complex(S.A, C)
    return {"ok": rep.ok, "failures": rep.failures}


def cmd_resolve(S, args):
    C = S.complex_from(args)
    return resolutions.resolve(S.A, C, max_steps=args.max_steps).as_dict()


def cmd_periodic(S, args):
    w = S.walk(args.string)
    return {"string": walks.format_walk(w),
            "special_sets": resolutions.special_set_membership(S.A, w).as_dict(),
            "periodic": resolutions.is_periodic_string_complex(S.A, w)}


def cmd_gldim(S, args):
    return resolutions.global_dimension(S.A).as_dict()


def cmd_bondarenko(S, args):
    lo, hi = args.window
    P = bondarenko.build_poset(S.A, (lo, hi))
    out = {"poset": P.describe()}
    if args.of_string:
        w = S.walk(args.of_string)
        C = complexes.string_complex(S.A, w, S.field)
        B = bondarenko.functor_F_obj(S.A, C, P)
        out["matrix"] = B.to_dict()
        out["violations"] = B.violations()
        out["rho"] = bondarenko.format_y_word(P, bondarenko.rho(S.A, w, 0, P))
    return out


def cmd_endo(S, args):
    C = S.complex_from(args)
    E = linhom.end_algebra(S.A, C)
    return {"dimension": E.dim, "radical_dimension": len(E.radical()),
            "indecomposable": linhom.is_indecomposable(S.A, C)}


def cmd_iso(S, args):
    if len(args.string) != 2:
        raise ParseError("iso needs exactly two --string options")
    C, D = (complexes.string_complex(S.A, S.walk(s), S.field) for s in args.string)
    return {"strings": list(args.string),
            "hom_dimensions": [linhom.hom_space(S.A, C, D).dimension,
                               linhom.hom_space(S.A, D, C).dimension],
            "isomorphic": linhom.are_isomorphic(S.A, C, D)}


COMMANDS = {
    "classify": cmd_classify, "paths": cmd_paths, "maximal": cmd_maximal,
    "cyclic-sets": cmd_cyclic_sets, "strings": cmd_strings, "bands": cmd_bands,
    "complex": cmd_complex, "verify": cmd_verify, "resolve": cmd_resolve,
    "periodic": cmd_periodic, "gldim": cmd_gldim, "bondarenko": cmd_bondarenko,
    "endo": cmd_endo, "iso": cmd_iso,
}


def _complex_options(p, string=True):
    if string:
        p.add_argument("--string", metavar="W", help="generalized string")
    p.add_argument("--band", metavar="W", help="generalized band")
    p.add_argument("--poly", metavar="F", help="coefficients low to high, leading 1 included")
    p.add_argument("--complex", metavar="FILE", help="complex in JSON form")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sagalg", description="String almost gentle algebra toolkit.")
    p.add_argument("--quiver",
                   help="quiver JSON file or built-in fixture name (" + ", ".join(DESCRIPTIONS) + ")")
    p.add_argument("--field", default="QQ", help="QQ or a prime p (default QQ)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    # the global options are accepted after the command name as well
    common = _Parser(add_help=False)
    common.add_argument("--quiver", default=argparse.SUPPRESS)
    common.add_argument("--field", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name):
        return sub.add_parser(name, parents=[common])
    for name in ("classify", "paths", "maximal", "cyclic-sets", "gldim"):
        add(name)
    for name in ("strings", "bands"):
        sp = add(name)
        sp.add_argument("--max-letters", type=int, required=True)
    _complex_options(add("complex"))
    _complex_options(add("verify"))
    sp = add("resolve")
    _complex_options(sp)
    sp.add_argument("--max-steps", type=int, default=64)
    sp = add("periodic")
    sp.add_argument("--string", required=True, metavar="W")
    sp = add("bondarenko")
    sp.add_argument("--window", type=int, nargs=2, required=True, metavar=("LO", "HI"))
    sp.add_argument("--of-string", metavar="W")
    _complex_options(add("endo"))
    sp = add("iso")
    sp.add_argument("--string", action="append", required=True, metavar="W")
    return p


# ------------------------------------------------------------------- rendering
def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        if not value:
            yield f"{prefix}: {{}}"
        for k, v in value.items():
            yield from _text_lines(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            yield from _text_lines(v, f"{prefix}[{i}]")
    elif isinstance(value, list):
        yield f"{prefix}: " + ", ".join(_scalar(v) for v in value)
    else:
        yield f"{prefix}: {_scalar(value)}"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_text_lines(report))


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the command and return ``(exit status, output)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "quiver", None):
        parser.error("--quiver is required")
    try:
        S = _Session(args)
        result = COMMANDS[args.command](S, args)
    except UnsupportedAlgebraError as exc:
        return 2, f"error: {exc}"
    except SolverBoundError as exc:
        return 3, f"error: {exc}"
    except (SagError, ValueError, KeyError) as exc:
        return 1, f"error: {exc}"
    report = {"schema": SCHEMA, "command": args.command, "field": S.field.name,
              "result": result}
    return 0, render(report, args.format)


def main(argv=None) -> int:
    status, out = run(argv)
    print(out, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
