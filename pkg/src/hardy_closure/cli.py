"""Command-line front end.

Exit codes: 0 success, 2 input or parse error, 3 resource limit,
4 numeric evidence contradicts the symbolic verdict.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, List, Optional

from . import serialize
from .bergman_domains import ReinhardtDomain, ball_density_series, reinhardt_density_series
from .closure_engine import DEFAULT_DEGREES, DEFAULT_KS, classify, cross_validate
from .finite_codim import INFINITE, codimension, correspondence_check, stabilization_degree, truncate
from .hardy_oracle import density_diagnostic, fk_norm
from .ideal_engine import Ideal, ResourceLimitError, decompose
from .poly_core.parse import ParseError, format_poly, parse_poly, parse_poly_list
from .poly_core.poly import DomainError
from .variety_geometry import SearchConfig

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_CONFLICT = 4

DEFAULTS = {
    "format": "json",
    "threads": None,
    "radius_steps": 64,
    "angle_steps": 256,
    "margin": 1e-4,
    "degrees": "2:16:2",
    "ks": "2,4,8,16,32",
    "grid": 512,
    "terms": 10000,
    "variant": "prop41_plus1",
    "profile": "quick",
    "term_cap": 200000,
}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _range(text: str) -> List[int]:
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            lo, hi, step = parts
            if step <= 0:
                raise ValueError
            return list(range(lo, hi + 1, step))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad integer list {text!r}; use a:b[:step] or a,b,c")


def _point(text: str):
    try:
        parts = [complex(p.strip().replace("i", "j").replace(" ", "")) for p in text.split(",")]
    except ValueError:
        raise InputError(f"bad point {text!r}; use 'w1,w2'")
    if len(parts) != 2:
        raise InputError("a point needs exactly two coordinates")
    return tuple(parts)


def read_config(path: str) -> Dict[str, str]:
    """Flat ``key = value`` file; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}")
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="flat key = value defaults file")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS, help="write the report to a file")
    parser = _Parser(prog="hardy-closure", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def search_flags(p):
        p.add_argument("--radius-steps", dest="radius_steps", type=int, default=None)
        p.add_argument("--angle-steps", dest="angle_steps", type=int, default=None)
        p.add_argument("--margin", type=float, default=None)

    def ideal_input(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--ideal", help="semicolon-separated generators")
        g.add_argument("--file", help="UTF-8 file holding the generators")
        p.add_argument("--term-cap", dest="term_cap", type=int, default=None,
                       help="Groebner term-count limit (exit 3 when exceeded)")

    def poly_input(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--poly")
        g.add_argument("--file")

    p = sub.add_parser("classify", help="closed / dense / mixed verdict and closure")
    ideal_input(p)
    search_flags(p)
    p.add_argument("--degrees", default=None)
    p.add_argument("--ks", default=None)
    p.add_argument("--no-evidence", action="store_true")
    p.add_argument("--validate", action="store_true", help="cross-validate; exit 4 on conflict")

    p = sub.add_parser("decompose", help="curve factors and point components")
    ideal_input(p)

    p = sub.add_parser("density", help="Hardy distance sweep")
    poly_input(p)
    p.add_argument("--degrees", default=None)
    p.add_argument("--ks", default=None)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("fk", help="torus norms of the radial quotients")
    poly_input(p)
    p.add_argument("--ks", "--k", dest="ks", default=None)
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("codim", help="codimension and truncated subspaces")
    ideal_input(p)
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("reinhardt", help="density series on |z1|^p + |z2|^q < 1")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--variant", choices=["prop41_plus1", "lemma42_plus2"], default=None)

    p = sub.add_parser("ball", help="density series on the unit ball")
    p.add_argument("--point", required=True)
    p.add_argument("--terms", type=int, default=None)

    p = sub.add_parser("suite", help="run the acceptance criteria")
    p.add_argument("--profile", choices=["quick", "full"], default=None)
    p.add_argument("--corpus", default=None, help="file with one ideal per line")
    return parser


def _settings(args) -> dict:
    for key in ("format", "config", "threads", "output"):
        if not hasattr(args, key):
            setattr(args, key, None)
    cfg = read_config(args.config) if args.config else {}
    out = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in cfg:
            out[key] = type(default)(cfg[key]) if default is not None else cfg[key]
        else:
            out[key] = default
    env = os.environ.get("CLOSURE_CLI_THREADS")
    if args.threads is not None:
        out["threads"] = args.threads
    elif env:
        out["threads"] = env
    try:
        out["threads"] = int(out["threads"]) if out["threads"] is not None else (os.cpu_count() or 1)
    except ValueError:
        raise InputError("thread count must be an integer")
    if out["threads"] < 1:
        raise InputError("thread count must be positive")
    return out


def _read_text(args, name: str) -> str:
    if getattr(args, "file", None):
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}")
    return getattr(args, name)


def _ideal(args, s) -> Ideal:
    cap = int(s["term_cap"])
    if cap < 1:
        raise InputError("term cap must be positive")
    return Ideal(parse_poly_list(_read_text(args, "ideal")), cap)


def _search(s: dict) -> SearchConfig:
    return SearchConfig(radius_steps=int(s["radius_steps"]), angle_steps=int(s["angle_steps"]),
                        margin=float(s["margin"]))


def _text_lines(obj, indent=0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _cmd_classify(args, s):
    ideal = _ideal(args, s)
    degrees = _range(s["degrees"]) if s["degrees"] else list(DEFAULT_DEGREES)
    ks = _range(s["ks"]) if s["ks"] else list(DEFAULT_KS)
    rep = classify(ideal, _search(s), evidence=not args.no_evidence, degrees=degrees, ks=ks,
                   workers=s["threads"])
    validation = cross_validate(rep, degrees, ks) if args.validate else None
    code = EXIT_CONFLICT if validation is not None and validation.conflict else EXIT_OK
    return serialize.envelope("classify", serialize.report_dict(rep, validation)), code


def _cmd_decompose(args, s):
    ideal = _ideal(args, s)
    dec = decompose(ideal)
    points = []
    for pc in dec.point_components:
        points.append({"point": list(pc.point), "multiplicity": pc.multiplicity,
                       "ideal": pc.ideal.strings() if pc.ideal is not None else None,
                       "certified": pc.certified, "residual": pc.residual})
    payload = {
        "ideal": ideal.strings(),
        "principal": format_poly(dec.principal),
        "curve_factors": [{"factor": format_poly(f), "multiplicity": k} for f, k in dec.curve_factors],
        "residual_ideal": dec.residual_ideal.strings(),
        "points": points,
        "residual_flag": dec.residual_flag,
        "diagnostics": list(dec.diagnostics),
    }
    return serialize.envelope("decompose", payload), EXIT_OK


def _cmd_density(args, s):
    p = parse_poly(_read_text(args, "poly"))
    degrees = _range(s["degrees"])
    ks = _range(args.ks) if args.ks else []
    diag = density_diagnostic(p, degrees, ks, grid=int(s["grid"]))
    payload = {"poly": format_poly(p), "diagnostic": serialize.diagnostic_dict(diag),
               "strictly_decreasing": diag.strictly_decreasing()}
    return serialize.envelope("density", payload), EXIT_OK


def _cmd_fk(args, s):
    p = parse_poly(_read_text(args, "poly"))
    rows = []
    for k in _range(s["ks"]):
        r = fk_norm(p, k, int(s["grid"]))
        rows.append({"k": k, "norm": r.norm, "sup": r.sup, "min_denominator": r.min_denominator,
                     "grid": r.grid, "refined": r.refined})
    payload = {"poly": format_poly(p), "sup_bound": float(2 ** p.degree_in(0)), "rows": rows}
    return serialize.envelope("fk", payload), EXIT_OK


def _cmd_codim(args, s):
    ideal = _ideal(args, s)
    codim = codimension(ideal)
    payload = {"ideal": ideal.strings(), "codimension": codim}
    if codim != INFINITE:
        stab = stabilization_degree(ideal)
        d = args.degree if args.degree is not None else stab + 2
        payload["stabilization_degree"] = stab
        payload["truncated"] = [{"degree": k, "codim": truncate(ideal, k).codim} for k in range(d + 1)]
        try:
            payload["finite_codim"] = serialize.plain(correspondence_check(ideal, d))
        except DomainError as exc:
            payload["finite_codim"] = {"skipped": str(exc)}
    return serialize.envelope("codim", payload), EXIT_OK


def _cmd_reinhardt(args, s):
    dom = ReinhardtDomain(args.p, args.q)
    diag = reinhardt_density_series(dom, _point(args.point), int(s["terms"]), s["variant"])
    return serialize.envelope("reinhardt", serialize.series_dict(diag)), EXIT_OK


def _cmd_ball(args, s):
    diag = ball_density_series(_point(args.point), int(s["terms"]))
    return serialize.envelope("ball", serialize.series_dict(diag)), EXIT_OK


def _cmd_suite(args, s):
    from .acceptance import load_corpus, run_suite

    corpus = load_corpus(args.corpus) if args.corpus else None
    summary = run_suite(s["profile"], corpus=corpus)
    code = EXIT_OK if summary["passed"] else 1
    return serialize.envelope("suite", summary), code


COMMANDS = {
    "classify": _cmd_classify,
    "decompose": _cmd_decompose,
    "density": _cmd_density,
    "fk": _cmd_fk,
    "codim": _cmd_codim,
    "reinhardt": _cmd_reinhardt,
    "ball": _cmd_ball,
    "suite": _cmd_suite,
}


def _emit(payload: dict, fmt: str, out: Optional[str], stream) -> None:
    text = serialize.dumps(payload) if fmt == "json" else "\n".join(_text_lines(serialize.plain(payload)))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stream.write(text + "\n")


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        settings = _settings(args)
        fmt = settings["format"]
        payload, code = COMMANDS[args.command](args, settings)
        _emit(payload, fmt, args.output, stdout)
        return code
    except ParseError as exc:
        err = {"type": "parse", "message": str(exc), "line": exc.line, "column": exc.column}
        code = EXIT_INPUT
    except (InputError, DomainError) as exc:
        err = {"type": "input", "message": str(exc)}
        code = EXIT_INPUT
    except ResourceLimitError as exc:
        err = {"type": "resource", "message": str(exc)}
        code = EXIT_RESOURCE
    if fmt == "json":
        stderr.write(serialize.dumps(serialize.envelope("error", {"error": err})) + "\n")
    else:
        stderr.write(f"error: {err['message']}\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)
