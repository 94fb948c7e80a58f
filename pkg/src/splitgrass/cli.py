"""Command line front end.

    splitgrass secant --variety grassmann --k 2 --N 6 --s 3
    splitgrass identify --n 2 --d 3 --poly "x1*(x0-x1)*(x1-x2)"
    splitgrass verify five-lines

Exit status is 0 on success, 1 when a verification fails and 2 for usage or
parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

from .checks import SCENARIOS, run_scenario
from .exactla import Field
from .grassmann import format_pluecker, parse_pluecker
from .polyalg import format_poly, parse_poly
from .terracini import VarietySpec, secant_dimension
from .verograss import identification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_range(text: str) -> list[int]:
    """``5`` or an inclusive range ``2:6``."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a:b, got {text!r}") from None


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--out", default=None, help="write output to this path instead of stdout")
    p.add_argument("--config", default=None, help="JSON file with default values for any flag")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splitgrass", description="Secant dimensions and Veronese-Grassmann identifications.")
    sub = parser.add_subparsers(dest="command", required=True)

    sec = sub.add_parser("secant", help="secant dimension by Terracini sampling")
    sec.add_argument("--variety", choices=("split", "veronese", "grassmann"), default=None)
    for flag in ("--n", "--d", "--k", "--N", "--s"):
        sec.add_argument(flag, type=_int_range, default=None)
    sec.add_argument("--trials", type=int, default=None)
    sec.add_argument("--confirm", type=int, default=None, help="rational re-checks of prime-field trials (default 3)")
    sec.add_argument("--bound", type=int, default=None)
    sec.add_argument("--field", type=_field, default=None, help="q or p:PRIME (default p:2147483647)")
    _common(sec)

    ide = sub.add_parser("identify", help="convert between a degree-d form and Plücker coordinates")
    ide.add_argument("--n", type=int, default=None)
    ide.add_argument("--d", type=int, default=None)
    group = ide.add_mutually_exclusive_group()
    group.add_argument("--poly", default=None, help="polynomial such as '-2*x1^3 + 6*x1^2*x2'")
    group.add_argument("--pluecker", default=None, help="'[p_{012}=1, ...]' or a plain ordered list")
    _common(ide)

    ver = sub.add_parser("verify", help="run a named verification scenario or 'all'")
    ver.add_argument("scenario")
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--d", type=int, default=None)
    ver.add_argument("--samples", type=int, default=None)
    ver.add_argument("--trials", type=int, default=None)
    ver.add_argument("--lambda", dest="lambda_values", type=Fraction, nargs="+", default=None)
    _common(ver)
    return parser


DEFAULTS = {
    "secant": {"trials": 20, "confirm": 3, "bound": 50, "seed": 0, "format": "json", "field": "p:2147483647"},
    "identify": {"n": 2, "d": 3, "seed": 0, "format": "json"},
    "verify": {"seed": 0, "format": "text"},
}


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge defaults, then the ``--config`` file, then explicit flags."""
    cfg = dict(DEFAULTS[args.command])
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        cfg.update(loaded)
    for key, val in vars(args).items():
        if key in ("config", "command") or val is None:
            continue
        cfg[key] = val
    cfg["command"] = args.command
    if isinstance(cfg.get("field"), str):
        cfg["field"] = _field(cfg["field"])
    for key in ("n", "d", "k", "N", "s"):
        if args.command == "secant" and isinstance(cfg.get(key), (int, str)):
            cfg[key] = _int_range(str(cfg[key]))
    return cfg


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Field):
        return x.descriptor
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _emit(cfg: dict, results: list, text: str | None = None, csv_text: str | None = None) -> str:
    fmt = cfg["format"]
    if fmt == "csv":
        if csv_text is None:
            raise UsageError("csv output is only available for secant reports")
        return csv_text
    if fmt == "text" and text is not None:
        return text
    config = {k: v for k, v in cfg.items() if k not in ("out", "format")}
    doc = {
        "command": cfg["command"],
        "config": _jsonable(config),
        "results": _jsonable(results),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ commands


def _secant_specs(cfg: dict) -> list[tuple[VarietySpec, int]]:
    variety = cfg.get("variety")
    if variety is None:
        raise UsageError("--variety is required")
    s_values = cfg.get("s")
    if not s_values:
        raise UsageError("--s is required")
    if variety == "grassmann":
        if not cfg.get("k") or not cfg.get("N"):
            raise UsageError("grassmann needs --k and --N")
        pairs = [(k, N) for k in cfg["k"] for N in cfg["N"]]
    else:
        if not cfg.get("n") or not cfg.get("d"):
            raise UsageError(f"{variety} needs --n and --d")
        pairs = [(n, d) for n in cfg["n"] for d in cfg["d"]]
    out = []
    for a, b in pairs:
        try:
            spec = VarietySpec(variety, a, b)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if spec.ambient_proj_dim > 2000:
            raise UsageError(f"{spec.label()} exceeds the supported ambient size")
        for s in s_values:
            if s < 1:
                raise UsageError("--s must be positive")
            out.append((spec, s))
    return out


def cmd_secant(cfg: dict) -> tuple[int, str]:
    if cfg["trials"] < 1 or cfg["bound"] < 1 or cfg["confirm"] < 0:
        raise UsageError("--trials and --bound must be positive, --confirm non-negative")
    cases = _secant_specs(cfg)
    reports = [
        secant_dimension(spec, s, trials=cfg["trials"], field=cfg["field"], seed=cfg["seed"], bound=cfg["bound"], confirm=cfg["confirm"])
        for spec, s in cases
    ]
    rows = [r.to_dict() for r in reports]
    lines = [
        f"{r.spec.label()} s={r.s}: computed {r.computed_proj_dim}, expected {r.expected_proj_dim}, "
        f"ambient {r.ambient_proj_dim}, {r.status}"
        for r in reports
    ]
    buf = io.StringIO()
    keys = ["variety", "n", "d", "k", "N", "s", "ambient_proj_dim", "expected_proj_dim", "computed_proj_dim", "defect_observed", "status", "trials", "confirm_trials", "field", "seed", "bound"]
    writer = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return EXIT_OK, _emit(cfg, rows, "\n".join(lines) + "\n", buf.getvalue())


def cmd_identify(cfg: dict) -> tuple[int, str]:
    n, d = cfg["n"], cfg["d"]
    try:
        ident = identification(n, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.get("poly"):
        try:
            f = parse_poly(cfg["poly"], n + 1)
        except ValueError as exc:
            raise UsageError(f"cannot parse polynomial: {exc}") from None
        if f.is_zero() or f.degree != d:
            raise UsageError(f"expected a nonzero form of degree {d}")
        pv = ident.inverse(f)
        result = {"input": format_poly(f), "pluecker": format_pluecker(pv), "pluecker_list": pv.as_list(), "pluecker_primitive": pv.primitive()}
        text = format_pluecker(pv)
    elif cfg.get("pluecker"):
        try:
            pv = parse_pluecker(cfg["pluecker"], n + d, d)
        except ValueError as exc:
            raise UsageError(f"cannot parse Plücker vector: {exc}") from None
        f = ident.apply(pv)
        result = {"input": format_pluecker(pv), "poly": format_poly(f)}
        text = format_poly(f)
    else:
        raise UsageError("identify needs --poly or --pluecker")
    return EXIT_OK, _emit(cfg, [result], text + "\n")


def cmd_verify(cfg: dict) -> tuple[int, str]:
    sid = cfg["scenario"]
    if sid != "all" and sid not in SCENARIOS:
        raise UsageError(f"unknown scenario {sid!r}; choose from: all, {', '.join(sorted(SCENARIOS))}")
    overrides = {k: cfg[k] for k in ("n", "d", "samples", "trials", "seed", "lambda_values") if cfg.get(k) is not None}
    try:
        results = run_scenario(sid, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [r.to_dict() for r in results]
    width = max(len(r.id) for r in results)
    lines = []
    for r in results:
        params = " ".join(f"{k}={_jsonable(v)}" for k, v in r.params.items())
        lines.append(f"{r.id.ljust(width)}  {r.verdict.upper():4}  {params}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} pass")
    code = EXIT_OK if passed == len(results) else EXIT_FAIL
    return code, _emit(cfg, rows, "\n".join(lines) + "\n")


COMMANDS = {"secant": cmd_secant, "identify": cmd_identify, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = resolve_config(args)
        code, output = COMMANDS[args.command](cfg)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
