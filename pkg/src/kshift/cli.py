"""Command-line interface: compute, expand, verify, enumerate.

Exit codes: 0 success (PASS / all-MATCH), 1 mathematical mismatch (FAIL,
MISMATCH, or a nonzero expansion residual), 2 usage errors, 3 resource limits.
Configuration comes from flags, then KSHIFT_* environment variables, then an
optional key=value config file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import genfun, identities
from .cache import CACHE
from .errors import (
    InvalidShapeError,
    KshiftError,
    NonSymmetricError,
    ParameterError,
    ResourceLimitError,
)
from .polyring import BetaPoly
from .shapes import EMPTY, SkewShape, StrictPartition, straight
from .tableaux import FAMILIES, iter_tableaux

FUNCS = ("P", "Q", "GP", "GQ", "gp", "gq", "jp", "jq", "JP", "JQ", "schur")


def _load_config(path: str | None) -> dict:
    config: dict = {}
    if path and os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#") or "=" not in line:
                    continue
                k, _, v = line.partition("=")
                config[k.strip()] = v.strip()
    return config


def _resolve_settings(args) -> dict:
    config = _load_config(getattr(args, "config", None))
    cache_dir = (
        getattr(args, "cache_dir", None)
        or os.environ.get("KSHIFT_CACHE_DIR")
        or config.get("cache_dir")
    )
    jobs = (
        getattr(args, "jobs", None)
        or _maybe_int(os.environ.get("KSHIFT_JOBS"))
        or _maybe_int(config.get("jobs"))
        or 1
    )
    if jobs < 1:
        raise ParameterError("jobs must be >= 1")
    fmt = getattr(args, "format", None) or config.get("format") or "text"
    return {"cache_dir": cache_dir, "jobs": jobs, "format": fmt, "config": config}


def _maybe_int(text) -> int | None:
    try:
        return int(text) if text is not None else None
    except ValueError:
        return None


def _parse_shape(args) -> SkewShape:
    outer = StrictPartition.parse(args.outer)
    inner = StrictPartition.parse(args.inner) if args.inner else EMPTY
    return SkewShape(outer, inner)


def _compute_poly(args) -> BetaPoly:
    func = args.func
    nvars = args.vars
    max_deg = args.max_deg
    if func == "schur":
        lam = tuple(int(t) for t in args.outer.split(",")) if args.outer else ()
        return genfun.schur(lam, nvars, max_deg)
    shape = _parse_shape(args)
    if func in ("P", "Q"):
        return genfun.classical_pq(func, shape, nvars, max_deg)
    if func in ("GP", "GQ"):
        if args.doubleslash:
            return genfun.gp_gq_doubleslash(func, shape.outer, shape.inner, nvars, max_deg)
        return genfun.gp_gq(func, shape, nvars, max_deg)
    if func in ("gp", "gq"):
        if shape.inner.parts:
            poly = genfun.dual_skew(func, shape.outer, shape.inner, nvars)
        else:
            poly = genfun.dual_gp_gq(func, shape.outer, nvars)
        return poly.truncated(max_deg)
    if func in ("jp", "jq"):
        return genfun.jp_jq(func, shape.outer, shape.inner, nvars, max_deg)
    if func in ("JP", "JQ"):
        return genfun.cap_jp_jq(
            func, shape.outer, shape.inner, nvars, max_deg, doubleslash=args.doubleslash
        )
    raise ParameterError(f"unknown function {func!r}")


def _print_poly(poly: BetaPoly, fmt: str, beta: str | None) -> None:
    if beta is not None:
        value = Fraction(beta)
        special = poly.specialize_beta(value)
        items = sorted(special.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        if fmt == "json":
            print(
                json.dumps(
                    {
                        "vars": poly.nvars,
                        "beta": str(value),
                        "terms": [
                            {"exps": list(e), "coeff": str(c)} for e, c in items
                        ],
                    },
                    sort_keys=True,
                )
            )
        else:
            bits = []
            for e, c in items:
                mono = "*".join(
                    f"x{i}^{k}" if k > 1 else f"x{i}"
                    for i, k in enumerate(e, start=1)
                    if k
                )
                bits.append(f"{c}" + (f"*{mono}" if mono else ""))
            print(" + ".join(bits) if bits else "0")
        return
    print(json.dumps(poly.to_json_obj(), sort_keys=True) if fmt == "json" else poly.render())


def cmd_compute(args, settings) -> int:
    poly = _compute_poly(args)
    _print_poly(poly, settings["format"], args.beta)
    return 0


def cmd_expand(args, settings) -> int:
    ns = argparse.Namespace(
        func=args.target,
        outer=args.outer,
        inner=args.inner,
        doubleslash=args.doubleslash,
        vars=args.vars,
        max_deg=args.max_deg,
    )
    poly = _compute_poly(ns)
    expansion = genfun.expand_in_basis(poly, args.basis)
    obj = expansion.to_json_obj()
    if settings["format"] == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        for entry in obj["coeffs"]:
            print(f"{entry['index'] or '()'}: beta-coeffs {entry['beta']}")
        print(f"residual_zero: {obj['residual_zero']}")
    return 0 if expansion.residual_zero else 1


_VERIFY_PARAMS = (
    "max_size",
    "nvars",
    "max_deg",
    "max_part",
    "nx",
    "ny",
    "trials",
    "seed",
    "max_power",
    "skew_max_size",
    "length_cap_size",
)


def cmd_verify(args, settings) -> int:
    reports = []
    if args.manifest:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            records = json.load(fh)
        reports = identities.run_manifest(records, jobs=settings["jobs"])
    else:
        if not args.id:
            raise ParameterError("verify needs --id or --manifest")
        params = {}
        for name in _VERIFY_PARAMS:
            value = getattr(args, name, None)
            if value is not None:
                params[name] = value
        import inspect

        check = identities.CHECKS.get(args.id)
        if check is not None and "jobs" in inspect.signature(check).parameters:
            params.setdefault("jobs", settings["jobs"])
        reports = [identities.run_check(args.id, **params)]
    worst = 0
    for report in reports:
        if settings["format"] == "json":
            print(report.to_json())
        else:
            print(f"{report.id}: {report.status} ({report.cases} cases)")
            if report.witness:
                print(f"  witness: {json.dumps(report.witness, sort_keys=True)[:400]}")
        if report.status in ("FAIL", "MISMATCH"):
            worst = max(worst, 1)
        elif report.status == "ERROR":
            worst = max(worst, 2)
    return worst


def cmd_enumerate(args, settings) -> int:
    family = args.family.lower().replace("-", "_")
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {args.family!r}")
    shape = _parse_shape(args)
    stream = iter_tableaux(family, shape, args.max_value, args.deg_cap)
    if args.count_only:
        print(sum(1 for _ in stream))
    else:
        for t in stream:
            print(t.text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps subparser defaults from clobbering globals given earlier
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", help="directory for the persistent memo cache")
    common.add_argument("--no-cache", action="store_true", help="disable all caching")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--jobs", type=int, help="worker count for sweeps")
    parser = argparse.ArgumentParser(
        prog="kshift",
        description="Exact calculus for K-theoretic Schur P/Q functions.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="evaluate one generating function", parents=[common])
    pc.add_argument("--func", required=True, choices=FUNCS)
    pc.add_argument("--outer", required=True, help='outer shape, e.g. "4,2,1" ("" for empty)')
    pc.add_argument("--inner", default="", help="inner shape for skew functions")
    pc.add_argument("--doubleslash", action="store_true", help="use the double-slash variant")
    pc.add_argument("--vars", type=int, default=3)
    pc.add_argument("--max-deg", type=int, default=8, dest="max_deg")
    pc.add_argument("--beta", help="specialize beta to this rational after computing")

    pe = sub.add_parser("expand", help="expand one function in a basis", parents=[common])
    pe.add_argument("--target", required=True, choices=FUNCS)
    pe.add_argument("--basis", required=True, choices=("schur", "P", "Q", "GP", "GQ", "gp", "gq", "jp", "jq"))
    pe.add_argument("--outer", required=True)
    pe.add_argument("--inner", default="")
    pe.add_argument("--doubleslash", action="store_true")
    pe.add_argument("--vars", type=int, default=3)
    pe.add_argument("--max-deg", type=int, default=8, dest="max_deg")

    pv = sub.add_parser("verify", help="run a registered identity check", parents=[common])
    pv.add_argument("--id", choices=sorted(identities.CHECKS))
    pv.add_argument("--manifest", help="JSON file with a list of {id, params} records")
    pv.add_argument("--max-size", type=int, dest="max_size")
    pv.add_argument("--nvars", type=int)
    pv.add_argument("--max-deg", type=int, dest="max_deg")
    pv.add_argument("--max-part", type=int, dest="max_part")
    pv.add_argument("--nx", type=int)
    pv.add_argument("--ny", type=int)
    pv.add_argument("--trials", type=int)
    pv.add_argument("--seed", type=int)
    pv.add_argument("--max-power", type=int, dest="max_power")
    pv.add_argument("--skew-max-size", type=int, dest="skew_max_size")
    pv.add_argument("--length-cap-size", type=int, dest="length_cap_size")

    pn = sub.add_parser("enumerate", help="stream tableaux of one family", parents=[common])
    pn.add_argument("--family", required=True)
    pn.add_argument("--outer", required=True)
    pn.add_argument("--inner", default="")
    pn.add_argument("--max-value", type=int, required=True, dest="max_value")
    pn.add_argument("--deg-cap", type=int, dest="deg_cap")
    pn.add_argument("--count-only", action="store_true", dest="count_only")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _resolve_settings(args)
        if getattr(args, "no_cache", False):
            CACHE.configure(enabled=False)
            CACHE.clear_memory()
        elif settings["cache_dir"]:
            CACHE.configure(directory=settings["cache_dir"], enabled=True)
        handler = {
            "compute": cmd_compute,
            "expand": cmd_expand,
            "verify": cmd_verify,
            "enumerate": cmd_enumerate,
        }[args.command]
        return handler(args, settings)
    except (ValueError, InvalidShapeError, ParameterError, NonSymmetricError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except KshiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
