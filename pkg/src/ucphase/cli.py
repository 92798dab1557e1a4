"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .partitions import Partition, parse_partition
from .scalars import parse_rational

CACHE_ENV = "UCPHASE_CACHE_DIR"
SIZE_FLAGS = ("max_weight", "m1", "m2", "cap", "order", "seed", "jobs")


class UsageError(Exception):
    pass


# -- cache -------------------------------------------------------------------------------------

def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "ucphase"


def cache_key(lam: Partition, mu: Partition, cutoffs) -> str:
    text = json.dumps({"kind": "uc", "lambda": list(lam), "mu": list(mu),
                       "cutoffs": list(cutoffs)}, sort_keys=True)
    return hashlib.sha256(text.encode()).hexdigest()


def cached_uc(lam: Partition, mu: Partition):
    """S_[lam,mu] at default cutoffs, read from or written to the on-disk cache."""
    from .polyring import Poly
    from .symfunc import default_cutoffs, universal_character_jt

    cut = default_cutoffs(lam, mu)
    path = cache_dir() / f"{cache_key(lam, mu, cut)}.json"
    if path.exists():
        try:
            return Poly.from_json(json.loads(path.read_text()))
        except (ValueError, KeyError):
            pass  # unreadable entry: recompute and overwrite
    p = universal_character_jt(lam, mu, cut)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(p.to_json(), sort_keys=True))
        tmp.replace(path)
    except OSError:
        pass  # caching is best effort
    return p


def cache_entries() -> List[Path]:
    d = cache_dir()
    return sorted(d.glob("*.json")) if d.is_dir() else []


# -- config ------------------------------------------------------------------------------------

def read_config(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}")
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().lstrip("-").replace("-", "_")] = v.strip()
    return out


def resolve_options(args: argparse.Namespace, defaults: Dict[str, object]) -> Dict[str, object]:
    """Explicit flags win over config entries, which win over defaults."""
    config = read_config(args.config) if getattr(args, "config", None) else {}
    opts: Dict[str, object] = {}
    for key, default in defaults.items():
        value = getattr(args, key, None)
        if value is None and key in config:
            raw = config[key]
            try:
                value = type(default)(raw) if default is not None else raw
            except ValueError:
                raise UsageError(f"config value for {key} is not valid: {raw!r}")
        opts[key] = default if value is None else value
    for key in SIZE_FLAGS:
        if key in opts and isinstance(opts[key], int) and opts[key] < 0:
            raise UsageError(f"--{key.replace('_', '-')} must be non-negative")
    return opts


# -- subcommands -------------------------------------------------------------------------------

def _partition_arg(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as e:
        raise UsageError(f"malformed partition {text!r}: {e}")


def cmd_compute_uc(args) -> int:
    lam, mu = _partition_arg(args.lam), _partition_arg(args.mu)
    p = cached_uc(lam, mu)
    if args.format == "json":
        print(json.dumps({"lambda": lam.serialize(), "mu": mu.serialize(), "poly": p.to_json()},
                         indent=2))
    else:
        print(p.to_text())
    return 0


def _run_cases(cases, jobs: int) -> List[dict]:
    from .suites import run_case

    if jobs > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(run_case, cases))  # map keeps submission order
    return [run_case(c) for c in cases]


def cmd_verify(args) -> int:
    from .suites import DEFAULTS, SUITES, build_cases

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    opts = resolve_options(args, DEFAULTS)
    if args.suite == "macmahon" and opts["order"] > 40:
        raise UsageError("--order is too large for the macmahon suite")
    jobs = opts.pop("jobs")
    cases = build_cases(args.suite, opts)
    results = _run_cases(cases, jobs)
    out_cases = []
    for r in results:
        entry = {"input": r["inputs"], "pass": r["pass"]}
        if r["residuals"]:
            entry["residual"] = r["residuals"]
        if r["notes"]:
            entry["notes"] = r["notes"]
        out_cases.append(entry)
    ok = all(c["pass"] for c in out_cases)
    report = {"suite": args.suite, "params": opts, "cases": out_cases, "pass": ok}
    print(json.dumps(report, indent=2))
    return 0 if ok else 1


def cmd_bethe(args) -> int:
    from .phase_model import bethe_expansion, bethe_state, uc_to_poly
    from .reports import jsonable
    from .suites import DEFAULTS, rational_points

    opts = resolve_options(args, {**DEFAULTS, "order": 1})
    M1, M2 = opts["m1"], (None if args.single else opts["m2"])
    if args.u:
        try:
            us = [parse_rational(t) for t in args.u.split(",") if t.strip()]
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"malformed --u: {e}")
    else:
        us = rational_points(opts["order"], opts["seed"])
    if any(u == 0 for u in us):
        raise UsageError("spectral parameters must be nonzero")
    expansion = bethe_expansion(us, M1, M2)
    poly = uc_to_poly(expansion)
    if args.format == "json":
        doc = {"us": jsonable(us), "M1": M1, "M2": M2,
               "uc_expansion": jsonable(dict(sorted(expansion.items()))),
               "polynomial": poly.to_text(),
               "fock": bethe_state(M1, M2, us).to_json()}
        print(json.dumps(doc, indent=2))
    else:
        print(poly.to_text())
    return 0


def cmd_macmahon(args) -> int:
    from .macmahon import ENUMERATION_BOUND, correlator_full, macmahon_compare, \
        macmahon_series, plane_partition_count

    K = args.order
    if K < 0:
        raise UsageError("--order must be non-negative")
    if (args.compare or args.method == "enumerate") and K > ENUMERATION_BOUND:
        raise UsageError(f"--order {K} exceeds the enumeration bound {ENUMERATION_BOUND}")
    if args.compare:
        rep = macmahon_compare(K)
        for name, coeffs in rep.notes["series"].items():
            print(f"{name}: {','.join(coeffs)}")
        print("all methods agree" if rep.passed else "methods disagree")
        return 0 if rep.passed else 1
    if args.method == "product":
        coeffs = [str(c) for c in macmahon_series(K).coefficients()]
    elif args.method == "correlator":
        coeffs = [str(c) for c in correlator_full(K).coefficients()]
    else:
        coeffs = [str(plane_partition_count(n)) for n in range(K + 1)]
    print(json.dumps(coeffs) if args.format == "json" else ",".join(coeffs))
    return 0


def cmd_cache(args) -> int:
    entries = cache_entries()
    if args.action == "clear":
        for p in entries:
            p.unlink()
        print(f"removed {len(entries)} entries from {cache_dir()}")
    else:
        size = sum(p.stat().st_size for p in entries)
        print(json.dumps({"dir": str(cache_dir()), "entries": len(entries), "bytes": size}))
    return 0


# -- parser ------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ucphase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def size_flags(p):
        # None means "not given", so config entries can fill in
        p.add_argument("--max-weight", type=int, dest="max_weight")
        p.add_argument("--m1", type=int)
        p.add_argument("--m2", type=int)
        p.add_argument("--cap", type=int, help="particle cap or index bound")
        p.add_argument("--order", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--jobs", type=int)
        p.add_argument("--config", help="key=value file merged under explicit flags")

    p = sub.add_parser("compute-uc", help="print a universal character")
    p.add_argument("--lambda", dest="lam", default="")
    p.add_argument("--mu", default="")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compute_uc)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite")
    size_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bethe", help="expand a Bethe state in universal characters")
    size_flags(p)
    p.add_argument("--u", help="comma-separated spectral parameters")
    p.add_argument("--single", action="store_true", help="use one chain only")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bethe)

    p = sub.add_parser("macmahon", help="coefficients of the MacMahon function")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--method", choices=("product", "correlator", "enumerate"), default="product")
    p.add_argument("--compare", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_macmahon)

    p = sub.add_parser("cache", help="manage the universal character cache")
    p.add_argument("action", choices=("clear", "stats"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"ucphase: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
