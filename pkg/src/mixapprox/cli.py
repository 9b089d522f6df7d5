"""Command-line front end.

Every subcommand that writes files also writes a run manifest next to its main
output; ``replay`` re-runs a manifest and compares output digests.

Exit status: 0 on success, 2 when some outcome stayed undecided, 1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .catalog import lookup
from .construct.pipeline import theorem1_pipeline
from .construct.theorem2 import DEFAULT_HOUSE_CEILING, gamma_decomposition, unit_power_records
from .exact.padic import is_prime
from .exact.precision import PREC_CEILING, PrecisionCeilingError, Undecided
from .field import FieldError, NumberField
from .manifest import RunManifest, default_manifest_path, sha256_file
from .scan.mixed import mixed_scan, problem_scan
from .serialize import (
    construct_csv_header,
    construct_csv_row,
    frac_str,
    parse_frac,
    problem_scan_to_json,
    record_from_json,
    record_to_json,
)
from .units import InsufficientUnits, check_independence, find_units, normalize_for_p, positive_units

try:  # Python 3.11+
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

log = logging.getLogger("mixapprox")

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2


class CliError(Exception):
    pass


# -- output helpers ------------------------------------------------------------------------

def write_csv(path: str, digest: str, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# manifest-digest: {digest}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def write_json(path: Optional[str], digest: Optional[str], obj: dict) -> None:
    obj = dict(obj)
    if digest is not None:
        obj["_manifest_digest"] = digest
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def sidecar_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return (root if ext.lower() == ".csv" else path) + ".json"


def field_params(K: NumberField) -> dict:
    return {"min_poly": list(K.min_poly.coeffs), "root_index": K.selected_root_index}


def field_from_params(fp: dict):
    return lookup("[" + ",".join(str(c) for c in fp["min_poly"]) + "]", fp["root_index"])


def _parse_primes(text) -> List[int]:
    if text in (None, "", []):
        return []
    items = text if isinstance(text, list) else [t for t in str(text).split(",") if t.strip()]
    primes = [int(t) for t in items]
    for p in primes:
        if not is_prime(p):
            raise CliError(f"{p} is not prime")
    return primes


def _prime(text) -> int:
    p = int(text)
    if not is_prime(p):
        raise CliError(f"{p} is not prime")
    return p


# -- subcommand bodies: params -> outputs ---------------------------------------------------
# Each takes canonical params, output paths keyed by role and the manifest digest,
# and returns an exit status.

def run_field_info(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int) -> int:
    K, entry = field_from_params(params["field"])
    info = K.describe()
    info["catalog_name"] = entry.name if entry else None
    info["dual_basis"] = [b.to_json() for b in K.dual_basis()]
    info["trace_matrix"] = [[frac_str(x) for x in row] for row in K.trace_matrix()]
    write_json(paths.get("json"), digest, info)
    return EXIT_OK


def run_units(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int) -> int:
    K, entry = field_from_params(params["field"])
    S = find_units(K, params["bound"], entry.known_units if entry else ())
    out = {
        "field": K.describe(),
        "units": [u.to_json() for u in S.units],
        "norms": [frac_str(u.norm()) for u in S.units],
        "log_matrix": [[x.to_json() for x in row] for row in S.log_matrix()],
        "independent": check_independence(list(S.units), K),
        "normalized": [],
    }
    for p in params["primes"]:
        N = normalize_for_p(S, p)
        mod = p * p
        ok = all(all((c - (1 if k == 0 else 0)) % mod == 0 for k, c in enumerate(u.int_coords())) for u in N.units)
        out["normalized"].append({"p": p, "system": N.to_json(), "congruent_to_1_mod_p2": ok})
    write_json(paths.get("json"), digest, out)
    return EXIT_OK


def run_construct(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int) -> int:
    K, entry = field_from_params(params["field"])
    S = find_units(K, params["unit_bound"], entry.known_units if entry else ())
    records = list(theorem1_pipeline(K, S, params["prime"], range(params["s_from"], params["s_to"] + 1),
                                     delta_start=parse_frac(params["delta"]), max_halvings=params["max_halvings"],
                                     jobs=jobs))
    d = K.d
    write_csv(paths["csv"], digest, construct_csv_header(d), (construct_csv_row(r, d) for r in records))
    write_json(paths["json"], digest, {"field": K.describe(), "prime": params["prime"],
                                       "records": [record_to_json(r) for r in records]})
    for r in records:
        log.info("s=%d %s H~2^%d %s", r.s, r.status, r.H.bit_length(), "; ".join(r.reasons))
    undecided = any(any(x.startswith("undecided") for x in r.reasons) for r in records)
    return EXIT_UNDECIDED if undecided else EXIT_OK


def run_theorem2(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int) -> int:
    K, entry = field_from_params(params["field"])
    S = find_units(K, params["unit_bound"], entry.known_units if entry else ())
    if params.get("records"):
        with open(params["records"]) as fh:
            recs = [record_from_json(o) for o in json.load(fh)["records"]]
        recs = [r for r in recs if r.status == "accepted"]
    else:
        recs = unit_power_records(K, S, params["prime"], range(1, params["unit_powers"] + 1))
    report = gamma_decomposition(K, recs, positive_units(S), parse_frac(params["lambda"]),
                                 parse_frac(params["house_ceiling"]), params["tol"])
    write_json(paths.get("json"), digest, report.to_json())
    return EXIT_OK


def run_scan(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int,
             resume: Optional[str] = None) -> int:
    K, _ = field_from_params(params["field"])
    recs = list(mixed_scan(K, params["primes"], params["qmax"], resume=resume, parts=params["parts"], jobs=jobs,
                           q_min=params["qmin"]))
    rows = (r.csv_row() + ["1" if r.undecided else "0"] for r in recs)
    write_csv(paths["csv"], digest, ["q", "value_lo", "value_hi", "is_record", "undecided"], rows)
    for r in recs:
        if r.is_record:
            log.info("q=%d value~%.6g", r.q, float(r.value))
    return EXIT_UNDECIDED if any(r.undecided for r in recs) else EXIT_OK


def run_problem_scan(params: dict, paths: Dict[str, str], digest: Optional[str], jobs: int) -> int:
    K, _ = field_from_params(params["field"])
    res = problem_scan(K, params["primes"], params["degree"], params["hmax"])
    write_json(paths.get("json"), digest, problem_scan_to_json(res))
    return EXIT_OK


RUNNERS: Dict[str, Callable] = {
    "field-info": run_field_info,
    "units": run_units,
    "construct": run_construct,
    "theorem2": run_theorem2,
    "scan": run_scan,
    "problem-scan": run_problem_scan,
}


# -- argument parsing -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1; status 2 is reserved for undecided outcomes."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML file whose keys mirror the flags")
    common.add_argument("--jobs", type=int, default=1, help="worker cap")
    common.add_argument("-v", "--verbose", action="store_true")

    fieldargs = argparse.ArgumentParser(add_help=False)
    fieldargs.add_argument("--field", help="catalog name, ASCII polynomial (x^3-2) or coefficient list [-2,0,0,1]")
    fieldargs.add_argument("--root", type=int, default=None, help="index of the real root among the ascending reals")

    parser = _Parser(prog="mixapprox", description="Algebraic approximation with p-adic control.")
    parser.add_argument("--version", action="version", version=f"mixapprox {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", parents=[common, fieldargs], help="describe a number field")
    p.add_argument("--out")

    p = sub.add_parser("units", parents=[common, fieldargs], help="find and normalize units")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--primes", default="")
    p.add_argument("--out")

    p = sub.add_parser("construct", parents=[common, fieldargs], help="run the approximation pipeline")
    p.add_argument("--prime", required=False)
    p.add_argument("--s-from", type=int, default=1)
    p.add_argument("--s-to", type=int, default=4)
    p.add_argument("--delta", default="1/2", help="starting delta, halved until the derivative condition holds")
    p.add_argument("--max-halvings", type=int, default=10)
    p.add_argument("--unit-bound", type=int, default=3)
    p.add_argument("--out")

    p = sub.add_parser("theorem2", parents=[common, fieldargs], help="gamma decomposition and kappa fit")
    p.add_argument("--prime", required=False)
    p.add_argument("--lambda", dest="lambda_", default="2")
    p.add_argument("--records", help="JSON sidecar written by construct")
    p.add_argument("--unit-powers", type=int, default=50, help="without --records: use eta = eps^-k, k = 1..N")
    p.add_argument("--house-ceiling", default=str(DEFAULT_HOUSE_CEILING))
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--unit-bound", type=int, default=3)
    p.add_argument("--out")

    p = sub.add_parser("scan", parents=[common, fieldargs], help="mixed Littlewood scan")
    p.add_argument("--primes", default="")
    p.add_argument("--qmin", type=int, default=1)
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--parts", type=int, default=1)
    p.add_argument("--resume")
    p.add_argument("--out")

    p = sub.add_parser("problem-scan", parents=[common, fieldargs], help="small-degree approximant search")
    p.add_argument("--primes", default="")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--hmax", type=int, default=100)
    p.add_argument("--out")

    p = sub.add_parser("replay", help="re-run a manifest and compare output digests")
    p.add_argument("manifest")
    p.add_argument("--out-dir", help="directory for the replayed outputs (default: next to the manifest)")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _config_defaults(argv: Sequence[str]) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    with open(known.config, "rb") as fh:
        cfg = tomllib.load(fh)
    command = next((a for a in argv if a in RUNNERS), None)
    flat = {k: v for k, v in cfg.items() if not isinstance(v, dict)}
    if command and isinstance(cfg.get(command), dict):
        flat.update(cfg[command])
    out = {}
    for k, v in flat.items():
        key = k.replace("-", "_")
        out["lambda_" if key == "lambda" else key] = v
    return out


def _params_from_args(args) -> dict:
    cmd = args.command
    if not args.field:
        raise CliError("--field is required")
    K, _ = lookup(str(args.field), args.root)
    params: dict = {"field": field_params(K)}
    if cmd == "units":
        params.update(bound=args.bound, primes=_parse_primes(args.primes))
    elif cmd == "construct":
        if args.prime is None:
            raise CliError("--prime is required")
        if args.s_from < 0 or args.s_to < args.s_from:
            raise CliError("need 0 <= s-from <= s-to")
        params.update(prime=_prime(args.prime), s_from=args.s_from, s_to=args.s_to,
                      delta=frac_str(Fraction(str(args.delta))), max_halvings=args.max_halvings,
                      unit_bound=args.unit_bound)
    elif cmd == "theorem2":
        if args.prime is None:
            raise CliError("--prime is required")
        params.update(prime=_prime(args.prime), **{"lambda": frac_str(Fraction(str(args.lambda_)))},
                      house_ceiling=frac_str(Fraction(str(args.house_ceiling))), tol=args.tol,
                      unit_bound=args.unit_bound)
        if args.records:
            params["records"] = args.records
            params["records_sha256"] = sha256_file(args.records)
        else:
            params["unit_powers"] = args.unit_powers
    elif cmd == "scan":
        if args.qmax is None:
            raise CliError("--qmax is required")
        params.update(primes=_parse_primes(args.primes), qmin=args.qmin, qmax=args.qmax, parts=args.parts)
    elif cmd == "problem-scan":
        params.update(primes=_parse_primes(args.primes), degree=args.degree, hmax=args.hmax)
    return params


def _output_paths(cmd: str, out: Optional[str]) -> Dict[str, str]:
    if cmd in ("construct", "scan") and not out:
        raise CliError("--out is required")
    if not out:
        return {}
    if cmd == "construct":
        return {"csv": out, "json": sidecar_path(out)}
    if cmd == "scan":
        return {"csv": out}
    return {"json": out}


def execute(manifest: RunManifest, paths: Dict[str, str], jobs: int = 1, resume: Optional[str] = None) -> int:
    runner = RUNNERS[manifest.command]
    digest = manifest.digest if paths else None
    if manifest.command == "scan":
        return runner(manifest.params, paths, digest, jobs, resume=resume)
    return runner(manifest.params, paths, digest, jobs)


def replay(manifest_path: str, out_dir: Optional[str]) -> int:
    m = RunManifest.read(manifest_path)
    if m.prec_ceiling != PREC_CEILING:
        log.warning("precision ceiling differs from the manifest (%d vs %d)", PREC_CEILING, m.prec_ceiling)
    out_dir = out_dir or os.path.dirname(os.path.abspath(manifest_path))
    os.makedirs(out_dir, exist_ok=True)
    paths = {role: os.path.join(out_dir, "replay-" + os.path.basename(p)) for role, p in m.output_paths.items()}
    status = execute(m, paths)
    same = True
    for role, path in paths.items():
        got = sha256_file(path)
        ok = got == m.outputs.get(role)
        same &= ok
        print(f"{role}: {'identical' if ok else 'DIFFERENT'} {path}")
    if status != m.exit_status:
        print(f"exit status {status} differs from recorded {m.exit_status}")
        same = False
    return EXIT_OK if same else EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _config_defaults(argv)
        if defaults:
            for action in parser._subparsers._group_actions:  # apply config below the command line
                for sp in action.choices.values():
                    sp.set_defaults(**{k: v for k, v in defaults.items()
                                       if any(a.dest == k for a in sp._actions)})
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(name)s: %(message)s")
        if args.command == "replay":
            return replay(args.manifest, args.out_dir)
        params = _params_from_args(args)
        paths = _output_paths(args.command, args.out)
        m = RunManifest(args.command, params, __version__, PREC_CEILING, argv)
        status = execute(m, paths, jobs=args.jobs, resume=getattr(args, "resume", None))
        if paths:
            m.outputs = {role: sha256_file(p) for role, p in paths.items()}
            m.output_paths = paths
            m.exit_status = status
            m.write(default_manifest_path(args.out))
        return status
    except (Undecided, PrecisionCeilingError) as exc:
        print(f"mixapprox: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (CliError, FieldError, InsufficientUnits, ValueError, OSError) as exc:
        print(f"mixapprox: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
