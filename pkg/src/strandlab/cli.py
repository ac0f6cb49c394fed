"""Command-line entry point: ``strandlab <command> [options]``.

Parameters are resolved from, in decreasing priority: command-line flags,
``STRANDLAB_<KEY>`` environment variables, a ``key = value`` config file
given with ``--config``, and built-in defaults. Reports are deterministic
for a fixed configuration; wall-clock timing is only added with ``--timing``
so that JSON output stays byte-identical across runs.

Exit codes: 0 all checks pass, 1 some check fails, 2 bad input,
3 precondition violated.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import catalog, checks
from .boxes import complex_of_boxes, f_vector, induced_box_subcomplex
from .chain import BettiTable, linear_strand_table
from .en import generalized_sparse_en, sparse_en
from .errors import InputError, PreconditionError
from .exactla import ScalarField
from .ideals import initial_dfi, load_ideal
from .oracle import multigraded_betti
from .simplicial import SimplicialComplex, clique_complex, clique_decomposition, i_nonfaces, load_complex

SCHEMA_VERSION = "1"
TARGETS = ("sparse-en", "gen-sparse-en", "boxes", "linear-strand", "specializations", "paper-examples", "property-suite")

DEFAULTS = {
    "n": None,
    "m": None,
    "i": 1,
    "field": "prime:32003",
    "format": "text",
    "jobs": 1,
    "seed": 7,
    "trials": 200,
    "out": None,
    "on": "clique",
    "complex": None,
    "ideal": None,
}
INT_KEYS = {"n", "m", "i", "jobs", "seed", "trials"}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, values may be quoted."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    for num, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{num}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_").lower()] = value.strip("\"'")
    return out


def resolve_config(args: argparse.Namespace, environ=os.environ) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update({k: v for k, v in read_config_file(args.config).items() if k in DEFAULTS})
    for key in DEFAULTS:
        env = environ.get(f"STRANDLAB_{key.upper()}")
        if env is not None:
            cfg[key] = env
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in INT_KEYS:
        if cfg[key] is not None:
            try:
                cfg[key] = int(cfg[key])
            except ValueError as exc:
                raise InputError(f"{key} must be an integer, got {cfg[key]!r}") from exc
    if cfg["format"] not in ("text", "json"):
        raise InputError(f"format must be text or json, got {cfg['format']!r}")
    if cfg["on"] not in ("clique", "complex"):
        raise InputError(f"on must be clique or complex, got {cfg['on']!r}")
    try:
        cfg["field"] = str(ScalarField.parse(str(cfg["field"])))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return cfg


def _faces(fs) -> list[list[int]]:
    return [list(x) for x in fs]


def _need(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg[k] is None]
    if missing:
        raise InputError("missing required option(s): " + ", ".join("--" + k for k in missing))


def _complex(cfg: dict) -> SimplicialComplex:
    _need(cfg, "complex")
    return load_complex(cfg["complex"])


def _n_for(delta: SimplicialComplex, cfg: dict) -> int:
    return cfg["n"] if cfg["n"] is not None else delta.dim + 1


# ---------------------------------------------------------------- commands

def cmd_cliques(cfg: dict) -> tuple[list, dict]:
    delta = _complex(cfg)
    n = _n_for(delta, cfg)
    K = clique_complex(delta, n)
    parts = clique_decomposition(delta, n)
    tables = {
        "n": n,
        "input_was_antichain": delta.input_was_antichain,
        "cliques": _faces(K.facets),
        "decomposition": [_faces(P.facets) for P in parts],
    }
    return [], tables


def cmd_nonfaces(cfg: dict, lo: int | None, hi: int | None) -> tuple[list, dict]:
    delta = _complex(cfg)
    n = _n_for(delta, cfg)
    base = clique_complex(delta, n) if cfg["on"] == "clique" else delta
    lo = n + 1 if lo is None else lo
    hi = delta.m if hi is None else hi
    found = {str(c): _faces(i_nonfaces(base, cfg["i"], c)) for c in range(lo, hi + 1)}
    return [], {"n": n, "i": cfg["i"], "on": cfg["on"], "nonfaces": found}


def cmd_betti(cfg: dict) -> tuple[list, dict]:
    f = ScalarField.parse(cfg["field"])
    if cfg["ideal"] is not None:
        I = load_ideal(cfg["ideal"])
        B = multigraded_betti(I, f)
        return [], {"betti": B.to_json()}
    delta = _complex(cfg)
    n = _n_for(delta, cfg)
    B = multigraded_betti(initial_dfi(delta, n), f)
    return [], {"betti": B.to_json(), "linear_strand": linear_strand_table(B, n).to_json()}


def cmd_boxes(cfg: dict) -> tuple[list, dict]:
    if cfg["complex"] is not None:
        delta = load_complex(cfg["complex"])
        n = _n_for(delta, cfg)
        P = induced_box_subcomplex(complex_of_boxes(n, delta.m), delta)
    else:
        _need(cfg, "n", "m")
        P = complex_of_boxes(cfg["n"], cfg["m"])
    return [], {"f_vector": list(f_vector(P)), "boxes": P.to_json()}


def cmd_dump(cfg: dict) -> tuple[list, dict]:
    if cfg["complex"] is not None:
        delta = load_complex(cfg["complex"])
        n = _n_for(delta, cfg)
        K = clique_complex(delta, n) if cfg["on"] == "clique" else delta
        C = generalized_sparse_en(K, n)
    else:
        _need(cfg, "n", "m")
        C = sparse_en(cfg["n"], cfg["m"])
    return [], {"complex": C.to_json()}


def _shape_range(cfg: dict, n_range, m_max: int) -> list[tuple[int, int]]:
    ns = [cfg["n"]] if cfg["n"] is not None else list(n_range)
    out = []
    for n in ns:
        ms = [cfg["m"]] if cfg["m"] is not None else range(n, m_max + 1)
        out.extend((n, m) for m in ms)
    return out


def _named_complexes(cfg: dict) -> list[tuple[str, SimplicialComplex, int]]:
    if cfg["complex"] is not None:
        delta = load_complex(cfg["complex"])
        return [(os.path.basename(cfg["complex"]), delta, _n_for(delta, cfg))]
    return [(name, delta, n) for name, (delta, n) in catalog.NAMED.items()]


def cmd_verify(cfg: dict, target: str) -> tuple[list, dict]:
    f = ScalarField.parse(cfg["field"])
    jobs = max(1, cfg["jobs"])
    tables: dict = {}
    if target in ("sparse-en", "specializations"):
        block = checks.sparse_en_block if target == "sparse-en" else checks.specialization_block
        shapes = _shape_range(cfg, (2, 3), 6)
        results = checks.run_parallel(block, [(n, m, f) for n, m in shapes], jobs)
        return [c for r in results for c in r], tables
    if target == "boxes":
        shapes = _shape_range(cfg, (2,), 5)
        results = checks.run_parallel(checks.boxes_block, [(n, m, f) for n, m in shapes], jobs)
        return [c for r in results for c in r], tables
    if target == "gen-sparse-en":
        items = [(name, d, n, f) for name, d, n in _named_complexes(cfg)]
        results = checks.run_parallel(checks.gen_sparse_block, items, jobs)
        return [c for r in results for c in r], tables
    if target == "linear-strand":
        items = [(name, d, n, f) for name, d, n in _named_complexes(cfg)]
        results = checks.run_parallel(checks.linear_strand_block, items, jobs)
        for (name, *_), (_, t) in zip(items, results):
            tables[name] = t
        return [c for r, _ in results for c in r], tables
    if target == "paper-examples":
        return checks.worked_examples(f), tables
    if target == "property-suite":
        found, tables = checks.property_suite(cfg["seed"], cfg["trials"], f, jobs)
        return found, tables
    raise InputError(f"unknown target {target!r}")


# ---------------------------------------------------------------- output

def overall(found: list) -> str:
    verdicts = {c.verdict for c in found}
    if checks.FAIL in verdicts:
        return checks.FAIL
    if verdicts == {checks.SKIP}:
        return checks.SKIP
    return checks.PASS


def build_report(command: str, cfg: dict, found: list, tables: dict, elapsed: float | None = None) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": {k: cfg[k] for k in sorted(cfg) if k not in ("format", "out", "jobs")},
        "checks": [c.to_json() for c in found],
        "tables": tables,
        "verdict": overall(found),
    }
    if elapsed is not None:
        report["timing"] = {"seconds": round(elapsed, 3)}
    return report


def _render_value(key: str, value) -> list[str]:
    if isinstance(value, dict) and "fine" in value and "coarse" in value:
        return [f"{key}:"] + ["  " + line for line in BettiTable.from_json(value).render().splitlines()]
    if isinstance(value, dict) and key not in ("boxes", "complex"):
        out = [f"{key}:"]
        for k, v in value.items():
            out.extend("  " + line for line in _render_value(str(k), v))
        return out
    return [f"{key}: {json.dumps(value)}"]


def render_text(report: dict) -> str:
    lines = [f"{report['command']}  (schema {report['schema_version']})"]
    for c in report["checks"]:
        line = f"{c['verdict']:<4}  {c['name']}"
        if c["verdict"] != checks.PASS and c["detail"]:
            line += "  " + json.dumps(c["detail"], sort_keys=True)
        lines.append(line)
    for key, value in report["tables"].items():
        lines.extend(_render_value(key, value))
    if "timing" in report:
        lines.append(f"time: {report['timing']['seconds']}s")
    if report["checks"]:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--complex", help="complex JSON {\"m\": int, \"facets\": [[...], ...]}")
    common.add_argument("--ideal", help="monomial ideal JSON")
    common.add_argument("-n", "--n", dest="n", help="number of rows")
    common.add_argument("-m", "--m", dest="m", help="number of columns")
    common.add_argument("--field", help="prime:P or rational (default prime:32003)")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--jobs", help="worker processes")
    common.add_argument("--seed", help="seed for the property suite")
    common.add_argument("--trials", help="random complexes in the property suite")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    parser = argparse.ArgumentParser(prog="strandlab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cliques", parents=[common], help="maximal cliques and clique decomposition")
    nf = sub.add_parser("nonfaces", parents=[common], help="i-nonfaces by cardinality")
    nf.add_argument("-i", dest="i", help="number of consecutive deletions minus one (default 1)")
    nf.add_argument("--on", choices=("clique", "complex"), help="search the clique complex (default) or the input")
    nf.add_argument("--min-size", type=int, help="smallest cardinality (default n + 1)")
    nf.add_argument("--max-size", type=int, help="largest cardinality (default m)")
    vf = sub.add_parser("verify", parents=[common], help="run a verification block")
    vf.add_argument("target", choices=TARGETS)
    sub.add_parser("betti", parents=[common], help="multigraded Betti numbers of an ideal or a complex's initial ideal")
    sub.add_parser("boxes", parents=[common], help="complex of boxes or its induced subcomplex")
    dp = sub.add_parser("dump", parents=[common], help="dump a (generalized) sparse EN complex as JSON")
    dp.add_argument("--on", choices=("clique", "complex"), help="build on the clique complex (default) or the input")
    return parser


def run(argv=None, environ=os.environ) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args, environ)
        start = time.perf_counter()
        if args.command == "cliques":
            found, tables = cmd_cliques(cfg)
        elif args.command == "nonfaces":
            found, tables = cmd_nonfaces(cfg, args.min_size, args.max_size)
        elif args.command == "verify":
            found, tables = cmd_verify(cfg, args.target)
        elif args.command == "betti":
            found, tables = cmd_betti(cfg)
        elif args.command == "boxes":
            found, tables = cmd_boxes(cfg)
        else:
            found, tables = cmd_dump(cfg)
        elapsed = time.perf_counter() - start if args.timing else None
    except PreconditionError as exc:
        return 3, f"precondition failed: {exc}\n"
    except (InputError, OSError, json.JSONDecodeError) as exc:
        return 2, f"input error: {exc}\n"
    command = args.command + (f" {args.target}" if args.command == "verify" else "")
    report = build_report(command, cfg, found, tables, elapsed)
    if cfg["format"] == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = render_text(report)
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text)
        text = ""
    return (1 if report["verdict"] == checks.FAIL else 0), text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code >= 2 else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
