"""Command-line interface.

Four subcommands over a JSON wire format with explicit [re, im] pairs:

* ``analyze``      classify a state, run the identity suite, emit a report
* ``random``       generate a symmetric faithful state deterministically
* ``infocomplete`` build a minimal informationally complete observable
* ``dimcheck``     verify the dimension identities for a given d

Exit codes: 0 success, 1 usage or parse failure, 2 at least one identity
check failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Sequence

import numpy as np

from .errors import QcstarError, StateFormatError
from .faithfulness import BipartiteState, classify, random_symmetric_faithful
from .identities import gns_diagnostics, run_identity_suite
from .infocomplete import (
    Observable,
    build_infocomplete,
    dimension_check,
    is_infocomplete,
    is_minimal,
    span_rank,
)
from .jordan import jordan_decompose
from .operators import Effect, HermitianOperator
from .tolerances import TAU_NUM

SCHEMA_VERSION = "1"
MAX_DIM = 8


# ---------------------------------------------------------------------------
# wire format

def matrix_to_json(m: np.ndarray) -> list:
    """Nested [re, im] pairs, row-major."""
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(m)]


def matrix_from_json(data, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(data, list) or len(data) != rows:
        raise StateFormatError(f"{where}: expected {rows} rows")
    out = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise StateFormatError(f"{where}: row {i} must have {cols} entries")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) for x in cell)
            ):
                raise StateFormatError(
                    f"{where}: entry ({i},{j}) must be a [re, im] pair"
                )
            out[i, j] = complex(cell[0], cell[1])
    return out


def state_to_json(state: BipartiteState) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "dim": state.dim,
        "matrix": matrix_to_json(state.entries),
    }


def serialize_state(state: BipartiteState) -> str:
    """Canonical byte-stable serialization."""
    return json.dumps(state_to_json(state), sort_keys=True, separators=(",", ":")) + "\n"


def parse_state(text: str) -> BipartiteState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise StateFormatError("top level must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise StateFormatError(
            f"schema_version: expected {SCHEMA_VERSION!r}, got {doc.get('schema_version')!r}"
        )
    d = doc.get("dim")
    if not isinstance(d, int) or d < 1:
        raise StateFormatError("dim: must be a positive integer")
    if d > MAX_DIM:
        raise StateFormatError(f"dim: size guard allows at most {MAX_DIM}")
    m = matrix_from_json(doc.get("matrix"), d * d, d * d, "matrix")
    try:
        return BipartiteState(m)
    except ValueError as exc:
        raise StateFormatError(f"matrix: {exc}") from None


def parse_pool(text: str) -> list[Observable]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise StateFormatError("top level must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise StateFormatError(
            f"schema_version: expected {SCHEMA_VERSION!r}, got {doc.get('schema_version')!r}"
        )
    d = doc.get("dim")
    if not isinstance(d, int) or d < 1 or d > MAX_DIM:
        raise StateFormatError(f"dim: must be an integer in 1..{MAX_DIM}")
    raw = doc.get("observables")
    if not isinstance(raw, list) or not raw:
        raise StateFormatError("observables: need a nonempty list")
    pool = []
    for i, obs in enumerate(raw):
        if not isinstance(obs, list) or not obs:
            raise StateFormatError(f"observables[{i}]: need a nonempty list of effects")
        effects = []
        for j, eff in enumerate(obs):
            m = matrix_from_json(eff, d, d, f"observables[{i}][{j}]")
            try:
                effects.append(Effect(HermitianOperator(m)))
            except ValueError as exc:
                raise StateFormatError(f"observables[{i}][{j}]: {exc}") from None
        try:
            pool.append(Observable(tuple(effects)))
        except ValueError as exc:
            raise StateFormatError(f"observables[{i}]: {exc}") from None
    return pool


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# subcommands

def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    try:
        raw = _read_input(args.state_file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        state = parse_state(raw)
    except StateFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    tol = args.tol if args.tol is not None else TAU_NUM
    timings = {"parse_s": time.perf_counter() - t0}

    t1 = time.perf_counter()
    rep = classify(state)
    timings["classify_s"] = time.perf_counter() - t1

    jordan_section = None
    if rep.symmetric and rep.dynamically_faithful:
        t2 = time.perf_counter()
        j = jordan_decompose(state)
        jordan_section = {
            "signature": list(j.signature),
            "negative_count": j.negative_count,
            "gram_eigvals": [float(v) for v in j.gram_eigvals],
        }
        timings["jordan_s"] = time.perf_counter() - t2

    t3 = time.perf_counter()
    suite = run_identity_suite(state, tol=tol, seed=args.seed)
    timings["identities_s"] = time.perf_counter() - t3

    gns_section = None
    if rep.symmetric and rep.dynamically_faithful:
        t4 = time.perf_counter()
        gns_section = gns_diagnostics(state, tol=tol, seed=args.seed)
        timings["gns_s"] = time.perf_counter() - t4

    report = {
        "schema_version": SCHEMA_VERSION,
        "input_digest": hashlib.sha256(raw.encode("utf-8")).hexdigest(),
        "dim": state.dim,
        "tolerance": tol,
        "faithfulness": {
            "symmetric": rep.symmetric,
            "dynamically_faithful": rep.dynamically_faithful,
            "preparationally_faithful": rep.preparationally_faithful,
            "choi_rank": rep.choi_rank,
            "notes": list(rep.notes),
        },
        "jordan": jordan_section,
        "identity_suite": [
            {"name": c.name, "max_residual": c.max_residual, "pass": c.passed}
            for c in suite
        ],
        "gns": gns_section,
        "timings": timings,
    }

    failed = [c for c in suite if not c.passed]
    if gns_section is not None and not gns_section["pass"]:
        failed.append("gns")

    if args.format == "text":
        _print_text_report(report)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return 2 if failed else 0


def _print_text_report(report: dict) -> None:
    f = report["faithfulness"]
    print(f"dim {report['dim']}  digest {report['input_digest'][:16]}...")
    print(
        "symmetric={symmetric}  dynamically_faithful={dynamically_faithful}  "
        "preparationally_faithful={preparationally_faithful}  rank={choi_rank}".format(
            **f
        )
    )
    if report["jordan"]:
        sig = report["jordan"]["signature"]
        print(
            "signature: "
            + "".join("+" if s > 0 else "-" for s in sig)
            + f"  ({report['jordan']['negative_count']} negative)"
        )
    for item in report["identity_suite"]:
        mark = "ok " if item["pass"] else "FAIL"
        print(f"  [{mark}] {item['name']:36s} residual {item['max_residual']:.3e}")
    if report["gns"]:
        mark = "ok " if report["gns"]["pass"] else "FAIL"
        print(
            f"  [{mark}] gns diagnostics"
            f"  pairing {report['gns']['adjoint_pairing_residual']:.3e}"
            f"  cstar {report['gns']['cstar_identity_residual']:.3e}"
        )


def cmd_random(args) -> int:
    if args.dim < 1:
        print("error: dim must be a positive integer", file=sys.stderr)
        return 1
    if args.dim > MAX_DIM:
        print(f"error: size guard allows at most dim {MAX_DIM}", file=sys.stderr)
        return 1
    state = random_symmetric_faithful(args.dim, args.seed)
    sys.stdout.write(serialize_state(state))
    return 0


def cmd_infocomplete(args) -> int:
    try:
        raw = _read_input(args.pool_file)
        pool = parse_pool(raw)
        obs, trace = build_infocomplete(pool, return_trace=True)
    except (OSError, QcstarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = {
        "schema_version": SCHEMA_VERSION,
        "dim": obs.dim,
        "effects": [matrix_to_json(e.op.entries) for e in obs.effects],
        "rank_trace": trace,
        "span_rank": span_rank(obs.operators()),
        "infocomplete": is_infocomplete(obs),
        "minimal": is_minimal(obs),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_dimcheck(args) -> int:
    if args.dim < 1:
        print("error: dim must be a positive integer", file=sys.stderr)
        return 1
    if args.dim > MAX_DIM:
        print(f"error: size guard allows at most dim {MAX_DIM}", file=sys.stderr)
        return 1
    res = dimension_check(args.dim)
    out = {
        "dimP": res["dim_effects"],
        "dimS": res["dim_states"],
        "dimT": res["dim_transformations"],
        "bipartite": res["bipartite_effect_rank"],
        "identity_holds": bool(
            res["identity_product"] and res["identity_transformations"]
        ),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcstar",
        description="Classify bipartite quantum states and machine-check the "
        "transformation-algebra identities they induce.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="classify a state and run the identity suite")
    pa.add_argument("state_file", help="state JSON file, or - for stdin")
    pa.add_argument("--tol", type=float, default=None, help="override the residual tolerance")
    pa.add_argument("--format", choices=("json", "text"), default="json")
    pa.add_argument("--seed", type=int, default=0, help="seed for sampled identity maps")
    pa.set_defaults(func=cmd_analyze)

    pr = sub.add_parser("random", help="emit a random symmetric faithful state")
    pr.add_argument("dim", type=int)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_random)

    pi = sub.add_parser("infocomplete", help="build a minimal informationally complete observable")
    pi.add_argument("pool_file", help="pool JSON file, or - for stdin")
    pi.set_defaults(func=cmd_infocomplete)

    pd = sub.add_parser("dimcheck", help="verify the dimension identities")
    pd.add_argument("dim", type=int)
    pd.set_defaults(func=cmd_dimcheck)

    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except QcstarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
