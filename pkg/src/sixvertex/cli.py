"""Command-line entry point.

Every subcommand reads an optional JSON job file (``--spec``) and writes JSON
to stdout or ``--out``. Exit codes: 0 ok, 1 property failure, 2 bad job or
incompatible request, 3 singular parameters.
"""

from __future__ import annotations

import argparse
import functools
import json
import random
import statistics
import sys
import time
import timeit
from typing import Optional

from . import detrep, qism
from .enumeration import ENUM_CAP, enumerate_configs, z_enum
from .model import (
    Rational, SignFlipped, TrigAlgebraic, TrigComplex, model_from_json, params_from_json, to_algebraic,
)
from .numerics import DomainError, ResourceLimitError, close, serialize
from .polybasis import DegenerateBasisError, PolyBasis, lagrange_basis, monomial_basis, random_basis
from .sampling import draw_gamma, draw_params, draw_q
from .verify import ALL_CHECKS, run_matrix

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SPEC = 2
EXIT_SINGULAR = 3

#: largest N at which bench still runs each oracle
BENCH_ENUM_MAX = 6
BENCH_QISM_MAX = qism.QISM_CAP


class SpecError(ValueError):
    """Malformed or inconsistent job description."""


def _load_spec(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        if path == "-":
            spec = json.load(sys.stdin)
        else:
            with open(path) as fh:
                spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read job file {path}: {exc}") from exc
    if not isinstance(spec, dict):
        raise SpecError("job file must hold a JSON object")
    return spec


def _emit(obj, out: Optional[str], lines: bool = False) -> None:
    if lines:
        text = "".join(json.dumps(o, sort_keys=True) + "\n" for o in obj)
    else:
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model(spec: dict):
    block = spec.get("model", {"model": "rational"})
    if isinstance(block, str):
        block = {"model": block}
    return model_from_json(block)


def build_basis(block, model, params) -> PolyBasis:
    """A basis from ``{"kind": "monomial" | "lagrange" | "random", ...}`` or ``{"coeffs": ...}``."""
    n = params.n
    block = block or {"kind": "monomial"}
    if isinstance(block, str):
        block = {"kind": block}
    if "coeffs" in block:
        rows = [[model.coerce(z) for z in row] for row in block["coeffs"]]
        return PolyBasis(rows)
    kind = block.get("kind", "monomial")
    if kind == "monomial":
        return monomial_basis(n, model.exact)
    if kind == "random":
        return random_basis(n, int(block.get("seed", 0)), model.exact)
    if kind == "lagrange":
        if "points" in block:
            return lagrange_basis([model.coerce(z) for z in block["points"]])
        if model.name == "trig-complex":
            return lagrange_basis(to_algebraic(params.lambdas, params.nus, model.gamma).ys)
        return lagrange_basis(params.nus)
    raise SpecError(f"unknown basis kind {kind!r}")


def evaluate(tag: str, model, params, basis_block=None, parallel: bool = False):
    """Value of one representation or oracle; raises the library's errors unchanged."""
    detrep.check_compatible(tag, model)
    if tag == "enum":
        return z_enum(model, params, parallel=parallel)
    if tag == "qism":
        return qism.z_qism(model, params)
    basis = build_basis(basis_block, model, params) if tag.startswith("basis") else None
    return detrep.Representation(tag, basis).evaluate(model, params)


def _quantity(tag: str, model) -> str:
    if model.name == "trig-algebraic" or tag.startswith("basis-trig"):
        return "Z-tilde"
    return "Z"


# ---------------------------------------------------------------------------
# subcommands

def run_compute(spec: dict, args) -> int:
    model = _model(spec)
    if "params" not in spec:
        raise SpecError("compute needs a 'params' block")
    params = params_from_json(model, spec["params"])
    tag = spec.get("representation", "ik")
    t0 = time.perf_counter()
    value = evaluate(tag, model, params, spec.get("basis"), args.parallel)
    elapsed = (time.perf_counter() - t0) * 1e3
    result = {
        "N": params.n,
        "representation": tag,
        "quantity": _quantity(tag, model),
        "value": serialize(value),
        "elapsed_ms": None if args.no_timing else round(elapsed, 3),
    }
    if tag == "qism" and spec.get("dump_state"):
        result["state"] = qism.b_chain(model, params).dump().splitlines()
    _emit(result, args.out)
    return EXIT_OK


def run_enumerate(spec: dict, args) -> int:
    n = args.n if args.n is not None else spec.get("N")
    if n is None:
        raise SpecError("enumerate needs N (--n or 'N' in the job file)")
    n = int(n)
    if n < 1:
        raise SpecError("N must be positive")
    grids = spec.get("grids", False) or args.grids
    count = 0
    blocks = []
    for cfg in enumerate_configs(n):
        count += 1
        if grids:
            blocks.append(cfg.grid().splitlines())
    result = {"N": n, "count": count}
    if grids:
        result["configs"] = blocks
    _emit(result, args.out)
    return EXIT_OK


def _verify_models(spec: dict, seed: int) -> list:
    blocks = spec.get("models")
    if blocks is None:
        rng = random.Random(f"models:{seed}")
        return [Rational(), TrigAlgebraic(draw_q(rng)), TrigComplex(draw_gamma(rng))]
    return [model_from_json({"model": b} if isinstance(b, str) else b) for b in blocks]


def run_verify(spec: dict, args) -> int:
    seed = args.seed if args.seed is not None else int(spec.get("seed", 0))
    models = _verify_models(spec, seed)
    if args.inject_fault or spec.get("inject_fault"):
        models = [SignFlipped(m) for m in models]
    n_min = int(spec.get("n_min", 1))
    n_max = int(args.n if args.n is not None else spec.get("n_max", 4))
    n_seeds = int(spec.get("seeds", 5))
    checks = args.checks.split(",") if args.checks else spec.get("checks", list(ALL_CHECKS))
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown:
        raise SpecError(f"unknown checks {unknown}; choose from {', '.join(ALL_CHECKS)}")
    seeds = [seed + i for i in range(n_seeds)]
    reports = []
    failed = []
    for rep in run_matrix(models, range(n_min, n_max + 1), seeds, checks):
        row = rep.to_json()
        reports.append(row)
        if not rep.passed:
            failed.append(row)
    summary = {"summary": True, "total": len(reports), "failed": len(failed)}
    _emit(reports + [summary], args.out, lines=True)
    for row in failed:
        print(f"FAIL {json.dumps(row, sort_keys=True)}", file=sys.stderr)
    return EXIT_FAILURE if failed else EXIT_OK


#: shortest wall time of one timing sample; fast calls are repeated up to it
SAMPLE_SECONDS = 0.02


def _interleaved_medians(fns: dict, reps: int) -> dict:
    """Median per-call time in ms for each callable.

    Samples are taken round-robin over the callables so that slow phases of
    the host affect all of them alike; fast calls are repeated to fill
    ``SAMPLE_SECONDS`` per sample.
    """
    timers, numbers = {}, {}
    for tag, fn in fns.items():
        timer = timeit.Timer(fn)
        number = 1
        while timer.timeit(number) < SAMPLE_SECONDS:
            number *= 2
        timers[tag], numbers[tag] = timer, number
    samples = {tag: [] for tag in fns}
    for _ in range(reps):
        for tag, timer in timers.items():
            samples[tag].append(timer.timeit(numbers[tag]) / numbers[tag] * 1e3)
    return {tag: statistics.median(v) for tag, v in samples.items()}


def _bench_tags(model) -> list:
    return [t for t in detrep.REPRESENTATIONS + detrep.ORACLES if detrep.is_compatible(t, model)]


def _skipped(tag: str, n: int) -> bool:
    return (tag == "enum" and n > min(BENCH_ENUM_MAX, ENUM_CAP)) or (tag == "qism" and n > BENCH_QISM_MAX)


def _rel_dev(x, ref) -> float:
    scale = abs(ref)
    return float(abs(x - ref) / scale) if scale else float(abs(x))


def monotone(seq) -> bool:
    return all(b > a for a, b in zip(seq, seq[1:]))


def run_bench(spec: dict, args) -> int:
    seed = args.seed if args.seed is not None else int(spec.get("seed", 0))
    if args.n is not None:
        spec = dict(spec, n_max=args.n)
    _emit(bench_table(spec, seed, args.parallel, timing=not args.no_timing), args.out)
    return EXIT_OK


def bench_table(spec: dict, seed: int = 0, parallel: bool = False, timing: bool = True) -> dict:
    """Timings and values per representation and N; oracles past their caps are skipped."""
    model = _model(spec if "model" in spec else {"model": {"model": "trig-complex", "gamma": 0.7}})
    n_min = int(spec.get("n_min", 1))
    n_max = int(spec.get("n_max", 8))
    reps = max(5, int(spec.get("repetitions", 5)))
    tags = spec.get("representations", _bench_tags(model))
    for t in tags:
        detrep.check_compatible(t, model)
    rng = random.Random(f"bench:{seed}")
    rows = []
    ratio = {}
    for n in range(n_min, n_max + 1):
        params = draw_params(model, n, rng)
        entry = {"N": n, "times_ms": {}, "values": {}}
        values = {}
        fns = {}
        for tag in tags:
            if _skipped(tag, n):
                entry["times_ms"][tag] = "skipped"
                continue
            fns[tag] = functools.partial(evaluate, tag, model, params, spec.get("basis"), parallel)
            values[tag] = fns[tag]()
            entry["values"][tag] = serialize(values[tag])
        medians = _interleaved_medians(fns, reps) if timing else {}
        for tag in fns:
            entry["times_ms"][tag] = round(medians[tag], 4) if timing else None
        if "ik" in values:
            # determinant representations must agree to the comparison tolerance;
            # float oracles can lose digits to cancellation, so they are reported, not judged
            ref = values["ik"]
            same = [t for t in values if _quantity(t, model) == _quantity("ik", model)]
            entry["consistent"] = all(close(values[t], ref) for t in same if t not in detrep.ORACLES)
            if not model.exact:
                entry["oracle_rel_dev"] = {t: _rel_dev(values[t], ref) for t in same if t in detrep.ORACLES}
            else:
                entry["oracles_exact"] = all(values[t] == ref for t in same if t in detrep.ORACLES)
        times = entry["times_ms"]
        if isinstance(times.get("qism"), float) and isinstance(times.get("ik"), float) and times["ik"] > 0:
            ratio[n] = times["qism"] / times["ik"]
        rows.append(entry)
    window = [ratio[n] for n in range(4, 13) if n in ratio]
    return {
        "model": model.to_json(),
        "repetitions": reps,
        "rows": rows,
        "qism_over_ik": {str(n): round(r, 4) for n, r in ratio.items()},
        "ratio_monotone_4_12": monotone(window) if len(window) >= 2 else None,
    }


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sixvertex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="JSON job file ('-' for stdin)")
    common.add_argument("--seed", type=int, help="seed for every random draw")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--parallel", action="store_true", help="split enumeration over processes")
    common.add_argument("--no-timing", action="store_true", help="omit wall times for byte-stable output")
    common.add_argument("--n", type=int, help="N (enumerate) or largest N (verify, bench)")

    sub.add_parser("compute", parents=[common], help="evaluate one representation")
    v = sub.add_parser("verify", parents=[common], help="run the property matrix")
    v.add_argument("--checks", help="comma-separated subset of checks")
    v.add_argument("--inject-fault", action="store_true", help="flip the sign of c to test the harness")
    e = sub.add_parser("enumerate", parents=[common], help="list DWBC configurations")
    e.add_argument("--grids", action="store_true", help="include one digit grid per configuration")
    sub.add_parser("bench", parents=[common], help="time representations against N")
    return parser


_COMMANDS = {"compute": run_compute, "verify": run_verify, "enumerate": run_enumerate, "bench": run_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _load_spec(args.spec)
        return _COMMANDS[args.command](spec, args)
    except detrep.SingularConfigurationError as exc:
        print(f"singular parameters: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (SpecError, detrep.IncompatibleRepresentationError, ResourceLimitError,
            DegenerateBasisError, DomainError, KeyError, TypeError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
