"""Command-line entry point: ``wldh <command> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import traceback
from concurrent.futures import ProcessPoolExecutor

from . import kernels
from .algebra import SearchLimitError, enumerate_algebraic_isomorphisms, find_inducing_bijection
from .config import (
    CoherenceViolation,
    NotARainbowError,
    from_json,
    to_json,
    validate_coherence,
    wl_of_graph,
)
from .dh import generate_dh, is_distance_hereditary
from .graphs import Graph
from .io import FormatError, parse_graph, to_graph6
from .iso import ISOMORPHIC, NON_ISOMORPHIC, TheoremContractError, test_isomorphism
from .reduction import NotDistanceHereditaryError, ReductionError, reduce

EX_OK = 0
EX_FALSE = 1
EX_UNKNOWN = 2
EX_USAGE = 64
EX_SOFTWARE = 70
EX_IOERR = 74

BENCH_FIELDS = ["n", "index", "seed", "backend", "seconds", "colors", "fibers", "rounds"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _default_seed() -> int:
    raw = os.environ.get("WLDH_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"WLDH_SEED must be an integer, got {raw!r}") from None


def _read_source(arg: str | None) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    if os.path.exists(arg):
        with open(arg) as fh:
            return fh.read()
    if os.sep in arg or arg.endswith((".g6", ".txt", ".json")):
        raise OSError(f"no such file: {arg}")
    return arg


def _load_graph(arg: str | None) -> Graph:
    text = _read_source(arg)
    if not text.strip():
        raise FormatError("no graph on input")
    return parse_graph(text)


def _load_graphs(arg: str | None) -> list[Graph]:
    text = _read_source(arg)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines and len(lines[0].split()) == 2:
        return [parse_graph(text)]
    return [parse_graph(ln) for ln in lines]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=None, separators=(",", ":")) + "\n"


def _parse_weights(raw: str) -> tuple[float, float, float]:
    try:
        w = tuple(float(x) for x in raw.split(","))
    except ValueError:
        raise UsageError(f"bad weights {raw!r}") from None
    if len(w) != 3:
        raise UsageError("weights take three comma-separated numbers")
    return w


# -- commands ----------------------------------------------------------------


def _gen_one(job):
    n, seed, weights = job
    g, log = generate_dh(n, seed, weights)
    return to_graph6(g), log


def cmd_gen_dh(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    weights = _parse_weights(args.weights)
    try:
        generate_dh(1, seed, weights)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    jobs = [(args.n, seed + i, weights) for i in range(args.count)]
    results = _map(_gen_one, jobs, args.jobs)
    if args.json:
        rows = [
            {"schema": "wldh.gen/1", "graph6": g6, "seed": seed + i, "log": [list(x) for x in log]}
            for i, (g6, log) in enumerate(results)
        ]
        _emit("".join(_dumps(r) for r in rows), args.out)
    else:
        _emit("".join(g6 + "\n" for g6, _ in results), args.out)
    return EX_OK


def cmd_recognize(args) -> int:
    graphs = _load_graphs(args.graph)
    verdicts = []
    for g in graphs:
        ok, order = is_distance_hereditary(g)
        verdicts.append(ok)
        if args.json:
            sys.stdout.write(
                _dumps({"schema": "wldh.recognize/1", "distance_hereditary": ok, "pruning": [list(x) for x in order]})
            )
        else:
            print("true" if ok else "false")
    return EX_OK if all(verdicts) else EX_FALSE


def cmd_wl(args) -> int:
    g = _load_graph(args.graph)
    x = wl_of_graph(g)
    _emit(json.dumps(to_json(x)) + "\n", args.out)
    return EX_OK


def cmd_validate(args) -> int:
    try:
        data = json.loads(_read_source(args.config))
    except json.JSONDecodeError as exc:
        raise FormatError(f"configuration is not JSON: {exc}") from None
    try:
        x = from_json(data)
    except NotARainbowError as exc:
        print(_dumps({"schema": "wldh.validate/1", "valid": False, "reason": str(exc)}), end="")
        return EX_FALSE
    try:
        validate_coherence(x)
    except CoherenceViolation as exc:
        print(_dumps({"schema": "wldh.validate/1", "valid": False, "violation": exc.as_dict()}), end="")
        return EX_FALSE
    print(_dumps({"schema": "wldh.validate/1", "valid": True, "colors": x.k, "fibers": len(x.fibers)}), end="")
    return EX_OK


def cmd_reduce(args) -> int:
    g = _load_graph(args.graph)
    try:
        trace = reduce(g)
    except NotDistanceHereditaryError as exc:
        print(f"not reducible: {exc}", file=sys.stderr)
        return EX_FALSE
    payload = trace.as_dict()
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    if args.json:
        sys.stdout.write(_dumps(payload))
    else:
        for i, step in enumerate(payload["steps"]):
            flag = "ok" if step["closure_commutes"] and step["partition_correct"] else "FAIL"
            print(f"{i}: {step['kind']} {step['before']} -> {step['after']} {flag}")
    return EX_OK if trace.clean else EX_FALSE


def cmd_iso(args) -> int:
    g, h = _load_graph(args.a), _load_graph(args.b)
    verdict = test_isomorphism(g, h, budget=args.budget)
    if args.json:
        sys.stdout.write(_dumps(verdict.as_dict()))
    else:
        line = verdict.kind
        if verdict.witness is not None:
            line += " " + " ".join(map(str, verdict.witness))
        if verdict.certificate:
            line += f" (differs in {verdict.certificate})"
        if verdict.detail:
            line += f" ({verdict.detail})"
        print(line)
    return {ISOMORPHIC: EX_OK, NON_ISOMORPHIC: EX_FALSE}.get(verdict.kind, EX_UNKNOWN)


def cmd_aiso(args) -> int:
    a, b = wl_of_graph(_load_graph(args.a)), wl_of_graph(_load_graph(args.b))
    try:
        res = enumerate_algebraic_isomorphisms(a, b, args.limit)
    except SearchLimitError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    for iso in res.isomorphisms[: args.show]:
        try:
            f = find_inducing_bijection(a, b, iso)
            status = "induced" if f is not None else "not_induced"
        except SearchLimitError:
            f, status = None, "unknown"
        rows.append({"phi": list(iso.phi), "status": status, "witness": list(f) if f else None})
    if args.json:
        sys.stdout.write(
            _dumps({"schema": "wldh.aiso/1", "count": len(res), "complete": res.complete, "maps": rows})
        )
    else:
        print(f"{len(res)} algebraic isomorphism(s){'' if res.complete else ' (truncated)'}")
        for row in rows:
            print(f"{row['status']}: {' '.join(map(str, row['phi']))}")
    return EX_OK


def _bench_one(job):
    n, index, seed, backend = job
    kernels.use_backend(backend)
    g, _ = generate_dh(n, seed)
    t0 = time.perf_counter()
    x = wl_of_graph(g)
    dt = time.perf_counter() - t0
    return {
        "n": n, "index": index, "seed": seed, "backend": backend,
        "seconds": f"{dt:.6f}", "colors": x.k, "fibers": len(x.fibers), "rounds": x.rounds,
    }


def cmd_bench(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    try:
        sizes = [int(s) for s in args.sizes.split(",")]
    except ValueError:
        raise UsageError(f"bad sizes {args.sizes!r}") from None
    if args.backend == "both":
        backends = sorted(kernels.BACKENDS)
    elif args.backend == "auto":
        backends = [kernels.BACKEND]
    elif args.backend in kernels.BACKENDS:
        backends = [args.backend]
    else:
        raise UsageError(f"backend {args.backend!r} unavailable")
    jobs = [(n, i, seed + i, b) for n in sizes for i in range(args.count) for b in backends]
    rows = _map(_bench_one, jobs, args.jobs)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return EX_OK


def _map(fn, jobs, n_jobs):
    if n_jobs and n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wldh", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen-dh", help="generate random connected distance-hereditary graphs")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--seed", type=int, default=None, help="default: $WLDH_SEED or 0")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--weights", default="1,1,1", help="pendant,true-twin,false-twin")
    s.add_argument("--json", action="store_true")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_gen_dh)

    s = sub.add_parser("recognize", help="distance-hereditary test for each input graph")
    s.add_argument("graph", nargs="?")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("wl", help="dump the coherent closure of a graph as JSON")
    s.add_argument("graph", nargs="?")
    s.add_argument("--out")
    s.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    s.set_defaults(func=cmd_wl)

    s = sub.add_parser("validate", help="check a configuration JSON for coherence")
    s.add_argument("config", nargs="?")
    s.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("reduce", help="reduce a distance-hereditary graph to K_1 with verification")
    s.add_argument("graph", nargs="?")
    s.add_argument("--trace")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--budget", type=int, default=10**6)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("aiso", help="algebraic isomorphisms between two closures")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--limit", type=int, default=1000)
    s.add_argument("--show", type=int, default=10)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_aiso)

    s = sub.add_parser("bench", help="time the closure over generated corpora (CSV)")
    s.add_argument("--sizes", default="50,100,200")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--backend", default="both", help="auto, compiled, python or both")
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wldh: {exc}", file=sys.stderr)
        return EX_USAGE
    except FormatError as exc:
        print(f"wldh: bad input: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"wldh: {exc}", file=sys.stderr)
        return EX_IOERR
    except (TheoremContractError, ReductionError, AssertionError) as exc:
        print(f"wldh: internal invariant breach: {exc}", file=sys.stderr)
        traceback.print_exc(file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
