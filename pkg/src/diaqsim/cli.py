"""Command-line front end.

Subcommands: run (simulate one circuit, JSON/CSV to stdout), bench
(repeat circuits across backends, CSV with mean/std/speedup rows),
analyze (sparsity and memory CSV), gen (QASM generators), kernel
(JSON-over-stdin access to the matrix kernels, used by language
bindings).

Exit codes: 0 success, 2 parse error, 3 unsupported feature or gate,
4 resource guard, 1 anything else. Messages go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    chain_product_analysis,
    emit_analysis_csv,
    emit_analysis_json,
    timestep_analysis,
)
from .circuits import GENERATORS
from .errors import (
    DiaqError,
    ParseError,
    ResourceError,
    UnsupportedFeatureError,
    UnsupportedGateError,
)
from .gates import DEFAULT_SPAN_LIMIT
from .matrix import from_dense, from_json_dict, matmul, spmv, to_dense, to_json_dict
from .qasm import parse_circuit
from .sim import run as sim_run

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_RESOURCE = 4

BENCH_HEADER = (
    "circuit,n_qubits,backend,rep,shots,fusion,status,"
    "t_compile_ns,t_apply_ns,t_sample_ns,t_total_ns,speedup"
)


def _read_source(path: str) -> tuple[str, str]:
    """Return (circuit name, QASM text); '-' reads stdin."""
    if path == "-":
        return "stdin", sys.stdin.read()
    p = Path(path)
    return p.stem, p.read_text()


def _resolve_threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("DIAQ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _write_out(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _complex_pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def _pairs_to_complex(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


# -- run -----------------------------------------------------------------


def cmd_run(args) -> int:
    name, source = _read_source(args.file)
    circuit = parse_circuit(source, name=name)
    result = sim_run(
        circuit,
        backend=args.backend,
        shots=args.shots,
        seed=args.seed,
        fusion=args.fusion == "on",
        span_limit=args.span_limit,
        emit_state=args.emit_state,
        threads=_resolve_threads(args.threads),
    )
    if args.out == "csv":
        lines = ["bitstring,count"]
        lines.extend(f"{bits},{cnt}" for bits, cnt in sorted(result.counts.items()))
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    payload = {
        "circuit": name,
        "n_qubits": result.n_qubits,
        "backend": result.backend,
        "shots": result.shots,
        "seed": result.seed,
        "counts": dict(sorted(result.counts.items())),
        "timings_ns": result.timings_ns,
    }
    if result.state is not None:
        payload["state"] = _complex_pairs(result.state)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


# -- bench ---------------------------------------------------------------


def _bench_row(name, n_qubits, backend, rep, args, status, timings=None, speedup="") -> str:
    t = timings or {}
    cols = [
        name,
        str(n_qubits),
        backend,
        str(rep),
        str(args.shots),
        args.fusion,
        status,
        str(t.get("compile", "")),
        str(t.get("apply_total", "")),
        str(t.get("sample", "")),
        str(t.get("total", "")),
        str(speedup),
    ]
    return ",".join(cols)


def cmd_bench(args) -> int:
    backends = [b.strip() for b in args.backends.split(",") if b.strip()]
    threads = _resolve_threads(args.threads)
    rows = [BENCH_HEADER]
    for path in args.files:
        name, source = _read_source(path)
        try:
            circuit = parse_circuit(source, name=name)
        except DiaqError as exc:
            rows.append(_bench_row(name, "", "", "", args, f"error:{type(exc).__name__}"))
            print(f"{path}: {exc}", file=sys.stderr)
            continue
        means: dict[str, float] = {}
        for backend in backends:
            totals = {"compile": [], "apply_total": [], "sample": [], "total": []}
            failed = False
            for rep in range(1, args.reps + 1):
                try:
                    result = sim_run(
                        circuit,
                        backend=backend,
                        shots=args.shots,
                        seed=args.seed,
                        fusion=args.fusion == "on",
                        span_limit=args.span_limit,
                        threads=threads,
                    )
                except DiaqError as exc:
                    rows.append(
                        _bench_row(
                            name, circuit.n_qubits, backend, rep, args,
                            f"error:{type(exc).__name__}",
                        )
                    )
                    print(f"{path} [{backend}]: {exc}", file=sys.stderr)
                    failed = True
                    break
                t = result.timings_ns
                for phase in totals:
                    totals[phase].append(t[phase])
                rows.append(
                    _bench_row(name, circuit.n_qubits, backend, rep, args, "ok", t)
                )
            if failed or not totals["total"]:
                continue
            mean = {ph: float(np.mean(v)) for ph, v in totals.items()}
            std = {
                ph: float(np.std(v, ddof=1)) if len(v) > 1 else 0.0
                for ph, v in totals.items()
            }
            means[backend] = mean["total"]
            rows.append(_bench_row(name, circuit.n_qubits, backend, "mean", args, "ok", mean))
            rows.append(_bench_row(name, circuit.n_qubits, backend, "std", args, "ok", std))
        if "dense" in means and "diaq" in means and means["diaq"] > 0:
            rows.append(
                _bench_row(
                    name, circuit.n_qubits, "dense/diaq", "speedup", args, "ok",
                    speedup=f"{means['dense'] / means['diaq']:.6f}",
                )
            )
    _write_out("\n".join(rows) + "\n", args.out)
    return EXIT_OK


# -- analyze -------------------------------------------------------------


def cmd_analyze(args) -> int:
    name, source = _read_source(args.file)
    circuit = parse_circuit(source, name=name)
    kwargs = {"eps": args.eps, "span_limit": args.span_limit}
    emit = emit_analysis_json if args.format == "json" else emit_analysis_csv
    if args.mode == "timestep":
        text = emit(timestep_analysis(circuit, **kwargs))
    elif args.mode == "chain":
        text = emit(chain_product_analysis(circuit, **kwargs))
    else:
        t_rows = timestep_analysis(circuit, **kwargs)
        c_rows = chain_product_analysis(circuit, **kwargs)
        if args.format == "json":
            merged = json.loads(emit(t_rows, mode="timestep")) + json.loads(
                emit(c_rows, mode="chain")
            )
            text = json.dumps(merged, indent=2)
        else:
            chain_csv = emit(c_rows, mode="chain").split("\n", 1)[1]
            text = emit(t_rows, mode="timestep") + chain_csv
    _write_out(text, args.out)
    return EXIT_OK


# -- gen -----------------------------------------------------------------


def cmd_gen(args) -> int:
    text = GENERATORS[args.kind](args.qubits, measure=not args.no_measure)
    _write_out(text, args.out)
    return EXIT_OK


# -- kernel --------------------------------------------------------------


def cmd_kernel(args) -> int:
    request = json.loads(sys.stdin.read())
    op = args.op
    if op == "from-dense":
        rows = request["dense"]
        m = np.array(
            [[complex(p[0], p[1]) for p in row] for row in rows], dtype=np.complex128
        )
        out = to_json_dict(from_dense(m, eps=float(request.get("eps", 0.0))))
    elif op == "to-dense":
        m = to_dense(from_json_dict(request["a"]))
        out = {"dense": [_complex_pairs(row) for row in m]}
    elif op == "matmul":
        c = matmul(from_json_dict(request["a"]), from_json_dict(request["b"]))
        out = to_json_dict(c)
    elif op == "spmv":
        y = spmv(from_json_dict(request["a"]), _pairs_to_complex(request["x"]))
        out = {"y": _complex_pairs(y)}
    else:  # simulate: QASM text in, counts/state out
        circuit = parse_circuit(request["qasm"], name=request.get("name", "qasm"))
        result = sim_run(
            circuit,
            backend=request.get("backend", "diaq"),
            shots=int(request.get("shots", 1024)),
            seed=int(request.get("seed", 0)),
            emit_state=bool(request.get("emit_state", False)),
        )
        out = {
            "counts": dict(sorted(result.counts.items())),
            "n_qubits": result.n_qubits,
            "backend": result.backend,
        }
        if result.state is not None:
            out["state"] = _complex_pairs(result.state)
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diaqsim", description="Sparse diagonal-map quantum circuit simulator"
    )
    parser.add_argument("--version", action="version", version=f"diaqsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common_run_flags(p):
        p.add_argument("--backend", choices=("dense", "diaq"), default="diaq")
        p.add_argument("--shots", type=int, default=1024)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--fusion", choices=("on", "off"), default="off")
        p.add_argument("--span-limit", type=int, default=DEFAULT_SPAN_LIMIT)
        p.add_argument("--threads", type=int, default=None,
                       help="kernel workers (default: DIAQ_THREADS or all cores)")

    p_run = sub.add_parser("run", help="simulate one QASM file")
    p_run.add_argument("file", help="QASM path, or - for stdin")
    common_run_flags(p_run)
    p_run.add_argument("--emit-state", action="store_true")
    p_run.add_argument("--out", choices=("json", "csv"), default="json")
    p_run.set_defaults(fn=cmd_run)

    p_bench = sub.add_parser("bench", help="repeat circuits across backends")
    p_bench.add_argument("files", nargs="+")
    p_bench.add_argument("--backends", default="dense,diaq")
    p_bench.add_argument("--reps", type=int, default=10)
    p_bench.add_argument("--shots", type=int, default=1024)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--fusion", choices=("on", "off"), default="off")
    p_bench.add_argument("--span-limit", type=int, default=DEFAULT_SPAN_LIMIT)
    p_bench.add_argument("--threads", type=int, default=None)
    p_bench.add_argument("--out", default="-", help="CSV path, - for stdout")
    p_bench.set_defaults(fn=cmd_bench)

    p_an = sub.add_parser("analyze", help="sparsity and memory analysis")
    p_an.add_argument("file")
    p_an.add_argument("--eps", type=float, default=1e-15)
    p_an.add_argument("--mode", choices=("timestep", "chain", "both"), default="timestep")
    p_an.add_argument("--span-limit", type=int, default=DEFAULT_SPAN_LIMIT)
    p_an.add_argument("--format", choices=("csv", "json"), default="csv")
    p_an.add_argument("--out", default="-")
    p_an.set_defaults(fn=cmd_analyze)

    p_gen = sub.add_parser("gen", help="generate benchmark QASM")
    p_gen.add_argument("kind", choices=sorted(GENERATORS))
    p_gen.add_argument("--qubits", type=int, required=True)
    p_gen.add_argument("--no-measure", action="store_true")
    p_gen.add_argument("--out", default="-")
    p_gen.set_defaults(fn=cmd_gen)

    p_k = sub.add_parser("kernel", help="matrix kernels over JSON stdin/stdout")
    p_k.add_argument("op", choices=("from-dense", "to-dense", "matmul", "spmv", "simulate"))
    p_k.set_defaults(fn=cmd_kernel)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedFeatureError, UnsupportedGateError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DiaqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
