#!/usr/bin/env python3
"""Regenerate test/goldens/ from the installed diaqsim CLI.

Every fixture is produced by the core through its public interfaces
(kernel, run, gen), never by this script's own arithmetic, so the
binding tests check parity with the core rather than with themselves.
"""
import json
import subprocess
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "test" / "goldens"


def cli(args, stdin=""):
    proc = subprocess.run(
        ["diaqsim", *args], input=stdin, capture_output=True, text=True, check=True
    )
    return proc.stdout


def kernel(op, request):
    return json.loads(cli(["kernel", op], json.dumps(request)))


def pairs(rows):
    return [[[float(v), 0.0] for v in row] for row in rows]


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    # four-corner example: three occupied diagonals
    corner = [[1, 0, 0, 2], [0, 3, 0, 0], [0, 0, 4, 0], [5, 0, 0, 6]]
    dense = pairs(corner)
    wire = kernel("from-dense", {"dense": dense})
    back = kernel("to-dense", {"a": wire})["dense"]
    (OUT / "corner_matrix.json").write_text(
        json.dumps({"dense": dense, "wire": wire, "round_trip": back}, indent=1)
    )

    # banded 8x8 product, wire and dense forms all core-produced
    a_rows = [[(i + 1 if i == j else (i + 2 if j == i + 2 else 0)) for j in range(8)] for i in range(8)]
    b_rows = [[(2 * i + 1 if i == j else (i + 3 if j == i - 1 else 0)) for j in range(8)] for i in range(8)]
    a_wire = kernel("from-dense", {"dense": pairs(a_rows)})
    b_wire = kernel("from-dense", {"dense": pairs(b_rows)})
    c_wire = kernel("matmul", {"a": a_wire, "b": b_wire})
    c_dense = kernel("to-dense", {"a": c_wire})["dense"]
    x = [[float(k % 5 - 2), float((k * k) % 3)] for k in range(8)]
    y = kernel("spmv", {"a": a_wire, "x": x})["y"]
    (OUT / "matmul_case.json").write_text(
        json.dumps(
            {
                "a_dense": pairs(a_rows),
                "b_dense": pairs(b_rows),
                "a": a_wire,
                "b": b_wire,
                "c": c_wire,
                "c_dense": c_dense,
                "x": x,
                "y": y,
            },
            indent=1,
        )
    )

    # ghz4 through the run CLI with --emit-state; the binding's
    # simulate() must reproduce counts and state exactly
    qasm = cli(["gen", "ghz", "--qubits", "4"])
    payload = json.loads(
        cli(["run", "-", "--seed", "7", "--emit-state", "--threads", "1"], qasm)
    )
    (OUT / "ghz4_run.json").write_text(
        json.dumps({"qasm": qasm, "run": payload}, indent=1)
    )

    print(f"wrote {len(list(OUT.glob('*.json')))} goldens to {OUT}")


if __name__ == "__main__":
    sys.exit(main())
