"""Benchmarking the two backends through the library API.

The bench subcommand wraps exactly this loop and emits CSV; here the
numbers stay in Python. Dense cost per gate is 4^span matrix work;
diaq cost follows the occupied diagonals, so wide states with narrow
gates favor it. Ratios near 1 are noise; expect consistent wins only
from ~20 qubits up on a quiet machine.
"""
import time

import numpy as np

from diaqsim import ghz_qasm, parse_circuit, qft_qasm, run


def bench(circuit, backend, reps=3, shots=1024):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        run(circuit, backend=backend, shots=shots, seed=0)
        times.append(time.perf_counter_ns() - t0)
    return np.mean(times), np.std(times, ddof=1) if reps > 1 else 0.0


print(f"{'circuit':8s} {'dense ms':>10s} {'diaq ms':>10s} {'speedup':>8s}")
for name, qasm in [
    ("ghz14", ghz_qasm(14)),
    ("ghz18", ghz_qasm(18)),
    ("qft10", qft_qasm(10)),
]:
    circuit = parse_circuit(qasm, name=name)
    run(circuit, backend="diaq", shots=0)  # warm up
    dense_mean, _ = bench(circuit, "dense")
    diaq_mean, _ = bench(circuit, "diaq")
    print(f"{name:8s} {dense_mean/1e6:10.2f} {diaq_mean/1e6:10.2f} "
          f"{dense_mean/diaq_mean:8.2f}")

print("\nsame comparison via the CLI:")
print("  diaqsim gen ghz --qubits 18 --out /tmp/ghz18.qasm")
print("  diaqsim bench /tmp/ghz18.qasm --reps 5 --out bench.csv")
