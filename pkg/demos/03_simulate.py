"""Circuit simulation: QASM in, counts out, two backends.

The diaq backend applies each gate from its diagonals in the fused
form; the dense backend materializes every span operator and serves
as the reference. Both share the compiler, the sampler, and the seed
discipline, so counts agree exactly.
"""
import numpy as np

from diaqsim import ghz_qasm, parse_circuit, run

qasm = ghz_qasm(10)
print(qasm[:120] + "...\n")

circuit = parse_circuit(qasm, name="ghz10")
result = run(circuit, backend="diaq", shots=2048, seed=42, emit_state=True)

print(f"backend={result.backend} shots={result.shots} seed={result.seed}")
print(f"counts: {result.counts}")

amp = 1 / np.sqrt(2)
print(f"\namplitude at |0...0> = {result.state[0]:.6f} (want {amp:.6f})")
print(f"amplitude at |1...1> = {result.state[-1]:.6f}")

reference = run(circuit, backend="dense", shots=2048, seed=42, emit_state=True)
print(f"\ndense backend counts match: {reference.counts == result.counts}")
print(f"state agreement: {np.max(np.abs(reference.state - result.state)):.2e}")

# Timings are per-phase nanoseconds; per_gate keys are "index:name".
t = result.timings_ns
print(f"\ncompile {t['compile']/1e3:.0f} us, apply {t['apply_total']/1e3:.0f} us, "
      f"sample {t['sample']/1e3:.0f} us")
slowest = max(t["per_gate"].items(), key=lambda kv: kv[1])
print(f"slowest gate: {slowest[0]} at {slowest[1]/1e3:.0f} us")

# Fusion multiplies consecutive same-span gate matrices before applying.
fused = run(circuit, backend="diaq", shots=2048, seed=42, fusion=True)
print(f"\nfusion=on counts match: {fused.counts == result.counts}")
