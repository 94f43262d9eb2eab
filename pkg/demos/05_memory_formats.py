"""Storage models: where the diagonal map wins and where it loses.

The map pays for full diagonals, zeros included, plus 24 bytes of map
entry per diagonal. That beats index-per-element formats when the
occupied diagonals are genuinely dense, and loses badly when few
nonzeros scatter across many diagonals.
"""
import numpy as np

from diaqsim import (
    chain_product_analysis,
    estimate_map,
    from_dense,
    ghz_qasm,
    parse_circuit,
)


def show(label, a):
    mem = estimate_map(a)
    row = "  ".join(f"{k}={v:>9,}" for k, v in sorted(mem.items()))
    print(f"{label:24s} {row}")


n = 256
# Favorable: a tridiagonal operator. Three full diagonals, no waste.
tri = np.diag(np.ones(n)) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
show("tridiagonal 256", from_dense(tri))

# Neutral: identity. One diagonal either way.
show("identity 256", from_dense(np.eye(n)))

# Hostile: same nnz scattered one per diagonal.
scatter = np.zeros((n, n))
rng = np.random.default_rng(0)
for d in rng.choice(np.arange(1, n), size=120, replace=False):
    row = int(rng.integers(0, n - d))
    scatter[row, row + d] = 1.0
show("120 scattered corners", from_dense(scatter))

# GHZ chain products are the hostile case in the wild: nnz stays at
# 2N while the diagonal count grows with depth, so the map overtakes
# CSR within a few steps even though both crush dense storage.
print("\nghz10 chain products, bytes by format:")
print(f"{'t':>3s} {'nnz':>5s} {'diags':>6s} {'dense':>10s} {'diaq':>10s} {'csr':>8s}")
for rec in chain_product_analysis(parse_circuit(ghz_qasm(10))):
    mem = rec.memory_map()
    print(f"{rec.timestep:3d} {rec.nnz:5d} {rec.diag_count:6d} "
          f"{mem['dense']:10,} {mem['diaq']:10,} {mem['csr']:8,}")

print("\nthe map wins against dense everywhere; against CSR only while "
      "diagonals stay few and full")
