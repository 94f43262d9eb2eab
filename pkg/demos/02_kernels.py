"""The three kernels: spGEMM, spMV, and the fused tensor apply.

All work diagonal-by-diagonal. A product diagonal d_C only receives
contributions from pairs with d_A + d_B = d_C, and each contribution
is one contiguous slice multiply, so the inner loops stay dense.
"""
import numpy as np

from diaqsim import (
    Placement,
    StateVector,
    apply_placed,
    from_dense,
    kron_identity,
    matmul,
    spmv,
    to_dense,
)

rng = np.random.default_rng(7)


def random_banded(n, diags):
    m = np.zeros((n, n), dtype=complex)
    for d in diags:
        k = n - abs(d)
        vals = rng.normal(size=k) + 1j * rng.normal(size=k)
        m += np.diag(vals, d)
    return m


# -- spGEMM --------------------------------------------------------------
da = random_banded(64, (-3, 0, 5))
db = random_banded(64, (-5, 0, 2))
a, b = from_dense(da), from_dense(db)
c = matmul(a, b)
print(f"A diagonals {a.diag_indices()} x B diagonals {b.diag_indices()}")
print(f"  -> C diagonals {c.diag_indices()}")
print(f"  max |C - dense oracle| = {np.max(np.abs(to_dense(c) - da @ db)):.2e}")

# Accumulation is ordered (ascending d_A, then d_B), so repeats are
# bitwise identical, not just close.
assert matmul(a, b) == c

# Products whose nonzeros cancel drop out entirely: X @ X = I.
x_gate = from_dense(np.array([[0, 1], [1, 0]], dtype=complex))
print(f"\nX @ X stored diagonals: {matmul(x_gate, x_gate).diag_indices()}")

# -- spMV ----------------------------------------------------------------
v = rng.normal(size=64) + 1j * rng.normal(size=64)
y = spmv(a, v)
print(f"\nspMV max err = {np.max(np.abs(y - da @ v)):.2e}")

# -- fused apply ---------------------------------------------------------
# (I_4 (x) M (x) I_8) @ x without building the 128x128 operator.
m = from_dense(random_banded(4, (-1, 0, 1)))
p = Placement(dim_a=4, m=m, dim_b=8, span_lo=2, span_hi=3, name="demo")
x = StateVector(7, rng.normal(size=128) + 1j * rng.normal(size=128))
fused = apply_placed(p, x).amps
full = to_dense(kron_identity(4, m, 8)) @ x.amps
print(f"fused apply max err = {np.max(np.abs(fused - full)):.2e}")

# Worker count never changes bits: rep blocks are disjoint and each
# block runs the same ascending-diagonal loop.
assert np.array_equal(fused, apply_placed(p, x, threads=4).amps)
print("threads=1 and threads=4 agree bitwise")
