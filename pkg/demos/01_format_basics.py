"""Tour of the diagonal-map matrix format.

A square matrix is stored as an ordered map from diagonal index d
(column minus row) to the full value array of that diagonal, zeros
included. Structured matrices with few occupied diagonals get dense
inner loops without any per-element index arrays.
"""
import numpy as np

from diaqsim import DiaqMatrix, from_dense, from_json, nnz, sparsity, to_dense, to_json

# The four-corner example: three occupied diagonals out of seven.
m = np.array(
    [
        [1, 0, 0, 2],
        [0, 3, 0, 0],
        [0, 0, 4, 0],
        [5, 0, 0, 6],
    ],
    dtype=complex,
)
a = from_dense(m)
print("dense:")
print(m.real.astype(int))
print(f"\nstored diagonals: {a.diag_indices()}")
for diag in a.diagonals():
    print(f"  d={diag.index:+d}  re={list(diag.re)}")

# Diagonal d holds n - |d| values; d = +3 is the single top-right corner.
print(f"\nnnz = {nnz(a)}, sparsity = {sparsity(a):.4f}")

# Round trips are exact: no thresholding happens unless you ask for it.
assert np.array_equal(to_dense(a), m)
wire = to_json(a)
print(f"\nwire form ({len(wire)} bytes):\n{wire}")
assert to_dense(from_json(wire)) is not None

# Building directly: set_diag copies values into aligned planar arrays.
b = DiaqMatrix(4)
b.set_diag(0, np.ones(4))
b.set_diag(2, np.array([5.0, 6.0]), np.array([-1.0, 0.0]))
print("\nhand-built matrix:")
print(to_dense(b))

# Stored zeros cost memory but not correctness; from_dense(eps=...) drops
# diagonals whose every entry sits at or below the threshold.
c = np.diag(np.ones(4)) + np.diag(np.full(2, 1e-20), 2)
print(f"\nno eps:     diagonals {from_dense(c).diag_indices()}")
print(f"eps=1e-15: diagonals {from_dense(c, eps=1e-15).diag_indices()}")
