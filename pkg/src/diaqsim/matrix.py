"""Diagonal-map sparse matrices and their linear-algebra kernels.

A DiaqMatrix stores a square complex matrix as a map from diagonal
index to the full diagonal, zeros included. The index convention is
d = column - row: 0 is the principal diagonal, positive indices sit
above it, negative below. Element (r, c) of diagonal d = c - r lives
at storage position k = r + min(d, 0), so every diagonal is one
contiguous array of length n - |d| and both planes (real/imaginary)
are stored separately for slice-friendly kernels.

All kernels take immutable inputs and return fresh matrices. Diagonal
pairs are always processed in ascending index order, which makes every
operation bitwise deterministic.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .alloc import DEFAULT_ALIGNMENT, aligned_zeros
from .errors import ShapeError

# diagonals whose values all fall below this after a matmul are dropped
PRUNE_EPS = 1e-15

DTYPES = {"single": np.float32, "double": np.float64}


def diag_len(d: int, n_dim: int) -> int:
    """Length of diagonal d of an n_dim x n_dim matrix."""
    if abs(d) > n_dim - 1:
        raise ValueError(f"diagonal {d} out of range for n_dim={n_dim}")
    return n_dim - abs(d)


@dataclass
class Diagonal:
    """One stored diagonal: planar real/imaginary value arrays."""

    index: int
    re: np.ndarray
    im: np.ndarray

    def __len__(self) -> int:
        return len(self.re)


class DiaqMatrix:
    """Square complex matrix stored as an ordered map of full diagonals.

    Diagonals that are entirely zero may be absent; lookups of absent
    diagonals behave as all-zero. Iteration is always in ascending
    diagonal-index order.
    """

    def __init__(self, n_dim: int, dtype=np.float64, align: int = DEFAULT_ALIGNMENT):
        if n_dim < 1:
            raise ShapeError(f"n_dim must be >= 1, got {n_dim}")
        self.n_dim = int(n_dim)
        self.dtype = np.dtype(dtype)
        self.align = align
        self._diags: dict[int, Diagonal] = {}

    # -- storage ---------------------------------------------------------

    def set_diag(self, d: int, re, im=None) -> None:
        """Install diagonal d from value arrays (copied into aligned storage)."""
        want = diag_len(d, self.n_dim)
        re = np.asarray(re, dtype=self.dtype)
        im = np.zeros(want, dtype=self.dtype) if im is None else np.asarray(im, dtype=self.dtype)
        if len(re) != want or len(im) != want:
            raise ShapeError(f"diagonal {d} of n_dim={self.n_dim} needs {want} values")
        dre = aligned_zeros(want, self.dtype, self.align)
        dim = aligned_zeros(want, self.dtype, self.align)
        dre[:] = re
        dim[:] = im
        self._diags[d] = Diagonal(d, dre, dim)

    def get(self, d: int) -> Diagonal | None:
        return self._diags.get(d)

    def drop(self, d: int) -> None:
        self._diags.pop(d, None)

    def diag_indices(self) -> list[int]:
        return sorted(self._diags)

    def diagonals(self):
        """Yield stored diagonals in ascending index order."""
        for d in sorted(self._diags):
            yield self._diags[d]

    def diag_count(self) -> int:
        return len(self._diags)

    def copy(self) -> DiaqMatrix:
        out = DiaqMatrix(self.n_dim, self.dtype, self.align)
        for diag in self.diagonals():
            out.set_diag(diag.index, diag.re, diag.im)
        return out

    # -- convenience -----------------------------------------------------

    def to_dense(self) -> np.ndarray:
        return to_dense(self)

    def __matmul__(self, other: DiaqMatrix) -> DiaqMatrix:
        return matmul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiaqMatrix):
            return NotImplemented
        if self.n_dim != other.n_dim or self.diag_indices() != other.diag_indices():
            return False
        return all(
            np.array_equal(a.re, b.re) and np.array_equal(a.im, b.im)
            for a, b in zip(self.diagonals(), other.diagonals())
        )

    def __repr__(self) -> str:
        return f"DiaqMatrix(n_dim={self.n_dim}, diagonals={self.diag_indices()})"


def identity(n_dim: int, dtype=np.float64) -> DiaqMatrix:
    out = DiaqMatrix(n_dim, dtype)
    out.set_diag(0, np.ones(n_dim, dtype=dtype))
    return out


# -- conversions ---------------------------------------------------------


def from_dense(m, eps: float = 0.0, dtype=np.float64) -> DiaqMatrix:
    """Build a DiaqMatrix keeping every diagonal of `m` with an entry above eps.

    Magnitude is measured as |re| + |im| throughout the library. With
    eps = 0 the round trip through to_dense is exact.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    out = DiaqMatrix(n, dtype)
    for d in range(-(n - 1), n):
        # np.diagonal returns elements in exactly our storage order
        vals = np.diagonal(m, d)
        re = np.ascontiguousarray(vals.real, dtype=dtype)
        im = np.ascontiguousarray(vals.imag, dtype=dtype)
        if np.any(np.abs(re) + np.abs(im) > eps):
            out.set_diag(d, re, im)
    return out


def to_dense(a: DiaqMatrix) -> np.ndarray:
    """Scatter all stored diagonals into a dense complex array."""
    n = a.n_dim
    out = np.zeros((n, n), dtype=np.complex128)
    flat = out.ravel()
    for diag in a.diagonals():
        d = diag.index
        # element (r, c) sits at flat index r*n + c; walking a diagonal
        # advances both r and c, i.e. stride n + 1
        base = d if d >= 0 else -d * n
        flat[base : base + len(diag) * (n + 1) : n + 1] = diag.re + 1j * diag.im
    return out


# -- kernels -------------------------------------------------------------


def _pair_range(d_a: int, d_b: int, n: int) -> tuple[int, int]:
    """Valid row range [lo, hi) for combining diagonals d_a of A and d_b of B."""
    d_c = d_a + d_b
    lo = max(0, -d_a, -d_c)
    hi = min(n, n - d_a, n - d_c)
    return lo, hi


def multiply_diagonals(diag_a: Diagonal, diag_b: Diagonal, n_dim: int):
    """Combine one diagonal of A with one of B.

    Returns (d_c, Diagonal) holding the contribution to result diagonal
    d_c = d_a + d_b, or None when the pair contributes nothing (result
    diagonal outside the matrix, or empty row range). The four input
    arrays are the two planar planes of each diagonal.
    """
    d_a, d_b = diag_a.index, diag_b.index
    d_c = d_a + d_b
    if abs(d_c) >= n_dim:
        return None
    lo, hi = _pair_range(d_a, d_b, n_dim)
    if lo >= hi:
        return None
    out_re = np.zeros(n_dim - abs(d_c), dtype=diag_a.re.dtype)
    out_im = np.zeros_like(out_re)
    _accumulate_pair(diag_a, diag_b, n_dim, out_re, out_im)
    return d_c, Diagonal(d_c, out_re, out_im)


def _accumulate_pair(diag_a, diag_b, n, acc_re, acc_im):
    """Add A_dA * B_dB contributions into the accumulator planes of d_c."""
    d_a, d_b = diag_a.index, diag_b.index
    d_c = d_a + d_b
    lo, hi = _pair_range(d_a, d_b, n)
    if lo >= hi:
        return
    sa = slice(lo + min(d_a, 0), hi + min(d_a, 0))
    sb = slice(lo + d_a + min(d_b, 0), hi + d_a + min(d_b, 0))
    sc = slice(lo + min(d_c, 0), hi + min(d_c, 0))
    ar, ai = diag_a.re[sa], diag_a.im[sa]
    br, bi = diag_b.re[sb], diag_b.im[sb]
    acc_re[sc] += ar * br - ai * bi
    acc_im[sc] += ar * bi + ai * br


def matmul(a: DiaqMatrix, b: DiaqMatrix) -> DiaqMatrix:
    """Sparse product A @ B over diagonal pairs.

    Every pair (d_a, d_b) contributes to result diagonal d_a + d_b.
    Pairs are accumulated in ascending lexicographic order, so repeated
    calls are bitwise identical. Result diagonals that end up entirely
    below PRUNE_EPS are dropped.
    """
    if a.n_dim != b.n_dim:
        raise ShapeError(
            f"not multiplyable: {a.n_dim}x{a.n_dim} by {b.n_dim}x{b.n_dim}"
        )
    n = a.n_dim
    dtype = np.result_type(a.dtype, b.dtype)
    acc: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for diag_a in a.diagonals():
        for diag_b in b.diagonals():
            d_c = diag_a.index + diag_b.index
            if abs(d_c) >= n:
                continue
            lo, hi = _pair_range(diag_a.index, diag_b.index, n)
            if lo >= hi:
                continue
            if d_c not in acc:
                length = n - abs(d_c)
                acc[d_c] = (np.zeros(length, dtype=dtype), np.zeros(length, dtype=dtype))
            _accumulate_pair(diag_a, diag_b, n, *acc[d_c])
    out = DiaqMatrix(n, dtype)
    for d_c in sorted(acc):
        re, im = acc[d_c]
        if np.any(np.abs(re) + np.abs(im) > PRUNE_EPS):
            out.set_diag(d_c, re, im)
    return out


def spmv(a: DiaqMatrix, x) -> np.ndarray:
    """Sparse matrix-vector product A @ x.

    Per diagonal d with values v: d < 0 adds v[i]*x[i] into y[i - d],
    d > 0 adds v[i]*x[i + d] into y[i], and the principal diagonal adds
    v[i]*x[i]. Each branch is a single slice operation per plane.
    """
    x = np.asarray(x)
    n = a.n_dim
    if x.shape != (n,):
        raise ShapeError(f"not multiplyable: {n}x{n} by vector of shape {x.shape}")
    xr, xi = x.real, x.imag
    yr = np.zeros(n, dtype=np.float64)
    yi = np.zeros(n, dtype=np.float64)
    for diag in a.diagonals():
        d = diag.index
        length = len(diag)
        if d < 0:
            sy = slice(-d, -d + length)
            sx = slice(0, length)
        else:
            sy = slice(0, length)
            sx = slice(d, d + length)
        yr[sy] += diag.re * xr[sx] - diag.im * xi[sx]
        yi[sy] += diag.re * xi[sx] + diag.im * xr[sx]
    return yr + 1j * yi


def transpose(a: DiaqMatrix) -> DiaqMatrix:
    """Transpose: diagonal d moves to -d, value arrays unchanged.

    The storage convention makes position k of diagonal d and of -d
    transposes of each other, so no data movement is needed.
    """
    out = DiaqMatrix(a.n_dim, a.dtype, a.align)
    for diag in a.diagonals():
        out.set_diag(-diag.index, diag.re, diag.im)
    return out


def adjoint(a: DiaqMatrix) -> DiaqMatrix:
    """Conjugate transpose."""
    out = DiaqMatrix(a.n_dim, a.dtype, a.align)
    for diag in a.diagonals():
        out.set_diag(-diag.index, diag.re, -diag.im)
    return out


def add(a: DiaqMatrix, b: DiaqMatrix) -> DiaqMatrix:
    if a.n_dim != b.n_dim:
        raise ShapeError(f"shape mismatch: {a.n_dim} vs {b.n_dim}")
    dtype = np.result_type(a.dtype, b.dtype)
    out = DiaqMatrix(a.n_dim, dtype)
    for d in sorted(set(a.diag_indices()) | set(b.diag_indices())):
        length = diag_len(d, a.n_dim)
        re = np.zeros(length, dtype=dtype)
        im = np.zeros(length, dtype=dtype)
        for src in (a.get(d), b.get(d)):
            if src is not None:
                re += src.re
                im += src.im
        out.set_diag(d, re, im)
    return out


def scale(a: DiaqMatrix, s: complex) -> DiaqMatrix:
    sr, si = s.real, s.imag
    out = DiaqMatrix(a.n_dim, a.dtype, a.align)
    for diag in a.diagonals():
        out.set_diag(diag.index, sr * diag.re - si * diag.im, sr * diag.im + si * diag.re)
    return out


# -- Kronecker products --------------------------------------------------


def kron(a: DiaqMatrix, b: DiaqMatrix) -> DiaqMatrix:
    """Kronecker product A (x) B.

    Each source pair (d_a, d_b) scatters outer products into result
    diagonal d = d_a*n_b + d_b at rows r_a*n_b + r_b. Different source
    pairs feeding the same result diagonal land at disjoint positions.
    """
    n_a, n_b = a.n_dim, b.n_dim
    n = n_a * n_b
    dtype = np.result_type(a.dtype, b.dtype)
    bufs: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for diag_a in a.diagonals():
        rows_a = np.arange(len(diag_a)) - min(diag_a.index, 0)
        for diag_b in b.diagonals():
            rows_b = np.arange(len(diag_b)) - min(diag_b.index, 0)
            d = diag_a.index * n_b + diag_b.index
            if d not in bufs:
                length = n - abs(d)
                bufs[d] = (np.zeros(length, dtype=dtype), np.zeros(length, dtype=dtype))
            re, im = bufs[d]
            k = (rows_a[:, None] * n_b + rows_b[None, :] + min(d, 0)).ravel()
            re[k] = (np.outer(diag_a.re, diag_b.re) - np.outer(diag_a.im, diag_b.im)).ravel()
            im[k] = (np.outer(diag_a.re, diag_b.im) + np.outer(diag_a.im, diag_b.re)).ravel()
    out = DiaqMatrix(n, dtype)
    for d in sorted(bufs):
        out.set_diag(d, *bufs[d])
    return out


def kron_identity(left_dim: int, m: DiaqMatrix, right_dim: int) -> DiaqMatrix:
    """Materialize I_left (x) m (x) I_right without generic kron.

    Diagonal d of m becomes diagonal d*right_dim; within each of the
    left_dim blocks every value repeats right_dim times contiguously,
    and the |d|*right_dim gap between blocks stays as explicit zeros
    (the final block needs no padding).
    """
    if left_dim < 1 or right_dim < 1:
        raise ShapeError("left_dim and right_dim must be >= 1")
    n_m = m.n_dim
    n = left_dim * n_m * right_dim
    out = DiaqMatrix(n, m.dtype)
    block = n_m * right_dim
    for diag in m.diagonals():
        d_out = diag.index * right_dim
        run = len(diag) * right_dim
        length = n - abs(d_out)
        re = np.zeros(length, dtype=m.dtype)
        im = np.zeros(length, dtype=m.dtype)
        # fill block-by-block through a padded 2-D view, then trim the
        # final block's padding off the flat array
        padded_re = np.zeros((left_dim, block), dtype=m.dtype)
        padded_im = np.zeros((left_dim, block), dtype=m.dtype)
        padded_re[:, :run] = np.repeat(diag.re, right_dim)[None, :]
        padded_im[:, :run] = np.repeat(diag.im, right_dim)[None, :]
        re[:] = padded_re.ravel()[:length]
        im[:] = padded_im.ravel()[:length]
        out.set_diag(d_out, re, im)
    return out


# -- accounting ----------------------------------------------------------


def nnz(a: DiaqMatrix, eps: float = 1e-15) -> int:
    """Stored entries with |re| + |im| > eps."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    total = 0
    for diag in a.diagonals():
        total += int(np.count_nonzero(np.abs(diag.re) + np.abs(diag.im) > eps))
    return total


def sparsity(a: DiaqMatrix, eps: float = 1e-15) -> float:
    return 1.0 - nnz(a, eps) / (a.n_dim * a.n_dim)


# -- serialization -------------------------------------------------------


def to_json_dict(a: DiaqMatrix) -> dict:
    """Wire form: {"n": N, "diags": {"<d>": [[re, im], ...]}}."""
    return {
        "n": a.n_dim,
        "diags": {
            str(diag.index): [[float(r), float(i)] for r, i in zip(diag.re, diag.im)]
            for diag in a.diagonals()
        },
    }


def from_json_dict(obj: dict, dtype=np.float64) -> DiaqMatrix:
    out = DiaqMatrix(int(obj["n"]), dtype)
    for key, pairs in obj.get("diags", {}).items():
        arr = np.asarray(pairs, dtype=np.float64).reshape(-1, 2)
        out.set_diag(int(key), arr[:, 0], arr[:, 1])
    return out


def to_json(a: DiaqMatrix) -> str:
    return json.dumps(to_json_dict(a))


def from_json(text: str, dtype=np.float64) -> DiaqMatrix:
    return from_json_dict(json.loads(text), dtype)
