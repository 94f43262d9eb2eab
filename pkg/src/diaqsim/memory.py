"""Closed-form memory footprints of a matrix under common sparse formats.

All byte counts are deterministic formulas over the stored structure,
never measured allocations: complex values cost 2*sizeof(scalar), index
entries 8 bytes, and the diagonal map 24 bytes of overhead per entry.
Absolute bytes are an accounting model; the point is comparing formats
on one matrix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import DiaqMatrix, nnz

INDEX_BYTES = 8
MAP_ENTRY_BYTES = 24  # 8-byte key + per-entry bookkeeping

FORMATS = ("dense", "diaq", "csr", "csc", "coo", "bsr")


@dataclass(frozen=True)
class MemoryEstimate:
    format: str
    bytes: int


def _bsr_block_count(a: DiaqMatrix, eps: float) -> int:
    """Distinct 2x2 blocks containing a nonzero, counted per diagonal.

    Walks stored diagonals only; never builds the dense matrix.
    """
    nb = (a.n_dim + 1) // 2
    seen: list[np.ndarray] = []
    for diag in a.diagonals():
        d = diag.index
        mask = np.abs(diag.re) + np.abs(diag.im) > eps
        if not mask.any():
            continue
        k = np.nonzero(mask)[0]
        rows = k - min(d, 0)
        cols = rows + d
        seen.append((rows // 2) * nb + cols // 2)
    if not seen:
        return 0
    return len(np.unique(np.concatenate(seen)))


def memory_estimates(a: DiaqMatrix, eps: float = 1e-15) -> list[MemoryEstimate]:
    """Byte footprints of `a` under each format in FORMATS order.

    dense: N^2 complex values.
    diaq:  every stored diagonal in full, plus map overhead per entry.
    csr:   values + column indices + row pointers (csc symmetric).
    coo:   values + (row, col) index pair each.
    bsr:   2x2 blocks with any nonzero, stored dense per block.
    """
    n = a.n_dim
    cv = 2 * a.dtype.itemsize
    nz = nnz(a, eps)
    stored = sum(len(diag) for diag in a.diagonals())
    nblocks = _bsr_block_count(a, eps)
    nb = (n + 1) // 2
    sizes = {
        "dense": n * n * cv,
        "diaq": stored * cv + a.diag_count() * MAP_ENTRY_BYTES,
        "csr": nz * cv + nz * INDEX_BYTES + (n + 1) * INDEX_BYTES,
        "csc": nz * cv + nz * INDEX_BYTES + (n + 1) * INDEX_BYTES,
        "coo": nz * (cv + 2 * INDEX_BYTES),
        "bsr": nblocks * 4 * cv + nblocks * INDEX_BYTES + (nb + 1) * INDEX_BYTES,
    }
    return [MemoryEstimate(fmt, sizes[fmt]) for fmt in FORMATS]


def estimate_map(a: DiaqMatrix, eps: float = 1e-15) -> dict[str, int]:
    """Same numbers keyed by format name."""
    return {est.format: est.bytes for est in memory_estimates(a, eps)}
