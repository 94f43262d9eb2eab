"""Aligned array allocation.

Diagonal value arrays and state vectors are allocated on cache-line
boundaries by default so the slice kernels see aligned, contiguous
memory. numpy does not expose aligned allocation directly, so we
over-allocate a byte buffer and slice at the first aligned offset.
"""
from __future__ import annotations

import numpy as np

DEFAULT_ALIGNMENT = 64


def aligned_zeros(n: int, dtype=np.float64, align: int = DEFAULT_ALIGNMENT) -> np.ndarray:
    """Zero-filled 1-D array of `n` items whose data pointer is `align`-byte aligned."""
    if align <= 0 or align & (align - 1):
        raise ValueError(f"alignment must be a power of two, got {align}")
    dt = np.dtype(dtype)
    buf = np.zeros(n * dt.itemsize + align, dtype=np.uint8)
    off = (-buf.ctypes.data) % align
    out = buf[off : off + n * dt.itemsize].view(dt)
    # the slice keeps `buf` alive via .base, no copy happens
    return out
