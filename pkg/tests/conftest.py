from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from diaqsim import DiaqMatrix

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def fixture_dir():
    return FIXTURE_DIR


def fixture_files():
    return sorted(FIXTURE_DIR.glob("*.qasm"))


def random_dense(rng, n, real=False):
    m = rng.normal(size=(n, n))
    if not real:
        m = m + 1j * rng.normal(size=(n, n))
    return m


def random_banded(rng, n, n_diags):
    """Dense matrix with values on n_diags randomly chosen diagonals."""
    m = np.zeros((n, n), dtype=complex)
    offsets = rng.choice(np.arange(-(n - 1), n), size=min(n_diags, 2 * n - 1), replace=False)
    for d in offsets:
        length = n - abs(int(d))
        vals = rng.normal(size=length) + 1j * rng.normal(size=length)
        if d >= 0:
            m[np.arange(length), np.arange(length) + d] = vals
        else:
            m[np.arange(length) - d, np.arange(length)] = vals
    return m


def random_diaq(rng, n, n_diags):
    """(DiaqMatrix, matching dense array) pair."""
    from diaqsim import from_dense

    m = random_banded(rng, n, n_diags)
    return from_dense(m, 0.0), m


def triple_loop_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pedestrian O(n^3) product, independent of any library kernel."""
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            s = 0.0 + 0.0j
            for k in range(n):
                s += a[i, k] * b[k, j]
            out[i, j] = s
    return out


def max_abs(x) -> float:
    return float(np.max(np.abs(x))) if np.size(x) else 0.0


def assert_diaq_equals_dense(a: DiaqMatrix, m: np.ndarray, tol: float = 0.0):
    diff = max_abs(a.to_dense() - m)
    assert diff <= tol, f"max |diff| = {diff:.3e} > {tol:.1e}"
