"""Gate catalog and timestep compilation.

A circuit lowers to a list of Placements, one per gate, in circuit
order (no gate parallelism). A Placement captures the timestep unitary
I_dim_a (x) m (x) I_dim_b without materializing it: dim_a counts the
basis states of the qubits above the gate's span, dim_b below.

Qubit 0 is the most significant basis-index bit: the topmost wire is
the leftmost Kronecker factor, and bitstrings read q0..q(n-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceError, ShapeError, UnsupportedGateError
from .matrix import DiaqMatrix, from_dense, matmul

DEFAULT_SPAN_LIMIT = 14

_SQ2 = 1.0 / math.sqrt(2.0)


def _h():
    return np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex)


def _rx(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(phi):
    return np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])


def _u1(lam):
    return np.diag([1.0, np.exp(1j * lam)]).astype(complex)


def _u2(phi, lam):
    return _SQ2 * np.array(
        [[1.0, -np.exp(1j * lam)], [np.exp(1j * phi), np.exp(1j * (phi + lam))]]
    )


def _u3(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * lam) * s], [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]]
    )


def _cx():
    m = np.eye(4, dtype=complex)
    m[[2, 3]] = m[[3, 2]]
    return m


def _ccx():
    m = np.eye(8, dtype=complex)
    m[[6, 7]] = m[[7, 6]]
    return m


def _swap():
    m = np.eye(4, dtype=complex)
    m[[1, 2]] = m[[2, 1]]
    return m


# name -> (qubits, params, dense builder); multi-qubit matrices put the
# first operand on the most significant bit of the local index
GATE_DEFS: dict[str, tuple[int, int, object]] = {
    "id": (1, 0, lambda: np.eye(2, dtype=complex)),
    "x": (1, 0, lambda: np.array([[0, 1], [1, 0]], dtype=complex)),
    "y": (1, 0, lambda: np.array([[0, -1j], [1j, 0]], dtype=complex)),
    "z": (1, 0, lambda: np.diag([1.0, -1.0]).astype(complex)),
    "h": (1, 0, _h),
    "s": (1, 0, lambda: np.diag([1.0, 1j])),
    "sdg": (1, 0, lambda: np.diag([1.0, -1j])),
    "t": (1, 0, lambda: np.diag([1.0, np.exp(0.25j * math.pi)])),
    "tdg": (1, 0, lambda: np.diag([1.0, np.exp(-0.25j * math.pi)])),
    "rx": (1, 1, _rx),
    "ry": (1, 1, _ry),
    "rz": (1, 1, _rz),
    "u1": (1, 1, _u1),
    "u2": (1, 2, _u2),
    "u3": (1, 3, _u3),
    "cx": (2, 0, _cx),
    "cz": (2, 0, lambda: np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)),
    "swap": (2, 0, _swap),
    "ccx": (3, 0, _ccx),
}

# structural ops that produce no Placement
PSEUDO_GATES = ("barrier", "measure")


@dataclass(frozen=True)
class GateOp:
    name: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(set(self.qubits)) != len(self.qubits):
            raise ShapeError(f"{self.name}: repeated qubit in {self.qubits}")
        if self.name in PSEUDO_GATES:
            return
        if self.name not in GATE_DEFS:
            raise UnsupportedGateError(f"unknown gate '{self.name}'")
        want_q, want_p, _ = GATE_DEFS[self.name]
        if len(self.qubits) != want_q:
            raise ShapeError(f"{self.name} takes {want_q} qubits, got {len(self.qubits)}")
        if len(self.params) != want_p:
            raise ShapeError(f"{self.name} takes {want_p} params, got {len(self.params)}")


@dataclass
class Circuit:
    n_qubits: int
    ops: list[GateOp] = field(default_factory=list)
    creg_size: int = 0
    name: str = "circuit"

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ShapeError(f"n_qubits must be >= 1, got {self.n_qubits}")
        for op in self.ops:
            bad = [q for q in op.qubits if not 0 <= q < self.n_qubits]
            if bad:
                raise ShapeError(f"{op.name}: qubit {bad[0]} outside 0..{self.n_qubits - 1}")


@dataclass
class Placement:
    """A compiled gate: m applied as I_dim_a (x) m (x) I_dim_b."""

    dim_a: int
    m: DiaqMatrix
    dim_b: int
    span_lo: int
    span_hi: int
    name: str

    @property
    def n_dim(self) -> int:
        return self.dim_a * self.m.n_dim * self.dim_b


def gate_matrix(op: GateOp) -> DiaqMatrix:
    """Catalog unitary of a gate op, in diagonal-map form."""
    if op.name not in GATE_DEFS:
        raise UnsupportedGateError(f"unknown gate '{op.name}'")
    _, _, build = GATE_DEFS[op.name]
    return from_dense(build(*op.params), eps=0.0)


def build_span_unitary(g: DiaqMatrix, positions: list[int], span: int) -> DiaqMatrix:
    """Embed a k-qubit gate at arbitrary bit positions within a span.

    positions[i] is the span-relative offset (0 = most significant) of
    the gate's i-th qubit. U[r, c] = g[rg, cg] when the non-gate bits
    of r and c agree, where rg/cg gather the gate-position bits of r/c
    in operand order; all other entries are zero. Every gate entry
    lands on a single result diagonal, so the embedding stays sparse.
    """
    k = int(math.log2(g.n_dim))
    if 2**k != g.n_dim:
        raise ShapeError(f"gate matrix n_dim {g.n_dim} is not a power of two")
    if len(positions) != k or len(set(positions)) != k:
        raise ShapeError(f"need {k} distinct positions, got {positions}")
    if any(not 0 <= p < span for p in positions):
        raise ShapeError(f"positions {positions} outside span of {span} qubits")
    n = 2**span
    shifts = [span - 1 - p for p in positions]  # bit shift of each gate qubit
    free_shifts = [span - 1 - p for p in range(span) if p not in set(positions)]

    # every free-bit pattern, spread to its real bit positions
    f = np.arange(2 ** len(free_shifts), dtype=np.int64)
    spread = np.zeros_like(f)
    for j, sh in enumerate(free_shifts):
        spread |= ((f >> j) & 1) << sh

    def embed(idx: int) -> int:
        out = 0
        for i, sh in enumerate(shifts):
            out |= ((idx >> (k - 1 - i)) & 1) << sh
        return out

    bufs: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for diag in g.diagonals():
        mask = np.abs(diag.re) + np.abs(diag.im) > 0
        for pos in np.nonzero(mask)[0]:
            rg = int(pos) - min(diag.index, 0)
            cg = rg + diag.index
            base_r, base_c = embed(rg), embed(cg)
            d = base_c - base_r  # constant over all free patterns
            if d not in bufs:
                length = n - abs(d)
                bufs[d] = (np.zeros(length), np.zeros(length))
            re, im = bufs[d]
            kk = base_r + spread + min(d, 0)
            re[kk] = diag.re[pos]
            im[kk] = diag.im[pos]
    out = DiaqMatrix(n, g.dtype)
    for d in sorted(bufs):
        out.set_diag(d, *bufs[d])
    return out


def compile_circuit(circuit: Circuit, span_limit: int = DEFAULT_SPAN_LIMIT) -> list[Placement]:
    """One Placement per non-structural gate, in circuit order.

    Contiguous in-order operands use the catalog matrix directly;
    anything else embeds via build_span_unitary over [min, max]. Spans
    wider than span_limit raise rather than allocating 2^span diagonals.
    """
    if span_limit < 2:
        raise ShapeError(f"span_limit must be >= 2, got {span_limit}")
    placements = []
    for op in circuit.ops:
        if op.name in PSEUDO_GATES:
            continue
        lo, hi = min(op.qubits), max(op.qubits)
        span = hi - lo + 1
        if span > span_limit:
            raise ResourceError(
                f"{op.name} on qubits {op.qubits} spans {span} > span_limit {span_limit}"
            )
        g = gate_matrix(op)
        if op.qubits == tuple(range(lo, hi + 1)):
            m = g
        else:
            m = build_span_unitary(g, [q - lo for q in op.qubits], span)
        placements.append(
            Placement(
                dim_a=2**lo,
                m=m,
                dim_b=2 ** (circuit.n_qubits - 1 - hi),
                span_lo=lo,
                span_hi=hi,
                name=op.name,
            )
        )
    return placements


def fuse_pass(placements: list[Placement], enabled: bool = True) -> list[Placement]:
    """Greedy left-to-right merge of adjacent same-span placements.

    Merging multiplies the later gate onto the left of the earlier one
    (apply order), so the fused list acts identically on any state.
    """
    if not enabled:
        return placements
    fused: list[Placement] = []
    for p in placements:
        prev = fused[-1] if fused else None
        if prev is not None and (prev.dim_a, prev.dim_b) == (p.dim_a, p.dim_b):
            fused[-1] = Placement(
                dim_a=prev.dim_a,
                m=matmul(p.m, prev.m),
                dim_b=prev.dim_b,
                span_lo=prev.span_lo,
                span_hi=prev.span_hi,
                name=f"{prev.name}+{p.name}",
            )
        else:
            fused.append(p)
    return fused
