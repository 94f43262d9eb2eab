"""Sparsity and memory analysis of circuit unitaries.

Two views of a circuit are measured: each timestep unitary
I (x) gate (x) I on its own, and the running chain product of those
unitaries. Both materialize full 2^n x 2^n structure, so a qubit guard
keeps them off circuits that would not fit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ResourceError
from .gates import DEFAULT_SPAN_LIMIT, Circuit, compile_circuit
from .matrix import DiaqMatrix, identity, kron_identity, matmul, nnz, sparsity
from .memory import MemoryEstimate, estimate_map, memory_estimates

ANALYSIS_QUBIT_GUARD = 14

CSV_HEADER = "timestep,gate,sparsity,diag_count,nnz,bytes_dense,bytes_diaq,bytes_csr,bytes_coo,bytes_bsr"


@dataclass
class AnalysisRecord:
    timestep: int
    gate_name: str
    sparsity: float
    diag_count: int
    nnz: int
    memory: list[MemoryEstimate]

    def memory_map(self) -> dict[str, int]:
        return {est.format: est.bytes for est in self.memory}


def _guard(circuit: Circuit, max_qubits: int) -> None:
    if circuit.n_qubits > max_qubits:
        raise ResourceError(
            f"analysis materializes 2^{circuit.n_qubits} diagonals; "
            f"guard is {max_qubits} qubits"
        )


def timestep_unitaries(
    circuit: Circuit,
    span_limit: int = DEFAULT_SPAN_LIMIT,
    max_qubits: int = ANALYSIS_QUBIT_GUARD,
):
    """Yield (gate_name, full timestep unitary) per placement, in order."""
    _guard(circuit, max_qubits)
    for p in compile_circuit(circuit, span_limit):
        yield p.name, kron_identity(p.dim_a, p.m, p.dim_b)


def _record(t: int, name: str, m: DiaqMatrix, eps: float) -> AnalysisRecord:
    return AnalysisRecord(
        timestep=t,
        gate_name=name,
        sparsity=sparsity(m, eps),
        diag_count=m.diag_count(),
        nnz=nnz(m, eps),
        memory=memory_estimates(m, eps),
    )


def timestep_analysis(
    circuit: Circuit,
    eps: float = 1e-15,
    span_limit: int = DEFAULT_SPAN_LIMIT,
    max_qubits: int = ANALYSIS_QUBIT_GUARD,
) -> list[AnalysisRecord]:
    """Per-timestep stats of each unitary on its own."""
    return [
        _record(t, name, u, eps)
        for t, (name, u) in enumerate(timestep_unitaries(circuit, span_limit, max_qubits), 1)
    ]


def chain_product_analysis(
    circuit: Circuit,
    eps: float = 1e-15,
    span_limit: int = DEFAULT_SPAN_LIMIT,
    max_qubits: int = ANALYSIS_QUBIT_GUARD,
    order: str = "left",
) -> list[AnalysisRecord]:
    """Stats of the running product of timestep unitaries.

    order="left" multiplies each new step onto the left (P_t = U_t P_{t-1},
    operator-application order); order="right" appends on the right.
    """
    if order not in ("left", "right"):
        raise ValueError(f"order must be 'left' or 'right', got '{order}'")
    _guard(circuit, max_qubits)
    product = identity(2**circuit.n_qubits)
    records = []
    for t, (name, u) in enumerate(timestep_unitaries(circuit, span_limit, max_qubits), 1):
        product = matmul(u, product) if order == "left" else matmul(product, u)
        records.append(_record(t, name, product, eps))
    return records


def emit_analysis_csv(records: list[AnalysisRecord], mode: str | None = None) -> str:
    """Fixed-format CSV; a leading mode column is added when mode is given."""
    header = CSV_HEADER if mode is None else "mode," + CSV_HEADER
    lines = [header]
    for rec in records:
        mem = rec.memory_map()
        row = (
            f"{rec.timestep},{rec.gate_name},{rec.sparsity:.12f},"
            f"{rec.diag_count},{rec.nnz},{mem['dense']},{mem['diaq']},"
            f"{mem['csr']},{mem['coo']},{mem['bsr']}"
        )
        lines.append(row if mode is None else f"{mode},{row}")
    return "\n".join(lines) + "\n"


def emit_analysis_json(records: list[AnalysisRecord], mode: str | None = None) -> str:
    rows = []
    for rec in records:
        row = {
            "timestep": rec.timestep,
            "gate": rec.gate_name,
            "sparsity": rec.sparsity,
            "diag_count": rec.diag_count,
            "nnz": rec.nnz,
            "memory_bytes": rec.memory_map(),
        }
        if mode is not None:
            row["mode"] = mode
        rows.append(row)
    return json.dumps(rows, indent=2)


def chain_memory_totals(records: list[AnalysisRecord]) -> dict[str, int]:
    """Summed per-format bytes across a chain's steps."""
    totals = {fmt: 0 for fmt in (records[0].memory_map() if records else {})}
    for rec in records:
        for fmt, b in rec.memory_map().items():
            totals[fmt] += b
    return totals


__all__ = [
    "ANALYSIS_QUBIT_GUARD",
    "CSV_HEADER",
    "AnalysisRecord",
    "timestep_unitaries",
    "timestep_analysis",
    "chain_product_analysis",
    "emit_analysis_csv",
    "emit_analysis_json",
    "chain_memory_totals",
    "estimate_map",
]
