"""QASM generators for scaling sweeps and fixtures."""
from __future__ import annotations


def _header(n: int, creg: bool = True) -> list[str]:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{n}];"]
    if creg:
        lines.append(f"creg c[{n}];")
    return lines


def ghz_qasm(n: int, measure: bool = True) -> str:
    """H then a CX ladder down neighboring qubits."""
    if n < 2:
        raise ValueError(f"ghz needs n >= 2, got {n}")
    lines = _header(n, creg=measure)
    lines.append("h q[0];")
    lines.extend(f"cx q[{i}],q[{i + 1}];" for i in range(n - 1))
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


def qft_qasm(n: int, measure: bool = True) -> str:
    """Textbook transform: per qubit an H plus controlled phases, then swaps."""
    if n < 1:
        raise ValueError(f"qft needs n >= 1, got {n}")
    lines = _header(n, creg=measure)
    for i in range(n):
        lines.append(f"h q[{i}];")
        lines.extend(
            f"cu1(pi/{2 ** (j - i)}) q[{j}],q[{i}];" for j in range(i + 1, n)
        )
    lines.extend(f"swap q[{i}],q[{n - 1 - i}];" for i in range(n // 2))
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


def tfim_qasm(n: int, steps: int = 2, measure: bool = True) -> str:
    """Trotterized transverse-field Ising evolution on a line."""
    if n < 2:
        raise ValueError(f"tfim needs n >= 2, got {n}")
    lines = _header(n, creg=measure)
    lines.extend(f"h q[{i}];" for i in range(n))
    for _ in range(steps):
        lines.extend(f"rzz(pi/8) q[{i}],q[{i + 1}];" for i in range(n - 1))
        lines.extend(f"rx(pi/16) q[{i}];" for i in range(n))
    if measure:
        lines.append("measure q -> c;")
    return "\n".join(lines) + "\n"


GENERATORS = {"ghz": ghz_qasm, "qft": qft_qasm, "tfim": tfim_qasm}
