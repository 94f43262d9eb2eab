"""diaqsim: sparse state-vector quantum circuit simulation on a
diagonal-map matrix format, with a dense reference backend, an
OpenQASM 2.0 subset front end, and sparsity/memory analysis tools.
"""
from .alloc import DEFAULT_ALIGNMENT, aligned_zeros
from .analysis import (
    ANALYSIS_QUBIT_GUARD,
    CSV_HEADER,
    AnalysisRecord,
    chain_memory_totals,
    chain_product_analysis,
    emit_analysis_csv,
    emit_analysis_json,
    timestep_analysis,
    timestep_unitaries,
)
from .circuits import ghz_qasm, qft_qasm, tfim_qasm
from .errors import (
    DiaqError,
    NormalizationError,
    ParseError,
    ResourceError,
    ShapeError,
    UnsupportedFeatureError,
    UnsupportedGateError,
)
from .gates import (
    Circuit,
    GateOp,
    Placement,
    build_span_unitary,
    compile_circuit,
    fuse_pass,
    gate_matrix,
)
from .matrix import (
    Diagonal,
    DiaqMatrix,
    add,
    adjoint,
    diag_len,
    from_dense,
    from_json,
    from_json_dict,
    identity,
    kron,
    kron_identity,
    matmul,
    multiply_diagonals,
    nnz,
    scale,
    sparsity,
    spmv,
    to_dense,
    to_json,
    to_json_dict,
    transpose,
)
from .memory import MemoryEstimate, estimate_map, memory_estimates
from .qasm import lower, parse, parse_circuit, unparse
from .sim import (
    RunResult,
    StateVector,
    apply_dense,
    apply_placed,
    init_state,
    measure_all_sample,
    run,
    splitmix64_uniforms,
)

__version__ = "0.1.0"
