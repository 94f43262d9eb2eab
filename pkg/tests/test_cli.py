import json
import math
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from diaqsim import from_json_dict, matmul, run, spmv, to_dense, to_json_dict
from diaqsim.cli import BENCH_HEADER, main
from diaqsim.matrix import DiaqMatrix, from_dense
from diaqsim.qasm import parse_circuit

from conftest import FIXTURE_DIR

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "docs" / "run_result.schema.json").read_text()
)

GHZ4 = str(FIXTURE_DIR / "ghz4.qasm")


def invoke(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_run_json_matches_schema(capsys):
    code, out, _ = invoke(capsys, "run", GHZ4, "--seed", "7", "--threads", "1")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["circuit"] == "ghz4"
    assert payload["n_qubits"] == 4
    assert set(payload["counts"]) == {"0000", "1111"}
    assert sum(payload["counts"].values()) == 1024


def test_run_matches_library(capsys):
    code, out, _ = invoke(capsys, "run", GHZ4, "--seed", "3", "--shots", "256",
                          "--threads", "1")
    assert code == 0
    circuit = parse_circuit(Path(GHZ4).read_text())
    want = run(circuit, shots=256, seed=3)
    assert json.loads(out)["counts"] == want.counts


def test_run_emit_state(capsys):
    code, out, _ = invoke(capsys, "run", GHZ4, "--emit-state", "--shots", "0",
                          "--threads", "1")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    state = np.array([complex(re, im) for re, im in payload["state"]])
    want = np.zeros(16)
    want[0] = want[15] = 1 / math.sqrt(2)
    np.testing.assert_allclose(state, want, atol=1e-12)


def test_run_csv_output(capsys):
    code, out, _ = invoke(capsys, "run", GHZ4, "--out", "csv", "--seed", "7",
                          "--threads", "1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "bitstring,count"
    rows = dict(line.split(",") for line in lines[1:])
    assert set(rows) == {"0000", "1111"}
    assert sum(int(v) for v in rows.values()) == 1024


def test_run_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(Path(GHZ4).read_text()))
    code, out, _ = invoke(capsys, "run", "-", "--shots", "16", "--threads", "1")
    assert code == 0
    assert json.loads(out)["circuit"] == "stdin"


def test_run_backend_flag(capsys):
    _, out_diaq, _ = invoke(capsys, "run", GHZ4, "--backend", "diaq", "--seed", "5",
                            "--threads", "1")
    _, out_dense, _ = invoke(capsys, "run", GHZ4, "--backend", "dense", "--seed", "5",
                             "--threads", "1")
    assert json.loads(out_diaq)["counts"] == json.loads(out_dense)["counts"]


def test_run_fusion_flag(capsys):
    _, out_off, _ = invoke(capsys, "run", GHZ4, "--fusion", "off", "--seed", "9",
                           "--threads", "1")
    _, out_on, _ = invoke(capsys, "run", GHZ4, "--fusion", "on", "--seed", "9",
                          "--threads", "1")
    assert json.loads(out_off)["counts"] == json.loads(out_on)["counts"]


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("DIAQ_THREADS", "2")
    code, out, _ = invoke(capsys, "run", GHZ4, "--seed", "7")
    assert code == 0
    assert set(json.loads(out)["counts"]) == {"0000", "1111"}


def test_exit_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[2];\nh q[0]")
    code, _, err = invoke(capsys, "run", str(bad))
    assert code == 2
    assert err.startswith("parse error:")
    assert "3:" in err  # failure position reported


def test_exit_unsupported(capsys, tmp_path):
    src = tmp_path / "cond.qasm"
    src.write_text('OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nif (c==1) x q[0];\n')
    code, _, err = invoke(capsys, "run", str(src))
    assert code == 3
    assert "if" in err


def test_exit_resource_guard(capsys, tmp_path):
    src = tmp_path / "wide.qasm"
    code, out, _ = invoke(capsys, "gen", "ghz", "--qubits", "15", "--out", str(src))
    assert code == 0
    code, _, err = invoke(capsys, "analyze", str(src))
    assert code == 4
    assert err.startswith("resource guard:")


def test_exit_missing_file(capsys):
    code, _, err = invoke(capsys, "run", "no/such/file.qasm")
    assert code == 1
    assert err.startswith("error:")


def test_bench_row_accounting(capsys, tmp_path):
    out_path = tmp_path / "bench.csv"
    code, _, _ = invoke(
        capsys, "bench", GHZ4, "--reps", "3", "--shots", "64",
        "--out", str(out_path), "--threads", "1",
    )
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == BENCH_HEADER
    # 2 backends x (3 detail + mean + std) + 1 speedup row
    assert len(lines) == 1 + 2 * 5 + 1
    reps = [line.split(",")[3] for line in lines[1:]]
    assert reps == ["1", "2", "3", "mean", "std"] * 2 + ["speedup"]
    last = lines[-1].split(",")
    assert last[2] == "dense/diaq"
    assert float(last[-1]) > 0


def test_bench_single_rep_std_zero(capsys):
    code, out, _ = invoke(
        capsys, "bench", GHZ4, "--reps", "1", "--backends", "diaq",
        "--shots", "8", "--threads", "1",
    )
    assert code == 0
    std = [l for l in out.strip().split("\n") if l.split(",")[3] == "std"]
    assert len(std) == 1
    assert float(std[0].split(",")[10]) == 0.0


def test_bench_bad_file_continues(capsys, tmp_path):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0; qreg q[1]; h q[0")
    code, out, err = invoke(
        capsys, "bench", str(bad), GHZ4, "--reps", "1", "--backends", "diaq",
        "--shots", "8", "--threads", "1",
    )
    assert code == 0
    assert "bad.qasm" in err
    lines = out.strip().split("\n")
    error_rows = [l for l in lines if "error:ParseError" in l]
    assert len(error_rows) == 1
    assert any(l.startswith("ghz4,") and ",ok," in l for l in lines)


def test_analyze_timestep_csv(capsys):
    code, out, _ = invoke(capsys, "analyze", GHZ4)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("timestep,gate,")
    assert len(lines) == 5


def test_analyze_chain_json(capsys):
    code, out, _ = invoke(capsys, "analyze", GHZ4, "--mode", "chain",
                          "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert [r["timestep"] for r in rows] == [1, 2, 3, 4]
    assert rows[-1]["nnz"] == 32


def test_analyze_both_sections(capsys):
    code, out, _ = invoke(capsys, "analyze", GHZ4, "--mode", "both")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("mode,timestep,gate,")
    body = lines[1:]
    assert len(body) == 8
    assert all(l.startswith("timestep,") for l in body[:4])
    assert all(l.startswith("chain,") for l in body[4:])


def test_analyze_eps_flag(capsys):
    # huge eps wipes every entry
    code, out, _ = invoke(capsys, "analyze", GHZ4, "--eps", "10")
    assert code == 0
    for line in out.strip().split("\n")[1:]:
        cols = line.split(",")
        assert cols[2] == "1.000000000000"
        assert cols[4] == "0"


def test_gen_round_trips(capsys):
    for kind, qubits in (("ghz", 5), ("qft", 4), ("tfim", 3)):
        code, out, _ = invoke(capsys, "gen", kind, "--qubits", str(qubits))
        assert code == 0
        circuit = parse_circuit(out)
        assert circuit.n_qubits == qubits
    code, out, _ = invoke(capsys, "gen", "ghz", "--qubits", "3", "--no-measure")
    assert code == 0
    assert "measure" not in out


def test_kernel_matmul(capsys, monkeypatch, rng):
    import io

    a = from_dense(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    b = from_dense(np.triu(rng.normal(size=(6, 6))))
    request = {"a": to_json_dict(a), "b": to_json_dict(b)}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    code, out, _ = invoke(capsys, "kernel", "matmul")
    assert code == 0
    got = from_json_dict(json.loads(out))
    np.testing.assert_allclose(to_dense(got), to_dense(matmul(a, b)), atol=1e-12)


def test_kernel_spmv_and_dense_round_trip(capsys, monkeypatch, rng):
    import io

    dense = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    x = rng.normal(size=5) + 1j * rng.normal(size=5)
    pairs = [[float(v.real), float(v.imag)] for v in x]
    dense_pairs = [[[float(v.real), float(v.imag)] for v in row] for row in dense]

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"dense": dense_pairs})))
    code, out, _ = invoke(capsys, "kernel", "from-dense")
    assert code == 0
    packed = json.loads(out)

    monkeypatch.setattr(
        "sys.stdin", io.StringIO(json.dumps({"a": packed, "x": pairs}))
    )
    code, out, _ = invoke(capsys, "kernel", "spmv")
    assert code == 0
    y = np.array([complex(re, im) for re, im in json.loads(out)["y"]])
    np.testing.assert_allclose(y, dense @ x, atol=1e-12)

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"a": packed})))
    code, out, _ = invoke(capsys, "kernel", "to-dense")
    assert code == 0
    back = np.array(
        [[complex(p[0], p[1]) for p in row] for row in json.loads(out)["dense"]]
    )
    np.testing.assert_allclose(back, dense, atol=0)


def test_kernel_simulate(capsys, monkeypatch):
    import io

    request = {
        "qasm": Path(GHZ4).read_text(),
        "backend": "diaq",
        "shots": 128,
        "seed": 7,
        "emit_state": True,
    }
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(request)))
    code, out, _ = invoke(capsys, "kernel", "simulate")
    assert code == 0
    payload = json.loads(out)
    assert payload["n_qubits"] == 4
    assert set(payload["counts"]) <= {"0000", "1111"}
    assert sum(payload["counts"].values()) == 128
    assert len(payload["state"]) == 16
