/** Dense-array bindings over the core's diagonal-map kernels.
 *
 * Matrices live host-side as Complex[][] (row-major [re, im] pairs);
 * BoundMatrix wraps the core's wire form as an opaque handle so the
 * diagonal layout never leaks into calling code.
 */
import { kernel } from "./core.js";
import { BindingError } from "./errors.js";

export type Complex = readonly [re: number, im: number];
export type DenseMatrix = Complex[][];

type WireMatrix = { n: number; diags: Record<string, [number, number][]> };

function checkDense(rows: DenseMatrix): number {
  const n = rows.length;
  if (n === 0) throw new BindingError("matrix must have at least one row");
  for (const row of rows) {
    if (row.length !== n) {
      throw new BindingError(`matrix must be square, got a row of length ${row.length} in ${n} rows`);
    }
    for (const [re, im] of row) {
      if (!Number.isFinite(re) || !Number.isFinite(im)) {
        throw new BindingError("matrix entries must be finite");
      }
    }
  }
  return n;
}

function checkVector(x: Complex[], n: number): void {
  if (x.length !== n) {
    throw new BindingError(`vector length ${x.length} does not match matrix dimension ${n}`);
  }
  for (const [re, im] of x) {
    if (!Number.isFinite(re) || !Number.isFinite(im)) {
      throw new BindingError("vector entries must be finite");
    }
  }
}

/** Opaque handle to a core-format matrix.
 *
 * Handles are single-owner: release() drops the payload (idempotent),
 * and every later use throws instead of touching freed state.
 */
export class BoundMatrix {
  #wire: WireMatrix | null;

  private constructor(wire: WireMatrix) {
    this.#wire = wire;
  }

  static adopt(wire: WireMatrix): BoundMatrix {
    return new BoundMatrix(wire);
  }

  get n(): number {
    return this.payload().n;
  }

  get released(): boolean {
    return this.#wire === null;
  }

  release(): void {
    this.#wire = null;
  }

  /** @internal wire payload for kernel calls */
  payload(): WireMatrix {
    if (this.#wire === null) {
      throw new BindingError("matrix handle was released");
    }
    return this.#wire;
  }
}

/** Pack a square dense matrix into core format. */
export function fromDense(rows: DenseMatrix, eps = 0): BoundMatrix {
  checkDense(rows);
  const wire = kernel<WireMatrix>("from-dense", { dense: rows, eps });
  return BoundMatrix.adopt(wire);
}

/** Expand a handle back to a dense matrix; lossless for finite values. */
export function toDense(a: BoundMatrix): DenseMatrix {
  const reply = kernel<{ dense: DenseMatrix }>("to-dense", { a: a.payload() });
  return reply.dense;
}

export function matmul(a: BoundMatrix, b: BoundMatrix): BoundMatrix {
  const wire = kernel<WireMatrix>("matmul", { a: a.payload(), b: b.payload() });
  return BoundMatrix.adopt(wire);
}

export function spmv(a: BoundMatrix, x: Complex[]): Complex[] {
  checkVector(x, a.n);
  const reply = kernel<{ y: Complex[] }>("spmv", { a: a.payload(), x });
  return reply.y;
}

export interface SimulateOptions {
  backend?: "dense" | "diaq";
  shots?: number;
  seed?: number;
  emitState?: boolean;
  name?: string;
}

export interface SimulateResult {
  counts: Record<string, number>;
  nQubits: number;
  backend: string;
  state?: Complex[];
}

/** Simulate QASM text; counts keyed by bitstring, qubit 0 first. */
export function simulate(qasm: string, options: SimulateOptions = {}): SimulateResult {
  const reply = kernel<{
    counts: Record<string, number>;
    n_qubits: number;
    backend: string;
    state?: Complex[];
  }>("simulate", {
    qasm,
    backend: options.backend ?? "diaq",
    shots: options.shots ?? 1024,
    seed: options.seed ?? 0,
    emit_state: options.emitState ?? false,
    name: options.name ?? "qasm",
  });
  const result: SimulateResult = {
    counts: reply.counts,
    nQubits: reply.n_qubits,
    backend: reply.backend,
  };
  if (reply.state) result.state = reply.state;
  return result;
}
