export {
  BoundMatrix,
  fromDense,
  toDense,
  matmul,
  spmv,
  simulate,
} from "./bindings.js";
export type {
  Complex,
  DenseMatrix,
  SimulateOptions,
  SimulateResult,
} from "./bindings.js";
export {
  BindingError,
  CoreError,
  QasmParseError,
  ResourceGuardError,
  UnsupportedError,
} from "./errors.js";
export { coreCommand } from "./core.js";

export const VERSION = "0.1.0";
