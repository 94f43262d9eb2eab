/** Typed errors mirroring the core CLI's exit codes. */

export class CoreError extends Error {
  readonly exitCode: number;
  readonly stderr: string;

  constructor(message: string, exitCode: number, stderr: string) {
    super(message);
    this.name = "CoreError";
    this.exitCode = exitCode;
    this.stderr = stderr;
  }
}

/** Exit code 2: malformed QASM; carries the reported source position. */
export class QasmParseError extends CoreError {
  readonly line: number | null;
  readonly col: number | null;

  constructor(message: string, stderr: string, line: number | null, col: number | null) {
    super(message, 2, stderr);
    this.name = "QasmParseError";
    this.line = line;
    this.col = col;
  }
}

/** Exit code 3: valid QASM using a construct the core does not simulate. */
export class UnsupportedError extends CoreError {
  constructor(message: string, stderr: string) {
    super(message, 3, stderr);
    this.name = "UnsupportedError";
  }
}

/** Exit code 4: a size guard refused the request. */
export class ResourceGuardError extends CoreError {
  constructor(message: string, stderr: string) {
    super(message, 4, stderr);
    this.name = "ResourceGuardError";
  }
}

/** Thrown on the host side before the core is ever invoked. */
export class BindingError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "BindingError";
  }
}
