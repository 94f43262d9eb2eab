/** Subprocess plumbing: one JSON request per core invocation.
 *
 * The core is the `diaqsim` CLI (override with DIAQSIM_BIN). Kernel
 * calls block the calling thread for the duration of the subprocess;
 * nothing is shared between calls, so concurrency is the caller's
 * choice of processes, not a locking concern.
 */
import { spawnSync } from "node:child_process";

import {
  CoreError,
  QasmParseError,
  ResourceGuardError,
  UnsupportedError,
} from "./errors.js";

const MAX_BUFFER = 256 * 1024 * 1024;

export type KernelOp = "from-dense" | "to-dense" | "matmul" | "spmv" | "simulate";

export function coreCommand(): string {
  return process.env.DIAQSIM_BIN ?? "diaqsim";
}

function raiseFor(code: number, stderr: string): never {
  const text = stderr.trim();
  if (code === 2) {
    const m = /parse error: (\d+):(\d+): (.*)/.exec(text);
    throw new QasmParseError(
      m ? (m[3] as string) : text,
      text,
      m ? Number(m[1]) : null,
      m ? Number(m[2]) : null,
    );
  }
  if (code === 3) throw new UnsupportedError(text.replace(/^unsupported: /, ""), text);
  if (code === 4) throw new ResourceGuardError(text.replace(/^resource guard: /, ""), text);
  throw new CoreError(text || `core exited with code ${code}`, code, text);
}

export function invoke(args: string[], input: string): string {
  const proc = spawnSync(coreCommand(), args, {
    input,
    encoding: "utf8",
    maxBuffer: MAX_BUFFER,
  });
  if (proc.error) {
    throw new CoreError(
      `failed to launch '${coreCommand()}': ${proc.error.message}`,
      -1,
      "",
    );
  }
  if (proc.status !== 0) raiseFor(proc.status ?? -1, proc.stderr);
  return proc.stdout;
}

export function kernel<T>(op: KernelOp, request: unknown): T {
  return JSON.parse(invoke(["kernel", op], JSON.stringify(request))) as T;
}
