"""OpenQASM 2.0 subset: parser, printer, and lowering to Circuit.

Supported: the version header, `include "qelib1.inc";` (the standard
gate library is built in, nothing is read from disk), qreg/creg, gate
calls with parameter expressions, register broadcasts, user `gate`
definitions (non-recursive), `barrier`, trailing `measure`, and `//`
comments. `if`, `reset`, and `opaque` are rejected with an error that
names the construct. The exact grammar lives in docs/qasm_grammar.md.

Errors carry 1-based line and column numbers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ParseError, UnsupportedFeatureError, UnsupportedGateError
from .gates import GATE_DEFS, Circuit, GateOp

# -- lexer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<COMMENT>//[^\n]*)
  | (?P<REAL>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<INT>\d+)
  | (?P<ID>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<STRING>"[^"\n]*")
  | (?P<ARROW>->)
  | (?P<SYM>==|[()\[\]{},;+\-*/])
    """,
    re.VERBOSE,
)

_UNSUPPORTED_STATEMENTS = ("if", "reset", "opaque")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def _lex(source: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind not in ("WS", "COMMENT"):
            tok_kind = text if kind == "SYM" or kind == "ARROW" else kind
            tokens.append(Token(tok_kind, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- AST -----------------------------------------------------------------
# positions are excluded from equality so printed-and-reparsed trees
# compare equal


def _pos_field():
    return field(default=0, compare=False)


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Bin:
    op: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Arg:
    reg: str
    index: int | None = None


@dataclass(frozen=True)
class Include:
    name: str
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class RegDecl:
    kind: str  # qreg | creg
    name: str
    size: int
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class GateCall:
    name: str
    params: tuple = ()
    args: tuple = ()
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Barrier:
    args: tuple
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Measure:
    src: Arg
    dst: Arg
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class GateDef:
    name: str
    params: tuple
    qubits: tuple
    body: tuple  # GateCall | Barrier
    line: int = _pos_field()
    col: int = _pos_field()


@dataclass(frozen=True)
class Program:
    version: str
    statements: tuple


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            what = tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", tok.line, tok.col)
        return self.next()

    def program(self) -> Program:
        tok = self.expect("ID")
        if tok.text != "OPENQASM":
            raise ParseError("file must start with 'OPENQASM 2.0;'", tok.line, tok.col)
        ver = self.expect("REAL")
        if ver.text != "2.0":
            raise UnsupportedFeatureError(
                f"OPENQASM version {ver.text} (only 2.0 is supported)", ver.line, ver.col
            )
        self.expect(";")
        statements = []
        while self.peek().kind != "EOF":
            statements.append(self.statement())
        return Program("2.0", tuple(statements))

    def statement(self):
        tok = self.peek()
        if tok.kind != "ID":
            raise ParseError(f"expected a statement, found {tok.text!r}", tok.line, tok.col)
        if tok.text in _UNSUPPORTED_STATEMENTS:
            raise UnsupportedFeatureError(
                f"'{tok.text}' statements are not supported", tok.line, tok.col
            )
        if tok.text == "include":
            return self.include()
        if tok.text in ("qreg", "creg"):
            return self.regdecl()
        if tok.text == "gate":
            return self.gatedef()
        if tok.text == "barrier":
            return self.barrier()
        if tok.text == "measure":
            return self.measure()
        return self.gatecall()

    def include(self) -> Include:
        tok = self.next()
        name = self.expect("STRING")
        self.expect(";")
        return Include(name.text.strip('"'), line=tok.line, col=tok.col)

    def regdecl(self) -> RegDecl:
        tok = self.next()
        name = self.expect("ID")
        self.expect("[")
        size = self.expect("INT")
        self.expect("]")
        self.expect(";")
        if int(size.text) < 1:
            raise ParseError(f"register size must be >= 1, got {size.text}", size.line, size.col)
        return RegDecl(tok.text, name.text, int(size.text), line=tok.line, col=tok.col)

    def gatedef(self) -> GateDef:
        tok = self.next()
        name = self.expect("ID")
        params: tuple = ()
        if self.peek().kind == "(":
            self.next()
            params = self.idlist() if self.peek().kind == "ID" else ()
            self.expect(")")
        qubits = self.idlist()
        self.expect("{")
        body = []
        while self.peek().kind != "}":
            inner = self.peek()
            if inner.kind != "ID":
                raise ParseError(
                    f"expected a gate call, found {inner.text!r}", inner.line, inner.col
                )
            if inner.text in _UNSUPPORTED_STATEMENTS:
                raise UnsupportedFeatureError(
                    f"'{inner.text}' statements are not supported", inner.line, inner.col
                )
            body.append(self.barrier() if inner.text == "barrier" else self.gatecall())
        self.expect("}")
        return GateDef(name.text, params, qubits, tuple(body), line=tok.line, col=tok.col)

    def idlist(self) -> tuple:
        names = [self.expect("ID").text]
        while self.peek().kind == ",":
            self.next()
            names.append(self.expect("ID").text)
        return tuple(names)

    def barrier(self) -> Barrier:
        tok = self.next()
        args = self.arglist()
        self.expect(";")
        return Barrier(args, line=tok.line, col=tok.col)

    def measure(self) -> Measure:
        tok = self.next()
        src = self.argument()
        self.expect("->")
        dst = self.argument()
        self.expect(";")
        return Measure(src, dst, line=tok.line, col=tok.col)

    def gatecall(self) -> GateCall:
        name = self.expect("ID")
        params: tuple = ()
        if self.peek().kind == "(":
            self.next()
            if self.peek().kind != ")":
                params = self.explist()
            self.expect(")")
        args = self.arglist()
        self.expect(";")
        return GateCall(name.text, params, args, line=name.line, col=name.col)

    def arglist(self) -> tuple:
        args = [self.argument()]
        while self.peek().kind == ",":
            self.next()
            args.append(self.argument())
        return tuple(args)

    def argument(self) -> Arg:
        name = self.expect("ID")
        if self.peek().kind == "[":
            self.next()
            idx = self.expect("INT")
            self.expect("]")
            return Arg(name.text, int(idx.text))
        return Arg(name.text)

    def explist(self) -> tuple:
        exprs = [self.expr()]
        while self.peek().kind == ",":
            self.next()
            exprs.append(self.expr())
        return tuple(exprs)

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            node = Bin(op, node, self.factor())
        return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "-":
            self.next()
            return Neg(self.factor())
        if tok.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind in ("REAL", "INT"):
            self.next()
            return Num(float(tok.text))
        if tok.kind == "ID":
            self.next()
            return Pi() if tok.text == "pi" else Ref(tok.text)
        raise ParseError(f"expected an expression, found {tok.text!r}", tok.line, tok.col)


def parse(source: str) -> Program:
    """Parse QASM text into an AST; raises ParseError or UnsupportedFeatureError."""
    return _Parser(_lex(source)).program()


# -- printer -------------------------------------------------------------


def _expr_str(e) -> str:
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Neg):
        return f"(-{_expr_str(e.operand)})"
    if isinstance(e, Bin):
        return f"({_expr_str(e.lhs)}{e.op}{_expr_str(e.rhs)})"
    raise TypeError(f"not an expression node: {e!r}")


def _arg_str(a: Arg) -> str:
    return a.reg if a.index is None else f"{a.reg}[{a.index}]"


def _call_str(c: GateCall) -> str:
    params = f"({','.join(_expr_str(p) for p in c.params)})" if c.params else ""
    return f"{c.name}{params} {','.join(_arg_str(a) for a in c.args)};"


def unparse(prog: Program) -> str:
    """Print an AST back to canonical QASM; reparsing yields an equal AST."""
    lines = [f"OPENQASM {prog.version};"]
    for st in prog.statements:
        if isinstance(st, Include):
            lines.append(f'include "{st.name}";')
        elif isinstance(st, RegDecl):
            lines.append(f"{st.kind} {st.name}[{st.size}];")
        elif isinstance(st, GateDef):
            params = f"({','.join(st.params)})" if st.params else ""
            body = " ".join(
                _call_str(b) if isinstance(b, GateCall) else f"barrier {','.join(_arg_str(a) for a in b.args)};"
                for b in st.body
            )
            lines.append(f"gate {st.name}{params} {','.join(st.qubits)} {{ {body} }}")
        elif isinstance(st, GateCall):
            lines.append(_call_str(st))
        elif isinstance(st, Barrier):
            lines.append(f"barrier {','.join(_arg_str(a) for a in st.args)};")
        elif isinstance(st, Measure):
            lines.append(f"measure {_arg_str(st.src)} -> {_arg_str(st.dst)};")
        else:
            raise TypeError(f"unknown statement node: {st!r}")
    return "\n".join(lines) + "\n"


# -- lowering ------------------------------------------------------------

# standard-library gates beyond the native catalog, defined by their
# usual decompositions; parsed once with the parser above
_STDLIB_SRC = """
OPENQASM 2.0;
gate u(theta,phi,lambda) q { u3(theta,phi,lambda) q; }
gate p(lambda) q { u1(lambda) q; }
gate u0(gamma) q { id q; }
gate sx a { sdg a; h a; sdg a; }
gate sxdg a { s a; h a; s a; }
gate cy a,b { sdg b; cx a,b; s b; }
gate ch a,b { h b; sdg b; cx a,b; h b; t b; cx a,b; t b; h b; s b; x b; s a; }
gate crx(lambda) a,b { u1(pi/2) b; cx a,b; u3(-lambda/2,0,0) b; cx a,b; u3(lambda/2,-pi/2,0) b; }
gate cry(lambda) a,b { ry(lambda/2) b; cx a,b; ry(-lambda/2) b; cx a,b; }
gate crz(lambda) a,b { u1(lambda/2) b; cx a,b; u1(-lambda/2) b; cx a,b; }
gate cu1(lambda) a,b { u1(lambda/2) a; cx a,b; u1(-lambda/2) b; cx a,b; u1(lambda/2) b; }
gate cp(lambda) a,b { cu1(lambda) a,b; }
gate cu3(theta,phi,lambda) c,t { u1((lambda+phi)/2) c; u1((lambda-phi)/2) t; cx c,t; u3(-theta/2,0,-(phi+lambda)/2) t; cx c,t; u3(theta/2,phi,0) t; }
gate cswap a,b,c { cx c,b; ccx a,b,c; cx c,b; }
gate rxx(theta) a,b { u3(pi/2,theta,0) a; h b; cx a,b; u1(-theta) b; cx a,b; h b; u2(-pi,pi-theta) a; }
gate rzz(theta) a,b { cx a,b; u1(theta) b; cx a,b; }
"""

_PRIMITIVE_ALIASES = {"U": "u3", "CX": "cx"}


@lru_cache(maxsize=1)
def _stdlib_defs() -> dict[str, GateDef]:
    prog = parse(_STDLIB_SRC)
    return {st.name: st for st in prog.statements if isinstance(st, GateDef)}


def eval_expr(e, env: dict[str, float]) -> float:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Pi):
        return math.pi
    if isinstance(e, Ref):
        if e.name not in env:
            raise LookupError(f"unknown parameter '{e.name}'")
        return env[e.name]
    if isinstance(e, Neg):
        return -eval_expr(e.operand, env)
    if isinstance(e, Bin):
        lhs, rhs = eval_expr(e.lhs, env), eval_expr(e.rhs, env)
        if e.op == "+":
            return lhs + rhs
        if e.op == "-":
            return lhs - rhs
        if e.op == "*":
            return lhs * rhs
        return lhs / rhs
    raise TypeError(f"not an expression node: {e!r}")


class _Lowerer:
    def __init__(self, prog: Program, name: str):
        self.prog = prog
        self.name = name
        self.qregs: dict[str, tuple[int, int]] = {}  # name -> (offset, size)
        self.cregs: dict[str, tuple[int, int]] = {}
        self.defs: dict[str, GateDef] = dict(_stdlib_defs())
        self.ops: list[GateOp] = []
        self.measured = False

    def lower(self) -> Circuit:
        n_qubits = 0
        creg_size = 0
        for st in self.prog.statements:
            if isinstance(st, RegDecl):
                if st.name in self.qregs or st.name in self.cregs:
                    raise ParseError(f"register '{st.name}' redeclared", st.line, st.col)
                if st.kind == "qreg":
                    self.qregs[st.name] = (n_qubits, st.size)
                    n_qubits += st.size
                else:
                    self.cregs[st.name] = (creg_size, st.size)
                    creg_size += st.size
        for st in self.prog.statements:
            if isinstance(st, (RegDecl, Include)):
                continue
            if isinstance(st, GateDef):
                self.add_def(st)
            elif isinstance(st, GateCall):
                self.check_not_measured(st)
                self.call(st)
            elif isinstance(st, Barrier):
                qubits = [q for a in st.args for q in self.resolve_qarg(a, st)]
                self.ops.append(GateOp("barrier", tuple(dict.fromkeys(qubits))))
            elif isinstance(st, Measure):
                self.measure(st)
        if n_qubits == 0:
            raise ParseError("no qreg declared", 1, 1)
        return Circuit(n_qubits, self.ops, creg_size, name=self.name)

    def check_not_measured(self, st) -> None:
        if self.measured:
            raise UnsupportedFeatureError(
                "gates after measure (only trailing measurement is supported)",
                st.line,
                st.col,
            )

    def add_def(self, st: GateDef) -> None:
        if st.name in GATE_DEFS or st.name in self.defs:
            # redefinition of a known gate: keep the catalog semantics
            return
        for call in st.body:
            if isinstance(call, GateCall):
                known = (
                    call.name in GATE_DEFS
                    or call.name in self.defs
                    or call.name in _PRIMITIVE_ALIASES
                )
                if not known:
                    raise UnsupportedGateError(
                        f"gate '{call.name}' used in '{st.name}' before definition"
                    )
        self.defs[st.name] = st

    def resolve_qarg(self, a: Arg, st) -> list[int]:
        if a.reg not in self.qregs:
            raise ParseError(f"unknown quantum register '{a.reg}'", st.line, st.col)
        off, size = self.qregs[a.reg]
        if a.index is None:
            return list(range(off, off + size))
        if not 0 <= a.index < size:
            raise ParseError(f"index {a.index} outside {a.reg}[{size}]", st.line, st.col)
        return [off + a.index]

    def call(self, st: GateCall) -> None:
        # broadcast register-wide operands, then emit each concrete call
        resolved = [self.resolve_qarg(a, st) for a in st.args]
        widths = {len(r) for r in resolved if len(r) > 1}
        if len(widths) > 1:
            raise ParseError(
                f"mismatched register sizes in '{st.name}' broadcast", st.line, st.col
            )
        width = widths.pop() if widths else 1
        try:
            params = tuple(eval_expr(p, {}) for p in st.params)
        except LookupError as exc:
            raise ParseError(f"in '{st.name}': {exc}", st.line, st.col) from exc
        for j in range(width):
            qubits = tuple(r[j] if len(r) > 1 else r[0] for r in resolved)
            self.emit(st.name, params, qubits, st)

    def emit(self, name: str, params: tuple, qubits: tuple, st) -> None:
        name = _PRIMITIVE_ALIASES.get(name, name)
        if name in GATE_DEFS:
            try:
                self.ops.append(GateOp(name, qubits, params))
            except ValueError as exc:
                raise ParseError(str(exc), st.line, st.col) from exc
            return
        if name not in self.defs:
            raise UnsupportedGateError(f"unknown gate '{name}'")
        gdef = self.defs[name]
        if len(gdef.qubits) != len(qubits) or len(gdef.params) != len(params):
            raise ParseError(
                f"'{name}' takes {len(gdef.params)} params and {len(gdef.qubits)} qubits",
                st.line,
                st.col,
            )
        env = dict(zip(gdef.params, params))
        qmap = dict(zip(gdef.qubits, qubits))
        for call in gdef.body:
            if isinstance(call, Barrier):
                continue  # barriers inside macros do not affect lowering
            for a in call.args:
                if a.index is not None or a.reg not in qmap:
                    raise ParseError(
                        f"bad qubit operand '{_arg_str(a)}' in body of '{name}'",
                        st.line,
                        st.col,
                    )
            try:
                inner_params = tuple(eval_expr(p, env) for p in call.params)
            except LookupError as exc:
                raise ParseError(f"in body of '{name}': {exc}", st.line, st.col) from exc
            inner_qubits = tuple(qmap[a.reg] for a in call.args)
            self.emit(call.name, inner_params, inner_qubits, st)

    def measure(self, st: Measure) -> None:
        qubits = self.resolve_qarg(st.src, st)
        if st.dst.reg not in self.cregs:
            raise ParseError(f"unknown classical register '{st.dst.reg}'", st.line, st.col)
        _, csize = self.cregs[st.dst.reg]
        if st.src.index is None and st.dst.index is None and len(qubits) != csize:
            raise ParseError(
                f"measure broadcast {len(qubits)} qubits into creg[{csize}]", st.line, st.col
            )
        self.measured = True
        self.ops.append(GateOp("measure", tuple(qubits)))


def lower(prog: Program, name: str = "circuit") -> Circuit:
    """Flatten an AST into a Circuit of catalog gates.

    Register broadcasts expand per qubit, user and standard-library
    macros inline recursively, and qregs concatenate into one global
    index space in declaration order. Measurement must be trailing;
    sampled bitstrings always read q0..q(n-1) regardless of the
    measure statement's classical mapping.
    """
    return _Lowerer(prog, name).lower()


def parse_circuit(source: str, name: str = "circuit") -> Circuit:
    return lower(parse(source), name=name)
