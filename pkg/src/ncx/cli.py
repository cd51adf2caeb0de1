"""Command-line interface.

Exit codes: 0 all checks pass, 1 a check failed, 2 input could not be parsed.
Output is deterministic for identical inputs; ``--timing`` adds wall time.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .coeff import CyclotomicField, Field, make_field, q_pascal, validate_assumption_A
from .errors import AssumptionError, NcxError, SchemaError
from .homalg import ShortExactSequence, connecting, internal_hexagon, snake_hexagon, validate_ses
from .generate import staircase_ses
from .ncomplex import CohomologyTable, NComplex, staircase, validate_ncomplex
from .nhomog import build_A_Rn
from .qdga import check_dN, check_graded_algebra, check_qdga, check_twisted_leibniz, qpoly_example
from .selftest import run_selftest
from .tensor import tensor

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


@dataclass
class Check:
    name: str
    passed: bool
    details: list = field(default_factory=list)


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)     # path -> sha256
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, details=None) -> None:
        self.checks.append(Check(name, bool(passed), list(details or [])))

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "checks": [{"name": c.name, "status": "pass" if c.passed else "fail",
                        "details": c.details} for c in self.checks],
            "verdict": "pass" if self.passed else "fail",
            "data": self.data,
        }
        if self.wall_time is not None:
            out["wall_time_s"] = round(self.wall_time, 6)
        return out

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for path, digest in self.inputs.items():
            lines.append(f"input {path} sha256={digest[:16]}")
        for c in self.checks:
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}")
            for d in c.details:
                lines.append(f"    {d}")
        for key, value in self.data.items():
            if isinstance(value, list):
                lines.append(f"{key}:")
                lines.extend(f"  {v}" for v in value)
            else:
                lines.append(f"{key}: {value}")
        lines.append(f"verdict: {'pass' if self.passed else 'fail'}")
        if self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit(report: RunReport, args) -> int:
    if getattr(args, "timing", False):
        report.wall_time = time.perf_counter() - args._t0
    if args.json:
        sys.stdout.write(io.dumps(report.to_json()))
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK if report.passed else EXIT_FAIL


def _fmt_matrix(F: Field, M) -> str:
    return "[" + "; ".join(" ".join(F.pretty(x) for x in row) for row in M) + "]" if M.size else "[]"


def _load_complex(path) -> NComplex:
    return io.complex_from_json(io.load(path))


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    kind, obj = io.load_any(args.path)
    report = RunReport(f"validate {args.path}", {str(args.path): _digest(args.path)})
    F = obj.F
    a = validate_assumption_A(F)
    report.add("assumption: [N]_q = 0 and [n]_q invertible", a.passed, [a.reason] if a.reason else [])
    if kind == "complex":
        v = validate_ncomplex(obj)
        report.add(f"N-complex (d^{F.N} = 0)", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    elif kind == "ses":
        for name, C in (("C1", obj.C1), ("C2", obj.C2), ("C3", obj.C3)):
            v = validate_ncomplex(C)
            report.add(f"{name} is an N-complex", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
        v = validate_ses(obj)
        report.add("short exact sequence", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    else:

        r = check_qdga(obj)
        report.add("graded q-differential algebra", r.passed, [str(f) for f in r.failures[:20]])
    return _emit(report, args)


def cmd_cohomology(args) -> int:
    C = _load_complex(args.path)
    report = RunReport(f"cohomology {args.path} --k {args.k}", {str(args.path): _digest(args.path)})
    v = validate_ncomplex(C)
    report.add(f"N-complex (d^{C.N} = 0)", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    if not v.passed:
        return _emit(report, args)
    ks = range(1, C.N) if args.k == "all" else [int(args.k)]
    T = CohomologyTable(C)
    table, rows = {}, []
    for k in ks:
        dims = T.dims(k)
        table[str(k)] = {str(n): dims[n] for n in sorted(dims)}
        rows.append(f"H_({k}): " + " ".join(f"{n}:{dims[n]}" for n in sorted(dims)))
        if args.reps:
            for n in sorted(dims):
                if dims[n]:
                    P = T.piece(k, n)
                    rows.append(f"  reps H^{n}_({k}) = {_fmt_matrix(C.F, P.reps.T)}")
    report.data["dims"] = table if args.json else rows
    return _emit(report, args)


def cmd_tensor(args) -> int:

    A, B = _load_complex(args.a), _load_complex(args.b)
    report = RunReport(f"tensor {args.a} {args.b}",
                       {str(args.a): _digest(args.a), str(args.b): _digest(args.b)})
    T = tensor(A, B)
    v = validate_ncomplex(T)
    report.add(f"tensor product satisfies d^{T.N} = 0", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    text = io.dumps(io.complex_to_json(T))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        report.data["output"] = str(args.output)
    report.data["dims"] = {str(n): T.dim(n) for n in sorted(T.dims)}
    if not args.output and not args.json:
        sys.stdout.write(text)
    return _emit(report, args)


def cmd_hexagon(args) -> int:
    C = _load_complex(args.path)
    report = RunReport(f"hexagon {args.path} --l {args.l} --m {args.m}", {str(args.path): _digest(args.path)})
    v = validate_ncomplex(C)
    report.add("N-complex", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    if not v.passed:
        return _emit(report, args)
    h = internal_hexagon(C, args.l, args.m)
    _hexagon_checks(report, h)
    return _emit(report, args)


def _hexagon_checks(report: RunReport, h, prefix: str = "") -> None:
    for node in h.nodes:
        sts = [s for s in h.statuses if s.node == node]
        bad = [f"degree {s.degree}: composite_zero={s.composite_zero} dim ker={s.dim_kernel} "
               f"dim im={s.dim_image}" for s in sts if not s.exact]
        report.add(f"{prefix}exact at {node}", not bad, bad)


def cmd_ses(args) -> int:
    s = io.ses_from_json(io.load(args.path))
    echo = f"ses {args.path}" + ("" if args.n is None else f" --n {args.n}")
    report = RunReport(echo, {str(args.path): _digest(args.path)})
    v = validate_ses(s)
    report.add("short exact sequence", v.passed, [f"degree {n}: {m}" for n, m in v.failures])
    if not v.passed:
        return _emit(report, args)
    ns = range(1, s.N) if args.n is None else [args.n]
    for n in ns:
        _hexagon_checks(report, snake_hexagon(s, n), f"n={n}: " if args.n is None else "")
    F = s.F
    mats = []
    for k in sorted({k for n in ns for k in (n, s.N - n)}):
        dmap = connecting(s, k)
        for n in sorted(dmap.mats):
            mats.append(f"k={k} degree {n} -> {n + k}: {_fmt_matrix(F, dmap.mats[n])}")
    report.data["connecting"] = mats
    return _emit(report, args)


def parse_field_option(text: str, N: int) -> Field:
    """``cyclotomic`` or ``Fp:p:q``."""
    if text == "cyclotomic":
        return CyclotomicField(N)
    parts = text.split(":")
    if len(parts) == 3 and parts[0] in ("Fp", "fp"):
        return make_field({"type": "Fp", "p": int(parts[1]), "q": int(parts[2]), "N": N})
    raise SchemaError(f"bad --field {text!r}; use 'cyclotomic' or 'Fp:p:q'")


def cmd_qbinom(args) -> int:
    F = parse_field_option(args.field, args.N)
    report = RunReport(f"qbinom --N {args.N} --field {args.field}")
    a = validate_assumption_A(F)
    report.add("assumption: [N]_q = 0 and [n]_q invertible", a.passed, [a.reason] if a.reason else [])
    rows = q_pascal(F, args.N)
    vanish = all(F.is_zero(x) for x in rows[args.N][1:-1])
    report.add(f"[{args.N} choose p]_q = 0 for 0 < p < {args.N}", vanish)
    if args.json:
        report.data["rows"] = [[F.format(x) for x in r] for r in rows]
    else:
        report.data["rows"] = [", ".join(F.pretty(x) for x in r) for r in rows]
    return _emit(report, args)


def cmd_qdga(args) -> int:

    Q = io.algebra_from_json(io.load(args.path))
    report = RunReport(f"qdga check {args.path}", {str(args.path): _digest(args.path)})
    a = validate_assumption_A(Q.F)
    report.add("assumption: [N]_q = 0 and [n]_q invertible", a.passed, [a.reason] if a.reason else [])
    for r in (check_graded_algebra(Q.algebra), check_dN(Q), check_twisted_leibniz(Q)):
        report.add(r.name, r.passed, [str(f) for f in r.failures[: args.max_witnesses]])
    return _emit(report, args)


def cmd_examples(args) -> int:

    N = args.N
    if args.field == "auto":
        F = CyclotomicField(N)
    else:
        F = parse_field_option(args.field, N)
    name = args.name
    if name == "staircase":
        obj = io.complex_to_json(staircase(F, 0, args.length))
    elif name == "truncated-staircase":
        obj = io.complex_to_json(staircase(F, 1, N - 1))
    elif name == "staircase-ses":
        C1, C2, C3, a, b = staircase_ses(F, segs=[(0, N)], cuts=[1])
        obj = io.ses_to_json(ShortExactSequence(C1, C2, C3, a, b))
    elif name == "qpoly":
        obj = io.algebra_to_json(qpoly_example(F, args.window or 2 * N))
    elif name == "nhomog":
        R = build_A_Rn(F, args.n, N, args.maxdeg_alg, args.maxdeg_poly)
        obj = io.algebra_to_json(R.as_qdga())
    else:  # pragma: no cover - argparse restricts choices
        raise SchemaError(f"unknown example {name}")
    text = io.dumps(obj)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("NCX_THREADS", "1")))
    except ValueError:
        return 1


def cmd_selftest(args) -> int:

    report = RunReport(f"selftest --seed {args.seed} --rounds {args.rounds}")
    results = run_selftest(args.seed, args.rounds, threads=_threads())
    for name, passed, details in results:
        report.add(name, passed, details)
    return _emit(report, args)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncx", description="Exact computations with N-complexes.")
    # the report flags are accepted before or after the subcommand
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check d^N = 0 and the assumption on q")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", parents=[common], help="dimensions of amplitude cohomology")
    s.add_argument("path")
    s.add_argument("--k", default="all")
    s.add_argument("--reps", action="store_true", help="print representative vectors")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("tensor", parents=[common], help="tensor product of two N-complexes")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("hexagon", parents=[common], help="internal exact hexagon check")
    s.add_argument("path")
    s.add_argument("--l", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_hexagon)

    s = sub.add_parser("ses", parents=[common], help="snake hexagon and connecting maps")
    s.add_argument("path")
    s.add_argument("--n", type=int, default=None, help="hexagon index (default: every n in 1..N-1)")
    s.set_defaults(func=cmd_ses)

    s = sub.add_parser("qbinom", parents=[common], help="q-binomial triangle")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--field", default="cyclotomic", help="'cyclotomic' or 'Fp:p:q'")
    s.set_defaults(func=cmd_qbinom)

    s = sub.add_parser("qdga", parents=[common], help="graded q-differential algebra checks")
    s.add_argument("action", choices=["check"])
    s.add_argument("path")
    s.add_argument("--max-witnesses", type=int, default=10)
    s.set_defaults(func=cmd_qdga)

    s = sub.add_parser("examples", parents=[common], help="write example objects as JSON")
    s.add_argument("name", choices=["staircase", "truncated-staircase", "staircase-ses", "qpoly", "nhomog"])
    s.add_argument("--N", type=int, default=3)
    s.add_argument("--n", type=int, default=2, help="number of generators (nhomog)")
    s.add_argument("--field", default="auto", help="'cyclotomic' or 'Fp:p:q'")
    s.add_argument("--length", type=int, default=None, help="staircase length (default N)")
    s.add_argument("--window", type=int, default=None, help="qpoly window (default 2N)")
    s.add_argument("--maxdeg-alg", type=int, default=4)
    s.add_argument("--maxdeg-poly", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("selftest", parents=[common], help="randomized property checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rounds", type=int, default=10)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except AssumptionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NcxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
