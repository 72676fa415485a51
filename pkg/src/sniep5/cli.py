"""Command-line front end.

Exit codes: 0 realizable or verified, 1 not realizable or a failed step,
2 out of region, 3 input error. Machine-readable output carries no
timestamps, so the same arguments always produce the same bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from .exact import DomainError, FormatError, format_rational, parse_rational
from .pattern_c import TABLE_COLUMNS, appendix_d_rows, verify_appendix_c, verify_appendix_d, verify_c_identities
from .pattern_h import verify_appendix_ab, verify_h_identities
from .poly import UniPoly, isolate_real_roots
from .report import Report
from .sniep import (
    PATTERN_C,
    PATTERN_FULL,
    PATTERN_H,
    ConstructionError,
    InputError,
    VerdictKind,
    check_conditions,
    decide,
    sample_array,
)

__all__ = ["RunConfig", "run", "main", "EXIT_OK", "EXIT_FAIL", "EXIT_OUT_OF_REGION", "EXIT_INPUT"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_OUT_OF_REGION = 2
EXIT_INPUT = 3

VERIFY_TARGETS = ("appendix-a", "appendix-b", "appendix-c", "appendix-d", "identities-h", "identities-c", "identities")
EMIT_FORMATS = ("text", "json", "csv")
SAMPLE_PATTERNS = {"full": PATTERN_FULL, "h": PATTERN_H, "c": PATTERN_C}

# Step-name prefixes of the combined A/B replay that belong to the upper-bound half.
_APPENDIX_B_PREFIXES = ("ceiling_", "window_", "factor_roots")


class UsageError(Exception):
    """Malformed command line or input value."""


@dataclass(frozen=True)
class RunConfig:
    """Validated options of one invocation."""

    command: str
    target: str | None = None
    values: str | None = None
    seed: int = 0
    count: int | None = None
    digits: int | None = None
    emit: str | None = None
    jobs: int = 1
    pattern: str = "full"
    out: str | None = None

    def __post_init__(self) -> None:
        if self.digits is not None and not 1 <= self.digits <= 12:
            raise UsageError(f"--digits must be in [1, 12], got {self.digits}")
        if self.count is not None and self.count < 1:
            raise UsageError(f"--count must be at least 1, got {self.count}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")
        if self.emit is not None and self.emit not in EMIT_FORMATS:
            raise UsageError(f"--emit must be one of {', '.join(EMIT_FORMATS)}")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> Any:  # type: ignore[override]
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--emit", choices=EMIT_FORMATS, help="output format (default depends on the command)")
    common.add_argument("--digits", type=int, help="decimal accuracy in [1, 12]")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, help="sample count")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for table replay")
    common.add_argument("--out", help="write output to this path instead of stdout")

    p = _Parser(prog="sniep5", description="Five-element symmetric nonnegative spectra: decide, realize, and replay certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (("check", "decide realizability"), ("realize", "decide and build a certificate matrix")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("spectrum", help='five values, e.g. "1, 0.35, 0.34, -0.72, -0.72"')
    sp = sub.add_parser("verify", parents=[common], help="replay a certificate and report each step")
    sp.add_argument("target", choices=VERIFY_TARGETS)
    sp = sub.add_parser("roots", parents=[common], help="isolate the real roots of a polynomial")
    sp.add_argument("coefficients", help='coefficients from the highest degree down, e.g. "-24,12,78,-3"')
    sub.add_parser("tables", parents=[common], help="dump the reproduced lower-bound tables")
    sp = sub.add_parser("sample", parents=[common], help="sample trace-1/2 matrices with spectral radius <= 1 and test lambda3 <= 1/2")
    sp.add_argument("--pattern", choices=tuple(SAMPLE_PATTERNS), default="full")
    return p


_NUMBER_LIST = re.compile(r"^-[\d.]")


def parse_args(argv: Sequence[str]) -> RunConfig:
    # a leading space keeps "-24,12,78,-3" positional; values are whitespace-split later
    args = [" " + a if _NUMBER_LIST.match(a) and not re.fullmatch(r"-\d+", a) else a for a in argv]
    ns = _parser().parse_args(args)
    return RunConfig(
        command=ns.command,
        target=getattr(ns, "target", None),
        values=getattr(ns, "spectrum", None) or getattr(ns, "coefficients", None),
        seed=ns.seed,
        count=ns.count,
        digits=ns.digits,
        emit=ns.emit,
        jobs=ns.jobs,
        pattern=getattr(ns, "pattern", "full"),
        out=ns.out,
    )


# ---------------------------------------------------------------------------
# commands; each returns (exit code, output text)
# ---------------------------------------------------------------------------


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _dump_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


_VERDICT_EXIT = {
    VerdictKind.REALIZABLE: EXIT_OK,
    VerdictKind.NOT_REALIZABLE: EXIT_FAIL,
    VerdictKind.OUT_OF_REGION: EXIT_OUT_OF_REGION,
}


def _verdict_output(obj: dict[str, Any], emit: str) -> str:
    if emit == "json":
        return _dump_json(obj)
    if emit == "csv":
        return _dump_csv(("kind", "failed_condition", "spectrum"), [(obj["kind"], obj.get("failed_condition", ""), " ".join(obj["spectrum"]))])
    lines = [f"{obj['kind']}: ({', '.join(obj['spectrum'])})"]
    if "failed_condition" in obj:
        lines.append(f"failed condition: {obj['failed_condition']}")
    for note in obj.get("notes", ()):
        lines.append(f"note: {note}")
    cert = obj.get("certificate")
    if cert:
        lines.append(f"certificate (residual {cert['residual']:.3e}):")
        lines.extend("  " + "  ".join(f"{v: .12f}" for v in row) for row in cert["matrix"])
        lines.extend(f"  step: {s}" for s in cert["construction"])
    return "\n".join(lines) + "\n"


def _cmd_check(cfg: RunConfig) -> tuple[int, str]:
    verdict = check_conditions(cfg.values or "")
    return _VERDICT_EXIT[verdict.kind], _verdict_output(verdict.to_json_obj(), cfg.emit or "json")


def _cmd_realize(cfg: RunConfig) -> tuple[int, str]:
    verdict = decide(cfg.values or "")
    return _VERDICT_EXIT[verdict.kind], _verdict_output(verdict.to_json_obj(), cfg.emit or "json")


def _split_ab(report: Report) -> tuple[Report, Report]:
    a, b = Report("appendix-a"), Report("appendix-b")
    for step in report.steps:
        (b if step.step.startswith(_APPENDIX_B_PREFIXES) else a).steps.append(step)
    return a, b


def _reports(cfg: RunConfig) -> list[Report]:
    target = cfg.target
    if target in ("appendix-a", "appendix-b"):
        a, b = _split_ab(verify_appendix_ab(cfg.digits or 10))
        return [a if target == "appendix-a" else b]
    if target == "appendix-c":
        return [verify_appendix_c(samples=cfg.count or 0, seed=cfg.seed)]
    if target == "appendix-d":
        return [verify_appendix_d(cfg.digits or 2, jobs=cfg.jobs)]
    if target == "identities-h":
        return [verify_h_identities()]
    if target == "identities-c":
        return [verify_c_identities()]
    return [verify_h_identities(), verify_c_identities()]


def _cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    reports = _reports(cfg)
    ok = all(r.ok for r in reports)
    emit = cfg.emit or "text"
    if emit == "json":
        objs = [r.to_json_obj() for r in reports]
        text = _dump_json(objs[0] if len(objs) == 1 else objs)
    elif emit == "csv":
        rows = [(r.name, s.step, s.claim, s.status.value, s.detail) for r in reports for s in r.steps]
        text = _dump_csv(("report", "step", "claim", "status", "detail"), rows)
    else:
        text = "\n".join(r.to_text() for r in reports) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


def _decimal(x: Fraction, places: int) -> str:
    with localcontext() as ctx:
        ctx.prec = places + 40
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return str(value.quantize(Decimal(1).scaleb(-places)))


def parse_coefficients(text: str) -> UniPoly:
    """``"a_n, ..., a_1, a_0"`` (highest degree first) as a polynomial."""
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise InputError("no coefficients given")
    try:
        coeffs = [parse_rational(p) for p in parts]
    except FormatError as exc:
        raise InputError(str(exc)) from None
    poly = UniPoly(reversed(coeffs))
    if poly.is_zero():
        raise InputError("the zero polynomial has no isolated roots")
    return poly


def _cmd_roots(cfg: RunConfig) -> tuple[int, str]:
    digits = cfg.digits or 10
    poly = parse_coefficients(cfg.values or "")
    intervals = isolate_real_roots(poly, digits)
    rows = [
        {"root": _decimal(iv.midpoint, digits), "lo": format_rational(iv.lo), "hi": format_rational(iv.hi)}
        for iv in intervals
    ]
    emit = cfg.emit or "json"
    if emit == "json":
        text = _dump_json({"polynomial": str(poly), "digits": digits, "roots": rows})
    elif emit == "csv":
        text = _dump_csv(("root", "lo", "hi"), [(r["root"], r["lo"], r["hi"]) for r in rows])
    else:
        text = "".join(f"{r['root']}  in [{r['lo']}, {r['hi']}]\n" for r in rows) or "no real roots\n"
    return EXIT_OK, text


def _cmd_tables(cfg: RunConfig) -> tuple[int, str]:
    rows = appendix_d_rows(cfg.digits or 2, cfg.jobs)
    emit = cfg.emit or "json"
    if emit == "csv":
        return EXIT_OK, _dump_csv(TABLE_COLUMNS, [[r[c] for c in TABLE_COLUMNS] for r in rows])
    if emit == "json":
        return EXIT_OK, _dump_json(rows)
    width = max(len(c) for c in TABLE_COLUMNS)
    blocks = ["\n".join(f"{c:<{width}}  {r[c]}" for c in TABLE_COLUMNS) for r in rows]
    return EXIT_OK, "\n\n".join(blocks) + "\n"


SAMPLE_TOL = 1e-12


def _cmd_sample(cfg: RunConfig) -> tuple[int, str]:
    count = cfg.count or 10_000
    mats = sample_array(Fraction(1, 2), count, cfg.seed, max_radius=1.0, pattern=SAMPLE_PATTERNS[cfg.pattern])
    eig = np.linalg.eigvalsh(mats)
    lam3 = eig[:, 2]
    violations = int(np.sum(lam3 > 0.5 + SAMPLE_TOL))
    obj = {
        "pattern": cfg.pattern,
        "count": count,
        "seed": cfg.seed,
        "tolerance": SAMPLE_TOL,
        "max_lambda3": float(lam3.max()),
        "max_spectral_radius": float(eig[:, -1].max()),
        "violations": violations,
    }
    emit = cfg.emit or "json"
    if emit == "json":
        text = _dump_json(obj)
    elif emit == "csv":
        text = _dump_csv(tuple(obj), [tuple(obj.values())])
    else:
        text = "".join(f"{k}: {v}\n" for k, v in obj.items())
    return (EXIT_OK if violations == 0 else EXIT_FAIL), text


_COMMANDS: dict[str, Callable[[RunConfig], tuple[int, str]]] = {
    "check": _cmd_check,
    "realize": _cmd_realize,
    "verify": _cmd_verify,
    "roots": _cmd_roots,
    "tables": _cmd_tables,
    "sample": _cmd_sample,
}


def run(argv: Sequence[str], stdout: Any = None, stderr: Any = None) -> int:
    """Execute one command line and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        cfg = parse_args(argv)
        code, text = _COMMANDS[cfg.command](cfg)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, InputError, FormatError, DomainError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ConstructionError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_FAIL
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
