"""Rendering of deduction results and the fixture-wide verification report."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .class_data import Expectation, Expected, ExampleRecord
from .deduction import (
    DeductionResult,
    LambdaConstraint,
    MuRange,
    NuResult,
    deduce,
    deduce_conditional,
)


class Status(str, Enum):
    OK = "OK"  # every deduced set lies inside the expected one
    PARTIAL = "PARTIAL"  # compatible, but the deduction is weaker than expected
    FAIL = "FAIL"  # some deduced set misses the expected one entirely


Interval = tuple[int | None, int | None]


def _mu_interval(mu: MuRange) -> Interval:
    return mu.lo, mu.hi


def _nu_interval(nu: NuResult) -> Interval:
    if nu.exact is not None:
        return nu.exact, nu.exact
    return nu.min, None


def _expected_interval(x: Expectation) -> Interval:
    if x.exact is not None:
        return x.exact, x.exact
    return x.min, x.max


def _within(inner: Interval, outer: Interval) -> bool:
    lo, hi = inner
    olo, ohi = outer
    if olo is not None and (lo is None or lo < olo):
        return False
    if ohi is not None and (hi is None or hi > ohi):
        return False
    return True


def _meets(a: Interval, b: Interval) -> bool:
    lo = max((x for x in (a[0], b[0]) if x is not None), default=None)
    hi = min((x for x in (a[1], b[1]) if x is not None), default=None)
    return lo is None or hi is None or lo <= hi


def _lambda_verdict(lam: LambdaConstraint, x: Expectation) -> Status:
    if lam.exact is not None:
        return Status.OK if x.contains(lam.exact) else Status.FAIL
    lo, hi = _expected_interval(x)
    start = max(lo or 0, 0)
    stop = hi if hi is not None else start + lam.modulus * (len(lam.excluded) + 2)
    if lam.upper is not None:
        stop = min(stop, lam.upper)
    if not any(lam.contains(v) for v in range(start, stop + 1)):
        return Status.FAIL
    admissible_hi = lam.upper
    return Status.OK if _within((0, admissible_hi), (lo, hi)) else Status.PARTIAL


def _verdict(inner: Interval, x: Expectation) -> Status:
    outer = _expected_interval(x)
    if not _meets(inner, outer):
        return Status.FAIL
    return Status.OK if _within(inner, outer) else Status.PARTIAL


def compare(result: DeductionResult, expected: Expected | None) -> Status:
    if expected is None:
        return Status.OK
    verdicts = [
        _verdict(_mu_interval(result.mu), expected.mu),
        _lambda_verdict(result.lambda_, expected.lambda_),
        _verdict(_nu_interval(result.nu), expected.nu),
    ]
    if Status.FAIL in verdicts:
        return Status.FAIL
    if Status.PARTIAL in verdicts:
        return Status.PARTIAL
    return Status.OK


def contradicts_exact(result: DeductionResult, expected: Expected | None) -> bool:
    """True iff an exact expected value lies outside the deduced set."""
    if expected is None:
        return False
    checks = (
        (expected.mu, result.mu.contains),
        (expected.lambda_, result.lambda_.contains),
        (expected.nu, result.nu.contains),
    )
    return any(x.exact is not None and not ok(x.exact) for x, ok in checks)


@dataclass(frozen=True)
class ReportRow:
    record: ExampleRecord
    result: DeductionResult
    status: Status
    contradiction: bool

    def line(self) -> str:
        e = "[" + ",".join(map(str, self.result.e)) + "]"
        cells = [self.record.label, str(self.record.p), str(self.record.s), e,
                 self.result.summary(), self.status.value]
        if self.result.conditional_on is not None:
            cells.append(self.result.conditional_on)
        return " | ".join(cells)


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]
    conditional_rows: tuple[ReportRow, ...]

    @property
    def exit_code(self) -> int:
        return 3 if any(r.contradiction for r in self.rows + self.conditional_rows) else 0

    def render_text(self) -> str:
        header = "label | p | s | e | deduced | status"
        out = [header]
        out += [r.line() for r in self.rows]
        out.append("")
        out.append("conditional on unproved hypotheses")
        out.append(header + " | hypothesis")
        out += [r.line() for r in self.conditional_rows]
        out.append("")
        counts = {s: sum(r.status is s for r in self.rows) for s in Status}
        out.append(
            f"{len(self.rows)} records: "
            + ", ".join(f"{counts[s]} {s.value}" for s in Status)
            + f"; {len(self.conditional_rows)} conditional"
        )
        return "\n".join(out) + "\n"

    def render_json(self) -> bytes:
        def row(r: ReportRow) -> dict:
            d = r.result.to_json()
            d["status"] = r.status.value
            return d

        doc = {
            "rows": [row(r) for r in self.rows],
            "conditional": [row(r) for r in self.conditional_rows],
            "exit_code": self.exit_code,
        }
        return _dump(doc)


def _order(records: Iterable[ExampleRecord]) -> list[ExampleRecord]:
    return sorted(records, key=lambda r: (r.label, r.p))


def build_report(records: Sequence[ExampleRecord]) -> Report:
    rows, cond_rows = [], []
    for rec in _order(records):
        res = deduce(rec)
        rows.append(ReportRow(rec, res, compare(res, rec.expected),
                              contradicts_exact(res, rec.expected)))
        cres = deduce_conditional(rec)
        if cres is not None:
            exp = rec.aux.conditional.expected
            cond_rows.append(ReportRow(rec, cres, compare(cres, exp),
                                       contradicts_exact(cres, exp)))
    return Report(tuple(rows), tuple(cond_rows))


def _dump(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def render_json(results: Sequence[DeductionResult]) -> bytes:
    """Key-sorted JSON array of results; exponents stay integers."""
    return _dump([r.to_json() for r in results])


def render_result_text(rec: ExampleRecord, res: DeductionResult) -> str:
    e = "[" + ",".join(map(str, res.e)) + "]"
    lines = [f"{rec.label} (p={rec.p}, s={rec.s}, e={e})", f"  result: {res.summary()}"]
    if res.conditional_on:
        lines[0] += f" assuming {res.conditional_on}"
    for t in res.trace:
        lines.append(f"  {t.rule}: {t.consequence}")
        lines.append(f"      [{t.citation}]")
    if res.asymptotic_from:
        lines.append(f"  asymptotic-only for n < {res.asymptotic_from}")
    return "\n".join(lines)
