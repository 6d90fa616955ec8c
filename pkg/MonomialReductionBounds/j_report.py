"""
j_report.py

Report assembly and rendering. A VerificationReport holds one InstanceResult
per instance (in instance-key order) and renders as an aligned text table or
as byte-stable JSON. Timing is left out unless asked for, so two runs on the
same config and seed render identically.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .f_verify_bounds import FAIL, HYPOTHESIS_NOT_MET, UNRESOLVED, VERDICTS, VerificationRecord
from .helpers import EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_OK, EXIT_UNRESOLVED, dumps_stable

TABLE_HEADER = ("instance", "target", "verdict", "quantities")


@dataclass(frozen=True)
class InstanceResult:
    name: str
    records: Tuple[VerificationRecord, ...]


@dataclass(frozen=True)
class VerificationReport:
    instances: Tuple[InstanceResult, ...] = ()

    def records(self) -> Iterator[VerificationRecord]:
        for result in self.instances:
            yield from result.records

    def counts(self) -> Dict[str, int]:
        tally = Counter(r.verdict for r in self.records())
        return {verdict: tally.get(verdict, 0) for verdict in VERDICTS}

    @property
    def ok(self) -> bool:
        counts = self.counts()
        return counts[FAIL] == 0 and counts[UNRESOLVED] == 0

    def to_report(self, include_timing: bool = False) -> dict:
        return {
            "instances": [
                {"name": result.name, "records": [r.to_report(include_timing) for r in result.records]}
                for result in self.instances
            ],
            "summary": dict(self.counts(), instances=len(self.instances),
                            tasks=sum(len(result.records) for result in self.instances)),
        }


def _scalar_summary(quantities: dict) -> str:
    parts = []
    for key in sorted(quantities):
        value = quantities[key]
        if isinstance(value, (bool, int, str)):
            parts.append(f"{key}={value}")
    return " ".join(parts)


def render_table(report: VerificationReport) -> str:
    rows: List[Tuple[str, ...]] = [TABLE_HEADER]
    for result in report.instances:
        for record in result.records:
            rows.append((result.name, record.target, record.verdict, _scalar_summary(record.quantities)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_HEADER) - 1)]
    lines = []
    for row in rows:
        cells = [cell.ljust(width) for cell, width in zip(row, widths)] + [row[-1]]
        lines.append("  ".join(cells).rstrip())
    counts = report.counts()
    total = sum(counts.values())
    lines.append("")
    lines.append(f"{len(report.instances)} instance(s), {total} task(s): "
                 + ", ".join(f"{verdict}={counts[verdict]}" for verdict in VERDICTS))
    return "\n".join(lines) + "\n"


def render_json(report: VerificationReport, include_timing: bool = False) -> str:
    return dumps_stable(report.to_report(include_timing))


def exit_code(report: VerificationReport) -> int:
    """fail beats unresolved beats hypothesis-not-met."""
    counts = report.counts()
    if counts[FAIL]:
        return EXIT_FAIL
    if counts[UNRESOLVED]:
        return EXIT_UNRESOLVED
    if counts[HYPOTHESIS_NOT_MET]:
        return EXIT_HYPOTHESIS
    return EXIT_OK
