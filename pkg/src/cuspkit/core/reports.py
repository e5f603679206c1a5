import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Protocol, Sequence

from ..context import get_tolerance

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality or equality: lhs ≤ rhs, or lhs = rhs."""
    claim: str
    citation: str
    lhs: float
    rhs: float
    slack: float  # rhs - lhs
    witness: Any
    tolerance: float
    verified: bool
    kind: str = "inequality"  # or "equality"
    inputs: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "citation": self.citation,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "verified": self.verified,
            "witness": self.witness,
            "inputs": self.inputs,
        }


def make_report(
    claim: str,
    citation: str,
    lhs: float,
    rhs: float,
    kind: str = "inequality",
    witness: Any = None,
    inputs: Optional[Dict[str, Any]] = None,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """
    Builds a report and decides `verified`: |slack| ≤ tolerance for equalities,
    slack ≥ -tolerance for inequalities.

    Raises:
        ValueError: if a side is not finite or the kind is unknown.
    """
    if kind not in ("inequality", "equality"):
        raise ValueError(f"Unknown report kind: {kind}")
    lhs, rhs = float(lhs), float(rhs)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ValueError(f"Report '{claim}' has a non-finite side: {lhs}, {rhs}")
    tolerance = get_tolerance().atol if tolerance is None else tolerance
    slack = rhs - lhs
    verified = abs(slack) <= tolerance if kind == "equality" else slack >= -tolerance
    return BoundReport(
        claim=claim,
        citation=citation,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        witness=witness,
        tolerance=tolerance,
        verified=verified,
        kind=kind,
        inputs=dict(inputs or {}),
    )


def to_json(value: Any) -> str:
    """Deterministic JSON: floats with 17 significant digits, complex numbers as [re, im]."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, complex):
        return to_json([value.real, value.imag])
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {to_json(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in value) + "]"
    if hasattr(value, "item"):
        # numpy scalars
        return to_json(value.item())
    return json.dumps(str(value), ensure_ascii=False)


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    return to_json(value)


def render(records: Sequence[Dict[str, Any]], fmt: str = "json") -> str:
    """Renders records (reports or table rows) as a JSON array, CSV with a header row, or text blocks."""
    if fmt == "json":
        if not records:
            return "[]\n"
        return "[\n" + ",\n".join("  " + to_json(r) for r in records) + "\n]\n"
    if fmt == "csv":
        buffer = io.StringIO(newline="")
        if records:
            writer = csv.writer(buffer, lineterminator="\r\n")
            columns = list(records[0].keys())
            writer.writerow(columns)
            for r in records:
                writer.writerow([_cell(r.get(c)) for c in columns])
        return buffer.getvalue()
    if fmt == "text":
        blocks = []
        for r in records:
            width = max(len(k) for k in r)
            blocks.append("\n".join(f"{k.ljust(width)} : {_cell(v)}" for k, v in r.items()))
        return "\n\n".join(blocks) + ("\n" if blocks else "")
    raise ValueError(f"Unknown output format: {fmt}")


def render_reports(reports: Sequence[BoundReport], fmt: str = "json") -> str:
    return render([r.to_dict() for r in reports], fmt)


class ReportSink(Protocol):
    """Protocol for report consumers."""
    def emit(self, report: BoundReport) -> None:
        ...


class JsonLineSink:
    """
    Appends reports to a file in JSON Lines format.
    """
    def __init__(self, filepath: str):
        self.filepath = filepath

    def emit(self, report: BoundReport) -> None:
        with open(self.filepath, "a", encoding="utf-8") as f:
            f.write(to_json(report.to_dict()) + "\n")


class LoggingSink:
    """
    Forwards each report as one JSON line to the `cuspkit.reports` logger.
    """
    def __init__(self, name: str = "cuspkit.reports", level: int = logging.INFO):
        self.logger = logging.getLogger(name)
        self.level = level

    def emit(self, report: BoundReport) -> None:
        self.logger.log(self.level, to_json(report.to_dict()))


class CollectingSink:
    """Keeps reports in memory."""
    def __init__(self):
        self.reports: List[BoundReport] = []

    def emit(self, report: BoundReport) -> None:
        self.reports.append(report)
