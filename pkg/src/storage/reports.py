"""Report and table encodings: JSON, CSV and a plain-text summary."""

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

from pydantic import ValidationError

from src.exceptions import ReportIoError, SchemaError
from src.models import ReportFormat, SuiteReport
from src.optimizer.qubit import ScanResult
from src.quantum import KdDistribution

REPORT_CSV_COLUMNS = ("inequality_id", "lhs", "rhs", "slack", "pass", "heuristic")
KD_CSV_COLUMNS = ("a", "b", "re", "im", "abs", "im_abs")
SCAN_CSV_COLUMNS = ("alpha", "phi_z", "lhs", "numeric", "closed_form")


def _write(text: str, path: Optional[str | Path], what: str) -> str:
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise ReportIoError(f"cannot write {what} {path}: {e}") from e
    return text


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _json(report: SuiteReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2) + "\n"


def _csv(report: SuiteReport) -> str:
    rows = (
        [c.inequality_id, repr(c.lhs), repr(c.rhs), repr(c.slack), _flag(c.passed), _flag(c.heuristic)]
        for c in report.checks
    )
    return _csv_text(REPORT_CSV_COLUMNS, rows)


def _text(report: SuiteReport) -> str:
    status = "PASS" if report.ok else "FAIL"
    lines = [
        f"suite {report.suite_name}: {status}",
        f"  instances: {report.instances}",
        f"  checks:    {len(report.checks)}",
        f"  failures:  {report.failures}",
        f"  seed:      {report.seed} ({report.seed_source})",
        f"  wall time: {report.wall_time:.3f} s",
    ]
    if report.checks:
        worst = min(report.checks, key=lambda c: c.slack)
        lines.append(f"  min slack: {worst.slack:.3e} ({worst.inequality_id})")
        trivial = sum(1 for c in report.checks if c.trivially_satisfied)
        heuristic = sum(1 for c in report.checks if c.heuristic)
        lines.append(f"  trivially satisfied: {trivial}, heuristic: {heuristic}")
    for check in report.checks:
        if not check.passed:
            lines.append(f"  FAILED {check.inequality_id}: lhs={check.lhs:.12g} rhs={check.rhs:.12g} {check.witness}")
    return "\n".join(lines) + "\n"


_ENCODERS = {ReportFormat.JSON: _json, ReportFormat.CSV: _csv, ReportFormat.TEXT: _text}


def render_report(report: SuiteReport, fmt: ReportFormat | str = ReportFormat.JSON) -> str:
    """Encode a report. CSV has one row per check with a fixed six-column header."""
    return _ENCODERS[ReportFormat(fmt)](report)


def emit_report(report: SuiteReport, fmt: ReportFormat | str = ReportFormat.JSON, path: Optional[str | Path] = None) -> str:
    """
    Encode a report and write it to ``path`` when given.

    Raises:
        ReportIoError: If the file cannot be written
    """
    return _write(render_report(report, fmt), path, "report")


def report_from_text(text: str, source: str = "<string>") -> SuiteReport:
    """
    Decode a JSON report.

    Raises:
        SchemaError: If the text is not a valid report
    """
    try:
        return SuiteReport.model_validate_json(text)
    except ValidationError as e:
        diagnostics = [f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()]
        raise SchemaError(f"invalid report {source}", diagnostics) from e


def parse_report(path: str | Path) -> SuiteReport:
    """Read a JSON report file back into a :class:`SuiteReport`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ReportIoError(f"cannot read report {path}: {e}") from e
    return report_from_text(text, source=str(path))


def comparable_json(report: SuiteReport) -> str:
    """JSON without ``wall_time``; equal for two runs with the same seed and configuration."""
    return json.dumps(report.comparable(), indent=2) + "\n"


def kd_table_csv(dist: KdDistribution, path: Optional[str | Path] = None) -> str:
    """KD table as CSV rows ``(a, b, re, im, abs, im_abs)`` in index order."""
    rows, cols = dist.dims
    entries = ((a, b, complex(dist.table[a, b])) for a in range(rows) for b in range(cols))
    text = _csv_text(
        KD_CSV_COLUMNS,
        ([a, b, repr(z.real), repr(z.imag), repr(abs(z)), repr(abs(z.imag))] for a, b, z in entries),
    )
    return _write(text, path, "KD table")


def scan_csv(scan: ScanResult, path: Optional[str | Path] = None) -> str:
    """Trade-off scan as CSV rows ``(alpha, phi_z, lhs, numeric, closed_form)``."""
    return _write(_csv_text(SCAN_CSV_COLUMNS, ([repr(v) for v in row] for row in scan.rows())), path, "scan")


def emit_document(document: Mapping[str, Any], path: Optional[str | Path] = None) -> str:
    """Pretty JSON for the measure and optimizer outputs of the CLI."""
    return _write(json.dumps(document, indent=2) + "\n", path, "document")
