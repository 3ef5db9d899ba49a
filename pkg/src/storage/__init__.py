"""Flat-file persistence for instances, reports and tables."""

from src.storage.instances import (
    emit_instance,
    instance_from_text,
    instance_to_text,
    parse_instance,
    random_instance,
)
from src.storage.reports import (
    comparable_json,
    emit_document,
    emit_report,
    kd_table_csv,
    parse_report,
    render_report,
    report_from_text,
    scan_csv,
)

__all__ = [
    "emit_instance",
    "instance_from_text",
    "instance_to_text",
    "parse_instance",
    "random_instance",
    "comparable_json",
    "emit_document",
    "emit_report",
    "kd_table_csv",
    "parse_report",
    "render_report",
    "report_from_text",
    "scan_csv",
]
