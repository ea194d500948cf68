"""
report.py - Emit command results as JSON or as a human-readable table
"""
from typing import Any, Dict, List

import orjson

from core.config import OutputSettings


def to_json(report: Dict[str, Any], settings: OutputSettings) -> str:
    option = orjson.OPT_NON_STR_KEYS
    if settings.json_indent:
        option |= orjson.OPT_INDENT_2
    if settings.sort_keys:
        option |= orjson.OPT_SORT_KEYS
    return orjson.dumps(report, option=option).decode()


def _format_value(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, (list, tuple)):
        return ", ".join(_format_value(v) for v in value) if value else "(none)"
    return str(value)


def _flatten(report: Dict[str, Any], prefix: str = "") -> List[tuple]:
    rows = []
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, f"{name}."))
        else:
            rows.append((name, _format_value(value)))
    return rows


def to_table(title: str, report: Dict[str, Any]) -> str:
    rows = _flatten(report)
    width = max((len(name) for name, _ in rows), default=0)
    lines = [title, "=" * 60]
    lines.extend(f"{name.ljust(width)}  {value}" for name, value in rows)
    return "\n".join(lines)


def render(title: str, report: Dict[str, Any], as_json: bool, settings: OutputSettings) -> str:
    return to_json(report, settings) if as_json else to_table(title, report)
