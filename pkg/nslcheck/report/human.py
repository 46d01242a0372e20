"""Plain-text rendering of report payloads for ``--human``."""
from __future__ import annotations

from typing import Any, Dict, List


def _scalar(value: Any) -> str:
    if isinstance(value, dict) and "display" in value:
        return str(value["display"])
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        if all(isinstance(v, int) and not isinstance(v, bool) for v in value):
            return "(" + ",".join(str(v) for v in value) + ")"
        return ", ".join(_scalar(v) for v in value)
    return str(value)


def _is_scalar(value: Any) -> bool:
    if isinstance(value, dict):
        return "display" in value
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) for v in value)
    return True


def _table(rows: List[Dict[str, Any]], indent: str) -> List[str]:
    headers = list(rows[0].keys())
    cells = [[_scalar(row.get(h)) for h in headers] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    out = [indent + "  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    out.append(indent + "  ".join("-" * w for w in widths))
    out.extend(indent + "  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells)
    return out


def _render(payload: Dict[str, Any], indent: str = "") -> List[str]:
    lines: List[str] = []
    width = max((len(k) for k in payload), default=0)
    for key, value in payload.items():
        label = key.replace("_", " ")
        if _is_scalar(value):
            lines.append(f"{indent}{label.ljust(width)}  {_scalar(value)}")
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{indent}{label}:")
            lines.extend(_table(value, indent + "  "))
        elif isinstance(value, list):
            lines.append(f"{indent}{label}: {len(value)}")
            lines.extend(f"{indent}  {_scalar(v)}" for v in value)
        elif isinstance(value, dict):
            lines.append(f"{indent}{label}:")
            lines.extend(_render(value, indent + "  "))
        else:  # pragma: no cover
            lines.append(f"{indent}{label}  {value}")
    return lines


def render_human(report: Dict[str, Any]) -> str:
    head = f"{report['command']}  (schema {report['schema_version']})"
    lines = [head]
    if report.get("problem_digest"):
        lines.append(f"problem  {report['problem_digest'][:19]}")
    if not report.get("exact", True):
        lines.append("note  enumeration hit the model cap; counts are lower bounds")
    lines.append("")
    result = report["result"]
    if isinstance(result, dict) and isinstance(result.get("source"), str):
        result = dict(result)
        source = result.pop("source")
        lines.extend(_render(result))
        lines.append("")
        lines.append(source.rstrip("\n"))
    else:
        lines.extend(_render(result))
    return "\n".join(lines) + "\n"
