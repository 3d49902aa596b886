"""Text and SVG Gantt renderings of a result document (see ``results.py``)."""

from __future__ import annotations

from html import escape


class RenderError(ValueError):
    pass


def _rows(result: dict) -> tuple[list[list[dict]], int]:
    try:
        machines = result["machines"]
        due = int(result["due_date"])
        rows = [[{"job": int(s["job"]), "start": int(s["start"]), "end": int(s["end"])} for s in row]
                for row in machines]
    except (KeyError, TypeError, ValueError) as exc:
        raise RenderError(f"malformed result document: {exc}") from None
    if not any(rows):
        raise RenderError("schedule is empty")
    for row in rows:
        for span in row:
            if span["start"] < 0 or span["end"] <= span["start"]:
                raise RenderError(f"bad span for job {span['job']}")
    return rows, due


def render_text(result: dict) -> str:
    """One line per machine with ``J<id>[start,end)`` spans, then the due date column."""
    rows, due = _rows(result)
    width = max(len(str(due)), 1)
    lines = []
    for m, row in enumerate(rows, start=1):
        spans = " ".join(f"J{s['job']}[{s['start']},{s['end']})" for s in row)
        lines.append(f"M{m} | {spans or '-'} | D={due:>{width}}")
    horizon = max(max(s["end"] for row in rows for s in row), due)
    scale = max(1, -(-horizon // 80))
    cut = -(-due // scale)  # due-date boundary column
    lines.append("")
    for m, row in enumerate(rows, start=1):
        cells = ["."] * (-(-horizon // scale))
        for s in row:
            mark = str(s["job"])[-1]
            for t in range(s["start"], s["end"]):
                cells[t // scale] = mark
        lines.append(f"M{m} {''.join(cells[:cut])}|{''.join(cells[cut:])}")
    unit = f"one column = {scale} time units, " if scale > 1 else ""
    lines.append(f"({unit}'|' is the due date {due}, '.' is idle)")
    return "\n".join(lines) + "\n"


def render_svg(result: dict, unit: int = 12, row_height: int = 28) -> str:
    rows, due = _rows(result)
    horizon = max(max(s["end"] for row in rows for s in row), due) + 2
    left = 40
    width = left + horizon * unit + 10
    height = 20 + len(rows) * (row_height + 8) + 20
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'font-family="monospace" font-size="11">']
    for m, row in enumerate(rows):
        y = 20 + m * (row_height + 8)
        out.append(f'<text x="4" y="{y + row_height // 2 + 4}">M{m + 1}</text>')
        for s in row:
            x = left + s["start"] * unit
            w = (s["end"] - s["start"]) * unit
            out.append(f'<rect x="{x}" y="{y}" width="{w}" height="{row_height}" '
                       f'fill="#d9d9d9" stroke="#333"/>')
            out.append(f'<text x="{x + w / 2:g}" y="{y + row_height // 2 + 4}" '
                       f'text-anchor="middle">{escape(str(s["job"]))}</text>')
    x_due = left + due * unit
    out.append(f'<line x1="{x_due}" y1="10" x2="{x_due}" y2="{height - 18}" stroke="#c00" '
               f'stroke-width="2" stroke-dasharray="4 3"/>')
    out.append(f'<text x="{x_due}" y="{height - 4}" text-anchor="middle">D={due}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
