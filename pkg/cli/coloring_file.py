"""
coloring_file.py - Read and write the `gallai-coloring v1` text format

    gallai-coloring v1
    order N colors k
    <N-1 lines; line i holds the colours of edges (i, j) for j = i+1..N-1>

Blank trailing lines are ignored; anything else out of place is a parse error.
"""
import logging
from pathlib import Path
from typing import List

from core.coloring import ColoredComplete
from core.errors import ColoringParseError, GallaiInputError

logger = logging.getLogger(__name__)

FORMAT_LINE = "gallai-coloring v1"


def emit(g: ColoredComplete) -> str:
    lines = [FORMAT_LINE, f"order {g.order} colors {g.num_colors}"]
    lines.extend(" ".join(str(c) for c in row) for row in g.upper_rows())
    return "\n".join(lines) + "\n"


def parse(text: str) -> ColoredComplete:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0].strip() != FORMAT_LINE:
        raise ColoringParseError(f"expected header {FORMAT_LINE!r}", line=1)
    if len(lines) < 2:
        raise ColoringParseError("missing 'order N colors k' line", line=2)

    fields = lines[1].split()
    if len(fields) != 4 or fields[0] != "order" or fields[2] != "colors":
        raise ColoringParseError("expected 'order N colors k'", line=2)
    try:
        order, num_colors = int(fields[1]), int(fields[3])
    except ValueError as e:
        raise ColoringParseError("order and colour count must be integers", line=2) from e
    if order < 1 or num_colors < 1:
        raise ColoringParseError("order and colour count must be positive", line=2)

    body = lines[2:]
    if len(body) != order - 1:
        raise ColoringParseError(f"expected {order - 1} colour rows, found {len(body)}", line=len(lines))

    rows: List[List[int]] = []
    for i, raw in enumerate(body):
        line_no = i + 3
        try:
            row = [int(tok) for tok in raw.split()]
        except ValueError as e:
            raise ColoringParseError("colours must be integers", line=line_no) from e
        if len(row) != order - 1 - i:
            raise ColoringParseError(f"expected {order - 1 - i} colours, found {len(row)}", line=line_no)
        bad = [c for c in row if not 1 <= c <= num_colors]
        if bad:
            raise ColoringParseError(f"colour {bad[0]} outside 1..{num_colors}", line=line_no)
        rows.append(row)

    try:
        return ColoredComplete.from_upper_rows(order, num_colors, rows)
    except GallaiInputError as e:
        raise ColoringParseError(str(e)) from e


def write_coloring(path: str, g: ColoredComplete) -> None:
    Path(path).write_text(emit(g), encoding="utf-8")
    logger.debug("wrote %r to %s", g, path)


def read_coloring(path: str) -> ColoredComplete:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ColoringParseError(f"cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ColoringParseError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}") from e
    return parse(text)
