"""
Plain-text file formats.

Coloring file:
    # comment lines start with '#'
    zm <m> <r>
    cells <t_0> ... <t_{m-1}>        each token a color in [0, r) or '*'

Line dump:
    line <n> <r>
    <color of 1> <color of 2> ... <color of n>   (whitespace separated, wrapped)
"""
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from pydantic import ValidationError

from .errors import ColoringFormatError
from .models import ZmColoring

WILDCARD_TOKEN = "*"
LINE_DUMP_WIDTH = 50


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped.split()


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ColoringFormatError(f"{what} must be an integer", line=lineno, token=token)


def parse_coloring(text: str) -> ZmColoring:
    """Parse the coloring text format; errors name the line and token."""
    lines = list(_content_lines(text))
    if not lines:
        raise ColoringFormatError("empty coloring file")

    lineno, header = lines[0]
    if header[0] != "zm":
        raise ColoringFormatError("expected 'zm <m> <r>' header", line=lineno, token=header[0])
    if len(header) != 3:
        raise ColoringFormatError("header needs exactly 'zm <m> <r>'", line=lineno)
    m = _parse_int(header[1], lineno, "modulus")
    r = _parse_int(header[2], lineno, "color count")
    if m < 1:
        raise ColoringFormatError("modulus must be >= 1", line=lineno, token=header[1])
    if r < 1:
        raise ColoringFormatError("color count must be >= 1", line=lineno, token=header[2])

    if len(lines) < 2:
        raise ColoringFormatError("missing 'cells' line", line=lineno + 1)
    lineno, body = lines[1]
    if body[0] != "cells":
        raise ColoringFormatError("expected 'cells' line", line=lineno, token=body[0])
    tokens = body[1:]
    if len(tokens) != m:
        raise ColoringFormatError(f"expected {m} cells, got {len(tokens)}", line=lineno)

    cells: list[Optional[int]] = []
    for tok in tokens:
        if tok == WILDCARD_TOKEN:
            cells.append(None)
            continue
        color = _parse_int(tok, lineno, "cell")
        if not 0 <= color < r:
            raise ColoringFormatError(f"color outside [0, {r})", line=lineno, token=tok)
        cells.append(color)

    if len(lines) > 2:
        extra_line, extra = lines[2]
        raise ColoringFormatError("unexpected content after 'cells' line", line=extra_line, token=extra[0])

    try:
        return ZmColoring(modulus=m, color_count=r, cells=tuple(cells))
    except ValidationError as e:
        raise ColoringFormatError(e.errors()[0]["msg"])


def format_coloring(coloring: ZmColoring, comment: Optional[str] = None) -> str:
    parts = []
    if comment:
        parts.extend(f"# {line}" for line in comment.splitlines())
    parts.append(f"zm {coloring.modulus} {coloring.color_count}")
    tokens = (WILDCARD_TOKEN if c is None else str(c) for c in coloring.cells)
    parts.append("cells " + " ".join(tokens))
    return "\n".join(parts) + "\n"


def read_coloring(path: Path) -> ZmColoring:
    return parse_coloring(Path(path).read_text(encoding="utf-8"))


def write_coloring(coloring: ZmColoring, path: Path, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_coloring(coloring, comment), encoding="utf-8")


def format_line_dump(colors: np.ndarray, color_count: int) -> str:
    """Header `line <n> <r>` then the colors of 1..n."""
    n = int(colors.shape[0])
    out = [f"line {n} {color_count}"]
    values = colors.tolist()
    for start in range(0, n, LINE_DUMP_WIDTH):
        out.append(" ".join(str(v) for v in values[start:start + LINE_DUMP_WIDTH]))
    return "\n".join(out) + "\n"


def parse_line_dump(text: str) -> tuple[int, np.ndarray]:
    """Return (color_count, colors of 1..n)."""
    lines = list(_content_lines(text))
    if not lines:
        raise ColoringFormatError("empty line dump")
    lineno, header = lines[0]
    if header[0] != "line" or len(header) != 3:
        raise ColoringFormatError("expected 'line <n> <r>' header", line=lineno, token=header[0])
    n = _parse_int(header[1], lineno, "length")
    r = _parse_int(header[2], lineno, "color count")
    values: list[int] = []
    for lineno, tokens in lines[1:]:
        for tok in tokens:
            color = _parse_int(tok, lineno, "color")
            if not 0 <= color < r:
                raise ColoringFormatError(f"color outside [0, {r})", line=lineno, token=tok)
            values.append(color)
    if len(values) != n:
        raise ColoringFormatError(f"expected {n} colors, got {len(values)}")
    return r, np.asarray(values, dtype=np.uint8)
