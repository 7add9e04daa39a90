"""Reading and writing the ``.ls`` text format.

::

    # optional comment lines
    points N
    lines M
    <M rows: ascending point indices separated by spaces>
    sides s_0 ... s_{N-1}        (optional, sides numbered from 1)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .system import LinearSystem, SidePartition


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class LsDocument:
    sys: LinearSystem
    sides: SidePartition | None = None
    comments: list[str] = field(default_factory=list)


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {text!r}") from None


def parse(text: str) -> LsDocument:
    rows = []
    comments = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s.startswith("#"):
            comments.append(s[1:].strip())
        elif s:
            rows.append((i, s))
    if not rows:
        raise ParseError(1, "empty input")

    def header(idx: int, key: str) -> int:
        if idx >= len(rows):
            raise ParseError(rows[-1][0], f"missing '{key} N' header")
        lineno, s = rows[idx]
        parts = s.split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(lineno, f"expected '{key} <count>', got {s!r}")
        val = _ints(parts[1], lineno)[0]
        if val < 0:
            raise ParseError(lineno, f"{key} count must be non-negative")
        return val

    n = header(0, "points")
    m = header(1, "lines")
    lines = []
    for k in range(m):
        if 2 + k >= len(rows):
            raise ParseError(rows[-1][0], f"expected {m} line rows, found {k}")
        lineno, s = rows[2 + k]
        if s.startswith("sides"):
            raise ParseError(lineno, f"expected {m} line rows, found {k}")
        pts = _ints(s, lineno)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ParseError(lineno, "points of a line must be strictly ascending")
        bad = [p for p in pts if not 0 <= p < n]
        if bad:
            raise ParseError(lineno, f"point {bad[0]} outside [0, {n})")
        lines.append(pts)
    sides = None
    rest = rows[2 + m:]
    if rest:
        lineno, s = rest[0]
        parts = s.split()
        if parts[0] != "sides":
            raise ParseError(lineno, f"unexpected row {s!r}")
        vals = _ints(" ".join(parts[1:]), lineno)
        if len(vals) != n:
            raise ParseError(lineno, f"sides row has {len(vals)} entries, expected {n}")
        if any(v < 1 for v in vals):
            raise ParseError(lineno, "side indices start at 1")
        sides = SidePartition(max(vals, default=0), tuple(vals))
        if len(rest) > 1:
            raise ParseError(rest[1][0], "trailing content after sides row")
    return LsDocument(LinearSystem(n, lines), sides, comments)


def dumps(sys: LinearSystem, sides: SidePartition | None = None,
          comments: list[str] | None = None) -> str:
    out = [f"# {c}" for c in comments or []]
    out.append(f"points {sys.num_points}")
    out.append(f"lines {sys.num_lines}")
    out.extend(" ".join(map(str, ln)) for ln in sys.lines)
    if sides is not None:
        out.append("sides " + " ".join(map(str, sides.side_of)))
    return "\n".join(out) + "\n"
