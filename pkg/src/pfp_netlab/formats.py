"""Text formats: peering lists (.asl), reports (.report) and distribution CSVs.

Input parsing is tolerant (comments, blank lines, CRLF, repeated separators,
an optional ``AS`` prefix); output is canonical so files diff cleanly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph, from_edge_list
from .metrics import REPORT_FIELDS, DistributionTable, MetricsReport


class FormatError(ValueError):
    """Malformed input document; ``lineno`` is 1-based when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


_SEP = re.compile(r"[\s,;|]+")
_AS_NUMBER = re.compile(r"(?:AS)?(\d+)", re.IGNORECASE)


def _parse_as_number(token: str, lineno: int) -> int:
    if token.startswith("-"):
        raise FormatError(f"negative AS number {token!r}", lineno)
    m = _AS_NUMBER.fullmatch(token)
    if not m:
        raise FormatError(f"not an AS number: {token!r}", lineno)
    return int(m.group(1))


def parse_peering_list(text: str) -> Graph:
    """Graph from lines of ``A B`` peering pairs; ``#`` starts a comment line."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = [t for t in _SEP.split(line) if t]
        if len(tokens) != 2:
            raise FormatError(f"expected two AS numbers, got {len(tokens)} fields", lineno)
        edges.append((_parse_as_number(tokens[0], lineno),
                      _parse_as_number(tokens[1], lineno)))
    return from_edge_list(edges)


def write_peering_list(g: Graph) -> str:
    """One ``min max`` line per link, sorted.

    Isolated nodes have no line and do not survive a round trip.
    """
    return "".join(f"{u} {v}\n" for u, v in g.edges())


# -- reports ------------------------------------------------------------------

_ABSENT = re.compile(r"absent\(([A-Za-z0-9_\-]+)\)")


def _format_number(x: float) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not report values")
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _parse_number(text: str, key: str, lineno: int) -> float:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise FormatError(f"bad value for {key}: {text!r}", lineno) from None


def write_report(report: MetricsReport) -> str:
    """Line-oriented ``key = value`` document; absent fields read ``absent(reason)``."""
    lines = []
    for name, value in report.values().items():
        if value is None:
            reason = report.reasons.get(name, "unknown")
            lines.append(f"{name} = absent({reason})")
        else:
            lines.append(f"{name} = {_format_number(value)}")
    lines.append(f"disconnected = {'true' if report.disconnected else 'false'}")
    return "\n".join(lines) + "\n"


def read_report(text: str) -> MetricsReport:
    values: dict[str, float | None] = {}
    reasons: dict[str, str] = {}
    disconnected = False
    seen: set[str] = set()
    unknown = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep:
            raise FormatError(f"expected 'key = value', got {line!r}", lineno)
        if key in seen:
            raise FormatError(f"duplicate key {key!r}", lineno)
        seen.add(key)
        if key == "disconnected":
            if value not in ("true", "false"):
                raise FormatError(f"disconnected must be true or false, got {value!r}", lineno)
            disconnected = value == "true"
        elif key in REPORT_FIELDS:
            m = _ABSENT.fullmatch(value)
            if m:
                values[key] = None
                reasons[key] = m.group(1)
            else:
                values[key] = _parse_number(value, key, lineno)
        else:
            unknown.append(key)
    if unknown:
        raise FormatError(f"unknown report keys: {', '.join(unknown)}")
    missing = [k for k in REPORT_FIELDS if k not in values]
    if missing:
        raise FormatError(f"missing report keys: {', '.join(missing)}")
    return MetricsReport(**values, reasons=reasons, disconnected=disconnected)


@dataclass(frozen=True)
class Tolerance:
    """Acceptance band for one metric, relative to a reference value.

    ``kind`` is ``abs`` (|got - ref| <= a), ``rel`` (|got - ref| <= a * |ref|)
    or ``range`` (a <= got <= b, reference ignored).
    """

    kind: str
    a: float
    b: float = 0.0

    def accepts(self, reference: float, value: float) -> bool:
        if self.kind == "range":
            return self.a <= value <= self.b
        bound = self.a * abs(reference) if self.kind == "rel" else self.a
        return abs(value - reference) <= bound

    def __str__(self) -> str:
        if self.kind == "range":
            return f"[{self.a:g}, {self.b:g}]"
        return f"±{self.a * 100:g}%" if self.kind == "rel" else f"±{self.a:g}"


def parse_tolerances(text: str) -> dict[str, Tolerance]:
    """Parse ``key = 0.05`` (absolute), ``key = 5%`` (relative) or ``key = 195..240``."""
    out: dict[str, Tolerance] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or key not in REPORT_FIELDS:
            raise FormatError(f"bad tolerance entry {line!r}", lineno)
        if ".." in value:
            lo, _, hi = value.partition("..")
            tol = Tolerance("range", float(_parse_number(lo.strip(), key, lineno)),
                            float(_parse_number(hi.strip(), key, lineno)))
            if tol.a > tol.b:
                raise FormatError(f"empty range for {key}", lineno)
        elif value.endswith("%"):
            tol = Tolerance("rel", _parse_number(value[:-1].strip(), key, lineno) / 100.0)
        else:
            tol = Tolerance("abs", float(_parse_number(value, key, lineno)))
        if tol.kind != "range" and tol.a < 0:
            raise FormatError(f"negative tolerance for {key}", lineno)
        out[key] = tol
    return out


# -- distribution tables ------------------------------------------------------

def _format_csv_number(x: float) -> str:
    if isinstance(x, int) or float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def write_distribution_csv(table: DistributionTable) -> str:
    rows = ["x,y"]
    rows.extend(f"{_format_csv_number(x)},{_format_csv_number(y)}" for x, y in table.points)
    return "\n".join(rows) + "\n"
