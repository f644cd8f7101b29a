"""Text formats for namings, points and curves.

Naming file::

    n 2
    t_min 0
    t_max 1
    parity half
    atoms 2
    0 0.16666666666666663
    0.59999999999999998 0.83333333333333337

Several namings may follow one another in one file. Point file: a header line
``n t_min t_max`` and then one line of ``v_1 .. v_n`` per point. Curve file:
``n`` lines of ``n+1`` reals. Reals are written with 17 significant digits, so
write -> read -> write is byte-identical. Blank lines and ``#`` comments are
ignored on input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Interval, MomentPoint, Naming, Parity, Tolerances
from .errors import MomhullError
from .reduction import CanonicalNaming
from .transform import PolyCurve


class ParseError(MomhullError):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _float(tok: str, what: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"cannot read {what} from {tok!r}") from None


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"cannot read integer {what} from {tok!r}") from None


def format_naming(naming) -> str:
    if isinstance(naming, CanonicalNaming):
        naming = naming.underlying
    lines = [
        f"n {naming.n}",
        f"t_min {fmt(naming.interval.t_min)}",
        f"t_max {fmt(naming.interval.t_max)}",
        f"parity {naming.parity.value}",
        f"atoms {len(naming.atoms)}",
    ]
    lines += [f"{fmt(a.t)} {fmt(a.c)}" for a in sorted(naming.atoms, key=lambda a: a.t)]
    return "\n".join(lines) + "\n"


def format_namings(namings) -> str:
    return "\n".join(format_naming(P) for P in namings)


def parse_namings(text: str, tol: Tolerances = DEFAULT_TOL) -> list[Naming]:
    lines = _lines(text)
    out, i = [], 0
    keys = ("n", "t_min", "t_max", "parity", "atoms")
    while i < len(lines):
        fields = {}
        for key in keys:
            if i >= len(lines):
                raise ParseError(f"naming ends before field {key!r}")
            parts = lines[i].split()
            if len(parts) != 2 or parts[0] != key:
                raise ParseError(f"expected '{key} <value>', got {lines[i]!r}")
            fields[key] = parts[1]
            i += 1
        count = _int(fields["atoms"], "atom count")
        pairs = []
        for _ in range(count):
            if i >= len(lines):
                raise ParseError("fewer atom lines than declared")
            parts = lines[i].split()
            if len(parts) != 2:
                raise ParseError(f"atom line needs 't c', got {lines[i]!r}")
            pairs.append((_float(parts[0], "t"), _float(parts[1], "c")))
            i += 1
        try:
            parity = Parity(fields["parity"])
        except ValueError:
            raise ParseError(f"parity must be 'integer' or 'half', got {fields['parity']!r}") from None
        interval = Interval(_float(fields["t_min"], "t_min"), _float(fields["t_max"], "t_max"))
        out.append(Naming.build(interval, _int(fields["n"], "n"), pairs, parity, tol))
    if not out:
        raise ParseError("no naming found")
    return out


def parse_naming(text: str, tol: Tolerances = DEFAULT_TOL) -> Naming:
    namings = parse_namings(text, tol)
    if len(namings) != 1:
        raise ParseError(f"expected one naming, found {len(namings)}")
    return namings[0]


@dataclass(frozen=True)
class PointBatch:
    interval: Interval
    points: list[MomentPoint]

    @property
    def n(self) -> int:
        return self.points[0].n if self.points else 0


def format_points(interval: Interval, points) -> str:
    points = list(points)
    n = points[0].n if points else 0
    lines = [f"{n} {fmt(interval.t_min)} {fmt(interval.t_max)}"]
    lines += [" ".join(fmt(x) for x in p.v) for p in points]
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> PointBatch:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty point file")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"point header must be 'n t_min t_max', got {lines[0]!r}")
    n = _int(head[0], "n")
    interval = Interval(_float(head[1], "t_min"), _float(head[2], "t_max"))
    points = []
    for line in lines[1:]:
        vals = [_float(tok, "coordinate") for tok in line.split()]
        if len(vals) != n:
            raise ParseError(f"point line has {len(vals)} coordinates, expected {n}")
        points.append(MomentPoint(n, vals))
    if not points:
        raise ParseError("point file has a header but no points")
    return PointBatch(interval, points)


def looks_like_naming(text: str) -> bool:
    lines = _lines(text)
    return bool(lines) and lines[0].split()[0] == "n"


def format_curve(curve: PolyCurve) -> str:
    return "\n".join(" ".join(fmt(x) for x in row) for row in curve.coeff) + "\n"


def parse_curve(text: str) -> PolyCurve:
    rows = [[_float(tok, "curve coefficient") for tok in line.split()] for line in _lines(text)]
    if not rows:
        raise ParseError("empty curve file")
    n = len(rows)
    if any(len(r) != n + 1 for r in rows):
        raise ParseError(f"curve file with {n} rows needs {n + 1} coefficients per row")
    return PolyCurve(n, np.array(rows))
