"""Approximation error of the expansions of e, as tables, CSV and SVG."""

from __future__ import annotations

import csv
import io
import os
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import BinaryIO, Iterable, Union

from .cf_core import Family, GCFSpec, convergents
from .constants import constant, log10_abs
from .errors import EmptyTable, PrecisionExhausted

log = logging.getLogger(__name__)

# Families plotted together, slowest to fastest.
FIG_FAMILIES = ("power-ratio", "euler", "derangement-elegant")
START_DIGITS = 50
MAX_DIGITS = 10_000
# enclosure radius must be below this fraction of the error being measured
REL_RADIUS = Fraction(1, 10**6)
CSV_HEADER = ("family", "n", "p", "q", "log10_err")

Destination = Union[str, os.PathLike, BinaryIO, None]


@dataclass(frozen=True)
class ErrorRecord:
    family: str
    n: int
    p: int
    q: int
    log10_err: float


@dataclass(frozen=True)
class ErrorTable:
    records: tuple[ErrorRecord, ...]
    digits_used: int = 0
    families: tuple[str, ...] = field(default=())

    def __post_init__(self):
        recs = tuple(sorted(self.records, key=lambda r: (r.family, r.n)))
        keys = [(r.family, r.n) for r in recs]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate (family, n) rows")
        object.__setattr__(self, "records", recs)
        if not self.families:
            object.__setattr__(self, "families", tuple(sorted({r.family for r in recs})))

    def series(self, family: str) -> dict[int, float]:
        return {r.n: r.log10_err for r in self.records if r.family == family}


def log10_error(x: Fraction, target: str, digits: int) -> tuple[float, int]:
    """log10 |x - target| and the enclosure precision that resolved it."""
    while digits <= MAX_DIGITS:
        enc = constant(target, digits)
        lower = enc.min_distance(x)
        if lower > 0 and enc.radius < REL_RADIUS * lower:
            return log10_abs(x - enc.value), digits
        digits *= 2
    raise PrecisionExhausted(f"could not resolve |{x} - {target}| within {MAX_DIGITS} digits")


def _series(spec: GCFSpec, target: str, n_max: int, name: str | None, digits: int):
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    constant(target, 1)  # fail fast on unknown names
    if name is None:
        name = spec.source.name if isinstance(spec.source, Family) else "custom"
    records = []
    used = digits
    for c in convergents(spec, n_max)[1:]:
        if c.q == 0:
            log.info("%s: convergent %d undefined (q = 0), skipped", name, c.index)
            continue
        err, d = log10_error(Fraction(c.p, c.q), target, digits)
        # later convergents are closer, so start them where the last one ended
        digits = used = max(used, d)
        records.append(ErrorRecord(name, c.index, c.p, c.q, err))
    return records, used


def error_series(
    spec: GCFSpec, target: str, n_max: int, *, name: str | None = None, start_digits: int = START_DIGITS
) -> list[ErrorRecord]:
    """log10 |r_n - target| for n = 1..n_max, skipping undefined convergents.

    Precision doubles from ``start_digits`` until the reference enclosure is a
    millionth of the error it measures, so each value is good to about 1e-6.
    """
    return _series(spec, target, n_max, name, start_digits)[0]


def compare_families(
    n_max: int, families: Iterable[str] = FIG_FAMILIES, start_digits: int = START_DIGITS
) -> ErrorTable:
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    families = tuple(families)
    records, used = [], start_digits
    for fam in families:
        recs, d = _series(GCFSpec.family(fam), "e", n_max, fam, start_digits)
        records.extend(recs)
        used = max(used, d)
    return ErrorTable(tuple(records), used, tuple(sorted(families)))


def ordering_violations(table: ErrorTable, n_min: int = 3) -> list[tuple[int, str, str]]:
    """Indices where a faster family (in FIG_FAMILIES order) fails to beat a slower one."""
    present = [f for f in reversed(FIG_FAMILIES) if f in table.families]
    series = {f: table.series(f) for f in present}
    bad = []
    for fast, slow in zip(present, present[1:]):
        for n in sorted(set(series[fast]) & set(series[slow])):
            if n >= n_min and not series[fast][n] < series[slow][n]:
                bad.append((n, fast, slow))
    return bad


def format_sig9(x: float) -> str:
    """Fixed-point rendering with 9 significant digits, ties to even on the exact binary value."""
    d = Decimal(x)
    if d == 0:
        return "0.00000000"
    for _ in range(2):
        q = d.quantize(Decimal(1).scaleb(d.adjusted() - 8), rounding=ROUND_HALF_EVEN)
        if q.adjusted() == d.adjusted():
            break
        d = q  # rounding carried into a new leading digit
    return format(q, "f")


def _write(data: bytes, destination: Destination) -> bytes:
    if destination is None:
        return data
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)
    return data


def emit_csv(table: ErrorTable, destination: Destination = None) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in table.records:
        w.writerow((r.family, r.n, r.p, r.q, format_sig9(r.log10_err)))
    return _write(buf.getvalue().encode("utf-8"), destination)


def parse_csv(data: bytes | str) -> ErrorTable:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    rows = list(csv.reader(io.StringIO(data)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError("missing or unexpected CSV header")
    recs = [ErrorRecord(f, int(n), int(p), int(q), float(e)) for f, n, p, q, e in rows[1:]]
    return ErrorTable(tuple(recs))


DASH = {"power-ratio": "8 4", "euler": "2 3"}
SVG_NS = "http://www.w3.org/2000/svg"


def _ticks(lo: float, hi: float, target: int = 8) -> list[int]:
    span = max(hi - lo, 1)
    step = 1
    for s in (1, 2, 5, 10, 20, 50, 100):
        step = s
        if span / s <= target:
            break
    first = -(-int(lo) // step) * step if lo > 0 else (int(lo) // step) * step
    return [t for t in range(first, int(hi) + step, step) if lo <= t <= hi]


def emit_svg(table: ErrorTable, destination: Destination = None) -> bytes:
    """Line plot of log10 error against n, one polyline per family."""
    if not table.records:
        raise EmptyTable("nothing to plot")
    width, height = 640, 420
    left, right, top, bottom = 70, 170, 20, 50
    ns = [r.n for r in table.records]
    ys = [r.log10_err for r in table.records]
    x0, x1 = min(ns), max(ns)
    y0, y1 = min(ys), max(ys)
    y0 = float(int(y0) - 1)
    y1 = float(int(y1) + 1) if y1 > 0 else 0.0
    if x1 == x0:
        x1 = x0 + 1

    def sx(n):
        return left + (n - x0) / (x1 - x0) * (width - left - right)

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * (height - top - bottom)

    svg = ET.Element("svg", xmlns=SVG_NS, width=str(width), height=str(height),
                     viewBox=f"0 0 {width} {height}")
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(height), fill="white")
    axes = ET.SubElement(svg, "g", stroke="black", attrib={"stroke-width": "1"})
    ET.SubElement(axes, "line", x1=str(left), y1=f"{sy(y0):.2f}", x2=f"{sx(x1):.2f}", y2=f"{sy(y0):.2f}")
    ET.SubElement(axes, "line", x1=str(left), y1=f"{sy(y0):.2f}", x2=str(left), y2=f"{sy(y1):.2f}")
    labels = ET.SubElement(svg, "g", attrib={"font-family": "sans-serif", "font-size": "12"})
    for t in _ticks(x0, x1):
        ET.SubElement(axes, "line", x1=f"{sx(t):.2f}", y1=f"{sy(y0):.2f}", x2=f"{sx(t):.2f}", y2=f"{sy(y0) + 4:.2f}")
        ET.SubElement(labels, "text", x=f"{sx(t):.2f}", y=f"{sy(y0) + 18:.2f}",
                      attrib={"text-anchor": "middle"}).text = str(t)
    for t in _ticks(y0, y1):
        ET.SubElement(axes, "line", x1=str(left - 4), y1=f"{sy(t):.2f}", x2=str(left), y2=f"{sy(t):.2f}")
        ET.SubElement(labels, "text", x=str(left - 8), y=f"{sy(t) + 4:.2f}",
                      attrib={"text-anchor": "end"}).text = str(t)
    ET.SubElement(labels, "text", x=f"{(left + sx(x1)) / 2:.2f}", y=str(height - 10),
                  attrib={"text-anchor": "middle"}).text = "n (truncation)"
    ET.SubElement(labels, "text", x="16", y=f"{(top + sy(y0)) / 2:.2f}",
                  transform=f"rotate(-90 16 {(top + sy(y0)) / 2:.2f})",
                  attrib={"text-anchor": "middle"}).text = "log10 |r_n - e|"

    for i, fam in enumerate(table.families):
        pts = sorted(table.series(fam).items())
        attrs = {"fill": "none", "stroke": "black", "stroke-width": "1.5", "data-family": fam}
        if fam in DASH:
            attrs["stroke-dasharray"] = DASH[fam]
        ET.SubElement(svg, "polyline", points=" ".join(f"{sx(n):.2f},{sy(y):.2f}" for n, y in pts), attrib=attrs)
        ly = top + 15 + 20 * i
        lx = width - right + 15
        key = {k: v for k, v in attrs.items() if k != "data-family"}
        ET.SubElement(svg, "line", x1=str(lx), y1=str(ly), x2=str(lx + 30), y2=str(ly), attrib=key)
        ET.SubElement(labels, "text", x=str(lx + 36), y=str(ly + 4)).text = fam
    data = ET.tostring(svg, encoding="utf-8", xml_declaration=True) + b"\n"
    return _write(data, destination)
