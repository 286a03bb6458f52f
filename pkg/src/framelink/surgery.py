"""
Surgery descriptions on the 3-sphere.

Coefficients are :class:`fractions.Fraction` values or :data:`INF`, the
trivial filling that sends the new meridian back onto the old one.  Only
crossing-free single-unknot descriptions are identified by name; everything
else is reported as ``Unknown``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .diagram import LinkDiagram
from .errors import InvalidCoefficient, NonIntegerCoefficients, ZeroClass
from .invariants import FramedLink, _linking_table


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("framelink-inf")


INF = _Infinity()


def normalize_coefficient(p: int, q: int) -> tuple[int, int]:
    """Lowest terms with ``q >= 0``; ``(p, 0)`` collapses to ``(1, 0)``."""
    p, q = int(p), int(q)
    if p == 0 and q == 0:
        raise ZeroClass("(0, 0) is not a surgery slope")
    if q == 0:
        return (1, 0)
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return (p, q)


def coefficient(p: int, q: int = 1):
    p, q = normalize_coefficient(p, q)
    return INF if q == 0 else Fraction(p, q)


def parse_coefficient(text) -> Fraction | _Infinity:
    """Accept ``"p/q"``, ``"p"``, ``"inf"`` or a number."""
    if text is INF or isinstance(text, _Infinity):
        return INF
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip().replace("−", "-")
    if s.lower() in ("inf", "infinity", "∞", "1/0"):
        return INF
    try:
        if "/" in s:
            p, q = s.split("/", 1)
            return coefficient(int(p), int(q))
        return Fraction(int(s))
    except ValueError:
        raise InvalidCoefficient(f"cannot read surgery coefficient {text!r}") from None


def format_coefficient(c) -> str:
    if c == INF:
        return "inf"
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class SurgeryDescription:
    diagram: LinkDiagram
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(parse_coefficient(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.diagram.component_count:
            raise InvalidCoefficient(
                f"{len(coeffs)} coefficients for {self.diagram.component_count} components"
            )
        if len(coeffs) > 1 and INF in coeffs:
            raise InvalidCoefficient("inf is only supported on a single-component description")


@dataclass(frozen=True)
class RecognizedManifold:
    tag: str
    evidence: str = ""
    p: int | None = None
    q: int | None = None

    def __str__(self):
        return f"Lens({self.p},{self.q})" if self.tag == "Lens" else self.tag


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def order(self) -> int | None:
        """Order of the group, or None if infinite."""
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def from_framed_link(fl: FramedLink) -> SurgeryDescription:
    return SurgeryDescription(fl.diagram, tuple(Fraction(f) for f in fl.framings))


def recognize_unknot_surgery(s: SurgeryDescription) -> RecognizedManifold:
    d = s.diagram
    if d.component_count != 1 or d.crossing_count:
        return RecognizedManifold(
            "Unknown",
            "NotAnUnknotDescription: recognition needs a single crossing-free unknot",
        )
    c = s.coefficients[0]
    if c == INF:
        return RecognizedManifold("S3", "trivial filling: meridian glued to meridian")
    p, q = c.numerator, c.denominator
    if p == 0:
        return RecognizedManifold("S2xS1", "0-surgery on the unknot")
    if abs(p) == 1:
        return RecognizedManifold("S3", f"{format_coefficient(c)}-surgery on the unknot")
    n = abs(p)
    return RecognizedManifold(
        "Lens", f"{format_coefficient(c)}-surgery on the unknot", n, q % n
    )


def smith_normal_form(matrix) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix (divisibility chain)."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute entry in the remaining block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = True
        p = a[t][t]
        for i in range(t + 1, rows):
            f = a[i][t] // p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
            if a[i][t]:
                done = False
        for j in range(t + 1, cols):
            f = a[t][j] // p
            if f:
                for row in a:
                    row[j] -= f * row[t]
            if a[t][j]:
                done = False
        if not done:
            continue
        # pivot must divide the rest of the block
        bad = next(
            ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
            None,
        )
        if bad:
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
            continue
        diag.append(abs(p))
        t += 1
    return diag + [0] * (min(rows, cols) - len(diag))


def surgery_matrix(s: SurgeryDescription) -> list[list[int]]:
    if any(c == INF or c.denominator != 1 for c in s.coefficients):
        raise NonIntegerCoefficients("first homology needs integral coefficients")
    m = _linking_table(s.diagram)
    for i, c in enumerate(s.coefficients):
        m[i][i] = c.numerator
    return m


def first_homology(s: SurgeryDescription) -> HomologyGroup:
    """H_1 of the surgered manifold, presented by the linking matrix."""
    m = surgery_matrix(s)
    diag = smith_normal_form(m)
    return HomologyGroup(
        rank=sum(1 for x in diag if x == 0),
        torsion=tuple(x for x in diag if x > 1),
    )
