"""Curve classes on the boundary torus of a knot neighbourhood.

A :class:`TorusClass` is written in the (longitude, meridian) basis, so
``(1, 0)`` is the longitude and ``(0, 1)`` the meridian.  A
:class:`PeripheralClass` uses the (meridian, longitude) coefficients of a
curve ``m*eta + l*gamma`` with ``eta`` the meridian (linking the knot once)
and ``gamma`` the preferred longitude (linking it zero times).
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple

from .errors import NotALongitude


class TorusClass(NamedTuple):
    a: int  # longitude coefficient
    b: int  # meridian coefficient


class PeripheralClass(NamedTuple):
    meridian_coeff: int
    longitude_coeff: int

    def __str__(self):
        return f"{self.meridian_coeff}[eta] + {self.longitude_coeff}[gamma]"


def is_embeddable(t: TorusClass) -> bool:
    """True iff the class contains a simple closed curve."""
    a, b = t
    return gcd(a, b) == 1 or (a == 0 and b == 0)


def normalize(t: TorusClass) -> TorusClass:
    """Pick the representative of ``±t`` with a > 0, or a == 0 and b >= 0."""
    a, b = t
    if a < 0 or (a == 0 and b < 0):
        return TorusClass(-a, -b)
    return TorusClass(a, b)


def framing_to_longitude(n: int) -> PeripheralClass:
    return PeripheralClass(int(n), 1)


def longitude_to_framing(p: PeripheralClass) -> int:
    if p.longitude_coeff != 1:
        raise NotALongitude(
            f"{p} is not a longitude: the coefficient of [gamma] must be 1"
        )
    return p.meridian_coeff


def to_peripheral(t: TorusClass) -> PeripheralClass:
    """Change of basis: the longitude coefficient ``a`` becomes the [gamma] coefficient."""
    return PeripheralClass(t.b, t.a)


def to_torus_class(p: PeripheralClass) -> TorusClass:
    return TorusClass(p.longitude_coeff, p.meridian_coeff)
