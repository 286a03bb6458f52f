"""
Polygonal space curves: projection to diagrams, the Gauss linking integral,
and twist counting for normal fields.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .diagram import Crossing, LinkDiagram, _assemble
from .errors import (
    CurvesTooClose,
    DegenerateAfterRetries,
    InvalidCurve,
    NonIntegerResult,
    OffsetTooLarge,
    TangentField,
    UndersampledField,
)

MAX_ATTEMPTS = 64
REL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpaceCurve:
    """Closed polygon; the last vertex connects back to the first."""

    vertices: np.ndarray
    normals: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3 or len(v) < 3:
            raise InvalidCurve("a curve needs at least 3 vertices in 3-space")
        seg = np.roll(v, -1, axis=0) - v
        if np.any(np.linalg.norm(seg, axis=1) == 0):
            raise InvalidCurve("consecutive vertices coincide")
        object.__setattr__(self, "vertices", v)
        if self.normals is not None:
            n = np.asarray(self.normals, dtype=float)
            if n.shape != v.shape:
                raise InvalidCurve("need exactly one normal per vertex")
            object.__setattr__(self, "normals", n)
            self.unit_normals()

    def __len__(self):
        return len(self.vertices)

    def segments(self):
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def tangents(self) -> np.ndarray:
        """Unit tangents at vertices (central differences)."""
        v = self.vertices
        t = np.roll(v, -1, axis=0) - np.roll(v, 1, axis=0)
        return t / np.linalg.norm(t, axis=1)[:, None]

    def unit_normals(self, field=None) -> np.ndarray:
        """``field`` (default: own normals) projected off the tangent and normalized."""
        n = self.normals if field is None else np.asarray(field, dtype=float)
        if n is None:
            raise InvalidCurve("curve has no normal field")
        t = self.tangents()
        perp = n - np.sum(n * t, axis=1)[:, None] * t
        size = np.linalg.norm(perp, axis=1)
        scale = np.linalg.norm(n, axis=1)
        if np.any(size <= 1e-9 * np.maximum(scale, 1e-300)):
            raise TangentField("normal field is tangent to the curve (or zero) somewhere")
        return perp / size[:, None]

    def reversed(self) -> SpaceCurve:
        n = None if self.normals is None else self.normals[::-1]
        return SpaceCurve(self.vertices[::-1], n)

    def scale(self) -> float:
        v = self.vertices
        return float(np.max(np.ptp(v, axis=0))) or 1.0


# -------------------------------------------------------------- projection


def _seed() -> int:
    return int(os.environ.get("FRAMELINK_SEED", "0"))


def _basis(v):
    v = v / np.linalg.norm(v)
    helper = np.array([1.0, 0.0, 0.0]) if abs(v[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, v)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v, e1)
    return v, e1, e2


class _Degenerate(Exception):
    pass


def _crossings_2d(curves, v, tol):
    """All transverse double points of the projection along ``v``.

    Returns tuples (curve_i, seg_i, t_i, curve_j, seg_j, t_j, sign, i_over).
    """
    v, e1, e2 = _basis(v)
    flat = [(c.vertices @ e1, c.vertices @ e2, c.vertices @ v) for c in curves]
    found = []
    for i, ci in enumerate(curves):
        for j in range(i, len(curves)):
            xi, yi, zi = flat[i]
            xj, yj, zj = flat[j]
            p = np.stack([xi, yi], axis=1)
            r = np.roll(p, -1, axis=0) - p
            q = np.stack([xj, yj], axis=1)
            s = np.roll(q, -1, axis=0) - q
            qp = q[None, :, :] - p[:, None, :]
            denom = r[:, None, 0] * s[None, :, 1] - r[:, None, 1] * s[None, :, 0]
            t = (qp[..., 0] * s[None, :, 1] - qp[..., 1] * s[None, :, 0])
            u = (qp[..., 0] * r[:, None, 1] - qp[..., 1] * r[:, None, 0])
            n_i, n_j = len(p), len(q)
            mask = np.ones((n_i, n_j), dtype=bool)
            if i == j:
                idx = np.arange(n_i)
                mask &= idx[:, None] < idx[None, :]
                mask[idx, (idx + 1) % n_i] = False
                mask[(idx + 1) % n_i, idx] = False
            rn = np.linalg.norm(r, axis=1)[:, None]
            sn = np.linalg.norm(s, axis=1)[None, :]
            parallel = np.abs(denom) <= REL_TOL * rn * sn
            with np.errstate(divide="ignore", invalid="ignore"):
                tt = t / denom
                uu = u / denom
            # near-parallel segments that overlap in the plane are degenerate
            if np.any(parallel & mask):
                for a, b in zip(*np.nonzero(parallel & mask)):
                    off = abs(qp[a, b, 0] * r[a, 1] - qp[a, b, 1] * r[a, 0]) / rn[a, 0]
                    if off <= tol:
                        raise _Degenerate("collinear segments")
            good = mask & ~parallel
            eps = REL_TOL * 10
            near_end = good & (
                (np.abs(tt) < eps) | (np.abs(tt - 1) < eps) | (np.abs(uu) < eps) | (np.abs(uu - 1) < eps)
            )
            hit = good & (tt > 0) & (tt < 1) & (uu > 0) & (uu < 1)
            if np.any(near_end & ((tt > -eps) & (tt < 1 + eps) & (uu > -eps) & (uu < 1 + eps))):
                raise _Degenerate("projection passes through a vertex")
            for a, b in zip(*np.nonzero(hit)):
                ta, ub = tt[a, b], uu[a, b]
                za = zi[a] + ta * (zi[(a + 1) % n_i] - zi[a])
                zb = zj[b] + ub * (zj[(b + 1) % n_j] - zj[b])
                if abs(za - zb) <= tol:
                    raise _Degenerate("curves meet (or nearly) in space")
                da = r[a]
                db = s[b]
                a_over = za > zb
                over, under = (da, db) if a_over else (db, da)
                sign = 1 if over[0] * under[1] - over[1] * under[0] > 0 else -1
                pt = p[a] + ta * r[a]
                found.append((i, int(a), float(ta), j, int(b), float(ub), sign, a_over, pt))
    pts = np.array([f[8] for f in found]).reshape(-1, 2)
    if len(pts) > 1:
        dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)
        np.fill_diagonal(dist, np.inf)
        if dist.min() <= tol:
            raise _Degenerate("triple point")
    return [f[:8] for f in found]


def _diagram_from_crossings(curves, found) -> tuple[LinkDiagram, list[int]]:
    visits = [[] for _ in curves]  # per curve: (seg, t, crossing, is_over)
    for k, (i, a, ta, j, b, ub, sign, a_over) in enumerate(found):
        visits[i].append((a, ta, k, a_over))
        visits[j].append((b, ub, k, not a_over))
    strands = [dict() for _ in found]
    base = 1
    loops = 0
    for vis in visits:
        if not vis:
            loops += 1
            continue
        vis.sort()
        m = len(vis)
        for idx, (_, _, k, is_over) in enumerate(vis):
            strands[k]["O" if is_over else "U"] = (base + idx, base + (idx + 1) % m)
        base += m
    crossings = [
        Crossing.from_strands(*strands[k]["U"], *strands[k]["O"], f[6]) for k, f in enumerate(found)
    ]
    d, relabel = _assemble(crossings, loops)
    cmap = []
    first = 1
    loop_index = len(d.arc_components)
    for vis in visits:
        if vis:
            cmap.append(d.component_of(relabel[first]))
            first += len(vis)
        else:
            cmap.append(loop_index)
            loop_index += 1
    return d, cmap


def _directions(direction):
    base = np.array([0.0, 0.0, 1.0]) if direction is None else np.asarray(direction, dtype=float)
    if np.linalg.norm(base) == 0:
        raise InvalidCurve("projection direction must be nonzero")
    yield base / np.linalg.norm(base)
    rng = np.random.default_rng(_seed())
    for _ in range(MAX_ATTEMPTS - 1):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.01, 0.5)
        # Rodrigues rotation of the base direction
        k = axis
        v = base / np.linalg.norm(base)
        yield v * np.cos(angle) + np.cross(k, v) * np.sin(angle) + k * np.dot(k, v) * (1 - np.cos(angle))


def project_to_diagram(curves, direction=None) -> LinkDiagram:
    return project_to_diagram_tracked(curves, direction)[0]


def project_to_diagram_tracked(curves, direction=None) -> tuple[LinkDiagram, list[int]]:
    """Diagram of the projection seen from the tip of ``direction``.

    Points with larger coordinate along ``direction`` pass over.  If the
    projection is not generic, deterministic random rotations (seeded by
    ``FRAMELINK_SEED``) are tried.  Also returns the component index of
    each input curve.
    """
    curves = [c if isinstance(c, SpaceCurve) else SpaceCurve(c) for c in curves]
    if not curves:
        return LinkDiagram(), []
    scale = max(c.scale() for c in curves)
    tol = REL_TOL * scale
    reason = ""
    for v in _directions(direction):
        try:
            found = _crossings_2d(curves, v, tol)
        except _Degenerate as exc:
            reason = str(exc)
            continue
        return _diagram_from_crossings(curves, found)
    raise DegenerateAfterRetries(f"no generic projection in {MAX_ATTEMPTS} attempts ({reason})")


# ---------------------------------------------------------- Gauss integral


def segment_distances(c1: SpaceCurve, c2: SpaceCurve) -> np.ndarray:
    """Matrix of minimal distances between segments of two polygons."""
    p1, p2 = c1.segments()
    q1, q2 = c2.segments()
    d1 = (p2 - p1)[:, None, :]
    d2 = (q2 - q1)[None, :, :]
    r = p1[:, None, :] - q1[None, :, :]
    a = np.sum(d1 * d1, axis=2)
    e = np.sum(d2 * d2, axis=2)
    b = np.sum(d1 * d2, axis=2)
    c = np.sum(d1 * r, axis=2)
    f = np.sum(d2 * r, axis=2)
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-15 * a * e, (b * f - c * e) / denom, 0.0)
    s = np.clip(s, 0.0, 1.0)
    t = (b * s + f) / e
    t_clipped = np.clip(t, 0.0, 1.0)
    s = np.where(t != t_clipped, np.clip((b * t_clipped - c) / a, 0.0, 1.0), s)
    t = t_clipped
    diff = r + s[..., None] * d1 - t[..., None] * d2
    return np.linalg.norm(diff, axis=2)


def gauss_linking_value(c1: SpaceCurve, c2: SpaceCurve) -> float:
    """Exact Gauss double integral for two closed polygons (signed solid angles)."""
    p1, p2 = c1.segments()
    p3, p4 = c2.segments()
    a1, a2 = p1[:, None, :], p2[:, None, :]
    b1, b2 = p3[None, :, :], p4[None, :, :]
    r13, r14 = b1 - a1, b2 - a1
    r23, r24 = b1 - a2, b2 - a2

    def unit(x):
        n = np.linalg.norm(x, axis=2, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.nan_to_num(x / n)

    n1 = unit(np.cross(r13, r14))
    n2 = unit(np.cross(r14, r24))
    n3 = unit(np.cross(r24, r23))
    n4 = unit(np.cross(r23, r13))

    def asin_dot(x, y):
        return np.arcsin(np.clip(np.sum(x * y, axis=2), -1.0, 1.0))

    omega = asin_dot(n1, n2) + asin_dot(n2, n3) + asin_dot(n3, n4) + asin_dot(n4, n1)
    orient = np.sign(np.sum(np.cross(b2 - b1, a2 - a1) * r13, axis=2))
    total = np.nan_to_num(omega * orient)
    # fixed-order reduction keeps results bit-stable
    return float(np.sum(np.sum(total, axis=1))) / (4 * np.pi)


def gauss_linking(c1: SpaceCurve, c2: SpaceCurve, min_distance: float | None = None) -> int:
    if min_distance is None:
        min_distance = 1e-6 * max(c1.scale(), c2.scale())
    gap = float(segment_distances(c1, c2).min())
    if gap <= min_distance:
        raise CurvesTooClose(f"curves come within {gap:.3g} of each other")
    value = gauss_linking_value(c1, c2)
    n = round(value)
    if abs(value - n) > 0.1:
        raise NonIntegerResult(f"Gauss integral {value:.4f} is not near an integer")
    return int(n)


# ----------------------------------------------------------------- twisting


@dataclass(frozen=True, eq=False)
class FramePair:
    curve: SpaceCurve
    reference: np.ndarray
    candidate: np.ndarray


def relative_twist(fp: FramePair) -> int:
    """Full turns of the candidate field around the reference field.

    Angles are measured in the normal plane with the right-handed basis
    (tangent K, reference V, N = K x V).  The count is positive when the
    candidate turns from V towards N as the curve is traversed, which is the
    sign that makes it equal the linking number of the curve with its
    pushoff along the candidate field, relative to the reference.
    """
    c = fp.curve
    k = c.tangents()
    v = c.unit_normals(fp.reference)
    w = c.unit_normals(fp.candidate)
    n = np.cross(k, v)
    theta = np.arctan2(np.sum(w * n, axis=1), np.sum(w * v, axis=1))
    step = np.roll(theta, -1) - theta
    step = (step + np.pi) % (2 * np.pi) - np.pi
    if np.any(np.abs(step) > 0.9 * np.pi):
        raise UndersampledField("field turns by nearly half a turn between samples")
    turns = float(np.sum(step)) / (2 * np.pi)
    m = round(turns)
    if abs(turns - m) > 1e-6:
        raise UndersampledField(f"winding {turns:.6f} is not an integer")
    return int(m)


def pushoff_curve(c: SpaceCurve, offset: float) -> SpaceCurve:
    if offset <= 0:
        raise OffsetTooLarge("offset must be positive")
    n = c.unit_normals()
    try:
        out = SpaceCurve(c.vertices + offset * n, n)
    except (InvalidCurve, TangentField):
        raise OffsetTooLarge(f"offset {offset} collapses the pushoff") from None
    gap = float(segment_distances(c, out).min())
    if gap < 0.1 * offset:
        raise OffsetTooLarge(f"pushoff comes within {gap:.3g} of the curve")
    return out


# -------------------------------------------------------------------- files


def read_curves(text: str) -> list[SpaceCurve]:
    """CSV blocks ``x,y,z[,nx,ny,nz]`` separated by blank lines."""
    blocks, cur = [], []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        try:
            row = [float(x) for x in line.split(",")]
        except ValueError:
            raise InvalidCurve(f"line {ln}: expected comma-separated numbers") from None
        if len(row) not in (3, 6):
            raise InvalidCurve(f"line {ln}: expected 3 or 6 values, got {len(row)}")
        cur.append(row)
    if cur:
        blocks.append(cur)
    curves = []
    for b in blocks:
        widths = {len(r) for r in b}
        if len(widths) != 1:
            raise InvalidCurve("mixed rows with and without normals in one curve")
        arr = np.array(b)
        curves.append(SpaceCurve(arr[:, :3], arr[:, 3:] if arr.shape[1] == 6 else None))
    return curves
