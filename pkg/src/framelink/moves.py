"""
Reidemeister moves, the framed first move, and their inverses.

A :class:`MoveSite` names a move by kind and anchor.  Anchors are written in
the labels of the diagram the site was enumerated on, so a site is only
meaningful for that diagram; applying it elsewhere raises :class:`StaleSite`
unless the same site happens to exist there too.

Anchor layouts::

    R1_add, FR1_add   (arc,)                arc <= 0 means unknotted loop -arc-1
    R1_remove         (crossing,)
    FR1_remove        (crossing, crossing)
    R2_add            (over_arc, over_side, under_arc, under_side)
    R2_remove         (crossing, crossing, bigon_arc)
    R3                (crossing, crossing, crossing, min_triangle_arc)

Sides are 0 when the chosen face lies left of the oriented arc and 1 when it
lies right.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .codecs import parse_pd, serialize_pd
from .diagram import Crossing, LinkDiagram, _Work, canonical_form, faces
from .errors import StaleSite
from .invariants import FramedLink, linking_matrix, total_writhe

KINDS = ("R1_add", "R1_remove", "R2_add", "R2_remove", "R3", "FR1_add", "FR1_remove")
HANDS = ("left", "right")
_INVERSE = {
    "R1_add": "R1_remove",
    "R1_remove": "R1_add",
    "R2_add": "R2_remove",
    "R2_remove": "R2_add",
    "R3": "R3",
    "FR1_add": "FR1_remove",
    "FR1_remove": "FR1_add",
}


@dataclass(frozen=True, order=True)
class MoveSite:
    kind: str
    anchor: tuple[int, ...]
    handedness: str | None = None

    def to_dict(self):
        out = {"kind": self.kind, "anchor": list(self.anchor)}
        if self.handedness is not None:
            out["handedness"] = self.handedness
        return out

    @classmethod
    def from_dict(cls, obj):
        return cls(obj["kind"], tuple(int(a) for a in obj["anchor"]), obj.get("handedness"))

    @property
    def changes_framing(self) -> bool:
        return self.kind in ("R1_add", "R1_remove")

    def __str__(self):
        h = f" {self.handedness}" if self.handedness else ""
        return f"{self.kind}{list(self.anchor)}{h}"


def inverse_kind(kind: str) -> str:
    return _INVERSE[kind]


def _hand_sign(h: str) -> int:
    return 1 if h == "right" else -1


# ---------------------------------------------------------------- enumeration


def _kinks(d: LinkDiagram):
    """Crossings with a one-edge loop: {k: (loop_label, other_slots)}."""
    out = {}
    for k, q in enumerate(d.pd):
        for i in range(4):
            if q[i] == q[(i + 1) % 4]:
                out[k] = (q[i], ((i + 2) % 4, (i + 3) % 4))
                break
    return out


def _r1_add(d):
    anchors = [(-(i + 1),) for i in range(d.unknotted_loops)] + [(a,) for a in d.arcs]
    return anchors


def _r1_remove(d):
    return [(k,) for k in sorted(_kinks(d))]


def _fr1_remove(d):
    kinks = _kinks(d)
    out = []
    ks = sorted(kinks)
    for i, k1 in enumerate(ks):
        l1, slots1 = kinks[k1]
        outer1 = {d.pd[k1][s] for s in slots1} - {l1}
        for k2 in ks[i + 1:]:
            if d.crossings[k1].sign == d.crossings[k2].sign:
                continue
            l2, slots2 = kinks[k2]
            outer2 = {d.pd[k2][s] for s in slots2} - {l2}
            if outer1 & outer2:
                out.append((k1, k2))
    return out


def _r2_add(d):
    out = set()
    for face in faces(d):
        sides = {(e.label, e.side) for e in face}
        for x, sx in sides:
            for y, sy in sides:
                if x != y:
                    out.add((x, sx, y, sy))
    return sorted(out)


def _r2_remove(d):
    out = []
    for face in faces(d):
        if len(face) != 2:
            continue
        e1, e2 = face
        k1, s1 = e1.start
        k2, t1 = e1.end
        if k1 == k2:
            continue
        if s1 % 2 != t1 % 2:
            continue
        if d.crossings[k1].sign == d.crossings[k2].sign:
            continue
        a, b = sorted((k1, k2))
        out.append((a, b, min(e1.label, e2.label)))
    return sorted(set(out))


def _r3(d):
    out = set()
    for face in faces(d):
        if len(face) != 3:
            continue
        ks = {e.start[0] for e in face}
        if len(ks) != 3:
            continue
        if not any(e.start[1] % 2 == e.end[1] % 2 for e in face):
            continue
        out.add((*sorted(ks), min(e.label for e in face)))
    return sorted(out)


def enumerate_moves(d: LinkDiagram, kinds=None) -> list[MoveSite]:
    """Every applicable site of the requested kinds, in a deterministic order."""
    kinds = KINDS if kinds is None else tuple(kinds)
    sites = []
    for kind in kinds:
        if kind == "R1_add":
            sites += [MoveSite(kind, a, h) for a in _r1_add(d) for h in HANDS]
        elif kind == "FR1_add":
            sites += [MoveSite(kind, a, h) for a in _r1_add(d) for h in HANDS]
        elif kind == "R1_remove":
            sites += [MoveSite(kind, a) for a in _r1_remove(d)]
        elif kind == "FR1_remove":
            sites += [MoveSite(kind, a) for a in _fr1_remove(d)]
        elif kind == "R2_add":
            sites += [MoveSite(kind, a) for a in _r2_add(d)]
        elif kind == "R2_remove":
            sites += [MoveSite(kind, a) for a in _r2_remove(d)]
        elif kind == "R3":
            sites += [MoveSite(kind, a) for a in _r3(d)]
        else:
            raise ValueError(f"unknown move kind {kind!r}")
    return sorted(sites, key=lambda m: (m.anchor, KINDS.index(m.kind), m.handedness or ""))


# -------------------------------------------------------------- application


def _ends_to_record(ends):
    """ccw list of (label, is_over, is_in) -> [ui, uo, oi, oo, sign]."""
    i = next(j for j, (_, over, inc) in enumerate(ends) if not over and inc)
    rot = ends[i:] + ends[:i]
    ui, uo = rot[0][0], rot[2][0]
    if rot[3][2]:
        return [ui, uo, rot[3][0], rot[1][0], 1]
    return [ui, uo, rot[1][0], rot[3][0], -1]


def _kink_on(w: _Work, anchor: int, sign: int) -> int:
    if anchor <= 0:
        x = w.loop_to_arc(-anchor - 1)
        w.add_kink(x, sign, closing=x)
        return x
    return w.add_kink(anchor, sign)


def _apply_r2_add(w: _Work, x, sx, y, sy):
    x1, x2, y1, y2 = (w.fresh() for _ in range(4))
    w.retarget_head(x, x2)
    w.retarget_head(y, y2)
    O, U, IN, OUT = True, False, True, False
    if sx != sy:
        p = [(y, U, IN), (x, O, IN), (y1, U, OUT), (x1, O, OUT)]
        q = [(y1, U, IN), (x2, O, OUT), (y2, U, OUT), (x1, O, IN)]
    else:
        p = [(y2, U, OUT), (x, O, IN), (y1, U, IN), (x1, O, OUT)]
        q = [(y1, U, OUT), (x2, O, OUT), (y, U, IN), (x1, O, IN)]
    if sx == 1:
        p, q = p[::-1], q[::-1]
    w.recs.append(_ends_to_record(p))
    w.recs.append(_ends_to_record(q))


def _apply_r3(d: LinkDiagram, w: _Work, anchor):
    ks = set(anchor[:3])
    face = next(
        f for f in faces(d)
        if len(f) == 3 and {e.start[0] for e in f} == ks and min(e.label for e in f) == anchor[3]
    )
    quads = {k: list(d.pd[k]) for k in ks}
    for e in face:
        (k, s), (k2, t) = e.start, e.end
        quads[k][s] = d.pd[k2][(t + 2) % 4]
        quads[k2][t] = d.pd[k][(s + 2) % 4]
        quads[k][(s + 2) % 4] = e.label
        quads[k2][(t + 2) % 4] = e.label
    for k in ks:
        c = Crossing(tuple(quads[k]), d.crossings[k].sign)
        w.recs[k] = [*c.strands(), c.sign]


def _apply(d: LinkDiagram, m: MoveSite) -> tuple[LinkDiagram, list[int]]:
    w = _Work(d)
    a = m.anchor
    if m.kind == "R1_add":
        _kink_on(w, a[0], _hand_sign(m.handedness))
    elif m.kind == "FR1_add":
        s = _hand_sign(m.handedness)
        y = _kink_on(w, a[0], s)
        w.add_kink(y, -s)
    elif m.kind == "R1_remove":
        w.remove([a[0]])
    elif m.kind == "FR1_remove":
        w.remove([a[0], a[1]])
    elif m.kind == "R2_add":
        _apply_r2_add(w, *a)
    elif m.kind == "R2_remove":
        w.remove([a[0], a[1]])
    elif m.kind == "R3":
        _apply_r3(d, w, a)
    else:
        raise ValueError(f"unknown move kind {m.kind!r}")
    return w.finish()


def apply_move_tracked(d: LinkDiagram, m: MoveSite) -> tuple[LinkDiagram, list[int]]:
    """Apply ``m`` and also return where each old component went."""
    if m.kind not in KINDS or m not in enumerate_moves(d, [m.kind]):
        raise StaleSite(f"{m} is not a valid site of this diagram")
    return _apply(d, m)


def apply_move(d: LinkDiagram, m: MoveSite) -> LinkDiagram:
    return apply_move_tracked(d, m)[0]


# ------------------------------------------------------------------ search

SEARCH_KINDS = ("R2_add", "R2_remove", "R3", "FR1_add", "FR1_remove")
DEFAULT_DEPTH = 12
DEFAULT_EXTRA_CROSSINGS = 4
DEFAULT_NODE_LIMIT = 20000


@dataclass(frozen=True)
class PathStep:
    """One move along an equivalence path.

    ``forward`` steps apply ``site`` to ``before`` and give ``after``;
    backward steps apply it to ``after`` and give ``before``.  Both diagrams
    are canonical PD text, and sites use their labels.
    """

    site: MoveSite
    forward: bool
    before: str
    after: str

    def to_dict(self):
        return {
            **self.site.to_dict(),
            "direction": "forward" if self.forward else "reverse",
            "before": self.before,
            "after": self.after,
        }


@dataclass(frozen=True)
class SearchResult:
    equivalent: bool
    path: tuple[PathStep, ...] = ()
    reason: str = ""
    stats: dict | None = None

    def to_dict(self):
        out = {"equivalent": self.equivalent, "reason": self.reason}
        if self.equivalent:
            out["path"] = [s.to_dict() for s in self.path]
        out["stats"] = dict(self.stats or {})
        return out


def _obstruction(d1: LinkDiagram, d2: LinkDiagram) -> str | None:
    if d1.component_count != d2.component_count:
        return "component count obstruction"
    if total_writhe(d1) != total_writhe(d2):
        return "writhe obstruction"
    m1 = linking_matrix(FramedLink.blackboard(d1))
    m2 = linking_matrix(FramedLink.blackboard(d2))
    n = len(m1)
    if n > 7:
        return None
    for perm in permutations(range(n)):
        if all(m1[i][j] == m2[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            return None
    if sorted(m1[i][i] for i in range(n)) != sorted(m2[i][i] for i in range(n)):
        return "writhe obstruction"
    return "linking matrix obstruction"


def _expand(d: LinkDiagram, max_crossings: int):
    out = []
    n = d.crossing_count
    for m in enumerate_moves(d, SEARCH_KINDS):
        if m.kind.endswith("_add") and n + 2 > max_crossings:
            continue
        child = canonical_form(_apply(d, m)[0])[0]
        out.append((m, child))
    return out


def framed_equivalent(
    d1: LinkDiagram,
    d2: LinkDiagram,
    max_crossings: int | None = None,
    max_depth: int = DEFAULT_DEPTH,
    node_limit: int = DEFAULT_NODE_LIMIT,
    threads: int = 1,
) -> SearchResult:
    """Look for a sequence of framed moves (FR1, R2, R3) from ``d1`` to ``d2``.

    Both sides grow breadth-first, always extending the smaller frontier and
    visiting diagrams with fewer crossings first.  Diagrams are identified by
    their canonical form.  A negative answer only means nothing was found
    within the budget.
    """
    reason = _obstruction(d1, d2)
    if reason:
        return SearchResult(False, (), reason, {"nodes": 0, "depth": 0})
    if max_crossings is None:
        max_crossings = max(d1.crossing_count, d2.crossing_count) + DEFAULT_EXTRA_CROSSINGS
    c1 = canonical_form(d1)[0]
    c2 = canonical_form(d2)[0]
    k1, k2 = str(c1), str(c2)
    if k1 == k2:
        return SearchResult(True, (), "identical canonical forms", {"nodes": 1, "depth": 0})

    # parents[side][key] = (parent_key, site) with site applied to the parent
    parents = ({k1: None}, {k2: None})
    diagrams = {k1: c1, k2: c2}
    frontier = ([c1], [c2])
    depth = [0, 0]
    nodes = 2
    pool = None
    if threads > 1:
        pool = ThreadPoolExecutor(max_workers=threads)
    try:
        while depth[0] + depth[1] < max_depth and frontier[0] and frontier[1]:
            side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
            other = 1 - side
            layer = sorted(frontier[side], key=lambda d: (d.crossing_count, str(d)))
            if pool is None:
                results = [_expand(d, max_crossings) for d in layer]
            else:
                results = list(pool.map(lambda d: _expand(d, max_crossings), layer))
            nxt = []
            meet = None
            for parent, children in zip(layer, results):
                pkey = str(parent)
                for site, child in children:
                    key = str(child)
                    if key in parents[side]:
                        continue
                    parents[side][key] = (pkey, site)
                    diagrams[key] = child
                    nodes += 1
                    nxt.append(child)
                    if key in parents[other] and meet is None:
                        meet = key
                if meet is not None:
                    break
            depth[side] += 1
            frontier = (nxt, frontier[1]) if side == 0 else (frontier[0], nxt)
            stats = {"nodes": nodes, "depth": depth[0] + depth[1]}
            if meet is not None:
                path = _path(parents, diagrams, meet)
                return SearchResult(True, path, "path found", stats)
            if nodes >= node_limit:
                return SearchResult(False, (), "node budget exhausted", stats)
        stats = {"nodes": nodes, "depth": depth[0] + depth[1]}
        why = "depth budget exhausted" if frontier[0] and frontier[1] else "search space exhausted"
        return SearchResult(False, (), why, stats)
    finally:
        if pool is not None:
            pool.shutdown()


def _path(parents, diagrams, meet):
    steps = []
    key = meet
    while parents[0][key] is not None:
        pkey, site = parents[0][key]
        steps.append(PathStep(site, True, pkey, key))
        key = pkey
    steps.reverse()
    key = meet
    while parents[1][key] is not None:
        pkey, site = parents[1][key]
        steps.append(PathStep(site, False, key, pkey))
        key = pkey
    return tuple(steps)


def replay_path(d1: LinkDiagram, result: SearchResult) -> bool:
    """Check that every step of ``result`` is a real move between its endpoints."""
    cur = serialize_pd(d1)
    for step in result.path:
        if step.before != cur:
            return False
        if step.forward:
            src, dst = step.before, step.after
        else:
            src, dst = step.after, step.before
        if serialize_pd(apply_move(parse_pd(src), step.site)) != dst:
            return False
        cur = step.after
    return True
