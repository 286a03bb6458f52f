"""Crossing signs, writhe, linking numbers and framed links."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Crossing, LinkDiagram, _assemble, _Work
from .errors import FramingCountError, IndexOutOfRange, SameComponent


def crossing_sign(d: LinkDiagram, k: int) -> int:
    if not 0 <= k < d.crossing_count:
        raise IndexOutOfRange(f"crossing {k} out of range")
    return d.crossings[k].sign


def writhe(d: LinkDiagram, c: int) -> int:
    """Sum of signs over self-crossings of component ``c``."""
    d.check_component(c)
    total = 0
    for k in range(d.crossing_count):
        cu, co = d.crossing_components(k)
        if cu == co == c:
            total += d.crossings[k].sign
    return total


def total_writhe(d: LinkDiagram) -> int:
    return sum(c.sign for c in d.crossings)


def linking_number(d: LinkDiagram, c1: int, c2: int) -> int:
    d.check_component(c1)
    d.check_component(c2)
    if c1 == c2:
        raise SameComponent("linking number needs two distinct components")
    s = 0
    for k in range(d.crossing_count):
        if set(d.crossing_components(k)) == {c1, c2}:
            s += d.crossings[k].sign
    if s % 2:
        raise ValueError("odd inter-component crossing sum; diagram is not planar")
    return s // 2


def _linking_table(d: LinkDiagram):
    n = d.component_count
    table = [[0] * n for _ in range(n)]
    for k, c in enumerate(d.crossings):
        a, b = d.crossing_components(k)
        if a != b:
            table[a][b] += c.sign
            table[b][a] += c.sign
    return [[v // 2 for v in row] for row in table]


@dataclass(frozen=True)
class FramedLink:
    """A diagram with one integer framing per component."""

    diagram: LinkDiagram
    framings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        if len(self.framings) != self.diagram.component_count:
            raise FramingCountError(
                f"{len(self.framings)} framings for {self.diagram.component_count} components"
            )

    @classmethod
    def blackboard(cls, d: LinkDiagram) -> FramedLink:
        return cls(d, tuple(writhe(d, c) for c in range(d.component_count)))

    def excess(self) -> tuple[int, ...]:
        """Framing minus writhe, per component."""
        d = self.diagram
        return tuple(f - writhe(d, c) for c, f in enumerate(self.framings))


def blackboard_framing(d: LinkDiagram) -> FramedLink:
    """Framing each component by its own writhe."""
    return FramedLink.blackboard(d)


def linking_matrix(fl: FramedLink) -> list[list[int]]:
    """Symmetric matrix: framings on the diagonal, linking numbers elsewhere."""
    m = _linking_table(fl.diagram)
    for i, f in enumerate(fl.framings):
        m[i][i] = f
    return m


def realize_framing(fl: FramedLink) -> LinkDiagram:
    """Add kinks until every component's writhe equals its framing.

    Component order and indices are preserved.
    """
    return realize_framing_tracked(fl)[0]


def realize_framing_tracked(fl: FramedLink) -> tuple[LinkDiagram, list[int]]:
    d = fl.diagram
    w = _Work(d)
    ncross = len(d.arc_components)
    for c, delta in enumerate(fl.excess()):
        if delta == 0:
            continue
        s = 1 if delta > 0 else -1
        if c >= ncross:
            x = w.loop_to_arc(w.loops.index(c))
            w.add_kink(x, s, closing=x)
            delta -= s
        else:
            x = w.tag_label[c]
        for _ in range(abs(delta)):
            w.add_kink(x, s)
    return w.finish()


def pushoff_tracked(d: LinkDiagram, c: int) -> tuple[LinkDiagram, int, int]:
    """Blackboard parallel copy of component ``c`` drawn on its left.

    Returns the doubled diagram, the new index of ``c`` and the index of the
    copy.  Every crossing met by ``c`` becomes a small grid of crossings of
    the same sign.
    """
    d.check_component(c)
    ncross = len(d.arc_components)
    if c >= ncross:
        out = LinkDiagram(d.pd, d.unknotted_loops + 1)
        out.__dict__["_info"] = d._info
        return out, c, out.component_count - 1
    comp = set(d.arc_components[c])
    nxt = d.max_label() + 1
    copy = {}
    for a in sorted(comp):
        copy[a] = nxt
        nxt += 1

    def fresh():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    out = []
    for x in d.crossings:
        q = x.arcs
        u_in = q[0] in comp
        o_in = q[1] in comp
        if not (u_in or o_in):
            out.append(x)
            continue
        # vertical lines run south -> north, listed west -> east
        verts = [(q[0], q[2])]
        if u_in:
            verts.insert(0, (copy[q[0]], copy[q[2]]))
        # horizontal lines listed south -> north as (west end, east end)
        horz = [(q[3], q[1])]
        if o_in:
            twin = (copy[q[3]], copy[q[1]])
            # the copy sits on the left of the over-strand
            horz = [horz[0], twin] if x.sign > 0 else [twin, horz[0]]
        vseg = [[v[0]] + [fresh() for _ in range(len(horz) - 1)] + [v[1]] for v in verts]
        hseg = [[h[0]] + [fresh() for _ in range(len(verts) - 1)] + [h[1]] for h in horz]
        for i in range(len(verts)):
            for j in range(len(horz)):
                quad = (vseg[i][j], hseg[j][i + 1], vseg[i][j + 1], hseg[j][i])
                out.append(Crossing(quad, x.sign))
    doubled, relabel = _assemble(out, d.unknotted_loops)
    first = d.arc_components[c][0]
    return doubled, doubled.component_of(relabel[first]), doubled.component_of(relabel[copy[first]])


def pushoff(d: LinkDiagram, c: int) -> LinkDiagram:
    return pushoff_tracked(d, c)[0]
