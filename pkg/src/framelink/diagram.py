"""
Oriented link diagrams in planar-diagram (PD) form.

A crossing is a quadruple of arc labels listed counterclockwise, starting at
the incoming under-strand.  The under-strand therefore runs from slot 0 to
slot 2.  The over-strand runs either 3 -> 1 (positive crossing) or 1 -> 3
(negative crossing); which one is read off from the orientation of the
component carrying it.  Crossing-free components carry no labels at all and
are tracked only as a count of unknotted loops.

Orientation of a component is recovered from its under-passes.  A component
that is over at every crossing it meets has no such information; for those the
labels decide: along a component of three or more arcs the smallest label is
followed by the smaller of its two neighbours, and for a two-arc component the
smaller label runs into the crossing whose under-strand label is smaller.
Diagrams built by this package are always labelled so that these rules
reproduce the intended orientation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import (
    ArcNotOnComponent,
    BrokenCycle,
    DanglingArc,
    DiagramError,
    EmptyCrossing,
    IndexOutOfRange,
    NoCommonFace,
    SameComponent,
)

Quad = tuple[int, int, int, int]


class Crossing(NamedTuple):
    arcs: Quad
    sign: int

    @classmethod
    def from_strands(cls, under_in, under_out, over_in, over_out, sign):
        if sign > 0:
            return cls((under_in, over_out, under_out, over_in), 1)
        return cls((under_in, over_in, under_out, over_out), -1)

    @property
    def under_in(self):
        return self.arcs[0]

    @property
    def under_out(self):
        return self.arcs[2]

    @property
    def over_in(self):
        return self.arcs[3] if self.sign > 0 else self.arcs[1]

    @property
    def over_out(self):
        return self.arcs[1] if self.sign > 0 else self.arcs[3]

    def strands(self):
        """(under_in, under_out, over_in, over_out)."""
        return (self.under_in, self.under_out, self.over_in, self.over_out)

    def is_outgoing(self, slot):
        if slot == 2:
            return True
        if slot == 0:
            return False
        return (slot == 1) == (self.sign > 0)


class _Info(NamedTuple):
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]  # crossing components only
    comp_of: dict
    ends: dict  # label -> ((k, slot), (k, slot))


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable oriented link diagram.

    ``pd`` holds the crossing quadruples; ``unknotted_loops`` counts
    crossing-free components.  Components are indexed in canonical order:
    ascending minimal arc label, then the unknotted loops.
    """

    pd: tuple[Quad, ...] = ()
    unknotted_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pd", tuple(tuple(int(a) for a in q) for q in self.pd))
        object.__setattr__(self, "unknotted_loops", int(self.unknotted_loops))

    @cached_property
    def _info(self) -> _Info:
        return _derive(self.pd, self.unknotted_loops)

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self._info.crossings

    @property
    def crossing_count(self) -> int:
        return len(self.pd)

    @property
    def arc_components(self) -> tuple[tuple[int, ...], ...]:
        return self._info.components

    @property
    def component_count(self) -> int:
        return len(self._info.components) + self.unknotted_loops

    @property
    def arcs(self) -> list[int]:
        return sorted(self._info.ends)

    def component_of(self, arc: int) -> int:
        try:
            return self._info.comp_of[arc]
        except KeyError:
            raise ArcNotOnComponent(f"arc {arc} is not in the diagram") from None

    def is_loop(self, c: int) -> bool:
        self.check_component(c)
        return c >= len(self._info.components)

    def check_component(self, c: int):
        if not 0 <= c < self.component_count:
            raise IndexOutOfRange(f"component {c} out of range 0..{self.component_count - 1}")

    def arc_ends(self, arc: int):
        """The two (crossing, slot) positions where ``arc`` is attached."""
        return self._info.ends[arc]

    def head(self, arc: int):
        """(crossing, slot) where ``arc`` ends."""
        for k, s in self._info.ends[arc]:
            if not self.crossings[k].is_outgoing(s):
                return k, s
        raise BrokenCycle(f"arc {arc} has no head")

    def tail(self, arc: int):
        for k, s in self._info.ends[arc]:
            if self.crossings[k].is_outgoing(s):
                return k, s
        raise BrokenCycle(f"arc {arc} has no tail")

    def crossing_components(self, k: int) -> tuple[int, int]:
        """(component of the under-strand, component of the over-strand)."""
        c = self.crossings[k]
        return self._info.comp_of[c.under_in], self._info.comp_of[c.over_in]

    def max_label(self) -> int:
        return max((a for q in self.pd for a in q), default=0)

    def __str__(self):
        terms = [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.pd]
        terms += ["U"] * self.unknotted_loops
        return " ".join(terms)


def _seed(diagram: LinkDiagram, info: _Info) -> LinkDiagram:
    diagram.__dict__["_info"] = info
    return diagram


# ---------------------------------------------------------------- derivation


def _derive(pd, loops) -> _Info:
    if loops < 0:
        raise DiagramError("negative unknotted loop count")
    ends: dict[int, list] = {}
    for k, quad in enumerate(pd):
        if len(quad) != 4:
            raise EmptyCrossing(f"crossing {k} has {len(quad)} arc labels, expected 4", crossing=k)
        for s, a in enumerate(quad):
            if a <= 0:
                raise EmptyCrossing(f"crossing {k} has non-positive arc label {a}", crossing=k)
            ends.setdefault(a, []).append((k, s))
    for k, quad in enumerate(pd):
        for a in quad:
            if len(ends[a]) != 2:
                raise DanglingArc(f"arc {a} is used {len(ends[a])} times", crossing=k)

    def other(label, end):
        e0, e1 = ends[label]
        return e1 if e0 == end else e0

    heads = set()
    seen = set()
    for start in sorted(ends):
        if start in seen:
            continue
        # undirected walk: (label, end it runs into)
        walk = []
        label, end = start, ends[start][0]
        while True:
            walk.append((label, end))
            seen.add(label)
            k, s = end
            out_slot = (s + 2) % 4
            nxt = pd[k][out_slot]
            nxt_end = other(nxt, (k, out_slot))
            if nxt == start and nxt_end == ends[start][0]:
                break
            if len(walk) > 2 * len(ends):
                raise BrokenCycle(f"trace from arc {start} does not close", crossing=k)
            label, end = nxt, nxt_end

        votes = {+1 if s == 0 else -1 for _, (k, s) in walk if s % 2 == 0}
        if len(votes) == 2:
            bad = next(k for _, (k, s) in walk if s == 2)
            raise BrokenCycle(
                f"under-strands disagree on the orientation of the component of arc {start}",
                crossing=bad,
            )
        if votes:
            forward = votes.pop() > 0
        elif len(walk) >= 3:
            forward = walk[1][0] < walk[-1][0]
        elif len(walk) == 2:
            e0 = walk[0][1]
            e1 = other(start, e0)
            forward = pd[e0[0]][0] < pd[e1[0]][0]
        else:
            forward = True
        for label, end in walk:
            heads.add(end if forward else other(label, end))

    crossings = []
    for k, quad in enumerate(pd):
        if (k, 0) not in heads or (k, 2) in heads:
            raise BrokenCycle(f"under-strand of crossing {k} is not oriented 0 -> 2", crossing=k)
        if (k, 3) in heads and (k, 1) not in heads:
            sign = 1
        elif (k, 1) in heads and (k, 3) not in heads:
            sign = -1
        else:
            raise BrokenCycle(f"over-strand of crossing {k} is not oriented", crossing=k)
        crossings.append(Crossing(tuple(quad), sign))
    return _info_from_crossings(crossings)


def _info_from_crossings(crossings) -> _Info:
    succ = {}
    ends: dict[int, list] = {}
    for k, c in enumerate(crossings):
        for s, a in enumerate(c.arcs):
            ends.setdefault(a, []).append((k, s))
        ui, uo, oi, oo = c.strands()
        succ[ui] = uo
        succ[oi] = oo
    comps = []
    comp_of = {}
    for a in sorted(succ):
        if a in comp_of:
            continue
        cyc = [a]
        comp_of[a] = len(comps)
        b = succ[a]
        while b != a:
            cyc.append(b)
            comp_of[b] = len(comps)
            b = succ[b]
        comps.append(tuple(cyc))
    return _Info(
        tuple(crossings), tuple(comps), comp_of, {a: tuple(e) for a, e in ends.items()}
    )


def validate(d: LinkDiagram) -> None:
    """Check every structural invariant of ``d``.

    Returns ``None`` when the diagram is sound and raises the first violation
    (:class:`DanglingArc`, :class:`BrokenCycle` or :class:`EmptyCrossing`)
    otherwise.  The offending crossing index is on the exception.
    """
    d.__dict__.pop("_info", None)
    d._info


def trace_components(d: LinkDiagram) -> list[tuple[int, ...]]:
    """Oriented arc cycles in canonical order; unknotted loops appear as ``()``."""
    return list(d.arc_components) + [()] * d.unknotted_loops


# ------------------------------------------------------------------ assembly


def _assemble(crossings, loops) -> tuple[LinkDiagram, dict[int, int]]:
    """Relabel oriented crossings so the PD form re-derives the same orientation.

    Arcs are renumbered 1.. component by component along the orientation.
    Returns the new diagram and the old -> new label map.
    """
    succ = {}
    for k, c in enumerate(crossings):
        ui, uo, oi, oo = c.strands()
        for a, b in ((ui, uo), (oi, oo)):
            if a in succ:
                raise BrokenCycle(f"arc {a} leaves two crossings", crossing=k)
            succ[a] = b
    if set(succ) != set(succ.values()):
        raise BrokenCycle("arcs do not close into cycles")
    comps = []
    seen = set()
    for a in sorted(succ):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = succ[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = succ[b]
        comps.append(cyc)

    under = {c.under_in for c in crossings}
    new = {}
    base = 1
    pending = []
    for cyc in comps:
        if len(cyc) == 2 and not (under & set(cyc)):
            pending.append((cyc, base))
        else:
            for i, a in enumerate(cyc):
                new[a] = base + i
        base += len(cyc)
    if pending:
        head_under = {c.over_in: c.under_in for c in crossings}
        for (a, b), start in pending:
            if new[head_under[a]] < new[head_under[b]]:
                new[a], new[b] = start, start + 1
            else:
                new[b], new[a] = start, start + 1
    out = [
        Crossing.from_strands(*(new[x] for x in c.strands()), c.sign) for c in crossings
    ]
    d = LinkDiagram(tuple(c.arcs for c in out), loops)
    return _seed(d, _info_from_crossings(out)), new


class _Work:
    """Mutable scratch copy of a diagram that remembers component identity.

    Crossings are ``[under_in, under_out, over_in, over_out, sign]`` lists.
    Every original component keeps a tag so callers can map components of the
    input to components of the result.
    """

    def __init__(self, d: LinkDiagram):
        self.recs = [[*c.strands(), c.sign] for c in d.crossings]
        n = len(d.arc_components)
        self.tag_label = {i: comp[0] for i, comp in enumerate(d.arc_components)}
        self.loops = list(range(n, n + d.unknotted_loops))
        self.next_label = d.max_label() + 1

    def fresh(self) -> int:
        self.next_label += 1
        return self.next_label - 1

    def head_of(self, label):
        for r in self.recs:
            if r[0] == label:
                return r, 0
            if r[2] == label:
                return r, 2
        raise BrokenCycle(f"arc {label} has no head")

    def retarget_head(self, label, new_label):
        r, f = self.head_of(label)
        r[f] = new_label

    def loop_to_arc(self, tag_position: int) -> int:
        """Give a crossing-free loop a label; the caller must add its first crossing."""
        tag = self.loops.pop(tag_position)
        x = self.fresh()
        self.tag_label[tag] = x
        return x

    def add_kink(self, label: int, sign: int, closing: int | None = None) -> int:
        """Insert a kink on arc ``label``; returns the arc leaving the kink."""
        loop = self.fresh()
        if closing is None:
            out = self.fresh()
            self.retarget_head(label, out)
        else:
            out = closing
        self.recs.append([label, loop, loop, out, sign])
        return out

    def remove(self, indices):
        parent = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo

        drop = set(indices)
        for i in drop:
            ui, uo, oi, oo, _ = self.recs[i]
            union(ui, uo)
            union(oi, oo)
        self.recs = [r for i, r in enumerate(self.recs) if i not in drop]
        surviving = set()
        for r in self.recs:
            for f in range(4):
                r[f] = find(r[f])
                surviving.add(r[f])
        for tag in sorted(self.tag_label):
            rep = find(self.tag_label[tag])
            if rep in surviving:
                self.tag_label[tag] = rep
            else:
                del self.tag_label[tag]
                self.loops.append(tag)

    def finish(self) -> tuple[LinkDiagram, list[int]]:
        crossings = [Crossing.from_strands(*r[:4], r[4]) for r in self.recs]
        d, relabel = _assemble(crossings, len(self.loops))
        ncomp = len(d.arc_components)
        total = len(self.tag_label) + len(self.loops)
        cmap = [0] * total
        for tag, label in self.tag_label.items():
            cmap[tag] = d.component_of(relabel[label])
        for pos, tag in enumerate(self.loops):
            cmap[tag] = ncomp + pos
        return d, cmap


# -------------------------------------------------------------- canonical


def canonical_form(d: LinkDiagram) -> tuple[LinkDiagram, list[int]]:
    """Relabel-invariant representative of ``d``.

    Tries every component order and every starting arc, numbering arcs
    component-major along the orientation, and keeps the lexicographically
    smallest sorted quadruple list.  Returns the representative and the map
    from old to new component indices.
    """
    comps = d.arc_components
    ncomp = len(comps)
    loops = d.unknotted_loops
    if not comps:
        return LinkDiagram((), loops), list(range(loops))
    crossings = d.crossings
    under = {c.under_in for c in crossings}
    head_under = {c.over_in: c.under_in for c in crossings}
    ambiguous = [len(c) == 2 and not (under & set(c)) for c in comps]

    best_key = None
    best = None
    for perm in itertools.permutations(range(ncomp)):
        choices = []
        for pos, ci in enumerate(perm):
            comp = comps[ci]
            if ambiguous[ci]:
                choices.append((None,))
            elif pos == 0 and under & set(comp):
                choices.append(tuple(i for i, a in enumerate(comp) if a in under))
            else:
                choices.append(tuple(range(len(comp))))
        for starts in itertools.product(*choices):
            new = {}
            base = 1
            deferred = []
            for ci, st in zip(perm, starts):
                comp = comps[ci]
                if st is None:
                    deferred.append((comp, base))
                else:
                    n = len(comp)
                    for i in range(n):
                        new[comp[(st + i) % n]] = base + i
                base += len(comp)
            for (a, b), start in deferred:
                if new[head_under[a]] < new[head_under[b]]:
                    new[a], new[b] = start, start + 1
                else:
                    new[b], new[a] = start, start + 1
            quads = sorted(tuple(new[a] for a in c.arcs) for c in crossings)
            key = tuple(quads)
            if best_key is None or key < best_key:
                best_key = key
                best = (new, perm)
    new, perm = best
    relabelled = sorted(
        (Crossing(tuple(new[a] for a in c.arcs), c.sign) for c in crossings),
        key=lambda c: c.arcs,
    )
    out = _seed(LinkDiagram(best_key, loops), _info_from_crossings(relabelled))
    cmap = [0] * (ncomp + loops)
    for ci in range(ncomp):
        cmap[ci] = out.component_of(new[comps[ci][0]])
    for j in range(loops):
        cmap[ncomp + j] = ncomp + j
    return out, cmap


def canonical_key(d: LinkDiagram):
    c, _ = canonical_form(d)
    return (c.pd, c.unknotted_loops)


def same_diagram(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    """Equality up to relabelling of arcs and reordering of crossings."""
    if d1.crossing_count != d2.crossing_count or d1.component_count != d2.component_count:
        return False
    return canonical_key(d1) == canonical_key(d2)


# ------------------------------------------------------------------- faces


class FaceEdge(NamedTuple):
    label: int
    start: tuple[int, int]  # (crossing, slot) the boundary walk leaves from
    end: tuple[int, int]  # (crossing, slot) it arrives at
    forward: bool  # walk agrees with the arc orientation; face is then on its right

    @property
    def side(self) -> int:
        """1 if the face lies to the right of the oriented arc, else 0."""
        return 1 if self.forward else 0


def faces(d: LinkDiagram) -> list[list[FaceEdge]]:
    """Faces of each connected piece, as boundary walks keeping the face on the right."""
    crossings = d.crossings
    ends = d._info.ends
    seen = set()
    out = []
    for k in range(len(d.pd)):
        for i in range(4):
            if (k, i) in seen:
                continue
            walk = []
            corner = (k, i)
            while corner not in seen:
                seen.add(corner)
                ck, ci = corner
                slot = (ci + 1) % 4
                label = d.pd[ck][slot]
                e0, e1 = ends[label]
                arrive = e1 if e0 == (ck, slot) else e0
                walk.append(
                    FaceEdge(label, (ck, slot), arrive, crossings[ck].is_outgoing(slot))
                )
                corner = arrive
            out.append(walk)
    return out


def connected_pieces(d: LinkDiagram) -> int:
    parent = list(range(len(d.pd)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (k1, _), (k2, _) in d._info.ends.values():
        parent[find(k1)] = find(k2)
    return len({find(k) for k in range(len(d.pd))})


def is_planar(d: LinkDiagram) -> bool:
    """Euler-characteristic test: each connected piece must be a sphere."""
    if not d.pd:
        return True
    return len(faces(d)) == len(d.pd) + 2 * connected_pieces(d)


# -------------------------------------------------------------- operations


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = d1.max_label()
    crossings = list(d1.crossings) + [
        Crossing(tuple(a + shift for a in c.arcs), c.sign) for c in d2.crossings
    ]
    return _assemble(crossings, d1.unknotted_loops + d2.unknotted_loops)[0]


def _component_arc(d: LinkDiagram, c: int, arc: int | None) -> int | None:
    d.check_component(c)
    if d.is_loop(c):
        if arc is not None:
            raise ArcNotOnComponent(f"component {c} is a crossing-free loop")
        return None
    comp = d.arc_components[c]
    if arc is None:
        return comp[0]
    if arc not in comp:
        raise ArcNotOnComponent(f"arc {arc} is not on component {c}")
    return arc


def connected_sum(
    d: LinkDiagram,
    c1: int,
    a1: int | None,
    d2: LinkDiagram | None,
    c2: int,
    a2: int | None,
) -> LinkDiagram:
    """Join component ``c1`` of ``d`` with component ``c2`` of ``d2``.

    The arcs ``a1`` and ``a2`` are cut and reconnected so that the tail of
    each feeds the head of the other, which respects both orientations and
    adds no crossings.  With ``d2=None`` both components come from ``d`` and
    the arcs must run the same way along the boundary of a common face (a band
    sum inside one diagram).  ``None`` arcs pick the first arc of the
    component; crossing-free loops take ``None``.
    """
    return connected_sum_tracked(d, c1, a1, d2, c2, a2)[0]


def connected_sum_tracked(d, c1, a1, d2, c2, a2) -> tuple[LinkDiagram, list[int]]:
    """Like :func:`connected_sum`, also mapping old components to new ones.

    The map lists the components of ``d`` followed by those of ``d2``.
    """
    x = _component_arc(d, c1, a1)
    if d2 is None:
        if c1 == c2:
            raise SameComponent("cannot join a component to itself")
        y = _component_arc(d, c2, a2)
        work = d
        order = list(range(d.component_count))
        j1, j2 = c1, c2
        if x is not None and y is not None:
            ok = any(
                e.label == x and f.label == y and e.forward == f.forward
                for face in faces(d)
                for e in face
                for f in face
            )
            if not ok:
                raise NoCommonFace(f"arcs {x} and {y} do not run the same way around a common face")
    else:
        y = _component_arc(d2, c2, a2)
        if y is not None:
            y += d.max_label()
        work = _union_keep_labels(d, d2)
        na, la = len(d.arc_components), d.unknotted_loops
        nb, lb = len(d2.arc_components), d2.unknotted_loops
        order = (
            list(range(na))
            + [na + nb + j for j in range(la)]
            + [na + i for i in range(nb)]
            + [na + nb + la + j for j in range(lb)]
        )
        j1, j2 = order[c1], order[d.component_count + c2]
    wn = len(work.arc_components)

    if x is None or y is None:
        # summing with a crossing-free unknot just absorbs it
        drop, keep = (j2, j1) if y is None else (j1, j2)
        out = _seed(
            LinkDiagram(work.pd, work.unknotted_loops - 1),
            _info_from_crossings(work.crossings),
        )

        def new_index(w):
            if w == drop:
                w = keep
            return w if w < drop else w - 1

    else:
        recs = [[*c.strands(), c.sign] for c in work.crossings]
        for r in recs:
            for f in (0, 2):
                if r[f] == x:
                    r[f] = y
                elif r[f] == y:
                    r[f] = x
        crossings = [Crossing.from_strands(*r[:4], r[4]) for r in recs]
        out, relabel = _assemble(crossings, work.unknotted_loops)
        on = len(out.arc_components)

        def new_index(w):
            if w < wn:
                return out.component_of(relabel[work.arc_components[w][0]])
            return on + (w - wn)

    return out, [new_index(w) for w in order]


def _union_keep_labels(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Disjoint union that keeps d1's labels and shifts d2's by d1.max_label()."""
    shift = d1.max_label()
    crossings = list(d1.crossings) + [
        Crossing(tuple(a + shift for a in c.arcs), c.sign) for c in d2.crossings
    ]
    d = LinkDiagram(tuple(c.arcs for c in crossings), d1.unknotted_loops + d2.unknotted_loops)
    return _seed(d, _info_from_crossings(crossings))


def reverse_component(d: LinkDiagram, c: int) -> LinkDiagram:
    d.check_component(c)
    if d.is_loop(c):
        return d
    arcs = set(d.arc_components[c])
    out = []
    for x in d.crossings:
        ui, uo, oi, oo = x.strands()
        ru, ro = ui in arcs, oi in arcs
        if ru:
            ui, uo = uo, ui
        if ro:
            oi, oo = oo, oi
        sign = -x.sign if ru != ro else x.sign
        out.append(Crossing.from_strands(ui, uo, oi, oo, sign))
    return _assemble(out, d.unknotted_loops)[0]


def crossing_change(d: LinkDiagram, k: int) -> LinkDiagram:
    """Swap over and under at crossing ``k`` (the planar picture is unchanged)."""
    if not 0 <= k < len(d.pd):
        raise IndexOutOfRange(f"crossing {k} out of range")
    out = list(d.crossings)
    ui, uo, oi, oo = out[k].strands()
    out[k] = Crossing.from_strands(oi, oo, ui, uo, -out[k].sign)
    return _assemble(out, d.unknotted_loops)[0]


def mirror(d: LinkDiagram) -> LinkDiagram:
    return _assemble(
        [Crossing.from_strands(c.over_in, c.over_out, c.under_in, c.under_out, -c.sign) for c in d.crossings],
        d.unknotted_loops,
    )[0]
