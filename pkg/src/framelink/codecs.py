"""
Text encodings: PD notation, signed Gauss codes, Dowker-Thistlethwaite codes
and a JSON wrapper for framed links.

PD text is a sequence of ``X[a,b,c,d]`` (or ``X(a,b,c,d)``) terms separated
by whitespace or commas; each ``U`` adds a crossing-free loop.  Files hold
one link per line and ``#`` starts a comment.

Gauss words look like ``O1+ U2- O3+ U1+ O2- U3+`` with components separated
by ``|``; a component written as a lone ``U`` is a crossing-free loop.

DT codes are whitespace-separated even integers.  A link is written as
parenthesised groups, one per component, e.g. ``(6 8) (2 4)``.
"""

from __future__ import annotations

import itertools
import json
import re

from .diagram import (
    Crossing,
    LinkDiagram,
    _assemble,
    _info_from_crossings,
    canonical_form,
    connected_pieces,
    is_planar,
)
from .errors import (
    AmbiguousEmbedding,
    ArcCountError,
    InvalidPairing,
    ParseError,
    SignMismatch,
    UnpairedCrossing,
)
from .invariants import FramedLink

_MINUS = "−"

# ---------------------------------------------------------------------- PD


def _position(text, i, line):
    start = text.rfind("\n", 0, i) + 1
    return line + text.count("\n", 0, i), i - start + 1


def parse_pd(text: str, line: int = 1) -> LinkDiagram:
    """Parse PD text into a validated diagram.

    Raises :class:`ParseError` on grammar violations and
    :class:`ArcCountError` for a crossing without exactly four labels; both
    carry 1-based line and column numbers.
    """
    quads = []
    loops = 0
    i, n = 0, len(text)

    def fail(msg, at, cls=ParseError):
        ln, col = _position(text, at, line)
        raise cls(msg, ln, col)

    def skip_ws(j):
        while j < n and text[j].isspace():
            j += 1
        return j

    while True:
        while i < n and (text[i].isspace() or text[i] == ","):
            i += 1
        if i >= n:
            break
        ch = text[i]
        if ch == "U":
            loops += 1
            i += 1
            if i < n and not (text[i].isspace() or text[i] in ",XU"):
                fail(f"unexpected {text[i]!r} after U", i)
            continue
        if ch != "X":
            fail(f"unexpected {ch!r}, expected X[...] or U", i)
        term_at = i
        i = skip_ws(i + 1)
        if i >= n or text[i] not in "[(":
            fail("expected '[' or '(' after X", min(i, n))
        close = "]" if text[i] == "[" else ")"
        i += 1
        labels = []
        while True:
            i = skip_ws(i)
            m = re.compile(r"[+-]?\d+").match(text, i)
            if not m:
                if i < n and text[i] == close and not labels:
                    fail("empty crossing", term_at, ArcCountError)
                fail("expected an arc label", min(i, n))
            value = int(m.group())
            if value <= 0:
                fail(f"arc label {value} must be positive", i)
            labels.append(value)
            i = skip_ws(m.end())
            if i < n and text[i] == ",":
                i += 1
                continue
            if i < n and text[i] == close:
                i += 1
                break
            fail(f"expected ',' or {close!r}", min(i, n))
        if len(labels) != 4:
            fail(f"crossing has {len(labels)} arc labels, expected 4", term_at, ArcCountError)
        quads.append(tuple(labels))
        if i < n and not (text[i].isspace() or text[i] in ",XU"):
            fail(f"unexpected {text[i]!r} after crossing", i)
    d = LinkDiagram(tuple(quads), loops)
    d._info  # validate eagerly
    return d


def parse_pd_file(text: str) -> list[LinkDiagram]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.append(parse_pd(body, line=ln))
    return out


def serialize_pd(d: LinkDiagram) -> str:
    """Canonical PD text: relabelled and sorted, equal for equal diagrams."""
    return str(canonical_form(d)[0])


# ------------------------------------------------------------------- Gauss

_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+\-−])")


def gauss_to_diagram(code: str) -> LinkDiagram:
    words = [w.strip() for w in code.split("|")] if code.strip() else []
    loops = 0
    visits = []  # per component: list of (role, index, sign)
    for w in words:
        if w == "U":
            loops += 1
            continue
        toks = w.replace(",", " ").split()
        comp = []
        for t in toks:
            m = _GAUSS_TOKEN.fullmatch(t)
            if not m:
                raise ParseError(f"bad Gauss token {t!r}", 1, code.find(t) + 1)
            sign = 1 if m.group(3) == "+" else -1
            comp.append((m.group(1), int(m.group(2)), sign))
        if not comp:
            raise ParseError("empty Gauss component", 1, 1)
        visits.append(comp)

    roles: dict[int, dict] = {}
    label = 1
    for comp in visits:
        m = len(comp)
        for i, (role, idx, sign) in enumerate(comp):
            into, out = label + i, label + (i + 1) % m
            slot = roles.setdefault(idx, {})
            if role in slot:
                raise UnpairedCrossing(f"crossing {idx} has two {role} visits")
            slot[role] = (into, out, sign)
        label += m
    crossings = []
    for idx in sorted(roles):
        r = roles[idx]
        if set(r) != {"O", "U"}:
            raise UnpairedCrossing(f"crossing {idx} is visited only once")
        (ui, uo, su), (oi, oo, so) = r["U"], r["O"]
        if su != so:
            raise SignMismatch(f"crossing {idx} has signs {su:+d} and {so:+d}")
        crossings.append(Crossing.from_strands(ui, uo, oi, oo, su))
    return _assemble(crossings, loops)[0]


def diagram_to_gauss(d: LinkDiagram) -> str:
    d, _ = canonical_form(d)
    number = {}
    words = []
    for comp in d.arc_components:
        toks = []
        for a in comp:
            k, slot = d.head(a)
            number.setdefault(k, len(number) + 1)
            role = "U" if slot == 0 else "O"
            sign = "+" if d.crossings[k].sign > 0 else "-"
            toks.append(f"{role}{number[k]}{sign}")
        words.append(" ".join(toks))
    words += ["U"] * d.unknotted_loops
    return " | ".join(words)


# ---------------------------------------------------------------------- DT


def parse_dt(code) -> list[list[int]]:
    """Accept a string or nested/flat integer lists; return per-component groups."""
    if isinstance(code, str):
        text = code.replace(_MINUS, "-").strip()
        if "(" in text:
            groups = re.findall(r"\(([^()]*)\)", text)
            if re.sub(r"\([^()]*\)", "", text).strip(" ,"):
                raise ParseError("text outside DT groups", 1, 1)
        else:
            groups = text.split("|")
        out = []
        for g in groups:
            try:
                out.append([int(t) for t in g.replace(",", " ").split()])
            except ValueError as exc:
                raise ParseError(f"bad DT entry: {exc}", 1, 1) from None
        return out
    code = list(code)
    if code and isinstance(code[0], (list, tuple)):
        return [list(map(int, g)) for g in code]
    return [list(map(int, code))]


def _dt_records(groups):
    n = sum(len(g) for g in groups)
    evens = [abs(v) for g in groups for v in g]
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise InvalidPairing(f"entries must be the even numbers 2..{2 * n}, each once")
    succ = {}
    odd_labels = []
    start = 1
    for g in groups:
        size = 2 * len(g)
        for j in range(size):
            succ[start + j] = start + (j + 1) % size
        odd_labels += list(range(start, start + size, 2))
        start += size
    entries = [v for g in groups for v in g]
    pairs = []
    for odd, v in zip(odd_labels, entries):
        even = abs(v)
        # positive entry: the even visit passes under
        under, over = (even, odd) if v > 0 else (odd, even)
        pairs.append((under, succ[under], over, succ[over]))
    return pairs


def dt_embeddings(code) -> list[LinkDiagram]:
    """All planar realizations whose first crossing is positive."""
    groups = parse_dt(code)
    pairs = _dt_records(groups)
    if not pairs:
        return [LinkDiagram((), len(groups))]
    found = []
    for rest in itertools.product((1, -1), repeat=len(pairs) - 1):
        signs = (1, *rest)
        crossings = [Crossing.from_strands(*p, s) for p, s in zip(pairs, signs)]
        d = LinkDiagram(tuple(c.arcs for c in crossings))
        d.__dict__["_info"] = _info_from_crossings(crossings)
        if is_planar(d) and connected_pieces(d) == 1:
            found.append(d)
    return found


def dt_to_diagram(code, strict: bool = False) -> LinkDiagram:
    """Realize a DT code.

    Handedness is fixed by making the first crossing positive.  When several
    inequivalent planar embeddings remain (diagrams with nugatory crossings)
    the first in a fixed enumeration order is returned, or
    :class:`AmbiguousEmbedding` is raised if ``strict``.
    """
    found = dt_embeddings(code)
    if not found:
        raise InvalidPairing("DT code has no planar realization")
    if strict and len(found) > 1:
        raise AmbiguousEmbedding(f"{len(found)} planar embeddings fit this DT code")
    return found[0]


def diagram_to_dt(d: LinkDiagram) -> str:
    """DT code of ``d`` read from its labels.

    Each component is traversed from its first arc; for links the starting
    arcs are rotated until every crossing pairs an odd with an even visit.
    """
    if d.unknotted_loops:
        raise InvalidPairing("DT codes cannot express crossing-free components")
    comps = d.arc_components
    for starts in itertools.product(*(range(len(c)) for c in comps)):
        visit = {}
        label = 1
        order = []
        for comp, st in zip(comps, starts):
            rot = comp[st:] + comp[:st]
            for a in rot:
                visit[a] = label
                label += 1
            order.append(len(rot))
        pairing = {}
        ok = True
        for c in d.crossings:
            u, o = visit[c.under_in], visit[c.over_in]
            if (u + o) % 2 == 0:
                ok = False
                break
            odd, even = (u, o) if u % 2 else (o, u)
            pairing[odd] = even if even == u else -even
        if not ok:
            continue
        groups = []
        first = 1
        for size in order:
            groups.append([pairing[j] for j in range(first, first + size, 2)])
            first += size
        if len(groups) == 1:
            return " ".join(map(str, groups[0]))
        return " ".join("(" + " ".join(map(str, g)) + ")" for g in groups)
    raise InvalidPairing("no choice of base points gives an odd/even pairing")


# -------------------------------------------------------------------- JSON


def framed_link_to_json(fl: FramedLink) -> dict:
    """Canonical PD plus framings reordered to match its components."""
    d, cmap = canonical_form(fl.diagram)
    framings = [0] * len(cmap)
    for old, new in enumerate(cmap):
        framings[new] = fl.framings[old]
    return {"pd": str(d), "framings": framings}


def framed_link_from_json(obj) -> FramedLink:
    """Read ``{"pd": ..., "framings": [...]}``; missing framings mean blackboard."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "pd" not in obj:
        raise ParseError("expected an object with a 'pd' field", 1, 1)
    pd = obj["pd"]
    if isinstance(pd, list):
        d = LinkDiagram(tuple(tuple(q) for q in pd), int(obj.get("loops", 0)))
        d._info
    else:
        d = parse_pd(pd)
    framings = obj.get("framings")
    if framings is None:
        return FramedLink.blackboard(d)
    return FramedLink(d, tuple(framings))


def read_diagram(text: str) -> LinkDiagram:
    """Sniff the format: JSON object, Gauss word, DT code or PD text."""
    s = text.strip()
    if s.startswith("{"):
        return framed_link_from_json(s).diagram
    if s.startswith("X") or s == "U" or not s:
        return parse_pd(text)
    if _GAUSS_TOKEN.match(s):
        return gauss_to_diagram(s)
    if re.fullmatch(r"[\s()\d,+\-−|]+", s):
        return dt_to_diagram(s)
    return parse_pd(text)
