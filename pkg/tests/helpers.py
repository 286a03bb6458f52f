"""Random test diagrams built from braid words, with invariants read off the word.

Strands run upward; ``+i`` is the generator where the strand at position i
crosses over the strand at i+1, which is a positive crossing.  The closure
is written as a signed Gauss code, so the expected writhe and linking numbers
come from the word alone and never from the PD machinery under test.
"""

import random

import numpy as np

from framelink.codecs import gauss_to_diagram
from framelink.diagram import LinkDiagram
from framelink.moves import apply_move, enumerate_moves


class Braid:
    def __init__(self, word, strands):
        self.word = list(word)
        self.n = strands
        self.cycles = self._cycles()

    def _step(self, pos):
        """Follow one pass through the word from ``pos``; yields (j, over, sign)."""
        visits = []
        for j, g in enumerate(self.word):
            i = abs(g)
            sign = 1 if g > 0 else -1
            if pos == i:
                visits.append((j, sign > 0, sign))
                pos = i + 1
            elif pos == i + 1:
                visits.append((j, sign < 0, sign))
                pos = i
        return pos, visits

    def _cycles(self):
        seen = set()
        cycles = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            pos = self._step(start)[0]
            while pos != start:
                cyc.append(pos)
                seen.add(pos)
                pos = self._step(pos)[0]
            cycles.append(cyc)
        return cycles

    def gauss(self):
        words = []
        for cyc in self.cycles:
            toks = []
            for start in cyc:
                for j, over, sign in self._step(start)[1]:
                    toks.append(f"{'O' if over else 'U'}{j + 1}{'+' if sign > 0 else '-'}")
            words.append(" ".join(toks) if toks else "U")
        return " | ".join(words)

    def diagram(self):
        return gauss_to_diagram(self.gauss())

    def component_of_position(self):
        return {p: k for k, cyc in enumerate(self.cycles) for p in cyc}

    def expected(self):
        """(total writhe, per-cycle writhe, cycle linking table) from the word."""
        comp = self.component_of_position()
        m = len(self.cycles)
        table = [[0] * m for _ in range(m)]
        pos = list(range(1, self.n + 1))  # pos[k] = original strand at position k+1
        for g in self.word:
            i = abs(g)
            a, b = comp[pos[i - 1]], comp[pos[i]]
            table[a][b] += 1 if g > 0 else -1
            if a != b:
                table[b][a] += 1 if g > 0 else -1
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        writhes = [table[k][k] for k in range(m)]
        lk = [[table[a][b] // 2 if a != b else 0 for b in range(m)] for a in range(m)]
        return sum(1 if g > 0 else -1 for g in self.word), writhes, lk

    def diagram_index(self):
        """Diagram component index of each cycle: crossed cycles first, loops last."""
        touched = [any(self._step(p)[1] for p in cyc) for cyc in self.cycles]
        order = [k for k, t in enumerate(touched) if t] + [k for k, t in enumerate(touched) if not t]
        out = [0] * len(order)
        for new, old in enumerate(order):
            out[old] = new
        return out


def random_braid(rng, strands, length):
    return Braid([rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)], strands)


def random_pure_braid(rng, strands, pairs):
    """A word in squared generators: the closure has one component per strand."""
    word = []
    for _ in range(pairs):
        g = rng.choice((1, -1)) * rng.randint(1, strands - 1)
        word += [g, g]
    return Braid(word, strands)


def random_diagram(rng, max_crossings=10, max_components=3, shuffle_moves=3):
    """A random diagram from a braid closure followed by a few R2/R3 moves."""
    while True:
        strands = rng.randint(1, max_components) if max_components > 1 else 1
        strands = max(strands, 2) if rng.random() < 0.8 else strands
        length = rng.randint(0 if strands == 1 else 1, max(1, max_crossings - 2))
        if strands == 1:
            d = LinkDiagram((), 1)
        else:
            b = random_braid(rng, strands, length)
            if len(b.cycles) > max_components:
                continue
            d = b.diagram()
        for _ in range(shuffle_moves):
            kinds = ["R3", "R2_remove"]
            if d.crossing_count + 2 <= max_crossings:
                kinds.append("R2_add")
            sites = enumerate_moves(d, kinds)
            if not sites:
                break
            d = apply_move(d, rng.choice(sites))
        if d.crossing_count <= max_crossings and d.component_count <= max_components:
            return d


def random_knot(rng, max_crossings=12):
    """Single-component diagram: closure of a braid whose permutation is a full cycle."""
    while True:
        strands = rng.randint(2, 4)
        b = random_braid(rng, strands, rng.randint(strands - 1, max_crossings))
        if len(b.cycles) == 1:
            return b.diagram()


# ------------------------------------------------------------------ curves


def circle(n=48, center=(0.0, 0.0, 0.0), plane="xy", radius=1.0):
    s = np.linspace(0, 2 * np.pi, n, endpoint=False)
    a, b, z = radius * np.cos(s), radius * np.sin(s), np.zeros(n)
    pts = {"xy": (a, b, z), "xz": (a, z, b), "yz": (z, a, b)}[plane]
    return np.stack(pts, axis=1) + np.asarray(center)


def torus_curve(p, q, n=240, big=2.0, small=0.7):
    s = np.linspace(0, 2 * np.pi, n, endpoint=False)
    r = big + small * np.cos(q * s)
    return np.stack([r * np.cos(p * s), r * np.sin(p * s), small * np.sin(q * s)], axis=1)


def twisted_field(k, n):
    """Unit circle in the xy-plane with a normal field making k turns.

    Returns (vertices, reference, candidate); the reference points radially
    outward and the candidate rotates k times from it towards tangent x ref.
    """
    s = np.linspace(0, 2 * np.pi, n, endpoint=False)
    verts = np.stack([np.cos(s), np.sin(s), 0 * s], axis=1)
    ref = verts.copy()
    binormal = np.tile([0.0, 0.0, -1.0], (n, 1))
    cand = np.cos(k * s)[:, None] * ref + np.sin(k * s)[:, None] * binormal
    return verts, ref, cand


def seeded(seed):
    return random.Random(seed)
