import json
import re

import pytest
from helpers import random_diagram, seeded
from hypothesis import given, settings
from hypothesis import strategies as st

from framelink.codecs import (
    diagram_to_dt,
    diagram_to_gauss,
    dt_embeddings,
    dt_to_diagram,
    framed_link_from_json,
    framed_link_to_json,
    gauss_to_diagram,
    parse_dt,
    parse_pd,
    parse_pd_file,
    read_diagram,
    serialize_pd,
)
from framelink.diagram import LinkDiagram, is_planar, same_diagram
from framelink.errors import (
    AmbiguousEmbedding,
    ArcCountError,
    DiagramError,
    FramingCountError,
    InvalidPairing,
    ParseError,
    SignMismatch,
    UnpairedCrossing,
)
from framelink.invariants import FramedLink, linking_number, total_writhe

TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"

_LABEL = r"\s*\+?0*[1-9]\d*\s*"
_QUAD = rf"{_LABEL}(?:,{_LABEL}){{3}}"
_TERM = rf"(?:X\s*(?:\[{_QUAD}\]|\({_QUAD}\))|U)"
GRAMMAR = re.compile(rf"[\s,]*(?:{_TERM}[\s,]*)*")


class TestParsePD:
    def test_trefoil(self):
        d = parse_pd(TREFOIL_PD)
        assert d.crossing_count == 3 and d.component_count == 1

    def test_round_brackets_and_spacing(self):
        d = parse_pd("X( 1 , 4 , 2 , 5 ),X(3,6,4,1)\nX(5,2,6,3)")
        assert serialize_pd(d) == TREFOIL_PD

    def test_loops(self):
        d = parse_pd("U U")
        assert d.component_count == 2 and d.crossing_count == 0
        assert serialize_pd(d) == "U U"

    def test_empty(self):
        assert parse_pd("").component_count == 0

    @pytest.mark.parametrize(
        "text, cls, line, col",
        [
            ("X[1,2,3]", ArcCountError, 1, 1),
            ("X[1,2,3,4", ParseError, 1, 10),
            ("X[1,1,2,2] Y", ParseError, 1, 12),
            ("X[-1,1,2,2]", ParseError, 1, 3),
            ("\nX[1,1,2,2]\n  X[1,2]", ArcCountError, 3, 3),
            ("X[]", ArcCountError, 1, 1),
        ],
    )
    def test_error_positions(self, text, cls, line, col):
        with pytest.raises(cls) as exc:
            parse_pd(text)
        assert (exc.value.line, exc.value.col) == (line, col)
        assert exc.value.to_dict()["line"] == line

    def test_invalid_diagram_is_not_a_syntax_error(self):
        with pytest.raises(DiagramError):
            parse_pd("X[1,3,2,4] X[1,4,2,3]")

    def test_file_with_comments(self):
        text = "# two links\nX[1,1,2,2]   # kink\n\nU\n"
        links = parse_pd_file(text)
        assert [d.crossing_count for d in links] == [1, 0]

    def test_file_error_line(self):
        with pytest.raises(ParseError) as exc:
            parse_pd_file("U\n# c\nX[1,2")
        assert exc.value.line == 3

    def test_serialize_round_trip(self):
        rng = seeded(11)
        for _ in range(60):
            d = random_diagram(rng)
            text = serialize_pd(d)
            assert serialize_pd(parse_pd(text)) == text
            assert same_diagram(parse_pd(text), d)


_ALPHABET = st.sampled_from(list("XU[](),0123456789+- \n") + ["X[", "1,1,2,2]", "U "])


@settings(max_examples=400, deadline=None)
@given(st.lists(_ALPHABET, max_size=30).map("".join))
def test_grammar_matches_reference(text):
    try:
        parse_pd(text)
        accepted = True
    except ParseError:
        accepted = False
    except DiagramError:
        accepted = True
    assert accepted == bool(GRAMMAR.fullmatch(text)), text


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(1, 9), min_size=4, max_size=4), max_size=4), st.integers(0, 2))
def test_wellformed_terms_never_syntax_errors(quads, loops):
    text = " ".join("X[" + ",".join(map(str, q)) + "]" for q in quads) + " U" * loops
    try:
        parse_pd(text)
    except DiagramError:
        pass


class TestGauss:
    def test_hopf_positive(self):
        d = gauss_to_diagram("O1+ U2+ | U1+ O2+")
        assert d.component_count == 2
        assert linking_number(d, 0, 1) == 1

    def test_hopf_negative(self):
        d = gauss_to_diagram("O1- U2- | U1- O2-")
        assert linking_number(d, 0, 1) == -1

    def test_trefoil(self):
        d = gauss_to_diagram(diagram_to_gauss(parse_pd(TREFOIL_PD)))
        assert serialize_pd(d) == TREFOIL_PD

    def test_loops(self):
        d = gauss_to_diagram("U | U")
        assert d.component_count == 2 and d.crossing_count == 0
        assert diagram_to_gauss(d) == "U | U"

    @pytest.mark.parametrize(
        "code, cls",
        [
            ("O1+ U1+ O1+", UnpairedCrossing),
            ("O1+", UnpairedCrossing),
            ("O1+ U1-", SignMismatch),
            ("Q1+", ParseError),
        ],
    )
    def test_errors(self, code, cls):
        with pytest.raises(cls):
            gauss_to_diagram(code)

    def test_round_trip_random(self):
        rng = seeded(12)
        for _ in range(60):
            d = random_diagram(rng)
            assert same_diagram(gauss_to_diagram(diagram_to_gauss(d)), d)


class TestDT:
    def test_trefoil(self):
        d = dt_to_diagram("4 6 2")
        assert d.crossing_count == 3 and abs(total_writhe(d)) == 3

    def test_empty_is_unknot(self):
        d = dt_to_diagram("")
        assert d.crossing_count == 0 and d.component_count == 1

    def test_ambiguous(self):
        found = dt_embeddings("4 8 -2 6")
        assert len(found) == 2
        assert all(is_planar(d) for d in found)
        assert same_diagram(dt_to_diagram("4 8 -2 6"), found[0])
        with pytest.raises(AmbiguousEmbedding):
            dt_to_diagram("4 8 -2 6", strict=True)

    def test_strict_unique(self):
        assert dt_to_diagram("4 6 2", strict=True).crossing_count == 3

    @pytest.mark.parametrize("code", ["4 4 2", "3 6 2"])
    def test_invalid_pairing(self, code):
        with pytest.raises(InvalidPairing):
            dt_to_diagram(code)

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_dt("4 x")

    def test_hopf_link(self):
        d = dt_to_diagram("(4) (2)")
        assert d.component_count == 2
        assert abs(linking_number(d, 0, 1)) == 1

    def test_round_trip_up_to_mirror(self):
        rng = seeded(13)
        for _ in range(30):
            d = random_diagram(rng, max_crossings=7, max_components=2, shuffle_moves=1)
            if d.crossing_count == 0 or d.unknotted_loops:
                continue
            try:
                code = diagram_to_dt(d)
            except InvalidPairing:
                continue
            crossings = {serialize_pd(e) for e in dt_embeddings(code)}
            assert crossings
            assert all(parse_pd(c).crossing_count == d.crossing_count for c in crossings)

    def test_loops_not_expressible(self):
        with pytest.raises(InvalidPairing):
            diagram_to_dt(parse_pd("X[1,1,2,2] U"))


class TestJSON:
    def test_round_trip(self):
        fl = framed_link_from_json('{"pd": "X[10,1,11,2] X[2,11,1,10]", "framings": [3, -1]}')
        obj = framed_link_to_json(fl)
        again = framed_link_from_json(json.dumps(obj))
        assert framed_link_to_json(again) == obj
        assert sorted(obj["framings"]) == [-1, 3]

    def test_framings_follow_components(self):
        d = parse_pd("X[10,1,11,2] X[2,11,1,10]")
        fl = FramedLink(d, (5, 7))
        obj = framed_link_to_json(fl)
        canon = parse_pd(obj["pd"])
        sizes = {len(c): f for c, f in zip(d.arc_components, (5, 7))}
        for comp, f in zip(canon.arc_components, obj["framings"]):
            if len(set(sizes)) == 2:
                assert sizes[len(comp)] == f

    def test_default_blackboard(self):
        fl = framed_link_from_json({"pd": TREFOIL_PD})
        assert fl.framings == (-3,)

    def test_list_pd(self):
        fl = framed_link_from_json({"pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]})
        assert serialize_pd(fl.diagram) == TREFOIL_PD

    def test_errors(self):
        with pytest.raises(ParseError):
            framed_link_from_json("{not json")
        with pytest.raises(ParseError):
            framed_link_from_json('{"framings": []}')
        with pytest.raises(FramingCountError):
            framed_link_from_json({"pd": TREFOIL_PD, "framings": [1, 2]})


@pytest.mark.parametrize(
    "text, crossings, components",
    [
        (TREFOIL_PD, 3, 1),
        ("O1+ U2+ | U1+ O2+", 2, 2),
        ("4 6 2", 3, 1),
        ('{"pd": "U"}', 0, 1),
        ("U", 0, 1),
    ],
)
def test_read_diagram_sniffs_format(text, crossings, components):
    d = read_diagram(text)
    assert (d.crossing_count, d.component_count) == (crossings, components)


def test_loop_only_diagram_serializes():
    assert serialize_pd(LinkDiagram((), 3)) == "U U U"
