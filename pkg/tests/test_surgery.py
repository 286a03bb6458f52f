from fractions import Fraction

import pytest
import sympy
from helpers import random_diagram, seeded
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from framelink.codecs import parse_pd
from framelink.diagram import LinkDiagram
from framelink.errors import InvalidCoefficient, NonIntegerCoefficients, ZeroClass
from framelink.invariants import FramedLink, linking_matrix
from framelink.surgery import (
    INF,
    SurgeryDescription,
    coefficient,
    first_homology,
    format_coefficient,
    from_framed_link,
    normalize_coefficient,
    parse_coefficient,
    recognize_unknot_surgery,
    smith_normal_form,
    surgery_matrix,
)

UNKNOT = LinkDiagram((), 1)
TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
HOPF = parse_pd("X[4,1,3,2] X[2,3,1,4]")


def oracle_invariants(matrix):
    """Nonzero invariant factors from sympy, with the rank deficiency."""
    m = sympy.Matrix(matrix)
    diag = sympy_snf(m, domain=sympy.ZZ)
    n = min(diag.shape)
    values = [abs(int(diag[i, i])) for i in range(n)]
    return sorted(v for v in values if v), sum(1 for v in values if v == 0) + (max(diag.shape) - n)


class TestCoefficients:
    @pytest.mark.parametrize(
        "p, q, expected",
        [((-3), (-1), (3, 1)), (4, 2, (2, 1)), (0, -5, (0, 1)), (7, 0, (1, 0)), (3, -6, (-1, 2))],
    )
    def test_normalize(self, p, q, expected):
        assert normalize_coefficient(p, q) == expected

    def test_zero_class(self):
        with pytest.raises(ZeroClass):
            normalize_coefficient(0, 0)

    def test_parse(self):
        assert parse_coefficient("5/3") == Fraction(5, 3)
        assert parse_coefficient("-2") == -2
        assert parse_coefficient("inf") is INF
        assert parse_coefficient("4/-2") == -2
        assert coefficient(1, 0) == INF
        with pytest.raises(InvalidCoefficient):
            parse_coefficient("two")

    def test_format(self):
        assert [format_coefficient(c) for c in (Fraction(5, 3), Fraction(-2), INF)] == ["5/3", "-2", "inf"]

    def test_count_mismatch(self):
        with pytest.raises(InvalidCoefficient):
            SurgeryDescription(HOPF, (1,))

    def test_inf_single_component_only(self):
        with pytest.raises(InvalidCoefficient):
            SurgeryDescription(HOPF, ("inf", 1))


class TestRecognize:
    @pytest.mark.parametrize(
        "coeff, text",
        [
            ("0", "S2xS1"),
            ("1", "S3"),
            ("-1", "S3"),
            ("inf", "S3"),
            ("5", "Lens(5,1)"),
            ("-5", "Lens(5,1)"),
            ("-7/3", "Lens(7,3)"),
            ("7/3", "Lens(7,3)"),
            ("1/4", "S3"),
        ],
    )
    def test_unknot(self, coeff, text):
        assert str(recognize_unknot_surgery(SurgeryDescription(UNKNOT, (coeff,)))) == text

    def test_not_an_unknot(self):
        r = recognize_unknot_surgery(SurgeryDescription(TREFOIL, (1,)))
        assert r.tag == "Unknown" and r.evidence.startswith("NotAnUnknotDescription")
        r = recognize_unknot_surgery(SurgeryDescription(LinkDiagram((), 2), (0, 0)))
        assert r.tag == "Unknown"

    def test_kinked_unknot_is_unknown(self):
        r = recognize_unknot_surgery(SurgeryDescription(parse_pd("X[1,1,2,2]"), (1,)))
        assert r.tag == "Unknown"

    def test_lens_order_matches_homology(self):
        for p in range(2, 9):
            s = SurgeryDescription(UNKNOT, (p,))
            r = recognize_unknot_surgery(s)
            assert first_homology(s).order() == r.p


class TestHomology:
    def test_examples(self):
        assert str(first_homology(SurgeryDescription(UNKNOT, (0,)))) == "Z"
        assert str(first_homology(SurgeryDescription(UNKNOT, (5,)))) == "Z/5"
        assert str(first_homology(SurgeryDescription(UNKNOT, (1,)))) == "0"
        assert str(first_homology(SurgeryDescription(HOPF, (0, 0)))) == "0"
        assert str(first_homology(SurgeryDescription(LinkDiagram((), 2), (0, 0)))) == "Z + Z"
        assert str(first_homology(SurgeryDescription(LinkDiagram((), 2), (2, 4)))) == "Z/2 + Z/4"

    def test_non_integer(self):
        s = SurgeryDescription(UNKNOT, ("1/2",))
        with pytest.raises(NonIntegerCoefficients):
            surgery_matrix(s)
        with pytest.raises(NonIntegerCoefficients):
            first_homology(s)

    def test_matrix_is_linking_matrix(self):
        fl = FramedLink(HOPF, (3, -2))
        assert surgery_matrix(from_framed_link(fl)) == linking_matrix(fl)

    def test_random_against_oracle(self):
        rng = seeded(41)
        for _ in range(40):
            d = random_diagram(rng)
            framings = tuple(rng.randint(-4, 4) for _ in range(d.component_count))
            m = linking_matrix(FramedLink(d, framings))
            h = first_homology(from_framed_link(FramedLink(d, framings)))
            factors, rank = oracle_invariants(m)
            assert h.rank == rank
            assert list(h.torsion) == [f for f in factors if f > 1]


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda r: st.tuples(
            st.just(r),
            st.integers(1, 4),
        )
    ).flatmap(
        lambda rc: st.lists(
            st.lists(st.integers(-12, 12), min_size=rc[1], max_size=rc[1]),
            min_size=rc[0],
            max_size=rc[0],
        )
    )
)
def test_snf_matches_sympy(matrix):
    mine = smith_normal_form(matrix)
    factors, _ = oracle_invariants(matrix)
    assert sorted(x for x in mine if x) == factors
    nz = [x for x in mine if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
