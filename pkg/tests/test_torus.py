from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from framelink.errors import NotALongitude
from framelink.torus import (
    PeripheralClass,
    TorusClass,
    framing_to_longitude,
    is_embeddable,
    longitude_to_framing,
    normalize,
    to_peripheral,
    to_torus_class,
)

ints = st.integers(-50, 50)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (1, 0, True),
        (0, 1, True),
        (2, 0, False),
        (2, 3, True),
        (4, 6, False),
        (-3, 5, True),
        (0, 0, True),
    ],
)
def test_embeddable_examples(a, b, expected):
    assert is_embeddable(TorusClass(a, b)) is expected


@given(ints, ints, st.integers(2, 6))
def test_multiples_never_embed(a, b, k):
    if (a, b) != (0, 0):
        assert not is_embeddable(TorusClass(k * a, k * b))


@given(ints, ints)
def test_embeddable_is_coprime(a, b):
    assert is_embeddable(TorusClass(a, b)) == (gcd(a, b) == 1 or a == b == 0)


@pytest.mark.parametrize(
    "given_, expected",
    [((-2, 3), (2, -3)), ((0, -1), (0, 1)), ((3, -1), (3, -1)), ((0, 0), (0, 0))],
)
def test_normalize_examples(given_, expected):
    assert normalize(TorusClass(*given_)) == TorusClass(*expected)


@given(ints, ints)
def test_normalize_is_sign_invariant(a, b):
    n = normalize(TorusClass(a, b))
    assert n == normalize(TorusClass(-a, -b))
    assert normalize(n) == n
    assert n.a > 0 or (n.a == 0 and n.b >= 0)


@given(ints)
def test_framing_longitude_round_trip(n):
    p = framing_to_longitude(n)
    assert p == PeripheralClass(n, 1)
    assert longitude_to_framing(p) == n


@pytest.mark.parametrize("coeffs", [(3, 2), (0, 0), (1, -1), (5, 0)])
def test_not_a_longitude(coeffs):
    with pytest.raises(NotALongitude):
        longitude_to_framing(PeripheralClass(*coeffs))


@given(ints, ints)
def test_basis_change_round_trip(a, b):
    t = TorusClass(a, b)
    assert to_torus_class(to_peripheral(t)) == t
    assert to_peripheral(TorusClass(1, 0)) == PeripheralClass(0, 1)


def test_peripheral_str():
    assert str(PeripheralClass(-2, 1)) == "-2[eta] + 1[gamma]"
