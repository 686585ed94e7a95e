from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperconv.values import (
    INF,
    ONE,
    ZERO,
    as_value,
    format_value,
    lambda_V_definitional,
    lambda_V_eval,
    oslash,
    parse_value,
    trunc_sub,
    vinf,
    vsup,
)

GRID = [ZERO, Fraction(1, 2), ONE, Fraction(2), INF]
values = st.sampled_from(GRID)
finite_values = st.sampled_from([v for v in GRID if v is not INF])


def test_parse_and_format():
    assert parse_value("1/2") == Fraction(1, 2)
    assert parse_value(" 3 ") == Fraction(3)
    assert parse_value("inf") is INF
    assert parse_value("∞") is INF
    assert format_value(Fraction(3, 2)) == "3/2"
    assert format_value(Fraction(4, 2)) == "2"
    assert format_value(INF) == "inf"


@pytest.mark.parametrize("text", ["-1", "1/0", "abc", "1.5", ""])
def test_parse_rejects_bad_literals(text):
    with pytest.raises(ValueError):
        parse_value(text)


def test_as_value():
    assert as_value(2) == Fraction(2)
    assert as_value("1/3") == Fraction(1, 3)
    assert as_value(INF) is INF
    with pytest.raises(ValueError):
        as_value(True)
    with pytest.raises(ValueError):
        as_value(-1)


def test_infinity_order_and_sum():
    assert INF > Fraction(10**9)
    assert not INF < INF
    assert INF <= INF
    assert INF + ONE is INF
    assert ONE + INF is INF
    assert max(ONE, INF) is INF


def test_trunc_sub_infinite_cases():
    assert trunc_sub(INF, INF) == ZERO
    assert trunc_sub(INF, ONE) is INF
    assert trunc_sub(ONE, INF) == ZERO
    assert trunc_sub(Fraction(3), ONE) == Fraction(2)
    assert trunc_sub(ONE, Fraction(3)) == ZERO


def test_oslash():
    assert oslash(ONE, INF) == ZERO
    assert oslash(ONE, ZERO) is INF
    assert oslash(ONE, Fraction(2)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        oslash(INF, ONE)


def test_empty_sup_and_inf():
    assert vsup([]) == ZERO
    assert vinf([]) is INF


@given(values, values, values)
def test_trunc_sub_galois(x, y, z):
    assert (trunc_sub(x, y) <= z) == (x <= y + z)


@given(finite_values, values)
def test_trunc_sub_never_exceeds_left(x, y):
    assert trunc_sub(x, y) <= x


@given(st.lists(values, min_size=1, max_size=4), values)
def test_lambda_V_closed_form_matches_definition(kernel, v):
    assert lambda_V_eval(kernel, v) == lambda_V_definitional(kernel, v, GRID)


any_value = st.one_of(st.just(INF), st.fractions(min_value=0, max_value=10, max_denominator=12))


@given(st.lists(any_value, min_size=1, max_size=5))
def test_reciprocal_of_inf_is_sup_of_reciprocals(A):
    assert oslash(ONE, vinf(A)) == vsup(oslash(ONE, a) for a in A)


@given(any_value, any_value)
def test_reciprocal_is_an_involutive_galois_pair(x, y):
    assert (oslash(ONE, x) <= y) == (oslash(ONE, y) <= x)


def test_reciprocal_laws_on_the_grid():
    for x in GRID:
        for y in GRID:
            assert (oslash(ONE, x) <= y) == (oslash(ONE, y) <= x)
    assert oslash(ONE, vinf([ZERO, ONE])) is INF
    assert oslash(ONE, vinf([INF])) == ZERO


def test_lambda_V_empty_kernel():
    with pytest.raises(ValueError):
        lambda_V_eval([], ONE)
