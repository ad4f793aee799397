"""Expression data model, parser, and canonical printer."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubiclab.etaexpr import (
    EtaParseError,
    EtaQuotient,
    format_eta_expression,
    parse_eta_expression,
)


def test_quotient_canonicalization():
    eq = EtaQuotient(((4, -1), (1, 1), (4, 2), (7, 0)), coeff=3, q_power=2)
    assert eq.factors == ((1, 1), (4, 1))
    assert eq == EtaQuotient(((1, 1), (4, 1)), coeff=3, q_power=2)


def test_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(((0, 1),))
    with pytest.raises(ValueError):
        EtaQuotient((), q_power=-1)


def test_parse_single_quotient():
    terms = parse_eta_expression("f1/f4")
    assert terms == [EtaQuotient(((1, 1), (4, -1)))]


def test_parse_full_term():
    terms = parse_eta_expression("-2*q^2*f3*f18^2/(f6*f9)")
    assert terms == [EtaQuotient(((3, 1), (6, -1), (9, -1), (18, 2)), coeff=-2, q_power=2)]


def test_parse_sum():
    terms = parse_eta_expression("f9^2/f18 - 2*q*f3*f18^2/(f6*f9)")
    assert len(terms) == 2
    assert terms[0] == EtaQuotient(((9, 2), (18, -1)))
    assert terms[1] == EtaQuotient(((3, 1), (6, -1), (9, -1), (18, 2)), coeff=-2, q_power=1)


def test_parse_negative_exponent():
    assert parse_eta_expression("f3^-2") == [EtaQuotient(((3, -2),))]


def test_parse_leading_sign_and_integer():
    assert parse_eta_expression("-3") == [EtaQuotient((), coeff=-3)]
    assert parse_eta_expression("+q") == [EtaQuotient((), q_power=1)]


def test_parse_coefficients_multiply_through():
    assert parse_eta_expression("2*3*f1") == [EtaQuotient(((1, 1),), coeff=6)]


def test_parse_division_merges_exponents():
    assert parse_eta_expression("f2^5/(f1^2*f4^2)") == [EtaQuotient(((1, -2), (2, 5), (4, -2)))]
    assert parse_eta_expression("f1/f1") == [EtaQuotient(())]


def test_parse_error_zero_subscript():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f0^2")
    assert e.value.position == 1
    assert "subscript" in str(e.value)


def test_parse_error_missing_subscript():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f^2")
    assert e.value.position == 1


def test_parse_error_implicit_multiplication():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("2q")
    assert e.value.position == 1


def test_parse_error_q_in_denominator():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f1/q")
    assert e.value.position == 3
    assert "denominator" in str(e.value)
    with pytest.raises(EtaParseError):
        parse_eta_expression("f1/(f2*q)")


def test_parse_error_integer_in_denominator():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f1/2")
    assert "denominator" in str(e.value)


def test_parse_error_reports_position_and_expectation():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f1 + * f2")
    assert e.value.position == 5
    assert "expected" in str(e.value)
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f1 +")
    assert "end of input" in str(e.value)


def test_parse_error_unknown_character():
    with pytest.raises(EtaParseError) as e:
        parse_eta_expression("f1 & f2")
    assert e.value.position == 3


def test_parse_error_unbalanced_parens():
    with pytest.raises(EtaParseError):
        parse_eta_expression("f1/(f2*f3")
    with pytest.raises(EtaParseError):
        parse_eta_expression("(f1+f2)")  # sums only at top level


def test_format_simple():
    assert format_eta_expression([EtaQuotient(((1, 1), (4, -1)))]) == "f1/f4"
    assert format_eta_expression([EtaQuotient(((1, -2), (2, 5), (4, -2)))]) == "f2^5/(f1^2*f4^2)"
    assert format_eta_expression([]) == "0"


def test_format_signs_and_powers():
    terms = [
        EtaQuotient(((9, 2), (18, -1))),
        EtaQuotient(((3, 1), (6, -1), (9, -1), (18, 2)), coeff=-2, q_power=1),
    ]
    assert format_eta_expression(terms) == "f9^2/f18 - 2*q*f3*f18^2/(f6*f9)"


def test_format_bare_units():
    assert format_eta_expression([EtaQuotient(())]) == "1"
    assert format_eta_expression([EtaQuotient((), coeff=-1)]) == "-1"
    assert format_eta_expression([EtaQuotient(((4, -1),))]) == "1/f4"
    assert format_eta_expression([EtaQuotient((), q_power=3)]) == "q^3"


@st.composite
def quotients(draw):
    n_factors = draw(st.integers(min_value=0, max_value=4))
    factors = tuple(
        (draw(st.integers(min_value=1, max_value=36)), draw(st.integers(min_value=-6, max_value=6)))
        for _ in range(n_factors)
    )
    coeff = draw(st.integers(min_value=-40, max_value=40))
    q_power = draw(st.integers(min_value=0, max_value=8))
    return EtaQuotient(factors, coeff=coeff, q_power=q_power)


@settings(max_examples=200, deadline=None)
@given(st.lists(quotients(), min_size=1, max_size=5))
def test_format_parse_roundtrip(terms):
    assert parse_eta_expression(format_eta_expression(terms)) == terms
