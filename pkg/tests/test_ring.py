"""Ring substrate: exact arithmetic, ordering, serialization, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtmoments.ring import (
    LAMBDA,
    MissingVariable,
    Poly,
    Q,
    S,
    T,
    UnresolvedHalfPower,
    X,
)

from oracles import schoolbook_mul


# Random polynomials over a few variables with small degrees.
_exps = st.fixed_dictionaries(
    {},
    optional={
        "lambda": st.integers(0, 3),
        "t": st.integers(0, 3),
        "q": st.integers(0, 3),
        "x": st.integers(0, 2),
    },
)
_term = st.tuples(st.integers(-9, 9), _exps)
polys = st.lists(_term, max_size=6).map(Poly.from_terms)
rationals = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=7
)
points = st.fixed_dictionaries(
    {"lambda": rationals, "t": rationals, "q": rationals, "x": rationals}
)


def test_mul_binomial_square():
    assert (T + Q) * (T + Q) == T**2 + 2 * T * Q + Q**2


def test_mul_by_zero():
    assert Poly.zero() * (LAMBDA**3 + T) == Poly.zero()


def test_mul_against_schoolbook_oracle():
    a = [(1, {"lambda": 1}), (1, {})]           # lambda + 1
    b = [(1, {"lambda": 1}), (-1, {}), (2, {})]  # lambda - 1 + 2
    expected = schoolbook_mul(a, b)
    assert Poly.from_terms(a) * Poly.from_terms(b) == expected
    assert expected == LAMBDA**2 + 2 * LAMBDA + 1


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_mul_matches_schoolbook(a, b):
    a_terms = [(c, {k: v for k, v in zip(("lambda", "t", "q", "x", "s", "m"), m) if v})
               for m, c in a.terms()]
    b_terms = [(c, {k: v for k, v in zip(("lambda", "t", "q", "x", "s", "m"), m) if v})
               for m, c in b.terms()]
    assert a * b == schoolbook_mul(a_terms, b_terms)


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_eval_simple():
    assert (T + Q).eval({"q": Fraction(1, 2), "t": Fraction(3, 4)}) == Fraction(5, 4)
    assert (LAMBDA**2 + LAMBDA).eval({"lambda": 1}) == 2


def test_eval_missing_variable():
    with pytest.raises(MissingVariable):
        (T + Q).eval({"t": 1})


@given(polys, polys, points)
@settings(max_examples=60, deadline=None)
def test_eval_is_ring_homomorphism(a, b, pt):
    assert (a * b).eval(pt) == a.eval(pt) * b.eval(pt)
    assert (a + b).eval(pt) == a.eval(pt) + b.eval(pt)


def test_canonical_string_examples():
    assert (LAMBDA**2 + LAMBDA).canonical_str() == "lambda^2 + lambda"
    assert (T + Q).canonical_str() == "t + q"
    assert Poly.zero().canonical_str() == "0"
    assert (-LAMBDA + 1).canonical_str() == "-lambda + 1"
    assert (3 * LAMBDA * T**2).canonical_str() == "3*lambda*t^2"


def test_canonical_order_is_graded_then_lex():
    # degree decides first, then the fixed variable priority
    p = X**2 + LAMBDA * X + LAMBDA**2 + X
    assert p.canonical_str() == "lambda^2 + lambda*x + x^2 + x"


@given(polys)
@settings(max_examples=100, deadline=None)
def test_parse_round_trip(p):
    assert Poly.parse(p.canonical_str()) == p


@given(polys)
@settings(max_examples=100, deadline=None)
def test_json_round_trip(p):
    assert Poly.from_json_dict(p.to_json_dict()) == p


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_serialization_injective(a, b):
    if a != b:
        assert a.canonical_str() != b.canonical_str()


def test_json_shape():
    p = LAMBDA**2 * T + Poly.constant(12)
    assert p.to_json_dict() == {
        "terms": [
            {"coeff": "1", "exps": {"lambda": 2, "t": 1}},
            {"coeff": "12", "exps": {}},
        ]
    }


def test_half_power_resolution():
    assert (S**2).resolve_half_powers() == LAMBDA
    assert (S**4 * T).resolve_half_powers() == LAMBDA**2 * T
    with pytest.raises(UnresolvedHalfPower):
        (S**3).resolve_half_powers()
    with pytest.raises(UnresolvedHalfPower):
        (S * T).canonical_str()


def test_substitute():
    p = T**2 + Q
    assert p.substitute("t", 1) == Q + 1
    assert p.substitute("t", Q) == Q**2 + Q
    assert (LAMBDA * X**2).substitute("x", T + 1) == LAMBDA * (T**2 + 2 * T + 1)


def test_rename_swap():
    p = T**2 * Q + T
    assert p.rename({"t": "q", "q": "t"}) == Q**2 * T + Q


def test_coefficient_of():
    p = (T + 1) * X**2 + Q * X + 5
    assert p.coefficient_of("x", 2) == T + 1
    assert p.coefficient_of("x", 1) == Q
    assert p.coefficient_of("x", 0) == Poly.constant(5)


def test_pow_and_degree():
    p = (LAMBDA + T) ** 3
    assert p.degree() == 3
    assert p.degree("lambda") == 3
    assert Poly.zero().degree() == 0


def test_big_coefficients_are_exact():
    p = (LAMBDA + 1) ** 64
    assert p.coefficient_of("lambda", 32).as_int() == 1832624140942590534
