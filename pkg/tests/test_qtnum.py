"""(q,t)-numbers: closed form, quotient identity, symmetry, specializations."""

from qtmoments.ring import Poly, Q, T
from qtmoments.qtnum import qt_factorial, qt_number

from oracles import inversion_sum


def test_small_values():
    assert qt_number(0) == Poly.zero()
    assert qt_number(1) == Poly.one()
    assert qt_number(2) == T + Q
    assert qt_number(3) == T**2 + T * Q + Q**2


def test_value_at_one_one():
    assert qt_number(5).eval({"q": 1, "t": 1}) == 5


def test_quotient_identity_up_to_50():
    # (t - q) [n] = t^n - q^n, checked exactly without ever dividing
    for n in range(51):
        assert (T - Q) * qt_number(n) == T**n - Q**n


def test_symmetry_in_q_and_t():
    for n in range(12):
        p = qt_number(n)
        assert p.rename({"q": "t", "t": "q"}) == p


def test_homogeneous_degree():
    for n in range(1, 12):
        p = qt_number(n)
        assert all(sum(mono) == n - 1 for mono, _ in p.terms())


def test_specializations():
    for n in range(10):
        # t = 1 gives the classical q-number 1 + q + ... + q^(n-1)
        q_number = Poly.from_terms((1, {"q": k}) for k in range(n))
        assert qt_number(n).substitute("t", 1) == q_number
        # q = 0 gives t^(n-1)
        expected = T ** (n - 1) if n else Poly.zero()
        assert qt_number(n).substitute("q", 0) == expected


def test_factorial_small():
    assert qt_factorial(0) == Poly.one()
    assert qt_factorial(1) == Poly.one()
    assert qt_factorial(2) == T + Q


def test_factorial_vs_permutation_oracle():
    # [1][2][3] equals the inversion generating polynomial of S_3
    assert qt_factorial(3) == inversion_sum(3)
    assert qt_factorial(4) == inversion_sum(4)
