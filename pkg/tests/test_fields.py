from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfexp.fields import (
    DivisionByZero,
    FieldError,
    MalformedLiteral,
    cyclotomic_polynomial,
    is_prime,
    make_field,
    parse_field,
    parse_scalar,
    invert_scalar,
    primitive_root_of_unity,
)

Q = make_field("rational")
C3 = make_field("cyclotomic", 3)
C5 = make_field("cyclotomic", 5)
F7 = make_field("prime", 7)
F5 = make_field("prime", 5)

fracs = st.fractions(min_value=-999, max_value=999, max_denominator=50)


def cyc_elements(F):
    return st.lists(fracs, min_size=F.phi, max_size=F.phi).map(lambda cs: F(list(map(str, cs))))


# -- literals ----------------------------------------------------------------


def test_rational_literal_reduces():
    a = parse_scalar("-3/6", Q)
    assert a.payload == Fraction(-1, 2)
    assert a.encode() == "-1/2"


def test_cyclotomic_coefficients_give_zeta_squared():
    a = parse_scalar(["-1", "-1"], C3)
    assert a == C3.zeta() ** 2


def test_prime_literal_reduces():
    assert parse_scalar("9", F7).payload == 2
    assert parse_scalar("-1", F7).payload == 6


@pytest.mark.parametrize("bad", ["1/0", "abc", "", "1.5"])
def test_malformed_rational(bad):
    with pytest.raises(FieldError):
        parse_scalar(bad, Q)


def test_prime_field_rejects_unreducible_fraction():
    with pytest.raises(FieldError):
        parse_scalar("1/7", F7)


def test_field_descriptors():
    assert parse_field("rational") is Q
    assert parse_field("cyclotomic:3") is C3
    assert parse_field({"kind": "prime", "p": 7}) is F7
    assert parse_field("cyclotomic:1") == Q
    for bad in ("prime:8", "prime:1", "nope", {"kind": "prime", "p": "7"}):
        with pytest.raises(FieldError):
            parse_field(bad)
    assert is_prime(1_000_003) and not is_prime(561)


# -- inverses and roots of unity ------------------------------------------------


def test_inverses():
    assert invert_scalar(F7(2)).payload == 4
    assert invert_scalar(Q(Fraction(1, 2))).payload == 2
    assert invert_scalar(C3.zeta()) == C3.zeta() ** 2
    assert invert_scalar(C3.zeta()).encode() == ["-1", "-1"]
    with pytest.raises(DivisionByZero):
        invert_scalar(F7(0))


def test_primitive_roots():
    assert primitive_root_of_unity(Q, 2).payload == -1
    z = primitive_root_of_unity(F7, 3)
    assert z.payload == 2
    assert primitive_root_of_unity(Q, 3) is None
    assert primitive_root_of_unity(F7, 5) is None
    zeta = primitive_root_of_unity(C3, 3)
    assert zeta.multiplicative_order() == 3
    assert primitive_root_of_unity(C3, 6).multiplicative_order() == 6


def test_roots_of_unity_lists():
    assert sorted(F7.roots_of_unity(3)) == [1, 2, 4]
    assert sorted(Q.roots_of_unity(4)) == [-1, 1]
    assert len(C3.roots_of_unity(3)) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 30])
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in ref]


# -- field axioms ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs)
def test_rational_axioms(a, b, c):
    x, y, z = Q(a), Q(b), Q(c)
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    if y:
        assert (x / y) * y == x
    p = (x * y).payload
    assert p.denominator > 0 and Fraction(p.numerator, p.denominator) == p


@settings(max_examples=60, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_prime_axioms(a, b, c):
    x, y, z = F7(a), F7(b), F7(c)
    assert (x + y) * z == x * z + y * z
    assert (x - x) == 0
    assert x.payload == a % 7
    if y:
        assert y * y.inverse() == 1


def _poly(a):
    x = sympy.symbols("x")
    return sympy.Poly([sympy.Rational(str(c)) for c in a.payload.c[::-1]], x, domain="QQ")


def _phi(n):
    x = sympy.symbols("x")
    return sympy.Poly(sympy.cyclotomic_poly(n, x), x, domain="QQ")


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_cyclotomic_matches_sympy(data):
    F = C5
    a = data.draw(cyc_elements(F))
    b = data.draw(cyc_elements(F))
    assert _poly(a * b) == (_poly(a) * _poly(b)).rem(_phi(5))
    assert _poly(a + b) == (_poly(a) + _poly(b)).rem(_phi(5))
    if b:
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(st.lists(fracs, min_size=1, max_size=9))
def test_cyclotomic_payload_canonical(coeffs):
    """Reducing any power-basis list modulo Phi_3 agrees with sympy's remainder."""
    F = C3
    a = F.from_coefficients([str(c) for c in coeffs])
    x = sympy.symbols("x")
    f = sympy.Poly([sympy.Rational(str(c)) for c in coeffs[::-1]], x, domain="QQ")
    r = f.rem(sympy.Poly(x**2 + x + 1, x, domain="QQ")).all_coeffs()[::-1]
    r = r + [0] * (F.phi - len(r))
    assert list(a.c) == [Fraction(str(c)) for c in r]
    assert F(a.c and [str(c) for c in a.c]) == a


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldError):
        F7(1) + F5(1)
    with pytest.raises(MalformedLiteral):
        C3([])
