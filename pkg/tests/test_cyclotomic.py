import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fusionchar.cyclotomic import (ConductorError, CycloSyntaxError, Cyclotomic, add, conjugate,
                                   cyclotomic_polynomial, euler_phi, from_rational_vector, mul,
                                   neg, parse_cyclo, root_of_unity, sub, to_rational_vector)

SQRT2 = "E(8)+E(8)^7"


def test_rational_literal():
    two = parse_cyclo("2")
    assert two.conductor == 1
    assert two.coeffs == (Fraction(2),)


def test_sqrt2_squares_to_two():
    r = parse_cyclo(SQRT2)
    assert mul(r, r) == 2
    assert mul(r, r).is_rational()
    assert abs(complex(r) - 2 ** 0.5) < 1e-12


def test_i_squared():
    v = parse_cyclo("E(4)^2")
    assert v.conductor == 4
    assert v.coeffs == (Fraction(-1), Fraction(0))


def test_third_roots():
    assert mul(parse_cyclo("E(3)"), parse_cyclo("E(3)^2")) == 1


def test_conjugate_examples():
    assert conjugate(Cyclotomic.rational(Fraction(3, 7))) == Fraction(3, 7)
    assert conjugate(parse_cyclo("E(4)")).coeffs == (0, -1)
    r = parse_cyclo(SQRT2)
    assert conjugate(r).coeffs == r.coeffs


@pytest.mark.parametrize("n,poly", [
    (1, [-1, 1]),
    (2, [1, 1]),
    (8, [1, 0, 0, 0, 1]),
    (12, [1, 0, -1, 0, 1]),
    (9, [1, 0, 0, 1, 0, 0, 1]),
])
def test_cyclotomic_polynomial(n, poly):
    assert cyclotomic_polynomial(n) == poly


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.mark.parametrize("n", range(1, 41))
def test_product_of_cyclotomic_polynomials(n):
    prod = [1]
    for d in range(1, n + 1):
        if n % d == 0:
            prod = _polymul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (n - 1) + [1]
    assert len(cyclotomic_polynomial(n)) == euler_phi(n) + 1


@pytest.mark.parametrize("n", range(1, 51))
def test_root_of_unity_order(n):
    z = root_of_unity(n)
    assert z ** n == 1
    assert len(z.coeffs) == euler_phi(n)


def test_equality_across_conductors():
    assert parse_cyclo("E(4)") == parse_cyclo("E(8)^2")
    assert parse_cyclo("E(2)") == -1
    assert hash(parse_cyclo("E(6)^3")) == hash(Cyclotomic.rational(-1))
    assert hash(parse_cyclo("E(4)")) == hash(parse_cyclo("E(12)^3"))


def test_rational_vector_round_trip():
    v = parse_cyclo("1/2*E(8) - 3*E(8)^3 + 2")
    coords = to_rational_vector(v, 24)
    assert len(coords) == euler_phi(24)
    assert from_rational_vector(coords, 24) == v
    with pytest.raises(ConductorError):
        to_rational_vector(v, 12)


@pytest.mark.parametrize("text", ["E(0)", "1/0", "E(8", "E(8)^", "2 +", "E(4)/2", "(1+E(3)",
                                  "x", "E(-3)", "3 3"])
def test_parse_errors(text):
    with pytest.raises((CycloSyntaxError, ValueError)):
        parse_cyclo(text)


def test_parse_error_position():
    with pytest.raises(CycloSyntaxError) as info:
        parse_cyclo("1 + E(4) / 2")
    assert info.value.position == 9


def test_parse_grammar():
    assert parse_cyclo(" ( E(3) + E(3)^2 ) * -2 ") == 2
    assert parse_cyclo("E(5)^-1") == parse_cyclo("E(5)^4")
    assert parse_cyclo("-3/4") == Fraction(-3, 4)


def test_str_round_trip():
    for text in ["0", "-7/3", SQRT2, "E(3)-2*E(3)^2", "E(24)^5+1/3*E(8)"]:
        v = parse_cyclo(text)
        assert parse_cyclo(str(v)) == v


CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 16]


@st.composite
def cyclos(draw):
    n = draw(st.sampled_from(CONDUCTORS))
    small = st.builds(Fraction, st.integers(-100, 100), st.integers(1, 6))
    coeffs = draw(st.lists(small, min_size=euler_phi(n), max_size=euler_phi(n)))
    return Cyclotomic(n, coeffs)


def close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


@settings(max_examples=150, deadline=None)
@given(cyclos(), cyclos(), cyclos())
def test_ring_axioms(x, y, z):
    assert add(add(x, y), z) == add(x, add(y, z))
    assert add(x, y) == add(y, x)
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, y) == mul(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))
    assert add(x, neg(x)).is_zero()
    assert sub(x, y) == add(x, neg(y))


@settings(max_examples=150, deadline=None)
@given(cyclos(), cyclos())
def test_agrees_with_complex_embedding(x, y):
    assert close(add(x, y), complex(x) + complex(y))
    assert close(mul(x, y), complex(x) * complex(y))
    assert close(conjugate(x), complex(x).conjugate())


@settings(max_examples=100, deadline=None)
@given(cyclos(), cyclos())
def test_conjugation_is_an_involutive_automorphism(x, y):
    assert conjugate(conjugate(x)) == x
    assert conjugate(mul(x, y)) == mul(conjugate(x), conjugate(y))
    assert conjugate(add(x, y)) == add(conjugate(x), conjugate(y))
    norm = mul(x, conjugate(x))
    assert norm == conjugate(norm)


@settings(max_examples=100, deadline=None)
@given(cyclos(), st.sampled_from([24, 48, 240]))
def test_lift_preserves_value(x, m):
    if m % x.conductor:
        return
    up = x.lift(m)
    assert up == x and hash(up) == hash(x)
    assert close(up, x)


def test_roots_are_on_unit_circle():
    for n in (5, 7, 12):
        for k in range(n):
            z = root_of_unity(n, k)
            assert close(z, cmath.exp(2j * cmath.pi * k / n))


def test_rational_vector_examples():
    assert to_rational_vector(parse_cyclo(SQRT2), 8) == [0, 1, 0, -1]
    assert to_rational_vector(parse_cyclo("E(4)"), 8) == [0, 0, 1, 0]
    assert to_rational_vector(Cyclotomic.rational(5), 3) == [5, 0]
