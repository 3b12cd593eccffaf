import random
from fractions import Fraction

import pytest

from quivermult.scalars import (GaussianRational, Jet, as_exact, is_invertible,
                                tan_of, val_of)

from conftest import gr


def rand_gr(rng):
    return GaussianRational(Fraction(rng.randint(-9, 9), rng.randint(1, 5)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 5)))


def test_field_axioms_random():
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rand_gr(rng) for _ in range(3))
        assert a + (b + c) == (a + b) + c
        assert a * (b * c) == (a * b) * c
        assert a * (b + c) == a * b + a * c
        if b:
            assert (a / b) * b == a
        assert a - a == gr(0)


def test_lowest_terms_and_positive_denominator():
    x = GaussianRational(Fraction(2, 4), Fraction(-3, -6))
    assert x.re.denominator == 2 and x.re.numerator == 1
    assert x.im == Fraction(1, 2)
    assert x.re.denominator > 0


def test_complex_arith():
    i = gr(0, 1)
    assert i * i == gr(-1)
    assert (gr(1) + i) * (gr(1) - i) == gr(2)
    assert gr(1) / (gr(1) + i) == gr(Fraction(1, 2), Fraction(-1, 2))
    assert (gr(3, 4)).conjugate() == gr(3, -4)


def test_pow_and_zero_division():
    assert gr(2, 1) ** 3 == gr(2, 1) * gr(2, 1) * gr(2, 1)
    assert gr(2) ** -1 == gr(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        gr(1) / gr(0)


def test_jet_ring_rules():
    rng = random.Random(11)
    for _ in range(100):
        a, b, c, d = (rand_gr(rng) for _ in range(4))
        x, y = Jet(a, b), Jet(c, d)
        assert x * y == Jet(a * c, a * d + b * c)
        if c:
            assert (x / y) * y == x
        assert val_of(x + y) == a + c and tan_of(x + y) == b + d


def test_jet_projection_is_homomorphism():
    rng = random.Random(13)
    for _ in range(100):
        x = Jet(rand_gr(rng), rand_gr(rng))
        y = Jet(rand_gr(rng), rand_gr(rng))
        assert val_of(x * y) == val_of(x) * val_of(y)
        assert val_of(x + y) == val_of(x) + val_of(y)


def test_mixed_coercion():
    assert gr(1) + 1 == gr(2)
    assert 2 * Jet(gr(1), gr(3)) == Jet(gr(2), gr(6))
    assert Jet(gr(1)) + gr(1, 1) == Jet(gr(2, 1))
    assert as_exact(Fraction(1, 3)) == gr(Fraction(1, 3))


def test_invertibility_predicate():
    assert is_invertible(gr(5))
    assert not is_invertible(gr(0))
    assert is_invertible(Jet(gr(1), gr(0)))
    assert not is_invertible(Jet(gr(0), gr(7)))
