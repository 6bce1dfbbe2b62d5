import math
import random
from fractions import Fraction

import pytest

from holant3.exact import QuadExt, demote, sqrt_exact
from holant3.errors import MixedRadicands, NegativeRadicand, NotRational


def test_sqrt_exact_perfect_squares_collapse():
    assert sqrt_exact(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_exact(0) == 0
    r = sqrt_exact(Fraction(2))
    assert isinstance(r, QuadExt) and r * r == 2


def test_sqrt_negative_rejected():
    with pytest.raises(NegativeRadicand):
        sqrt_exact(Fraction(-1))


def test_perfect_square_radicand_folds_to_rational():
    v = QuadExt(Fraction(1, 3), Fraction(2), Fraction(25, 16))
    assert v.coeff == 0
    assert v == Fraction(1, 3) + Fraction(2) * Fraction(5, 4)


def test_mixed_radicands_rejected():
    a = QuadExt(0, 1, 2)
    b = QuadExt(0, 1, 3)
    with pytest.raises(MixedRadicands):
        a + b
    # rational-valued elements mix with anything
    assert (QuadExt(5) + a) == QuadExt(5, 1, 2)


def test_rational_projection():
    assert demote(QuadExt(Fraction(7, 2))) == Fraction(7, 2)
    with pytest.raises(NotRational):
        QuadExt(0, 1, 5).to_fraction()


def test_rat_associativity_and_canonical_form():
    rng = random.Random(1)
    for _ in range(300):
        p = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        q = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        r = Fraction(rng.randint(-30, 30), rng.randint(1, 30))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert math.gcd(p.numerator, p.denominator) == 1 and p.denominator > 0


def _rand_quadext(rng, rad):
    return QuadExt(Fraction(rng.randint(-8, 8), rng.randint(1, 8)),
                   Fraction(rng.randint(-8, 8), rng.randint(1, 8)), rad)


def test_quadext_field_inverse():
    rng = random.Random(2)
    rad = Fraction(33)
    for _ in range(300):
        p = _rand_quadext(rng, rad)
        q = _rand_quadext(rng, rad)
        if p.is_zero():
            continue
        assert (p * q) * p.inverse() == q
        assert p * (1 / p) == 1


def test_quadext_sign_matches_float_on_1000_samples():
    rng = random.Random(3)
    rads = [Fraction(2), Fraction(33), Fraction(5, 7)]
    checked = 0
    for _ in range(2000):
        v = _rand_quadext(rng, rng.choice(rads))
        approx = float(v)
        if abs(approx) <= 1e-9:
            continue
        assert v.sign() == (1 if approx > 0 else -1)
        checked += 1
        if checked >= 1000:
            break
    assert checked >= 1000


def test_quadext_comparisons_and_pow():
    d = sqrt_exact(Fraction(2))
    assert d > 1 and d < 2 and d >= d
    assert d ** 4 == 4
    assert d ** -2 == Fraction(1, 2)
    assert (1 + d) * (1 - d) == -1


def test_quadext_zero_division():
    with pytest.raises(ZeroDivisionError):
        QuadExt(0, 0, 0).inverse()
