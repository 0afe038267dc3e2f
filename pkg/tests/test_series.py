import random
from fractions import Fraction as F

import pytest

from twistdet import (
    AugmentationNotOne,
    AugmentationNotUnit,
    NeedsRationalCoefficients,
    RingMismatch,
    SeriesRing,
    formal_exp,
    formal_log,
)
from twistdet.randgen import random_fiber_one, random_kernel, random_unit

from conftest import one_letter


def poly(s):
    # one-letter series as {degree: coeff}
    return {len(w): c for w, c in s.terms.items()}


def test_from_terms_merges_and_truncates(qq):
    R = SeriesRing(qq, order=2)
    s = R.from_terms([("x", F(1)), ("x", F(2)), ("xxx", F(7)), ((), F(0))])
    assert s.terms == {(0,): F(3)}


def test_augmentation_and_lift(qq):
    R = SeriesRing(qq, order=3)
    assert R.lift(F(5)).augmentation() == F(5)
    assert R.zero().is_zero() and R.one().is_one()
    assert (R.one() + R.letter("x")).augmentation() == F(1)


def test_product_rule_untwisted(qq):
    R = SeriesRing(qq, order=4)
    x = R.letter("x")
    assert poly((R.one() + x) * (R.one() - x)) == {0: F(1), 2: F(-1)}
    assert poly(x.power(2)) == {2: F(1)}
    assert x.power(5).is_zero()


def test_twist_relation(m2):
    # defining rule: a*x = x*swap(a)
    R = one_letter(m2, 3, twist="swap")
    a = tuple(tuple(F(v) for v in row) for row in [[1, 2], [3, 4]])
    x = R.letter("x")
    assert R.lift(a) * x == x * R.lift(m2.automorphism("swap").apply(a))


def test_move_left_move_right_inverse(m2):
    R = SeriesRing(m2, alphabet=("x", "y"), twist={"x": "swap"}, order=4)
    a = tuple(tuple(F(v) for v in row) for row in [[0, 1], [2, 5]])
    for word in ((0,), (0, 1), (1, 0, 0)):
        assert R.move_left(word, R.move_right(word, a)) == a
        assert R.move_right(word, R.move_left(word, a)) == a


def test_twisted_word_product(m2):
    # (x*a)*(x*b) collects coefficients on the left: x a x b = xx swap(a) b
    R = one_letter(m2, 4, twist="swap")
    swap = m2.automorphism("swap")
    a = tuple(tuple(F(v) for v in row) for row in [[1, 1], [0, 1]])
    b = tuple(tuple(F(v) for v in row) for row in [[2, 0], [1, 1]])
    x = R.letter("x")
    lhs = (x * R.lift(a)) * (x * R.lift(b))
    rhs = R.from_terms([((0, 0), m2.mul(swap.inverse.apply(a), b))])
    # coefficient sits left of the word: x a = swap^-1(a) x
    assert lhs == rhs


def test_inverse_frozen_geometric(qq):
    R = SeriesRing(qq, order=4)
    u = R.one() + R.letter("x")
    assert poly(u.inverse()) == {0: F(1), 1: F(-1), 2: F(1), 3: F(-1), 4: F(1)}


def test_inverse_requires_unit_augmentation(qq, z6):
    R = SeriesRing(qq, order=3)
    with pytest.raises(AugmentationNotUnit):
        R.letter("x").inverse()
    Rz = SeriesRing(z6, order=3)
    u = Rz.lift(2) + Rz.letter("x")
    with pytest.raises(AugmentationNotUnit):
        u.inverse()


def test_inverse_random_two_sided(qq, m2, qc4, free_yz):
    rng = random.Random(11)
    rings = [
        SeriesRing(qq, alphabet=("x", "y"), order=3),
        one_letter(m2, 3, twist="swap"),
        one_letter(qc4, 3, twist="inv"),
        one_letter(free_yz, 3, twist="flip"),
    ]
    for R in rings:
        for _ in range(10):
            u = random_unit(R, rng)
            assert (u * u.inverse()).is_one()
            assert (u.inverse() * u).is_one()


def test_scale_and_map_coefficients(qc4):
    R = one_letter(qc4, 2)
    g = R.lift(qc4.parse_element_literal("g1"))
    s = (g * R.letter("x")).scale(F(3))
    assert s.coefficient("x") == qc4.parse_element_literal("3*g1")
    inv = qc4.automorphism("inv")
    assert s.map_coefficients(inv).coefficient("x") == qc4.parse_element_literal("3*g3")


def test_log_frozen(qq):
    R = SeriesRing(qq, order=5)
    u = R.one() + R.letter("x")
    assert poly(formal_log(u)) == {
        1: F(1), 2: F(-1, 2), 3: F(1, 3), 4: F(-1, 4), 5: F(1, 5)}


def test_log_exp_roundtrip(qq, m2, free_yz):
    rng = random.Random(12)
    for coeff in (qq, m2, free_yz):
        R = SeriesRing(coeff, alphabet=("x", "y"), order=4)
        for _ in range(8):
            u = random_fiber_one(R, rng)
            assert formal_exp(formal_log(u)) == u
            k = random_kernel(R, rng)
            assert formal_log(formal_exp(k)) == k


def test_log_needs_fiber_and_rationals(qq, z6):
    R = SeriesRing(qq, order=3)
    with pytest.raises(AugmentationNotOne):
        formal_log(R.lift(F(2)) + R.letter("x"))
    Rz = SeriesRing(z6, order=3)
    with pytest.raises(NeedsRationalCoefficients):
        formal_log(Rz.one() + Rz.letter("x"))


def test_commuting_letters_normalize(qq):
    R = SeriesRing(qq, alphabet=("x", "y"), order=3, letters_commute=True)
    x, y = R.letter("x"), R.letter("y")
    assert x * y == y * x
    assert (x * y).support() == [(0, 1)]


def test_commuting_letters_reject_twists(m2):
    with pytest.raises(ValueError):
        SeriesRing(m2, alphabet=("x",), twist={"x": "swap"}, order=2,
                   letters_commute=True)


def test_with_order_truncates(qq):
    R = SeriesRing(qq, order=4)
    u = (R.one() + R.letter("x")).power(3)
    v = u.truncated(2)
    assert poly(v) == {0: F(1), 1: F(3), 2: F(3)}
    assert R.with_order(2).order == 2


def test_cross_ring_operations_rejected(qq):
    R3 = SeriesRing(qq, order=3)
    R4 = SeriesRing(qq, order=4)
    with pytest.raises(RingMismatch):
        R3.one() + R4.one()
