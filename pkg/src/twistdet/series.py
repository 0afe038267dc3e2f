"""Truncated twisted power series over a coefficient ring.

A series ring fixes a coefficient ring A, an ordered alphabet of letters, a
twist (one named ring automorphism per letter), and a truncation order N:
words longer than N are discarded everywhere. Coefficients are stored on the
left of words. The defining relation is a*x = x*xi_x(a) for each letter x,
so moving a coefficient leftward past a word applies the inverse
automorphisms of its letters right-to-left.

The augmentation eps reads off the empty-word coefficient; it is a ring map
onto A with section lift(). A series is invertible exactly when eps of it is
a unit of A (the ring is local over the augmentation), and the inverse is a
finite geometric series because the augmentation ideal is nilpotent at any
finite order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    AugmentationNotOne,
    AugmentationNotUnit,
    LiteralSyntaxError,
    NeedsRationalCoefficients,
    RingMismatch,
)
from .rings import CoeffRing


def _grlex(word: tuple) -> tuple:
    return (len(word), word)


class SeriesRing:
    """A_xi<<X>> truncated at total word length `order`."""

    def __init__(self, coeff: CoeffRing, alphabet=("x",), twist=None, order=4,
                 letters_commute=False):
        alphabet = tuple(alphabet)
        if any(len(a) != 1 for a in alphabet) or len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet letters must be distinct single characters")
        if order < 0:
            raise ValueError("order must be >= 0")
        if twist is None:
            twist = {}
        if isinstance(twist, dict):
            names = tuple(twist.get(a, "id") for a in alphabet)
        else:
            names = tuple(twist)
            if len(names) != len(alphabet):
                raise ValueError("twist must name one automorphism per letter")
        self.coeff = coeff
        self.alphabet = alphabet
        self.twist_names = names
        self.order = order
        self.letters_commute = bool(letters_commute)
        self._autos = tuple(coeff.automorphism(n) for n in names)
        if self.letters_commute and any(n != "id" for n in names):
            raise ValueError("commuting letters require identity twists")
        self._letter_index = {a: i for i, a in enumerate(alphabet)}

    # -- identity ------------------------------------------------------------
    def signature(self) -> tuple:
        return (self.coeff.signature(), self.alphabet, self.twist_names,
                self.order, self.letters_commute)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        letters = ",".join(self.alphabet)
        return f"{self.coeff.name}<<{letters}>>@{self.order}"

    def with_order(self, order: int) -> "SeriesRing":
        if order == self.order:
            return self
        return SeriesRing(self.coeff, self.alphabet,
                          dict(zip(self.alphabet, self.twist_names)),
                          order, self.letters_commute)

    # -- words ----------------------------------------------------------------
    def letter_index(self, name: str) -> int:
        try:
            return self._letter_index[name]
        except KeyError:
            raise LiteralSyntaxError(f"unknown letter {name!r}") from None

    def word_from_str(self, text: str) -> tuple:
        return self.normalize_word(tuple(self.letter_index(ch) for ch in text))

    def word_to_str(self, word: tuple) -> str:
        return "".join(self.alphabet[i] for i in word)

    def normalize_word(self, word: tuple) -> tuple:
        return tuple(sorted(word)) if self.letters_commute else word

    def move_left(self, word: tuple, b):
        """Coefficient b moved from the right of `word` to its left.

        Applies the inverse twist automorphisms of the letters right-to-left,
        per x * b = xi_x^{-1}(b) * x.
        """
        for i in reversed(word):
            b = self._autos[i].inverse.apply(b)
        return b

    def move_right(self, word: tuple, a):
        """Coefficient a moved from the left of `word` to its right.

        Inverse of move_left: a * w = w * move_right(w, a).
        """
        for i in word:
            a = self._autos[i].apply(a)
        return a

    # -- constructors ---------------------------------------------------------
    def from_terms(self, terms) -> "TwistedSeries":
        A = self.coeff
        acc: dict[tuple, object] = {}
        for word, c in (terms.items() if isinstance(terms, dict) else terms):
            if isinstance(word, str):
                word = self.word_from_str(word)
            else:
                word = self.normalize_word(tuple(word))
            if len(word) > self.order:
                continue
            prev = acc.get(word, A.zero)
            acc[word] = A.add(prev, c)
        return TwistedSeries(self, {w: c for w, c in acc.items() if not A.is_zero(c)})

    def zero(self) -> "TwistedSeries":
        return TwistedSeries(self, {})

    def one(self) -> "TwistedSeries":
        return TwistedSeries(self, {(): self.coeff.one})

    def lift(self, a) -> "TwistedSeries":
        """The section of the augmentation: a constant series."""
        if self.coeff.is_zero(a):
            return self.zero()
        return TwistedSeries(self, {(): a})

    def letter(self, name: str) -> "TwistedSeries":
        idx = self.letter_index(name)
        if self.order < 1:
            return self.zero()
        return TwistedSeries(self, {(idx,): self.coeff.one})


class TwistedSeries:
    """An element of a SeriesRing: a finite map word -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SeriesRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basics ---------------------------------------------------------------
    def support(self) -> list[tuple]:
        return sorted(self.terms, key=_grlex)

    def coefficient(self, word):
        if isinstance(word, str):
            word = self.ring.word_from_str(word)
        return self.terms.get(tuple(word), self.ring.coeff.zero)

    def augmentation(self):
        return self.terms.get((), self.ring.coeff.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self == self.ring.one()

    def __eq__(self, other):
        return (isinstance(other, TwistedSeries) and self.ring == other.ring
                and self.terms == other.terms)

    __hash__ = None

    def __repr__(self):
        from .literals import render_series
        return f"<{render_series(self)}>"

    def _check_ring(self, other: "TwistedSeries"):
        if self.ring != other.ring:
            raise RingMismatch(f"operands live in {self.ring!r} and {other.ring!r}")

    # -- linear structure -------------------------------------------------------
    def __add__(self, other: "TwistedSeries") -> "TwistedSeries":
        self._check_ring(other)
        A = self.ring.coeff
        acc = dict(self.terms)
        for w, c in other.terms.items():
            s = A.add(acc.get(w, A.zero), c)
            if A.is_zero(s):
                acc.pop(w, None)
            else:
                acc[w] = s
        return TwistedSeries(self.ring, acc)

    def __neg__(self) -> "TwistedSeries":
        A = self.ring.coeff
        return TwistedSeries(self.ring, {w: A.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other: "TwistedSeries") -> "TwistedSeries":
        return self + (-other)

    def scale(self, q) -> "TwistedSeries":
        """Multiply every coefficient by a rational scalar."""
        A = self.ring.coeff
        q = Fraction(q)
        if q == 0:
            return self.ring.zero()
        return TwistedSeries(self.ring, {w: A.scalar_mul(q, c)
                                         for w, c in self.terms.items()})

    def map_coefficients(self, auto) -> "TwistedSeries":
        return TwistedSeries(self.ring, {w: auto.apply(c)
                                         for w, c in self.terms.items()})

    # -- multiplication ----------------------------------------------------------
    def __mul__(self, other: "TwistedSeries") -> "TwistedSeries":
        self._check_ring(other)
        R = self.ring
        A = R.coeff
        N = R.order
        acc: dict[tuple, object] = {}
        for v, a in self.terms.items():
            lv = len(v)
            for w, b in other.terms.items():
                if lv + len(w) > N:
                    continue
                c = A.mul(a, R.move_left(v, b))
                if A.is_zero(c):
                    continue
                word = R.normalize_word(v + w)
                s = A.add(acc.get(word, A.zero), c)
                if A.is_zero(s):
                    acc.pop(word, None)
                else:
                    acc[word] = s
        return TwistedSeries(self.ring, acc)

    def power(self, k: int) -> "TwistedSeries":
        if k < 0:
            raise ValueError("negative power; use inverse() first")
        acc = self.ring.one()
        for _ in range(k):
            acc = acc * self
        return acc

    # -- truncation ----------------------------------------------------------------
    def truncated(self, order: int) -> "TwistedSeries":
        ring = self.ring.with_order(order)
        return TwistedSeries(ring, {w: c for w, c in self.terms.items()
                                    if len(w) <= order})

    # -- inversion -------------------------------------------------------------------
    def inverse(self) -> "TwistedSeries":
        """Two-sided inverse via the finite geometric series.

        Requires eps of the series to be a unit of A. With
        alpha0 = eps(s)^{-1} s - 1 (which has augmentation 0), the inverse is
        (sum_{k<=N} (-alpha0)^k) * eps(s)^{-1}.
        """
        R = self.ring
        A = R.coeff
        e = self.augmentation()
        if not A.is_unit(e):
            raise AugmentationNotUnit(
                f"augmentation {e!r} is not a unit of {A.name}")
        einv = R.lift(A.invert(e))
        alpha0 = einv * self - R.one()
        acc = R.one()
        power = R.one()
        for _ in range(R.order):
            power = -(power * alpha0)
            if power.is_zero():
                break
            acc = acc + power
        return acc * einv


def formal_log(u: TwistedSeries) -> TwistedSeries:
    """log(u) = theta - theta^2/2 + theta^3/3 - ... for u = 1 + theta."""
    R = u.ring
    A = R.coeff
    if not A.contains_rationals:
        raise NeedsRationalCoefficients(f"formal log needs Q inside {A.name}")
    if not A.is_one(u.augmentation()):
        raise AugmentationNotOne("formal log needs augmentation exactly 1")
    theta = u - R.one()
    acc = R.zero()
    power = R.one()
    for k in range(1, R.order + 1):
        power = power * theta
        if power.is_zero():
            break
        acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
    return acc


def formal_exp(t: TwistedSeries) -> TwistedSeries:
    """exp(t) = 1 + t + t^2/2! + ... for t with augmentation 0."""
    R = t.ring
    A = R.coeff
    if not A.contains_rationals:
        raise NeedsRationalCoefficients(f"formal exp needs Q inside {A.name}")
    if not A.is_zero(t.augmentation()):
        raise AugmentationNotOne("formal exp needs augmentation exactly 0")
    acc = R.one()
    power = R.one()
    for k in range(1, R.order + 1):
        power = power * t
        if power.is_zero():
            break
        acc = acc + power.scale(Fraction(1, math.factorial(k)))
    return acc
