"""Commutator-group generators, the cyclic-word logarithm invariant, and
the endomorphism class invariant.

The units of augmentation 1 form a group; inside it sits the subgroup C
generated by elements (1+ab)(1+ba)^{-1}. cyc_log is a computable functional
that annihilates every such generator (for trace-compatible untwisted
coefficient rings), so unequal cyc_log values certify distinct C-cosets.
The converse direction is not claimed anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AugmentationNotOne,
    CommutationFailed,
    DimensionMismatch,
    FlavorViolated,
    NeedsTrace,
    NotInvertible,
    RingMismatch,
    TwistdetError,
)
from .matrices import SeriesMatrix, dieudonne_det
from .series import SeriesRing, TwistedSeries, formal_log

FLAVOR_A_KERNEL = "a_in_kernel"
FLAVOR_AB_BA_KERNEL = "ab_ba_in_kernel"
FLAVOR_BA_KERNEL = "ba_in_kernel"
FLAVOR_UNIT = "one_plus_ba_unit"
FLAVOR_B_UNIT = "b_unit"

FLAVORS = (
    FLAVOR_A_KERNEL,
    FLAVOR_AB_BA_KERNEL,
    FLAVOR_BA_KERNEL,
    FLAVOR_UNIT,
    FLAVOR_B_UNIT,
)


@dataclass
class CGenerator:
    """A pair (a, b) defining the group element (1+ab)(1+ba)^{-1}.

    The flavor names the defining condition the pair must satisfy. All
    flavors additionally require 1+ba to be a unit and the resulting element
    to have augmentation 1, which pins eps(ab) = eps(ba).
    """

    a: TwistedSeries
    b: TwistedSeries
    flavor: str = FLAVOR_AB_BA_KERNEL

    def __post_init__(self):
        a, b = self.a, self.b
        if a.ring != b.ring:
            raise RingMismatch("a and b live in different series rings")
        if self.flavor not in FLAVORS:
            raise FlavorViolated(f"unknown flavor {self.flavor!r}")
        A = a.ring.coeff
        ea, eb = a.augmentation(), b.augmentation()
        e_ab = A.mul(ea, eb)
        e_ba = A.mul(eb, ea)
        one_ba = A.add(A.one, e_ba)
        f = self.flavor
        if f == FLAVOR_A_KERNEL and not A.is_zero(ea):
            raise FlavorViolated("flavor needs eps(a) = 0")
        if f == FLAVOR_AB_BA_KERNEL and not (A.is_zero(e_ab) and A.is_zero(e_ba)):
            raise FlavorViolated("flavor needs eps(ab) = eps(ba) = 0")
        if f == FLAVOR_BA_KERNEL and not A.is_zero(e_ba):
            raise FlavorViolated("flavor needs eps(ba) = 0")
        if f == FLAVOR_B_UNIT and not A.is_unit(eb):
            raise FlavorViolated("flavor needs eps(b) to be a unit")
        if not A.is_unit(one_ba):
            raise NotInvertible("1 + ba is not invertible")
        if not A.is_zero(A.sub(e_ab, e_ba)):
            raise FlavorViolated(
                "eps(ab) != eps(ba): the element would leave the augmentation fiber")

    def element(self) -> TwistedSeries:
        ring = self.a.ring
        one = ring.one()
        ab = self.a * self.b
        ba = self.b * self.a
        return (one + ab) * (one + ba).inverse()


def c_generator(a: TwistedSeries, b: TwistedSeries,
                flavor: str = FLAVOR_AB_BA_KERNEL) -> TwistedSeries:
    """(1+ab)(1+ba)^{-1} after validating the flavor's conditions."""
    return CGenerator(a, b, flavor).element()


def vaserstein_transform(a: TwistedSeries, b: TwistedSeries, c: TwistedSeries):
    """Replace b by b' = b+c+bac without moving the group element.

    Needs ac = ca exactly. Returns (b', check) where check reports whether
    (1+ab)(1+ba)^{-1} == (1+ab')(1+b'a)^{-1} held exactly; it must.
    """
    ring = a.ring
    if b.ring != ring or c.ring != ring:
        raise RingMismatch("a, b, c must share one series ring")
    if a * c != c * a:
        raise CommutationFailed("a and c do not commute")
    A = ring.coeff
    one = ring.one()
    ac = a * c
    ba = b * a
    if not A.is_unit(A.add(A.one, ac.augmentation())):
        raise NotInvertible("1 + ac is not invertible")
    if not A.is_unit(A.add(A.one, ba.augmentation())):
        raise NotInvertible("1 + ba is not invertible")
    b2 = b + c + b * ac
    b2a = b2 * a
    if not A.is_unit(A.add(A.one, b2a.augmentation())):
        raise NotInvertible("1 + b'a is not invertible")
    lhs = (one + a * b) * (one + ba).inverse()
    rhs = (one + a * b2) * (one + b2a).inverse()
    return b2, lhs == rhs


def commutator_as_c_generator(alpha: TwistedSeries, beta: TwistedSeries):
    """(a, b) = (alpha*beta - alpha, alpha^{-1}), so that
    (1+ab)(1+ba)^{-1} = alpha beta alpha^{-1} beta^{-1}."""
    ring = alpha.ring
    if beta.ring != ring:
        raise RingMismatch("alpha and beta live in different series rings")
    A = ring.coeff
    if not A.is_unit(alpha.augmentation()):
        raise NotInvertible("alpha is not a unit")
    if not A.is_unit(beta.augmentation()):
        raise NotInvertible("beta is not a unit")
    a = alpha * beta - alpha
    b = alpha.inverse()
    one = ring.one()
    lhs = (one + a * b) * (one + b * a).inverse()
    rhs = alpha * beta * b * beta.inverse()
    if lhs != rhs:
        raise TwistdetError("commutator identity failed; ring arithmetic is broken")
    return a, b


@dataclass
class CycLogVector:
    """Exact rational vector indexed by (trace label, cyclic word class).

    Cyclic classes are keyed by the lexicographically least rotation of the
    word (letter indices compared in alphabet order). The empty word never
    appears: augmentation-1 inputs have no constant log term.
    """

    order: int
    entries: dict

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, CycLogVector) and self.order == other.order
                and self.entries == other.entries)

    __hash__ = None

    def __add__(self, other: "CycLogVector") -> "CycLogVector":
        if not isinstance(other, CycLogVector) or other.order != self.order:
            raise RingMismatch("cannot add cyclic-log vectors of different orders")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            s = acc.get(k, Fraction(0)) + v
            if s == 0:
                acc.pop(k, None)
            else:
                acc[k] = s
        return CycLogVector(self.order, acc)

    def __neg__(self) -> "CycLogVector":
        return CycLogVector(self.order, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "CycLogVector") -> "CycLogVector":
        return self + (-other)

    def sorted_items(self):
        return sorted(self.entries.items(),
                      key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0]))


def least_rotation(word: tuple) -> int:
    """Index r minimizing word[r:]+word[:r]; smallest such r on ties."""
    best, best_r = word, 0
    for r in range(1, len(word)):
        cand = word[r:] + word[:r]
        if cand < best:
            best, best_r = cand, r
    return best_r


def cyc_log(u: TwistedSeries) -> CycLogVector:
    """Trace-projected logarithm onto cyclic word classes.

    Each log term a*w contributes trace(move_right(prefix, a)) to the bucket
    of w's least rotation, where prefix is the part of w rotated to the end.
    Untwisted rings never adjust the coefficient.
    """
    ring = u.ring
    A = ring.coeff
    if not (A.has_trace and A.trace_is_rational):
        raise NeedsTrace(f"{A.name} has no rational-valued trace")
    if not A.is_one(u.augmentation()):
        raise AugmentationNotOne("cyc_log needs augmentation exactly 1")
    log_u = formal_log(u)
    entries = {}
    for word, coeff in log_u.terms.items():
        if not word:
            continue
        r = least_rotation(word)
        canon = word[r:] + word[:r]
        moved = ring.move_right(word[:r], coeff)
        for label, val in A.trace(moved).items():
            if val == 0:
                continue
            key = (label, ring.word_to_str(canon))
            s = entries.get(key, Fraction(0)) + val
            if s == 0:
                entries.pop(key, None)
            else:
                entries[key] = s
    return CycLogVector(ring.order, entries)


def coset_probably_equal(u: TwistedSeries, v: TwistedSeries) -> str:
    """'distinct' certifies different C-cosets; 'indistinguishable' proves
    nothing."""
    if u.ring != v.ring:
        raise RingMismatch("u and v live in different series rings")
    return "distinct" if cyc_log(u) != cyc_log(v) else "indistinguishable"


def one_minus_alpha_x(coeff, alpha, order: int) -> SeriesMatrix:
    """1 - alpha*x over the untwisted one-letter series ring at the given
    order, for alpha a square matrix over the coefficient ring."""
    alpha = tuple(tuple(row) for row in alpha)
    n = len(alpha)
    if n == 0 or any(len(row) != n for row in alpha):
        raise DimensionMismatch("alpha must be square and nonempty")
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = SeriesRing(coeff, ("x",), order=order)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = [((), coeff.one if i == j else coeff.zero),
                     ((0,), coeff.neg(alpha[i][j]))]
            row.append(ring.from_terms(terms))
        rows.append(row)
    return SeriesMatrix(ring, rows)


def endo_class_invariant(coeff, alpha, order: int) -> TwistedSeries:
    """D(1 - alpha*x): the class invariant of the endomorphism alpha."""
    return dieudonne_det(one_minus_alpha_x(coeff, alpha, order))


def exact_sequence_additivity_check(coeff, alpha, alpha2, coupling,
                                    order: int) -> bool:
    """D(1 - [[alpha, coupling], [0, alpha2]]x) == D(1-alpha*x)*D(1-alpha2*x),
    exactly. Holds for every coupling because the assembly is block
    upper-triangular."""
    alpha = tuple(tuple(row) for row in alpha)
    alpha2 = tuple(tuple(row) for row in alpha2)
    coupling = tuple(tuple(row) for row in coupling)
    n, m = len(alpha), len(alpha2)
    if len(coupling) != n or any(len(row) != m for row in coupling):
        raise DimensionMismatch(f"coupling must be {n}x{m}")
    big = []
    for i in range(n):
        big.append(tuple(alpha[i]) + tuple(coupling[i]))
    for i in range(m):
        big.append(tuple(coeff.zero for _ in range(n)) + tuple(alpha2[i]))
    left = endo_class_invariant(coeff, big, order)
    right = (endo_class_invariant(coeff, alpha, order)
             * endo_class_invariant(coeff, alpha2, order))
    return left == right
