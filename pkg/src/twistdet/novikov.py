"""Twisted Laurent-type series in one letter z with finitely many negative
powers, plus the degree-1-and-up logarithm invariant and its regrouping by
twisted conjugacy classes.

An element is stored as z^(-shift) * base where base is an ordinary
truncated series in z and shift >= 0. The representation is normalized:
whenever shift > 0 and the base is nonzero, the base has a nonzero z^0
coefficient. Stripping a factor z off the base shortens the reliable window
by one degree, so the base's truncation order drops with each strip; every
coefficient kept is exact. A zero base keeps its shift: the object then
asserts only that the window [-shift, order-shift] vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ClassRegroupIncompatible,
    LeadingCoeffNotUnit,
    NotInWOne,
    RingMismatch,
    TwistdetError,
    WindowUnderflow,
)
from .kgroup import CycLogVector, cyc_log
from .series import SeriesRing, TwistedSeries


def _letter_auto(ring: SeriesRing):
    return ring.coeff.automorphism(ring.twist_names[0])


def _apply_power(auto, a, k: int):
    """auto^k (a), with negative k meaning the inverse automorphism."""
    step = auto if k >= 0 else auto.inverse
    for _ in range(abs(k)):
        a = step.apply(a)
    return a


class NovikovSeries:
    """z^(-shift) * base, normalized so shift > 0 implies base(z^0) != 0."""

    __slots__ = ("base", "shift")

    def __init__(self, base: TwistedSeries, shift: int = 0):
        ring = base.ring
        if len(ring.alphabet) != 1:
            raise RingMismatch("Novikov elements need a one-letter series ring")
        if shift < 0:
            raise ValueError("shift must be >= 0")
        if not base.is_zero():
            auto = _letter_auto(ring)
            while shift > 0 and ring.coeff.is_zero(base.coefficient(())):
                base = _strip(base, 1, auto)
                shift -= 1
        self.base = base
        self.shift = shift

    # -- window ----------------------------------------------------------------
    @property
    def min_degree(self) -> int:
        return -self.shift

    @property
    def max_degree(self) -> int:
        return self.base.ring.order - self.shift

    def coefficient(self, d: int):
        """Exact coefficient of z^d; degrees above the window are unknown."""
        A = self.base.ring.coeff
        if d > self.max_degree:
            raise WindowUnderflow(
                f"degree {d} lies beyond the represented window "
                f"[{self.min_degree}, {self.max_degree}]")
        if d < self.min_degree:
            return A.zero
        raw = self.base.coefficient((0,) * (d + self.shift))
        return _apply_power(_letter_auto(self.base.ring), raw, self.shift)

    def is_zero(self) -> bool:
        return self.base.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.base.is_one()

    def matches_one_on_window(self) -> bool:
        """True iff every represented coefficient agrees with the constant 1.

        Weaker than is_one when the window misses degree 0."""
        A = self.base.ring.coeff
        for d in range(self.min_degree, self.max_degree + 1):
            c = self.coefficient(d)
            if not (A.is_one(c) if d == 0 else A.is_zero(c)):
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, NovikovSeries) and self.shift == other.shift
                and self.base == other.base)

    __hash__ = None

    def __repr__(self):
        letter = self.base.ring.alphabet[0]
        if self.shift == 0:
            return repr(self.base)
        return f"<{letter}^-{self.shift} * {repr(self.base)[1:-1]}>"

    @staticmethod
    def from_degree_map(ring: SeriesRing, degrees: dict) -> "NovikovSeries":
        """Build from {z-degree: coefficient}; negative degrees set the shift."""
        if len(ring.alphabet) != 1:
            raise RingMismatch("Novikov elements need a one-letter series ring")
        A = ring.coeff
        nonzero = {int(d): c for d, c in degrees.items() if not A.is_zero(c)}
        if not nonzero:
            return NovikovSeries(ring.zero(), 0)
        shift = max(0, -min(nonzero))
        if max(nonzero) + shift > ring.order:
            raise WindowUnderflow(
                f"degrees {min(nonzero)}..{max(nonzero)} span more than "
                f"order {ring.order} allows")
        auto = _letter_auto(ring)
        terms = [((0,) * (d + shift), _apply_power(auto, c, -shift))
                 for d, c in nonzero.items()]
        return NovikovSeries(ring.from_terms(terms), shift)


def _strip(base: TwistedSeries, j: int, auto) -> TwistedSeries:
    """base = z^j * result; drops the window's top j degrees."""
    ring = base.ring.with_order(base.ring.order - j)
    terms = [(word[j:], _apply_power(auto, c, j)) for word, c in base.terms.items()]
    return ring.from_terms(terms)


def _common_ring(u: NovikovSeries, v: NovikovSeries):
    ru, rv = u.base.ring, v.base.ring
    if (ru.coeff != rv.coeff or ru.alphabet != rv.alphabet
            or ru.twist_names != rv.twist_names):
        raise RingMismatch("Novikov operands live over different rings")


def nov_add(u: NovikovSeries, v: NovikovSeries) -> NovikovSeries:
    _common_ring(u, v)
    shift = max(u.shift, v.shift)
    order = min(u.base.ring.order + (shift - u.shift),
                v.base.ring.order + (shift - v.shift))
    ring = u.base.ring.with_order(order)
    auto = _letter_auto(ring)

    def aligned_terms(w: NovikovSeries):
        d = shift - w.shift
        return [((0,) * (len(word) + d), _apply_power(auto, c, -d))
                for word, c in w.base.terms.items()]

    total = ring.from_terms(aligned_terms(u) + aligned_terms(v))
    return NovikovSeries(total, shift)


def nov_neg(u: NovikovSeries) -> NovikovSeries:
    return NovikovSeries(u.base.scale(Fraction(-1)), u.shift)


def nov_sub(u: NovikovSeries, v: NovikovSeries) -> NovikovSeries:
    return nov_add(u, nov_neg(v))


def nov_mul(u: NovikovSeries, v: NovikovSeries, max_shift=None) -> NovikovSeries:
    """z^-(s+t) * (xi^-t applied to u.base) * v.base; window = min of operands."""
    _common_ring(u, v)
    shift = u.shift + v.shift
    if max_shift is not None and shift > max_shift:
        raise WindowUnderflow(
            f"product needs {shift} negative degrees, window allows {max_shift}")
    order = min(u.base.ring.order, v.base.ring.order)
    ring = u.base.ring.with_order(order)
    auto = _letter_auto(ring)
    left = ring.from_terms([(w, _apply_power(auto, c, -v.shift))
                            for w, c in u.base.terms.items()])
    right = ring.from_terms(list(v.base.terms.items()))
    return NovikovSeries(left * right, shift)


def nov_invert(u: NovikovSeries, max_shift=None) -> NovikovSeries:
    """Inverse when the lowest-degree coefficient is a unit of A."""
    if u.is_zero():
        raise LeadingCoeffNotUnit("zero has no inverse")
    ring = u.base.ring
    A = ring.coeff
    auto = _letter_auto(ring)
    j = min(len(w) for w in u.base.terms)
    lead = u.base.coefficient((0,) * j)
    if not A.is_unit(lead):
        raise LeadingCoeffNotUnit(
            f"leading coefficient at degree {j - u.shift} is not a unit of {A.name}")
    body = _strip(u.base, j, auto) if j else u.base
    inv_body = body.inverse()
    t = u.shift - j
    if t >= 0:
        if t > inv_body.ring.order:
            raise WindowUnderflow(
                "the inverse starts beyond the representable window")
        monomial = inv_body.ring.from_terms([((0,) * t, A.one)])
        result = NovikovSeries(inv_body * monomial, 0)
    else:
        if max_shift is not None and -t > max_shift:
            raise WindowUnderflow(
                f"inverse needs {-t} negative degrees, window allows {max_shift}")
        shifted = inv_body.map_coefficients(auto.inverse)
        for _ in range(-t - 1):
            shifted = shifted.map_coefficients(auto.inverse)
        result = NovikovSeries(shifted, -t)
    check = nov_mul(u, result)
    if not check.matches_one_on_window():
        raise TwistdetError("inverse failed its multiply-back check")
    return result


def w1_invariant(u: NovikovSeries) -> CycLogVector:
    """cyc_log of u for u in 1 + A[[z]]z (shift 0, constant term 1)."""
    if u.shift != 0:
        raise NotInWOne("element has negative z-degrees")
    if not u.base.ring.coeff.is_one(u.base.augmentation()):
        raise NotInWOne("constant term is not 1")
    return cyc_log(u.base)


@dataclass
class OrbitCountReport:
    """Exact rationals per (z-degree n, twisted conjugacy class of G).

    Classes at degree n are orbits of g ~ h g xi^n(h^-1), keyed by the name
    of the least element they contain.
    """

    order: int
    group_name: str
    twist_name: str
    lefschetz: bool
    entries: dict

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v != 0}

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, OrbitCountReport)
                and self.order == other.order
                and self.group_name == other.group_name
                and self.twist_name == other.twist_name
                and self.lefschetz == other.lefschetz
                and self.entries == other.entries)

    __hash__ = None

    def sorted_items(self):
        return sorted(self.entries.items())


def twisted_conjugacy_classes(group, perm, n: int) -> list[frozenset]:
    """Orbits of g -> h g perm^n(h^-1) over all h, as frozensets of indices."""
    def sigma_n(x: int) -> int:
        for _ in range(n):
            x = perm[x]
        return x

    seen, classes = set(), []
    for g in range(group.order):
        if g in seen:
            continue
        orbit = frozenset(group.mul(group.mul(h, g), sigma_n(group.inv[h]))
                          for h in range(group.order))
        classes.append(orbit)
        seen |= orbit
    return classes


def orbit_counts(u: NovikovSeries, lefschetz: bool = False) -> OrbitCountReport:
    """Regroup w1_invariant buckets by twisted conjugacy at each z-degree."""
    A = u.base.ring.coeff
    if A.kind != "group_algebra":
        raise ClassRegroupIncompatible(
            f"orbit counting needs group-algebra coefficients, got {A.name}")
    group = A.group
    auto = _letter_auto(u.base.ring)
    if auto.data == ("id",):
        perm = tuple(range(group.order))
    elif auto.data[0] == "gperm":
        perm = auto.data[1]
    else:
        raise ClassRegroupIncompatible(
            f"twist {auto.name!r} is not induced by a group automorphism")
    w = w1_invariant(u)
    plain = {group.names[min(cls)]: cls for cls in group.conjugacy_classes()}
    entries: dict = {}
    degrees = {len(word) for _, word in w.entries}
    twisted_at: dict[int, list] = {n: twisted_conjugacy_classes(group, perm, n)
                                   for n in degrees}
    for (label, word), q in w.entries.items():
        n = len(word)
        cls = plain[label]
        hits = [t for t in twisted_at[n] if cls & t]
        if len(hits) != 1 or not cls <= hits[0]:
            raise ClassRegroupIncompatible(
                f"plain class {label} splits across xi^{n}-twisted classes; "
                "per-element counts were already merged")
        key = (n, group.names[min(hits[0])])
        s = entries.get(key, Fraction(0)) + (q * n if lefschetz else q)
        if s == 0:
            entries.pop(key, None)
        else:
            entries[key] = s
    return OrbitCountReport(order=u.base.ring.order, group_name=group.name,
                            twist_name=auto.name, lefschetz=lefschetz,
                            entries=entries)
