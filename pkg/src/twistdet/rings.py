"""Coefficient rings for the series engine.

Five exact-arithmetic ring instances share one interface: the rationals,
integers mod m, k x k rational matrices, rational group algebras of finite
groups, and a degree-truncated free associative algebra over Q. Elements are
immutable canonical values (Fraction, int, nested tuples); all operations go
through the ring object. Every ring carries a registry of named automorphisms
(with registered inverses) usable as letter twists by the series layer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .errors import LiteralSyntaxError, NeedsRationalCoefficients, NeedsTrace, NotAUnit


def frac_from_str(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralSyntaxError(f"bad rational literal {text!r}") from exc


class RingAutomorphism:
    """A named ring automorphism with a registered inverse."""

    def __init__(self, name: str, fn: Callable, data: tuple):
        self.name = name
        self._fn = fn
        self.data = data
        self.inverse: "RingAutomorphism" = self  # fixed up by _pair

    def apply(self, a):
        return self._fn(a)

    def __repr__(self):
        return f"RingAutomorphism({self.name})"


def _pair(fwd: RingAutomorphism, bwd: RingAutomorphism):
    fwd.inverse = bwd
    bwd.inverse = fwd
    return fwd, bwd


# ---------------------------------------------------------------------------
# Rational matrix helpers (shared by several rings)

def frac_matrix(rows: Iterable[Iterable]) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def frac_identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def frac_mat_mul(a, b) -> tuple:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def frac_mat_invert(rows) -> Optional[tuple]:
    """Gauss-Jordan inverse over Q; None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def int_det(rows) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


# ---------------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by its multiplication table.

    table[i][j] is the index of g_i * g_j. The table is validated on
    construction (identity, inverses, associativity).
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G"):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        n = len(self.table)
        self.order = n
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("group table must be square and nonempty")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise ValueError("group table entries out of range")
        idents = [e for e in range(n)
                  if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n))]
        if len(idents) != 1:
            raise ValueError("group table has no unique identity")
        self.identity = idents[0]
        self.inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                    self.inv[a] = b
            if self.inv[a] is None:
                raise ValueError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("group table is not associative")
        self.names = tuple(f"g{i}" for i in range(n))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def conjugacy_classes(self) -> list[frozenset]:
        n = self.order
        seen, classes = set(), []
        for g in range(n):
            if g in seen:
                continue
            cls = frozenset(self.table[self.table[h][g]][self.inv[h]] for h in range(n))
            classes.append(cls)
            seen |= cls
        return classes

    def class_of(self, g: int) -> frozenset:
        for cls in self.conjugacy_classes():
            if g in cls:
                return cls
        raise ValueError(g)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        n = self.order
        if sorted(perm) != list(range(n)):
            return False
        return all(self.table[perm[a]][perm[b]] == perm[self.table[a][b]]
                   for a in range(n) for b in range(n))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")


# ---------------------------------------------------------------------------


class CoeffRing:
    """Common interface of the coefficient rings."""

    kind: str = "?"
    name: str = "?"
    contains_rationals: bool = False
    has_trace: bool = False
    trace_is_rational: bool = False

    def __init__(self):
        self.automorphisms: dict[str, RingAutomorphism] = {}
        ident = RingAutomorphism("id", lambda a: a, ("id",))
        self.automorphisms["id"] = ident

    # -- registry ----------------------------------------------------------
    def automorphism(self, name: str) -> RingAutomorphism:
        try:
            return self.automorphisms[name]
        except KeyError:
            raise LiteralSyntaxError(
                f"ring {self.name} has no automorphism named {name!r}") from None

    def _register_pair(self, name, fn, data, inv_name, inv_fn, inv_data):
        fwd = RingAutomorphism(name, fn, data)
        bwd = RingAutomorphism(inv_name, inv_fn, inv_data)
        _pair(fwd, bwd)
        self.automorphisms[name] = fwd
        self.automorphisms[inv_name] = bwd
        return fwd

    # -- arithmetic (overridden) --------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def scalar_mul(self, q: Fraction, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def generating_elements(self) -> list:
        return []

    def is_central(self, a) -> bool:
        return all(self.mul(a, g) == self.mul(g, a) for g in self.generating_elements())

    def trace(self, a) -> dict:
        raise NeedsTrace(f"ring {self.name} has no trace")

    # -- matrices over the ring (lists of lists of elements) ----------------
    def emat_identity(self, n: int):
        return tuple(tuple(self.one if i == j else self.zero for j in range(n))
                     for i in range(n))

    def emat_mul(self, a, b):
        n, k, m = len(a), len(b), len(b[0]) if b else 0
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.zero
                for t in range(k):
                    acc = self.add(acc, self.mul(a[i][t], b[t][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def mat_is_invertible(self, rows) -> bool:
        raise NotImplementedError

    def mat_invert(self, rows):
        raise NotImplementedError

    # -- sampling ------------------------------------------------------------
    def random_element(self, rng):
        raise NotImplementedError

    def random_unit(self, rng):
        raise NotImplementedError

    def random_central(self, rng):
        return self.scalar_mul(Fraction(rng.randint(-4, 4)), self.one)

    # -- serialization ---------------------------------------------------------
    def element_to_json(self, a):
        raise NotImplementedError

    def element_from_json(self, data):
        raise NotImplementedError

    def element_to_literal(self, a) -> str:
        raise NotImplementedError

    def parse_element_literal(self, text: str):
        raise NotImplementedError

    def signature(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return self.name


class RationalField(CoeffRing):
    """Q with Fraction elements."""

    kind = "rational"
    contains_rationals = True
    has_trace = True
    trace_is_rational = True

    def __init__(self):
        super().__init__()
        self.name = "Q"
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, q, a):
        return Fraction(q) * a

    def is_unit(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise NotAUnit("0 is not a unit of Q")
        return 1 / Fraction(a)

    def trace(self, a):
        return {} if a == 0 else {"1": Fraction(a)}

    def mat_is_invertible(self, rows):
        return frac_mat_invert(rows) is not None

    def mat_invert(self, rows):
        inv = frac_mat_invert(rows)
        if inv is None:
            raise NotAUnit("singular matrix over Q")
        return inv

    def random_element(self, rng):
        return Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))

    def random_unit(self, rng):
        while True:
            a = self.random_element(rng)
            if a != 0:
                return a

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, data):
        if not isinstance(data, str):
            raise LiteralSyntaxError(f"rational coefficient must be a string, got {data!r}")
        return frac_from_str(data)

    def element_to_literal(self, a):
        return str(a)

    def parse_element_literal(self, text):
        return frac_from_str(text)

    def signature(self):
        return ("rationals",)


class IntegersMod(CoeffRing):
    """Z/m with int elements in [0, m). Trace exists but is not rational."""

    kind = "int_mod"
    contains_rationals = False
    has_trace = True
    trace_is_rational = False

    def __init__(self, modulus: int):
        super().__init__()
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        self.modulus = modulus
        self.name = f"Z/{modulus}"
        self.zero = 0
        self.one = 1 % modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def scalar_mul(self, q, a):
        q = Fraction(q)
        if q.denominator != 1:
            raise NeedsRationalCoefficients(
                f"cannot scale by {q} over {self.name}")
        return (q.numerator * a) % self.modulus

    def is_unit(self, a):
        return math.gcd(a % self.modulus, self.modulus) == 1

    def invert(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit of {self.name}")
        return pow(a % self.modulus, -1, self.modulus)

    def trace(self, a):
        return {} if a % self.modulus == 0 else {"1": a % self.modulus}

    def mat_is_invertible(self, rows):
        return math.gcd(int_det(rows) % self.modulus, self.modulus) == 1

    def mat_invert(self, rows):
        n = len(rows)
        d = int_det(rows) % self.modulus
        if math.gcd(d, self.modulus) != 1:
            raise NotAUnit(f"matrix determinant {d} is not a unit of {self.name}")
        dinv = pow(d, -1, self.modulus)
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[rows[r][c] for c in range(n) if c != j]
                         for r in range(n) if r != i]
                cof = (-1) ** (i + j) * int_det(minor)
                out[j][i] = (cof * dinv) % self.modulus
        return tuple(tuple(row) for row in out)

    def random_element(self, rng):
        return rng.randrange(self.modulus)

    def random_unit(self, rng):
        while True:
            a = rng.randrange(self.modulus)
            if self.is_unit(a):
                return a

    def element_to_json(self, a):
        return int(a)

    def element_from_json(self, data):
        if not isinstance(data, int) or isinstance(data, bool):
            raise LiteralSyntaxError(f"Z/m coefficient must be an integer, got {data!r}")
        return data % self.modulus

    def element_to_literal(self, a):
        return str(a % self.modulus)

    def parse_element_literal(self, text):
        try:
            return int(text.strip()) % self.modulus
        except ValueError as exc:
            raise LiteralSyntaxError(f"bad Z/m literal {text!r}") from exc

    def signature(self):
        return ("zmod", self.modulus)


class RationalMatrixRing(CoeffRing):
    """M_k(Q): k x k matrices of Fractions, stored as nested tuples.

    Automorphisms: inner (conjugation by an invertible matrix), registered by
    name together with the inverse conjugation.
    """

    kind = "matrix"
    contains_rationals = True
    has_trace = True
    trace_is_rational = True

    def __init__(self, size: int):
        super().__init__()
        if size < 1:
            raise ValueError("matrix size must be >= 1")
        self.size = size
        self.name = f"M{size}(Q)"
        self.zero = tuple(tuple(Fraction(0) for _ in range(size)) for _ in range(size))
        self.one = frac_identity(size)
        self._conjugators: dict[str, tuple] = {}

    def register_conjugation(self, name: str, matrix) -> RingAutomorphism:
        p = frac_matrix(matrix)
        pinv = frac_mat_invert(p)
        if pinv is None:
            raise NotAUnit("conjugating matrix must be invertible")
        fwd = self._register_pair(
            name, lambda a, p=p, pinv=pinv: frac_mat_mul(frac_mat_mul(p, a), pinv),
            ("conj", _mat_key(p)),
            name + "^-1", lambda a, p=p, pinv=pinv: frac_mat_mul(frac_mat_mul(pinv, a), p),
            ("conj", _mat_key(pinv)))
        self._conjugators[name] = p
        return fwd

    def add(self, a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def neg(self, a):
        return tuple(tuple(-x for x in row) for row in a)

    def mul(self, a, b):
        return frac_mat_mul(a, b)

    def scalar_mul(self, q, a):
        q = Fraction(q)
        return tuple(tuple(q * x for x in row) for row in a)

    def is_unit(self, a):
        return frac_mat_invert(a) is not None

    def invert(self, a):
        inv = frac_mat_invert(a)
        if inv is None:
            raise NotAUnit(f"singular element of {self.name}")
        return inv

    def generating_elements(self):
        k = self.size
        gens = []
        for i in range(k):
            for j in range(k):
                gens.append(tuple(tuple(Fraction(int(r == i and c == j))
                                        for c in range(k)) for r in range(k)))
        return gens

    def trace(self, a):
        t = sum((a[i][i] for i in range(self.size)), Fraction(0))
        return {} if t == 0 else {"tr": t}

    def _flatten(self, rows):
        n = len(rows)
        k = self.size
        big = [[Fraction(0)] * (n * k) for _ in range(n * k)]
        for i in range(n):
            for j in range(n):
                blk = rows[i][j]
                for r in range(k):
                    for c in range(k):
                        big[i * k + r][j * k + c] = blk[r][c]
        return tuple(tuple(row) for row in big)

    def _unflatten(self, big, n):
        k = self.size
        return tuple(tuple(
            tuple(tuple(big[i * k + r][j * k + c] for c in range(k)) for r in range(k))
            for j in range(n)) for i in range(n))

    def mat_is_invertible(self, rows):
        return frac_mat_invert(self._flatten(rows)) is not None

    def mat_invert(self, rows):
        inv = frac_mat_invert(self._flatten(rows))
        if inv is None:
            raise NotAUnit(f"singular matrix over {self.name}")
        return self._unflatten(inv, len(rows))

    def random_element(self, rng):
        return tuple(tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2)))
                           for _ in range(self.size)) for _ in range(self.size))

    def random_unit(self, rng):
        while True:
            a = self.random_element(rng)
            if self.is_unit(a):
                return a

    def random_central(self, rng):
        return self.scalar_mul(Fraction(rng.randint(-4, 4)), self.one)

    def element_to_json(self, a):
        return [[str(x) for x in row] for row in a]

    def element_from_json(self, data):
        if (not isinstance(data, list) or len(data) != self.size
                or any(not isinstance(row, list) or len(row) != self.size for row in data)):
            raise LiteralSyntaxError(f"matrix coefficient must be {self.size}x{self.size}")
        return tuple(tuple(frac_from_str(x) if isinstance(x, str) else Fraction(x)
                           for x in row) for row in data)

    def element_to_literal(self, a):
        return ";".join(",".join(str(x) for x in row) for row in a)

    def parse_element_literal(self, text):
        rows = [part.split(",") for part in text.split(";")]
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise LiteralSyntaxError(
                f"matrix literal must have {self.size} rows of {self.size} entries")
        return tuple(tuple(frac_from_str(x) for x in row) for row in rows)

    def signature(self):
        conj = tuple(sorted((n, _mat_key(p)) for n, p in self._conjugators.items()))
        return ("matrix", self.size, conj)


def _mat_key(rows) -> tuple:
    return tuple(tuple(str(x) for x in row) for row in rows)


class GroupAlgebra(CoeffRing):
    """Q[G] for a finite group G given by its multiplication table.

    Elements: sorted tuples of (element index, nonzero Fraction). Units are
    decided through the left regular representation. The trace is the full
    conjugacy-class vector; the identity-class component is the classical
    trace functional. Automorphisms are induced by group automorphisms
    (permutations preserving the table).
    """

    kind = "group_algebra"
    contains_rationals = True
    has_trace = True
    trace_is_rational = True

    def __init__(self, group: FiniteGroup):
        super().__init__()
        self.group = group
        self.name = f"Q[{group.name}]"
        self.zero = ()
        self.one = ((group.identity, Fraction(1)),)
        self._classes = group.conjugacy_classes()
        self._class_label = {}
        for cls in self._classes:
            label = group.names[min(cls)]
            for g in cls:
                self._class_label[g] = label
        self._perms: dict[str, tuple] = {}

    def register_group_automorphism(self, name: str, perm: Sequence[int]) -> RingAutomorphism:
        perm = tuple(int(x) for x in perm)
        if not self.group.is_automorphism(perm):
            raise ValueError(f"{perm} is not an automorphism of {self.group.name}")
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        inv = tuple(inv)

        def apply(a, perm=perm):
            return _galg_canon((perm[g], c) for g, c in a)

        def apply_inv(a, inv=inv):
            return _galg_canon((inv[g], c) for g, c in a)

        fwd = self._register_pair(name, apply, ("gperm", perm),
                                  name + "^-1", apply_inv, ("gperm", inv))
        self._perms[name] = perm
        return fwd

    def add(self, a, b):
        acc = dict(a)
        for g, c in b:
            acc[g] = acc.get(g, Fraction(0)) + c
        return _galg_canon(acc.items())

    def neg(self, a):
        return tuple((g, -c) for g, c in a)

    def mul(self, a, b):
        acc: dict[int, Fraction] = {}
        table = self.group.table
        for g, c in a:
            row = table[g]
            for h, d in b:
                k = row[h]
                acc[k] = acc.get(k, Fraction(0)) + c * d
        return _galg_canon(acc.items())

    def scalar_mul(self, q, a):
        q = Fraction(q)
        if q == 0:
            return ()
        return tuple((g, q * c) for g, c in a)

    def basis_element(self, g: int):
        return ((g % self.group.order, Fraction(1)),)

    def coefficient(self, a, g: int) -> Fraction:
        for h, c in a:
            if h == g:
                return c
        return Fraction(0)

    def generating_elements(self):
        return [self.basis_element(g) for g in range(self.group.order)]

    def regular_representation(self, a):
        n = self.group.order
        mat = [[Fraction(0)] * n for _ in range(n)]
        for g, c in a:
            for j in range(n):
                mat[self.group.table[g][j]][j] += c
        return tuple(tuple(row) for row in mat)

    def _from_matrix_column(self, big, col_base, row_base):
        e = self.group.identity
        n = self.group.order
        return _galg_canon((i, big[row_base + i][col_base + e]) for i in range(n))

    def is_unit(self, a):
        return frac_mat_invert(self.regular_representation(a)) is not None

    def invert(self, a):
        inv = frac_mat_invert(self.regular_representation(a))
        if inv is None:
            raise NotAUnit(f"non-unit of {self.name}")
        n = self.group.order
        e = self.group.identity
        return _galg_canon((i, inv[i][e]) for i in range(n))

    def trace(self, a):
        acc: dict[str, Fraction] = {}
        for g, c in a:
            label = self._class_label[g]
            acc[label] = acc.get(label, Fraction(0)) + c
        return {k: v for k, v in sorted(acc.items()) if v != 0}

    def mat_is_invertible(self, rows):
        return frac_mat_invert(self._flatten(rows)) is not None

    def _flatten(self, rows):
        n = len(rows)
        k = self.group.order
        big = [[Fraction(0)] * (n * k) for _ in range(n * k)]
        for i in range(n):
            for j in range(n):
                rep = self.regular_representation(rows[i][j])
                for r in range(k):
                    for c in range(k):
                        big[i * k + r][j * k + c] = rep[r][c]
        return tuple(tuple(row) for row in big)

    def mat_invert(self, rows):
        big = frac_mat_invert(self._flatten(rows))
        if big is None:
            raise NotAUnit(f"singular matrix over {self.name}")
        n = len(rows)
        k = self.group.order
        return tuple(tuple(self._from_matrix_column(big, j * k, i * k)
                           for j in range(n)) for i in range(n))

    def random_element(self, rng):
        n = self.group.order
        picks = rng.sample(range(n), k=min(n, rng.randint(1, 3)))
        return _galg_canon((g, Fraction(rng.randint(-3, 3))) for g in picks)

    def random_unit(self, rng):
        while True:
            a = self.add(self.scalar_mul(Fraction(rng.randint(1, 4)), self.one),
                         self.random_element(rng))
            if self.is_unit(a):
                return a

    def random_central(self, rng):
        acc = ()
        for cls in self._classes:
            q = Fraction(rng.randint(-2, 2))
            if q:
                acc = self.add(acc, tuple((g, q) for g in sorted(cls)))
        return acc

    def element_to_json(self, a):
        return [[g, str(c)] for g, c in a]

    def element_from_json(self, data):
        if not isinstance(data, list):
            raise LiteralSyntaxError("group algebra coefficient must be a list of pairs")
        out = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise LiteralSyntaxError(f"bad group algebra term {item!r}")
            g, c = item
            if not isinstance(g, int) or not (0 <= g < self.group.order):
                raise LiteralSyntaxError(f"bad group element index {g!r}")
            out.append((g, frac_from_str(c) if isinstance(c, str) else Fraction(c)))
        return _galg_canon(out)

    def element_to_literal(self, a):
        if not a:
            return "0"
        parts = []
        for g, c in a:
            name = self.group.names[g]
            if c == 1:
                term = name
            elif c == -1:
                term = f"-{name}"
            else:
                term = f"{c}*{name}"
            parts.append(term)
        text = "+".join(parts)
        return text.replace("+-", "-")

    def parse_element_literal(self, text):
        acc = self.zero
        for sign, body in _split_terms(text):
            q, name = _split_coeff(body)
            if name is None:
                term = self.scalar_mul(sign * q, self.one)
            else:
                if not name.startswith("g"):
                    raise LiteralSyntaxError(f"bad group element name {name!r}")
                try:
                    idx = int(name[1:])
                except ValueError:
                    raise LiteralSyntaxError(f"bad group element name {name!r}") from None
                if not (0 <= idx < self.group.order):
                    raise LiteralSyntaxError(f"group element {name!r} out of range")
                term = self.scalar_mul(sign * q, self.basis_element(idx))
            acc = self.add(acc, term)
        return acc

    def signature(self):
        perms = tuple(sorted((n, p) for n, p in self._perms.items()))
        return ("group_algebra", self.group.table, perms)


def _galg_canon(pairs) -> tuple:
    acc: dict[int, Fraction] = {}
    for g, c in pairs:
        acc[g] = acc.get(g, Fraction(0)) + c
    return tuple((g, acc[g]) for g in sorted(acc) if acc[g] != 0)


class TruncatedFreeAlgebra(CoeffRing):
    """Q<gens> / (words of degree > max_degree).

    Elements: graded-lex sorted tuples of (word, nonzero Fraction) where a
    word is a tuple of generator indices. Units are elements with nonzero
    scalar part; the ideal of positive-degree terms is nilpotent, so inverses
    come from a finite geometric series. The trace is the projection onto
    cyclic word classes. Automorphisms: permutations of the generators.
    """

    kind = "free_trunc"
    contains_rationals = True
    has_trace = True
    trace_is_rational = True

    def __init__(self, generators: Sequence[str], max_degree: int):
        super().__init__()
        gens = tuple(generators)
        if not gens or any(len(g) != 1 for g in gens) or len(set(gens)) != len(gens):
            raise ValueError("generators must be distinct single characters")
        if max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        self.generators = gens
        self.max_degree = max_degree
        self.name = f"Q<{','.join(gens)}>/deg>{max_degree}"
        self.zero = ()
        self.one = (((), Fraction(1)),)
        self._gen_index = {g: i for i, g in enumerate(gens)}
        self._perms: dict[str, tuple] = {}

    def register_generator_permutation(self, name: str, perm: Sequence[int]) -> RingAutomorphism:
        perm = tuple(int(x) for x in perm)
        if sorted(perm) != list(range(len(self.generators))):
            raise ValueError("bad generator permutation")
        inv = [0] * len(perm)
        for i, p in enumerate(perm):
            inv[p] = i
        inv = tuple(inv)

        def apply(a, perm=perm):
            return _free_canon((tuple(perm[i] for i in w), c) for w, c in a)

        def apply_inv(a, inv=inv):
            return _free_canon((tuple(inv[i] for i in w), c) for w, c in a)

        fwd = self._register_pair(name, apply, ("fperm", perm),
                                  name + "^-1", apply_inv, ("fperm", inv))
        self._perms[name] = perm
        return fwd

    def word(self, text: str) -> tuple:
        try:
            w = tuple(self._gen_index[ch] for ch in text)
        except KeyError as exc:
            raise LiteralSyntaxError(f"unknown generator {exc.args[0]!r}") from None
        if len(w) > self.max_degree:
            raise LiteralSyntaxError(
                f"word {text!r} exceeds max degree {self.max_degree}")
        return w

    def word_str(self, w: tuple) -> str:
        return "".join(self.generators[i] for i in w)

    def generator_element(self, name: str):
        return ((self.word(name), Fraction(1)),)

    def scalar_part(self, a) -> Fraction:
        for w, c in a:
            if w == ():
                return c
        return Fraction(0)

    def add(self, a, b):
        acc = dict(a)
        for w, c in b:
            acc[w] = acc.get(w, Fraction(0)) + c
        return _free_canon(acc.items())

    def neg(self, a):
        return tuple((w, -c) for w, c in a)

    def mul(self, a, b):
        d = self.max_degree
        acc: dict[tuple, Fraction] = {}
        for w1, c1 in a:
            for w2, c2 in b:
                if len(w1) + len(w2) > d:
                    continue
                w = w1 + w2
                acc[w] = acc.get(w, Fraction(0)) + c1 * c2
        return _free_canon(acc.items())

    def scalar_mul(self, q, a):
        q = Fraction(q)
        if q == 0:
            return ()
        return tuple((w, q * c) for w, c in a)

    def is_unit(self, a):
        return self.scalar_part(a) != 0

    def invert(self, a):
        c = self.scalar_part(a)
        if c == 0:
            raise NotAUnit(f"zero scalar part: non-unit of {self.name}")
        # a = c(1 + n) with n in the nilpotent ideal; finite geometric series.
        n = self.sub(self.scalar_mul(1 / c, a), self.one)
        acc, power = self.one, self.one
        for _ in range(self.max_degree):
            power = self.neg(self.mul(power, n))
            acc = self.add(acc, power)
        return self.scalar_mul(1 / c, acc)

    def generating_elements(self):
        return [((tuple([i]), Fraction(1)),) for i in range(len(self.generators))]

    def cyclic_label(self, w: tuple) -> str:
        if not w:
            return "1"
        best = min(w[i:] + w[:i] for i in range(len(w)))
        return self.word_str(best)

    def trace(self, a):
        acc: dict[str, Fraction] = {}
        for w, c in a:
            label = self.cyclic_label(w)
            acc[label] = acc.get(label, Fraction(0)) + c
        return {k: v for k, v in sorted(acc.items()) if v != 0}

    def mat_is_invertible(self, rows):
        scal = [[self.scalar_part(x) for x in row] for row in rows]
        return frac_mat_invert(scal) is not None

    def mat_invert(self, rows):
        n = len(rows)
        scal = frac_mat_invert([[self.scalar_part(x) for x in row] for row in rows])
        if scal is None:
            raise NotAUnit(f"matrix has singular scalar part over {self.name}")
        sinv = tuple(tuple((((), q),) if q else () for q in row) for row in scal)
        # rows = S(I + N) with N entrywise in the nilpotent ideal.
        nmat = self.emat_sub(self.emat_mul(sinv, rows), self.emat_identity(n))
        acc, power = self.emat_identity(n), self.emat_identity(n)
        for _ in range(self.max_degree):
            power = tuple(tuple(self.neg(x) for x in row)
                          for row in self.emat_mul(power, nmat))
            acc = self.emat_add(acc, power)
        return self.emat_mul(acc, sinv)

    def emat_add(self, a, b):
        return tuple(tuple(self.add(x, y) for x, y in zip(ra, rb))
                     for ra, rb in zip(a, b))

    def emat_sub(self, a, b):
        return tuple(tuple(self.sub(x, y) for x, y in zip(ra, rb))
                     for ra, rb in zip(a, b))

    def all_words(self, min_len: int = 0) -> list[tuple]:
        words: list[tuple] = []
        frontier: list[tuple] = [()]
        for _ in range(self.max_degree):
            frontier = [w + (i,) for w in frontier for i in range(len(self.generators))]
            words.extend(frontier)
        return [w for w in ([()] + words) if len(w) >= min_len]

    def random_element(self, rng):
        words = self.all_words()
        picks = rng.sample(words, k=min(len(words), rng.randint(1, 3)))
        return _free_canon((w, Fraction(rng.randint(-3, 3))) for w in picks)

    def random_unit(self, rng):
        while True:
            a = self.add(self.scalar_mul(Fraction(rng.randint(1, 4)), self.one),
                         self.random_element(rng))
            if self.is_unit(a):
                return a

    def random_central(self, rng):
        # scalars plus top-degree words (degree-d words are central: any
        # product with a generator lands above the truncation degree).
        acc = self.scalar_mul(Fraction(rng.randint(-3, 3)), self.one)
        top = [w for w in self.all_words(min_len=self.max_degree)]
        for w in rng.sample(top, k=min(len(top), rng.randint(0, 2))):
            acc = self.add(acc, ((w, Fraction(rng.randint(-2, 2))),))
        return acc

    def element_to_json(self, a):
        return [[self.word_str(w), str(c)] for w, c in a]

    def element_from_json(self, data):
        if not isinstance(data, list):
            raise LiteralSyntaxError("free algebra coefficient must be a list of pairs")
        out = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise LiteralSyntaxError(f"bad free algebra term {item!r}")
            word, c = item
            if not isinstance(word, str):
                raise LiteralSyntaxError(f"bad word {word!r}")
            out.append((self.word(word), frac_from_str(c) if isinstance(c, str) else Fraction(c)))
        return _free_canon(out)

    def element_to_literal(self, a):
        if not a:
            return "0"
        parts = []
        for w, c in a:
            word = self.word_str(w)
            if not word:
                term = str(c)
            elif c == 1:
                term = word
            elif c == -1:
                term = f"-{word}"
            else:
                term = f"{c}*{word}"
            parts.append(term)
        return "+".join(parts).replace("+-", "-")

    def parse_element_literal(self, text):
        acc = self.zero
        for sign, body in _split_terms(text):
            q, name = _split_coeff(body)
            if name is None:
                term = self.scalar_mul(sign * q, self.one)
            else:
                term = self.scalar_mul(sign * q, ((self.word(name), Fraction(1)),))
            acc = self.add(acc, term)
        return acc

    def signature(self):
        perms = tuple(sorted((n, p) for n, p in self._perms.items()))
        return ("free_trunc", self.generators, self.max_degree, perms)


def _free_canon(pairs) -> tuple:
    acc: dict[tuple, Fraction] = {}
    for w, c in pairs:
        acc[w] = acc.get(w, Fraction(0)) + c
    return tuple((w, acc[w]) for w in sorted(acc, key=lambda w: (len(w), w)) if acc[w] != 0)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split 'a+b-c' into [(1,'a'), (1,'b'), (-1,'c')] at top level."""
    text = text.strip()
    if not text:
        raise LiteralSyntaxError("empty coefficient literal")
    terms = []
    sign, buf = 1, []
    start = True
    for ch in text:
        if ch in "+-" and not start:
            body = "".join(buf).strip()
            if not body:
                raise LiteralSyntaxError(f"dangling sign in {text!r}")
            terms.append((sign, body))
            sign, buf = (1 if ch == "+" else -1), []
        elif ch in "+-" and start:
            sign = sign * (1 if ch == "+" else -1)
        else:
            buf.append(ch)
            start = False
    body = "".join(buf).strip()
    if not body:
        raise LiteralSyntaxError(f"dangling sign in {text!r}")
    terms.append((sign, body))
    return terms


def _split_coeff(body: str) -> tuple[Fraction, Optional[str]]:
    """Split 'q*name' / 'q' / 'name' into (q, name-or-None)."""
    body = body.strip()
    if "*" in body:
        qtext, name = body.split("*", 1)
        return frac_from_str(qtext), name.strip()
    if body and (body[0].isdigit() or body[0] in "/."):
        return frac_from_str(body), None
    try:
        return frac_from_str(body), None
    except LiteralSyntaxError:
        return Fraction(1), body


def ring_axiom_check(ring: CoeffRing, seed: int = 0, trials: int = 25) -> dict:
    """Sample elements and exercise the ring axioms.

    Returns a deterministic report: per-axiom pass flags plus whether
    multiplication looked commutative on the sample (generator pairs are
    always included so noncommutativity is detected deterministically).
    """
    import random

    rng = random.Random(seed)
    elems = [ring.zero, ring.one] + [ring.random_element(rng) for _ in range(trials)]
    gens = ring.generating_elements()
    axioms = {
        "add_comm": True, "add_assoc": True, "add_zero": True, "add_neg": True,
        "mul_assoc": True, "mul_one": True, "dist_left": True, "dist_right": True,
    }
    commutative = True
    for _ in range(trials):
        a, b, c = (rng.choice(elems) for _ in range(3))
        if ring.add(a, b) != ring.add(b, a):
            axioms["add_comm"] = False
        if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)):
            axioms["add_assoc"] = False
        if ring.add(a, ring.zero) != a:
            axioms["add_zero"] = False
        if ring.add(a, ring.neg(a)) != ring.zero:
            axioms["add_neg"] = False
        if ring.mul(ring.mul(a, b), c) != ring.mul(a, ring.mul(b, c)):
            axioms["mul_assoc"] = False
        if ring.mul(a, ring.one) != a or ring.mul(ring.one, a) != a:
            axioms["mul_one"] = False
        if ring.mul(a, ring.add(b, c)) != ring.add(ring.mul(a, b), ring.mul(a, c)):
            axioms["dist_left"] = False
        if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)):
            axioms["dist_right"] = False
        if ring.mul(a, b) != ring.mul(b, a):
            commutative = False
    for g in gens:
        for h in gens:
            if ring.mul(g, h) != ring.mul(h, g):
                commutative = False
    return {
        "ring": ring.name,
        "seed": seed,
        "trials": trials,
        "axioms": axioms,
        "commutative": commutative,
        "passed": all(axioms.values()),
    }
