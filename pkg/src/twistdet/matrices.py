"""Matrices over a twisted series ring: inversion, LDU, determinant.

The determinant-like invariant D is defined for square matrices whose
augmentation is the identity: D of a 1x1 matrix is its entry, and otherwise
D(M) = d1 * D(d2) where (l, d1, d2, u) is the LDU factorization obtained by
always pivoting at the (1,1) entry. The value is a canonical representative;
it is only an invariant modulo the commutator subgroup treated in kgroup,
except in the exactly-multiplicative cases (commutative coefficients, block
upper-triangular assemblies) covered by the checks below.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AugmentationNotIdentity,
    DimensionMismatch,
    NotInvertible,
    RingMismatch,
)
from .series import SeriesRing, TwistedSeries


class SeriesMatrix:
    """A rectangular matrix of TwistedSeries sharing one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: SeriesRing, rows):
        rows = tuple(tuple(row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix")
        for row in rows:
            for entry in row:
                if not isinstance(entry, TwistedSeries) or entry.ring != ring:
                    raise RingMismatch("matrix entries must share the matrix ring")
        self.ring = ring
        self.rows = rows

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @staticmethod
    def identity(ring: SeriesRing, n: int) -> "SeriesMatrix":
        one, zero = ring.one(), ring.zero()
        return SeriesMatrix(ring, [[one if i == j else zero for j in range(n)]
                                   for i in range(n)])

    @staticmethod
    def zero(ring: SeriesRing, n: int, m: int) -> "SeriesMatrix":
        z = ring.zero()
        return SeriesMatrix(ring, [[z for _ in range(m)] for _ in range(n)])

    @staticmethod
    def lift(ring: SeriesRing, coeff_rows) -> "SeriesMatrix":
        """Entrywise lift of a matrix over the coefficient ring."""
        return SeriesMatrix(ring, [[ring.lift(a) for a in row] for row in coeff_rows])

    @staticmethod
    def block(blocks) -> "SeriesMatrix":
        """Assemble from a 2D grid of SeriesMatrix blocks."""
        grid = [list(row) for row in blocks]
        ring = grid[0][0].ring
        for row in grid:
            if any(b.nrows != row[0].nrows for b in row):
                raise DimensionMismatch("block row heights differ")
        for j in range(len(grid[0])):
            if any(grid[i][j].ncols != grid[0][j].ncols for i in range(len(grid))):
                raise DimensionMismatch("block column widths differ")
        rows = []
        for brow in grid:
            for r in range(brow[0].nrows):
                rows.append([entry for blk in brow for entry in blk.rows[r]])
        return SeriesMatrix(ring, rows)

    def entry(self, i: int, j: int) -> TwistedSeries:
        return self.rows[i][j]

    def submatrix(self, row_slice, col_slice) -> "SeriesMatrix":
        return SeriesMatrix(self.ring, [row[col_slice] for row in self.rows[row_slice]])

    def augmentation(self):
        return tuple(tuple(e.augmentation() for e in row) for row in self.rows)

    def __eq__(self, other):
        return (isinstance(other, SeriesMatrix) and self.ring == other.ring
                and self.rows == other.rows)

    __hash__ = None

    def __repr__(self):
        body = "; ".join(", ".join(repr(e)[1:-1] for e in row) for row in self.rows)
        return f"[{body}]"

    def _check(self, other: "SeriesMatrix"):
        if self.ring != other.ring:
            raise RingMismatch("matrices live in different rings")

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch in matrix addition")
        return SeriesMatrix(self.ring, [[a + b for a, b in zip(ra, rb)]
                                        for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "SeriesMatrix":
        return SeriesMatrix(self.ring, [[-a for a in row] for row in self.rows])

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        return self + (-other)

    def __mul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        zero = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for t in range(self.ncols):
                    acc = acc + self.rows[i][t] * other.rows[t][j]
                row.append(acc)
            out.append(row)
        return SeriesMatrix(self.ring, out)

    def scale_series(self, s: TwistedSeries) -> "SeriesMatrix":
        return SeriesMatrix(self.ring, [[s * e for e in row] for row in self.rows])


def augmentation_is_identity(m: SeriesMatrix) -> bool:
    A = m.ring.coeff
    if not m.is_square():
        return False
    aug = m.augmentation()
    return all(A.is_one(aug[i][j]) if i == j else A.is_zero(aug[i][j])
               for i in range(m.nrows) for j in range(m.nrows))


def mat_is_invertible(m: SeriesMatrix) -> bool:
    """A square series matrix is invertible iff its augmentation is."""
    if not m.is_square():
        return False
    return m.ring.coeff.mat_is_invertible(m.augmentation())


def mat_invert(m: SeriesMatrix) -> SeriesMatrix:
    """Inverse via the matrix geometric series over the augmentation."""
    if not m.is_square():
        raise DimensionMismatch("only square matrices can be inverted")
    A = m.ring.coeff
    aug = m.augmentation()
    if not A.mat_is_invertible(aug):
        raise NotInvertible(f"augmentation matrix is not invertible over {A.name}")
    n = m.nrows
    cinv = SeriesMatrix.lift(m.ring, A.mat_invert(aug))
    ident = SeriesMatrix.identity(m.ring, n)
    m0 = cinv * m - ident
    acc = ident
    power = ident
    for _ in range(m.ring.order):
        power = -(power * m0)
        if all(e.is_zero() for row in power.rows for e in row):
            break
        acc = acc + power
    return acc * cinv


def split_augmentation(m: SeriesMatrix) -> tuple[SeriesMatrix, SeriesMatrix]:
    """Write m = c * m_tilde with c a lifted coefficient matrix and
    m_tilde of augmentation identity."""
    if not mat_is_invertible(m):
        raise NotInvertible("split needs an invertible augmentation")
    A = m.ring.coeff
    aug = m.augmentation()
    c = SeriesMatrix.lift(m.ring, aug)
    tilde = SeriesMatrix.lift(m.ring, A.mat_invert(aug)) * m
    return c, tilde


@dataclass
class LduFactors:
    """Factors of M = (1 0; l 1)(d1 0; 0 d2)(1 u; 0 1) pivoted at (1,1)."""

    l: SeriesMatrix   # (n-1) x 1
    d1: TwistedSeries
    d2: SeriesMatrix  # (n-1) x (n-1)
    u: SeriesMatrix   # 1 x (n-1)

    def recompose(self) -> SeriesMatrix:
        ring = self.d2.ring
        n1 = self.d2.nrows
        top = SeriesMatrix(ring, [[self.d1]])
        lower = SeriesMatrix.block([[SeriesMatrix.identity(ring, 1),
                                     SeriesMatrix.zero(ring, 1, n1)],
                                    [self.l, SeriesMatrix.identity(ring, n1)]])
        diag = SeriesMatrix.block([[top, SeriesMatrix.zero(ring, 1, n1)],
                                   [SeriesMatrix.zero(ring, n1, 1), self.d2]])
        upper = SeriesMatrix.block([[SeriesMatrix.identity(ring, 1), self.u],
                                    [SeriesMatrix.zero(ring, n1, 1),
                                     SeriesMatrix.identity(ring, n1)]])
        return lower * diag * upper


def ldu_decompose(m: SeriesMatrix) -> LduFactors:
    """Unique LDU factors at the (1,1) pivot; needs augmentation identity."""
    if not m.is_square() or m.nrows < 2:
        raise DimensionMismatch("LDU needs a square matrix of size >= 2")
    if not augmentation_is_identity(m):
        raise AugmentationNotIdentity("LDU needs augmentation equal to the identity")
    a11 = m.entry(0, 0)
    a11_inv = a11.inverse()
    a12 = m.submatrix(slice(0, 1), slice(1, None))
    a21 = m.submatrix(slice(1, None), slice(0, 1))
    a22 = m.submatrix(slice(1, None), slice(1, None))
    l = SeriesMatrix(m.ring, [[row[0] * a11_inv] for row in a21.rows])
    u = SeriesMatrix(m.ring, [[a11_inv * e for e in a12.rows[0]]])
    d2 = a22 - a21 * u
    return LduFactors(l=l, d1=a11, d2=d2, u=u)


def dieudonne_det(m: SeriesMatrix) -> TwistedSeries:
    """D(M) for augmentation-identity M: entry if 1x1, else d1 * D(d2)."""
    if not m.is_square() or m.nrows < 1:
        raise DimensionMismatch("determinant needs a nonempty square matrix")
    if not augmentation_is_identity(m):
        raise AugmentationNotIdentity(
            "determinant needs augmentation equal to the identity")
    return _det_rec(m)


def _det_rec(m: SeriesMatrix) -> TwistedSeries:
    if m.nrows == 1:
        return m.entry(0, 0)
    f = ldu_decompose(m)
    return f.d1 * _det_rec(f.d2)


def det_stabilize(m: SeriesMatrix, extra: int) -> TwistedSeries:
    """D of m padded with an identity block of size `extra`."""
    if extra < 0:
        raise DimensionMismatch("padding size must be >= 0")
    if extra == 0:
        return dieudonne_det(m)
    ring = m.ring
    padded = SeriesMatrix.block(
        [[m, SeriesMatrix.zero(ring, m.nrows, extra)],
         [SeriesMatrix.zero(ring, extra, m.ncols), SeriesMatrix.identity(ring, extra)]])
    return dieudonne_det(padded)


def whitehead_identity_check(a: SeriesMatrix, b: SeriesMatrix) -> bool:
    """(1 -a; 0 1)(1+ab 0; 0 1)(1 0; b 1) == (1 0; b 1)(1 0; 0 1+ba)(1 -a; 0 1).

    a is n x m and b is m x n; the identity holds unconditionally.
    """
    a._check(b)
    if a.nrows != b.ncols or a.ncols != b.nrows:
        raise DimensionMismatch("need a: n x m and b: m x n")
    ring = a.ring
    n, m = a.nrows, a.ncols
    i_n = SeriesMatrix.identity(ring, n)
    i_m = SeriesMatrix.identity(ring, m)
    z_nm = SeriesMatrix.zero(ring, n, m)
    z_mn = SeriesMatrix.zero(ring, m, n)
    lhs = (SeriesMatrix.block([[i_n, -a], [z_mn, i_m]])
           * SeriesMatrix.block([[i_n + a * b, z_nm], [z_mn, i_m]])
           * SeriesMatrix.block([[i_n, z_nm], [b, i_m]]))
    rhs = (SeriesMatrix.block([[i_n, z_nm], [b, i_m]])
           * SeriesMatrix.block([[i_n, z_nm], [z_mn, i_m + b * a]])
           * SeriesMatrix.block([[i_n, -a], [z_mn, i_m]]))
    return lhs == rhs


def rearrange_inverses_check(a: SeriesMatrix, b: SeriesMatrix) -> bool:
    """1 - b(1+ab)^{-1}a == (1+ba)^{-1} for a: n x m, b: m x n."""
    a._check(b)
    if a.nrows != b.ncols or a.ncols != b.nrows:
        raise DimensionMismatch("need a: n x m and b: m x n")
    ring = a.ring
    i_n = SeriesMatrix.identity(ring, a.nrows)
    i_m = SeriesMatrix.identity(ring, a.ncols)
    one_ab = i_n + a * b
    one_ba = i_m + b * a
    if not mat_is_invertible(one_ab):
        raise NotInvertible("1 + ab is not invertible")
    lhs = i_m - b * mat_invert(one_ab) * a
    rhs = mat_invert(one_ba)
    return lhs == rhs
