"""Exact integer matrices, Hermite and Smith normal forms.

Everything here works on Python ints, so entry growth during elimination is
never a concern. Matrices are immutable; the elimination routines copy the
entries into plain lists, work in place, and wrap the result again.
"""
from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MatrixParseError, NotUnimodular, SingularMatrix

__all__ = [
    "IntMatrix",
    "HermiteDecomposition",
    "SmithDecomposition",
    "xgcd",
    "det",
    "adjugate",
    "hermite_normal_form",
    "lattice_hermite",
    "smith_normal_form",
    "determinantal_divisors",
    "invariant_factors",
    "unimodular_inverse",
    "scaled_inverse_apply",
    "parse_matrix",
    "format_matrix",
]


class IntMatrix:
    """Dense, immutable matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(_as_int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatch(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diag(cls, *entries: int) -> IntMatrix:
        if len(entries) == 1 and not isinstance(entries[0], int):
            entries = tuple(entries[0])
        n = len(entries)
        return cls(([entries[i] if i == j else 0 for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        return cls(zip(*columns))

    @staticmethod
    def block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
        out = [list(r) + [0] * b.cols for r in a._data]
        out += [[0] * a.cols + list(r) for r in b._data]
        return IntMatrix(out, cols=a.cols + b.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(zip(*self._data), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        return IntMatrix((a + b for a, b in zip(self._data, other._data)), cols=self.cols + other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(([self._data[i][j] for j in cols] for i in rows), cols=len(cols))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._data)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return IntMatrix(
                ([sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data),
                cols=other.cols,
            )
        return self.apply(other)

    def __mul__(self, k: int) -> IntMatrix:
        return IntMatrix(([k * x for x in r] for r in self._data), cols=self.cols)

    __rmul__ = __mul__

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch")
        return IntMatrix(([a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)), cols=self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __neg__(self) -> IntMatrix:
        return self * -1

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._data == other._data
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __iter__(self):
        return iter(self._data)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        return format_matrix(self)


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, numbers.Integral):
        raise TypeError(f"matrix entries must be integers, got {x!r}")
    return int(x)


def _matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    if isinstance(M, str):
        return parse_matrix(M)
    return IntMatrix(M)


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def det(M) -> int:
    """Signed determinant by fraction-free (Bareiss) elimination."""
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _inverse_fractions(M: IntMatrix) -> list[list[Fraction]]:
    n = M.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [r[n:] for r in a]


def adjugate(M) -> IntMatrix:
    """Adjugate of a nonsingular square matrix, ``adj(M) = det(M) * M^-1``."""
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("adjugate of a non-square matrix")
    d = det(M)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    inv = _inverse_fractions(M)
    out = []
    for r in inv:
        row = []
        for x in r:
            y = x * d
            assert y.denominator == 1
            row.append(y.numerator)
        out.append(row)
    return IntMatrix(out, cols=M.cols)


def scaled_inverse_apply(M, a: Sequence[int]) -> tuple[int, ...]:
    """Return ``|det M| * M^-1 a`` as an exact integer vector.

    Goes through the adjugate, so the result is integral by construction;
    ``M @ result == |det M| * a`` is checked before returning.
    """
    M = _matrix(M)
    if len(a) != M.cols:
        raise DimensionMismatch(f"vector of length {len(a)} for {M.rows}x{M.cols} matrix")
    d = det(M)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    sign = 1 if d > 0 else -1
    res = tuple(sign * x for x in adjugate(M).apply(a))
    assert M.apply(res) == tuple(abs(d) * x for x in a)
    return res


def unimodular_inverse(U) -> IntMatrix:
    U = _matrix(U)
    if not U.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    d = det(U)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}, not +-1")
    inv = adjugate(U) * d
    assert U @ inv == IntMatrix.identity(U.rows)
    return inv


# --- Hermite normal form -------------------------------------------------


@dataclass(frozen=True)
class HermiteDecomposition:
    """``source @ V == H`` with ``H`` upper triangular in canonical form."""

    H: IntMatrix
    V: IntMatrix
    source: IntMatrix


def _combine_columns(a: list[list[int]], p: int, j: int, x: int, y: int, u: int, v: int) -> None:
    # (col_p, col_j) <- (x col_p + y col_j, u col_p + v col_j)
    for r in a:
        cp, cj = r[p], r[j]
        r[p] = x * cp + y * cj
        r[j] = u * cp + v * cj


def _column_hermite(M: IntMatrix) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style HNF of an n x k matrix of full row rank (k >= n).

    Returns ``(A, W)`` with ``M W = A``, W unimodular, the first k-n columns of
    A zero and the last n columns upper triangular, positive diagonal and
    entries right of each pivot reduced into ``[0, pivot)``.
    """
    n, k = M.rows, M.cols
    if k < n:
        raise SingularMatrix("fewer columns than rows: lattice is not full rank")
    a = M.tolist()
    w = _identity_rows(k)
    off = k - n
    for i in reversed(range(n)):
        p = i + off
        for j in range(p):
            b = a[i][j]
            if b == 0:
                continue
            piv = a[i][p]
            g, x, y = xgcd(piv, b)
            args = (p, j, x, y, -b // g, piv // g)
            _combine_columns(a, *args)
            _combine_columns(w, *args)
        if a[i][p] == 0:
            raise SingularMatrix("matrix is singular")
        if a[i][p] < 0:
            for r in a:
                r[p] = -r[p]
            for r in w:
                r[p] = -r[p]
    # reduce entries right of the diagonal, bottom rows first within a column
    for jj in range(1, n):
        q = jj + off
        for i in reversed(range(jj)):
            p = i + off
            f = a[i][q] // a[i][p]
            if f:
                for r in a:
                    r[q] -= f * r[p]
                for r in w:
                    r[q] -= f * r[p]
    return a, w


def hermite_normal_form(M) -> HermiteDecomposition:
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("Hermite normal form needs a square matrix")
    a, w = _column_hermite(M)
    H = IntMatrix(a, cols=M.cols)
    V = IntMatrix(w, cols=M.cols)
    return HermiteDecomposition(H, V, M)


def lattice_hermite(M) -> tuple[IntMatrix, IntMatrix]:
    """HNF basis of the lattice spanned by the columns of an n x k matrix.

    Returns ``(H, W)`` where ``H`` is n x n and ``M @ W[:, k-n:] == H``.
    """
    M = _matrix(M)
    a, w = _column_hermite(M)
    off = M.cols - M.rows
    cols = range(off, M.cols)
    H = IntMatrix(([r[j] for j in cols] for r in a), cols=M.rows)
    W = IntMatrix(w, cols=M.cols)
    return H, W


# --- Smith normal form ---------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ source @ V == S`` with S diagonal and s_i | s_{i+1}."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix
    divisors: tuple[int, ...]
    factors: tuple[int, ...]

    @classmethod
    def from_transforms(cls, source, U, V) -> SmithDecomposition:
        """Wrap externally supplied transforms after checking them."""
        source, U, V = _matrix(source), _matrix(U), _matrix(V)
        if abs(det(U)) != 1 or abs(det(V)) != 1:
            raise NotUnimodular("transforms must be unimodular")
        S = U @ source @ V
        n = S.rows
        if any(S[i, j] for i in range(n) for j in range(n) if i != j):
            raise ValueError("U @ M @ V is not diagonal")
        s = S.diagonal()
        if any(x <= 0 for x in s) or any(s[i + 1] % s[i] for i in range(n - 1)):
            raise ValueError("diagonal is not a positive divisibility chain")
        return cls(U, S, V, source, _running_products(s), s)


def _running_products(s: Sequence[int]) -> tuple[int, ...]:
    out, acc = [], 1
    for x in s:
        acc *= x
        out.append(acc)
    return tuple(out)


def _row_combine(a: list[list[int]], t: int, i: int, x: int, y: int, u: int, v: int) -> None:
    rt, ri = a[t], a[i]
    a[t] = [x * p + y * q for p, q in zip(rt, ri)]
    a[i] = [u * p + v * q for p, q in zip(rt, ri)]


def _elimination(piv: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular 2x2 step sending ``(piv, b)`` to ``(g, 0)``.

    Plain subtraction when ``piv | b`` so the pivot line keeps its value;
    otherwise the xgcd step strictly shrinks the pivot.
    """
    if b % piv == 0:
        return 1, 0, -(b // piv), 1
    g, x, y = xgcd(piv, b)
    return x, y, -b // g, piv // g


def smith_normal_form(M) -> SmithDecomposition:
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("Smith normal form needs a square matrix")
    n = M.rows
    if det(M) == 0:
        raise SingularMatrix("matrix is singular")
    a = M.tolist()
    u = _identity_rows(n)
    v = _identity_rows(n)

    for t in range(n):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            i0, j0 = best
            if i0 != t:
                a[t], a[i0] = a[i0], a[t]
                u[t], u[i0] = u[i0], u[t]
            if j0 != t:
                for r in a:
                    r[t], r[j0] = r[j0], r[t]
                for r in v:
                    r[t], r[j0] = r[j0], r[t]

            for i in range(t + 1, n):
                b = a[i][t]
                if b:
                    args = (t, i, *_elimination(a[t][t], b))
                    _row_combine(a, *args)
                    _row_combine(u, *args)
            for j in range(t + 1, n):
                b = a[t][j]
                if b:
                    args = (t, j, *_elimination(a[t][t], b))
                    _combine_columns(a, *args)
                    _combine_columns(v, *args)
            if any(a[i][t] for i in range(t + 1, n)):
                continue
            piv = a[t][t]
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            # divisibility repair: fold the offending row into the pivot row
            a[t] = [p + q for p, q in zip(a[t], a[bad])]
            u[t] = [p + q for p, q in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    U = IntMatrix(u, cols=n)
    V = IntMatrix(v, cols=n)
    S = IntMatrix(a, cols=n)
    assert U @ M @ V == S
    s = S.diagonal()
    return SmithDecomposition(U, S, V, M, _running_products(s), s)


def invariant_factors(M) -> tuple[int, ...]:
    return smith_normal_form(M).factors


def _minor_gcds(M: IntMatrix) -> tuple[int, ...]:
    n = M.rows
    out = []
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det(M.submatrix(rows, cols)))
                if g == 1:
                    break
            if g == 1:
                break
        out.append(g)
    return tuple(out)


def determinantal_divisors(M, method: str = "smith") -> tuple[int, ...]:
    """gcd of the k x k minors, for k = 1..n.

    ``method="smith"`` takes running products of the invariant factors;
    ``method="minors"`` enumerates minors directly and is limited to n <= 4.
    """
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("determinantal divisors need a square matrix")
    if method == "smith":
        return smith_normal_form(M).divisors
    if method == "minors":
        if M.rows > 4:
            raise ValueError("minor enumeration is limited to n <= 4")
        if det(M) == 0:
            raise SingularMatrix("matrix is singular")
        return _minor_gcds(M)
    raise ValueError(f"unknown method {method!r}")


# --- text format ---------------------------------------------------------


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"2,0;0,6"`` (rows by ``;``, entries by ``,``) or a JSON array."""
    s = text.strip()
    if not s:
        raise MatrixParseError("empty matrix")
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as e:
            raise MatrixParseError(f"invalid JSON at char {e.pos}: {e.msg}") from None
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise MatrixParseError("JSON matrix must be an array of arrays")
        for i, r in enumerate(data):
            for j, x in enumerate(r):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise MatrixParseError(f"row {i + 1}, entry {j + 1}: {x!r} is not an integer", i + 1, j + 1)
        rows = data
    else:
        rows = []
        for i, chunk in enumerate(s.split(";")):
            row = []
            for j, tok in enumerate(chunk.split(",")):
                tok = "".join(tok.split())
                try:
                    row.append(int(tok))
                except ValueError:
                    raise MatrixParseError(f"row {i + 1}, entry {j + 1}: {tok!r} is not an integer", i + 1, j + 1) from None
            rows.append(row)
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        bad = next(i for i, r in enumerate(rows) if len(r) != len(rows[0]))
        raise MatrixParseError(f"row {bad + 1} has {len(rows[bad])} entries, expected {len(rows[0])}", bad + 1)
    return IntMatrix(rows)


def format_matrix(M: IntMatrix) -> str:
    return ";".join(",".join(str(x) for x in r) for r in M)


def product_of_diagonal(M: IntMatrix) -> int:
    return prod(M.diagonal())
