"""The finite abelian group Z^n / M Z^n.

Elements are plain tuples of ints. The canonical representative of a class
is the unique vector in the box ``0 <= a_i < h_ii`` obtained by reducing with
the columns of the Hermite normal form ``H`` of ``M``; equality of classes is
equality of those tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod

from .errors import DimensionMismatch, SingularMatrix
from .intmat import (
    HermiteDecomposition,
    IntMatrix,
    SmithDecomposition,
    _matrix,
    adjugate,
    det,
    hermite_normal_form,
    lattice_hermite,
    smith_normal_form,
    unimodular_inverse,
)

Element = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    M: IntMatrix
    hermite: HermiteDecomposition
    smith: SmithDecomposition
    m: int
    r: int
    Sprime: tuple[int, ...]
    Uprime: IntMatrix
    UinvCols: IntMatrix
    # |det M| * M^-1, integral
    scaled_inverse: IntMatrix = field(repr=False)

    @property
    def n(self) -> int:
        return self.M.rows

    @property
    def H(self) -> IntMatrix:
        return self.hermite.H

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nontrivial invariant factors, i.e. the diagonal of S'."""
        return self.Sprime

    @property
    def is_cyclic(self) -> bool:
        return self.r <= 1

    def __eq__(self, other):
        if not isinstance(other, QuotientGroup):
            return NotImplemented
        return self.H == other.H

    def __hash__(self):
        return hash(self.H)

    def __repr__(self):
        return f"QuotientGroup(M={self.M.tolist()}, order={self.m}, structure={self.describe()!r})"

    # -- elements ---------------------------------------------------------

    def _vec(self, a) -> tuple[int, ...]:
        if isinstance(a, int):
            a = (a,)
        a = tuple(a)
        if len(a) != self.n:
            raise DimensionMismatch(f"expected a vector of length {self.n}, got {len(a)}")
        return a

    def canonicalize(self, a) -> Element:
        a = list(self._vec(a))
        H = self.H
        for i in reversed(range(self.n)):
            q = a[i] // H[i, i]
            if q:
                for k in range(i + 1):
                    a[k] -= q * H[k, i]
        return tuple(a)

    def congruent(self, a, b) -> bool:
        return self.canonicalize(a) == self.canonicalize(b)

    def in_lattice(self, a) -> bool:
        """True iff ``M^-1 a`` is integral, tested through ``|det M| M^-1 a``."""
        v = self.scaled_inverse.apply(self._vec(a))
        return all(x % self.m == 0 for x in v)

    @property
    def zero(self) -> Element:
        return (0,) * self.n

    def add(self, a, b) -> Element:
        a, b = self._vec(a), self._vec(b)
        return self.canonicalize(tuple(x + y for x, y in zip(a, b)))

    def sub(self, a, b) -> Element:
        a, b = self._vec(a), self._vec(b)
        return self.canonicalize(tuple(x - y for x, y in zip(a, b)))

    def neg(self, a) -> Element:
        return self.canonicalize(tuple(-x for x in self._vec(a)))

    def scale(self, k: int, a) -> Element:
        return self.canonicalize(tuple(k * x for x in self._vec(a)))

    def elements(self) -> list[Element]:
        """All canonical elements in lexicographic order."""
        diag = self.H.diagonal()
        return [tuple(e) for e in product(*(range(h) for h in diag))]

    def element_order(self, a) -> int:
        """``m / gcd(m, gcd(m M^-1 a))``."""
        v = self.scaled_inverse.apply(self._vec(a))
        return self.m // gcd(self.m, *v)

    # -- Smith coordinates --------------------------------------------------

    def to_snf_coords(self, a) -> tuple[int, ...]:
        c = self.Uprime.apply(self._vec(a))
        return tuple(x % s for x, s in zip(c, self.Sprime))

    def from_snf_coords(self, c) -> Element:
        if isinstance(c, int):
            c = (c,)
        c = tuple(c)
        if len(c) != self.r:
            raise DimensionMismatch(f"expected {self.r} Smith coordinates, got {len(c)}")
        return self.canonicalize(self.UinvCols.apply(c))

    # -- subgroups --------------------------------------------------------

    def _jump_matrix(self, A) -> IntMatrix:
        cols = [self._vec(a) for a in A]
        if not cols:
            raise ValueError("need at least one element")
        return IntMatrix.from_columns(cols)

    def subgroup_index(self, A) -> int:
        """Index of <A>, from the HNF of the lattice spanned by [M | A]."""
        Hl, _ = lattice_hermite(self.M.hstack(self._jump_matrix(A)))
        return prod(Hl.diagonal())

    def generates(self, A) -> bool:
        return self.subgroup_index(A) == 1

    def generation_witness(self, A) -> IntMatrix | None:
        """Integer d x n matrix X with ``A X == I (mod M)``, or None."""
        Am = self._jump_matrix(A)
        big = self.M.hstack(Am)
        Hl, W = lattice_hermite(big)
        if Hl != IntMatrix.identity(self.n):
            return None
        n, d = self.n, Am.cols
        off = big.cols - n
        X = W.submatrix(range(n, n + d), range(off, off + n))
        AX = Am @ X
        for j in range(n):
            e = tuple(int(i == j) for i in range(n))
            assert self.congruent(AX.col(j), e)
        return X

    def span(self, A) -> set[Element]:
        """Closure of ``A`` under addition (the subgroup it generates)."""
        gens = [self.canonicalize(a) for a in A]
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for a in gens:
                    y = self.add(x, a)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def presentation_from_generators(self, gens) -> IntMatrix:
        """Upper-triangular relation matrix of ``<g_1, ..., g_d>``.

        Column j encodes ``sum_i h_ij g_i = 0`` where ``h_jj`` is the least
        positive multiple of ``g_j`` already inside ``<g_1..g_{j-1}>``.
        Off-diagonal entries are reduced into ``[0, h_ii)``, so the result is
        the HNF of the relation lattice and ``<gens>`` is ``Z^d / H Z^d``.
        """
        gens = [self.canonicalize(g) for g in gens]
        if not gens:
            raise ValueError("need at least one generator")
        d = len(gens)
        # element -> coefficient vector over the generators processed so far
        witness: dict[Element, tuple[int, ...]] = {self.zero: ()}
        cols: list[list[int]] = []
        for j, g in enumerate(gens):
            mu, x = 1, g
            while x not in witness:
                mu += 1
                x = self.add(x, g)
            col = [-c for c in witness[x]] + [mu] + [0] * (d - j - 1)
            for i in reversed(range(j)):
                q = col[i] // cols[i][i]
                if q:
                    for k in range(i + 1):
                        col[k] -= q * cols[i][k]
            cols.append(col)
            grown = {}
            for elem, coeffs in witness.items():
                y = elem
                for t in range(mu):
                    grown[y] = coeffs + (t,)
                    y = self.add(y, g)
            witness = grown
        H = IntMatrix.from_columns(cols)
        assert prod(H.diagonal()) == len(witness)
        return H

    # -- presentation -----------------------------------------------------

    def describe(self) -> str:
        if not self.Sprime:
            return "trivial group"
        return " x ".join(f"Z_{s}" for s in self.Sprime)

    def to_json(self) -> dict:
        return {"order": self.m, "rank": self.r, "invariant_factors": list(self.Sprime)}


def make_group(M, smith: SmithDecomposition | None = None) -> QuotientGroup:
    """Build ``Z^n / M Z^n``.

    ``smith`` may carry externally chosen transforms (they are not unique);
    otherwise they are computed.
    """
    M = _matrix(M)
    if not M.is_square:
        raise DimensionMismatch("group matrix must be square")
    d = det(M)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    hermite = hermite_normal_form(M)
    if smith is None:
        smith = smith_normal_form(M)
    elif smith.source != M:
        raise ValueError("Smith decomposition belongs to a different matrix")
    n = M.rows
    s = smith.factors
    r = sum(1 for x in s if x > 1)
    lo = n - r
    Uinv = unimodular_inverse(smith.U)
    Uprime = smith.U.submatrix(range(lo, n), range(n))
    UinvCols = Uinv.submatrix(range(n), range(lo, n))
    sign = 1 if d > 0 else -1
    g = QuotientGroup(
        M=M,
        hermite=hermite,
        smith=smith,
        m=abs(d),
        r=r,
        Sprime=tuple(s[lo:]),
        Uprime=Uprime,
        UinvCols=UinvCols,
        scaled_inverse=adjugate(M) * sign,
    )
    assert prod(g.Sprime) == g.m
    return g


def element_order_2x2(M, a) -> int:
    """Order of ``a`` modulo a 2 x 2 matrix, by the explicit gcd formula."""
    M = _matrix(M)
    if M.shape != (2, 2):
        raise DimensionMismatch("expected a 2 x 2 matrix")
    (m11, m12), (m21, m22) = M
    a1, a2 = a
    m = abs(m11 * m22 - m12 * m21)
    return m // gcd(m, a1 * m22 - a2 * m12, a2 * m11 - a1 * m21)


def diagonal_group(*s: int) -> QuotientGroup:
    if len(s) == 1 and not isinstance(s[0], int):
        s = tuple(s[0])
    return make_group(IntMatrix.diag(*s))
