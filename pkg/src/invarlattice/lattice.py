"""Exact integer lattices in Z^m.

Every ``Lattice`` is stored by its row-style Hermite normal form: rows in
echelon order, positive pivots, entries above each pivot reduced into
``[0, pivot)``.  Two lattices are equal iff their bases are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ContainmentError, ShapeError, TrivialRepresentationError, check_int64
from .group_chars import CharSupport

INFINITE = math.inf

Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def degree(a: Sequence[int]) -> int:
    """Degree of the Laurent monomial ``x^a``, i.e. the L1 norm of ``a``."""
    return sum(abs(x) for x in a)


class HermiteBuilder:
    """Mutable echelon basis that absorbs vectors one at a time.

    ``add`` reports whether the span grew, so callers can merge shells of
    points into a running basis without re-reducing everything.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._pivots: list[int] = []
        self._rows: list[list[int]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_product(self) -> int:
        return math.prod(row[p] for row, p in zip(self._rows, self._pivots))

    def add(self, vec: Sequence[int]) -> bool:
        n = self.ambient_dim
        if len(vec) != n:
            raise ShapeError(f"vector of length {len(vec)} in ambient dimension {n}")
        v = list(vec)
        changed = False
        pivots, rows = self._pivots, self._rows
        k = 0
        for j in range(n):
            if not v[j]:
                continue
            while k < len(pivots) and pivots[k] < j:
                k += 1
            if k == len(pivots) or pivots[k] != j:
                if v[j] < 0:
                    v = [-x for x in v]
                pivots.insert(k, j)
                rows.insert(k, v)
                if changed:
                    self._reduce_all()
                else:
                    self._reduce_from(k)
                return True
            row = rows[k]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                for jj in range(j, n):
                    v[jj] -= q * row[jj]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                new_row = [x * r + y * w for r, w in zip(row, v)]
                v = [ag * w - bg * r for r, w in zip(row, v)]
                rows[k] = new_row
                changed = True
        if changed:
            self._reduce_all()
        return changed

    def _reduce_from(self, k: int) -> None:
        # rows before k were already reduced against their own pivots
        for i in range(k, len(self._rows)):
            self._reduce_column(i)

    def _reduce_all(self) -> None:
        for i in range(len(self._rows)):
            self._reduce_column(i)

    def _reduce_column(self, i: int) -> None:
        p = self._pivots[i]
        row = self._rows[i]
        if row[p] < 0:
            row[:] = [-x for x in row]
        piv = row[p]
        for r in self._rows[:i]:
            q = r[p] // piv
            if q:
                for jj in range(p, self.ambient_dim):
                    r[jj] -= q * row[jj]

    def contains(self, vec: Sequence[int]) -> bool:
        return _solve(self._pivots, self._rows, vec) is not None

    def lattice(self) -> "Lattice":
        return Lattice(self.ambient_dim, tuple(tuple(r) for r in self._rows))


def _solve(pivots, rows, vec) -> Optional[list[int]]:
    """Integer coefficients expressing ``vec`` in an echelon basis, or None."""
    v = list(vec)
    n = len(v)
    coeffs = []
    k = 0
    for j in range(n):
        if k < len(pivots) and pivots[k] == j:
            row = rows[k]
            q, r = divmod(v[j], row[j])
            if r:
                return None
            if q:
                for jj in range(j, n):
                    v[jj] -= q * row[jj]
            coeffs.append(q)
            k += 1
        elif v[j]:
            return None
    return coeffs


@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        pivots = []
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ShapeError("basis row has the wrong length")
            for x in row:
                check_int64(x, "lattice basis entry")
            pivots.append(next(j for j, x in enumerate(row) if x))
        object.__setattr__(self, "pivots", tuple(pivots))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def determinant(self) -> Optional[int]:
        """``[Z^m : L]`` for full-rank lattices, None otherwise."""
        if not self.is_full_rank:
            return None
        return math.prod(row[p] for row, p in zip(self.basis, self.pivots))

    def coefficients(self, a: Sequence[int]) -> Optional[list[int]]:
        if len(a) != self.ambient_dim:
            raise ShapeError(f"vector of length {len(a)} in ambient dimension {self.ambient_dim}")
        return _solve(self.pivots, self.basis, a)

    def __contains__(self, a) -> bool:
        return self.coefficients(a) is not None

    def builder(self) -> HermiteBuilder:
        b = HermiteBuilder(self.ambient_dim)
        b._pivots = list(self.pivots)
        b._rows = [list(r) for r in self.basis]
        return b


@dataclass(frozen=True)
class PointSet:
    ambient_dim: int
    points: tuple[Vector, ...]
    degrees: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for p in self.points:
            if len(p) != self.ambient_dim:
                raise ShapeError(
                    f"point {p} does not lie in ambient dimension {self.ambient_dim}"
                )
        object.__setattr__(self, "degrees", tuple(degree(p) for p in self.points))

    @classmethod
    def of(cls, ambient_dim: int, points: Iterable[Sequence[int]]) -> "PointSet":
        return cls(ambient_dim, tuple(tuple(int(x) for x in p) for p in points))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)


def contains(lattice: Lattice, a: Sequence[int]) -> bool:
    return a in lattice


def span(points: PointSet) -> Lattice:
    """Canonical basis of the integer span of a point set."""
    b = HermiteBuilder(points.ambient_dim)
    for p in points:
        b.add(p)
    return b.lattice()


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Return ``(D, U, V)`` with ``U * A * V == D``, U and V unimodular.

    ``D`` is diagonal with non-negative entries, each dividing the next.
    """
    A = [list(r) for r in matrix]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_axpy(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def col_axpy(dst, src, q):  # col_dst -= q * col_src
        for r in A:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        p = A[t][t]
        clean = True
        for i in range(t + 1, nr):
            q = A[i][t] // p
            if q:
                row_axpy(i, t, q)
            if A[i][t]:
                clean = False
        for j in range(t + 1, nc):
            q = A[t][j] // p
            if q:
                col_axpy(j, t, q)
            if A[t][j]:
                clean = False
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p), None
        )
        if bad is not None:
            row_axpy(t, bad, -1)
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def invariant_factors(matrix: Sequence[Sequence[int]]) -> list[int]:
    D, _, _ = smith_normal_form(matrix)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def invariant_lattice(support: CharSupport) -> Lattice:
    """L(G, S): exponent vectors of Laurent monomials fixed by ``G``.

    Solves ``sum_i a_i chi_i + sum_j t_j n_j e_j = 0`` over the integers by
    taking the left kernel of ``[chi-matrix ; diag(n)]`` from its Smith form
    and projecting away the ``t`` coordinates.
    """
    m = support.m
    if m == 0:
        raise TrivialRepresentationError(
            "support is empty after removing trivial and duplicate characters"
        )
    group = support.group
    k = group.num_factors
    relations = [list(c.residues) for c in support.chars]
    relations += [[n if i == j else 0 for j in range(k)] for i, n in enumerate(group.factor_orders)]
    D, U, _ = smith_normal_form(relations)
    rank = sum(1 for i in range(min(m + k, k)) if D[i][i])
    b = HermiteBuilder(m)
    for row in U[rank:]:
        b.add(row[:m])
    lat = b.lattice()
    assert lat.is_full_rank
    return lat


def index_of(sub: Lattice, sup: Lattice):
    """``[sup : sub]`` as an int, or ``INFINITE`` when ranks differ.

    Raises ContainmentError (with a witness) if ``sub`` is not contained in ``sup``.
    """
    if sub.ambient_dim != sup.ambient_dim:
        raise ShapeError("lattices live in different ambient dimensions")
    coords = []
    for row in sub.basis:
        c = sup.coefficients(row)
        if c is None:
            raise ContainmentError(f"{row} lies in the sublattice but not in the superlattice", row)
        coords.append(c)
    if sub.rank != sup.rank:
        return INFINITE
    if sub.rank == 0:
        return 1
    return math.prod(invariant_factors(coords))
