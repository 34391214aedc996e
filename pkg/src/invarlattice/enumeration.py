"""Lattice points of a full-rank lattice inside dilated cross-polytopes and simplices.

Points are generated coordinate by coordinate.  Because the lattice basis
is upper triangular, fixing ``a_1..a_i`` pins down the basis coefficients
``c_1..c_i`` and leaves a single congruence ``a_{i+1} = offset (mod pivot)``
for the next coordinate, so prefixes that cannot be completed are dropped
immediately.  On a shell the last coordinate is determined up to sign by the
remaining degree budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EnumerationBudgetExceeded, InputError
from .lattice import Lattice, PointSet

DEFAULT_BUDGET = 10**7
# partial vectors held at once; a memory guard independent of the point budget
PREFIX_LIMIT = 2 * 10**7


class Geometry(str, enum.Enum):
    CROSS_POLYTOPE = "cross"
    SIMPLEX = "simplex"

    @classmethod
    def parse(cls, value) -> "Geometry":
        if isinstance(value, cls):
            return value
        aliases = {"cross": cls.CROSS_POLYTOPE, "cross_polytope": cls.CROSS_POLYTOPE,
                   "simplex": cls.SIMPLEX}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise InputError(f"unknown geometry {value!r}; expected cross or simplex") from None


CROSS = Geometry.CROSS_POLYTOPE
SIMPLEX = Geometry.SIMPLEX


@dataclass(frozen=True)
class Shell:
    degree: int
    points: PointSet

    def __len__(self):
        return len(self.points)


def _check_budget(count: int, budget: int, what: str = "lattice points") -> None:
    if count > budget:
        raise EnumerationBudgetExceeded(f"enumeration needs {count} {what}, limit is {budget}")


def _shell_array(lattice: Lattice, d: int, geom: Geometry, budget: int) -> np.ndarray:
    m = lattice.ambient_dim
    if not lattice.is_full_rank:
        raise InputError("point enumeration requires a full-rank lattice")
    if d < 0:
        raise InputError(f"degree must be non-negative, got {d}")
    if d == 0:
        return np.zeros((1, m), dtype=np.int64)
    B = np.array(lattice.basis, dtype=np.int64)
    piv = np.diag(B).copy()
    lo = -d if geom is CROSS else 0
    steps = np.arange(lo, d + 1, dtype=np.int64)

    coords = np.zeros((1, 0), dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    offset = np.zeros((1, m), dtype=np.int64)  # sum_j c_j * basis_j over fixed coordinates
    for i in range(m - 1):
        cand = steps[None, :]
        ok = (np.abs(cand) <= (d - used)[:, None]) & ((cand - offset[:, i : i + 1]) % piv[i] == 0)
        rows, cols = np.nonzero(ok)
        _check_budget(len(rows), PREFIX_LIMIT, "partial vectors")
        vals = steps[cols]
        c = (vals - offset[rows, i]) // piv[i]
        coords = np.concatenate([coords[rows], vals[:, None]], axis=1)
        used = used[rows] + np.abs(vals)
        offset = offset[rows] + c[:, None] * B[i][None, :]

    rest = d - used
    if geom is CROSS:
        last = np.concatenate([rest, -rest[rest > 0]])
        idx = np.concatenate([np.arange(len(rest)), np.nonzero(rest > 0)[0]])
    else:
        last, idx = rest, np.arange(len(rest))
    ok = (last - offset[idx, m - 1]) % piv[m - 1] == 0
    pts = np.concatenate([coords[idx[ok]], last[ok][:, None]], axis=1)
    _check_budget(len(pts), budget)
    if len(pts):
        pts = pts[np.lexsort(pts.T[::-1])]
    return pts


def shell_points(lattice: Lattice, d: int, geom=CROSS, budget: int = DEFAULT_BUDGET) -> Shell:
    """Lattice points of degree exactly ``d``, in lexicographic order.

    For the cross-polytope the degree is the L1 norm; for the simplex only
    non-negative points are kept and the degree is the coordinate sum.
    """
    geom = Geometry.parse(geom)
    arr = _shell_array(lattice, d, geom, budget)
    return Shell(d, PointSet.of(lattice.ambient_dim, arr.tolist()))


def ball_points(lattice: Lattice, d: int, geom=CROSS, budget: int = DEFAULT_BUDGET) -> PointSet:
    """Union of the shells of degree ``0..d``, ordered by degree and then lexicographically."""
    geom = Geometry.parse(geom)
    pts = []
    for k in range(d + 1):
        pts.extend(_shell_array(lattice, k, geom, budget - len(pts)).tolist())
    return PointSet.of(lattice.ambient_dim, pts)


def iter_shells(lattice: Lattice, geom=CROSS, start: int = 0, budget: int = DEFAULT_BUDGET):
    """Yield shells of increasing degree forever; the budget covers all yielded points."""
    geom = Geometry.parse(geom)
    emitted = 0
    d = start
    while True:
        arr = _shell_array(lattice, d, geom, budget - emitted)
        emitted += len(arr)
        yield d, arr
        d += 1
