"""Degree bounds for rational and polynomial generators of invariant fields.

All four headline quantities come from one scan per geometry: shells of
lattice points are merged by increasing degree into a running Hermite
basis, and the rank and index of that span are recorded per degree.

* cross-polytope (Laurent monomials): ``gamma_r`` is the first degree of
  full rank, ``beta_r`` the first degree at which the span is all of L(G, S);
* simplex (true monomials): the same with ``gamma_poly`` and ``beta_poly``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .enumeration import CROSS, DEFAULT_BUDGET, SIMPLEX, Geometry, iter_shells
from .errors import InputError, TheoryViolation, TrivialRepresentationError
from .group_chars import (
    AbelianGroup,
    CharSupport,
    effective_order,
    is_involution,
    make_group,
    reduce_support,
)
from .lattice import INFINITE, HermiteBuilder, Lattice, invariant_lattice

SCHEMA = "invar-lattice/1"


class DegreeProfile:
    """Rank and index of ``<L cap d*body>`` for d = 0, 1, 2, ... computed lazily."""

    def __init__(self, lattice: Lattice, geom=CROSS, budget: int = DEFAULT_BUDGET, cap=None):
        self.lattice = lattice
        self.geom = Geometry.parse(geom)
        self.cap = cap
        self.ranks: list[int] = []
        self.spans: list[int] = []  # pivot product of the running basis (== [Z^m : span] at full rank)
        self._builder = HermiteBuilder(lattice.ambient_dim)
        self._shells = iter_shells(lattice, self.geom, budget=budget)

    @property
    def m(self) -> int:
        return self.lattice.ambient_dim

    @property
    def max_degree(self) -> int:
        return len(self.ranks) - 1

    def is_complete(self) -> bool:
        b = self._builder
        return b.rank == self.m and b.pivot_product() == self.lattice.determinant

    def _absorb(self, pts: np.ndarray) -> None:
        b = self._builder
        if self.is_complete() or not len(pts):
            return
        if self.geom is CROSS:
            # one point of each +-pair spans the same lattice
            nz = pts != 0
            first = pts[np.arange(len(pts)), nz.argmax(axis=1)]
            pts = pts[first > 0]
        if b.rank == self.m:
            pts = _not_contained(b.lattice(), pts)
        for p in pts.tolist():
            b.add(p)
            if self.is_complete():
                break

    def extend_to(self, d: int) -> None:
        while self.max_degree < d:
            k, pts = next(self._shells)
            self._absorb(pts)
            self.ranks.append(self._builder.rank)
            self.spans.append(self._builder.pivot_product())

    def first_degree(self, predicate, what: str) -> int:
        d = 0
        while True:
            self.extend_to(d)
            if predicate(d):
                return d
            if self.cap is not None and d >= self.cap:
                raise TheoryViolation(
                    f"{what} not reached by the Noether bound {self.cap}",
                    {"lattice": [list(r) for r in self.lattice.basis], "geometry": self.geom.value},
                )
            d += 1

    def index(self, d: int):
        """``[L : <L cap d*body>]``, or INFINITE when the span is rank deficient."""
        self.extend_to(d)
        if self.ranks[d] < self.m:
            return INFINITE
        return self.spans[d] // self.lattice.determinant

    def gamma(self) -> int:
        return self.first_degree(lambda d: self.ranks[d] == self.m, "full rank")

    def beta(self) -> int:
        return self.first_degree(lambda d: self.index(d) == 1, "full span")

    def minima(self) -> list[int]:
        return [self.first_degree(lambda d, i=i: self.ranks[d] >= i, f"rank {i}")
                for i in range(1, self.m + 1)]


def _not_contained(lat: Lattice, pts: np.ndarray) -> np.ndarray:
    """Rows of ``pts`` outside a full-rank lattice (vectorised triangular solve)."""
    B = np.array(lat.basis, dtype=np.int64)
    v = pts.copy()
    inside = np.ones(len(v), dtype=bool)
    for i in range(lat.ambient_dim):
        q, r = np.divmod(v[:, i], B[i, i])
        inside &= r == 0
        v -= q[:, None] * B[i][None, :]
    return pts[~inside]


def _profile(support: CharSupport, geom, budget: int) -> DegreeProfile:
    if support.m == 0:
        raise TrivialRepresentationError("the representation has no nontrivial characters")
    return DegreeProfile(invariant_lattice(support), geom, budget, cap=effective_order(support))


def gamma_rational(support: CharSupport, budget: int = DEFAULT_BUDGET) -> int:
    """Least d whose degree <= d rational invariants contain a transcendence basis."""
    return _profile(support, CROSS, budget).gamma()


def beta_rational(support: CharSupport, budget: int = DEFAULT_BUDGET) -> int:
    """Least d whose degree <= d rational invariants generate the invariant field."""
    return _profile(support, CROSS, budget).beta()


def gamma_poly(support: CharSupport, budget: int = DEFAULT_BUDGET) -> int:
    return _profile(support, SIMPLEX, budget).gamma()


def beta_poly(support: CharSupport, budget: int = DEFAULT_BUDGET) -> int:
    return _profile(support, SIMPLEX, budget).beta()


def extension_index(support: CharSupport, d: int, geom=CROSS, budget: int = DEFAULT_BUDGET):
    """Degree of the invariant field over the subfield generated in degree <= d."""
    if d < 0:
        raise InputError(f"degree must be non-negative, got {d}")
    return _profile(support, geom, budget).index(d)


def successive_minima(support: CharSupport, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Successive minima of the L1 unit ball with respect to L(G, S)."""
    return _profile(support, CROSS, budget).minima()


def integer_root_ceil(value: int, m: int) -> int:
    lo, hi = 1, max(1, value)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**m >= value:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_lower_bound(effective_order: int, m: int) -> int:
    """Smallest integer d with ``d**m >= effective_order``."""
    if m < 1 or effective_order < 1:
        raise InputError("need m >= 1 and a positive group order")
    return integer_root_ceil(effective_order, m)


def hard_floor(support: CharSupport) -> int:
    return 2 if all(is_involution(c, support.group) for c in support) else 3


@dataclass(frozen=True)
class ExtremalCheck:
    extremal: bool
    degree: int
    structure: Optional[str] = None


def check_extremal(support: CharSupport, gamma_r: int) -> ExtremalCheck:
    """Decide whether the m-th root lower bound is attained.

    When it is, the effective group must be ``(Z/d)^m`` with the support as
    a basis of its character group; anything else is reported as a theory
    violation.
    """
    m = support.m
    order = effective_order(support)
    if gamma_r**m != order:
        return ExtremalCheck(False, gamma_r)
    group = support.group
    if not all(group.scale(gamma_r, c).is_trivial for c in support):
        raise TheoryViolation(
            f"gamma_r^m equals the group order {order} but the characters are not a "
            f"basis of (Z/{gamma_r})^{m}",
            {"group": list(group.factor_orders), "support": support.describe(), "gamma_r": gamma_r},
        )
    return ExtremalCheck(True, gamma_r, f"(Z/{gamma_r}Z)^{m}")


def family_value(n: int, m: int) -> int:
    _check_family_params(n, m)
    half = -(-m // 2)
    return max(3, -(-n // half))


def _check_family_params(n: int, m: int) -> None:
    if n < 3:
        raise InputError(f"family requires n >= 3, got {n}")
    if not 1 <= m < n:
        raise InputError(f"family requires 1 <= m < n, got m={m}, n={n}")


def family_characters(m: int) -> list[int]:
    """``+-1, ..., +-m/2`` for even m; ``+-1, ..., +-(m-1)/2, (m+1)/2`` for odd m."""
    out = []
    for k in range(1, m // 2 + 1):
        out += [k, -k]
    if m % 2:
        out.append((m + 1) // 2)
    return out


def family_support(n: int, m: int) -> CharSupport:
    _check_family_params(n, m)
    support = reduce_support(make_group([n]), family_characters(m))
    if support.m != m:
        raise InputError(f"the family construction gives only {support.m} distinct "
                         f"nontrivial characters of Z/{n} for m={m}")
    return support


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def minkowski_rhs(m: int, p: int) -> Fraction:
    """Upper bound on gamma_r for Z/p obtained from Minkowski's second theorem."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if m < 1:
        raise InputError("m must be positive")
    return Fraction(math.factorial(m) * p, 2 ** (m // 2) * 3 ** (-(-m // 2) - 1))


def _matching_family(support: CharSupport) -> Optional[int]:
    group = support.group
    if not group.is_cyclic_presentation:
        return None
    n, m = group.order, support.m
    if n < 3 or not 1 <= m < n:
        return None
    try:
        fam = family_support(n, m)
    except InputError:
        return None
    if set(fam.chars) != set(support.chars):
        return None
    return family_value(n, m)


def _prime_bound_applies(support: CharSupport, order: int) -> bool:
    if not is_prime(order):
        return False
    if support.m >= 3:
        return True
    if support.m == 2:
        a, b = support.chars
        return not support.group.add(a, b).is_trivial
    return False


@dataclass
class Theoretical:
    root_lower_bound: int
    hard_floor: int
    involution_only: bool
    noether_cap: int
    extremal: Optional[bool] = None
    extremal_structure: Optional[str] = None
    family_value: Optional[int] = None
    minkowski_rhs: Optional[Fraction] = None
    prime_upper_bound: Optional[Fraction] = None

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        for k in ("minkowski_rhs", "prime_upper_bound"):
            if d[k] is not None:
                d[k] = {"numerator": d[k].numerator, "denominator": d[k].denominator}
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "Theoretical":
        d = dict(data)
        for k in ("minkowski_rhs", "prime_upper_bound"):
            if d.get(k) is not None:
                d[k] = Fraction(d[k]["numerator"], d[k]["denominator"])
        return cls(**d)


def _index_out(x):
    return "infinite" if x == INFINITE else x


def _index_in(x):
    return INFINITE if x == "infinite" else x


@dataclass
class BoundsReport:
    group: list[int]
    support: list[list[int]]
    var_names: list[str]
    effective_order: int
    lattice_basis: list[list[int]]
    mode: str = "both"
    beta_r: Optional[int] = None
    gamma_r: Optional[int] = None
    beta_poly: Optional[int] = None
    gamma_poly: Optional[int] = None
    successive_minima: Optional[list[int]] = None
    extension_indices: dict = field(default_factory=dict)
    poly_extension_indices: dict = field(default_factory=dict)
    theoretical: Optional[Theoretical] = None
    witnesses: dict = field(default_factory=dict)
    real_field_note: Optional[bool] = None
    checks: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.support)

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA}
        for k, v in self.__dict__.items():
            if k == "theoretical":
                v = v.to_dict() if v is not None else None
            elif k in ("extension_indices", "poly_extension_indices"):
                v = {str(deg): _index_out(idx) for deg, idx in v.items()}
            d[k] = v
        d["m"] = self.m
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "BoundsReport":
        d = {k: v for k, v in data.items() if k not in ("schema", "m")}
        if data.get("schema") != SCHEMA:
            raise InputError(f"unsupported report schema {data.get('schema')!r}")
        if d.get("theoretical") is not None:
            d["theoretical"] = Theoretical.from_dict(d["theoretical"])
        for k in ("extension_indices", "poly_extension_indices"):
            d[k] = {int(deg): _index_in(idx) for deg, idx in d.get(k, {}).items()}
        return cls(**d)


def _instance(support: CharSupport) -> dict:
    return {
        "group": list(support.group.factor_orders),
        "support": [list(c.residues) for c in support],
    }


def verify_all(support: CharSupport, mode: str = "both", budget: int = DEFAULT_BUDGET,
               witnesses: bool = True) -> BoundsReport:
    """Compute every bound for one (G, S) and check it against the theory.

    Any failed inequality raises TheoryViolation carrying the instance.
    """
    from .witness import generator_witness

    if mode not in ("rational", "polynomial", "both"):
        raise InputError(f"unknown mode {mode!r}")
    if support.m == 0:
        raise TrivialRepresentationError("the representation has no nontrivial characters")
    m = support.m
    order = effective_order(support)
    lat = invariant_lattice(support)
    rational = mode in ("rational", "both")
    poly = mode in ("polynomial", "both")

    report = BoundsReport(
        group=list(support.group.factor_orders),
        support=[list(c.residues) for c in support],
        var_names=support.var_names(),
        effective_order=order,
        lattice_basis=[list(r) for r in lat.basis],
        mode=mode,
    )
    involutions = all(is_involution(c, support.group) for c in support)
    theo = Theoretical(
        root_lower_bound=root_lower_bound(order, m),
        hard_floor=hard_floor(support),
        involution_only=involutions,
        noether_cap=order,
        family_value=_matching_family(support),
    )
    report.theoretical = theo
    if is_prime(order):
        theo.minkowski_rhs = minkowski_rhs(m, order)
        if _prime_bound_applies(support, order):
            theo.prime_upper_bound = Fraction(order + 3, 2)

    checks = report.checks

    def check(name, holds, detail=""):
        checks[name] = bool(holds)
        if not holds:
            raise TheoryViolation(f"{name} failed: {detail}", {**_instance(support), "check": name})

    check("lattice_determinant", lat.determinant == order,
          f"det L = {lat.determinant}, effective order = {order}")

    if rational:
        prof = DegreeProfile(lat, CROSS, budget, cap=order)
        g, b = prof.gamma(), prof.beta()
        lam = prof.minima()
        report.gamma_r, report.beta_r, report.successive_minima = g, b, lam
        report.extension_indices = {d: prof.index(d) for d in range(g, b + 1)}

        check("gamma_r<=beta_r", g <= b, f"{g} > {b}")
        check("gamma_r=lambda_m", lam[-1] == g, f"{lam} vs {g}")
        check("minima_nondecreasing", lam == sorted(lam), str(lam))
        check("lambda_1>=2", lam[0] >= 2, str(lam))
        check("root_lower_bound", g**m >= order, f"{g}^{m} < {order}")
        check("hard_floor", g >= theo.hard_floor and ((g == 2) == involutions),
              f"gamma_r={g}, involutions only={involutions}")
        if order % 2:
            check("odd_order_minima", all(x >= 3 for x in lam[m // 2:]), str(lam))
        check("minkowski_second_theorem", math.prod(lam) <= math.factorial(m) * order,
              f"prod {lam} > {m}! * {order}")
        if theo.minkowski_rhs is not None and order % 2:
            check("minkowski_rhs", g <= theo.minkowski_rhs, f"{g} > {theo.minkowski_rhs}")
        if theo.prime_upper_bound is not None:
            check("prime_upper_bound", b <= theo.prime_upper_bound,
                  f"beta_r={b} > {theo.prime_upper_bound}")
        if theo.family_value is not None:
            check("family_value", b == g == theo.family_value,
                  f"beta_r={b}, gamma_r={g}, predicted {theo.family_value}")
        idx = [report.extension_indices[d] for d in range(g, b + 1)]
        check("index_monotone", all(x >= y for x, y in zip(idx, idx[1:])) and idx[-1] == 1,
              str(idx))
        ext = check_extremal(support, g)
        theo.extremal, theo.extremal_structure = ext.extremal, ext.structure
        if witnesses:
            report.witnesses["rational"] = generator_witness(support, b, CROSS, budget).to_dict(
                report.var_names)

    if poly:
        pprof = DegreeProfile(lat, SIMPLEX, budget, cap=order)
        gp, bp = pprof.gamma(), pprof.beta()
        report.gamma_poly, report.beta_poly = gp, bp
        report.poly_extension_indices = {d: pprof.index(d) for d in range(gp, bp + 1)}
        check("gamma_poly<=beta_poly", gp <= bp, f"{gp} > {bp}")
        check("noether_bound", bp <= order, f"beta_poly={bp} > {order}")
        if witnesses:
            report.witnesses["polynomial"] = generator_witness(support, bp, SIMPLEX, budget).to_dict(
                report.var_names)

    if rational and poly:
        g, b, gp, bp = report.gamma_r, report.beta_r, report.gamma_poly, report.beta_poly
        check("gamma_r<=gamma_poly", g <= gp, f"{g} > {gp}")
        check("beta_r<=beta_poly", b <= bp, f"{b} > {bp}")
        report.real_field_note = b < bp
    return report


def support_from(group_orders, chars) -> CharSupport:
    """Convenience: ``support_from([7], [1, 2, 4])``."""
    group = group_orders if isinstance(group_orders, AbelianGroup) else make_group(group_orders)
    return reduce_support(group, chars)
