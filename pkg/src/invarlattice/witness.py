"""Human-checkable evidence: monomial renderings, generation certificates
and numerator/denominator ratio bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .enumeration import CROSS, DEFAULT_BUDGET, Geometry, ball_points
from .errors import (
    InputError,
    InsufficientDegreeError,
    ShapeError,
    TheoryViolation,
    WeightMismatchError,
)
from .group_chars import CharSupport, Weight, weight
from .lattice import HermiteBuilder, PointSet, degree, invariant_lattice


def monomial_string(a: Sequence[int], var_names: Sequence[str]) -> str:
    """Render ``x^a``, e.g. ``(2, -1, 0)`` over ``x1, x2, x4`` as ``x1^2/x2``."""
    if len(a) != len(var_names):
        raise ShapeError(f"{len(a)} exponents but {len(var_names)} variable names")

    def factors(sign):
        out = []
        for e, name in zip(a, var_names):
            e *= sign
            if e == 1:
                out.append(name)
            elif e > 1:
                out.append(f"{name}^{e}")
        return out

    num, den = factors(1), factors(-1)
    top = "*".join(num) or "1"
    if not den:
        return top
    bottom = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{top}/{bottom}"


def _witness_order(p):
    # prefer low degree, then small denominators (true monomials first)
    return (degree(p), sum(-x for x in p if x < 0), tuple(-x for x in p))


@dataclass(frozen=True)
class GeneratorCertificate:
    degree: int
    geometry: Geometry
    generators: PointSet
    coefficients: tuple[tuple[int, ...], ...]
    target_basis: tuple[tuple[int, ...], ...]

    def verify(self) -> bool:
        gens = self.generators.points
        m = self.generators.ambient_dim
        product = tuple(
            tuple(sum(c * g[j] for c, g in zip(row, gens)) for j in range(m))
            for row in self.coefficients
        )
        return product == self.target_basis and all(
            deg <= self.degree for deg in self.generators.degrees
        )

    def to_dict(self, var_names: Optional[Sequence[str]] = None) -> dict:
        out = {
            "degree": self.degree,
            "geometry": self.geometry.value,
            "generators": [list(p) for p in self.generators],
            "coefficients": [list(r) for r in self.coefficients],
            "target_basis": [list(r) for r in self.target_basis],
        }
        if var_names is not None:
            out["monomials"] = [monomial_string(p, var_names) for p in self.generators]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorCertificate":
        gens = data["generators"]
        m = len(data["target_basis"][0]) if data["target_basis"] else 0
        return cls(
            degree=data["degree"],
            geometry=Geometry.parse(data["geometry"]),
            generators=PointSet.of(m, gens),
            coefficients=tuple(tuple(r) for r in data["coefficients"]),
            target_basis=tuple(tuple(r) for r in data["target_basis"]),
        )


def generator_witness(
    support: CharSupport, d: int, geom=CROSS, budget: int = DEFAULT_BUDGET
) -> GeneratorCertificate:
    """Pick degree <= d lattice points that generate L(G, S), with exact coefficients.

    Points are scanned by increasing degree (true monomials first) and kept
    only when they enlarge the span built so far.
    """
    geom = Geometry.parse(geom)
    target = invariant_lattice(support)
    m = support.m
    candidates = sorted(ball_points(target, d, geom, budget), key=_witness_order)
    chosen = []
    builder = HermiteBuilder(m)
    det = target.determinant
    for p in candidates:
        if builder.rank == m and builder.pivot_product() == det:
            break
        if builder.add(p):
            chosen.append(p)
    if builder.lattice() != target:
        raise InsufficientDegreeError(
            f"points of degree <= {d} ({geom.value}) do not generate the invariant lattice"
        )

    k = len(chosen)
    aug = HermiteBuilder(m + k)
    for i, p in enumerate(chosen):
        aug.add(list(p) + [int(i == j) for j in range(k)])
    rows = [r for r in aug.lattice().basis if any(r[:m])]
    cert = GeneratorCertificate(
        degree=d,
        geometry=geom,
        generators=PointSet.of(m, chosen),
        coefficients=tuple(tuple(r[m:]) for r in rows),
        target_basis=target.basis,
    )
    if not cert.verify():
        raise TheoryViolation("generator certificate failed re-multiplication",
                              {"support": support.describe(), "degree": d})
    return cert


@dataclass(frozen=True)
class RatioDecomposition:
    numerator_monomials: PointSet
    denominator_monomials: PointSet
    common_weight: Weight
    invariant_ratios: PointSet

    def expression(self, var_names: Sequence[str]) -> str:
        """The rewrite ``f = sum_i (sum_j (m_i/n_j)^-1)^-1`` with each ratio rendered."""
        k = len(self.denominator_monomials)
        ratios = [monomial_string(r, var_names) for r in self.invariant_ratios]
        terms = []
        for i in range(len(self.numerator_monomials)):
            inner = " + ".join(f"({r})^-1" for r in ratios[i * k : (i + 1) * k])
            terms.append(f"({inner})^-1")
        return " + ".join(terms)


def ratio_decomposition(
    numerators: PointSet, denominators: PointSet, support: CharSupport
) -> RatioDecomposition:
    """Check that the monomials share one weight and list the invariant ratios ``m_i - n_j``."""
    if not len(numerators) or not len(denominators):
        raise InputError("numerator and denominator monomial sets must be nonempty")
    for p in list(numerators) + list(denominators):
        if any(x < 0 for x in p):
            raise InputError(f"{p} is not a true monomial (negative exponent)")
    weights = {p: weight(support, p) for p in list(numerators) + list(denominators)}
    common = weights[numerators.points[0]]
    for p, w in weights.items():
        if w != common:
            raise WeightMismatchError(
                f"monomial {p} has weight {w}, expected {common}; "
                "these cannot be the numerator and denominator of one invariant"
            )
    lat = invariant_lattice(support)
    bound = numerators.max_degree + denominators.max_degree
    ratios = []
    for a in numerators:
        for b in denominators:
            r = tuple(x - y for x, y in zip(a, b))
            if r not in lat or degree(r) > bound:
                raise TheoryViolation(f"ratio {r} is not an invariant of degree <= {bound}",
                                      {"support": support.describe()})
            ratios.append(r)
    return RatioDecomposition(numerators, denominators, common,
                              PointSet.of(support.m, ratios))
