"""Finite abelian groups, their characters, and character supports.

A group is ``Z/n_1 x ... x Z/n_k``.  Its character group is isomorphic to
itself, so a character is a residue tuple ``(c_1, ..., c_k)``; for a cyclic
group an integer ``c`` stands for ``l -> exp(2 pi i c l / n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import InputError, ShapeError, check_int64

RawCharacter = Union[int, Sequence[int], "Character"]


@dataclass(frozen=True)
class AbelianGroup:
    factor_orders: tuple[int, ...]

    def __post_init__(self):
        for n in self.factor_orders:
            if not isinstance(n, int) or n < 2:
                raise InputError(f"cyclic factor orders must be integers >= 2, got {n!r}")
        check_int64(self.order, "group order")

    @property
    def order(self) -> int:
        return math.prod(self.factor_orders)

    @property
    def num_factors(self) -> int:
        return len(self.factor_orders)

    @property
    def is_cyclic_presentation(self) -> bool:
        return len(self.factor_orders) == 1

    def character(self, raw: RawCharacter) -> "Character":
        """Coerce an int (cyclic groups only), tuple or Character into a reduced Character."""
        if isinstance(raw, Character):
            raw = raw.residues
        if isinstance(raw, int):
            if self.num_factors != 1:
                raise ShapeError(
                    f"bare integer character {raw} given for a group with "
                    f"{self.num_factors} factors"
                )
            raw = (raw,)
        raw = tuple(raw)
        if len(raw) != self.num_factors:
            raise ShapeError(
                f"character {raw} has {len(raw)} residues, group has {self.num_factors} factors"
            )
        return Character(tuple(int(c) % n for c, n in zip(raw, self.factor_orders)))

    def trivial_character(self) -> "Character":
        return Character((0,) * self.num_factors)

    def add(self, c1: "Character", c2: "Character") -> "Character":
        return type(c1)(
            tuple((x + y) % n for x, y, n in zip(c1.residues, c2.residues, self.factor_orders))
        )

    def scale(self, k: int, c: "Character") -> "Character":
        return type(c)(tuple((k * x) % n for x, n in zip(c.residues, self.factor_orders)))

    def character_order(self, c: "Character") -> int:
        """Multiplicative order of ``c`` in the character group."""
        return math.lcm(*(n // math.gcd(n, x) for x, n in zip(c.residues, self.factor_orders)))

    def describe(self) -> str:
        if not self.factor_orders:
            return "trivial group"
        return " x ".join(f"Z/{n}" for n in self.factor_orders)


@dataclass(frozen=True)
class Character:
    residues: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.residues)

    def label(self) -> str:
        """Short name used for variables: ``4`` for cyclic groups, ``1_0`` for products."""
        return "_".join(str(c) for c in self.residues)

    def __str__(self):
        if len(self.residues) == 1:
            return str(self.residues[0])
        return ":".join(str(c) for c in self.residues)


class Weight(Character):
    """Character of a semi-invariant; may be trivial."""


@dataclass(frozen=True)
class CharSupport:
    group: AbelianGroup
    chars: tuple[Character, ...]

    def __post_init__(self):
        seen = set()
        for c in self.chars:
            if len(c.residues) != self.group.num_factors:
                raise ShapeError(f"character {c} does not match {self.group.describe()}")
            if c.is_trivial:
                raise InputError("a support may not contain the trivial character")
            if c in seen:
                raise InputError(f"duplicate character {c} in support")
            seen.add(c)

    @property
    def m(self) -> int:
        return len(self.chars)

    def __len__(self):
        return len(self.chars)

    def __iter__(self):
        return iter(self.chars)

    def var_names(self) -> list[str]:
        return ["x" + c.label() for c in self.chars]

    def describe(self) -> str:
        return "{" + ", ".join(str(c) for c in self.chars) + "}"


@dataclass(frozen=True)
class Representation:
    """A diagonal representation: one character per variable, repeats and trivial ones allowed.

    Weights and the invariant lattice make sense here too; bounds are only
    computed on the reduced support.
    """

    group: AbelianGroup
    chars: tuple[Character, ...]

    @property
    def m(self) -> int:
        return len(self.chars)

    def __len__(self):
        return len(self.chars)

    def __iter__(self):
        return iter(self.chars)

    def var_names(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.m + 1)]

    def describe(self) -> str:
        return "[" + ", ".join(str(c) for c in self.chars) + "]"

    def support(self) -> CharSupport:
        return reduce_support(self.group, self.chars)


def representation(group: AbelianGroup, raw_chars: Iterable[RawCharacter]) -> Representation:
    return Representation(group, tuple(group.character(c) for c in raw_chars))


def make_group(factor_orders: Iterable[int]) -> AbelianGroup:
    """``make_group([3, 3])`` is ``Z/3 x Z/3``; the empty list gives the trivial group."""
    return AbelianGroup(tuple(int(n) for n in factor_orders))


def reduce_support(group: AbelianGroup, raw_chars: Iterable[RawCharacter]) -> CharSupport:
    """Drop trivial and repeated characters, keeping first occurrences in order."""
    out: list[Character] = []
    seen: set[Character] = set()
    for raw in raw_chars:
        c = group.character(raw)
        if c.is_trivial or c in seen:
            continue
        seen.add(c)
        out.append(c)
    return CharSupport(group, tuple(out))


def weight(support, a: Sequence[int]) -> Weight:
    """Character by which ``G`` scales the Laurent monomial ``x^a``."""
    if len(a) != support.m:
        raise ShapeError(f"exponent vector of length {len(a)} for support of size {support.m}")
    group = support.group
    acc = [0] * group.num_factors
    for ai, c in zip(a, support.chars):
        for j, x in enumerate(c.residues):
            acc[j] += ai * x
    return Weight(tuple(v % n for v, n in zip(acc, group.factor_orders)))


def _subgroup_closure(group: AbelianGroup, gens: Sequence[Character]) -> set[tuple[int, ...]]:
    elements = {group.trivial_character().residues}
    for g in gens:
        if g.residues in elements:
            continue
        coset_reps = list(elements)
        step = g
        while step.residues not in elements:
            elements.update(group.add(Character(r), step).residues for r in coset_reps)
            step = group.add(step, g)
    return elements


def effective_order(support: CharSupport) -> int:
    """Order of the subgroup of the character group generated by the support.

    This is the order of the image of ``G`` acting on the representation.
    """
    group = support.group
    if not support.chars:
        return 1
    if group.is_cyclic_presentation:
        n = group.factor_orders[0]
        return n // math.gcd(n, *(c.residues[0] for c in support.chars))
    return len(_subgroup_closure(group, support.chars))


def is_involution(c: Character, group: AbelianGroup) -> bool:
    return group.scale(2, c).is_trivial
