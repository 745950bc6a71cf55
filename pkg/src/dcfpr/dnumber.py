"""Discrete belief-mass preference values (D numbers) and their algebra.

A D number assigns positive belief masses to distinct real preference
values. The total mass may be less than 1: the missing mass is information
the source could not commit, not an error, so nothing here renormalizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple, Sequence


class Component(NamedTuple):
    """One (preference value, belief mass) pair."""

    b: float
    v: float


@dataclass(frozen=True)
class MassTolerance:
    """Float tolerances for the algebra.

    merge_eps: two preference values closer than this are the same value.
    mass_eps:  slack allowed on mass sums (and on the Q == 1 test).
    """

    merge_eps: float = 1e-9
    mass_eps: float = 1e-12

    def __post_init__(self) -> None:
        if self.merge_eps <= 0 or self.mass_eps <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOLERANCE = MassTolerance()


class NotReducible(ValueError):
    """Raised when a D number (or matrix cell) has no single certain value.

    row/col are 0-based cell indices when raised from a matrix reduction,
    None otherwise.
    """

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col


@dataclass(frozen=True)
class DNumber:
    """An immutable D number over scalar preference values.

    Components are kept in canonical order (descending mass, ties broken by
    descending value) so equality and serialization are deterministic; the
    order carries no meaning. The empty D number is legal and means total
    ignorance (Q = 0).
    """

    components: tuple[Component, ...] = ()

    def __post_init__(self) -> None:
        comps = tuple(
            sorted(
                (Component(float(b), float(v)) for b, v in self.components),
                key=lambda c: (-c.v, -c.b),
            )
        )
        tol = DEFAULT_TOLERANCE
        for c in comps:
            if not math.isfinite(c.b) or not math.isfinite(c.v):
                raise ValueError(f"non-finite component {c}")
            if c.v <= 0.0:
                raise ValueError(f"belief mass must be positive, got {c.v}")
        total = math.fsum(c.v for c in comps)
        if total > 1.0 + tol.mass_eps:
            raise ValueError(f"total belief mass {total} exceeds 1")
        ordered = sorted(c.b for c in comps)
        for lo, hi in zip(ordered, ordered[1:]):
            if hi - lo <= tol.merge_eps:
                raise ValueError(
                    f"preference values {lo} and {hi} coincide within "
                    f"{tol.merge_eps}; merge them into one component"
                )
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_candidates(
        cls, candidates: Iterable[tuple[float, float]], tol: MassTolerance = DEFAULT_TOLERANCE
    ) -> "DNumber":
        """Build a D number from raw (value, mass) pairs, merging coincident values.

        Pairs whose values agree within tol.merge_eps collapse into one
        component: masses add, and the merged value is the mass-weighted
        mean (which keeps the I value of the candidate set unchanged).
        """
        ordered = sorted(((float(b), float(v)) for b, v in candidates), key=lambda p: p[0])
        clusters: list[list[tuple[float, float]]] = []
        for b, v in ordered:
            if clusters and b - clusters[-1][-1][0] <= tol.merge_eps:
                clusters[-1].append((b, v))
            else:
                clusters.append([(b, v)])
        merged = []
        for cluster in clusters:
            mass = math.fsum(v for _, v in cluster)
            value = math.fsum(b * v for b, v in cluster) / mass
            merged.append(Component(value, mass))
        return cls(tuple(merged))

    def q_value(self) -> float:
        """Total assigned mass: the degree of information completeness, in [0, 1]."""
        return math.fsum(c.v for c in self.components)

    def i_value(self) -> float:
        """Mass-weighted sum of the preference values (the scalar integration)."""
        return math.fsum(c.b * c.v for c in self.components)

    def negated(self) -> "DNumber":
        """Reciprocal counterpart: every value b becomes 1 - b, masses unchanged."""
        return DNumber.from_candidates((1.0 - c.b, c.v) for c in self.components)

    def is_reducible(self, tol: MassTolerance = DEFAULT_TOLERANCE) -> bool:
        """True iff this is a single certain value (one component, Q = 1)."""
        if len(self.components) != 1:
            return False
        return abs(self.components[0].v - 1.0) <= tol.mass_eps

    def as_scalar(self, tol: MassTolerance = DEFAULT_TOLERANCE) -> float:
        """The single certain value, or NotReducible."""
        if not self.is_reducible(tol):
            raise NotReducible(f"{self} does not reduce to a single certain value")
        return self.components[0].b

    def close_to(
        self, other: "DNumber", b_tol: float = 1e-9, v_tol: float = 1e-12
    ) -> bool:
        """Componentwise match within tolerances, comparing canonical forms by value."""
        if len(self.components) != len(other.components):
            return False
        mine = sorted(self.components, key=lambda c: c.b)
        theirs = sorted(other.components, key=lambda c: c.b)
        return all(
            abs(a.b - b.b) <= b_tol and abs(a.v - b.v) <= v_tol
            for a, b in zip(mine, theirs)
        )

    def __str__(self) -> str:
        body = ", ".join(f"({c.b:g}, {c.v:g})" for c in self.components)
        return "{" + body + "}"


CERTAIN_INDIFFERENCE = DNumber(((0.5, 1.0),))


def chain_subtract(
    constant: float,
    chain: Sequence[DNumber],
    tol: MassTolerance = DEFAULT_TOLERANCE,
) -> DNumber:
    """Chained subtraction: constant minus one value drawn from each chain element.

    Every cross-product of components contributes a candidate whose value is
    the constant minus the chosen values (subtracted left to right) and whose
    mass is the product of the chosen masses; coincident candidate values
    merge. The result's Q equals the product of the inputs' Q values, and its
    values may leave [0, 1] (callers normalize later).
    """
    if not chain:
        raise ValueError("chain must contain at least one D number")
    candidates = []
    for combo in product(*(d.components for d in chain)):
        b = float(constant)
        v = 1.0
        for comp in combo:
            b -= comp.b
            v *= comp.v
        candidates.append((b, v))
    return DNumber.from_candidates(candidates, tol)
