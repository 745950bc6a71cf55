"""Construction and checking of reciprocal preference matrices.

Two matrix families live here: classical real-valued relations that are
additively consistent by construction, and their D-number generalization
built from the same chain of n-1 consecutive pairwise judgments. Both use
the affine rescaling (r + a) / (1 + 2a) to pull out-of-range values back
into [0, 1] without breaking reciprocity or consistency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dnumber import (
    CERTAIN_INDIFFERENCE,
    DEFAULT_TOLERANCE,
    DNumber,
    MassTolerance,
    NotReducible,
    chain_subtract,
)

RECIPROCITY_TOL = 1e-9
CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class Problem:
    """Named alternatives plus the chain of n-1 consecutive judgments.

    judgments[k] expresses the preference of alternative k over alternative
    k+1 (0-based); each must carry some mass (Q > 0) and only values in
    [0, 1].
    """

    alternatives: tuple[str, ...]
    judgments: tuple[DNumber, ...]

    def __post_init__(self) -> None:
        labels = tuple(str(a) for a in self.alternatives)
        if len(labels) < 2:
            raise ValueError("a problem needs at least two alternatives")
        if any(not a.strip() for a in labels):
            raise ValueError("alternative labels must be non-empty")
        if len(set(labels)) != len(labels):
            raise ValueError("alternative labels must be unique")
        judgments = tuple(self.judgments)
        if len(judgments) != len(labels) - 1:
            raise ValueError(
                f"expected {len(labels) - 1} judgments for {len(labels)} "
                f"alternatives, got {len(judgments)}"
            )
        for k, d in enumerate(judgments):
            if d.q_value() <= 0.0:
                raise ValueError(f"judgment {k + 1} carries no belief mass")
            for c in d.components:
                if not 0.0 <= c.b <= 1.0:
                    raise ValueError(
                        f"judgment {k + 1} has preference value {c.b} outside [0, 1]"
                    )
        object.__setattr__(self, "alternatives", labels)
        object.__setattr__(self, "judgments", judgments)

    @property
    def n(self) -> int:
        return len(self.alternatives)


@dataclass(frozen=True, eq=False)
class FuzzyPreferenceRelation:
    """Real-valued reciprocal preference matrix (r_ii = 0.5, r_ij + r_ji = 1)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError("preference relation must be a square matrix")
        if entries.shape[0] < 2:
            raise ValueError("preference relation needs at least two alternatives")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DPreferenceMatrix:
    """Square matrix of D numbers, reciprocal under value negation.

    normalization_shift records the rescaling parameter a applied during
    construction (0 when every value already sat in [0, 1]).
    """

    entries: tuple[tuple[DNumber, ...], ...]
    normalization_shift: float = 0.0

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        n = len(rows)
        if n < 2 or any(len(row) != n for row in rows):
            raise ValueError("D preference matrix must be square with n >= 2")
        if self.normalization_shift < 0:
            raise ValueError("normalization shift must be nonnegative")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Violation:
    """One broken invariant: which rule, where (1-based indices), how badly."""

    rule: str
    where: tuple[int, ...]
    magnitude: float
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_rule(self, rule: str) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.rule == rule)

    def __str__(self) -> str:
        if self.ok:
            return "no violations"
        return "\n".join(v.message for v in self.violations)


def shift_normalizer(values_min: float, values_max: float) -> float:
    """Rescaling parameter a >= 0 that maps [min, max] into [0, 1].

    Reciprocity makes underflow and overflow symmetric in well-formed
    matrices, but both guards are kept so degenerate inputs still land in
    range.
    """
    return max(-values_min, values_max - 1.0, 0.0)


def build_cfpr(values: Sequence[float]) -> FuzzyPreferenceRelation:
    """Classical consistent relation from the n-1 judgments r_k(k+1).

    The lower triangle comes from the additive-transitivity chain
    r_ji = (j - i + 1)/2 - r_i(i+1) - ... - r_(j-1)j, the upper triangle by
    reciprocity; an affine rescale is applied if any entry leaves [0, 1].
    """
    vals = [float(v) for v in values]
    if len(vals) < 1:
        raise ValueError("need at least one judgment value")
    for k, v in enumerate(vals):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"judgment value {v} at position {k + 1} outside [0, 1]")
    n = len(vals) + 1
    r = np.full((n, n), 0.5)
    for j in range(n):
        for i in range(j):
            # same left-to-right subtraction as the D-number chain, so the
            # certain case reduces bit-for-bit
            b = (j - i + 1) / 2.0
            for k in range(i, j):
                b -= vals[k]
            r[j, i] = b
            r[i, j] = 1.0 - b
    off = ~np.eye(n, dtype=bool)
    a = shift_normalizer(r[off].min(), r[off].max())
    if a > 0.0:
        r[off] = (r[off] + a) / (1.0 + 2.0 * a)
    return FuzzyPreferenceRelation(r)


def raw_dcfpr(problem: Problem, tol: MassTolerance = DEFAULT_TOLERANCE) -> DPreferenceMatrix:
    """D-number matrix before range normalization; values may leave [0, 1]."""
    n = problem.n
    grid: list[list[DNumber]] = [[CERTAIN_INDIFFERENCE] * n for _ in range(n)]
    for j in range(n):
        for i in range(j):
            lower = chain_subtract((j - i + 1) / 2.0, problem.judgments[i:j], tol)
            grid[j][i] = lower
            grid[i][j] = lower.negated()
    return DPreferenceMatrix(tuple(tuple(row) for row in grid))


def shift_parameter(
    matrix: DPreferenceMatrix | Sequence[Sequence[DNumber]],
) -> float:
    """Rescaling parameter a for a constructed (pre-normalization) matrix."""
    entries = matrix.entries if isinstance(matrix, DPreferenceMatrix) else matrix
    values = [c.b for row in entries for d in row for c in d.components]
    return shift_normalizer(min(values), max(values))


def build_dcfpr(problem: Problem, tol: MassTolerance = DEFAULT_TOLERANCE) -> DPreferenceMatrix:
    """D-number preference matrix from the judgment chain.

    Lower-triangle entries come from chained subtraction with constant
    (j - i + 1)/2, the upper triangle from negation. If any value falls
    outside [0, 1], every off-diagonal value is rescaled by
    (b + a) / (1 + 2a); masses are never touched and the diagonal stays
    exactly {(0.5, 1.0)}.
    """
    raw = raw_dcfpr(problem, tol)
    a = shift_parameter(raw)
    if a == 0.0:
        return raw
    scale = 1.0 + 2.0 * a
    rows = []
    for i, row in enumerate(raw.entries):
        new_row = []
        for j, d in enumerate(row):
            if i == j:
                new_row.append(CERTAIN_INDIFFERENCE)
            else:
                new_row.append(
                    DNumber.from_candidates(
                        (((c.b + a) / scale, c.v) for c in d.components), tol
                    )
                )
        rows.append(tuple(new_row))
    return DPreferenceMatrix(tuple(rows), normalization_shift=a)


def _verify_fuzzy(matrix: FuzzyPreferenceRelation) -> ValidationReport:
    r = matrix.entries
    n = matrix.n
    found: list[Violation] = []
    for i in range(n):
        gap = abs(r[i, i] - 0.5)
        if gap > RECIPROCITY_TOL:
            found.append(
                Violation(
                    "diagonal",
                    (i + 1,),
                    gap,
                    f"diagonal entry ({i + 1},{i + 1}) = {r[i, i]} is not 0.5",
                )
            )
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(r[i, j] + r[j, i] - 1.0)
            if gap > RECIPROCITY_TOL:
                found.append(
                    Violation(
                        "reciprocity",
                        (i + 1, j + 1),
                        gap,
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) "
                        f"sum to {r[i, j] + r[j, i]}, not 1",
                    )
                )
    for i in range(n):
        for j in range(n):
            overshoot = max(-r[i, j], r[i, j] - 1.0)
            if overshoot > RECIPROCITY_TOL:
                found.append(
                    Violation(
                        "range",
                        (i + 1, j + 1),
                        overshoot,
                        f"entry ({i + 1},{j + 1}) = {r[i, j]} outside [0, 1]",
                    )
                )
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                gap = abs(r[i, j] + r[j, k] + r[k, i] - 1.5)
                if gap > CONSISTENCY_TOL:
                    found.append(
                        Violation(
                            "additive-consistency",
                            (i + 1, j + 1, k + 1),
                            gap,
                            f"triple ({i + 1},{j + 1},{k + 1}) sums to "
                            f"{r[i, j] + r[j, k] + r[k, i]}, not 1.5",
                        )
                    )
    return ValidationReport(tuple(found))


def _verify_dmatrix(matrix: DPreferenceMatrix) -> ValidationReport:
    entries = matrix.entries
    n = matrix.n
    found: list[Violation] = []
    for i in range(n):
        d = entries[i][i]
        if not d.close_to(CERTAIN_INDIFFERENCE):
            found.append(
                Violation(
                    "diagonal",
                    (i + 1,),
                    float("nan"),
                    f"diagonal entry ({i + 1},{i + 1}) = {d} is not {{(0.5, 1)}}",
                )
            )
    for i in range(n):
        for j in range(i + 1, n):
            if not entries[j][i].close_to(entries[i][j].negated()):
                found.append(
                    Violation(
                        "reciprocity",
                        (i + 1, j + 1),
                        float("nan"),
                        f"entry ({j + 1},{i + 1}) = {entries[j][i]} is not the "
                        f"negation of ({i + 1},{j + 1}) = {entries[i][j]}",
                    )
                )
    for i in range(n):
        for j in range(n):
            for c in entries[i][j].components:
                overshoot = max(-c.b, c.b - 1.0)
                if overshoot > RECIPROCITY_TOL:
                    found.append(
                        Violation(
                            "range",
                            (i + 1, j + 1),
                            overshoot,
                            f"entry ({i + 1},{j + 1}) holds value {c.b} outside [0, 1]",
                        )
                    )
    return ValidationReport(tuple(found))


def verify(matrix: Union[FuzzyPreferenceRelation, DPreferenceMatrix]) -> ValidationReport:
    """Check every matrix invariant; the report is empty iff all hold."""
    if isinstance(matrix, FuzzyPreferenceRelation):
        return _verify_fuzzy(matrix)
    if isinstance(matrix, DPreferenceMatrix):
        return _verify_dmatrix(matrix)
    raise TypeError(f"cannot verify {type(matrix).__name__}")


def reduce(matrix: DPreferenceMatrix) -> FuzzyPreferenceRelation:
    """Collapse a matrix of certain singletons to its classical counterpart.

    Raises NotReducible at the first (row-major) cell that is uncertain or
    incomplete.
    """
    n = matrix.n
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            d = matrix.entries[i][j]
            try:
                out[i, j] = d.as_scalar()
            except NotReducible:
                raise NotReducible(
                    f"cell ({i + 1},{j + 1}) = {d} does not reduce to a "
                    "single certain value",
                    row=i,
                    col=j,
                ) from None
    return FuzzyPreferenceRelation(out)
