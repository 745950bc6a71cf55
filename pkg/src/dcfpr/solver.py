"""Ranking, priority weights, weight intervals, and inconsistency degree.

Pipeline: integrate the D-number matrix to scalar I values, turn I-value
differences plus missing mass into pairwise preference probabilities, pick
the ranking that minimizes the below-diagonal probability sum (a weighted
linear ordering problem), complete the I matrix by splitting missing mass
evenly, then spread weights around 1/n proportionally to consecutive
I-value surpluses, damped by the credibility parameter lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Mapping, NamedTuple, Sequence

import numpy as np

from .dnumber import DEFAULT_TOLERANCE, MassTolerance
from .relations import DPreferenceMatrix

EXACT_SIZE_LIMIT = 12

PRESET_LAMBDAS: Mapping[str, float] = {"high": 2.0, "medium": 4.0, "low": 8.0}

TriangulateMode = Literal["exact", "heuristic", "auto"]


class SizeLimit(ValueError):
    """Exact triangulation requested beyond the supported matrix size."""

    def __init__(self, n: int, limit: int = EXACT_SIZE_LIMIT):
        super().__init__(
            f"exact triangulation supports n <= {limit}, got n = {n}; "
            "use heuristic mode"
        )
        self.n = n
        self.limit = limit


class LambdaTooSmall(ValueError):
    """Requested credibility parameter would drive some weight negative."""

    def __init__(self, lam: float, lambda_min: float):
        super().__init__(
            f"lambda = {lam} is below the feasible minimum {lambda_min}"
        )
        self.lam = lam
        self.lambda_min = lambda_min


@dataclass(frozen=True, eq=False)
class IMatrix:
    """Scalar integration of a D-number matrix plus the per-entry mass totals."""

    entries: np.ndarray
    q: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        q = np.array(self.q, dtype=float)
        if entries.shape != q.shape or entries.ndim != 2:
            raise ValueError("I matrix and Q matrix must be square and congruent")
        entries.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class ProbabilityMatrix:
    """Pairwise probabilities that row alternative beats column alternative."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Ranking:
    """Permutation of alternative indices, most preferred first.

    upset_sum is the below-diagonal probability total of the reordered
    matrix; optimal is False for heuristic results, which are only locally
    minimal under adjacent swaps.
    """

    order: tuple[int, ...]
    upset_sum: float
    optimal: bool = True

    @property
    def n(self) -> int:
        return len(self.order)

    def position(self, alternative: int) -> int:
        """0-based rank position of an alternative index."""
        return self.order.index(alternative)


class WeightInterval(NamedTuple):
    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool


@dataclass(frozen=True, eq=False)
class WeightSolution:
    """Priority weights at one credibility value, with their feasible ranges.

    weights are indexed by original alternative; intervals span from the
    extreme at lambda_min to the indifference limit 1/n reached as lambda
    grows without bound. lambda_min is None when all weights are pinned at
    1/n (fully indifferent problem).
    """

    lam: float
    weights: np.ndarray
    intervals: tuple[WeightInterval, ...]
    lambda_min: float | None

    def __post_init__(self) -> None:
        weights = np.array(self.weights, dtype=float)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)


def i_matrix(matrix: DPreferenceMatrix) -> IMatrix:
    """I values and Q values of every cell."""
    n = matrix.n
    entries = np.empty((n, n))
    q = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            d = matrix.entries[i][j]
            entries[i, j] = d.i_value()
            q[i, j] = d.q_value()
    return IMatrix(entries, q)


def probability_matrix(
    im: IMatrix, tol: MassTolerance = DEFAULT_TOLERANCE
) -> ProbabilityMatrix:
    """Preference probabilities from I-value differences and missing mass.

    With missing mass m = 1 - Q assumed to sit at a uniformly distributed
    unknown value (and at its mirror in the reciprocal cell), the chance
    that i truly beats j is clamp(0.5 + (I_ij - I_ji) / (2m), 0, 1). With
    no missing mass the comparison is decided by sign alone.
    """
    n = im.n
    p = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            diff = im.entries[i, j] - im.entries[j, i]
            m = 1.0 - im.q[i, j]
            if m <= tol.mass_eps:
                if abs(diff) <= 1e-9:
                    p[i, j] = 0.5
                else:
                    p[i, j] = 1.0 if diff > 0 else 0.0
            else:
                p[i, j] = min(1.0, max(0.0, 0.5 + diff / (2.0 * m)))
    return ProbabilityMatrix(p)


def _exact_order(p: np.ndarray) -> tuple[int, ...]:
    """Minimum-upset permutation by dynamic programming over subsets.

    g[mask] is the minimal upset sum attainable by the alternatives in mask
    once everything outside mask is ranked above them. Reconstruction walks
    front to back picking the lowest original index that still achieves the
    optimum, so ties resolve lexicographically.
    """
    n = p.shape[0]
    full = (1 << n) - 1
    # cost_into[x][mask]: probability mass flowing from mask's members to x,
    # i.e. the upsets created by ranking x above everyone in mask
    cost_into = [[0.0] * (full + 1) for _ in range(n)]
    for x in range(n):
        row = cost_into[x]
        for mask in range(1, full + 1):
            low = mask & -mask
            row[mask] = row[mask ^ low] + p[low.bit_length() - 1, x]
    g = [0.0] * (full + 1)
    for mask in range(1, full + 1):
        best = math.inf
        rest = mask
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            cand = cost_into[x][mask ^ low] + g[mask ^ low]
            if cand < best:
                best = cand
        g[mask] = best
    order = []
    mask = full
    while mask:
        for x in range(n):
            bit = 1 << x
            if mask & bit and cost_into[x][mask ^ bit] + g[mask ^ bit] == g[mask]:
                order.append(x)
                mask ^= bit
                break
    return tuple(order)


def _heuristic_order(p: np.ndarray) -> tuple[int, ...]:
    """Descending row sums, then adjacent swaps while they strictly improve."""
    n = p.shape[0]
    sums = p.sum(axis=1)
    order = sorted(range(n), key=lambda i: (-sums[i], i))
    improved = True
    while improved:
        improved = False
        for k in range(n - 1):
            u, w = order[k], order[k + 1]
            if p[u, w] < p[w, u]:
                order[k], order[k + 1] = w, u
                improved = True
    return tuple(order)


def upset_sum(p: np.ndarray, order: Sequence[int]) -> float:
    """Below-diagonal total of the matrix reordered by the given permutation."""
    return math.fsum(
        p[order[lo], order[hi]]
        for hi in range(len(order))
        for lo in range(hi + 1, len(order))
    )


def triangulate(pm: ProbabilityMatrix, mode: TriangulateMode = "auto") -> Ranking:
    """Ranking that minimizes the below-diagonal probability sum.

    Exact mode (subset dynamic programming) is limited to n <= 12; heuristic
    mode is a deterministic adjacent-swap descent. auto picks exact whenever
    the size allows.
    """
    n = pm.n
    if mode == "auto":
        mode = "exact" if n <= EXACT_SIZE_LIMIT else "heuristic"
    if mode == "exact":
        if n > EXACT_SIZE_LIMIT:
            raise SizeLimit(n)
        order = _exact_order(pm.entries)
        return Ranking(order, upset_sum(pm.entries, order), optimal=True)
    if mode == "heuristic":
        order = _heuristic_order(pm.entries)
        return Ranking(order, upset_sum(pm.entries, order), optimal=False)
    raise ValueError(f"unknown triangulation mode {mode!r}")


def inconsistency_degree(ranking: Ranking, pm: ProbabilityMatrix) -> float:
    """Upset sum normalized by the number of pairs; 0 for consistent relations."""
    n = pm.n
    return ranking.upset_sum / (n * (n - 1) / 2)


def completed_i_matrix(im: IMatrix) -> IMatrix:
    """Fill each off-diagonal cell with half its missing mass, making Q = 1."""
    n = im.n
    entries = im.entries.copy()
    off = ~np.eye(n, dtype=bool)
    entries[off] += (1.0 - im.q[off]) / 2.0
    return IMatrix(entries, np.ones((n, n)))


def triangular_view(entries: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """Rows and columns reordered by ranking, most preferred first."""
    idx = np.asarray(order)
    return entries[np.ix_(idx, idx)]


def _rank_offsets(imt: IMatrix, ranking: Ranking) -> tuple[np.ndarray, float]:
    """Cumulative surpluses O_k over the ranked chain and their mean.

    c_k = I(ranked k, ranked k+1) - 0.5 measures how far consecutive ranked
    pairs sit from indifference; O_k is the suffix sum of the c's (O of the
    last position is 0).
    """
    order = ranking.order
    n = len(order)
    offsets = np.zeros(n)
    for k in range(n - 2, -1, -1):
        c_k = imt.entries[order[k], order[k + 1]] - 0.5
        offsets[k] = c_k + offsets[k + 1]
    return offsets, float(np.mean(offsets))


def _lambda_min(offsets: np.ndarray, mean: float, n: int) -> float | None:
    """Smallest lambda keeping all weights nonnegative; None if all O equal."""
    deficits = [n * (mean - o) for o in offsets if o < mean]
    if not deficits:
        return None
    return max(deficits)


def weight_intervals(
    imt: IMatrix, ranking: Ranking
) -> tuple[tuple[WeightInterval, ...], float | None]:
    """Feasible weight range per alternative, oriented around 1/n.

    An alternative above the mean surplus spans (1/n, extreme], one below
    spans [extreme, 1/n); the extreme is attained at lambda_min and 1/n is
    approached but never reached as lambda grows. Degenerate alternatives
    sit at [1/n, 1/n].
    """
    offsets, mean = _rank_offsets(imt, ranking)
    n = ranking.n
    uniform = 1.0 / n
    lambda_min = _lambda_min(offsets, mean, n)
    by_alternative: list[WeightInterval | None] = [None] * n
    for k, alt in enumerate(ranking.order):
        d = offsets[k] - mean
        if lambda_min is None or d == 0.0:
            by_alternative[alt] = WeightInterval(uniform, uniform, True, True)
        elif d > 0.0:
            by_alternative[alt] = WeightInterval(
                uniform, uniform + d / lambda_min, False, True
            )
        else:
            by_alternative[alt] = WeightInterval(
                uniform + d / lambda_min, uniform, True, False
            )
    return tuple(by_alternative), lambda_min


def solve_weights(imt: IMatrix, ranking: Ranking, lam: float) -> WeightSolution:
    """Priority weights at credibility lambda: w = 1/n + (O_k - mean O)/lambda.

    Consecutive ranked weights differ by exactly c_k / lambda, all weights
    sum to 1, and every weight tends to 1/n as lambda grows. Raises
    LambdaTooSmall below the feasibility threshold.
    """
    if not lam > 0.0:
        raise ValueError(f"credibility parameter must be positive, got {lam}")
    offsets, mean = _rank_offsets(imt, ranking)
    n = ranking.n
    lambda_min = _lambda_min(offsets, mean, n)
    if lambda_min is not None and lam < lambda_min - 1e-12:
        raise LambdaTooSmall(lam, lambda_min)
    weights = np.empty(n)
    for k, alt in enumerate(ranking.order):
        weights[alt] = 1.0 / n + (offsets[k] - mean) / lam
    intervals, _ = weight_intervals(imt, ranking)
    return WeightSolution(lam, weights, intervals, lambda_min)


@dataclass(frozen=True, eq=False)
class SolutionBundle:
    """Everything the pipeline derives from one D-number preference matrix."""

    alternatives: tuple[str, ...]
    matrix: DPreferenceMatrix
    integration: IMatrix
    probability: ProbabilityMatrix
    ranking: Ranking
    completed: IMatrix
    inconsistency: float
    requested: WeightSolution
    presets: Mapping[str, WeightSolution | None]
    warnings: tuple[str, ...] = ()

    @property
    def probability_triangular(self) -> np.ndarray:
        return triangular_view(self.probability.entries, self.ranking.order)

    @property
    def completed_triangular(self) -> np.ndarray:
        return triangular_view(self.completed.entries, self.ranking.order)

    @property
    def lambda_min(self) -> float | None:
        return self.requested.lambda_min

    @property
    def intervals(self) -> tuple[WeightInterval, ...]:
        return self.requested.intervals


def resolve_credibility(credibility: str | float) -> float:
    """Preset name or explicit positive lambda value."""
    if isinstance(credibility, str):
        try:
            return PRESET_LAMBDAS[credibility]
        except KeyError:
            raise ValueError(
                f"unknown credibility preset {credibility!r}; "
                f"expected one of {sorted(PRESET_LAMBDAS)} or a number"
            ) from None
    lam = float(credibility)
    if not lam > 0.0:
        raise ValueError(f"credibility parameter must be positive, got {lam}")
    return lam


def solve(
    matrix: DPreferenceMatrix,
    credibility: str | float = "medium",
    mode: TriangulateMode = "auto",
    alternatives: Sequence[str] | None = None,
    tol: MassTolerance = DEFAULT_TOLERANCE,
) -> SolutionBundle:
    """Run the whole pipeline and collect the results.

    Weights are computed for the requested credibility (raising
    LambdaTooSmall if infeasible) and for all three presets; presets that
    fall below lambda_min are reported as None with a warning instead.
    """
    n = matrix.n
    labels = (
        tuple(str(a) for a in alternatives)
        if alternatives is not None
        else tuple(f"A{i + 1}" for i in range(n))
    )
    if len(labels) != n:
        raise ValueError(f"expected {n} alternative labels, got {len(labels)}")
    lam = resolve_credibility(credibility)
    im = i_matrix(matrix)
    pm = probability_matrix(im, tol)
    ranking = triangulate(pm, mode)
    imt = completed_i_matrix(im)
    warnings: list[str] = []
    if not ranking.optimal:
        warnings.append("ranking is heuristic; it may not minimize the upset sum")
    for k in range(n - 1):
        c_k = imt.entries[ranking.order[k], ranking.order[k + 1]] - 0.5
        if c_k < 0:
            warnings.append(
                f"ranked neighbors {k + 1} and {k + 2} invert their pairwise "
                "preference; weights may locally disagree with the ranking"
            )
    requested = solve_weights(imt, ranking, lam)
    presets: dict[str, WeightSolution | None] = {}
    for name, preset_lam in PRESET_LAMBDAS.items():
        try:
            presets[name] = solve_weights(imt, ranking, preset_lam)
        except LambdaTooSmall as exc:
            presets[name] = None
            warnings.append(
                f"preset {name} (lambda = {preset_lam:g}) is infeasible; "
                f"lambda_min = {exc.lambda_min:.12g}"
            )
    return SolutionBundle(
        alternatives=labels,
        matrix=matrix,
        integration=im,
        probability=pm,
        ranking=ranking,
        completed=imt,
        inconsistency=inconsistency_degree(ranking, pm),
        requested=requested,
        presets=presets,
        warnings=tuple(warnings),
    )
