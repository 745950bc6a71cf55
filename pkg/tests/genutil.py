"""Random problem generators shared by the property and acceptance suites."""

import numpy as np

from dcfpr import DNumber, Problem

GRID = [round(0.05 * k, 2) for k in range(21)]


def random_certain_problem(rng: np.random.Generator, n: int) -> Problem:
    values = rng.uniform(0.02, 0.98, size=n - 1)
    return Problem(
        tuple(f"A{i + 1}" for i in range(n)),
        tuple(DNumber(((float(v), 1.0),)) for v in values),
    )


def random_uncertain_judgment(rng: np.random.Generator) -> DNumber:
    k = int(rng.integers(1, 3))
    values = rng.choice(GRID, size=k, replace=False)
    masses = rng.uniform(0.05, 1.0, size=k)
    q = float(rng.uniform(0.3, 1.0))
    masses = masses / masses.sum() * q
    return DNumber(tuple((float(b), float(v)) for b, v in zip(values, masses)))


def random_uncertain_problem(rng: np.random.Generator, n: int) -> Problem:
    return Problem(
        tuple(f"A{i + 1}" for i in range(n)),
        tuple(random_uncertain_judgment(rng) for _ in range(n - 1)),
    )


def random_probability_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    upper = rng.uniform(0.0, 1.0, size=(n, n))
    p = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    p[iu] = upper[iu]
    p.T[iu] = 1.0 - upper[iu]
    return p
