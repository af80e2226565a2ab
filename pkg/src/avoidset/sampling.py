"""Random valid instances for property checks."""

from __future__ import annotations

import numpy as np

from .constructions import cross_avoiding_star_pair, level_family, powerset_pair
from .search import closure
from .setcore import AvoidOne, Family, uniform_family


def random_family(rng: np.random.Generator, n: int, max_size: int = 256) -> Family:
    size = int(rng.integers(0, min(max_size, 1 << n) + 1))
    return Family.from_masks(n, rng.integers(0, 1 << n, size=size, dtype=np.uint64))


def _thin(rng: np.random.Generator, F: Family, keep: float) -> Family:
    return F.filter(rng.random(len(F)) < keep)


def random_cross_avoiding_pair(rng: np.random.Generator, n: int, t: int) -> tuple[Family, Family]:
    """A t-cross-avoiding pair in P[n] x P[n], either random-seeded or a thinned extremal pair."""
    c = AvoidOne(t)
    if rng.random() < 0.5:
        seed = Family.from_masks(n, rng.integers(0, 1 << n, size=int(rng.integers(1, 7)), dtype=np.uint64))
        A = seed
    elif t == 1:
        S = int(rng.integers(0, 1 << n))
        A, _ = powerset_pair(n, S)
        A = _thin(rng, A, float(rng.uniform(0.3, 1.0)))
    else:
        A = _thin(rng, level_family(n, t - 1), float(rng.uniform(0.3, 1.0)))
    B = _thin(rng, closure(A, c), float(rng.uniform(0.3, 1.0)))
    if rng.random() < 0.5:
        A, B = B, A
    return A, B


def random_uniform_cross_avoiding_pair(rng: np.random.Generator, n: int, r: int, t: int) -> tuple[Family, Family]:
    c = AvoidOne(t)
    if rng.random() < 0.5:
        level = uniform_family(n, r)
        pick = rng.choice(len(level), size=min(len(level), int(rng.integers(1, 9))), replace=False)
        A = Family.from_masks(n, level.members[pick])
    else:
        X = int(rng.integers(1, (1 << n) - 1))
        a = int(rng.integers(0, t))
        b = int(rng.integers(0, t - a))
        A, _ = cross_avoiding_star_pair(n, r, t, X, a, b)
        A = _thin(rng, A, float(rng.uniform(0.3, 1.0)))
    B = _thin(rng, closure(A, c, r), float(rng.uniform(0.3, 1.0)))
    if rng.random() < 0.5:
        A, B = B, A
    return A, B
