"""Shared test corpus: a deterministic zoo of matroids.

The corpus mixes every small uniform matroid, a few named classics, some
explicit-bases inputs, and a seeded stream of random integer matrices with
occasional zero columns (loops) and duplicated columns (parallel elements).
Size checks in the acceptance suite rely on corpus_upto(9) having at least
200 entries.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from hypothesis import HealthCheck, settings

from mldeg import Matroid, QMatrix, uniform_matroid

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


K4_COLUMNS = [
    # edge columns e_u - e_v of the complete graph on 4 vertices
    (1, -1, 0, 0), (1, 0, -1, 0), (1, 0, 0, -1),
    (0, 1, -1, 0), (0, 1, 0, -1), (0, 0, 1, -1),
]


def k4_matroid() -> Matroid:
    rows = [[col[i] for col in K4_COLUMNS] for i in range(4)]
    return Matroid.from_matrix(QMatrix.from_rows(rows, cols=6))


# Vamos matroid: rank-4 paving matroid on 8 elements whose dependent
# 4-sets are five circuit hyperplanes; not representable over any field,
# so it exercises the explicit-bases path on genuinely non-realizable input.
VAMOS_NONBASES = [
    frozenset(s)
    for s in ([1, 2, 3, 4], [1, 2, 5, 6], [1, 2, 7, 8],
              [3, 4, 5, 6], [3, 4, 7, 8])
]


def vamos_matroid() -> Matroid:
    bases = [
        set(c) for c in combinations(range(1, 9), 4)
        if frozenset(c) not in VAMOS_NONBASES
    ]
    return Matroid.from_bases(8, bases)


def random_matrix(rng: random.Random, n: int, r: int) -> QMatrix:
    """Random r x n integer matrix with loops and parallels mixed in."""
    grid = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
    for j in range(n):
        roll = rng.random()
        if roll < 0.12:
            for i in range(r):
                grid[i][j] = 0
        elif roll < 0.30 and j > 0:
            src = rng.randrange(j)
            scale = rng.choice([1, 1, 2, -1])
            for i in range(r):
                grid[i][j] = scale * grid[i][src]
    return QMatrix.from_rows(grid, cols=n)


def _explicit_copy(M: Matroid) -> Matroid:
    return Matroid.from_bases(M.n, M.bases())


@lru_cache(maxsize=None)
def corpus() -> tuple[Matroid, ...]:
    rng = random.Random(20260809)
    zoo: list[Matroid] = []
    for n in range(1, 7):
        for r in range(1, n + 1):
            zoo.append(uniform_matroid(n, r))
    zoo.append(k4_matroid())
    zoo.append(uniform_matroid(4, 0))  # all loops
    zoo.append(Matroid.from_matrix(QMatrix.from_rows(
        [[Fraction(2, 3), 1, 0], [0, Fraction(1, 5), 1]], cols=3)))
    for n, r in [(4, 2), (4, 3), (5, 2), (5, 3), (6, 3)]:
        zoo.append(_explicit_copy(uniform_matroid(n, r)))
    zoo.append(_explicit_copy(k4_matroid()))
    zoo.append(vamos_matroid())
    while len(zoo) < 218:
        n = rng.randint(2, 9)
        r = rng.randint(1, min(n, 4))
        zoo.append(Matroid.from_matrix(random_matrix(rng, n, r)))
    for _ in range(12):
        r = rng.randint(2, 4)
        zoo.append(Matroid.from_matrix(random_matrix(rng, 10, r)))
    return tuple(zoo)


def corpus_upto(max_n: int, loopless: bool | None = None) -> list[Matroid]:
    out = []
    for M in corpus():
        if M.n > max_n:
            continue
        if loopless is True and not M.is_loopless():
            continue
        if loopless is False and M.is_loopless():
            continue
        out.append(M)
    return out
