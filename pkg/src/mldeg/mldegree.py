"""Maximum-likelihood degrees of diagonal linear concentration models.

Everything here is a function of the matroid M of the subspace L:

  rmld(M)            = (-2)^r chi(1/2)        reciprocal ML degree
  mld(M)             = |chi(0)|               ML degree
  score_count(M, d)  = d^r T(1 - 1/d, 0)      solutions of the score
                                              equations with exponent d
                                              (d = 2 is rmld, d = 0 is mld)

score_count_dc recomputes the same number by deletion-contraction, which
gives an independent route used in the verification suite.  All degrees are
zero as soon as the matroid has a loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .invariants import char_poly, mobius_invariant, tutte
from .linalg import Subspace
from .matroids import (
    Matroid,
    contract_set,
    flats,
    is_partition_matroid,
    restrict,
)
from .ratpoly import BiPoly, UniPoly

MatroidLike = Union[Matroid, Subspace]


def _as_matroid(source: MatroidLike) -> Matroid:
    if isinstance(source, Matroid):
        return source
    return Matroid.from_subspace(source)


def rmld(M: MatroidLike) -> int:
    """Reciprocal ML degree: (-2)^r chi(1/2), zero when loops are present."""
    M = _as_matroid(M)
    if M.loops():
        return 0
    r = M.full_rank()
    value = Fraction(-2) ** r * char_poly(M).evaluate(Fraction(1, 2))
    if value.denominator != 1 or value < 0:
        raise RuntimeError(f"rmld evaluated to non-count {value}")
    return int(value)


def mld(M: MatroidLike) -> int:
    """ML degree: |chi(0)| = |mu(M)|, zero when loops are present."""
    M = _as_matroid(M)
    if M.loops():
        return 0
    return abs(mobius_invariant(M))


def score_count(M: MatroidLike, d: int) -> int:
    """Number of score-equation solutions (with multiplicity) for generic
    parameters: d^r T(1 - 1/d, 0) for d >= 1, and mld for d = 0."""
    M = _as_matroid(M)
    if d < 0:
        raise ValueError("exponent d must be nonnegative")
    if d == 0:
        return mld(M)
    r = M.full_rank()
    value = Fraction(d) ** r * tutte(M).evaluate(Fraction(d - 1, d), Fraction(0))
    if value.denominator != 1 or value < 0:
        raise RuntimeError(
            f"score count evaluated to non-count {value} (d={d}, r={r})"
        )
    return int(value)


_DC_MEMO: dict = {}


def score_count_dc(M: MatroidLike, d: int) -> int:
    """The same count by deletion-contraction on the smallest element:

        0 on a loop, (d-1) * D(M/e) on a coloop, D(M\\e) + d * D(M/e)
        otherwise, with value 1 on the empty ground set.

    A single coloop therefore counts d-1: solving the one-variable score
    system directly gives x^(d-1) = 1/s.
    """
    M = _as_matroid(M)
    if d < 1:
        raise ValueError("deletion-contraction route needs d >= 1")
    if M.loops():
        return 0
    if M.n == 0:
        return 1
    key = (M.cache_key(), d)
    cached = _DC_MEMO.get(key)
    if cached is not None:
        return cached
    coloops = set(M.coloops())
    if 1 in coloops:
        minor, _ = contract_set(M, {1})
        value = (d - 1) * score_count_dc(minor, d)
    else:
        deleted, _ = restrict(M, set(M.ground) - {1})
        contracted, _ = contract_set(M, {1})
        value = score_count_dc(deleted, d) + d * score_count_dc(contracted, d)
    _DC_MEMO[key] = value
    return value


def _binom(m: int, k: int) -> int:
    # C(m, 0) = 1 for every integer m (the n = r corner needs C(-1, 0)).
    if k == 0:
        return 1
    if k < 0 or m < k:
        return 0
    return math.comb(m, k)


def uniform_tutte(n: int, r: int) -> BiPoly:
    """Tutte polynomial of the uniform matroid U_{r,n}:

        sum_{i=1}^{r} C(n-i-1, r-i) x^i  +  sum_{j=1}^{n-r} C(n-j-1, r-1) y^j
    """
    if not 1 <= r <= n:
        raise ValueError(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    terms: dict[tuple[int, int], int] = {}
    for i in range(1, r + 1):
        c = _binom(n - i - 1, r - i)
        if c:
            terms[(i, 0)] = c
    for j in range(1, n - r + 1):
        c = _binom(n - j - 1, r - 1)
        if c:
            terms[(0, j)] = c
    return BiPoly(terms)


def uniform_rmld(n: int, r: int) -> int:
    """Closed form for the rmld of a generic r-dimensional model in C^n:

        sum_{i=1}^{r} C(n-i-1, r-i) 2^(r-i)
    """
    if not 1 <= r <= n:
        raise ValueError(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    return sum(_binom(n - i - 1, r - i) * 2 ** (r - i) for i in range(1, r + 1))


@dataclass(frozen=True)
class FlatContribution:
    flat: tuple[int, ...]
    count: int          # score count of the restriction to the flat
    mu_contract: int    # |mu| of the contraction by the flat

    def to_json_dict(self) -> dict:
        return {
            "flat": list(self.flat),
            "D": str(self.count),
            "mu_contract": str(self.mu_contract),
        }


@dataclass(frozen=True)
class StratificationReport:
    d: int
    lhs: int
    rhs: int
    per_flat: tuple[FlatContribution, ...]
    holds: bool

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "per_flat": [c.to_json_dict() for c in self.per_flat],
            "holds": self.holds,
        }


def verify_stratification(L: MatroidLike, d: int) -> StratificationReport:
    """Check d^r |mu(M)| against the stratum-by-stratum count

        sum over flats F of D(M|F, d) * |mu(M/F)|

    computed entirely by the combinatorial formulas.  For d = 0 the score
    equations are linear and every solution has full support, so the
    identity degenerates to |mu(M)| = D(M, 0) with the full ground set as
    the only stratum.
    """
    M = _as_matroid(L)
    if d < 0:
        raise ValueError("exponent d must be nonnegative")
    if M.loops():
        raise ValueError("stratification identity needs a loopless matroid")
    mu_abs = abs(mobius_invariant(M))
    if d == 0:
        top_count = score_count(M, 0)
        contribution = FlatContribution(flat=M.ground, count=top_count, mu_contract=1)
        return StratificationReport(
            d=0, lhs=mu_abs, rhs=top_count, per_flat=(contribution,),
            holds=mu_abs == top_count,
        )
    r = M.full_rank()
    lhs = d ** r * mu_abs
    contributions = []
    rhs = 0
    for F in flats(M).flats:
        restriction, _ = restrict(M, F)
        count = score_count(restriction, d)
        contraction, _ = contract_set(M, F)
        mu_c = abs(mobius_invariant(contraction))
        rhs += count * mu_c
        contributions.append(
            FlatContribution(flat=tuple(sorted(F)), count=count, mu_contract=mu_c)
        )
    return StratificationReport(
        d=d, lhs=lhs, rhs=rhs, per_flat=tuple(contributions), holds=lhs == rhs
    )


@dataclass(frozen=True)
class RmldOneReport:
    """The four equivalent ways a model can have reciprocal ML degree 1."""

    rmld_is_one: bool
    partition_matroid: bool
    mld_is_one: bool
    reciprocal_linear: bool   # chi = (t-1)^r, i.e. the inverse model is linear

    @property
    def value(self) -> bool:
        return self.rmld_is_one

    def to_json_dict(self) -> dict:
        return {
            "rmld_is_one": self.rmld_is_one,
            "partition_matroid": self.partition_matroid,
            "mld_is_one": self.mld_is_one,
            "reciprocal_linear": self.reciprocal_linear,
        }


def classify_rmld_one(M: MatroidLike) -> RmldOneReport:
    """Evaluate all four conditions and insist that they agree."""
    M = _as_matroid(M)
    r = M.full_rank()
    report = RmldOneReport(
        rmld_is_one=rmld(M) == 1,
        partition_matroid=is_partition_matroid(M),
        mld_is_one=mld(M) == 1,
        reciprocal_linear=char_poly(M) == UniPoly((-1, 1)) ** r,
    )
    answers = {
        report.rmld_is_one,
        report.partition_matroid,
        report.mld_is_one,
        report.reciprocal_linear,
    }
    if len(answers) != 1:
        raise RuntimeError(
            f"rmld = 1 equivalences disagree: {report.to_json_dict()}"
        )
    return report


@dataclass(frozen=True)
class MLDegreeReport:
    d: int
    value: int
    rmld: int
    mld: int
    method: str

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "value": str(self.value),
            "rmld": str(self.rmld),
            "mld": str(self.mld),
            "method": self.method,
        }


def ml_degree_report(M: MatroidLike, d: int = 2) -> MLDegreeReport:
    M = _as_matroid(M)
    return MLDegreeReport(
        d=d,
        value=score_count(M, d),
        rmld=rmld(M),
        mld=mld(M),
        method="formula",
    )
