"""Tutte polynomial, characteristic polynomial, and friends.

The production Tutte computation is deletion-contraction with loops and
coloops batched out first and the branch element fixed to the smallest
index, memoized on the canonical key of each minor (rref of the realizing
subspace, or the sorted bases list).  The corank-nullity expansion over all
subsets is kept as an independent oracle, and the flats/Moebius expansion of
the characteristic polynomial doubles as a second oracle for that
derivation.

The memo table is shared module-wide: canonical keys make minors of
different inputs coincide, which is where most of the reuse comes from.
Entries are only ever inserted, never changed, so concurrent readers under
the interpreter lock see consistent values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matroids import Matroid, contract_set, flats, restrict
from .ratpoly import BiPoly, UniPoly

_TUTTE_MEMO: dict = {}


def clear_tutte_cache() -> None:
    _TUTTE_MEMO.clear()


def tutte(M: Matroid) -> BiPoly:
    """Tutte polynomial by deletion-contraction.

    Loops contribute a factor y, coloops a factor x, and otherwise
    T = T(delete e) + T(contract e) on the smallest remaining element.
    """
    key = M.cache_key()
    cached = _TUTTE_MEMO.get(key)
    if cached is not None:
        return cached
    if M.n == 0:
        result = BiPoly.one()
        _TUTTE_MEMO[key] = result
        return result
    loops = M.loops()
    core = M
    if loops:
        core, _ = restrict(M, set(M.ground) - set(loops))
    coloops = core.coloops()
    if coloops:
        core, _ = contract_set(core, coloops)
    factor = BiPoly({(len(coloops), len(loops)): 1})
    if core.n == 0:
        result = factor
    else:
        left, _ = restrict(core, set(core.ground) - {1})
        right, _ = contract_set(core, {1})
        result = factor * (tutte(left) + tutte(right))
    _TUTTE_MEMO[key] = result
    return result


def tutte_bruteforce(M: Matroid) -> BiPoly:
    """Corank-nullity expansion over all 2^n subsets (independent oracle):

        T(x, y) = sum over A of (x-1)^(r - rk A) * (y-1)^(|A| - rk A).
    """
    if M.n > 24:
        raise ValueError(f"brute-force Tutte limited to 24 elements, got {M.n}")
    r = M.full_rank()
    counts: dict[tuple[int, int], int] = {}
    ground = M.ground
    for mask in range(1 << M.n):
        subset = [ground[i] for i in range(M.n) if mask >> i & 1]
        key = (M.rank(subset), len(subset))
        counts[key] = counts.get(key, 0) + 1
    xm1 = BiPoly({(1, 0): 1, (0, 0): -1})
    ym1 = BiPoly({(0, 1): 1, (0, 0): -1})
    xpow = [BiPoly.one()]
    for _ in range(r):
        xpow.append(xpow[-1] * xm1)
    ypow = [BiPoly.one()]
    for _ in range(M.n - r if M.n >= r else 0):
        ypow.append(ypow[-1] * ym1)
    total = BiPoly.zero()
    for (rk, size), mult in counts.items():
        total = total + (xpow[r - rk] * ypow[size - rk]).scale(mult)
    return total


def char_poly(M: Matroid) -> UniPoly:
    """Characteristic polynomial chi(t) = (-1)^r T(1-t, 0).

    Zero when the matroid has a loop (y divides T, so the y=0 slice dies).
    """
    T = tutte(M)
    slice_x = T.x_slice_at_y_zero()
    composed = slice_x.compose_linear(1, -1)
    sign = -1 if M.full_rank() % 2 else 1
    return composed.scale(sign)


def char_poly_flats(M: Matroid) -> UniPoly:
    """Oracle route: chi(t) = sum over flats F of mu(empty, F) t^(r - rk F).

    Valid for loopless matroids; returns the zero polynomial otherwise to
    match the loop convention.
    """
    if M.loops():
        return UniPoly.zero()
    lattice = flats(M)
    r = M.full_rank()
    coeffs = [0] * (r + 1)
    for j, F in enumerate(lattice.flats):
        coeffs[r - lattice.ranks[j]] += lattice.mobius[(0, j)]
    return UniPoly(coeffs)


def mobius_invariant(M: Matroid) -> int:
    """mu(M) = chi(0); its absolute value is the degree of the reciprocal
    linear space of any realization."""
    value = char_poly(M).evaluate(0)
    return int(value)


def poincare_poly(M: Matroid) -> UniPoly:
    """Poincare polynomial of the arrangement complement of a realization:
    P(q) = (-q)^r chi(1/(-q)) read off as a coefficient reversal of chi.

    Defined for loopless matroids; coefficients are nonnegative with
    constant term 1.
    """
    if M.loops():
        raise ValueError("Poincare polynomial undefined for matroids with loops")
    chi = char_poly(M)
    r = M.full_rank()
    coeffs = list(chi.coeffs) + [0] * (r + 1 - len(chi.coeffs))
    rev = [(-1) ** j * coeffs[r - j] for j in range(r + 1)]
    if any(c < 0 for c in rev):
        raise AssertionError(f"negative Poincare coefficient from chi={chi!r}")
    return UniPoly(rev)


@dataclass(frozen=True)
class InvariantReport:
    n: int
    rank: int
    tutte: BiPoly
    charpoly: UniPoly
    mobius: int
    poincare: UniPoly | None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "tutte": self.tutte.to_term_list(),
            "charpoly": self.charpoly.to_coeff_strings(),
            "mobius": str(self.mobius),
            "poincare": (self.poincare.to_coeff_strings()
                         if self.poincare is not None else None),
        }


def compute_invariants(M: Matroid) -> InvariantReport:
    T = tutte(M)
    chi = char_poly(M)
    poincare = poincare_poly(M) if M.is_loopless() else None
    return InvariantReport(
        n=M.n,
        rank=M.full_rank(),
        tutte=T,
        charpoly=chi,
        mobius=int(chi.evaluate(0)),
        poincare=poincare,
    )
