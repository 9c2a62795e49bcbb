"""Matroids on the ground set {1, ..., n} with an exact rank oracle.

A matroid is realized by a subspace (rank of a subset = rank of the matching
column submatrix of the basis matrix) or given explicitly by its list of
bases (rank of S = largest intersection of S with a basis).  Explicit input
exists so that purely combinatorial formulas can be exercised on matroids
with no realization at hand.

Rank and closure queries are memoized per instance; the caches are filled
monotonically with values that never change, so concurrent readers are safe
under the interpreter lock.  The lattice of flats, once built, is immutable.

Minor operations relabel the surviving ground set by order-preserving
compression and return the relabeling alongside: element k of the minor sat
at ambient index labels[k-1].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .linalg import (
    QMatrix,
    Subspace,
    contract_subspace,
    rank_int_rows,
    restrict_subspace,
)


class Matroid:
    """Ground set {1..n} plus a rank oracle, realized or explicit."""

    __slots__ = (
        "n",
        "_subspace",
        "_int_rows",
        "_bases",
        "_rank_cache",
        "_closure_cache",
        "_lattice",
        "_components",
    )

    def __init__(self, n: int, subspace: Subspace | None = None,
                 bases: Iterable[Iterable[int]] | None = None):
        if n < 0:
            raise ValueError("ground set size must be nonnegative")
        if (subspace is None) == (bases is None):
            raise ValueError("provide exactly one of subspace or bases")
        self.n = n
        self._subspace = subspace
        self._int_rows = None
        self._bases = None
        self._rank_cache: dict[frozenset, int] = {}
        self._closure_cache: dict[frozenset, frozenset] = {}
        self._lattice = None
        self._components = None
        if subspace is not None:
            if subspace.ambient_n != n:
                raise ValueError("subspace ambient dimension must equal n")
            self._int_rows = _scaled_integer_rows(subspace.basis)
        else:
            blist = [frozenset(int(e) for e in b) for b in bases]
            if not blist:
                raise ValueError("an explicit matroid needs at least one basis")
            size = len(blist[0])
            for b in blist:
                if len(b) != size:
                    raise ValueError("bases must all have the same size")
                if any(e < 1 or e > n for e in b):
                    raise ValueError("basis element outside 1..n")
            self._bases = tuple(sorted(blist, key=sorted))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_matrix(cls, A: QMatrix) -> "Matroid":
        """Column matroid of A: a subset is independent when its columns are."""
        return cls(A.cols, subspace=Subspace.from_matrix(A))

    @classmethod
    def from_subspace(cls, L: Subspace) -> "Matroid":
        return cls(L.ambient_n, subspace=L)

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        return cls(n, bases=bases)

    @property
    def is_realized(self) -> bool:
        return self._subspace is not None

    @property
    def subspace(self) -> Subspace:
        if self._subspace is None:
            raise ValueError("matroid has no realization")
        return self._subspace

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def cache_key(self) -> tuple:
        """Canonical hashable key: equal keys mean equal labeled matroids."""
        if self._subspace is not None:
            return ("rref", self.n, self._subspace.basis.entries)
        return ("bases", self.n, tuple(tuple(sorted(b)) for b in self._bases))

    # -- rank oracle -------------------------------------------------------

    def _subset(self, S: Iterable[int]) -> frozenset:
        fs = frozenset(int(e) for e in S)
        if any(e < 1 or e > self.n for e in fs):
            raise ValueError(f"subset {sorted(fs)} not inside 1..{self.n}")
        return fs

    def rank(self, S: Iterable[int]) -> int:
        fs = self._subset(S)
        cached = self._rank_cache.get(fs)
        if cached is not None:
            return cached
        if self._subspace is not None:
            cols = sorted(fs)
            rows = [[row[j - 1] for j in cols] for row in self._int_rows]
            value = rank_int_rows(rows) if cols else 0
        else:
            value = max((len(b & fs) for b in self._bases), default=0)
        self._rank_cache[fs] = value
        return value

    def full_rank(self) -> int:
        return self.rank(self.ground)

    def is_independent(self, S: Iterable[int]) -> bool:
        fs = self._subset(S)
        return self.rank(fs) == len(fs)

    def closure(self, S: Iterable[int]) -> frozenset:
        """Largest superset of S with the same rank."""
        fs = self._subset(S)
        cached = self._closure_cache.get(fs)
        if cached is not None:
            return cached
        rk = self.rank(fs)
        out = set(fs)
        for e in range(1, self.n + 1):
            if e not in out and self.rank(fs | {e}) == rk:
                out.add(e)
        result = frozenset(out)
        self._closure_cache[fs] = result
        return result

    def loops(self) -> tuple[int, ...]:
        return tuple(e for e in self.ground if self.rank({e}) == 0)

    def coloops(self) -> tuple[int, ...]:
        r = self.full_rank()
        full = set(self.ground)
        return tuple(e for e in self.ground if self.rank(full - {e}) == r - 1)

    def is_loopless(self) -> bool:
        return not self.loops()

    def bases(self) -> tuple[frozenset, ...]:
        """All bases (enumerated by rank queries in the realized case)."""
        if self._bases is not None:
            return self._bases
        r = self.full_rank()
        out = [frozenset(c) for c in combinations(self.ground, r)
               if self.rank(c) == r]
        return tuple(sorted(out, key=sorted))

    def __repr__(self) -> str:
        kind = "realized" if self.is_realized else "explicit"
        return f"Matroid(n={self.n}, rank={self.full_rank()}, {kind})"


def _scaled_integer_rows(B: QMatrix) -> list[list[int]]:
    rows = []
    for row in B.entries:
        mult = 1
        for e in row:
            d = e.denominator
            mult = mult * d // gcd(mult, d)
        rows.append([int(e * mult) for e in row])
    return rows


def matroid_from_matrix(A: QMatrix) -> Matroid:
    return Matroid.from_matrix(A)


def uniform_matroid(n: int, r: int) -> Matroid:
    """U_{r,n}, realized by a moment-curve matrix (any r columns independent)."""
    if not 0 <= r <= n:
        raise ValueError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    if r == 0:
        return Matroid.from_subspace(Subspace.zero(n))
    grid = [[Fraction(j ** i) for j in range(1, n + 1)] for i in range(r)]
    return Matroid.from_matrix(QMatrix.from_rows(grid, cols=n))


# -- minors ----------------------------------------------------------------


def _compress_labels(keep: Sequence[int]) -> dict[int, int]:
    return {old: new for new, old in enumerate(sorted(keep), start=1)}


def restrict(M: Matroid, F: Iterable[int]) -> tuple[Matroid, tuple[int, ...]]:
    """Restriction M|F on the relabeled ground set {1..|F|}.

    rank_{M|F}(S) = rank_M(S); returns (minor, surviving ambient labels).
    """
    keep = sorted(M._subset(F))
    labels = tuple(keep)
    if M.is_realized:
        sub, _ = restrict_subspace(M.subspace, keep)
        return Matroid.from_subspace(sub), labels
    relabel = _compress_labels(keep)
    r = M.rank(keep)
    new_bases = [
        frozenset(relabel[e] for e in S)
        for S in combinations(keep, r)
        if M.rank(S) == r
    ]
    return Matroid.from_bases(len(keep), new_bases), labels


def contract_set(M: Matroid, I: Iterable[int]) -> tuple[Matroid, tuple[int, ...]]:
    """Contraction M/I on the relabeled ground set {1..n-|I|}.

    rank_{M/I}(S) = rank_M(S + I) - rank_M(I).
    """
    drop = sorted(M._subset(I))
    keep = [e for e in M.ground if e not in set(drop)]
    labels = tuple(keep)
    if M.is_realized:
        sub, _ = contract_subspace(M.subspace, drop)
        return Matroid.from_subspace(sub), labels
    relabel = _compress_labels(keep)
    rk_drop = M.rank(drop)
    r = M.full_rank() - rk_drop
    new_bases = [
        frozenset(relabel[e] for e in S)
        for S in combinations(keep, r)
        if M.rank(set(S) | set(drop)) == rk_drop + r
    ]
    return Matroid.from_bases(len(keep), new_bases), labels


def delete(M: Matroid, e: int) -> tuple[Matroid, tuple[int, ...]]:
    fs = M._subset({e})
    return restrict(M, set(M.ground) - fs)


def contract(M: Matroid, e: int) -> tuple[Matroid, tuple[int, ...]]:
    return contract_set(M, {e})


# -- lattice of flats --------------------------------------------------------


@dataclass(frozen=True)
class FlatLattice:
    """All flats of a matroid with the Moebius function of the lattice.

    Flats are sorted by (rank, sorted elements); flat 0 is the bottom
    (closure of the empty set), the last flat is the full ground set.
    mobius[(i, j)] = mu(F_i, F_j) for every pair with F_i contained in F_j.
    """

    flats: tuple[frozenset, ...]
    ranks: tuple[int, ...]
    mobius: dict

    @property
    def bottom(self) -> frozenset:
        return self.flats[0]

    @property
    def top(self) -> frozenset:
        return self.flats[-1]

    def index_of(self, F: Iterable[int]) -> int:
        fs = frozenset(F)
        for i, flat in enumerate(self.flats):
            if flat == fs:
                return i
        raise KeyError(f"{sorted(fs)} is not a flat")

    def mu(self, F_small: Iterable[int], F_big: Iterable[int]) -> int:
        return self.mobius[(self.index_of(F_small), self.index_of(F_big))]

    def mu_bottom(self, F: Iterable[int]) -> int:
        return self.mobius[(0, self.index_of(F))]

    def mobius_from_bottom(self) -> tuple[int, ...]:
        return tuple(self.mobius[(0, j)] for j in range(len(self.flats)))

    def to_json_dict(self) -> dict:
        return {
            "flats": [sorted(f) for f in self.flats],
            "mobius_from_bottom": list(self.mobius_from_bottom()),
        }


# All-subsets closure enumeration stays feasible through n = 16; past that
# the lattice is grown rank by rank through single-element closures.
_SUBSET_ENUM_LIMIT = 16


def _flats_by_enumeration(M: Matroid) -> set[frozenset]:
    found = set()
    ground = M.ground
    for k in range(M.n + 1):
        for S in combinations(ground, k):
            found.add(M.closure(S))
    return found


def _flats_by_extension(M: Matroid) -> set[frozenset]:
    bottom = M.closure(())
    found = {bottom}
    level = {bottom}
    while level:
        nxt = set()
        for F in level:
            for e in M.ground:
                if e not in F:
                    G = M.closure(F | {e})
                    if G not in found:
                        nxt.add(G)
        found |= nxt
        level = nxt
    return found


def flats(M: Matroid) -> FlatLattice:
    """The lattice of flats with all Moebius values mu(F', F).

    The bottom flat is the closure of the empty set (the set of loops), so
    the empty set is a flat exactly when the matroid is loopless.
    """
    if M._lattice is not None:
        return M._lattice
    raw = (_flats_by_enumeration(M) if M.n <= _SUBSET_ENUM_LIMIT
           else _flats_by_extension(M))
    ordered = sorted(raw, key=lambda f: (M.rank(f), sorted(f)))
    ranks = tuple(M.rank(f) for f in ordered)
    count = len(ordered)
    # Containment table; proper subflats always have strictly smaller rank,
    # so index order is a linear extension of the lattice order.
    leq = [[(ordered[i] <= ordered[j]) for j in range(count)] for i in range(count)]
    mobius: dict = {}
    for i in range(count):
        mobius[(i, i)] = 1
        for j in range(i + 1, count):
            if not leq[i][j]:
                continue
            total = 0
            for k in range(i, j):
                if leq[i][k] and leq[k][j]:
                    total += mobius[(i, k)]
            mobius[(i, j)] = -total
    lattice = FlatLattice(tuple(ordered), ranks, mobius)
    M._lattice = lattice
    return lattice


# -- connectivity ------------------------------------------------------------


def connected_components(M: Matroid) -> tuple[frozenset, ...]:
    """The finest partition of the ground set across which rank is additive.

    Computed with rank queries only: fix one basis and merge along its
    fundamental circuits; elements left alone (loops, coloops) are their own
    components.
    """
    if M._components is not None:
        return M._components
    ground = list(M.ground)
    basis: list[int] = []
    for e in ground:
        if M.rank(basis + [e]) > len(basis):
            basis.append(e)
    r = len(basis)
    parent = {e: e for e in ground}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    basis_set = set(basis)
    for e in ground:
        if e in basis_set:
            continue
        circuit = [e] + [
            b for b in basis if M.rank((basis_set - {b}) | {e}) == r
        ]
        for other in circuit[1:]:
            union(e, other)
    groups: dict[int, set[int]] = {}
    for e in ground:
        groups.setdefault(find(e), set()).add(e)
    comps = tuple(sorted((frozenset(g) for g in groups.values()), key=sorted))
    M._components = comps
    return comps


def is_partition_matroid(M: Matroid) -> bool:
    """True when every connected component has rank 1."""
    return all(M.rank(c) == 1 for c in connected_components(M))


# -- JSON ---------------------------------------------------------------------


def matroid_from_json_dict(data: dict) -> Matroid:
    """Accepts {"matrix": {...}}, a bare matrix object, or explicit bases."""
    if not isinstance(data, dict):
        raise ValueError("matroid JSON must be an object")
    if "matrix" in data:
        return Matroid.from_matrix(QMatrix.from_json_dict(data["matrix"]))
    if "bases" in data:
        try:
            n = int(data["n"])
        except (KeyError, TypeError) as exc:
            raise ValueError("explicit matroid JSON needs an integer 'n'") from exc
        return Matroid.from_bases(n, data["bases"])
    if "entries" in data:
        return Matroid.from_matrix(QMatrix.from_json_dict(data))
    raise ValueError("matroid JSON needs 'matrix', 'bases', or matrix fields")
