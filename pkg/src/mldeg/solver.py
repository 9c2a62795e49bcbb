"""Algebraic certification of score-equation counts for rational subspaces.

For a subspace L of dimension r inside C^n, parameters s, and an exponent
d >= 1, the score system is encoded in n + r variables

    x_1, ..., x_n   (coordinates, forced into the torus)
    t_1, ..., t_r   (parametrize L: a point of L is t^T A)

with n + r equations

    x_i * l_i(t) - 1 = 0          l_i(t) = sum_j A[j][i] t_j   (membership
                                  of the coordinatewise inverse in L; this
                                  also forces x_i != 0)
    A[i] . (s_1 x_1^d - x_1, ..., s_n x_n^d - x_n) = 0
                                  (orthogonality of the score vector)

Because membership is written through the parametrization, every ideal
point is a genuine torus solution and t is determined by x (A has full row
rank), so the dimension of the quotient ring counts exactly the solutions
of the system, with multiplicity.

The Groebner engine is a plain Buchberger loop in graded reverse
lexicographic order with variable precedence x_1 < ... < x_n < t_1 < ... <
t_r, the coprimality and chain criteria, content-normalized intermediate
polynomials, and hard resource caps (Buchberger is doubly exponential in
the worst case; the caps turn runaway inputs into a clean error).
"""

from __future__ import annotations

import heapq
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .linalg import QMatrix, Subspace
from .matroids import Matroid
from .mldegree import score_count
from .ratpoly import format_rational

Exponent = tuple[int, ...]


class CapacityError(RuntimeError):
    """A resource cap was exceeded; carries partial diagnostics."""


class NonGenericParameters(RuntimeError):
    """The ideal is not zero-dimensional: the sampled s was not generic."""


class CertificationError(RuntimeError):
    """The solver count disagreed with the prediction across all retries."""

    def __init__(self, message: str, seeds: Sequence[int], predicted: int):
        super().__init__(message)
        self.seeds = tuple(seeds)
        self.predicted = predicted


def _order_key(e: Exponent) -> tuple:
    # grevlex with precedence increasing along the tuple: higher total
    # degree wins; on ties the monomial with the smaller exponent on the
    # earliest (lowest-precedence) differing variable is larger.  Larger
    # key = larger monomial; (-key[0], e) is the matching min-heap key.
    return (sum(e), tuple(-c for c in e))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MPoly:
    """Sparse multivariate polynomial over Q in a fixed number of variables.

    The term dict is never mutated after construction, so the lead monomial
    can be cached.
    """

    __slots__ = ("num_vars", "terms", "_lm")

    def __init__(self, num_vars: int, terms: dict | None = None):
        self.num_vars = num_vars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._lm = None

    @classmethod
    def constant(cls, num_vars: int, c) -> "MPoly":
        return cls(num_vars, {(0,) * num_vars: Fraction(c)})

    @classmethod
    def variable(cls, num_vars: int, idx: int) -> "MPoly":
        e = [0] * num_vars
        e[idx] = 1
        return cls(num_vars, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.num_vars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return MPoly(self.num_vars, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "MPoly") -> "MPoly":
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MPoly(self.num_vars, out)

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly(self.num_vars, {e: c * q for e, q in self.terms.items()})

    def lead_monomial(self) -> Exponent:
        if self._lm is None:
            self._lm = max(self.terms, key=_order_key)
        return self._lm

    def lead_coefficient(self) -> Fraction:
        return self.terms[self.lead_monomial()]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MPoly) and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.num_vars, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        return f"MPoly({format_mpoly(self, _default_names(self.num_vars))})"


def _default_names(m: int) -> list[str]:
    return [f"v{k + 1}" for k in range(m)]


def variable_names(n: int, r: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)] + [f"t{j + 1}" for j in range(r)]


def format_mpoly(p: MPoly, names: Sequence[str]) -> str:
    """Render with terms in decreasing order and canonical coefficients."""
    if p.is_zero():
        return "0"
    pieces = []
    for e in sorted(p.terms, key=_order_key, reverse=True):
        c = p.terms[e]
        vars_part = "*".join(
            f"{names[k]}^{exp}" if exp > 1 else names[k]
            for k, exp in enumerate(e) if exp
        )
        if not vars_part:
            body = format_rational(abs(c))
        elif abs(c) == 1:
            body = vars_part
        else:
            body = f"{format_rational(abs(c))}*{vars_part}"
        pieces.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(pieces)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


# -- the score system --------------------------------------------------------


@dataclass(frozen=True)
class PolySystem:
    """The n + r score equations for (L, s, d) in n + r variables."""

    n: int
    r: int
    d: int
    matrix: QMatrix
    s: tuple[Fraction, ...]
    equations: tuple[MPoly, ...]

    @property
    def num_vars(self) -> int:
        return self.n + self.r

    def to_text(self) -> str:
        names = variable_names(self.n, self.r)
        return "\n".join(format_mpoly(eq, names) for eq in self.equations)


def build_score_system(L: Subspace, s: Sequence, d: int) -> PolySystem:
    """Encode the score equations for the subspace L with parameters s."""
    n = L.ambient_n
    r = L.dim
    if r < 1:
        raise ValueError("the subspace must have dimension at least 1")
    svec = tuple(Fraction(v) for v in s)
    if len(svec) != n:
        raise ValueError(f"expected {n} parameters, got {len(svec)}")
    if d < 1:
        raise ValueError("exponent d must be at least 1")
    A = L.basis.entries
    m = n + r
    equations: list[MPoly] = []
    for i in range(n):
        terms: dict[Exponent, Fraction] = {}
        for j in range(r):
            a = A[j][i]
            if a:
                e = [0] * m
                e[i] = 1
                e[n + j] = 1
                terms[tuple(e)] = a
        zero = (0,) * m
        terms[zero] = terms.get(zero, Fraction(0)) - 1
        equations.append(MPoly(m, terms))
    for i in range(r):
        terms = {}
        for j in range(n):
            a = A[i][j]
            if not a:
                continue
            e_high = [0] * m
            e_high[j] = d
            key = tuple(e_high)
            terms[key] = terms.get(key, Fraction(0)) + a * svec[j]
            e_low = [0] * m
            e_low[j] = 1
            key = tuple(e_low)
            terms[key] = terms.get(key, Fraction(0)) - a
        equations.append(MPoly(m, terms))
    return PolySystem(n=n, r=r, d=d, matrix=L.basis, s=svec,
                      equations=tuple(equations))


def random_generic_s(n: int, seed: int, bound: int = 10 ** 6) -> tuple[Fraction, ...]:
    """n parameters drawn uniformly from the integers 1..bound.

    Deterministic in the seed; the bound must be at least 1000 so the bad
    (non-generic) locus is comfortably unlikely to be hit.
    """
    if bound < 1000:
        raise ValueError("parameter bound must be at least 1000")
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(1, bound)) for _ in range(n))


# -- Buchberger ---------------------------------------------------------------


@dataclass(frozen=True)
class SolverLimits:
    """Hard caps that turn a runaway basis computation into CapacityError."""

    max_basis_size: int = 600
    max_total_degree: int = 80


def _monic(p: MPoly) -> MPoly:
    return p.scale(1 / p.lead_coefficient())


def _int_terms(p: MPoly) -> dict[Exponent, int]:
    """Clear denominators and the content; lead coefficient made positive."""
    if p.is_zero():
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    out = {e: int(c * den) for e, c in p.terms.items()}
    content = 0
    for c in out.values():
        content = gcd(content, c)
    if out[max(out, key=_order_key)] < 0:
        content = -content
    if content != 1:
        for e in out:
            out[e] //= content
    return out


def _ff_reduce(pterms: dict[Exponent, int],
               lms: Sequence[Exponent],
               lcs: Sequence[int],
               tails: Sequence[dict]) -> dict[Exponent, int]:
    """Pseudo-remainder of an integer polynomial against integer divisors.

    Fraction-free: the working polynomial is rescaled by divisor leads as
    needed, so the result is a positive multiple of the true remainder;
    callers renormalize the content.  A lazy max-heap tracks the current
    lead (stale entries are skipped on pop).
    """
    work = dict(pterms)
    heap = [(-sum(e), e) for e in work]
    heapq.heapify(heap)
    remainder: dict[Exponent, int] = {}
    ngen = len(lms)
    while heap:
        _, lead = heapq.heappop(heap)
        coeff = work.get(lead)
        if not coeff:
            continue
        for gi in range(ngen):
            glm = lms[gi]
            if _divides(glm, lead):
                glc = lcs[gi]
                g0 = gcd(coeff, glc)
                mult = abs(glc) // g0
                if glc < 0:
                    g0 = -g0
                factor = coeff // g0
                if mult != 1:
                    for key in work:
                        work[key] *= mult
                    for key in remainder:
                        remainder[key] *= mult
                shift = tuple(a - b for a, b in zip(lead, glm))
                for ge, gc in tails[gi].items():
                    key = tuple(a + b for a, b in zip(ge, shift))
                    old = work.get(key)
                    if old is None:
                        val = -factor * gc
                        if val:
                            work[key] = val
                            heapq.heappush(heap, (-sum(key), key))
                    else:
                        val = old - factor * gc
                        if val:
                            work[key] = val
                        else:
                            del work[key]
                break
        else:
            remainder[lead] = coeff
            del work[lead]
    content = 0
    for c in remainder.values():
        content = gcd(content, c)
    if content > 1:
        for e in remainder:
            remainder[e] //= content
    return remainder


def _normal_form(p: MPoly, basis: Sequence[MPoly]) -> MPoly:
    """Full multivariate division remainder of p against the basis.

    Exact: the remainder is the true normal form with rational
    coefficients (internally the reduction is fraction-free and only the
    final rescaling divides).
    """
    if p.is_zero() or not basis:
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    work = {e: int(c * den) for e, c in p.terms.items()}
    lms, lcs, tails = [], [], []
    for g in basis:
        gt = _int_terms(g)
        lm = max(gt, key=_order_key)
        lms.append(lm)
        lcs.append(gt[lm])
        tails.append(gt)
    heap = [(-sum(e), e) for e in work]
    heapq.heapify(heap)
    remainder: dict[Exponent, int] = {}
    scale = den  # remainder-so-far = scale * (true remainder)
    while heap:
        _, lead = heapq.heappop(heap)
        coeff = work.get(lead)
        if not coeff:
            continue
        for gi, glm in enumerate(lms):
            if _divides(glm, lead):
                glc = lcs[gi]
                g0 = gcd(coeff, glc)
                mult = abs(glc) // g0
                if glc < 0:
                    g0 = -g0
                factor = coeff // g0
                if mult != 1:
                    for key in work:
                        work[key] *= mult
                    for key in remainder:
                        remainder[key] *= mult
                    scale *= mult
                shift = tuple(a - b for a, b in zip(lead, glm))
                for ge, gc in tails[gi].items():
                    key = tuple(a + b for a, b in zip(ge, shift))
                    old = work.get(key)
                    if old is None:
                        val = -factor * gc
                        if val:
                            work[key] = val
                            heapq.heappush(heap, (-sum(key), key))
                    else:
                        val = old - factor * gc
                        if val:
                            work[key] = val
                        else:
                            del work[key]
                break
        else:
            remainder[lead] = coeff
            del work[lead]
    inv = Fraction(1, scale)
    return MPoly(p.num_vars, {e: c * inv for e, c in remainder.items()})


def _int_s_poly(ft: dict, flm: Exponent, flc: int,
                gt: dict, glm: Exponent, glc: int) -> dict[Exponent, int]:
    """Cross-scaled S-polynomial of two integer polynomials.

    A nonzero integer multiple of the textbook S-polynomial, which reduces
    to zero exactly when the original does.
    """
    g0 = gcd(flc, glc)
    lcm = tuple(max(a, b) for a, b in zip(flm, glm))
    shift_f = tuple(a - b for a, b in zip(lcm, flm))
    shift_g = tuple(a - b for a, b in zip(lcm, glm))
    cf = glc // g0
    cg = flc // g0
    out: dict[Exponent, int] = {}
    for e, c in ft.items():
        key = tuple(a + b for a, b in zip(e, shift_f))
        out[key] = cf * c
    for e, c in gt.items():
        key = tuple(a + b for a, b in zip(e, shift_g))
        val = out.get(key, 0) - cg * c
        if val:
            out[key] = val
        elif key in out:
            del out[key]
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic generators, no term of any generator
    divisible by the lead of another, sorted by increasing lead monomial.
    Unique for the fixed order, hence canonical."""

    num_vars: int
    generators: tuple[MPoly, ...]
    order: str = "grevlex"

    def normal_form(self, p: MPoly) -> MPoly:
        return _normal_form(p, self.generators)

    def lead_monomials(self) -> tuple[Exponent, ...]:
        return tuple(g.lead_monomial() for g in self.generators)


def _reduced_basis(gens: list[MPoly]) -> tuple[MPoly, ...]:
    ordered = sorted(
        (g for g in gens if not g.is_zero()),
        key=lambda g: _order_key(g.lead_monomial()),
    )
    minimal: list[MPoly] = []
    for g in ordered:
        lm = g.lead_monomial()
        if not any(_divides(h.lead_monomial(), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        h = _normal_form(g, others) if others else g
        reduced.append(_monic(h))
    reduced.sort(key=lambda g: _order_key(g.lead_monomial()))
    return tuple(reduced)


def buchberger(source: PolySystem | Iterable[MPoly],
               limits: SolverLimits | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the input ideal in grevlex order.

    Pair selection follows the normal strategy: smallest lcm by (total
    degree, then lexicographic exponent comparison).  Pairs with coprime
    lead monomials are skipped, as are pairs eliminated by the chain
    criterion.  Exceeding the caps raises CapacityError with diagnostics.
    """
    limits = limits or SolverLimits()
    polys = source.equations if isinstance(source, PolySystem) else tuple(source)
    if not polys:
        raise ValueError("cannot take a Groebner basis of an empty system")
    num_vars = polys[0].num_vars
    terms: list[dict] = []      # primitive integer term dicts
    lms: list[Exponent] = []
    lcs: list[int] = []
    for p in polys:
        t = _int_terms(p)
        if t:
            lm = max(t, key=_order_key)
            terms.append(t)
            lms.append(lm)
            lcs.append(t[lm])
    if not terms:
        return GroebnerBasis(num_vars, ())

    def pair_key(i: int, j: int) -> tuple:
        lcm = tuple(max(a, b) for a, b in zip(lms[i], lms[j]))
        return (sum(lcm), lcm)

    pairs: dict[tuple[int, int], tuple] = {}
    for j in range(len(terms)):
        for i in range(j):
            pairs[(i, j)] = pair_key(i, j)

    while pairs:
        (i, j) = min(pairs, key=lambda ij: (pairs[ij], ij))
        del pairs[(i, j)]
        lmi, lmj = lms[i], lms[j]
        lcm = tuple(max(a, b) for a, b in zip(lmi, lmj))
        if all(a + b == c for a, b, c in zip(lmi, lmj, lcm)):
            continue  # coprime leads: the S-polynomial reduces to zero
        skip = False
        for k in range(len(terms)):
            if k in (i, j):
                continue
            if _divides(lms[k], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True  # chain criterion
                    break
        if skip:
            continue
        s = _int_s_poly(terms[i], lmi, lcs[i], terms[j], lmj, lcs[j])
        h = _ff_reduce(s, lms, lcs, terms)
        if not h:
            continue
        hlm = max(h, key=_order_key)
        if sum(hlm) > limits.max_total_degree:
            raise CapacityError(
                f"intermediate degree {sum(hlm)} exceeds cap "
                f"{limits.max_total_degree} (basis size {len(terms)})"
            )
        if len(terms) + 1 > limits.max_basis_size:
            raise CapacityError(
                f"basis size exceeds cap {limits.max_basis_size} "
                f"(pending pairs {len(pairs)})"
            )
        if h[hlm] < 0:
            h = {e: -c for e, c in h.items()}
        terms.append(h)
        lms.append(hlm)
        lcs.append(h[hlm])
        new = len(terms) - 1
        for k in range(new):
            pairs[(k, new)] = pair_key(k, new)
    final = [MPoly(num_vars, t) for t in terms]
    return GroebnerBasis(num_vars, _reduced_basis(final))


# -- counting -----------------------------------------------------------------


def count_torus_solutions(gb: GroebnerBasis) -> int:
    """Dimension of the quotient ring: the number of standard monomials.

    Since the system encodes torus membership through the parametrization,
    this dimension is exactly the multiplicity-counted number of solutions
    of the score equations.  Raises NonGenericParameters when the ideal is
    not zero-dimensional (some variable has no pure power among the lead
    monomials), which signals that s should be resampled.
    """
    gens = gb.generators
    if not gens:
        if gb.num_vars == 0:
            return 1
        raise NonGenericParameters("zero ideal is not zero-dimensional")
    lms = [g.lead_monomial() for g in gens]
    if any(sum(lm) == 0 for lm in lms):
        return 0  # the ideal is the whole ring: no solutions at all
    m = gb.num_vars
    for v in range(m):
        if not any(lm[v] > 0 and sum(lm) == lm[v] for lm in lms):
            raise NonGenericParameters(
                f"no pure power of variable #{v + 1} among lead monomials"
            )
    origin = (0,) * m
    seen = {origin}
    frontier = [origin]
    count = 0
    while frontier:
        e = frontier.pop()
        count += 1
        for v in range(m):
            child = e[:v] + (e[v] + 1,) + e[v + 1:]
            if child in seen:
                continue
            if any(_divides(lm, child) for lm in lms):
                continue
            seen.add(child)
            frontier.append(child)
    return count


# -- end-to-end oracle --------------------------------------------------------


@dataclass(frozen=True)
class OracleCaps:
    """Desk-scale size limits for end-to-end certification runs."""

    max_n: int = 5
    max_r: int = 3
    max_d: int = 3

    @classmethod
    def from_env(cls) -> "OracleCaps":
        raw = os.environ.get("MLDEG_MAX_N")
        if raw is None:
            return cls()
        return cls(max_n=int(raw))


@dataclass(frozen=True)
class SolveReport:
    count: int
    predicted: int
    seed: int
    resamples: int
    zero_dimensional: bool

    def to_json_dict(self) -> dict:
        return {
            "count": str(self.count),
            "predicted": str(self.predicted),
            "seed": self.seed,
            "resamples": self.resamples,
            "zero_dimensional": self.zero_dimensional,
        }


def _derived_seed(seed: int, attempt: int) -> int:
    return seed if attempt == 0 else seed * 1_000_003 + attempt


def oracle_score_count(L: Subspace, d: int, seed: int,
                       caps: OracleCaps | None = None,
                       limits: SolverLimits | None = None,
                       max_resamples: int = 5) -> SolveReport:
    """Sample parameters, solve the score system exactly, and compare the
    quotient dimension with the combinatorial prediction.

    Non-zero-dimensionality or a count mismatch triggers a resample with a
    deterministically derived seed; running out of retries raises
    CertificationError carrying every seed that was tried (genericity
    failures are measure zero, so persistent disagreement means a bug, not
    bad luck).
    """
    caps = caps or OracleCaps.from_env()
    if d < 1:
        raise ValueError("exponent d must be at least 1")
    n, r = L.ambient_n, L.dim
    if n > caps.max_n or r > caps.max_r or d > caps.max_d:
        raise CapacityError(
            f"instance (n={n}, r={r}, d={d}) exceeds caps "
            f"(n<={caps.max_n}, r<={caps.max_r}, d<={caps.max_d}); "
            "set MLDEG_MAX_N to raise the size cap"
        )
    predicted = score_count(Matroid.from_subspace(L), d)
    attempted: list[int] = []
    mismatches: list[int] = []
    for attempt in range(max_resamples + 1):
        s_seed = _derived_seed(seed, attempt)
        attempted.append(s_seed)
        s = random_generic_s(n, s_seed)
        system = build_score_system(L, s, d)
        gb = buchberger(system, limits)
        try:
            count = count_torus_solutions(gb)
        except NonGenericParameters:
            continue
        if count == predicted:
            return SolveReport(count=count, predicted=predicted, seed=seed,
                               resamples=attempt, zero_dimensional=True)
        mismatches.append(count)
    raise CertificationError(
        f"count never matched prediction {predicted} "
        f"(observed {mismatches}, seeds {attempted})",
        seeds=attempted,
        predicted=predicted,
    )
