from fractions import Fraction

import pytest
import sympy as sp

from mldeg import (
    CapacityError,
    CertificationError,
    GroebnerBasis,
    MPoly,
    NonGenericParameters,
    OracleCaps,
    QMatrix,
    Subspace,
    build_score_system,
    buchberger,
    count_torus_solutions,
    oracle_score_count,
    random_generic_s,
    score_count,
    uniform_matroid,
)
from mldeg.solver import _order_key, format_mpoly, variable_names


def subspace(rows, cols=None):
    return Subspace.from_matrix(QMatrix.from_rows(rows, cols=cols))


def sympy_reduced_groebner(system):
    """Independent route: sympy's Groebner engine on the same system.

    Returns the reduced monic basis as a set of exponent->coefficient
    dicts in this package's variable layout.
    """
    m = system.num_vars
    names = variable_names(system.n, system.r)
    syms = sp.symbols(names)
    # sympy lists generators in decreasing precedence; ours increases.
    gens = list(reversed(syms))
    exprs = []
    for eq in system.equations:
        expr = sp.Integer(0)
        for e, c in eq.terms.items():
            term = sp.Rational(c.numerator, c.denominator)
            for k, exp in enumerate(e):
                if exp:
                    term *= syms[k] ** exp
            expr += term
        exprs.append(expr)
    basis = sp.groebner(exprs, *gens, order="grevlex")
    out = []
    for poly in basis.polys:
        terms = {}
        for monom, coeff in poly.terms():
            exps = tuple(reversed(monom))
            terms[exps] = Fraction(sp.Rational(coeff).p, sp.Rational(coeff).q)
        lead = max(terms, key=_order_key)
        lc = terms[lead]
        out.append({e: c / lc for e, c in terms.items()})
    return sorted(out, key=lambda t: _order_key(max(t, key=_order_key)))


def as_term_dicts(gb: GroebnerBasis):
    return sorted(
        (dict(g.terms) for g in gb.generators),
        key=lambda t: _order_key(max(t, key=_order_key)),
    )


class TestBuildSystem:
    def test_one_variable_shape(self):
        system = build_score_system(subspace([[1]]), [3], 2)
        names = variable_names(1, 1)
        rendered = [format_mpoly(eq, names) for eq in system.equations]
        assert rendered == ["x1*t1 - 1", "3*x1^2 - x1"]

    def test_equation_count(self):
        L = subspace([[1, 0, 2], [0, 1, 5]])
        system = build_score_system(L, [1, 2, 3], 2)
        assert len(system.equations) == L.ambient_n + L.dim
        assert system.num_vars == 5

    def test_d1_merges_terms(self):
        system = build_score_system(subspace([[1, 1]]), [4, 9], 1)
        # s_j x_j - x_j collapses to (s_j - 1) x_j
        score_eq = system.equations[-1]
        assert score_eq.terms == {(1, 0, 0): Fraction(3), (0, 1, 0): Fraction(8)}

    def test_domain_errors(self):
        L = subspace([[1, 1]])
        with pytest.raises(ValueError):
            build_score_system(Subspace.zero(2), [1, 2], 2)
        with pytest.raises(ValueError):
            build_score_system(L, [1], 2)
        with pytest.raises(ValueError):
            build_score_system(L, [1, 2], 0)

    def test_text_export(self):
        system = build_score_system(subspace([[1, 2]]), [5, 7], 2)
        lines = system.to_text().splitlines()
        assert lines[0] == "x1*t1 - 1"
        assert lines[1] == "2*x2*t1 - 1"
        assert lines[2] == "14*x2^2 + 5*x1^2 - 2*x2 - x1"


class TestRandomS:
    def test_deterministic(self):
        assert random_generic_s(3, 1) == random_generic_s(3, 1)

    def test_seeds_differ(self):
        assert random_generic_s(4, 1) != random_generic_s(4, 2)

    def test_entries_positive(self):
        assert all(v >= 1 for v in random_generic_s(6, 9))

    def test_bound_floor(self):
        with pytest.raises(ValueError):
            random_generic_s(3, 1, bound=10)


class TestBuchberger:
    def test_hand_example(self):
        system = build_score_system(subspace([[1]]), [3], 2)
        gb = buchberger(system)
        names = variable_names(1, 1)
        assert [format_mpoly(g, names) for g in gb.generators] == [
            "x1 - 1/3", "t1 - 3",
        ]

    def test_single_polynomial_unchanged(self):
        p = MPoly(1, {(3,): 2, (1,): -4})
        gb = buchberger([p])
        assert as_term_dicts(gb) == [{(3,): Fraction(1), (1,): Fraction(-2)}]

    def test_linear_system_matches_rref(self):
        # the basis of a linear ideal is the rref of the coefficient matrix
        # with pivots on the largest variables (reversed column order)
        eqs = [
            MPoly(3, {(1, 0, 0): 2, (0, 1, 0): 4, (0, 0, 1): -2}),
            MPoly(3, {(1, 0, 0): 1, (0, 1, 0): 3, (0, 0, 1): 1}),
        ]
        gb = buchberger(eqs)
        from mldeg import rref
        R = rref(QMatrix.from_rows([[-2, 4, 2], [1, 3, 1]]))
        expected = []
        for row in R.entries:
            terms = {}
            for k, c in enumerate(row):
                if c:
                    e = [0, 0, 0]
                    e[2 - k] = 1   # column k holds the coefficient of x_{3-k}
                    terms[tuple(e)] = c
            expected.append(terms)
        assert sorted(as_term_dicts(gb), key=sorted) == sorted(expected, key=sorted)

    def test_reduced_basis_properties(self):
        L = subspace([[1, 0, 1], [0, 1, 1]])
        system = build_score_system(L, random_generic_s(3, 5), 2)
        gb = buchberger(system)
        lms = gb.lead_monomials()
        for i, a in enumerate(lms):
            for j, b in enumerate(lms):
                if i != j:
                    assert not all(x <= y for x, y in zip(a, b))
        for g in gb.generators:
            assert g.lead_coefficient() == 1
            for e in g.terms:
                if e != g.lead_monomial():
                    assert not any(
                        all(x <= y for x, y in zip(lm, e))
                        for lm in lms
                    )
        for eq in system.equations:
            assert gb.normal_form(eq).is_zero()

    def test_capacity_cap_fires(self):
        from mldeg import SolverLimits
        L = subspace([[1, 0, 1], [0, 1, 1]])
        system = build_score_system(L, random_generic_s(3, 5), 3)
        with pytest.raises(CapacityError):
            buchberger(system, SolverLimits(max_basis_size=3))

    @pytest.mark.parametrize("rows,d,seed", [
        ([[1]], 2, 3),
        ([[1, 1]], 3, 1),
        ([[1, 0, 1], [0, 1, 1]], 2, 7),
        ([[1, 2, -1]], 2, 11),
        ([[3, 1, 4, 1]], 3, 13),
        ([[1, 0, 2, -1], [0, 1, 3, 5]], 2, 17),
    ])
    def test_matches_sympy(self, rows, d, seed):
        L = subspace(rows)
        system = build_score_system(L, random_generic_s(L.ambient_n, seed), d)
        assert as_term_dicts(buchberger(system)) == sympy_reduced_groebner(system)

    def test_matches_sympy_generic_polynomials(self):
        # not a score system: two plane conics
        x2 = (2, 0)
        xy = (1, 1)
        y2 = (0, 2)
        x = (1, 0)
        y = (0, 1)
        one = (0, 0)
        f1 = MPoly(2, {x2: 2, y2: 1, x: -4, y: -4, one: 3})
        f2 = MPoly(2, {x2: 1, xy: 1, y2: 3, y: -12, one: 9})
        gb = buchberger([f1, f2])

        class FakeSystem:
            equations = (f1, f2)
            num_vars = 2
            n = 2
            r = 0
        assert as_term_dicts(gb) == sympy_reduced_groebner(FakeSystem())


class TestCounting:
    def test_hand_counts(self):
        cases = [
            ([[1]], 2, 1),          # single coordinate line: one solution
            ([[1, 1]], 3, 2),       # parallel pair, cubic score: d-1 roots
            ([[1, 0, 1], [0, 1, 1]], 2, 3),
        ]
        for rows, d, expected in cases:
            L = subspace(rows)
            system = build_score_system(L, random_generic_s(L.ambient_n, 1), d)
            assert count_torus_solutions(buchberger(system)) == expected

    def test_unit_ideal_counts_zero(self):
        gb = buchberger([MPoly(2, {(1, 0): 1}), MPoly(2, {(1, 0): 1, (0, 0): -1})])
        assert count_torus_solutions(gb) == 0

    def test_positive_dimension_raises(self):
        gb = buchberger([MPoly(2, {(1, 0): 1})])
        with pytest.raises(NonGenericParameters):
            count_torus_solutions(gb)

    def test_boolean_model_power_counts(self):
        L = subspace([[1, 0], [0, 1]])
        for d in (2, 3):
            system = build_score_system(L, random_generic_s(2, 3), d)
            assert count_torus_solutions(buchberger(system)) == (d - 1) ** 2


class TestOracle:
    def test_parallel_line_d2(self):
        report = oracle_score_count(subspace([[1, 1]]), 2, seed=1)
        assert report.count == report.predicted == 1

    def test_generic_2x3(self):
        report = oracle_score_count(subspace([[1, 0, 1], [0, 1, 1]]), 2, seed=7)
        assert report.count == report.predicted == 3

    def test_generic_2x4(self):
        report = oracle_score_count(
            subspace([[1, 0, 2, -1], [0, 1, 3, 5]]), 2, seed=2,
        )
        assert report.count == report.predicted == 5

    def test_d1_vacuity(self):
        report = oracle_score_count(subspace([[1, 0, 1], [0, 1, 1]]), 1, seed=4)
        assert report.count == 0

    def test_deterministic(self):
        L = subspace([[1, 2, 3]])
        assert oracle_score_count(L, 2, seed=9) == oracle_score_count(L, 2, seed=9)

    def test_seed_independent_count(self):
        L = subspace([[2, -1, 1], [1, 1, 4]])
        a = oracle_score_count(L, 2, seed=5)
        b = oracle_score_count(L, 2, seed=23)
        assert a.count == b.count

    def test_capacity_cap(self):
        L = subspace([[1, 0, 0, 1, 1, 2], [0, 1, 0, 3, 1, 1], [0, 0, 1, 1, 2, 1]])
        with pytest.raises(CapacityError):
            oracle_score_count(L, 2, seed=1)

    def test_env_override_allows_larger_n(self, monkeypatch):
        monkeypatch.setenv("MLDEG_MAX_N", "6")
        assert OracleCaps.from_env().max_n == 6
        L = subspace([[1, 1, 1, 1, 1, 1]])  # rank 1: still an easy system
        report = oracle_score_count(L, 2, seed=1)
        assert report.count == report.predicted == 1

    def test_certification_failure_carries_seeds(self, monkeypatch):
        import mldeg.solver as solver_module
        monkeypatch.setattr(solver_module, "score_count", lambda M, d: 999)
        with pytest.raises(CertificationError) as err:
            oracle_score_count(subspace([[1, 1]]), 2, seed=3, max_resamples=2)
        assert len(err.value.seeds) == 3
        assert err.value.predicted == 999

    def test_report_json(self):
        report = oracle_score_count(subspace([[1, 1]]), 2, seed=1)
        data = report.to_json_dict()
        assert data["count"] == "1" and data["predicted"] == "1"
        assert data["zero_dimensional"] is True
        assert isinstance(data["seed"], int) and isinstance(data["resamples"], int)


class TestCertificationSweep:
    def test_small_random_subspaces(self):
        # count == d^r T(1 - 1/d, 0) across a batch of random instances
        import random as _random
        rng = _random.Random(99)
        done = 0
        while done < 8:
            n = rng.randint(2, 4)
            r = rng.randint(1, 2)
            grid = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(r)]
            L = Subspace.from_matrix(QMatrix.from_rows(grid, cols=n))
            if L.dim != r:
                continue
            d = rng.choice([2, 3])
            report = oracle_score_count(L, d, seed=rng.randint(0, 10 ** 6))
            assert report.count == report.predicted
            done += 1
