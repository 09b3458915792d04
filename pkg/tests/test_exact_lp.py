import random
from decimal import Decimal
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from ambipersuade import exact_lp
from ambipersuade.bayes import obedience_lp
from ambipersuade.errors import InputError, PreconditionError
from ambipersuade.exact_lp import (
    EQ,
    GE,
    INFEASIBLE,
    LE,
    UNBOUNDED,
    LinearProgram,
    certificate_violations,
    dual_objective,
    optimal_face_vertices,
    solve_lp,
    to_rational,
)

scipy_optimize = pytest.importorskip("scipy.optimize")


def test_single_bound():
    sol = solve_lp(LinearProgram([1], [([1], LE, 1)]))
    assert sol.optimal and sol.value == 1 and sol.primal == (1,)


def test_symmetric_face():
    lp = LinearProgram([1, 1], [([1, 1], LE, 1)])
    assert solve_lp(lp).value == 1
    assert sorted(optimal_face_vertices(lp, 4)) == [(0, 1), (1, 0)]


def test_flat_objective_segment():
    lp = LinearProgram([0], bounds=[(0, 1)])
    assert sorted(optimal_face_vertices(lp, 4)) == [(0,), (1,)]


def test_obedience_lp_of_voter_example(exp0):
    lp = obedience_lp(exp0)
    assert solve_lp(lp).value == F(3, 4)
    assert len(optimal_face_vertices(lp, 8)) == 1


def test_infeasible_and_unbounded():
    assert solve_lp(LinearProgram([1], [([1], GE, 2), ([1], LE, 1)])).status == INFEASIBLE
    assert solve_lp(LinearProgram([1, 0], [([1, -1], LE, 1)])).status == UNBOUNDED
    with pytest.raises(PreconditionError):
        optimal_face_vertices(LinearProgram([1], [([1], GE, 0)]))


def test_minimise_with_free_and_shifted_variables():
    # min x + 2y with x free, y in [-3, 5], x + y >= 1, x - y == 4: x = y + 4, so min 3y + 4 at y = -3/2
    lp = LinearProgram([1, 2], [([1, 1], GE, 1), ([1, -1], EQ, 4)], [(None, None), (-3, 5)], "min")
    sol = solve_lp(lp)
    assert sol.value == F(-1, 2) and sol.primal == (F(5, 2), F(-3, 2))
    assert certificate_violations(lp, sol) == []


def test_upper_bound_only_variable():
    lp = LinearProgram([1, 1], [([1, 1], LE, 10)], [(None, 3), (0, None)])
    sol = solve_lp(lp)
    assert sol.value == 10
    assert dual_objective(lp, sol) == 10


def test_redundant_equalities_do_not_break_phase_one():
    lp = LinearProgram([1, 1], [([1, 1], EQ, 1), ([2, 2], EQ, 2), ([1, 0], LE, F(1, 3))])
    sol = solve_lp(lp)
    assert sol.value == 1 and certificate_violations(lp, sol) == []


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook rule; Bland's rule terminates.
    lp = LinearProgram(
        [F(3, 4), -150, F(1, 50), -6],
        [([F(1, 4), -60, F(-1, 25), 9], LE, 0), ([F(1, 2), -90, F(-1, 50), 3], LE, 0), ([0, 0, 1, 0], LE, 1)],
    )
    sol = solve_lp(lp)
    assert sol.value == F(1, 20)
    assert certificate_violations(lp, sol) == []


def test_rational_conversion():
    assert to_rational("3/4") == F(3, 4)
    assert to_rational("-0.5") == F(-1, 2)
    assert to_rational(Decimal("0.1")) == F(1, 10)
    for bad in (0.5, True, "x", "1/0", None):
        with pytest.raises(InputError):
            to_rational(bad)


def test_malformed_programs_rejected():
    with pytest.raises(InputError):
        LinearProgram([1, 2], [([1], LE, 1)])
    with pytest.raises(InputError):
        LinearProgram([1], [([1], "<>", 1)])
    with pytest.raises(InputError):
        LinearProgram([1], sense="sideways")
    with pytest.raises(InputError):
        LinearProgram([1], bounds=[(0, 1), (0, 1)])


def _random_lp(rng):
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    rels = [rng.choice([LE, GE, EQ]) for _ in range(m)]
    rows = [([rng.randint(-4, 4) for _ in range(n)], rel, rng.randint(-5, 5)) for rel in rels]
    bounds = [rng.choice([(0, None), (None, None), (-2, 3), (None, 2)]) for _ in range(n)]
    return LinearProgram([rng.randint(-5, 5) for _ in range(n)], rows, bounds, rng.choice(["max", "min"]))


def _scipy(lp):
    sign = -1 if lp.sense == "max" else 1
    c = [sign * float(v) for v in lp.objective]
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for con in lp.constraints:
        row = [float(v) for v in con.coeffs]
        if con.relation == EQ:
            a_eq.append(row)
            b_eq.append(float(con.bound))
        elif con.relation == LE:
            a_ub.append(row)
            b_ub.append(float(con.bound))
        else:
            a_ub.append([-v for v in row])
            b_ub.append(-float(con.bound))
    bounds = [(None if lo is None else float(lo), None if hi is None else float(hi)) for lo, hi in lp.bounds]
    res = scipy_optimize.linprog(c, a_ub or None, b_ub or None, a_eq or None, b_eq or None, bounds,
                                 method="highs")
    return res.status, None if res.status else sign * res.fun


def test_matches_floating_point_oracle():
    rng = random.Random(2024)
    seen = {0: 0, 2: 0, 3: 0}
    for _ in range(400):
        lp = _random_lp(rng)
        sol = solve_lp(lp)
        status, value = _scipy(lp)
        seen[status] += 1
        expected = {0: "optimal", 2: INFEASIBLE, 3: UNBOUNDED}[status]
        assert sol.status == expected, lp
        if sol.optimal:
            assert float(sol.value) == pytest.approx(value, abs=1e-7)
            assert certificate_violations(lp, sol) == []
    assert all(seen.values()), seen


coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def feasible_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    # Build around a known feasible point so every program is feasible; box keeps it bounded.
    x0 = [draw(st.fractions(0, 3, max_denominator=4)) for _ in range(n)]
    rows = []
    for _ in range(m):
        a = [draw(coef) for _ in range(n)]
        lhs = sum((ai * xi for ai, xi in zip(a, x0)), F(0))
        rel = draw(st.sampled_from([LE, GE, EQ]))
        slack = draw(st.fractions(0, 2, max_denominator=3))
        rows.append((a, rel, lhs + slack if rel == LE else lhs - slack if rel == GE else lhs))
    objective = [draw(coef) for _ in range(n)]
    return LinearProgram(objective, rows, [(0, 4)] * n, draw(st.sampled_from(["max", "min"])))


@settings(max_examples=150, deadline=None)
@given(feasible_lps())
def test_optimal_solutions_carry_exact_certificates(lp):
    sol = solve_lp(lp)
    assert sol.optimal
    assert certificate_violations(lp, sol) == []
    assert dual_objective(lp, sol) == sol.value


@settings(max_examples=60, deadline=None)
@given(feasible_lps())
def test_face_vertices_are_optimal_and_distinct(lp):
    value = solve_lp(lp).value
    vertices = optimal_face_vertices(lp, 6)
    assert len(set(vertices)) == len(vertices)
    assert vertices[0] == solve_lp(lp).primal
    for x in vertices:
        assert sum((c * v for c, v in zip(lp.objective, x)), F(0)) == value


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_both_kernels_solve_identically(backend, monkeypatch):
    from ambipersuade import _tableau_py

    if backend == "compiled":
        compiled = pytest.importorskip("ambipersuade._tableau")
        pivot = compiled.pivot
    else:
        pivot = _tableau_py.pivot
    rng = random.Random(5)
    lps = [_random_lp(rng) for _ in range(150)]
    reference = [solve_lp(lp) for lp in lps]
    monkeypatch.setattr(exact_lp, "pivot", pivot)
    assert [solve_lp(lp) for lp in lps] == reference
