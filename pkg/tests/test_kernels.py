import os
import random
import subprocess
import sys

import pytest

from ambipersuade import _tableau_py

compiled = pytest.importorskip("ambipersuade._tableau")


def _pivot_sequences(seed, bound, count=200):
    rng = random.Random(seed)
    for _ in range(count):
        n_rows, n_cols = rng.randint(2, 6), rng.randint(2, 8)
        rows = [[rng.randint(-bound, bound) for _ in range(n_cols)] for _ in range(n_rows)]
        steps = []
        used = set()
        for r in range(min(n_rows, n_cols)):
            free = [c for c in range(n_cols) if c not in used]
            steps.append((r, rng.choice(free)))
            used.add(steps[-1][1])
        yield rows, steps


@pytest.mark.parametrize("bound", [7, 2 ** 40, 2 ** 62, 2 ** 100])
def test_compiled_pivot_matches_fallback(bound):
    for rows, steps in _pivot_sequences(bound % 1000, bound):
        a = [list(r) for r in rows]
        b = [list(r) for r in rows]
        da = db = 1
        for r, c in steps:
            if a[r][c] == 0:
                break
            da = compiled.pivot(a, r, c, da)
            db = _tableau_py.pivot(b, r, c, db)
            assert da == db
            assert a == b


def test_fraction_free_division_is_exact():
    rows = [[2, 3, 1], [4, -1, 5]]
    d = _tableau_py.pivot(rows, 0, 0, 1)
    d = _tableau_py.pivot(rows, 1, 1, d)
    # Row r over d is the reduced row echelon form.
    assert d == 14
    assert rows == [[14, 0, 16], [0, 14, -6]]


def test_zero_pivot_rejected():
    with pytest.raises(ZeroDivisionError):
        compiled.pivot([[0, 1]], 0, 0, 1)


def test_environment_forces_fallback():
    env = dict(os.environ, AMBIPERSUADE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import ambipersuade; print(ambipersuade.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
