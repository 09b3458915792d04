"""Pure-Python pivot kernel for the integer-preserving simplex tableau.

The tableau holds integers with one shared positive denominator ``d``; the
rational tableau is ``rows / d``. A pivot on ``rows[r][c]`` replaces every
other row by ``(row * p - row[c] * prow) // d``; the division is exact
because every entry is (up to sign) a minor of the original integer matrix.

Rows are replaced rather than edited, so callers must re-index ``rows``
after a pivot instead of holding on to row objects.
"""


def pivot(rows, r, c, d):
    """Pivot ``rows`` in place on entry ``(r, c)``; return the new denominator."""
    prow = rows[r]
    p = prow[c]
    if p == 0:
        raise ZeroDivisionError("pivot on a zero entry")
    if p < 0:
        prow = [-v for v in prow]
        rows[r] = prow
        p = -p
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row[c]
        if f == 0:
            if p != d:
                rows[i] = [v * p // d for v in row]
            continue
        rows[i] = [(v * p - f * w) // d for v, w in zip(row, prow)]
    return p
