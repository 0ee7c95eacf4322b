"""Exact integer linear algebra: Smith normal form, rank, cokernel.

Matrices are lists of lists of ints (rows).  Everything here is sized for
desk-scale inputs (dimensions in the tens), so the plain cubic algorithms
with smallest-pivot selection are fine and never overflow (Python ints).
"""

from __future__ import annotations


def mat_copy(m):
    return [row[:] for row in m]


def smith_normal_form(m):
    """Return the list of nonzero invariant factors d1 | d2 | ... of m."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    divisors = []
    s = 0
    while True:
        # locate smallest nonzero entry in the remaining block
        pivot = None
        for i in range(s, rows):
            for j in range(s, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[s], a[pi] = a[pi], a[s]
        for row in a:
            row[s], row[pj] = row[pj], row[s]
        if a[s][s] < 0:
            a[s] = [-x for x in a[s]]
        # clear the edging; restart the sweep if a remainder shrinks the pivot
        dirty = False
        for i in range(s + 1, rows):
            if a[i][s]:
                q = a[i][s] // a[s][s]
                a[i] = [x - q * y for x, y in zip(a[i], a[s])]
                if a[i][s]:
                    dirty = True
        for j in range(s + 1, cols):
            if a[s][j]:
                q = a[s][j] // a[s][s]
                for row in a:
                    row[j] -= q * row[s]
                if a[s][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        d = a[s][s]
        bad = None
        for i in range(s + 1, rows):
            for j in range(s + 1, cols):
                if a[i][j] % d != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            a[s] = [x + y for x, y in zip(a[s], a[bad])]
            continue
        divisors.append(d)
        s += 1
    return divisors


def rank(m):
    return len(smith_normal_form(m))


def cokernel(m):
    """Cokernel of Z^cols --m--> Z^rows as (free_rank, torsion list).

    Torsion coefficients are the invariant factors > 1, in divisibility order.
    """
    if not m:
        return 0, []
    rows = len(m)
    divisors = smith_normal_form(m)
    torsion = [d for d in divisors if d > 1]
    return rows - len(divisors), torsion
