"""Exact rational linear algebra on sparse rows.

Rows are dicts ``{column: Fraction}``; everything stays in Q.
"""
from fractions import Fraction


def _reduce(rows):
    """Row-reduce sparse rows in place; return ``(pivots, reduced_rows)``.

    Each reduced row has a leading 1 at its pivot column and no other
    reduced row has a nonzero entry there.
    """
    pivots = []
    reduced = []
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        for p, prow in zip(pivots, reduced):
            coef = row.get(p)
            if coef:
                for c, v in prow.items():
                    nv = row.get(c, 0) - coef * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        p = min(row)
        lead = row[p]
        row = {c: v / lead for c, v in row.items()}
        for i, prow in enumerate(reduced):
            coef = prow.get(p)
            if coef:
                for c, v in row.items():
                    nv = prow.get(c, 0) - coef * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots.append(p)
        reduced.append(row)
    return pivots, reduced


def rank(rows):
    return len(_reduce(list(rows))[0])


def nullspace(rows, columns):
    """Basis of ``{x : row . x = 0 for every row}`` over the given columns.

    Basis vectors are returned as dicts on ``columns``.
    """
    pivots, reduced = _reduce(list(rows))
    pivot_set = set(pivots)
    basis = []
    for free in columns:
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for p, prow in zip(pivots, reduced):
            coef = prow.get(free)
            if coef:
                vec[p] = -coef
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly; ``matrix`` is a list of dense rows.

    Returns the unique solution as a tuple, or raises ``ValueError`` when the
    system is inconsistent or underdetermined.
    """
    ncols = len(matrix[0]) if matrix else 0
    rows = []
    for r, b in zip(matrix, rhs):
        row = {c: Fraction(v) for c, v in enumerate(r) if v}
        if b:
            row[ncols] = Fraction(b)
        rows.append(row)
    pivots, reduced = _reduce(rows)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("underdetermined linear system")
    x = [Fraction(0)] * ncols
    for p, prow in zip(pivots, reduced):
        x[p] = prow.get(ncols, Fraction(0))
    return tuple(x)
