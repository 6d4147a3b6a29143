"""Exact sparse Gaussian elimination over any field whose elements support
``+ - * /`` and truthiness (Fraction, Fp)."""

from __future__ import annotations


class Inconsistent(ValueError):
    """The linear system has no solution."""


def solve(rows: list[dict], rhs: list, zero) -> dict:
    """Solve ``sum_j rows[i][j] * x_j = rhs[i]`` exactly.

    Returns a dict ``column -> value`` for one solution, free variables set to
    zero (omitted).  Raises ``Inconsistent`` when no solution exists.
    """
    pivots: dict = {}      # pivot column -> (row dict, rhs value), row normalized to 1 at pivot
    order: list = []
    for row, b in zip(rows, rhs):
        row = {j: c for j, c in row.items() if c}
        # reduce against existing pivots
        # pivot rows are fully reduced, so one pass clears every pivot column
        for j in [j for j in row if j in pivots]:
            c = row[j]
            prow, pb = pivots[j]
            for k, v in prow.items():
                nv = row.get(k, zero) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = b - c * pb
        if not row:
            if b:
                raise Inconsistent("0 = %s" % b)
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        b = b * inv
        # keep previously stored pivot rows reduced in column p
        for q in order:
            qrow, qb = pivots[q]
            c = qrow.get(p)
            if c:
                for k, v in row.items():
                    nv = qrow.get(k, zero) - c * v
                    if nv:
                        qrow[k] = nv
                    else:
                        qrow.pop(k, None)
                pivots[q] = (qrow, qb - c * b)
        pivots[p] = (row, b)
        order.append(p)
    # fully reduced: each pivot row has only its pivot among pivot columns
    return {p: pb for p, (prow, pb) in pivots.items() if pb}
