"""Independent reference computations used to cross-check the library.

Nothing here imports the package's linear algebra: elimination is plain
Python over ``Fraction`` (or ints mod p) and tensor products are spelled out
as nested loops.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def _scalar(x, p):
    return int(x) % p if p else Fraction(x)


def rref_oracle(rows, p: int | None = None):
    """Row-reduce a list of lists; returns (nonzero rows, pivot columns)."""
    m = [[_scalar(x, p) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p) if p else 1 / m[r][c]
        m[r] = [(x * inv) % p if p else x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                fac = m[k][c]
                m[k] = [((a - fac * b) % p if p else a - fac * b) for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_oracle(rows, p: int | None = None) -> int:
    return len(rref_oracle(rows, p)[1])


def nullity_oracle(rows, ncols: int, p: int | None = None) -> int:
    return ncols - rank_oracle(rows, p) if rows else ncols


def matmul_oracle(a, b, p: int | None = None):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[sum((_scalar(a[i][t], p) * _scalar(b[t][j], p) for t in range(k)), Fraction(0) if not p else 0)
            for j in range(m)] for i in range(n)]
    return [[x % p if p else x for x in row] for row in out]


def to_lists(arr):
    return [[arr[i, j] for j in range(arr.shape[1])] for i in range(arr.shape[0])]


# ---------------------------------------------------------------------------
# brute-force Hopf-algebra facts


def group_integral_oracle(group):
    """Right integrals on kG: χ with Σ_g χ(g) g = χ(e)·1 forces χ = c·δ_e."""
    return [1 if g == group.identity else 0 for g in range(group.order)]


def kg_equivariant_hom_dim(v_grades, v_act, m_grades, m_act, elements):
    """dim of graded maps V -> M commuting with every element, by plain elimination."""
    dv, dm = len(v_grades), len(m_grades)
    unknowns = [(r, c) for r in range(dm) for c in range(dv) if m_grades[r] == v_grades[c]]
    pos = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for x in elements:
        A, B = m_act(x), v_act(x)
        for r, c in product(range(dm), range(dv)):
            row = [0] * len(unknowns)
            for t in range(dm):
                if (t, c) in pos:
                    row[pos[(t, c)]] += A[r][t]
            for t in range(dv):
                if (r, t) in pos:
                    row[pos[(r, t)]] -= B[t][c]
            if any(row):
                rows.append(row)
    return nullity_oracle(rows, len(unknowns))


def coaction_from_grading(grades, n):
    """Structure constants ``c[p][a][q]`` of ``m_q ↦ m_q ⊗ g_q`` on kG."""
    d = len(grades)
    return [[[1 if (p == q and a == grades[q]) else 0 for q in range(d)] for a in range(n)] for p in range(d)]
