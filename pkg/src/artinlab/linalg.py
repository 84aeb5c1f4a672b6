"""Small exact linear algebra over ExactReal / Fraction entries."""
from __future__ import annotations

from typing import Sequence


def _is_zero(x) -> bool:
    return not x


def rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if not _is_zero(M[i][c])), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse() if hasattr(M[r][c], "inverse") else 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and not _is_zero(M[i][c]):
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list:
    """Basis (list of vectors) of {x : rows . x = 0}."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def dot(a: Sequence, b: Sequence, zero):
    acc = zero
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


def sign_of(x) -> int:
    if hasattr(x, "sign"):
        return x.sign()
    return (x > 0) - (x < 0)


def strict_feasible(rows: list, nvars: int, zero, one):
    """A point y with row . y > 0 for every row, or None (homogeneous Fourier-Motzkin)."""
    rows = _normalize_rows(rows)
    if rows is None:
        return None
    if nvars == 0:
        return [] if not rows else None
    if not rows:
        return [zero] * nvars
    # eliminate the variable with the fewest generated rows
    best, best_cost = 0, None
    for k in range(nvars):
        p = sum(1 for r in rows if sign_of(r[k]) > 0)
        n = sum(1 for r in rows if sign_of(r[k]) < 0)
        cost = p * n - p - n
        if best_cost is None or cost < best_cost:
            best, best_cost = k, cost
    k = best
    P, N, Z = [], [], []
    for r in rows:
        s = sign_of(r[k])
        (P if s > 0 else N if s < 0 else Z).append(r)
    rest = lambda r: r[:k] + r[k + 1:]
    new_rows = [rest(r) for r in Z]
    for p in P:
        pk = p[k]
        for n in N:
            nk = -n[k]
            new_rows.append([a / pk + b / nk for a, b in zip(rest(p), rest(n))])
    sub = strict_feasible(new_rows, nvars - 1, zero, one)
    if sub is None:
        return None
    lower = [-dot(rest(p), sub, zero) / p[k] for p in P]
    upper = [dot(rest(n), sub, zero) / (-n[k]) for n in N]
    L = max(lower) if lower else None
    U = min(upper) if upper else None
    if L is not None and U is not None:
        yk = (L + U) / 2
    elif L is not None:
        yk = L + 1
    elif U is not None:
        yk = U - 1
    else:
        yk = zero
    return sub[:k] + [yk] + sub[k:]


def _normalize_rows(rows):
    """Scale rows by positive factors, drop duplicates; None if a zero row makes the system infeasible."""
    seen = set()
    out = []
    for r in rows:
        lead = next((x for x in r if x), None)
        if lead is None:
            return None
        s = sign_of(lead)
        scale = lead if s > 0 else -lead
        r = [x / scale for x in r]
        key = tuple(r)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out
