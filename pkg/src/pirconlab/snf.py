"""Integer Smith normal form, tuned for sparse boundary matrices.

The fast path works in int64 numpy arrays with pivoting on entries of
minimal absolute value; whenever intermediate growth threatens the int64
range the computation restarts in exact arbitrary-precision arithmetic.
Results are therefore always exact.
"""

from __future__ import annotations

import numpy as np

# With every entry below 2^31, a single elimination step stays within
# int64, so wraparound is impossible before the guard trips.
_INT64_GUARD = 1 << 31


def smith_diagonal(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form of an integer matrix.

    Entries are positive and ordered by divisibility (d1 | d2 | ...).
    The input is a list of rows; an empty matrix yields [].
    """
    if not rows or not rows[0]:
        return []
    try:
        mat = np.array(rows, dtype=np.int64)
        if np.max(np.abs(mat)) >= _INT64_GUARD:
            raise OverflowError
        return _smith_diagonal_np(mat)
    except OverflowError:
        return _smith_diagonal_exact([list(r) for r in rows])


def _smith_diagonal_np(A: np.ndarray) -> list[int]:
    m, n = A.shape
    diag: list[int] = []
    t = 0  # size of the settled top-left block
    while True:
        sub = A[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        # pivot: smallest nonzero absolute value (first occurrence)
        vals = np.abs(sub[nz])
        k = int(np.argmin(vals))
        pi, pj = int(nz[0][k]) + t, int(nz[1][k]) + t
        A[[t, pi], :] = A[[pi, t], :]
        A[:, [t, pj]] = A[:, [pj, t]]

        while True:
            pivot = int(A[t, t])
            col = A[t + 1 :, t]
            rows_nz = np.nonzero(col)[0]
            if rows_nz.size:
                q = col[rows_nz] // pivot
                A[t + 1 + rows_nz, :] -= q[:, None] * A[t, :][None, :]
                _guard(A)
                # nonzero remainders become better pivots
                col = A[t + 1 :, t]
                rows_nz = np.nonzero(col)[0]
                if rows_nz.size:
                    r = int(rows_nz[0]) + t + 1
                    A[[t, r], :] = A[[r, t], :]
                    continue
            row = A[t, t + 1 :]
            cols_nz = np.nonzero(row)[0]
            if cols_nz.size:
                q = row[cols_nz] // pivot
                A[:, t + 1 + cols_nz] -= q[None, :] * A[:, t][:, None]
                _guard(A)
                row = A[t, t + 1 :]
                cols_nz = np.nonzero(row)[0]
                if cols_nz.size:
                    c = int(cols_nz[0]) + t + 1
                    A[:, [t, c]] = A[:, [c, t]]
                    continue
                continue  # the column may have been refilled
            col = A[t + 1 :, t]
            if np.any(col):
                continue
            break

        pivot = int(abs(A[t, t]))
        # divisibility: fold any non-multiple into the pivot position
        rest = A[t + 1 :, t + 1 :]
        if pivot > 1 and rest.size and np.any(rest % pivot):
            bad = np.nonzero(rest % pivot)[0]
            r = int(bad[0]) + t + 1
            A[t, :] += A[r, :]
            _guard(A)
            continue
        diag.append(pivot)
        t += 1
        if t == min(m, n):
            break
    return diag


def _guard(A: np.ndarray) -> None:
    if np.max(np.abs(A)) >= _INT64_GUARD:
        raise OverflowError


def _smith_diagonal_exact(rows: list[list[int]]) -> list[int]:
    """Same algorithm over Python ints; slow but unbounded."""
    A = [list(map(int, r)) for r in rows]
    m, n = len(A), len(A[0])
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        pi = pj = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(A[i][j])
                if v and (best is None or v < best):
                    best, pi, pj = v, i, j
        if best is None:
            break
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            pivot = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // pivot
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // pivot
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            break
        pivot = abs(A[t][t])
        folded = False
        if pivot > 1:
            for i in range(t + 1, m):
                if any(A[i][j] % pivot for j in range(t + 1, n)):
                    A[t] = [x + y for x, y in zip(A[t], A[i])]
                    folded = True
                    break
        if folded:
            continue
        diag.append(pivot)
        t += 1
    return diag
