"""Pure-Python integer reduction kernels.

These are the hot loops behind treelat.zlinalg: Smith normal form with the
unimodular transforms, and the canonical row-style Hermite normal form.
A compiled twin lives in _kernels.pyx; both must implement *exactly* the
same elementary-operation schedule so that results are identical no matter
which backend is active.

Matrices are lists of row lists of Python ints (arbitrary precision is
required: intermediate entries can far exceed machine range even for small
inputs).  Inputs are never mutated.
"""

from __future__ import annotations


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf_with_transforms(a):
    """Return (u, d, v) with u*a*v = d the canonical Smith normal form.

    d is diagonal with positive invariant factors d1 | d2 | ... followed by
    zeros; u (m x m) and v (n x n) are unimodular.  Deterministic: the pivot
    is always the smallest-magnitude nonzero entry of the working submatrix,
    first in row-major order on ties.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = _eye(m)
    v = _eye(n)
    limit = m if m < n else n
    k = 0
    while k < limit:
        # Pivot search over the untouched submatrix.
        pi = -1
        pj = -1
        best = 0
        for i in range(k, m):
            di = d[i]
            for j in range(k, n):
                x = di[j]
                if x != 0:
                    ax = -x if x < 0 else x
                    if pi < 0 or ax < best:
                        pi = i
                        pj = j
                        best = ax
                        if best == 1:
                            break
            if best == 1 and pi >= 0:
                break
        if pi < 0:
            break  # remaining block is zero; d is final
        if pi != k:
            d[k], d[pi] = d[pi], d[k]
            u[k], u[pi] = u[pi], u[k]
        if pj != k:
            for row in d:
                row[k], row[pj] = row[pj], row[k]
            for row in v:
                row[k], row[pj] = row[pj], row[k]
        if d[k][k] < 0:
            dk = d[k]
            uk = u[k]
            for j in range(k, n):
                dk[j] = -dk[j]
            for j in range(m):
                uk[j] = -uk[j]

        while True:
            # Clear column k below the pivot.  Floor division against the
            # positive pivot leaves remainders in [0, pivot); if any survive,
            # the smallest becomes the new (strictly smaller) pivot.
            while True:
                p = d[k][k]
                dk = d[k]
                uk = u[k]
                bi = -1
                bval = 0
                for i in range(k + 1, m):
                    x = d[i][k]
                    if x != 0:
                        q = x // p
                        if q:
                            di = d[i]
                            ui = u[i]
                            for j in range(k, n):
                                di[j] -= q * dk[j]
                            for j in range(m):
                                ui[j] -= q * uk[j]
                        r = d[i][k]
                        if r and (bi < 0 or r < bval):
                            bi = i
                            bval = r
                if bi < 0:
                    break
                d[k], d[bi] = d[bi], d[k]
                u[k], u[bi] = u[bi], u[k]
            # Clear row k right of the pivot, by column operations.  Column
            # k below the pivot is zero at this point, so subtracting
            # multiples of it touches row k only; but a column *swap* can
            # re-dirty column k, hence the outer loop.
            while True:
                p = d[k][k]
                bj = -1
                bval = 0
                for j in range(k + 1, n):
                    x = d[k][j]
                    if x != 0:
                        q = x // p
                        if q:
                            for i in range(k, m):
                                d[i][j] -= q * d[i][k]
                            for i in range(n):
                                v[i][j] -= q * v[i][k]
                        r = d[k][j]
                        if r and (bj < 0 or r < bval):
                            bj = j
                            bval = r
                if bj < 0:
                    break
                for row in d:
                    row[k], row[bj] = row[bj], row[k]
                for row in v:
                    row[k], row[bj] = row[bj], row[k]
            clean = True
            for i in range(k + 1, m):
                if d[i][k] != 0:
                    clean = False
                    break
            if clean:
                break

        # Divisibility: the pivot must divide every remaining entry.  If it
        # does not, folding the offending row into row k and re-clearing
        # shrinks the pivot toward the gcd; this terminates because the
        # pivot strictly decreases.
        p = d[k][k]
        dirty = False
        for i in range(k + 1, m):
            di = d[i]
            for j in range(k + 1, n):
                if di[j] % p:
                    dk = d[k]
                    uk = u[k]
                    for jj in range(k, n):
                        dk[jj] += di[jj]
                    for jj in range(m):
                        uk[jj] += u[i][jj]
                    dirty = True
                    break
            if dirty:
                break
        if not dirty:
            k += 1
    return u, d, v


def hermite_rows(a):
    """Canonical row Hermite normal form of the row lattice of a.

    Returns the nonzero rows: echelon by column, pivots positive, entries
    above each pivot reduced into [0, pivot).  The result depends only on
    the integer row span, which makes it usable for lattice equality and
    membership tests.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [list(r) for r in a]
    r = 0
    for j in range(n):
        if r == m:
            break
        placed = False
        while True:
            pi = -1
            best = 0
            for i in range(r, m):
                x = rows[i][j]
                if x != 0:
                    ax = -x if x < 0 else x
                    if pi < 0 or ax < best:
                        pi = i
                        best = ax
                        if best == 1:
                            break
            if pi < 0:
                break
            placed = True
            if pi != r:
                rows[pi], rows[r] = rows[r], rows[pi]
            rr = rows[r]
            if rr[j] < 0:
                for jj in range(j, n):
                    rr[jj] = -rr[jj]
            p = rr[j]
            clear = True
            for i in range(r + 1, m):
                ri = rows[i]
                x = ri[j]
                if x != 0:
                    q = x // p
                    if q:
                        for jj in range(j, n):
                            ri[jj] -= q * rr[jj]
                    if ri[j] != 0:
                        clear = False
            if clear:
                break
        if placed:
            rr = rows[r]
            p = rr[j]
            for i in range(r):
                ri = rows[i]
                q = ri[j] // p
                if q:
                    for jj in range(j, n):
                        ri[jj] -= q * rr[jj]
            r += 1
    del rows[r:]
    return rows
