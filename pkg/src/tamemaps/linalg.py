"""Dense linear algebra over finite fields (row reduction, nullspaces)."""
from __future__ import annotations


def rref(F, rows, ncols):
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    zero = F.zero
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(x, inv) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(F, rows, ncols):
    """Basis of {v : M v = 0} for M given by rows."""
    red, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def solve(F, rows, rhs, ncols):
    """One solution of M v = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [F.zero] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def solve_gf2(cols, rhs):
    """Solve sum x_j cols[j] = rhs over GF(2); cols are 0/1 vectors."""
    n = len(cols)
    m = len(rhs)
    rows = []
    for i in range(m):
        bits = 0
        for j in range(n):
            if cols[j][i]:
                bits |= 1 << j
        if rhs[i]:
            bits |= 1 << n
        rows.append(bits)
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i] >> c & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(m):
            if i != r and rows[i] >> c & 1:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if rows[i] >> n & 1:
            return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i] >> n & 1
    return x
