"""Exact dense linear algebra over QQ or a prime field.

Matrices are lists of lists.  Over the rationals the elimination is
fraction-free (integer cross-multiplication with row gcd clearing), which
keeps intermediate entries small enough for the sizes this package meets.
"""

from fractions import Fraction
from math import gcd


def _to_int_rows(rows):
    """Scale each row to integers, clearing a common denominator."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        irow = []
        for x in row:
            if isinstance(x, Fraction):
                irow.append(int(x * den))
            else:
                irow.append(int(x) * den)
        out.append(irow)
    return out


def _clear_row(row):
    g = 0
    for x in row:
        g = gcd(g, abs(x))
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon_int(rows, ncols):
    """In-place fraction-free echelon form; returns list of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[c]
        for i in range(len(rows)):
            if i == r or not rows[i][c]:
                continue
            row = rows[i]
            f1, f2 = pval, row[c]
            g = gcd(abs(f1), abs(f2))
            f1ration, f2ration = f1 // g, f2 // g
            for j in range(ncols):
                row[j] = row[j] * f1ration - prow[j] * f2ration
            rows[i] = _clear_row(row)
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def _echelon_mod(rows, ncols, p):
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c] % p
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


def echelon(rows, ncols, p=None):
    """Reduced row data: (echelon rows, pivot columns).  Input not mutated."""
    if p is None:
        work = _to_int_rows(rows)
        pivots = _echelon_int(work, ncols)
    else:
        work = [[int(x) % p for x in row] for row in rows]
        pivots = _echelon_mod(work, ncols, p)
    return work, pivots


def rank(rows, ncols, p=None):
    if not rows:
        return 0
    return len(echelon(rows, ncols, p)[1])


def in_row_space(vec, rows, ncols, p=None):
    base = rank(rows, ncols, p)
    return rank(list(rows) + [vec], ncols, p) == base


def row_space_equal(rows_a, rows_b, ncols, p=None):
    ra = rank(rows_a, ncols, p)
    rb = rank(rows_b, ncols, p)
    if ra != rb:
        return False
    return rank(list(rows_a) + list(rows_b), ncols, p) == ra


def nullspace(rows, ncols, p=None):
    """Basis of {x : A x = 0}; vectors are Fractions (QQ) or ints mod p."""
    if not rows:
        if p is None:
            basis = []
            for i in range(ncols):
                v = [Fraction(0)] * ncols
                v[i] = Fraction(1)
                basis.append(v)
            return basis
        basis = []
        for i in range(ncols):
            v = [0] * ncols
            v[i] = 1
            basis.append(v)
        return basis
    work, pivots = echelon(rows, ncols, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        if p is None:
            v = [Fraction(0)] * ncols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -Fraction(work[r][fc], work[r][pc])
        else:
            v = [0] * ncols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = (-work[r][fc]) % p
        basis.append(v)
    return basis


def solve(rows, rhs, ncols, p=None):
    """One solution of A x = rhs, or None.  A given as rows."""
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    work, pivots = echelon(aug, ncols + 1, p)
    if ncols in pivots:
        return None
    if p is None:
        x = [Fraction(0)] * ncols
        for r, pc in enumerate(pivots):
            x[pc] = Fraction(work[r][ncols], work[r][pc])
    else:
        x = [0] * ncols
        for r, pc in enumerate(pivots):
            x[pc] = work[r][ncols] % p
    return x


def det(rows, p=None):
    """Determinant of a square matrix (Bareiss over ZZ, Gauss mod p)."""
    n = len(rows)
    if n == 0:
        return 1
    if p is None:
        m = _to_int_rows(rows)
        den = 1
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k]), None)
                if swap is None:
                    return Fraction(0)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return Fraction(sign * m[n - 1][n - 1], den)
    m = [[x % p for x in row] for row in rows]
    detv = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            detv = -detv
        detv = (detv * m[k][k]) % p
        inv = pow(m[k][k], p - 2, p)
        for i in range(k + 1, n):
            f = (m[i][k] * inv) % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[k])]
    return detv % p
