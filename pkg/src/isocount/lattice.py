"""Integer lattice helpers for sublattices of Z^n containing a diagonal lattice.

Every lattice handled here sits between ``diag(moduli) Z^n`` and ``Z^n``, so
coordinates may always be reduced modulo their column modulus without leaving
the lattice.  Bases are kept in row-style Hermite form: upper triangular,
positive diagonal, and entries right of the diagonal reduced into
``[0, a_jj)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Basis = tuple[tuple[int, ...], ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b) >= 0``."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def hermite_form(rows: Iterable[Sequence[int]], moduli: Sequence[int]) -> Basis:
    """Canonical basis of ``span(rows) + diag(moduli) Z^n``.

    The diagonal generator ``m_j e_j`` is folded in at column ``j``; the
    unimodular step that does so leaves a residue row which carries the
    containment constraint into the later columns.
    """
    n = len(moduli)
    work = [[c % m for c, m in zip(r, moduli)] for r in rows]
    work = [r for r in work if any(r)]
    pivots: list[list[int]] = []
    for j in range(n):
        pivot = [0] * n
        pivot[j] = moduli[j]
        rest = []
        for r in work:
            if r[j] == 0:
                rest.append(r)
                continue
            a, b = pivot[j], r[j]
            g, u, v = xgcd(a, b)
            new = [u * x + v * y for x, y in zip(pivot, r)]
            other = [(b // g) * x - (a // g) * y for x, y in zip(pivot, r)]
            pivot = new
            rest.append(other)
        work = []
        for r in rest:
            r = [c % m if k > j else c for k, (c, m) in enumerate(zip(r, moduli))]
            if any(r):
                work.append(r)
        pivots.append([c % moduli[k] if k > j else c for k, c in enumerate(pivot)])
    return reduce_basis(pivots)


def reduce_basis(rows: Sequence[Sequence[int]]) -> Basis:
    """Reduce an upper-triangular basis into canonical Hermite form."""
    b = [list(r) for r in rows]
    n = len(b)
    for i in range(n):
        if b[i][i] < 0:
            b[i] = [-c for c in b[i]]
        if b[i][i] == 0:
            raise ValueError("basis is not of full rank")
    for j in range(n):
        ajj = b[j][j]
        for i in range(j):
            q = b[i][j] // ajj
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
    return tuple(tuple(r) for r in b)


def reduce_mod(basis: Basis, v: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the lattice of ``basis``.

    Coordinate ``i`` of the result lies in ``[0, a_ii)``.
    """
    v = list(v)
    for i, row in enumerate(basis):
        q = v[i] // row[i]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def contains(basis: Basis, v: Sequence[int]) -> bool:
    return not any(reduce_mod(basis, v))


def coefficients(basis: Basis, v: Sequence[int]) -> tuple[int, ...]:
    """Integer ``c`` with ``c @ basis == v``; raises if ``v`` is not in the lattice."""
    v = list(v)
    c = []
    for i, row in enumerate(basis):
        q, r = divmod(v[i], row[i])
        if r:
            raise ValueError(f"vector {tuple(v)} is not in the lattice")
        c.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(c)


def determinant(basis: Basis) -> int:
    det = 1
    for i, row in enumerate(basis):
        det *= row[i]
    return det


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of an integer matrix (non-negative, divisor chain).

    Only the diagonal is returned; transformation matrices are not tracked.
    """
    a = [list(r) for r in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute entry in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        done = True
        p = a[t][t]
        for i in range(t + 1, rows):
            q = a[i][t] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            if a[i][t]:
                done = False
        for j in range(t + 1, cols):
            q = a[t][j] // p
            if q:
                for r in a:
                    r[j] -= q * r[t]
            if a[t][j]:
                done = False
        if not done:
            continue
        # pivot must divide the whole remaining block
        bad = next(
            (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
            None,
        )
        if bad is not None:
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            continue
        diag.append(abs(p))
        t += 1
    return diag


def rational_inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
