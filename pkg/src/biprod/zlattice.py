"""Exact integer linear algebra: gcds, Smith normal form, left null spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

IntMat = list[list[int]]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, w) with u*a + w*b = g = gcd(a, b) >= 0."""
    if a == 0 and b == 0:
        return 0, 0, 0
    r0, r1 = a, b
    u0, u1 = 1, 0
    w0, w1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
        w0, w1 = w1, w0 - q * w1
    if r0 < 0:
        r0, u0, w0 = -r0, -u0, -w0
    return r0, u0, w0


def identity(n: int) -> IntMat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMat, B: IntMat) -> IntMat:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def transpose(A: IntMat) -> IntMat:
    return [list(r) for r in zip(*A)]


def det(A: IntMat) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SnfDecomposition:
    U: IntMat
    V: IntMat
    diag: list[int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def _rot_rows(M, i, j, a, b, c, d):
    # rows (i, j) <- [[a, b], [c, d]] * rows (i, j)
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def _rot_cols(M, i, j, a, b, c, d):
    # cols (i, j) <- cols (i, j) * [[a, c], [b, d]]
    for row in M:
        x, y = row[i], row[j]
        row[i] = a * x + b * y
        row[j] = c * x + d * y


def _bezout_rotation(a: int, b: int) -> tuple[int, int, int, int]:
    # unimodular [[p, q], [r, s]] sending (a, b) to (gcd-like, 0)
    if b % a == 0:
        return 1, 0, -(b // a), 1
    g, u, w = ext_gcd(a, b)
    return u, w, -b // g, a // g


def smith_normal_form(A: IntMat) -> SnfDecomposition:
    """Smith normal form U*A*V = D with unimodular witnesses.

    Elimination uses 2x2 Bezout rotations; a final pass repairs divisibility
    of the diagonal so that d_1 | d_2 | ... .
    """
    m = len(A)
    if m == 0 or not A[0]:
        raise ValueError("empty matrix")
    n = len(A[0])
    D = [list(r) for r in A]
    U = identity(m)
    Vt = identity(n)  # V stored transposed so column ops become row ops

    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of least absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            for row in D:
                row[t], row[j] = row[j], row[t]
            Vt[t], Vt[j] = Vt[j], Vt[t]
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                b = D[i][t]
                if b:
                    rot = _bezout_rotation(D[t][t], b)
                    _rot_rows(D, t, i, *rot)
                    _rot_rows(U, t, i, *rot)
            for j in range(t + 1, n):
                b = D[t][j]
                if b:
                    rot = _bezout_rotation(D[t][t], b)
                    _rot_cols(D, t, j, *rot)
                    _rot_rows(Vt, t, j, *rot)
                    if rot[1]:
                        done = False
            if any(D[i][t] for i in range(t + 1, m)):
                done = False
        t += 1

    r = min(m, n)
    diag = [D[i][i] for i in range(r)]
    for i in range(r):
        if diag[i] < 0:
            diag[i] = -diag[i]
            U[i] = [-x for x in U[i]]
    # divisibility repair: diag(a, b) -> diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(i + 1, r):
                a, b = diag[i], diag[j]
                if a == 0 or b == 0 or b % a == 0:
                    if a == 0 and b != 0:
                        raise AssertionError("zero pivot precedes nonzero pivot")
                    continue
                g, u, w = ext_gcd(a, b)
                # left [[u, w], [-b/g, a/g]], right [[1, -w b/g], [1, u a/g]]
                _rot_rows(U, i, j, u, w, -b // g, a // g)
                _rot_rows(Vt, i, j, 1, 1, -w * b // g, u * a // g)
                diag[i], diag[j] = g, a * b // g
                changed = True
    return SnfDecomposition(U=U, V=transpose(Vt), diag=diag)


def left_null_basis(A: IntMat) -> IntMat:
    """Rows spanning the integer left kernel {X : X*A = 0}."""
    m = len(A)
    if m == 0:
        return []
    if not A[0] or all(x == 0 for row in A for x in row):
        return identity(m)
    snf = smith_normal_form(A)
    return [list(row) for row in snf.U[snf.rank:]]


def solve_linear_diophantine(a: int, b: int, rhs: int) -> Optional[tuple[tuple[int, int], tuple[int, int]]]:
    """Solve a*x + b*y = rhs.

    Returns (particular, generator) so that every solution is
    particular + t*generator, or None when gcd(a, b) does not divide rhs.
    """
    if a == 0 and b == 0:
        raise ValueError("(a, b) must not be (0, 0)")
    g, u, w = ext_gcd(a, b)
    if rhs % g:
        return None
    k = rhs // g
    return (u * k, w * k), (-b // g, a // g)
