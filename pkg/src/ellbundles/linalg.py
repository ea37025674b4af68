"""Exact dense linear algebra over a ``Field`` (lists of lists, no numpy)."""
from __future__ import annotations

from typing import Sequence

from .fields import QQ, Field

Matrix = list[list]


def rref(M: Sequence[Sequence], field: Field = QQ) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[field(v) for v in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field(v * inv) for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [field(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence], field: Field = QQ) -> int:
    if not M:
        return 0
    return len(rref(M, field)[1])


def null_space(M: Sequence[Sequence], field: Field = QQ) -> list[list]:
    """Basis of {v : M v = 0}."""
    cols = len(M[0])
    R, pivots = rref(M, field)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [field(0)] * cols
        v[f] = field(1)
        for i, p in enumerate(pivots):
            v[p] = field(-R[i][f])
        basis.append(v)
    return basis


def det(M: Sequence[Sequence], field: Field = QQ):
    A = [[field(v) for v in row] for row in M]
    n = len(A)
    out = field(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return field(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = -out
        out = field(out * A[c][c])
        inv = field.inv(A[c][c])
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = field(A[i][c] * inv)
                A[i] = [field(a - f * b) for a, b in zip(A[i], A[c])]
    return out


def inverse(M: Sequence[Sequence], field: Field = QQ) -> Matrix:
    n = len(M)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]
