"""Dense exact linear algebra over Q (fractions) or a prime field."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Field:
    """Arithmetic for Q when ``p == 0``, otherwise for Z/p."""

    def __init__(self, p: int = 0):
        self.p = p

    def __repr__(self) -> str:
        return "Field(Q)" if not self.p else f"Field(F{self.p})"

    def coerce(self, x) -> Fraction | int:
        return x % self.p if self.p else Fraction(x)

    def inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / x

    def reduce(self, x):
        return x % self.p if self.p else x


QQ = Field(0)


def rref(rows: Sequence[Sequence], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [[field.coerce(x) for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.reduce(x * inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [field.reduce(a - f * b) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], field: Field) -> int:
    if not rows:
        return 0
    return len(rref(rows, field)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int, field: Field) -> list[list]:
    """Basis of {x : matrix x = 0} for a matrix given by rows."""
    if not matrix:
        return [[field.coerce(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(matrix, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [field.coerce(0)] * ncols
        x[fc] = field.coerce(1)
        for row, pc in zip(red, pivots):
            x[pc] = field.reduce(-row[fc])
        basis.append(x)
    return basis


def apply(matrix: Sequence[Sequence], x: Sequence, field: Field) -> list:
    return [field.reduce(sum(a * b for a, b in zip(row, x))) for row in matrix]
