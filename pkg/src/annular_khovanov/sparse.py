"""Column-compressed sparse integer matrices."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    cols: list[dict[int, int]] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.cols is None:
            self.cols = [{} for _ in range(self.ncols)]

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets) -> "SparseMatrix":
        m = cls(nrows, ncols)
        for r, c, val in triplets:
            m.add(r, c, val)
        return m

    @classmethod
    def from_dense(cls, rows: list[list[int]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_triplets(
            nrows, ncols,
            ((r, c, x) for r, row in enumerate(rows) for c, x in enumerate(row) if x))

    def add(self, r: int, c: int, val: int) -> None:
        col = self.cols[c]
        new = col.get(r, 0) + val
        if new:
            col[r] = new
        else:
            col.pop(r, None)

    def triplets(self):
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, c, col[r]

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, val in self.triplets():
            out[r][c] = val
        return out

    def rows(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, val in col.items():
                out[r][c] = val
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols)
        for c, col in enumerate(other.cols):
            acc: dict[int, int] = {}
            for mid, x in col.items():
                for r, y in self.cols[mid].items():
                    acc[r] = acc.get(r, 0) + x * y
            out.cols[c] = {r: v for r, v in acc.items() if v}
        return out

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)
