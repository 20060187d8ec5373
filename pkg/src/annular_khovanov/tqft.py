"""Assembly of the cube complex.

Every circle carries the rank-2 Frobenius module with basis {+, -}.  The
plain differential uses the usual multiplication and comultiplication on
all circles.  The annular differential keeps only the terms that preserve
the winding grading k; these are exactly the twelve annular maps (with
w_+/w_- read as the +/- labels of non-trivial circles).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .cube import Cube, Generator, MergeOrSplit, generators_at
from .diagram import SliceWord
from .sparse import SparseMatrix

ANNULAR = "annular"
PLAIN = "plain"

Labels = tuple[int, ...]

_MULTIPLY: dict[Labels, list[tuple[Labels, int]]] = {
    (1, 1): [((1,), 1)],
    (1, -1): [((-1,), 1)],
    (-1, 1): [((-1,), 1)],
    (-1, -1): [],
}
_COMULTIPLY: dict[Labels, list[tuple[Labels, int]]] = {
    (1,): [((1, -1), 1), ((-1, 1), 1)],
    (-1,): [((-1, -1), 1)],
}


class ComplexTooLarge(MemoryError):
    def __init__(self, vertices: int, generators: int, budget: int):
        super().__init__(
            f"{generators} generators over {vertices} cube vertices "
            f"exceeds the budget of {budget}")
        self.vertices = vertices
        self.generators = generators
        self.budget = budget


def _winding_degree(labels: Labels, trivial: Sequence[bool]) -> int:
    return sum(l for l, t in zip(labels, trivial) if not t)


def edge_map(inc: MergeOrSplit, mode: str = ANNULAR) -> dict[Labels, list[tuple[Labels, int]]]:
    """Labels of the involved source circles -> linear combination of target labels."""
    table = _MULTIPLY if inc.kind == "merge" else _COMULTIPLY
    if mode == PLAIN:
        return {src: list(terms) for src, terms in table.items()}
    if mode != ANNULAR:
        raise ValueError(f"unknown mode {mode!r}")
    out = {}
    for src, terms in table.items():
        k = _winding_degree(src, inc.source_trivial)
        out[src] = [(t, c) for t, c in terms
                    if _winding_degree(t, inc.target_trivial) == k]
    return out


def edge_sign(v: Sequence[int], i: int) -> int:
    """(-1) to the number of 1s after coordinate ``i``."""
    return -1 if sum(v[i + 1:]) % 2 else 1


def eta_sign(v: Sequence[int], i: int) -> int:
    """Sign of the downward edge ``v -> v - e_i``: (-1)^(v_i + ... + v_c)."""
    return -1 if sum(v[i:]) % 2 else 1


@dataclass
class Block:
    """One grading block: bases per h and ``d[h]: C_h -> C_{h+1}``."""

    q: int
    k: int | None
    bases: dict[int, list[Generator]] = field(default_factory=dict)
    d: dict[int, SparseMatrix] = field(default_factory=dict)

    def dims(self) -> dict[int, int]:
        return {h: len(b) for h, b in sorted(self.bases.items())}

    def matrix(self, h: int) -> SparseMatrix:
        """``d_h``, or a zero matrix of the right shape when absent."""
        if h in self.d:
            return self.d[h]
        return SparseMatrix(len(self.bases.get(h + 1, ())), len(self.bases.get(h, ())))

    def euler(self) -> int:
        return sum((-1) ** h * n for h, n in self.dims().items())


@dataclass
class GradedComplex:
    mode: str
    seam_width: int
    blocks: dict[tuple[int, int | None], Block]

    def total_rank(self) -> int:
        return sum(len(b) for blk in self.blocks.values() for b in blk.bases.values())

    def generators(self) -> Iterable[Generator]:
        for key in sorted(self.blocks, key=_block_order):
            for h in sorted(self.blocks[key].bases):
                yield from self.blocks[key].bases[h]

    def dims_by_k(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.generators():
            out[g.k] = out.get(g.k, 0) + 1
        return dict(sorted(out.items()))

    def debug_dump(self) -> str:
        lines = []
        for key in sorted(self.blocks, key=_block_order):
            blk = self.blocks[key]
            for h in sorted(blk.bases):
                m = blk.matrix(h)
                lines.append(f"q={blk.q} k={0 if blk.k is None else blk.k} "
                             f"h={h} dim={len(blk.bases[h])}")
                lines.extend(f"{r} {c} {val}" for r, c, val in m.triplets())
        return "\n".join(lines) + "\n"


def _block_order(key):
    q, k = key
    return (0 if k is None else k, q)


def generator_count(cube: Cube) -> int:
    return sum(1 << len(cube.state(v).circles) for v in cube.vertices())


def assemble(w: SliceWord | Cube, mode: str = ANNULAR, *,
             sign: Callable[[Sequence[int], int], int] = edge_sign,
             k_filter: Callable[[int], bool] | None = None,
             max_generators: int | None = None) -> GradedComplex:
    """Build the block-decomposed cube complex.

    ``sign`` is exposed so tests can feed a corrupted sign rule.
    ``k_filter`` restricts annular assembly to the winding degrees it
    accepts (the annular differential never mixes k, so this is exact).
    """
    if mode not in (ANNULAR, PLAIN):
        raise ValueError(f"unknown mode {mode!r}")
    if k_filter is not None and mode != ANNULAR:
        raise ValueError("k_filter only makes sense for the annular differential")
    cube = w if isinstance(w, Cube) else Cube(w)
    if max_generators is not None:
        n = generator_count(cube)
        if n > max_generators:
            raise ComplexTooLarge(2 ** cube.c, n, max_generators)

    blocks: dict[tuple[int, int | None], Block] = {}
    index: dict[tuple[tuple[int, ...], int], tuple[tuple, int, int]] = {}
    for v in cube.vertices():
        for g in generators_at(cube, v):
            if k_filter is not None and not k_filter(g.k):
                continue
            key = (g.q, g.k if mode == ANNULAR else None)
            blk = blocks.get(key)
            if blk is None:
                blk = blocks[key] = Block(g.q, key[1])
            basis = blk.bases.setdefault(g.h, [])
            index[(v, g.minus)] = (key, g.h, len(basis))
            basis.append(g)

    for blk in blocks.values():
        for h, basis in blk.bases.items():
            if h + 1 in blk.bases:
                blk.d[h] = SparseMatrix(len(blk.bases[h + 1]), len(basis))

    for v in cube.vertices():
        nsrc = len(cube.state(v).circles)
        for i in range(cube.c):
            if v[i]:
                continue
            s = sign(v, i)
            u = v[:i] + (1,) + v[i + 1:]
            inc = cube.incidence(v, i)
            table = edge_map(inc, mode)
            for minus in range(1 << nsrc):
                pos = index.get((v, minus))
                if pos is None:
                    continue
                key, h, col = pos
                base = 0
                for a, b in inc.carry:
                    if minus >> a & 1:
                        base |= 1 << b
                src = tuple(-1 if minus >> a & 1 else 1 for a in inc.sources)
                for tgt, coeff in table[src]:
                    tmask = base
                    for t, lab in zip(inc.targets, tgt):
                        if lab < 0:
                            tmask |= 1 << t
                    tkey, th, row = index[(u, tmask)]
                    assert tkey == key and th == h + 1
                    blocks[key].d[h].add(row, col, s * coeff)
    return GradedComplex(mode, cube.word.seam_width, blocks)
