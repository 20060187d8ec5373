"""Spectral sequences of finite filtered complexes over a field.

Pages are computed from explicit subquotients.  With
``Z_r^p = {x in F_p : dx in F_{p-r}}`` the r-th page is

    E_r^p = Z_r^p / (Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1})

so E_0 is the associated graded and E_1 its homology.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from . import fields
from .cube import Cube, generators_at
from .diagram import SliceWord, mirror
from .fields import Field
from .tqft import ANNULAR, PLAIN, assemble, edge_map, edge_sign, eta_sign

Vertex = tuple[int, ...]


class AnticommutationError(ValueError):
    def __init__(self, faces):
        super().__init__(f"{len(faces)} cube faces fail to anticommute, first {faces[0]}")
        self.faces = faces


@dataclass
class FilteredComplex:
    """Basis elements with a homological degree ``h`` and filtration ``f``.

    ``d[j]`` maps column ``j`` to ``{row: coefficient}`` and must raise ``h``
    by one.  With ``direction = -1`` the differential may only keep or lower
    ``f`` (F_p spanned by f <= p); with ``+1`` it may only keep or raise it.
    ``blocks`` optionally labels basis elements by a grading that ``d``
    preserves; blocks are processed independently.
    """

    degrees: list[int]
    filtration: list[int]
    d: dict[int, dict[int, int]]
    field: Field = fields.QQ
    blocks: list[Hashable] | None = None
    direction: int = -1

    def __post_init__(self):
        n = len(self.degrees)
        if len(self.filtration) != n:
            raise ValueError("degrees and filtration must have equal length")
        if self.blocks is None:
            self.blocks = [0] * n
        for j, col in self.d.items():
            for i in col:
                if self.degrees[i] != self.degrees[j] + 1:
                    raise ValueError(f"entry ({i},{j}) does not raise h by one")
                if self.direction * (self.filtration[i] - self.filtration[j]) < 0:
                    raise ValueError(f"entry ({i},{j}) breaks the filtration")
                if self.blocks[i] != self.blocks[j]:
                    raise ValueError(f"entry ({i},{j}) mixes blocks")

    def square_is_zero(self) -> bool:
        fld = self.field
        for j, col in self.d.items():
            acc: dict[int, int] = {}
            for mid, x in col.items():
                for i, y in self.d.get(mid, {}).items():
                    acc[i] = acc.get(i, 0) + x * y
            if any(fld.reduce(fld.coerce(v)) for v in acc.values()):
                return False
        return True


@dataclass
class PageTable:
    r: int
    dims: dict[tuple[int, int], int]

    def total(self) -> int:
        return sum(self.dims.values())

    def by_h(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (h, _f), n in self.dims.items():
            out[h] = out.get(h, 0) + n
        return dict(sorted(out.items()))


@dataclass
class SpectralResult:
    pages: list[PageTable]
    infinity: PageTable
    collapse_at: int
    homology: dict[int, int] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "pages": [
                {"r": pg.r,
                 "dims": [{"h": h, "f": f, "dim": n} for (h, f), n in sorted(pg.dims.items())]}
                for pg in self.pages
            ],
            "collapse_at": self.collapse_at,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def table(self) -> str:
        lines = []
        for pg in self.pages:
            lines.append(f"E_{pg.r}: total {pg.total()}")
            for (h, f), n in sorted(pg.dims.items()):
                lines.append(f"  h={h} f={f} dim={n}")
        lines.append(f"collapse_at={self.collapse_at}")
        return "\n".join(lines) + "\n"


class _BlockPages:
    """Page computations for one block of a filtered complex."""

    def __init__(self, fc: FilteredComplex, members: list[int]):
        self.field = fc.field
        sgn = -fc.direction
        self.fval = {j: sgn * fc.filtration[j] for j in members}
        self.by_h: dict[int, list[int]] = {}
        for j in sorted(members, key=lambda j: (fc.degrees[j], self.fval[j], j)):
            self.by_h.setdefault(fc.degrees[j], []).append(j)
        self.pos = {j: idx for idx_list in self.by_h.values()
                    for idx, j in enumerate(idx_list)}
        self.mats: dict[int, list[list]] = {}
        for h, cols in self.by_h.items():
            rows = self.by_h.get(h + 1, [])
            mat = [[self.field.coerce(0)] * len(cols) for _ in rows]
            for cj, j in enumerate(cols):
                for i, x in fc.d.get(j, {}).items():
                    mat[self.pos[i]][cj] = self.field.coerce(x)
            self.mats[h] = mat
        self._z: dict[tuple[int, int, int], list[list]] = {}

    def z(self, h: int, p: int, r: int) -> list[list]:
        key = (h, p, r)
        if key in self._z:
            return self._z[key]
        fld = self.field
        cols = self.by_h.get(h, [])
        rows = self.by_h.get(h + 1, [])
        s = [c for c, j in enumerate(cols) if self.fval[j] <= p]
        t = [i for i, j in enumerate(rows) if self.fval[j] > p - r]
        mat = self.mats.get(h, [])
        sub = [[mat[i][c] for c in s] for i in t]
        ker = fields.nullspace(sub, len(s), fld)
        out = []
        for vec in ker:
            x = [fld.coerce(0)] * len(cols)
            for c, val in zip(s, vec):
                x[c] = val
            out.append(x)
        self._z[key] = out
        return out

    def boundary(self, h: int, p: int, r: int) -> list[list]:
        src = self.z(h - 1, p + r - 1, r - 1)
        mat = self.mats.get(h - 1, [])
        return [fields.apply(mat, x, self.field) for x in src]

    def dim(self, h: int, p: int, r: int) -> int:
        zr = self.z(h, p, r)
        if not zr:
            return 0
        denom = self.z(h, p - 1, r - 1) + self.boundary(h, p, r)
        return len(zr) - fields.rank(denom, self.field)

    def homology(self) -> dict[int, int]:
        out = {}
        for h, cols in self.by_h.items():
            n = len(cols)
            r_out = fields.rank(self.mats.get(h, []), self.field)
            r_in = fields.rank(self.mats.get(h - 1, []), self.field)
            if n - r_out - r_in:
                out[h] = n - r_out - r_in
        return out


def filtered_reduction(fc: FilteredComplex) -> FilteredComplex:
    """Cancel every differential entry that keeps the filtration level.

    Gaussian elimination along an invertible entry x -> y with f(x) = f(y)
    is a filtered homotopy equivalence, so all pages from E_1 on and the
    total homology are unchanged.  The result has no level-preserving
    entries left, so its basis is already E_1.
    """
    fld = fc.field
    d: dict[int, dict[int, object]] = {}
    inc: dict[int, set[int]] = {}
    for j, col in fc.d.items():
        red = {i: fld.coerce(x) for i, x in col.items()}
        red = {i: x for i, x in red.items() if x}
        if red:
            d[j] = red
            for i in red:
                inc.setdefault(i, set()).add(j)
    alive = set(range(len(fc.degrees)))
    f = fc.filtration

    def drop(j):
        alive.discard(j)
        for i in d.pop(j, {}):
            inc[i].discard(j)
        for z in inc.pop(j, set()):
            d[z].pop(j, None)

    for x in range(len(fc.degrees)):
        if x not in alive or x not in d:
            continue
        cands = [y for y in d[x] if f[y] == f[x]]
        if not cands:
            continue
        y = min(cands, key=lambda i: (len(inc[i]), i))
        a_inv = fld.inv(d[x][y])
        dx = dict(d[x])
        for z in sorted(inc[y] - {x}):
            c = fld.reduce(d[z][y] * a_inv)
            col = d[z]
            for w, v in dx.items():
                nv = fld.reduce(col.get(w, 0) - c * v)
                if nv:
                    if w not in col:
                        inc.setdefault(w, set()).add(z)
                    col[w] = nv
                elif w in col:
                    del col[w]
                    inc[w].discard(z)
        drop(x)
        drop(y)

    keep = sorted(alive)
    new = {j: n for n, j in enumerate(keep)}
    d2 = {new[j]: {new[i]: x for i, x in col.items()} for j, col in d.items() if j in new and col}
    return FilteredComplex([fc.degrees[j] for j in keep], [f[j] for j in keep], d2, fld,
                           [fc.blocks[j] for j in keep], fc.direction)


def pages(fc: FilteredComplex, *, reduce: bool = True) -> SpectralResult:
    """All pages E_1, ..., E_s where s is the page at which the sequence collapses.

    With ``reduce`` (the default) level-preserving entries are cancelled
    first; the dense subquotient computation then runs on E_1-sized data.
    """
    if reduce:
        fc = filtered_reduction(fc)
    members: dict[Hashable, list[int]] = {}
    for j, b in enumerate(fc.blocks):
        members.setdefault(b, []).append(j)
    engines = [_BlockPages(fc, m) for _, m in sorted(members.items(), key=lambda kv: repr(kv[0]))]
    if fc.filtration:
        span = max(fc.filtration) - min(fc.filtration)
    else:
        span = 0
    last = span + 2
    tables = []
    for r in range(1, last + 1):
        dims: dict[tuple[int, int], int] = {}
        for eng in engines:
            levels = sorted(set(eng.fval.values()))
            for h in eng.by_h:
                for p in levels:
                    n = eng.dim(h, p, r)
                    if n:
                        key = (h, -fc.direction * p)
                        dims[key] = dims.get(key, 0) + n
        tables.append(PageTable(r, dict(sorted(dims.items()))))
    infinity = tables[-1]
    collapse = next(t.r for t in tables if t.dims == infinity.dims)
    hom: dict[int, int] = {}
    for eng in engines:
        for h, n in eng.homology().items():
            hom[h] = hom.get(h, 0) + n
    return SpectralResult(tables[:collapse], PageTable(-1, infinity.dims), collapse,
                          dict(sorted(hom.items())))


# -------------------------------------------------------------- filtrations

def winding_filtration(w: SliceWord, field: Field = fields.QQ) -> FilteredComplex:
    """Full Khovanov complex filtered by the winding grading.

    The filtration level is (k + seam_width) / 2; the annular part of the
    differential keeps it and the remainder lowers it by one.
    """
    cx = assemble(w, PLAIN)
    m = w.seam_width
    degrees, filt, blocks, d = [], [], [], {}
    index = {}
    for key in sorted(cx.blocks, key=lambda kk: kk[0]):
        blk = cx.blocks[key]
        for h in sorted(blk.bases):
            for pos, g in enumerate(blk.bases[h]):
                index[(key, h, pos)] = len(degrees)
                degrees.append(g.h)
                filt.append((g.k + m) // 2)
                blocks.append(g.q)
    for key, blk in cx.blocks.items():
        for h, mat in blk.d.items():
            for r, c, val in mat.triplets():
                d.setdefault(index[(key, h, c)], {})[index[(key, h + 1, r)]] = val
    return FilteredComplex(degrees, filt, d, field, blocks, direction=-1)


@dataclass
class CubeData:
    """Abstract cube of complexes.

    ``spaces[v]`` lists basis vectors at vertex ``v`` as ``(internal degree,
    block label)``.  ``maps[(src, tgt)]`` is a sparse map
    ``{(tgt index, src index): coefficient}``; pairs with ``src == tgt`` are
    vertex differentials.  ``downward`` cubes have maps from ``v`` to
    smaller vertices; total degree is internal degree +- |v| so that every
    edge raises it by one.
    """

    c: int
    spaces: dict[Vertex, list[tuple[int, Hashable]]]
    maps: dict[tuple[Vertex, Vertex], dict[tuple[int, int], int]]
    downward: bool = False

    def signed(self, sign: Callable[[Vertex, Vertex], int]) -> "CubeData":
        """Multiply each edge map (|src - tgt| = 1) by ``sign(src, tgt)``."""
        maps = {}
        for (s, t), mp in self.maps.items():
            if _dist(s, t) == 1:
                e = sign(s, t)
                maps[(s, t)] = {key: e * val for key, val in mp.items()}
            else:
                maps[(s, t)] = dict(mp)
        return CubeData(self.c, self.spaces, maps, self.downward)


def fvu_sign(v: Vertex, u: Vertex) -> int:
    """Sign attached to the component of a downward cube map from ``v`` to ``u <= v``.

    (-1)^(|v-u|(|v-u|-1)/2 + sum(v)).  On edges this is (-1)^|v|, which
    depends only on the source vertex, so multiplying an anticommuting cube
    by it multiplies both paths around every square by the same factor.
    """
    n = _dist(v, u)
    return -1 if (n * (n - 1) // 2 + sum(v)) % 2 else 1


def _dist(a: Vertex, b: Vertex) -> int:
    return sum(x != y for x, y in zip(a, b))


def _compose(second: dict, first: dict) -> dict:
    by_mid: dict[int, list[tuple[int, int]]] = {}
    for (mid, src), x in first.items():
        by_mid.setdefault(mid, []).append((src, x))
    out: dict[tuple[int, int], int] = {}
    for (tgt, mid), y in second.items():
        for src, x in by_mid.get(mid, ()):
            out[(tgt, src)] = out.get((tgt, src), 0) + x * y
    return {k: v for k, v in out.items() if v}


def check_anticommutation(cube: CubeData, field: Field | None = None) -> list[tuple[Vertex, Vertex]]:
    """Pairs (u, w) with |w - u| = 2 whose sum of composites is nonzero.

    The sum runs over all vertices v between u and w (vertex differentials
    and diagonal maps included when present).
    """
    out_maps: dict[Vertex, list[tuple[Vertex, dict]]] = {}
    for (s, t), mp in cube.maps.items():
        out_maps.setdefault(s, []).append((t, mp))
    failures = []
    for u in sorted(cube.spaces):
        acc: dict[Vertex, dict[tuple[int, int], int]] = {}
        for v, first in out_maps.get(u, ()):
            for w, second in out_maps.get(v, ()):
                if _dist(u, w) != 2:
                    continue
                comp = _compose(second, first)
                tgt = acc.setdefault(w, {})
                for key, val in comp.items():
                    tgt[key] = tgt.get(key, 0) + val
        for w in sorted(acc):
            vals = acc[w].values()
            if field is not None:
                bad = any(field.reduce(field.coerce(x)) for x in vals)
            else:
                bad = any(vals)
            if bad:
                failures.append((u, w))
    return failures


def cube_filtration(cube: CubeData, field: Field = fields.QQ, *, check: bool = True) -> FilteredComplex:
    """Total complex of a cube, filtered by the vertex weight |v|."""
    if check:
        bad = check_anticommutation(cube, field)
        if bad:
            raise AnticommutationError(bad)
    degrees, filt, blocks = [], [], []
    index: dict[tuple[Vertex, int], int] = {}
    shift = -1 if cube.downward else 1
    for v in sorted(cube.spaces):
        wt = sum(v)
        for pos, (deg, blk) in enumerate(cube.spaces[v]):
            index[(v, pos)] = len(degrees)
            degrees.append(deg + shift * wt)
            filt.append(wt)
            blocks.append(blk)
    d: dict[int, dict[int, int]] = {}
    for (s, t), mp in cube.maps.items():
        for (ti, si), val in mp.items():
            col = d.setdefault(index[(s, si)], {})
            row = index[(t, ti)]
            col[row] = col.get(row, 0) + val
    d = {j: {i: x for i, x in col.items() if x} for j, col in d.items()}
    return FilteredComplex(degrees, filt, d, field, blocks,
                           direction=-1 if cube.downward else 1)


def khovanov_cube(w: SliceWord, mode: str = ANNULAR, convention: str = "khovanov") -> CubeData:
    """The cube of resolutions as a CubeData with signed edge maps.

    ``convention="khovanov"`` is the upward cube of ``w`` with signs
    (-1)^(v_{i+1} + ... + v_c).  ``convention="eta"`` is the downward cube
    indexed by the vertices of ``w``: the space at ``v`` is the chain group
    of ``mirror(w)`` at ``1 - v`` (the same circles), edges run
    ``v -> v - e_i`` and carry (-1)^(v_i + ... + v_c).  Its E_2 page is the
    homology of the mirror.
    """
    if convention not in ("khovanov", "eta"):
        raise ValueError(f"unknown convention {convention!r}")
    base = w if convention == "khovanov" else mirror(w)
    cube = Cube(base)
    c = cube.c

    def relabel(v: Vertex) -> Vertex:
        return v if convention == "khovanov" else tuple(1 - x for x in v)

    spaces = {}
    for v in cube.vertices():
        wt = sum(v)
        gens = generators_at(cube, v)
        label = relabel(v)
        # internal degree chosen so that total degree equals the generator's h
        internal = (lambda g: g.h - wt) if convention == "khovanov" else (lambda g: g.h + sum(label))
        spaces[label] = [(internal(g), (g.q, g.k) if mode == ANNULAR else g.q) for g in gens]
    maps = {}
    for v in cube.vertices():
        nsrc = len(cube.state(v).circles)
        for i in range(c):
            if v[i]:
                continue
            u = v[:i] + (1,) + v[i + 1:]
            inc = cube.incidence(v, i)
            table = edge_map(inc, mode)
            mp = {}
            for minus in range(1 << nsrc):
                tbase = 0
                for a, b in inc.carry:
                    if minus >> a & 1:
                        tbase |= 1 << b
                src = tuple(-1 if minus >> a & 1 else 1 for a in inc.sources)
                for tgt, coeff in table[src]:
                    tmask = tbase
                    for t, lab in zip(inc.targets, tgt):
                        if lab < 0:
                            tmask |= 1 << t
                    mp[(tmask, minus)] = coeff
            s_label, t_label = relabel(v), relabel(u)
            if convention == "khovanov":
                e = edge_sign(v, i)
            else:
                e = eta_sign(s_label, i)
            maps[(s_label, t_label)] = {key: e * val for key, val in mp.items()}
    return CubeData(c, spaces, maps, downward=(convention == "eta"))


def random_filtered_complex(rng, size: int, field: Field = fields.QQ,
                            span: int = 3) -> FilteredComplex:
    """Random filtered complex built as d = P D0 P^-1 with a filtered P.

    D0 pairs basis vectors of adjacent degrees; conjugating by a random
    upper-triangular (in filtration order) change of basis keeps d^2 = 0 and
    the filtration, while mixing all levels.
    """
    degrees = [rng.randrange(3) for _ in range(size)]
    filt = [rng.randrange(span + 1) for _ in range(size)]
    order = sorted(range(size), key=lambda j: (filt[j], j))
    # pick disjoint pairs (a -> b) with deg b = deg a + 1 and f_b <= f_a
    d0: dict[int, dict[int, int]] = {}
    used: set[int] = set()
    for a in rng.sample(range(size), size):
        if a in used:
            continue
        cands = [b for b in range(size) if b not in used and b != a
                 and degrees[b] == degrees[a] + 1 and filt[b] <= filt[a]]
        if cands and rng.random() < 0.7:
            b = rng.choice(cands)
            used.update((a, b))
            d0[a] = {b: 1}
    # filtered change of basis: e_j -> e_j + sum of lower-filtration e_i of same degree
    p = {j: {j: 1} for j in range(size)}
    pinv_cols = {}
    for j in order:
        for i in order:
            if filt[i] < filt[j] and degrees[i] == degrees[j] and rng.random() < 0.4:
                p[j][i] = rng.randint(-2, 2)
    # d = P d0 P^-1 ; compute P^-1 by forward substitution in filtration order
    for j in order:
        col = {j: 1}
        for i, x in p[j].items():
            if i != j and x:
                for t, y in pinv_cols[i].items():
                    col[t] = col.get(t, 0) - x * y
        pinv_cols[j] = {t: v for t, v in col.items() if v}

    def apply_sparse(mat_cols, vec):
        out: dict[int, int] = {}
        for c, x in vec.items():
            for r, y in mat_cols.get(c, {}).items():
                out[r] = out.get(r, 0) + x * y
        return {k: v for k, v in out.items() if v}

    d = {}
    for j in range(size):
        v = apply_sparse(p, apply_sparse(d0, pinv_cols[j]))
        if v:
            d[j] = v
    return FilteredComplex(degrees, filt, d, field)


def all_vertices(c: int):
    return itertools.product((0, 1), repeat=c)
