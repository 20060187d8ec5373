"""Exact homology of graded integer complexes.

Integer homology goes through the Smith normal form of each differential.
The sparse elimination first clears unit pivots (almost every entry of a
Khovanov differential is +-1), then finishes the leftover core densely.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .sparse import SparseMatrix
from .tqft import GradedComplex


@dataclass(frozen=True)
class Coefficients:
    """``Z``, ``Q`` or ``F_p``."""

    kind: str  # "Z", "Q" or "Fp"
    p: int = 0

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        if t.startswith("Fp:"):
            p = int(t[3:])
        elif t.startswith("F") and t[1:].isdigit():
            p = int(t[1:])
        else:
            raise ValueError(f"unknown coefficients {text!r}")
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        return cls("Fp", p)

    @property
    def label(self) -> str:
        return self.kind

    def __str__(self) -> str:
        return f"F{self.p}" if self.kind == "Fp" else self.kind


ZZ = Coefficients("Z")
QQ = Coefficients("Q")


def _coeff(c) -> Coefficients:
    return c if isinstance(c, Coefficients) else Coefficients.parse(c)


# ------------------------------------------------------------------- SNF

@dataclass(frozen=True)
class SNF:
    rank: int
    factors: tuple[int, ...]  # invariant factors > 1, each dividing the next


def _invariant_chain(diagonal: Iterable[int]) -> list[int]:
    """Invariant factors of a diagonal matrix with the given nonzero entries."""
    d = sorted(abs(x) for x in diagonal)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            if d[j] % d[i]:
                g = math.gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return sorted(d)


def _dense_diagonalize(a: list[list[int]]) -> list[int]:
    """Diagonal entries reached by unimodular row/column operations."""
    a = [row[:] for row in a]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    qt = x // p
                    if qt:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= qt * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    qt = x // p
                    if qt:
                        for row in a[t:]:
                            row[j] -= qt * row[t]
                    if a[t][j]:
                        done = False
            if done:
                break
            # a smaller remainder exists in row/column t: make it the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(a[t][t])
        t += 1
    return diag


def _unit_eliminate(rows: dict[int, dict[int, int]], modulus: int = 0) -> int:
    """Eliminate unit pivots in place; returns the number eliminated.

    With ``modulus`` set, arithmetic is in Z/modulus (a field) and every
    nonzero entry is a unit.  Pivot rule: shortest column first, then the
    shortest row in it, ties broken by lowest index.
    """
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def is_unit(x: int) -> bool:
        return x != 0 if modulus else abs(x) == 1

    rank = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            if c not in cols:
                continue
            cand = [r for r in cols[c] if is_unit(rows[r][c])]
            if not cand:
                continue
            r = min(cand, key=lambda r: (len(rows[r]), r))
            prow = rows.pop(r)
            u = prow[c]
            inv = pow(u, -1, modulus) if modulus else u
            for r2 in sorted(cols[c]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                f = row2[c] * inv
                for c2, x in prow.items():
                    y = row2.get(c2, 0) - f * x
                    if modulus:
                        y %= modulus
                    if y:
                        if c2 not in row2:
                            cols[c2].add(r2)
                        row2[c2] = y
                    elif c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                if not row2:
                    del rows[r2]
            for c2 in prow:
                cols[c2].discard(r)
                if not cols[c2]:
                    del cols[c2]
            cols.pop(c, None)
            rank += 1
            progress = True
    return rank


def snf(m: SparseMatrix | list[list[int]]) -> SNF:
    """Rank and invariant factors (> 1) of an integer matrix."""
    if not isinstance(m, SparseMatrix):
        m = SparseMatrix.from_dense(m)
    rows = {r: row for r, row in enumerate(m.rows()) if row}
    rank = _unit_eliminate(rows)
    if not rows:
        return SNF(rank, ())
    col_ids = sorted({c for row in rows.values() for c in row})
    cpos = {c: j for j, c in enumerate(col_ids)}
    dense = []
    for r in sorted(rows):
        line = [0] * len(col_ids)
        for c, x in rows[r].items():
            line[cpos[c]] = x
        dense.append(line)
    diag = _dense_diagonalize(dense)
    chain = _invariant_chain(diag)
    return SNF(rank + len(chain), tuple(x for x in chain if x > 1))


def rank_mod_p(m: SparseMatrix, p: int) -> int:
    rows = {}
    for r, row in enumerate(m.rows()):
        red = {c: x % p for c, x in row.items() if x % p}
        if red:
            rows[r] = red
    return _unit_eliminate(rows, modulus=p)


# ------------------------------------------------------------- homology

@dataclass(frozen=True)
class GroupEntry:
    free: int
    torsion: tuple[int, ...] = ()


@dataclass
class GradedGroup:
    """Homology indexed by (h, q, k); zero entries are omitted."""

    mode: str
    coeff: Coefficients
    entries: dict[tuple[int, int, int], GroupEntry] = field(default_factory=dict)

    def rank(self) -> int:
        """Total free rank (the dimension for field coefficients)."""
        return sum(e.free for e in self.entries.values())

    def torsion(self) -> list[int]:
        return sorted(t for e in self.entries.values() for t in e.torsion)

    def dims(self) -> dict[tuple[int, int, int], int]:
        return {key: e.free for key, e in sorted(self.entries.items()) if e.free}

    def dims_by_k(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (h, q, k), e in self.entries.items():
            if e.free:
                out[k] = out.get(k, 0) + e.free
        return dict(sorted(out.items()))

    def restrict_k(self, k: int) -> "GradedGroup":
        return GradedGroup(self.mode, self.coeff,
                           {key: e for key, e in self.entries.items() if key[2] == k})

    def shifted(self, dh: int = 0, dq: int = 0) -> "GradedGroup":
        return GradedGroup(self.mode, self.coeff, {
            (h + dh, q + dq, k): e for (h, q, k), e in self.entries.items()})

    def to_json_obj(self) -> dict:
        def order(item):
            (h, q, k), _ = item
            return (k, q, h)

        return {
            "mode": self.mode,
            "coeff": "Fp" if self.coeff.kind == "Fp" else self.coeff.kind,
            **({"p": self.coeff.p} if self.coeff.kind == "Fp" else {}),
            "entries": [
                {"h": h, "q": q, "k": k, "free": e.free, "torsion": list(e.torsion)}
                for (h, q, k), e in sorted(self.entries.items(), key=order)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=False)

    @classmethod
    def from_json(cls, text: str | dict) -> "GradedGroup":
        obj = json.loads(text) if isinstance(text, str) else text
        coeff = Coefficients("Fp", obj["p"]) if obj["coeff"] == "Fp" else Coefficients(obj["coeff"])
        entries = {
            (e["h"], e["q"], e["k"]): GroupEntry(e["free"], tuple(e["torsion"]))
            for e in obj["entries"]
        }
        return cls(obj["mode"], coeff, entries)

    def table(self) -> str:
        """Plain-text table with one row per nonzero entry."""
        lines = [f"# mode={self.mode} coeff={self.coeff}",
                 f"{'k':>4} {'q':>4} {'h':>4} {'free':>6}  torsion"]
        for e in self.to_json_obj()["entries"]:
            tors = ",".join(str(t) for t in e["torsion"]) or "-"
            lines.append(f"{e['k']:>4} {e['q']:>4} {e['h']:>4} {e['free']:>6}  {tors}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table(cls, text: str) -> "GradedGroup":
        lines = [l for l in text.splitlines() if l.strip()]
        meta = dict(part.split("=", 1) for part in lines[0][1:].split())
        coeff = Coefficients.parse(meta["coeff"])
        entries = {}
        for line in lines[2:]:
            k, q, h, free, tors = line.split()
            torsion = () if tors == "-" else tuple(int(t) for t in tors.split(","))
            entries[(int(h), int(q), int(k))] = GroupEntry(int(free), torsion)
        return cls(meta["mode"], coeff, entries)


def _block_homology(dims: dict[int, int], mats: dict[int, SparseMatrix],
                    coeff: Coefficients) -> dict[int, GroupEntry]:
    ranks: dict[int, int] = {}
    factors: dict[int, tuple[int, ...]] = {}
    for h, m in mats.items():
        if coeff.kind == "Fp":
            ranks[h] = rank_mod_p(m, coeff.p)
        else:
            res = snf(m)
            ranks[h] = res.rank
            factors[h] = res.factors
    out = {}
    for h, n in dims.items():
        free = n - ranks.get(h, 0) - ranks.get(h - 1, 0)
        tors = factors.get(h - 1, ()) if coeff.kind == "Z" else ()
        if free or tors:
            out[h] = GroupEntry(free, tors)
    return out


# below this many generators, worker processes cost more than they save
PARALLEL_MIN_GENERATORS = 20000


def homology(c: GradedComplex, coeff: Coefficients | str = ZZ, *,
             workers: int = 1) -> GradedGroup:
    """H(C) per grading block.  Plain-mode results are reported at k = 0.

    Blocks are independent; with ``workers > 1`` and a large enough complex
    they are reduced in a process pool.
    """
    coeff = _coeff(coeff)
    keys = sorted(c.blocks, key=lambda key: (key[1] or 0, key[0]))
    jobs = []
    for key in keys:
        blk = c.blocks[key]
        dims = {h: len(b) for h, b in blk.bases.items()}
        jobs.append((dims, dict(blk.d), coeff))
    if workers > 1 and len(jobs) > 1 and c.total_rank() >= PARALLEL_MIN_GENERATORS:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_homology, *zip(*jobs)))
    else:
        results = [_block_homology(*job) for job in jobs]
    out = GradedGroup(c.mode, coeff)
    for key, res in zip(keys, results):
        q, k = key
        for h, entry in res.items():
            out.entries[(h, q, 0 if k is None else k)] = entry
    out.entries = dict(sorted(out.entries.items()))
    return out
