"""Dense brute-force reference computation for small diagrams.

Deliberately shares no code with the main pipeline beyond the SliceWord
container: circles come from a union-find over (level, position) points,
a circle is non-trivial iff it meets the seam an odd number of times, the
annular maps are the twelve V/W tables written out literally, and all
linear algebra is sympy's dense Smith form and ranks.  Meant for c <= 4.
"""

from __future__ import annotations

import itertools

from sympy import GF, QQ as SYM_QQ, ZZ as SYM_ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix

from .diagram import Kind, SliceWord

# literal annular tables: (types of inputs) -> {input labels: [(output labels, coeff)]}
# type "V" = trivial circle, "W" = non-trivial; labels are +1 / -1
_ANNULAR_MERGE = {
    ("V", "V"): {(1, 1): [((1,), 1)], (1, -1): [((-1,), 1)],
                 (-1, 1): [((-1,), 1)], (-1, -1): []},
    ("V", "W"): {(1, 1): [((1,), 1)], (1, -1): [((-1,), 1)],
                 (-1, 1): [], (-1, -1): []},
    ("W", "W"): {(1, 1): [], (-1, -1): [],
                 (1, -1): [((-1,), 1)], (-1, 1): [((-1,), 1)]},
}
_ANNULAR_SPLIT = {
    ("V", "V"): {(1,): [((1, -1), 1), ((-1, 1), 1)], (-1,): [((-1, -1), 1)]},
    ("V", "W"): {(1,): [((-1, 1), 1)], (-1,): [((-1, -1), 1)]},
    ("W", "W"): {(1,): [((1, -1), 1), ((-1, 1), 1)], (-1,): []},
}
_PLAIN_MERGE = {(1, 1): [((1,), 1)], (1, -1): [((-1,), 1)],
                (-1, 1): [((-1,), 1)], (-1, -1): []}
_PLAIN_SPLIT = {(1,): [((1, -1), 1), ((-1, 1), 1)], (-1,): [((-1, -1), 1)]}


def _points(w: SliceWord):
    widths = [w.seam_width]
    for s in w.slices:
        widths.append(widths[-1] + (2 if s.kind is Kind.U else -2 if s.kind is Kind.A else 0))
    n = len(w.slices)

    def pt(level, pos):
        return (level % n if n else 0, pos)

    return widths, n, pt


def _connections(w: SliceWord, bits):
    """Edges between points; crossings resolved by ``bits`` (or kept if None).

    Each edge is (point, point, crossing slice or None); strands run from
    their lower point to their upper point.
    """
    widths, n, pt = _points(w)
    order = {s: j for j, s in enumerate(w.crossing_order)}
    edges = []
    if n == 0:
        return [(pt(0, p), pt(0, p), None) for p in range(1, w.seam_width + 1)]
    for l, s in enumerate(w.slices):
        i, wd = s.position, widths[l]
        if s.kind is Kind.U:
            edges.append((pt(l + 1, i), pt(l + 1, i + 1), None))
            edges += [(pt(l, p), pt(l + 1, p if p < i else p + 2), None)
                      for p in range(1, wd + 1)]
        elif s.kind is Kind.A:
            edges.append((pt(l, i), pt(l, i + 1), None))
            edges += [(pt(l, p), pt(l + 1, p if p < i else p - 2), None)
                      for p in range(1, wd + 1) if p not in (i, i + 1)]
        else:
            edges += [(pt(l, p), pt(l + 1, p), None)
                      for p in range(1, wd + 1) if p not in (i, i + 1)]
            if bits is None:
                edges.append((pt(l, i), pt(l + 1, i + 1), l))
                edges.append((pt(l, i + 1), pt(l + 1, i), l))
            else:
                smooth = bits[order[l]]
                if s.kind is Kind.N:
                    smooth = 1 - smooth
                if smooth:
                    edges.append((pt(l, i), pt(l, i + 1), l))
                    edges.append((pt(l + 1, i), pt(l + 1, i + 1), l))
                else:
                    edges.append((pt(l, i), pt(l + 1, i), l))
                    edges.append((pt(l, i + 1), pt(l + 1, i + 1), l))
    return edges


def _circles(w: SliceWord, bits):
    """List of (frozenset of points, nontrivial flag)."""
    edges = _connections(w, bits)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in edges:
        parent[find(a)] = find(b)
    groups: dict = {}
    for a, b, _ in edges:
        for x in (a, b):
            groups.setdefault(find(x), set()).add(x)
    out = []
    for pts in groups.values():
        seam_hits = sum(1 for (l, _p) in pts if l == 0)
        out.append((frozenset(pts), seam_hits % 2 == 1))
    out.sort(key=lambda c: min(c[0]))
    return out


def _crossing_signs(w: SliceWord) -> tuple[int, int]:
    """(n_plus, n_minus), each component oriented upward at its lowest point."""
    if not w.slices:
        return 0, 0
    edges = _connections(w, None)
    widths, _n, _pt = _points(w)
    # slice index of every edge, in the order _connections emits them
    owner = []
    for l, s in enumerate(w.slices):
        wd = widths[l]
        owner += [l] * {Kind.U: wd + 1, Kind.A: wd - 1}.get(s.kind, wd)
    assert len(owner) == len(edges)
    adj: dict = {}
    for idx, (a, b, _) in enumerate(edges):
        adj.setdefault(a, []).append(idx)
        adj.setdefault(b, []).append(idx)

    first_edge = {}
    for idx, l in enumerate(owner):
        first_edge.setdefault(l, idx)

    def is_above(idx, x):
        # x is a bottom end of edge idx: the edge sits in the slice starting
        # at level(x) and is a cap or a strand leaving x upward
        l = owner[idx]
        if l != x[0]:
            return False
        kind = w.slices[l].kind
        if idx == first_edge[l] and kind is Kind.A:
            return True
        if idx == first_edge[l] and kind is Kind.U:
            return False
        return edges[idx][0] == x

    walked: dict[int, tuple] = {}
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        cur_edge = next(e for e in adj[start] if is_above(e, start))
        cur_pt = start
        while True:
            seen.add(cur_pt)
            a, b, _ = edges[cur_edge]
            nxt = b if cur_pt == a else a
            walked[cur_edge] = (cur_pt, nxt)
            if nxt == start:
                break
            rest = [e for e in adj[nxt] if e != cur_edge]
            cur_edge, cur_pt = rest[0], nxt
    n_plus = n_minus = 0
    for l, s in enumerate(w.slices):
        if s.kind not in (Kind.P, Kind.N):
            continue
        ups = [1 if walked[idx][0] == edges[idx][0] else -1
               for idx, (_a, _b, tag) in enumerate(edges) if tag == l]
        sign = (1 if s.kind is Kind.P else -1) * ups[0] * ups[1]
        if sign > 0:
            n_plus += 1
        else:
            n_minus += 1
    return n_plus, n_minus


def chain_complex(w: SliceWord, mode: str = "annular"):
    """Dense complex: dict (q, k) -> {h: basis list}, and {(q, k, h): Matrix}."""
    c = len(w.crossing_order)
    n_plus, n_minus = _crossing_signs(w)
    basis: dict = {}
    states = {}
    for bits in itertools.product((0, 1), repeat=c):
        circles = _circles(w, bits)
        states[bits] = circles
        for labels in itertools.product((1, -1), repeat=len(circles)):
            h = sum(bits) - n_minus
            q = sum(labels) + sum(bits) + n_plus - 2 * n_minus
            k = sum(l for l, (_pts, nt) in zip(labels, circles) if nt)
            key = (q, k if mode == "annular" else 0)
            basis.setdefault(key, {}).setdefault(h, []).append((bits, labels))
    where = {}
    for key, per_h in basis.items():
        for h, gens in per_h.items():
            for idx, g in enumerate(gens):
                where[g] = (key, h, idx)
    mats = {}
    for key, per_h in basis.items():
        for h in per_h:
            if h + 1 in per_h:
                mats[(key, h)] = [[0] * len(per_h[h]) for _ in per_h[h + 1]]
    for bits, circles in states.items():
        for i in range(c):
            if bits[i]:
                continue
            tgt_bits = bits[:i] + (1,) + bits[i + 1:]
            tgt_circles = states[tgt_bits]
            sign = (-1) ** sum(bits[i + 1:])
            src_sets = [pts for pts, _ in circles]
            tgt_sets = [pts for pts, _ in tgt_circles]
            gone = [j for j, pts in enumerate(src_sets) if pts not in tgt_sets]
            new = [j for j, pts in enumerate(tgt_sets) if pts not in src_sets]
            types_in = ["W" if circles[j][1] else "V" for j in gone]
            types_out = ["W" if tgt_circles[j][1] else "V" for j in new]
            if len(gone) == 2:
                order = sorted(range(2), key=lambda t: types_in[t])
                gone = [gone[t] for t in order]
                table = _PLAIN_MERGE if mode == "plain" else _ANNULAR_MERGE[tuple(types_in[t] for t in order)]
            else:
                order = sorted(range(2), key=lambda t: types_out[t])
                new = [new[t] for t in order]
                table = _PLAIN_SPLIT if mode == "plain" else _ANNULAR_SPLIT[tuple(types_out[t] for t in order)]
            for labels in itertools.product((1, -1), repeat=len(circles)):
                src_g = (bits, labels)
                key, h, col = where[src_g]
                inp = tuple(labels[j] for j in gone)
                for outl, coeff in table[inp]:
                    tl = [0] * len(tgt_circles)
                    for j, pts in enumerate(tgt_sets):
                        if j in new:
                            tl[j] = outl[new.index(j)]
                        else:
                            tl[j] = labels[src_sets.index(pts)]
                    tkey, th, row = where[(tgt_bits, tuple(tl))]
                    assert tkey == key and th == h + 1
                    mats[(key, h)][row][col] += sign * coeff
    return basis, {k: Matrix(m) for k, m in mats.items()}


def _rank_and_factors(m: Matrix | None, coeff: str):
    if m is None or m.rows == 0 or m.cols == 0:
        return 0, ()
    if coeff == "Z":
        facs = [abs(int(x)) for x in invariant_factors(m, domain=SYM_ZZ)]
        nz = [x for x in facs if x]
        return len(nz), tuple(sorted(x for x in nz if x > 1))
    if coeff == "Q":
        return DomainMatrix.from_Matrix(m).convert_to(SYM_QQ).rank(), ()
    p = int(coeff[1:])
    return DomainMatrix.from_Matrix(m).convert_to(GF(p)).rank(), ()


def homology(w: SliceWord, mode: str = "annular", coeff: str = "Z"):
    """{(h, q, k): (free, torsion)} with zero entries dropped."""
    basis, mats = chain_complex(w, mode)
    out = {}
    for key, per_h in basis.items():
        q, k = key
        for h, gens in per_h.items():
            r_out, _ = _rank_and_factors(mats.get((key, h)), coeff)
            r_in, tors = _rank_and_factors(mats.get((key, h - 1)), coeff)
            free = len(gens) - r_out - r_in
            if free or tors:
                out[(h, q, k)] = (free, tors)
    return dict(sorted(out.items()))
