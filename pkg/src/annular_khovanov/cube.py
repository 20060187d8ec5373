"""Cube of resolutions: circles, windings and labeled generators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagram import Geometry, LinkData, SliceWord, link_data, trace_cycles

Vertex = tuple[int, ...]


@dataclass(frozen=True)
class Circle:
    id: int
    winding: int

    @property
    def trivial(self) -> bool:
        return self.winding == 0


@dataclass(frozen=True)
class ResolvedState:
    circles: tuple[Circle, ...]
    arc_to_circle: tuple[int, ...]
    node_to_circle: tuple[int, ...]

    @property
    def nontrivial(self) -> tuple[int, ...]:
        return tuple(c.id for c in self.circles if not c.trivial)


@dataclass(frozen=True)
class MergeOrSplit:
    """What happens to the circles along the cube edge ``v -> v + e_i``.

    For a merge, ``sources`` are the two circle ids of the resolution at
    ``v`` and ``targets`` is the single circle id at ``v + e_i``; for a split
    it is the other way round.  ``carry`` maps every uninvolved circle of
    ``v`` to its id at ``v + e_i``.
    """

    kind: str  # "merge" or "split"
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    source_trivial: tuple[bool, ...]
    target_trivial: tuple[bool, ...]
    carry: tuple[tuple[int, int], ...]


def resolve(w: SliceWord, v: Sequence[int]) -> ResolvedState:
    """Circles of the resolution ``v``, ordered by their smallest arc index."""
    if len(v) != w.crossing_count:
        raise ValueError(f"vertex has length {len(v)}, expected {w.crossing_count}")
    return _resolve(Geometry(w), tuple(v))


def _resolve(geom: Geometry, v: Vertex) -> ResolvedState:
    arcs = geom.arcs(v)
    cycles = trace_cycles(geom, arcs)
    arc_to_circle = [0] * len(arcs)
    node_to_circle = [0] * geom.node_count
    circles = []
    for cid, (ids, _dirs, winding, _up) in enumerate(cycles):
        circles.append(Circle(cid, winding))
        for a in ids:
            arc_to_circle[a] = cid
            node_to_circle[arcs[a].a] = cid
            node_to_circle[arcs[a].b] = cid
    return ResolvedState(tuple(circles), tuple(arc_to_circle), tuple(node_to_circle))


class Cube:
    """Lazily memoized cube of resolutions of one slice word.

    The memo is a plain dict keyed by vertex bits; concurrent inserts of the
    same key store equal values, so races are harmless.
    """

    def __init__(self, w: SliceWord):
        self.word = w
        self.geometry = Geometry(w)
        self.c = w.crossing_count
        self.link: LinkData = link_data(w)
        self._states: dict[Vertex, ResolvedState] = {}
        self._crossing_nodes = self._find_crossing_nodes()

    def _find_crossing_nodes(self) -> list[tuple[int, ...]]:
        geom = self.geometry
        out = []
        for s_idx in self.word.crossing_order:
            i = self.word.slices[s_idx].position
            out.append((geom.node(s_idx, i), geom.node(s_idx, i + 1),
                        geom.node(s_idx + 1, i), geom.node(s_idx + 1, i + 1)))
        return out

    def vertices(self) -> Iterator[Vertex]:
        return itertools.product((0, 1), repeat=self.c)

    def state(self, v: Sequence[int]) -> ResolvedState:
        v = tuple(v)
        st = self._states.get(v)
        if st is None:
            st = self._states.setdefault(v, _resolve(self.geometry, v))
        return st

    def incidence(self, v: Sequence[int], i: int) -> MergeOrSplit:
        v = tuple(v)
        if v[i] != 0:
            raise ValueError("edge_incidence needs v_i = 0")
        u = v[:i] + (1,) + v[i + 1:]
        sv, su = self.state(v), self.state(u)
        nodes = self._crossing_nodes[i]
        src = sorted({sv.node_to_circle[n] for n in nodes})
        tgt = sorted({su.node_to_circle[n] for n in nodes})
        involved = set(src)
        # uninvolved circles keep their nodes; map them through any node
        carry = {}
        for node, cid in enumerate(sv.node_to_circle):
            if cid not in involved and cid not in carry:
                carry[cid] = su.node_to_circle[node]
        if len(src) == 2 and len(tgt) == 1:
            kind = "merge"
        elif len(src) == 1 and len(tgt) == 2:
            kind = "split"
        else:  # pragma: no cover - impossible for planar diagrams
            raise AssertionError(f"edge {v}->{u} is neither merge nor split")
        return MergeOrSplit(
            kind, tuple(src), tuple(tgt),
            tuple(sv.circles[c].trivial for c in src),
            tuple(su.circles[c].trivial for c in tgt),
            tuple(sorted(carry.items())),
        )


def edge_incidence(w: SliceWord, v: Sequence[int], i: int) -> MergeOrSplit:
    return Cube(w).incidence(v, i)


# ---------------------------------------------------------------- generators

@dataclass(frozen=True)
class Generator:
    """A cube vertex with a sign per circle.

    ``minus`` is a bitmask: bit ``j`` set means circle ``j`` carries the
    minus label.
    """

    vertex: Vertex
    minus: int
    h: int
    q: int
    k: int

    def labels(self, ncircles: int) -> tuple[int, ...]:
        return tuple(-1 if self.minus >> j & 1 else 1 for j in range(ncircles))


def gradings(state: ResolvedState, v: Sequence[int], minus: int,
             n_plus: int, n_minus: int) -> tuple[int, int, int]:
    """(h, q, k) of the generator labelled by ``minus`` at vertex ``v``.

    h = |v| - n_-, q = (sum of label signs) + |v| + n_+ - 2 n_-, and k sums
    the label signs of the non-trivial circles only.
    """
    weight = sum(v)
    n = len(state.circles)
    signs = n - 2 * bin(minus).count("1")
    k = 0
    for c in state.circles:
        if not c.trivial:
            k += -1 if minus >> c.id & 1 else 1
    return weight - n_minus, signs + weight + n_plus - 2 * n_minus, k


def generators_at(cube: Cube, v: Sequence[int]) -> list[Generator]:
    v = tuple(v)
    st = cube.state(v)
    n = len(st.circles)
    npl, nmi = cube.link.n_plus, cube.link.n_minus
    out = []
    for minus in range(1 << n):
        h, q, k = gradings(st, v, minus, npl, nmi)
        out.append(Generator(v, minus, h, q, k))
    return out
