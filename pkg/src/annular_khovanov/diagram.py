"""Annular link diagrams as slice words.

The annulus is cut open along a seam arc, so a diagram becomes a tangle
read bottom to top, whose top is glued back to its bottom.  Each slice is
one elementary piece acting on adjacent strands:

    P i   positive crossing of strands i, i+1 (the braid generator sigma_i)
    N i   negative crossing (sigma_i inverse)
    U i   cup: two new strands appear at positions i, i+1
    A i   cap: strands i, i+1 are joined

Positions are 1-based.  ``seam_width`` is the number of strands crossing
the seam.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Raised for malformed or inconsistent slice words."""


class SliceSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WidthError(DiagramError):
    def __init__(self, message: str, slice_index: int):
        super().__init__(f"slice {slice_index}: {message}")
        self.slice_index = slice_index


class Kind(enum.Enum):
    P = "P"
    N = "N"
    U = "U"
    A = "A"

    @property
    def is_crossing(self) -> bool:
        return self in (Kind.P, Kind.N)

    def delta(self) -> int:
        """Change of width caused by a slice of this kind."""
        return {Kind.U: 2, Kind.A: -2}.get(self, 0)


@dataclass(frozen=True)
class Slice:
    kind: Kind
    position: int

    def __str__(self) -> str:
        return f"{self.kind.value} {self.position}"


def _check_slice(s: Slice, width: int, index: int) -> int:
    """Return the width after ``s`` or raise WidthError."""
    i = s.position
    if s.kind is Kind.U:
        if not 1 <= i <= width + 1:
            raise WidthError(f"cup at {i} needs 1 <= i <= {width + 1}", index)
    elif not 1 <= i < width:
        raise WidthError(
            f"{s.kind.value} at {i} needs 1 <= i < width={width}", index)
    return width + s.kind.delta()


@dataclass(frozen=True)
class SliceWord:
    """A validated annular diagram.

    ``crossing_order`` lists slice indices of the crossings; cube coordinate
    ``j`` refers to slice ``crossing_order[j]``.  It defaults to word order.
    """

    seam_width: int
    slices: tuple[Slice, ...] = ()
    crossing_order: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.seam_width < 0:
            raise WidthError("negative seam width", 0)
        object.__setattr__(self, "slices", tuple(self.slices))
        width = self.seam_width
        for idx, s in enumerate(self.slices):
            width = _check_slice(s, width, idx)
        if width != self.seam_width:
            raise WidthError(
                f"word ends at width {width}, expected {self.seam_width}",
                len(self.slices))
        natural = tuple(i for i, s in enumerate(self.slices) if s.kind.is_crossing)
        if self.crossing_order is None:
            object.__setattr__(self, "crossing_order", natural)
        else:
            order = tuple(self.crossing_order)
            if sorted(order) != list(natural):
                raise DiagramError("crossing_order must permute the crossing slices")
            object.__setattr__(self, "crossing_order", order)

    @property
    def crossing_count(self) -> int:
        return len(self.crossing_order)

    def widths(self) -> list[int]:
        """Width at every level; ``widths()[l]`` is the width after ``l`` slices."""
        out = [self.seam_width]
        for s in self.slices:
            out.append(out[-1] + s.kind.delta())
        return out

    def with_crossing_order(self, order: Sequence[int]) -> "SliceWord":
        return SliceWord(self.seam_width, self.slices, tuple(order))

    def __str__(self) -> str:
        return serialize(self)


# ---------------------------------------------------------------- text format

_LINE = re.compile(r"^(\S+)(?:[ \t]+(\S+))?[ \t]*$")


def parse_slice_word(text: str) -> SliceWord:
    """Parse the ``strands``/slice text format.

    >>> parse_slice_word("strands 2\\nP 1\\n").slices
    (Slice(kind=<Kind.P: 'P'>, position=1),)
    """
    header = None
    slices: list[Slice] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        col = len(line) - len(line.lstrip()) + 1
        m = _LINE.match(stripped)
        if m is None or m.group(2) is None:
            raise SliceSyntaxError(f"expected '<keyword> <int>', got {stripped!r}",
                                   lineno, col)
        word, arg = m.group(1), m.group(2)
        arg_col = col + stripped.index(arg, len(word))
        if not re.fullmatch(r"[+-]?\d+", arg):
            raise SliceSyntaxError(f"expected an integer, got {arg!r}", lineno, arg_col)
        value = int(arg)
        if header is None:
            if word != "strands":
                raise SliceSyntaxError("file must start with 'strands <int>'", lineno, col)
            if value < 0:
                raise WidthError("negative seam width", 0)
            header = value
            continue
        try:
            kind = Kind(word)
        except ValueError:
            raise SliceSyntaxError(f"unknown slice kind {word!r}", lineno, col) from None
        slices.append(Slice(kind, value))
    if header is None:
        raise SliceSyntaxError("missing 'strands' header", 1, 1)
    return SliceWord(header, tuple(slices))


def serialize(w: SliceWord) -> str:
    lines = [f"strands {w.seam_width}"]
    lines.extend(str(s) for s in w.slices)
    return "\n".join(lines) + "\n"


def word(seam_width: int, spec: str | Iterable[str] = "") -> SliceWord:
    """Shorthand constructor: ``word(2, "P1 P1")`` or ``word(0, ["U1", "A1"])``."""
    tokens = spec.split() if isinstance(spec, str) else list(spec)
    slices = []
    for tok in tokens:
        slices.append(Slice(Kind(tok[0]), int(tok[1:])))
    return SliceWord(seam_width, tuple(slices))


# ------------------------------------------------------------ transformations

def braid_to_sliceword(n: int, generators: Sequence[int]) -> SliceWord:
    """Annular closure of a braid on ``n`` strands.

    ``+j`` is sigma_j, ``-j`` its inverse.
    """
    slices = []
    for g in generators:
        if g == 0 or not abs(g) < n:
            raise DiagramError(f"braid generator {g} out of range for {n} strands")
        slices.append(Slice(Kind.P if g > 0 else Kind.N, abs(g)))
    return SliceWord(n, tuple(slices))


def parse_braid_spec(spec: str) -> SliceWord:
    """Parse the CLI braid form ``"<n>: <signed ints>"``."""
    head, sep, rest = spec.partition(":")
    if not sep:
        raise DiagramError(f"braid spec must look like '<n>: <ints>', got {spec!r}")
    try:
        n = int(head)
        gens = [int(t) for t in rest.replace(",", " ").split()]
    except ValueError as exc:
        raise DiagramError(f"bad braid spec {spec!r}: {exc}") from None
    return braid_to_sliceword(n, gens)


_MIRROR = {Kind.P: Kind.N, Kind.N: Kind.P, Kind.U: Kind.U, Kind.A: Kind.A}


def mirror(w: SliceWord) -> SliceWord:
    """Swap every crossing.  Keeps the crossing order."""
    slices = tuple(Slice(_MIRROR[s.kind], s.position) for s in w.slices)
    return SliceWord(w.seam_width, slices, w.crossing_order)


def seam_rotate(w: SliceWord) -> SliceWord:
    """Push the first slice across the seam to the end of the word.

    Crossing order is carried along: the rotated crossing keeps its place in
    the cube ordering.
    """
    if not w.slices:
        return w
    first = w.slices[0]
    new_slices = w.slices[1:] + (first,)
    new_seam = w.seam_width + first.kind.delta()
    last = len(w.slices) - 1
    order = tuple(last if i == 0 else i - 1 for i in w.crossing_order)
    return SliceWord(new_seam, new_slices, order)


def disjoint_union(w1: SliceWord, w2: SliceWord) -> SliceWord:
    """Place ``w1`` in the inner band and ``w2`` in the outer band."""
    k1 = w1.seam_width
    shifted = tuple(Slice(s.kind, s.position + k1) for s in w2.slices)
    return SliceWord(k1 + w2.seam_width, w1.slices + shifted)


def cable(w: SliceWord, n: int) -> SliceWord:
    """Blackboard-framed ``n``-cable.

    A crossing becomes the n*n block moving one band of n strands across
    another; cups and caps become n nested cups and caps.
    """
    if n < 1:
        raise DiagramError("cable multiplicity must be positive")
    if n == 1:
        return SliceWord(w.seam_width, w.slices)
    out: list[Slice] = []
    for s in w.slices:
        base = (s.position - 1) * n
        if s.kind.is_crossing:
            for a in range(n):
                for b in range(n):
                    out.append(Slice(s.kind, base + n - a + b))
        elif s.kind is Kind.U:
            out.extend(Slice(Kind.U, base + 1 + j) for j in range(n))
        else:
            out.extend(Slice(Kind.A, base + n - j) for j in range(n))
    return SliceWord(w.seam_width * n, tuple(out))


# --------------------------------------------------------------- arc geometry

@dataclass(frozen=True)
class Arc:
    """One edge of the (resolved or unresolved) diagram graph.

    ``shape`` is ``"V"`` (from bottom point ``a`` to top point ``b``),
    ``"U"`` (cup; both ends on the top level) or ``"A"`` (cap; both on the
    bottom level).  ``crossing`` is the cube coordinate of the crossing this
    arc passes through, if any.
    """

    slice_index: int
    shape: str
    a: int
    b: int
    crossing: int | None = None


class Geometry:
    """Node numbering for a slice word.

    Level ``l`` (0 <= l <= len(slices)) holds ``widths[l]`` points; the top
    level is identified with level 0 through the seam.
    """

    def __init__(self, w: SliceWord):
        self.word = w
        self.widths = w.widths()
        self.length = len(w.slices)
        offsets = [0]
        for l in range(max(self.length, 1)):
            offsets.append(offsets[-1] + self.widths[l])
        self.offsets = offsets
        self.node_count = offsets[-1] if self.length else w.seam_width
        self.cube_index = {s: j for j, s in enumerate(w.crossing_order)}

    def node(self, level: int, pos: int) -> int:
        """Node id of 1-based position ``pos`` on ``level``."""
        if level == self.length:
            level = 0
        return self.offsets[level] + pos - 1

    def level_of(self, node: int) -> int:
        for l in range(self.length or 1):
            if node < self.offsets[l + 1]:
                return l
        raise IndexError(node)

    def arcs(self, bits: Sequence[int] | None) -> list[Arc]:
        """Arcs of the resolution ``bits`` (or of the link itself if None)."""
        w = self.word
        if self.length == 0:
            return [Arc(0, "V", p, p) for p in range(w.seam_width)]
        out: list[Arc] = []
        for s_idx, s in enumerate(w.slices):
            lo, hi = s_idx, s_idx + 1
            width = self.widths[lo]
            i = s.position
            node = self.node
            sl = s_idx + 1
            if s.kind is Kind.U:
                for p in range(1, i):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p)))
                out.append(Arc(sl, "U", node(hi, i), node(hi, i + 1)))
                for p in range(i, width + 1):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p + 2)))
            elif s.kind is Kind.A:
                for p in range(1, i):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p)))
                out.append(Arc(sl, "A", node(lo, i), node(lo, i + 1)))
                for p in range(i + 2, width + 1):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p - 2)))
            else:
                c = self.cube_index[s_idx]
                for p in range(1, i):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p)))
                if bits is None:
                    out.append(Arc(sl, "V", node(lo, i), node(hi, i + 1), c))
                    out.append(Arc(sl, "V", node(lo, i + 1), node(hi, i), c))
                else:
                    turn = bits[c] ^ (s.kind is Kind.N)
                    if turn:
                        out.append(Arc(sl, "A", node(lo, i), node(lo, i + 1), c))
                        out.append(Arc(sl, "U", node(hi, i), node(hi, i + 1), c))
                    else:
                        out.append(Arc(sl, "V", node(lo, i), node(hi, i), c))
                        out.append(Arc(sl, "V", node(lo, i + 1), node(hi, i + 1), c))
                for p in range(i + 2, width + 1):
                    out.append(Arc(sl, "V", node(lo, p), node(hi, p)))
        return out


def trace_cycles(geom: Geometry, arcs: list[Arc]):
    """Split the 2-regular arc graph into oriented cycles.

    Returns a list of ``(arc_ids, directions, winding, upward)`` in order of
    the smallest arc id of each cycle.  ``directions[j]`` is +1 if arc
    ``arc_ids[j]`` was traversed from ``a`` to ``b``.  The start arc is
    traversed from ``a`` to ``b`` (upward for vertical arcs, rightward for
    cups and caps).  Winding counts signed passages through the seam level.
    ``upward`` tells whether the walk passes its smallest node going up.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for idx, arc in enumerate(arcs):
        ends.setdefault(arc.a, []).append((idx, 0))
        ends.setdefault(arc.b, []).append((idx, 1))
    top = geom.length
    seen = [False] * len(arcs)
    cycles = []

    def end_level(arc: Arc, which: int) -> int:
        # level of the arc end before seam identification
        if arc.shape == "V":
            return arc.slice_index if which else arc.slice_index - 1
        return arc.slice_index if arc.shape == "U" else arc.slice_index - 1

    for start in range(len(arcs)):
        if seen[start]:
            continue
        ids, dirs = [], []
        winding = 0
        lowest = None
        cur, entered = start, 0
        while not seen[cur]:
            seen[cur] = True
            arc = arcs[cur]
            ids.append(cur)
            dirs.append(1 if entered == 0 else -1)
            exit_end = 1 - entered
            node = arc.b if exit_end else arc.a
            arrive_level = end_level(arc, exit_end)
            if lowest is None or node < lowest[0]:
                # the arc just walked lies below the node iff it ends on its top
                below = arrive_level == arc.slice_index
                lowest = (node, below or top == 0)
            pair = ends[node]
            if top == 0:
                winding += 1
                nxt = pair[0] if pair[0] != (cur, exit_end) else pair[1]
            else:
                nxt = pair[0] if pair[0] != (cur, exit_end) else pair[1]
                leave_level = end_level(arcs[nxt[0]], nxt[1])
                if arrive_level == top and leave_level == 0:
                    winding += 1
                elif arrive_level == 0 and leave_level == top:
                    winding -= 1
            cur, entered = nxt
        cycles.append((ids, dirs, winding, lowest[1]))
    return cycles


@dataclass(frozen=True)
class LinkData:
    """Orientation-dependent data of the unresolved diagram."""

    components: int
    crossing_signs: tuple[int, ...]   # per cube coordinate, +1 or -1
    component_windings: tuple[int, ...]

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.crossing_signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.crossing_signs if s < 0)


def link_data(w: SliceWord) -> LinkData:
    """Trace link components, orient each, and compute crossing signs.

    Each component is oriented to pass upward through its lowest node
    (smallest level, then position).  A ``P`` crossing is positive when both
    strands run upward (the braid convention); reversing one strand flips
    the sign.
    """
    geom = Geometry(w)
    arcs = geom.arcs(None)
    cycles = trace_cycles(geom, arcs)
    direction = {}
    for ids, dirs, _, upward in cycles:
        flip = 1 if upward else -1
        for a, d in zip(ids, dirs):
            direction[a] = d * flip
    per_crossing: dict[int, list[int]] = {}
    for idx, arc in enumerate(arcs):
        if arc.crossing is not None:
            per_crossing.setdefault(arc.crossing, []).append(direction[idx])
    signs = []
    for j, s_idx in enumerate(w.crossing_order):
        d1, d2 = per_crossing[j]
        base = 1 if w.slices[s_idx].kind is Kind.P else -1
        signs.append(base * d1 * d2)
    return LinkData(len(cycles), tuple(signs),
                    tuple(c[2] if c[3] else -c[2] for c in cycles))
