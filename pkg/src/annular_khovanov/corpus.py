"""Named diagrams, Reidemeister-move pairs and random words."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .diagram import (Kind, Slice, SliceWord, braid_to_sliceword, disjoint_union,
                      seam_rotate, word)


def ball_closure(n: int, generators: Sequence[int]) -> SliceWord:
    """Plane closure of a braid, drawn inside a disk (seam_width 0).

    n nested cups open 2n strands; the braid acts on the left n and
    n nested caps close everything up.
    """
    slices = [Slice(Kind.U, 1 + j) for j in range(n)]
    for g in generators:
        slices.append(Slice(Kind.P if g > 0 else Kind.N, abs(g)))
    slices += [Slice(Kind.A, n - j) for j in range(n)]
    return SliceWord(0, tuple(slices))


def unlink_core(k: int, l: int) -> SliceWord:
    """k trivial circles next to l parallel core circles, no crossings."""
    w = SliceWord(l)
    for _ in range(k):
        w = disjoint_union(word(0, "U1 A1"), w)
    return w


def kink(w: SliceWord, at: int, strand: int, kind: Kind, side: str) -> SliceWord:
    """Insert a Reidemeister I curl on ``strand`` just before slice ``at``."""
    i = strand
    x = Slice(kind, i) if side == "right" else Slice(kind, i + 1)
    if side == "right":
        curl = [Slice(Kind.U, i + 1), x, Slice(Kind.A, i + 1)]
    else:
        curl = [Slice(Kind.U, i), x, Slice(Kind.A, i)]
    s = list(w.slices)
    return SliceWord(w.seam_width, tuple(s[:at] + curl + s[at:]))


def insert(w: SliceWord, at: int, spec: str) -> SliceWord:
    """Insert the slices spelled by ``spec`` (e.g. "P1 N1") before slice ``at``."""
    s = list(w.slices)
    extra = [Slice(Kind(t[0]), int(t[1:])) for t in spec.split()]
    return SliceWord(w.seam_width, tuple(s[:at] + extra + s[at:]))


def named() -> dict[str, SliceWord]:
    b = braid_to_sliceword
    return {
        "core": SliceWord(1),
        "core2": SliceWord(2),
        "unknot": word(0, "U1 A1"),
        "split_unlink2": word(0, "U1 A1 U1 A1"),
        "unknot_core": disjoint_union(word(0, "U1 A1"), SliceWord(1)),
        "sigma1": b(2, [1]),
        "sigma1_inv": b(2, [-1]),
        "sigma1_sq": b(2, [1, 1]),
        "sigma1_cubed": b(2, [1, 1, 1]),
        "b3_12": b(3, [1, 2]),
        "b3_1m2": b(3, [1, -2]),
        "b3_121": b(3, [1, 2, 1]),
        "fig8_closure": b(3, [1, -2, 1, -2]),
        "unknot_1x": ball_closure(2, [1]),
        "hopf": ball_closure(2, [1, 1]),
        "trefoil": ball_closure(2, [1, 1, 1]),
        "trefoil_mirror": ball_closure(2, [-1, -1, -1]),
        "figure8": ball_closure(3, [1, -2, 1, -2]),
        "kinked_core": kink(SliceWord(1), 0, 1, Kind.P, "right"),
        "turnback": word(2, "A1 U1"),
        "twist_turnback": word(2, "P1 P1 A1 U1"),
        "b3_turnback": word(3, "P1 N2 A2 U1"),
        "trefoil_tangle": word(1, "U2 P1 P1 P1 A2"),
    }


def corpus(max_crossings: int | None = None) -> dict[str, SliceWord]:
    out = named()
    if max_crossings is not None:
        out = {k: v for k, v in out.items() if v.crossing_count <= max_crossings}
    return out


def reidemeister_pairs() -> list[tuple[str, SliceWord, SliceWord]]:
    """Pairs of diagrams of the same annular link."""
    b = braid_to_sliceword
    core, s1 = SliceWord(1), b(2, [1])
    tref = word(1, "U2 P1 P1 P1 A2")
    pairs = []
    for kind, side in itertools.product((Kind.P, Kind.N), ("left", "right")):
        pairs.append((f"R1 {kind.value}-{side} on core", core, kink(core, 0, 1, kind, side)))
    pairs.append(("R1 on sigma1 strand 2", s1, kink(s1, 1, 2, Kind.N, "right")))
    pairs.append(("R1 on sigma1 strand 1", s1, kink(s1, 0, 1, Kind.P, "left")))
    pairs.append(("R1 inside trefoil tangle", tref, kink(tref, 2, 1, Kind.N, "left")))
    pairs.append(("R2 braid", s1, insert(s1, 1, "P1 N1")))
    pairs.append(("R2 braid inverse order", b(3, [1, 2]), b(3, [1, -2, 2, 2])))
    pairs.append(("R2 antiparallel", word(0, "U1 A1 U1 A1"), word(0, "U1 U3 P2 N2 A3 A1")))
    pairs.append(("R2 core with trivial circle", disjoint_union(word(0, "U1 A1"), core),
                  word(1, "U2 P1 N1 A2")))
    pairs.append(("R3 positive", b(3, [1, 2, 1]), b(3, [2, 1, 2])))
    pairs.append(("R3 negative", b(3, [-1, -2, -1]), b(3, [-2, -1, -2])))
    pairs.append(("R3 mixed", b(3, [1, 2, -1]), b(3, [-2, 1, 2])))
    pairs.append(("R3 in context", b(3, [1, 2, 1, -2]), b(3, [2, 1, 2, -2])))
    pairs.append(("snake on core", core, word(1, "U2 A1")))
    pairs.append(("snake left on core", core, word(1, "U1 A2")))
    pairs.append(("braid conjugation", b(3, [1, -2]), b(3, [-2, 1])))
    for name, w in [("trefoil tangle", tref), ("fig8 closure", b(3, [1, -2, 1, -2])),
                    ("turnback twist", word(2, "P1 P1 A1 U1")),
                    ("kinked core", kink(core, 0, 1, Kind.P, "right")),
                    ("in-ball trefoil", ball_closure(2, [1, 1, 1]))]:
        pairs.append((f"seam rotation of {name}", w, seam_rotate(w)))
    pairs.append(("double seam rotation", b(3, [1, 2, -1]), seam_rotate(seam_rotate(b(3, [1, 2, -1])))))
    return pairs


def braid_words(n: int, max_len: int) -> Iterator[tuple[int, ...]]:
    gens = [g for j in range(1, n) for g in (j, -j)]
    for length in range(max_len + 1):
        yield from itertools.product(gens, repeat=length)


def random_word(rng: random.Random, max_crossings: int = 6, max_seam: int = 4,
                max_width: int = 6, steps: int = 12) -> SliceWord:
    """A random valid slice word."""
    seam = rng.randint(0, max_seam)
    width = seam
    slices: list[Slice] = []
    crossings = 0
    for _ in range(rng.randint(0, steps)):
        options = []
        if width >= 2 and crossings < max_crossings:
            options += ["P", "N"] * 2
        if width + 2 <= max_width:
            options.append("U")
        if width >= 2:
            options.append("A")
        if not options:
            break
        kind = rng.choice(options)
        if kind in "PN":
            slices.append(Slice(Kind(kind), rng.randint(1, width - 1)))
            crossings += 1
        elif kind == "U":
            slices.append(Slice(Kind.U, rng.randint(1, width + 1)))
            width += 2
        else:
            slices.append(Slice(Kind.A, rng.randint(1, width - 1)))
            width -= 2
    while width > seam:
        slices.append(Slice(Kind.A, rng.randint(1, width - 1)))
        width -= 2
    while width < seam:
        slices.append(Slice(Kind.U, rng.randint(1, width + 1)))
        width += 2
    return SliceWord(seam, tuple(slices))
