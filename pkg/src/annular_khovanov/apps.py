"""Derived invariants and certificates on top of the homology core."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .diagram import DiagramError, Kind, Slice, SliceWord, cable, link_data, mirror
from .homology import QQ, ZZ, Coefficients, GradedGroup, homology
from .tqft import ANNULAR, PLAIN, assemble


def akh(w: SliceWord, coeff: Coefficients | str = ZZ, *, workers: int = 1) -> GradedGroup:
    """Annular Khovanov homology."""
    return homology(assemble(w, ANNULAR), coeff, workers=workers)


def kh(w: SliceWord, coeff: Coefficients | str = ZZ, *, workers: int = 1) -> GradedGroup:
    """Khovanov homology of the diagram viewed in S^3 (k reported as 0)."""
    return homology(assemble(w, PLAIN), coeff, workers=workers)


def tkh(w: SliceWord, coeff: Coefficients | str = QQ) -> GradedGroup:
    """Top winding summand AKh(w, seam_width), i.e. tangle Khovanov homology.

    Only generators at k = seam_width are assembled.
    """
    m = w.seam_width
    cx = assemble(w, ANNULAR, k_filter=lambda k: k == m)
    return homology(cx, coeff)


@dataclass
class Verdict:
    kind: str  # "BraidCertificate" or "UnlinkCertificate"
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "passed": self.passed, "witness": self.witness}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())


def braid_certificate(w: SliceWord) -> Verdict:
    """Passes iff TKh over Q is one-dimensional (then the tangle is a braid)."""
    table = tkh(w, QQ)
    return Verdict("BraidCertificate", table.rank() == 1, table.to_json_obj())


def kh_unlink_dims(components: int) -> dict[tuple[int, int], int]:
    """(h, q) -> rank of Kh(U_n): all at h = 0, binomial in q."""
    n = components
    return {(0, n - 2 * j): comb(n, j) for j in range(n + 1)}


def unlink_certificate(w: SliceWord, components: int) -> Verdict:
    """Passes iff AKh is supported at k = 0 and agrees there with Kh(U_n).

    A pass means the diagram is an unlink in the thickened annulus; a
    failure says nothing about the link type in S^3.
    """
    traced = link_data(w).components
    if components != traced:
        raise DiagramError(f"declared {components} components, diagram has {traced}")
    group = akh(w, ZZ)
    at_zero = all(k == 0 for (_h, _q, k) in group.entries)
    no_torsion = not group.torsion()
    dims = {(h, q): e.free for (h, q, k), e in group.entries.items() if k == 0 and e.free}
    passed = at_zero and no_torsion and dims == kh_unlink_dims(components)
    return Verdict("UnlinkCertificate", passed, group.to_json_obj())


def colored_khr(tangle_word: SliceWord, n: int) -> GradedGroup:
    """Colored Khovanov homology of a 1-1 tangle: TKh of its n-cable.

    Blackboard framing of the input word; gradings are not renormalized.
    """
    if tangle_word.seam_width != 1:
        raise DiagramError("colored_khr needs a word with seam_width 1")
    return tkh(cable(tangle_word, n), QQ)


@dataclass
class DualityReport:
    symmetric: bool
    original: dict
    mirrored: dict
    mismatches: list[tuple[int, int, int]]


def mirror_duality_report(w: SliceWord) -> DualityReport:
    """Compare dim AKh(mirror)(h, q, k) with dim AKh(w)(-h, -q, -k) over Q."""
    a = akh(w, QQ).dims()
    b = akh(mirror(w), QQ).dims()
    keys = set(b) | {(-h, -q, -k) for (h, q, k) in a}
    bad = sorted(key for key in keys if b.get(key, 0) != a.get(tuple(-x for x in key), 0))
    return DualityReport(not bad, a, b, bad)


def crossing_switch(w: SliceWord, j: int) -> SliceWord:
    """Switch the crossing at cube coordinate ``j``."""
    s_idx = w.crossing_order[j]
    s = w.slices[s_idx]
    flipped = Slice(Kind.N if s.kind is Kind.P else Kind.P, s.position)
    slices = w.slices[:s_idx] + (flipped,) + w.slices[s_idx + 1:]
    return SliceWord(w.seam_width, slices, w.crossing_order)


def tables_agree_up_to_shift(a: GradedGroup, b: GradedGroup) -> bool:
    """Equal after one global (h, q) translation; k must match exactly.

    Different orientations of a multi-component link shift h and q
    uniformly; this is the only freedom allowed.
    """
    if set(a.entries) == set(b.entries) and a.entries == b.entries:
        return True
    if not a.entries or not b.entries:
        return a.entries == b.entries
    ha, qa, _ = min(a.entries)
    hb, qb, _ = min(b.entries)
    return b.shifted(ha - hb, qa - qb).entries == a.entries
