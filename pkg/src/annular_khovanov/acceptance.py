"""The acceptance suite: ten criteria, each a function returning a Criterion.

Shared by ``annular-khovanov selftest`` and ``tests/test_acceptance.py``.
Every check is exact; the time limits are part of the verdict except for
the soft performance floor (criterion 10), which only reports.
"""

from __future__ import annotations

import random
import resource
import time
from dataclasses import dataclass
from math import comb
from typing import Callable, Mapping, Sequence

from . import corpus as corpus_mod
from . import oracle
from .apps import (akh, braid_certificate, colored_khr, kh, tables_agree_up_to_shift, tkh,
                   unlink_certificate)
from .diagram import SliceWord, braid_to_sliceword, link_data, mirror, word
from .fields import QQ as FIELD_QQ
from .homology import QQ, ZZ
from .spectral import (check_anticommutation, cube_filtration, khovanov_cube, pages,
                       winding_filtration)
from .tqft import ANNULAR, PLAIN, assemble, edge_sign

SignRule = Callable[[Sequence[int], int], int]

# Frozen before the main pipeline existed, from the dense oracle
# (oracle.homology(..., "annular", "Z")); keys are (h, q, k).
FROZEN_TREFOIL = {(0, 1, 0): (1, ()), (0, 3, 0): (1, ()), (2, 5, 0): (1, ()),
                  (3, 7, 0): (0, (2,)), (3, 9, 0): (1, ())}
FROZEN_HOPF = {(0, 0, 0): (1, ()), (0, 2, 0): (1, ()), (2, 4, 0): (1, ()), (2, 6, 0): (1, ())}
FROZEN_UNKNOT = {(0, -1, 0): (1, ()), (0, 1, 0): (1, ())}

# 10 crossings, seam width 2, one trivial cup/cap pair widening to 4 strands
PERFORMANCE_WORD = "U3 P2 N1 P3 P2 N1 P3 N2 P1 N3 P2 A3"


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float
    soft: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d}. {self.title} "
                f"({self.seconds:.2f}s / {self.limit:g}s) {self.detail}")


def _timed(number: int, title: str, limit: float, body: Callable[[], tuple[bool, str]],
           soft: bool = False) -> Criterion:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # a crash is a failure, reported with its message
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    return Criterion(number, title, ok and dt <= limit, detail, dt, limit, soft)


def _as_plain(group) -> dict:
    return {key: (e.free, tuple(e.torsion)) for key, e in group.entries.items()}


# ------------------------------------------------------------------ criteria

def criterion_1() -> Criterion:
    def body():
        bad = []
        for k in range(4):
            for l in range(4):
                got = akh(corpus_mod.unlink_core(k, l), QQ).dims_by_k()
                for i in range(-l - 2, l + 3):
                    want = 2 ** k * comb(l, (l + i) // 2) if abs(i) <= l and (l - i) % 2 == 0 else 0
                    if got.get(i, 0) != want:
                        bad.append((k, l, i, got.get(i, 0), want))
        return not bad, "16 crossingless words" if not bad else f"mismatches {bad[:5]}"
    return _timed(1, "crossingless dimension formula", 1.0, body)


def square_zero_failures(w: SliceWord, sign: SignRule = edge_sign) -> list[str]:
    out = []
    for mode in (ANNULAR, PLAIN):
        cx = assemble(w, mode, sign=sign)
        for key, blk in cx.blocks.items():
            for h in blk.bases:
                if not (blk.matrix(h + 1) @ blk.matrix(h)).is_zero():
                    out.append(f"{mode} block {key} h={h}")
    return out


def criterion_2(sign: SignRule = edge_sign, count: int = 200, seed: int = 20240601) -> Criterion:
    def body():
        rng = random.Random(seed)
        failures = []
        for _ in range(count):
            w = corpus_mod.random_word(rng, max_crossings=6, max_seam=4)
            bad = square_zero_failures(w, sign)
            if bad:
                failures.append((str(w).replace("\n", " "), bad[0]))
        if failures:
            return False, f"D^2 != 0 on {len(failures)} of {count} words, e.g. {failures[0]}"
        return True, f"{count} random words, both differentials"
    return _timed(2, "D^2 = 0 and D_0^2 = 0", 30.0, body)


def criterion_3(reorder_words: int = 10, seed: int = 7) -> Criterion:
    def body():
        pairs = corpus_mod.reidemeister_pairs()
        bad = []
        for name, a, b in pairs:
            ga, gb = akh(a, ZZ), akh(b, ZZ)
            if link_data(a).components == 1:
                same = ga.entries == gb.entries
            else:
                same = tables_agree_up_to_shift(ga, gb)
            if not same:
                bad.append(name)
        rng = random.Random(seed)
        words = [w for w in corpus_mod.named().values() if w.crossing_count >= 2][:reorder_words]
        for w in words:
            order = list(w.crossing_order)
            rng.shuffle(order)
            if akh(w, ZZ).entries != akh(w.with_crossing_order(order), ZZ).entries:
                bad.append(f"reorder {w}")
        detail = f"{len(pairs)} move pairs, {len(words)} reorderings"
        return not bad, detail if not bad else f"{detail}; failed: {bad}"
    return _timed(3, "diagram invariance", 60.0, body)


NON_BRAIDS = {"turnback": word(2, "A1 U1"),
              "sigma1^2 then turnback": word(2, "P1 P1 A1 U1"),
              "B3 tangle with a turnback": word(3, "P1 N2 A2 U1")}


def criterion_4(max_len: int = 4) -> Criterion:
    def body():
        bad = []
        n_words = 0
        for n in (2, 3):
            for gens in corpus_mod.braid_words(n, max_len):
                n_words += 1
                if tkh(braid_to_sliceword(n, gens), QQ).rank() != 1:
                    bad.append((n, gens))
        for name, w in NON_BRAIDS.items():
            if braid_certificate(w).passed:
                bad.append(name)
        detail = f"{n_words} braid words, {len(NON_BRAIDS)} non-braids"
        return not bad, detail if not bad else f"{detail}; failed: {bad[:5]}"
    return _timed(4, "braid detection", 120.0, body)


def criterion_5(words: Mapping[str, SliceWord] | None = None) -> Criterion:
    def body():
        ws = dict(words or corpus_mod.named())
        bad = []
        for name, w in ws.items():
            if w.seam_width != 0:
                continue
            a, b = akh(w, ZZ), kh(w, ZZ)
            if any(k != 0 for (_h, _q, k) in a.entries) or a.entries != b.entries:
                bad.append(name)
        named = corpus_mod.named()
        for name in ("unknot", "unknot_1x"):
            if _as_plain(akh(named[name], ZZ)) != FROZEN_UNKNOT or akh(named[name], QQ).rank() != 2:
                bad.append(name)
        if akh(named["hopf"], QQ).rank() != 4 or _as_plain(akh(named["hopf"], ZZ)) != FROZEN_HOPF:
            bad.append("hopf")
        tref = akh(named["trefoil"], ZZ)
        if tref.rank() != 4 or tref.torsion() != [2] or _as_plain(tref) != FROZEN_TREFOIL:
            bad.append("trefoil")
        return not bad, "unknot 2, Hopf 4, trefoil 4 + Z/2" if not bad else f"failed: {bad}"
    return _timed(5, "in-ball reduction", 10.0, body)


def _by_h(dims: Mapping[tuple, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for key, n in dims.items():
        if n:
            out[key[0]] = out.get(key[0], 0) + n
    return dict(sorted(out.items()))


def criterion_6(words: Mapping[str, SliceWord] | None = None) -> Criterion:
    def body():
        ws = dict(words or corpus_mod.named())
        bad = []
        for name, w in ws.items():
            res = pages(winding_filtration(w))
            a, b = akh(w, QQ).dims(), kh(w, QQ).dims()
            m = w.seam_width
            e1 = {}
            for (h, _q, k), n in a.items():
                e1[(h, (k + m) // 2)] = e1.get((h, (k + m) // 2), 0) + n
            if {k: v for k, v in res.pages[0].dims.items() if v} != e1:
                bad.append(f"{name}: E1 != AKh")
            if res.infinity.by_h() != _by_h(b):
                bad.append(f"{name}: E_inf != Kh")
            if sum(b.values()) > sum(a.values()):
                bad.append(f"{name}: rank bound")
            if res.collapse_at > 2:
                bad.append(f"{name}: collapse at {res.collapse_at}")
        return not bad, f"{len(ws)} corpus words" if not bad else f"failed: {bad}"
    return _timed(6, "winding filtration spectral sequence", 60.0, body)


def criterion_7(words: Mapping[str, SliceWord] | None = None, max_crossings: int = 5) -> Criterion:
    def body():
        ws = {k: w for k, w in dict(words or corpus_mod.named()).items()
              if w.crossing_count <= max_crossings}
        bad = []
        for name, w in ws.items():
            for convention, target in (("khovanov", w), ("eta", mirror(w))):
                cube = khovanov_cube(w, ANNULAR, convention)
                if check_anticommutation(cube):
                    bad.append(f"{name}/{convention}: anticommutation")
                    continue
                res = pages(cube_filtration(cube, FIELD_QQ, check=False))
                e2 = res.pages[1] if len(res.pages) > 1 else res.infinity
                if e2.by_h() != _by_h(akh(target, QQ).dims()):
                    bad.append(f"{name}/{convention}: E2 != AKh")
        return not bad, f"{len(ws)} words x 2 sign conventions" if not bad else f"failed: {bad}"
    return _timed(7, "cube engine anticommutation and E2", 60.0, body)


def criterion_8() -> Criterion:
    def body():
        bad = []
        if not unlink_certificate(word(0, "U1 A1 U1 A1"), 2).passed:
            bad.append("split U2 should pass")
        if unlink_certificate(braid_to_sliceword(2, [1]), 1).passed:
            bad.append("sigma1 closure should fail")
        if unlink_certificate(SliceWord(1), 1).passed:
            bad.append("core circle should fail")
        for n in (1, 2, 3):
            if colored_khr(SliceWord(1), n).rank() != 1:
                bad.append(f"colored unknot n={n}")
        return not bad, "3 unlink verdicts, colored unknot n<=3" if not bad else f"failed: {bad}"
    return _timed(8, "certificates", 30.0, body)


ORACLE_COEFFS = ("Z", "Q", "F2", "F3")


def oracle_mismatches(w: SliceWord, coeffs: Sequence[str] = ORACLE_COEFFS) -> list[str]:
    out = []
    for mode in (ANNULAR, PLAIN):
        for coeff in coeffs:
            ref = oracle.homology(w, mode, coeff)
            got = akh(w, coeff) if mode == ANNULAR else kh(w, coeff)
            if _as_plain(got) != ref:
                out.append(f"{mode}/{coeff}")
    return out


def criterion_9(words: Mapping[str, SliceWord] | None = None, random_count: int = 20,
                seed: int = 99) -> Criterion:
    def body():
        ws = [w for w in dict(words or corpus_mod.named()).values() if w.crossing_count <= 3]
        rng = random.Random(seed)
        ws += [corpus_mod.random_word(rng, max_crossings=3, max_seam=3, max_width=5)
               for _ in range(random_count)]
        bad = []
        for w in ws:
            mism = oracle_mismatches(w)
            if mism:
                bad.append((str(w).replace("\n", " "), mism))
        return not bad, f"{len(ws)} words x 2 modes x {len(ORACLE_COEFFS)} rings" if not bad \
            else f"failed: {bad[:3]}"
    return _timed(9, "oracle equivalence", 30.0, body)


def criterion_10(workers: int = 1) -> Criterion:
    def body():
        w = word(2, PERFORMANCE_WORD)
        group = akh(w, ZZ, workers=workers)
        rss_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
        return True, (f"c={w.crossing_count}, rank {group.rank()}, torsion {group.torsion()}, "
                      f"peak RSS {rss_mb:.0f} MB")
    return _timed(10, "performance floor (soft)", 60.0, body, soft=True)


def run_all(words: Mapping[str, SliceWord] | None = None, *, sign: SignRule = edge_sign,
            workers: int = 1, only: Sequence[int] | None = None) -> list[Criterion]:
    """Run the criteria in order (``only`` restricts to some numbers)."""
    jobs: dict[int, Callable[[], Criterion]] = {
        1: criterion_1,
        2: lambda: criterion_2(sign),
        3: criterion_3,
        4: criterion_4,
        5: lambda: criterion_5(words),
        6: lambda: criterion_6(words),
        7: lambda: criterion_7(words),
        8: criterion_8,
        9: lambda: criterion_9(words),
        10: lambda: criterion_10(workers),
    }
    return [jobs[n]() for n in sorted(jobs) if only is None or n in only]
