import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from annular_khovanov.apps import akh, kh
from annular_khovanov.corpus import named
from annular_khovanov.diagram import SliceWord, braid_to_sliceword, mirror, word
from annular_khovanov.fields import QQ, Field
from annular_khovanov.homology import QQ as COEFF_QQ
from annular_khovanov.spectral import (AnticommutationError, CubeData, FilteredComplex,
                                       check_anticommutation, cube_filtration, fvu_sign,
                                       khovanov_cube, pages, random_filtered_complex,
                                       winding_filtration)
from annular_khovanov.tqft import ANNULAR, PLAIN
from conftest import slice_words


def total_homology(fc):
    """Dimension of H of the total complex per degree, by dense linear algebra."""
    from annular_khovanov.fields import rank
    n = len(fc.degrees)
    degs = sorted(set(fc.degrees))
    out = {}
    for h in degs:
        src = [j for j in range(n) if fc.degrees[j] == h]
        prev = [j for j in range(n) if fc.degrees[j] == h - 1]
        nxt = [j for j in range(n) if fc.degrees[j] == h + 1]

        def mat(cols, rows):
            return [[fc.d.get(c, {}).get(r, 0) for c in cols] for r in rows]

        r_out = rank(mat(src, nxt), fc.field) if src and nxt else 0
        r_in = rank(mat(prev, src), fc.field) if prev and src else 0
        if len(src) - r_out - r_in:
            out[h] = len(src) - r_out - r_in
    return out


def test_zero_differential_collapses_at_one():
    fc = FilteredComplex([0, 0, 1], [0, 1, 2], {})
    res = pages(fc)
    assert res.collapse_at == 1
    assert res.pages[0].dims == res.infinity.dims == {(0, 0): 1, (0, 1): 1, (1, 2): 1}


def test_two_step_complex():
    # Q -> Q by the identity, dropping filtration by one
    fc = FilteredComplex([0, 1], [1, 0], {0: {1: 1}})
    res = pages(fc)
    assert res.pages[0].dims == {(0, 1): 1, (1, 0): 1}
    assert res.infinity.dims == {}
    assert res.collapse_at == 2


def test_filtered_complex_validation():
    with pytest.raises(ValueError):
        FilteredComplex([0, 1], [0, 1], {0: {1: 1}})  # raises the filtration
    with pytest.raises(ValueError):
        FilteredComplex([0, 0], [0, 0], {0: {1: 1}})  # does not raise h


@given(st.integers(0, 10 ** 6), st.integers(2, 40), st.sampled_from([0, 2, 3]))
def test_random_filtered_complexes(seed, size, p):
    fc = random_filtered_complex(random.Random(seed), size, Field(p), span=3)
    assert fc.square_is_zero()
    res = pages(fc)
    assert res.infinity.by_h() == total_homology(fc)
    assert res.homology == total_homology(fc)
    tables = res.pages + [res.infinity]
    for a, b in zip(tables, tables[1:]):
        for key, n in b.dims.items():
            assert n <= a.dims.get(key, 0)


def test_winding_core():
    res = pages(winding_filtration(SliceWord(1)))
    assert res.collapse_at == 1
    assert res.pages[0].dims == {(0, 0): 1, (0, 1): 1}


def test_winding_sigma1():
    res = pages(winding_filtration(braid_to_sliceword(2, [1])))
    assert res.pages[0].total() == 4
    assert res.infinity.total() == 2
    assert res.collapse_at == 2


def test_in_ball_word_has_one_filtration_level():
    res = pages(winding_filtration(named()["trefoil"]))
    assert {f for (_h, f) in res.pages[0].dims} == {0}
    assert res.collapse_at == 1
    assert res.pages[0].total() == kh(named()["trefoil"], COEFF_QQ).rank()


@given(slice_words(max_crossings=4, max_seam=4))
def test_winding_sequence_properties(w):
    res = pages(winding_filtration(w))
    a, b = akh(w, COEFF_QQ), kh(w, COEFF_QQ)
    assert res.pages[0].total() == a.rank()
    assert res.infinity.total() == b.rank()
    for h, n in res.infinity.by_h().items():
        assert n <= res.pages[0].by_h().get(h, 0)
    # reported rather than assumed in general; it holds on every sample so far
    assert res.collapse_at <= 2


def test_winding_over_f2():
    w = named()["trefoil_tangle"]
    res = pages(winding_filtration(w, Field(2)))
    assert res.infinity.total() == kh(w, "F2").rank()


# cube filtrations ---------------------------------------------------------

def test_cube_sigma1_e2_is_akh():
    res = pages(cube_filtration(khovanov_cube(braid_to_sliceword(2, [1]))))
    e2 = res.pages[1] if len(res.pages) > 1 else res.infinity
    assert e2.total() == 4


def test_single_vertex_cube():
    cube = CubeData(0, {(): [(0, 0), (1, 0)]}, {((), ()): {(1, 0): 1}})
    res = pages(cube_filtration(cube))
    assert res.collapse_at == 1
    assert res.pages[0].dims == res.infinity.dims == {}


def identity_square(flip=False):
    """c = 2 cube with one-dimensional vertices and identity edges, signed by
    the eta rule (downward edges v -> v - e_i)."""
    verts = list(itertools.product((0, 1), repeat=2))
    spaces = {v: [(0, 0)] for v in verts}
    maps = {}
    for v in verts:
        for i in range(2):
            if v[i]:
                u = v[:i] + (0,) + v[i + 1:]
                sign = -1 if sum(v[i:]) % 2 else 1
                maps[(v, u)] = {(0, 0): sign}
    if flip:
        maps[((1, 1), (0, 1))] = {(0, 0): -maps[((1, 1), (0, 1))][(0, 0)]}
    return CubeData(2, spaces, maps, downward=True)


def test_identity_square_matches_total_homology():
    cube = identity_square()
    assert check_anticommutation(cube) == []
    fc = cube_filtration(cube)
    res = pages(fc)
    e2 = res.pages[1] if len(res.pages) > 1 else res.infinity
    assert e2.by_h() == total_homology(fc)


def test_flipped_edge_is_reported():
    cube = identity_square(flip=True)
    assert check_anticommutation(cube) == [((1, 1), (0, 0))]
    with pytest.raises(AnticommutationError):
        cube_filtration(cube)


def test_one_crossing_cube_vacuous():
    assert check_anticommutation(khovanov_cube(braid_to_sliceword(2, [1]))) == []


@pytest.mark.parametrize("name", sorted(n for n, w in named().items() if w.crossing_count <= 5))
@pytest.mark.parametrize("mode", [ANNULAR, PLAIN])
def test_corpus_cubes_anticommute(name, mode):
    w = named()[name]
    for convention in ("khovanov", "eta"):
        assert check_anticommutation(khovanov_cube(w, mode, convention)) == []


@pytest.mark.parametrize("name", ["sigma1_sq", "trefoil", "fig8_closure", "trefoil_tangle"])
def test_eta_cube_computes_the_mirror(name):
    w = named()[name]
    res = pages(cube_filtration(khovanov_cube(w, ANNULAR, "eta")))
    e2 = res.pages[1] if len(res.pages) > 1 else res.infinity
    want = {}
    for (h, _q, _k), n in akh(mirror(w), COEFF_QQ).dims().items():
        want[h] = want.get(h, 0) + n
    assert e2.by_h() == want


@pytest.mark.parametrize("name", ["b3_121", "trefoil", "fig8_closure"])
def test_fvu_signs_keep_anticommutation(name):
    """The vertex-only sign (-1)^|v| on every edge (the consistent reading of
    the mixed-dimension sign rule) conjugates the cube and keeps every face
    anticommuting."""
    cube = khovanov_cube(named()[name], ANNULAR, "eta")
    assert check_anticommutation(cube.signed(fvu_sign)) == []
    assert fvu_sign((1, 1, 0), (0, 0, 0)) == -1  # 1 + 2
    assert fvu_sign((1, 0), (0, 0)) == -1


def test_page_report_json():
    res = pages(winding_filtration(braid_to_sliceword(2, [1])))
    obj = json.loads(res.to_json())
    assert obj["collapse_at"] == 2
    assert [pg["r"] for pg in obj["pages"]] == [1, 2]
    assert set(obj["pages"][0]["dims"][0]) == {"h", "f", "dim"}


@given(st.integers(0, 10 ** 6), st.integers(2, 30), st.sampled_from([0, 2, 3]))
def test_reduction_preserves_every_page(seed, size, p):
    fc = random_filtered_complex(random.Random(seed), size, Field(p), span=3)
    a, b = pages(fc), pages(fc, reduce=False)
    assert [t.dims for t in a.pages] == [t.dims for t in b.pages]
    assert a.infinity.dims == b.infinity.dims
    assert a.collapse_at == b.collapse_at and a.homology == b.homology
