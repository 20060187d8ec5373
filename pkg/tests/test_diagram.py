import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from annular_khovanov.cube import resolve
from annular_khovanov.diagram import (DiagramError, Kind, Slice, SliceSyntaxError, SliceWord,
                                      WidthError, braid_to_sliceword, cable, disjoint_union,
                                      link_data, mirror, parse_braid_spec, parse_slice_word,
                                      seam_rotate, serialize, word)
from conftest import slice_words


def circle_windings(w, v):
    return sorted(abs(c.winding) for c in resolve(w, v).circles)


# parsing ------------------------------------------------------------------

def test_parse_empty_word():
    w = parse_slice_word("strands 1\n")
    assert w == SliceWord(1, ())
    assert w.crossing_count == 0


def test_parse_single_crossing():
    w = parse_slice_word("strands 2\nP 1\n")
    assert w.seam_width == 2
    assert w.slices == (Slice(Kind.P, 1),)
    assert w.crossing_count == 1


def test_parse_unknot():
    w = parse_slice_word("strands 0\nU 1\nA 1\n")
    assert w.slices == (Slice(Kind.U, 1), Slice(Kind.A, 1))


def test_parse_skips_comments_and_blanks():
    text = "# a comment\n\nstrands 2\n  # indented comment\nP 1\n\nN 1\n"
    assert parse_slice_word(text) == word(2, "P1 N1")


@pytest.mark.parametrize("text, line, column", [
    ("strands 2\nX 1\n", 2, 1),
    ("strands 2\nP one\n", 2, 3),
    ("P 1\n", 1, 1),
    ("strands 2\nP\n", 2, 1),
    ("", 1, 1),
])
def test_syntax_errors_carry_location(text, line, column):
    with pytest.raises(SliceSyntaxError) as info:
        parse_slice_word(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_width_errors_name_the_slice():
    with pytest.raises(WidthError) as info:
        parse_slice_word("strands 2\nP 1\nP 2\n")
    assert info.value.slice_index == 1
    with pytest.raises(WidthError):
        parse_slice_word("strands 2\nA 1\n")  # ends at width 0
    with pytest.raises(WidthError):
        parse_slice_word("strands -1\n")
    with pytest.raises(WidthError):
        word(1, "U3")


@given(slice_words(max_crossings=6, max_seam=4))
def test_serialize_round_trip(w):
    assert parse_slice_word(serialize(w)) == w


@given(st.integers(0, 4), st.lists(st.tuples(st.sampled_from("PNUA"), st.integers(-1, 7)),
                                   max_size=10))
def test_validation_accepts_exactly_legal_profiles(seam, raw):
    """Random slice streams: accepted iff the width profile is legal, and
    every accepted word traces."""
    width, legal = seam, True
    for kind, pos in raw:
        if kind == "U":
            legal &= 1 <= pos <= width + 1
            width += 2
        else:
            legal &= 1 <= pos < width
            width += -2 if kind == "A" else 0
    legal &= width == seam
    slices = tuple(Slice(Kind(k), p) for k, p in raw)
    if legal:
        w = SliceWord(seam, slices)
        resolve(w, (0,) * w.crossing_count)
        link_data(w)
    else:
        with pytest.raises(WidthError):
            SliceWord(seam, slices)


def test_crossing_order_must_be_a_permutation():
    w = word(2, "P1 P1 P1")
    assert w.with_crossing_order([2, 0, 1]).crossing_order == (2, 0, 1)
    with pytest.raises(DiagramError):
        w.with_crossing_order([0, 0, 1])


# braids -------------------------------------------------------------------

def test_braid_to_sliceword_examples():
    assert braid_to_sliceword(2, [1]) == parse_slice_word("strands 2\nP 1\n")
    assert braid_to_sliceword(3, [1, -2]) == parse_slice_word("strands 3\nP 1\nN 2\n")
    assert braid_to_sliceword(2, []) == SliceWord(2)


@pytest.mark.parametrize("n, gens", [(2, [2]), (3, [0]), (3, [-3]), (1, [1])])
def test_braid_generator_out_of_range(n, gens):
    with pytest.raises(DiagramError):
        braid_to_sliceword(n, gens)


def test_parse_braid_spec():
    assert parse_braid_spec("3: 1 -2") == braid_to_sliceword(3, [1, -2])
    assert parse_braid_spec("2:") == SliceWord(2)
    with pytest.raises(DiagramError):
        parse_braid_spec("3 1 2")
    with pytest.raises(DiagramError):
        parse_braid_spec("x: 1")


# transformations ----------------------------------------------------------

def test_mirror_examples():
    assert mirror(braid_to_sliceword(2, [1])) == braid_to_sliceword(2, [-1])
    assert mirror(braid_to_sliceword(3, [1, -2])) == braid_to_sliceword(3, [-1, 2])
    flat = word(1, "U2 A2 U1 A1")
    assert mirror(flat) == flat


@given(slice_words(max_crossings=4))
def test_mirror_involution_and_complementary_resolutions(w):
    assert mirror(mirror(w)) == w
    m = mirror(w)
    c = w.crossing_count
    for v in list(itertools.product((0, 1), repeat=c))[:8]:
        vbar = tuple(1 - x for x in v)
        assert resolve(m, vbar) == resolve(w, v)


def test_seam_rotate_examples():
    assert seam_rotate(word(2, "P1")) == word(2, "P1")
    assert seam_rotate(word(0, "U1 A1")) == word(2, "A1 U1")
    r = seam_rotate(word(2, "P1 P1"))
    assert (r.seam_width, r.slices) == (2, word(2, "P1 P1").slices)
    # the rotated crossing keeps its cube coordinate
    assert r.crossing_order == (1, 0)
    assert seam_rotate(SliceWord(3)) == SliceWord(3)


@given(slice_words(max_crossings=3))
def test_full_seam_rotation_preserves_resolutions(w):
    """Rotating len(w) times returns to the same slices; at every vertex the
    circle data match under the carried-along crossing order."""
    r = w
    for _ in range(len(w.slices)):
        r = seam_rotate(r)
    assert r.seam_width == w.seam_width and r.slices == w.slices
    for bits in itertools.product((0, 1), repeat=w.crossing_count):
        assert circle_windings(r, bits) == circle_windings(w, bits)


@given(slice_words(max_crossings=3))
def test_single_seam_rotation_keeps_circle_types(w):
    r = seam_rotate(w)
    for bits in itertools.product((0, 1), repeat=w.crossing_count):
        assert circle_windings(r, bits) == circle_windings(w, bits)


def test_disjoint_union_examples():
    u1_k1 = disjoint_union(word(0, "U1 A1"), SliceWord(1))
    assert u1_k1.seam_width == 1
    assert circle_windings(u1_k1, ()) == [0, 1]
    k1_k1 = disjoint_union(SliceWord(1), SliceWord(1))
    assert k1_k1 == SliceWord(2)
    assert circle_windings(k1_k1, ()) == [1, 1]
    s = disjoint_union(braid_to_sliceword(2, [1]), word(0, "U1 A1"))
    assert s.crossing_count == 1
    for v in [(0,), (1,)]:
        assert circle_windings(s, v) == sorted(circle_windings(braid_to_sliceword(2, [1]), v) + [0])


@given(slice_words(max_crossings=2), slice_words(max_crossings=2))
def test_disjoint_union_resolutions_are_unions(w1, w2):
    u = disjoint_union(w1, w2)
    assert u.seam_width == w1.seam_width + w2.seam_width
    for v1 in itertools.product((0, 1), repeat=w1.crossing_count):
        for v2 in itertools.product((0, 1), repeat=w2.crossing_count):
            assert circle_windings(u, v1 + v2) == sorted(
                circle_windings(w1, v1) + circle_windings(w2, v2))


def test_cable_examples():
    assert cable(SliceWord(1), 2) == SliceWord(2)
    assert cable(braid_to_sliceword(2, [1]), 1) == braid_to_sliceword(2, [1])
    assert cable(SliceWord(1), 3) == SliceWord(3)
    with pytest.raises(DiagramError):
        cable(SliceWord(1), 0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("spec", ["U2 P1 P1 P1 A2", "P1 N1", "U1 A2"])
def test_cable_counts(spec, n):
    w = word(1 if spec != "P1 N1" else 2, spec)
    c = cable(w, n)
    assert c.seam_width == n * w.seam_width
    assert c.crossing_count == n * n * w.crossing_count
    assert link_data(c).components == n * link_data(w).components


def test_link_data_components_and_signs():
    assert link_data(braid_to_sliceword(2, [1])).components == 1
    assert link_data(braid_to_sliceword(2, [1, 1])).components == 2
    ld = link_data(braid_to_sliceword(3, [1, -2, 1]))
    assert (ld.n_plus, ld.n_minus) == (2, 1)
    # antiparallel strands: a P slice gives a negative crossing
    ld = link_data(word(0, "U1 U3 P2 N2 A3 A1"))
    assert ld.components == 2
    assert (ld.n_plus, ld.n_minus) == (1, 1)
