import random

import numpy as np
import pytest

from coopaint import (
    InterpreterGenome,
    RepresentationGenome,
    SetupKind,
    render_chunks,
    render_circles,
    render_pair,
    render_polygons,
)

from oracles import chunks_oracle, circles_oracle, polygons_oracle

PAL4 = np.array([[0, 0, 0], [255, 0, 0], [0, 255, 0], [0, 0, 255]], np.uint8)


def rep(kind, genes):
    return RepresentationGenome(kind, np.array(genes, dtype=np.int64))


def interp(kind, genes):
    return InterpreterGenome(kind, np.array(genes, dtype=np.int64))


# ----------------------------------------------------------------------
# chunks
# ----------------------------------------------------------------------

def test_chunks_disjoint_runs():
    out = render_chunks(
        rep(SetupKind.CHUNKS, [0, 2]),
        interp(SetupKind.CHUNKS, [(2, 1), (2, 2)]),
        4, 1, PAL4,
    )
    assert out.indices.tolist() == [[1, 1, 2, 2]]


def test_chunks_overlap_and_base_color():
    out = render_chunks(
        rep(SetupKind.CHUNKS, [0, 1]),
        interp(SetupKind.CHUNKS, [(3, 1), (2, 2)]),
        4, 1, PAL4,
    )
    assert out.indices.tolist() == [[1, 2, 2, 0]]


def test_chunks_clamped_at_canvas_end():
    out = render_chunks(
        rep(SetupKind.CHUNKS, [3]),
        interp(SetupKind.CHUNKS, [(10, 1)]),
        4, 1, PAL4,
    )
    assert out.indices.tolist() == [[0, 0, 0, 1]]


def test_chunks_run_crosses_row_boundary():
    # flattened canvas: a run started near one row's end spills into the next
    out = render_chunks(
        rep(SetupKind.CHUNKS, [2]),
        interp(SetupKind.CHUNKS, [(3, 2)]),
        3, 2, PAL4,
    )
    assert out.indices.tolist() == [[0, 0, 2], [2, 2, 0]]


# ----------------------------------------------------------------------
# polygons
# ----------------------------------------------------------------------

def test_polygon_axis_aligned_square():
    out = render_polygons(
        rep(SetupKind.POLYGONS, [(0, 0), (4, 0), (4, 4), (0, 4)]),
        interp(SetupKind.POLYGONS, [(4, 1)]),
        6, 6, PAL4,
    )
    expected = np.zeros((6, 6), np.uint8)
    expected[0:4, 0:4] = 1  # centers 0.5..3.5 fall inside [0, 4]
    assert np.array_equal(out.indices, expected)


def test_polygon_degenerate_paints_nothing():
    out = render_polygons(
        rep(SetupKind.POLYGONS, [(2, 2)] * 5),
        interp(SetupKind.POLYGONS, [(5, 3)]),
        6, 6, PAL4,
    )
    assert np.all(out.indices == 0)


def test_polygon_leftover_coordinates_unused():
    # Pool holds 8 pairs, the single triangle consumes 3; the rest could be
    # anything without changing the output.
    tri = [(0, 0), (5, 0), (0, 5)]
    junk_a = [(9, 9)] * 5
    junk_b = [(1, 8), (7, 7), (3, 3), (8, 1), (5, 5)]
    attrs = [(3, 2)]
    out_a = render_polygons(
        rep(SetupKind.POLYGONS, tri + junk_a), interp(SetupKind.POLYGONS, attrs), 10, 10, PAL4
    )
    out_b = render_polygons(
        rep(SetupKind.POLYGONS, tri + junk_b), interp(SetupKind.POLYGONS, attrs), 10, 10, PAL4
    )
    assert np.array_equal(out_a.indices, out_b.indices)


def test_polygon_random_instance_matches_oracle():
    rng = random.Random(99)
    coords = [(rng.randrange(20), rng.randrange(20)) for _ in range(12)]
    attrs = [(5, 1), (4, 2), (3, 3)]
    out = render_polygons(
        rep(SetupKind.POLYGONS, coords), interp(SetupKind.POLYGONS, attrs), 20, 20, PAL4
    )
    assert out.indices.tolist() == polygons_oracle(coords, attrs, 20, 20)


# ----------------------------------------------------------------------
# circles
# ----------------------------------------------------------------------

def test_circle_radius_one_cross():
    out = render_circles(
        rep(SetupKind.CIRCLES, [(2, 2)]),
        interp(SetupKind.CIRCLES, [(1, 1)]),
        5, 5, PAL4,
    )
    painted = {(x, y) for y in range(5) for x in range(5) if out.indices[y, x] == 1}
    assert painted == {(2, 1), (1, 2), (2, 2), (3, 2), (2, 3)}


def test_circle_clipped_at_corner():
    out = render_circles(
        rep(SetupKind.CIRCLES, [(0, 0)]),
        interp(SetupKind.CIRCLES, [(2, 3)]),
        5, 5, PAL4,
    )
    expected = [
        [(x * x + y * y <= 9) * 2 for x in range(5)] for y in range(5)
    ]
    assert out.indices.tolist() == expected


def test_circle_later_overlap_wins():
    out = render_circles(
        rep(SetupKind.CIRCLES, [(3, 3), (5, 3)]),
        interp(SetupKind.CIRCLES, [(1, 2), (2, 2)]),
        9, 7, PAL4,
    )
    # (4, 3) is inside both disks; the second one painted it last
    assert out.indices[3, 4] == 2
    assert out.indices[3, 2] == 1


# ----------------------------------------------------------------------
# shared properties
# ----------------------------------------------------------------------

def _random_instance(kind, rng):
    w = rng.randint(1, 16)
    h = rng.randint(1, 16)
    if kind is SetupKind.CHUNKS:
        n = rng.randint(1, 8)
        r = [rng.randrange(w * h) for _ in range(n)]
        a = [(rng.randint(1, 6), rng.randrange(4)) for _ in range(n)]
    elif kind is SetupKind.POLYGONS:
        n = rng.randint(1, 5)
        a = [(rng.randint(3, 6), rng.randrange(4)) for _ in range(n)]
        pool = sum(s for s, _ in a)
        r = [(rng.randrange(w), rng.randrange(h)) for _ in range(pool)]
    else:
        n = rng.randint(1, 8)
        r = [(rng.randrange(w), rng.randrange(h)) for _ in range(n)]
        a = [(rng.randrange(4), rng.randint(1, 7)) for _ in range(n)]
    return w, h, rep(kind, r), interp(kind, a), r, a


ORACLES = {
    SetupKind.CHUNKS: lambda r, a, w, h: np.array(
        chunks_oracle(r, a, w, h), np.uint8
    ).reshape(h, w),
    SetupKind.POLYGONS: lambda r, a, w, h: np.array(polygons_oracle(r, a, w, h), np.uint8),
    SetupKind.CIRCLES: lambda r, a, w, h: np.array(circles_oracle(r, a, w, h), np.uint8),
}


@pytest.mark.parametrize("kind", list(SetupKind))
def test_renderer_matches_oracle_on_random_instances(kind):
    rng = random.Random(hash(kind.value) & 0xFFFF)
    for _ in range(60):
        w, h, r, a, raw_r, raw_a = _random_instance(kind, rng)
        got = render_pair(r, a, w, h, PAL4)
        expected = ORACLES[kind](raw_r, raw_a, w, h)
        assert np.array_equal(got.indices, expected)


@pytest.mark.parametrize("kind", list(SetupKind))
def test_render_is_pure(kind):
    rng = random.Random(7)
    w, h, r, a, _, _ = _random_instance(kind, rng)
    first = render_pair(r, a, w, h, PAL4)
    second = render_pair(r, a, w, h, PAL4)
    assert np.array_equal(first.indices, second.indices)


def test_swapping_disjoint_chunks_changes_nothing():
    a = render_chunks(
        rep(SetupKind.CHUNKS, [0, 4]),
        interp(SetupKind.CHUNKS, [(2, 1), (2, 3)]),
        8, 1, PAL4,
    )
    b = render_chunks(
        rep(SetupKind.CHUNKS, [4, 0]),
        interp(SetupKind.CHUNKS, [(2, 3), (2, 1)]),
        8, 1, PAL4,
    )
    assert np.array_equal(a.indices, b.indices)


def test_output_indices_stay_in_palette():
    rng = random.Random(13)
    for kind in SetupKind:
        for _ in range(20):
            w, h, r, a, _, _ = _random_instance(kind, rng)
            out = render_pair(r, a, w, h, PAL4)
            assert int(out.indices.max()) <= 3


def test_render_rejects_kind_mismatch(rng):
    r = rep(SetupKind.CHUNKS, [0, 1])
    a = interp(SetupKind.CIRCLES, [(1, 2), (0, 1)])
    with pytest.raises(ValueError):
        render_pair(r, a, 4, 4, PAL4)
    with pytest.raises(ValueError):
        render_circles(
            rep(SetupKind.CIRCLES, [(0, 0)]),
            interp(SetupKind.CHUNKS, [(1, 1)]),
            4, 4, PAL4,
        )


def test_render_rejects_length_mismatch():
    with pytest.raises(ValueError):
        render_chunks(
            rep(SetupKind.CHUNKS, [0, 1, 2]),
            interp(SetupKind.CHUNKS, [(1, 1)]),
            4, 1, PAL4,
        )


def test_render_rejects_color_outside_palette():
    with pytest.raises(ValueError):
        render_chunks(
            rep(SetupKind.CHUNKS, [0]),
            interp(SetupKind.CHUNKS, [(2, 9)]),
            4, 1, PAL4,
        )


def test_polygon_rejects_overdrawn_pool():
    with pytest.raises(ValueError):
        render_polygons(
            rep(SetupKind.POLYGONS, [(0, 0), (1, 1)]),
            interp(SetupKind.POLYGONS, [(3, 1)]),
            4, 4, PAL4,
        )
